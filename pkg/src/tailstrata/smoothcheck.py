"""Smoothability of genus-1 stable maps from tangent data of the tails.

A map contracting no genus-1 subcurve is smoothable. Otherwise let E be
the maximal contracted genus-1 subcurve; the map is smoothable exactly
when the tangent lines of the branches meeting E, pushed into the
tangent space of P^n at the image of E, are linearly dependent.

Branches are given as polynomial parametrizations in an affine chart with
the node at t = 0. Everything is exact over the rationals.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import gcd, lcm
from typing import Mapping, Optional, Sequence

from .dualgraph import DualGraph, maximal_contracted_subcurve


class ConfigurationError(ValueError):
    """Tail data does not describe a map with a contracted elliptic curve."""


def to_rational(value) -> Fraction:
    """Parse an int or an ``"p/q"`` string; floats are refused as inexact."""
    if isinstance(value, bool) or isinstance(value, float):
        raise ConfigurationError(f"coefficient {value!r} must be an integer or a 'p/q' string")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ConfigurationError(f"bad rational {value!r}") from exc
    raise ConfigurationError(f"coefficient {value!r} must be an integer or a 'p/q' string")


def format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class ParamTail:
    """Chart coordinates of one branch near the node, as coefficient lists in t."""

    coords: tuple

    def __post_init__(self):
        coords = tuple(tuple(to_rational(c) for c in poly) for poly in self.coords)
        if not coords:
            raise ConfigurationError("a tail needs at least one coordinate")
        if not any(c != 0 for poly in coords for c in poly[1:]):
            raise ConfigurationError("tail parametrization is constant; the tail would be contracted")
        object.__setattr__(self, "coords", coords)

    @property
    def n(self) -> int:
        return len(self.coords)

    def value_at_zero(self) -> tuple:
        return tuple(poly[0] if poly else Fraction(0) for poly in self.coords)

    @classmethod
    def from_lists(cls, *polys) -> "ParamTail":
        return cls(tuple(polys))


@dataclass(frozen=True)
class TangentConfig:
    n: int
    vectors: tuple

    def __post_init__(self):
        vectors = tuple(tuple(to_rational(x) for x in v) for v in self.vectors)
        if not vectors:
            raise ConfigurationError("need at least one tangent vector")
        for v in vectors:
            if len(v) != self.n:
                raise ConfigurationError(f"vector {v} does not have length n={self.n}")
        object.__setattr__(self, "vectors", vectors)

    @property
    def m(self) -> int:
        return len(self.vectors)


def shared_attachment_point(tails: Sequence[ParamTail]) -> tuple:
    """The common chart point of all tails at t = 0."""
    if not tails:
        raise ConfigurationError("no tails given")
    n = tails[0].n
    if any(t.n != n for t in tails):
        raise ConfigurationError("tails live in charts of different dimension")
    point = tails[0].value_at_zero()
    for t in tails[1:]:
        if t.value_at_zero() != point:
            raise ConfigurationError("tails do not meet at a common point")
    return point


def tangent_vector(tail: ParamTail) -> tuple:
    """Coefficient of t in each coordinate; zero at a cusp or worse."""
    return tuple(poly[1] if len(poly) > 1 else Fraction(0) for poly in tail.coords)


# -- exact linear algebra --------------------------------------------------

def _integer_rows(rows) -> list:
    out = []
    for row in rows:
        scale = lcm(*(Fraction(x).denominator for x in row)) if row else 1
        out.append([int(Fraction(x) * scale) for x in row])
    return out


def _bareiss(rows) -> tuple:
    """Fraction-free elimination. Returns (rank, pivot columns, reduced matrix, sign)."""
    a = [list(r) for r in rows]
    n_rows = len(a)
    n_cols = len(a[0]) if a else 0
    r = 0
    prev = 1
    sign = 1
    pivots = []
    for c in range(n_cols):
        if r == n_rows:
            break
        p = next((i for i in range(r, n_rows) if a[i][c] != 0), None)
        if p is None:
            continue
        if p != r:
            a[r], a[p] = a[p], a[r]
            sign = -sign
        piv = a[r][c]
        for i in range(r + 1, n_rows):
            for j in range(c + 1, n_cols):
                # exact: every entry stays a minor of the input
                a[i][j] = (a[i][j] * piv - a[i][c] * a[r][j]) // prev
            a[i][c] = 0
        prev = piv
        pivots.append(c)
        r += 1
    return r, pivots, a, sign


def rank(cfg: TangentConfig) -> int:
    return _bareiss(_integer_rows(cfg.vectors))[0]


def matrix_rank(rows) -> int:
    rows = [list(r) for r in rows]
    if not rows or not rows[0]:
        return 0
    return _bareiss(_integer_rows(rows))[0]


def dependence_relation(vectors) -> Optional[tuple]:
    """A nonzero rational ``c`` with ``sum(c_i v_i) == 0``, or None if independent."""
    m = len(vectors)
    n = len(vectors[0])
    # reduced row echelon form of the n x m matrix whose columns are the vectors
    a = [[Fraction(vectors[i][j]) for i in range(m)] for j in range(n)]
    pivot_cols = []
    r = 0
    for c in range(m):
        p = next((i for i in range(r, n) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(n):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivot_cols.append(c)
        r += 1
        if r == n:
            break
    free = [c for c in range(m) if c not in pivot_cols]
    if not free:
        return None
    f = free[0]
    coeffs = [Fraction(0)] * m
    coeffs[f] = Fraction(1)
    for row, pc in enumerate(pivot_cols):
        coeffs[pc] = -a[row][f]
    # clear denominators and content for a tidy certificate
    scale = lcm(*(c.denominator for c in coeffs))
    ints = [int(c * scale) for c in coeffs]
    g = gcd(*ints)
    return tuple(Fraction(x // g) for x in ints)


def _minor(rows, cols) -> Fraction:
    sub = [[Fraction(row[c]) for c in cols] for row in rows]
    scales = [lcm(*(x.denominator for x in row)) for row in sub]
    ints = [[int(x * s) for x in row] for row, s in zip(sub, scales)]
    r, _, red, sign = _bareiss(ints)
    if r < len(cols):
        return Fraction(0)
    det = Fraction(sign * red[-1][-1])
    for s in scales:
        det /= s
    return det


def combination(coeffs, vectors) -> tuple:
    n = len(vectors[0])
    return tuple(sum((c * v[j] for c, v in zip(coeffs, vectors)), Fraction(0)) for j in range(n))


# -- the decision procedure ------------------------------------------------

@dataclass(frozen=True)
class Verdict:
    smoothable: bool
    case: str
    m: int
    rank: Optional[int] = None
    certificate: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "smoothable": self.smoothable,
            "case": self.case,
            "rank": self.rank,
            "m": self.m,
            "certificate": self.certificate,
        }


def tangent_verdict(tails: Sequence[ParamTail], labels: Sequence[str] | None = None) -> Verdict:
    """Case (ii) test: are the tails' tangent vectors dependent?"""
    tails = list(tails)
    if labels is None:
        labels = [str(i) for i in range(len(tails))]
    point = shared_attachment_point(tails)
    vectors = [tangent_vector(t) for t in tails]
    cfg = TangentConfig(len(point), tuple(vectors))
    r, pivots, _, _ = _bareiss(_integer_rows(cfg.vectors))
    base = {
        "attachment_point": [format_rational(x) for x in point],
        "tangents": {lab: [format_rational(x) for x in v] for lab, v in zip(labels, vectors)},
    }
    if r < cfg.m:
        rel = dependence_relation(cfg.vectors)
        if cfg.m == 1:
            kind = "zero tangent vector"
        else:
            kind = "dependence relation"
        cert = dict(base, kind=kind,
                    relation={lab: format_rational(c) for lab, c in zip(labels, rel)})
        return Verdict(True, "ii", cfg.m, r, cert)
    # independent: m pivot coordinates with a nonzero minor witness full rank
    minor = _minor(cfg.vectors, pivots)
    cert = dict(base, kind="full rank", pivot_coordinates=pivots, minor=format_rational(minor))
    return Verdict(False, "ii", cfg.m, r, cert)


def resolve_edge(g: DualGraph, label: str) -> int:
    """Edge index for a label: its position in the edge list, or ``"u-v"`` if unique."""
    label = str(label)
    if label.isdigit():
        i = int(label)
        if i >= len(g.edges):
            raise ConfigurationError(f"edge index {i} out of range")
        return i
    matches = set()
    for pos in range(1, len(label)):
        if label[pos] in "-~":
            u, v = label[:pos], label[pos + 1:]
            matches.update(g.edges_between(u, v))
    if len(matches) != 1:
        raise ConfigurationError(
            f"edge label {label!r} matches {len(matches)} edges; use the edge index instead")
    return matches.pop()


def is_smoothable(g: DualGraph, tails: Mapping) -> Verdict:
    """Decide smoothability of a map with dual graph ``g``.

    ``tails`` maps each node joining the maximal contracted genus-1
    subcurve to the rest of the curve (an edge index or label) to the
    parametrization of the branch on the far side. Marks lying on the
    contracted curve impose no tangency condition and are ignored here.
    """
    resolved = {}
    for label, tail in tails.items():
        i = resolve_edge(g, label) if not isinstance(label, int) else label
        if i in resolved:
            raise ConfigurationError(f"edge {i} given more than one tail")
        resolved[i] = tail
    core = maximal_contracted_subcurve(g)
    if core is None:
        if resolved:
            raise ConfigurationError("map contracts no genus-1 curve; no tails expected")
        return Verdict(True, "i", 0, None, {"kind": "no contracted genus-1 subcurve"})
    cross = g.cross_edges(core.vertices)
    if set(resolved) != set(cross):
        missing = sorted(set(cross) - set(resolved))
        extra = sorted(set(resolved) - set(cross))
        raise ConfigurationError(
            f"tails must cover exactly the nodes of {core}: missing {missing}, unexpected {extra}")
    if any(resolved[i].n != g.n for i in cross):
        raise ConfigurationError(f"every tail must have n={g.n} coordinates")
    verdict = tangent_verdict([resolved[i] for i in cross], [str(i) for i in cross])
    return replace(verdict, certificate=dict(verdict.certificate, contracted=list(core.ids)))
