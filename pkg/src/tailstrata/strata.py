"""Components of the m-tail loci of genus-1 stable maps to P^n.

A component is indexed by ``(m_prime, mu, S)``: ``m_prime`` genus-0 tails of
degrees ``mu`` (a partition of d) hanging off a contracted elliptic curve
that also carries the marked points ``S``. Its tail count is
``m = m_prime + |S|``.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator


class EmptyMainLocusWarning(UserWarning):
    """The open locus of maps from smooth genus-1 curves is empty."""


@dataclass(frozen=True)
class ModuliContext:
    n: int
    d: int
    k: int = 0

    def __post_init__(self):
        if self.d == 0:
            raise ValueError(
                "d = 0: the space is M_{1,k} x P^n, which is already smooth; nothing to resolve")
        if self.n < 1:
            raise ValueError(f"target dimension n must be >= 1, got {self.n}")
        if self.d < 1:
            raise ValueError(f"degree d must be >= 1, got {self.d}")
        if self.k < 0:
            raise ValueError(f"number of marks k must be >= 0, got {self.k}")

    @property
    def max_tails(self) -> int:
        return self.d + self.k


@dataclass(frozen=True)
class StratumIndex:
    m_prime: int
    mu: tuple
    S: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "mu", tuple(sorted(self.mu, reverse=True)))
        object.__setattr__(self, "S", tuple(sorted(self.S)))
        if self.m_prime < 1:
            raise ValueError("a stratum needs at least one genus-0 tail")
        if len(self.mu) != self.m_prime or any(p < 1 for p in self.mu):
            raise ValueError(f"mu={self.mu} is not a partition into {self.m_prime} positive parts")
        if len(set(self.S)) != len(self.S):
            raise ValueError(f"S={self.S} has repeated marks")

    @property
    def m(self) -> int:
        return self.m_prime + len(self.S)

    def sort_key(self) -> tuple:
        # more genus-0 tails first, then mu in descending lexicographic order, then S
        return (-self.m_prime, tuple(-p for p in self.mu), self.S)

    def check(self, ctx: ModuliContext) -> None:
        if sum(self.mu) != ctx.d:
            raise ValueError(f"mu={self.mu} does not sum to d={ctx.d}")
        if any(not 1 <= s <= ctx.k for s in self.S):
            raise ValueError(f"S={self.S} is not a subset of 1..{ctx.k}")

    def __str__(self) -> str:
        mu = ",".join(map(str, self.mu))
        s = ",".join(map(str, self.S))
        return f"(m'={self.m_prime}, mu=({mu}), S={{{s}}})"


def partitions(total: int, parts: int, largest: int | None = None) -> Iterator[tuple]:
    """Partitions of ``total`` into exactly ``parts`` positive parts.

    Parts are non-increasing; partitions come out in descending
    lexicographic order.
    """
    if largest is None:
        largest = total
    if parts == 0:
        if total == 0:
            yield ()
        return
    # the first part must leave room for parts-1 parts of size >= 1
    hi = min(largest, total - (parts - 1))
    lo = -(-total // parts)
    for first in range(hi, lo - 1, -1):
        for rest in partitions(total - first, parts - 1, first):
            yield (first,) + rest


def enumerate_strata(ctx: ModuliContext, m: int) -> list:
    """All components ``(m_prime, mu, S)`` of the ``m``-tail locus, canonically ordered."""
    if m < 1:
        raise ValueError(f"tail count m must be >= 1, got {m}")
    out = []
    for m_prime in range(min(ctx.d, m), 0, -1):
        n_marks = m - m_prime
        if n_marks > ctx.k:
            continue
        subsets = list(combinations(range(1, ctx.k + 1), n_marks))
        for mu in partitions(ctx.d, m_prime):
            out.extend(StratumIndex(m_prime, mu, S) for S in subsets)
    return out


def all_strata(ctx: ModuliContext) -> list:
    return [idx for m in range(1, ctx.max_tails + 1) for idx in enumerate_strata(ctx, m)]


def stratum_dimension(idx: StratumIndex, ctx: ModuliContext) -> int:
    """Expected dimension of the stratum.

    The pointed elliptic curve contributes ``m`` moduli, its image point
    ``n``, each tail of degree ``d_i`` contributes ``(n+1) d_i - 2`` (a
    rational map sending a fixed point to the image point), and each of
    the ``k - |S|`` marks carried by the tails adds one more.
    """
    idx.check(ctx)
    return idx.m + ctx.n + (ctx.n + 1) * ctx.d - 2 * idx.m_prime + (ctx.k - len(idx.S))


def main_dimension(ctx: ModuliContext) -> int:
    """Dimension ``(n+1) d + k`` of the main component."""
    if ctx.d == 1:
        warnings.warn(
            "d = 1: no map from a smooth genus-1 curve has degree 1, so the main component is empty",
            EmptyMainLocusWarning, stacklevel=2)
    return (ctx.n + 1) * ctx.d + ctx.k


def dimension_obstructed(idx: StratumIndex, ctx: ModuliContext) -> bool:
    """True if the stratum is too big to lie in the closure of the main component."""
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", EmptyMainLocusWarning)
        main = main_dimension(ctx)
    return stratum_dimension(idx, ctx) >= main


def generically_in_main(idx: StratumIndex, ctx: ModuliContext) -> bool:
    """True if ``m_prime`` generic tangent directions in n-space are dependent."""
    idx.check(ctx)
    return idx.m_prime > ctx.n


def classify(idx: StratumIndex, ctx: ModuliContext) -> str:
    if dimension_obstructed(idx, ctx):
        return "irreducible component (dimension obstruction)"
    if generically_in_main(idx, ctx):
        return "in main component closure"
    return "undetermined"


def stratum_record(idx: StratumIndex, ctx: ModuliContext) -> dict:
    return {
        "m_prime": idx.m_prime,
        "mu": list(idx.mu),
        "S": list(idx.S),
        "m": idx.m,
        "dim": stratum_dimension(idx, ctx),
        "dimension_obstructed": dimension_obstructed(idx, ctx),
        "generically_in_main": generically_in_main(idx, ctx),
    }
