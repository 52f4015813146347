"""Dual graphs of nodal genus-1 marked curves with per-component map degrees.

A :class:`DualGraph` is a connected multigraph: vertices are irreducible
components (decorated with genus, degree of the map on that component and
the marked points it carries), edges are nodes. Parallel edges and
self-loops are allowed; an edge is identified by its position in
``DualGraph.edges``.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Optional


class GraphError(ValueError):
    """Raised for graphs that cannot be processed at all (e.g. disconnected)."""


@dataclass(frozen=True)
class Vertex:
    id: str
    genus: int = 0
    degree: int = 0
    marks: tuple = ()

    def __post_init__(self):
        # a sorted tuple rather than a set, so a repeated label stays visible to validate()
        object.__setattr__(self, "marks", tuple(sorted(int(m) for m in self.marks)))

    @property
    def contracted(self) -> bool:
        return self.degree == 0


@dataclass(frozen=True)
class Issue:
    """One entry of a validation report."""

    code: str
    message: str
    where: tuple = ()

    def to_dict(self) -> dict:
        return {"code": self.code, "message": self.message, "where": list(self.where)}


@dataclass(frozen=True)
class ValidationReport:
    structural: tuple = ()
    violations: tuple = ()

    @property
    def ok(self) -> bool:
        return not self.structural and not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def issues(self) -> list:
        return list(self.structural) + list(self.violations)

    def to_dict(self) -> dict:
        return {
            "valid": self.ok,
            "structural": [i.to_dict() for i in self.structural],
            "violations": [i.to_dict() for i in self.violations],
        }


@dataclass(frozen=True)
class ContractedSubcurve:
    """A connected, contracted subcurve of arithmetic genus 1, by vertex ids."""

    vertices: frozenset

    def __post_init__(self):
        object.__setattr__(self, "vertices", frozenset(self.vertices))
        if not self.vertices:
            raise ValueError("a contracted subcurve must be nonempty")

    @property
    def ids(self) -> tuple:
        return tuple(sorted(self.vertices))

    def sort_key(self) -> tuple:
        return (len(self.vertices), self.ids)

    def __le__(self, other: "ContractedSubcurve") -> bool:
        return self.vertices <= other.vertices

    def __lt__(self, other: "ContractedSubcurve") -> bool:
        return self.vertices < other.vertices

    def __str__(self) -> str:
        return "{" + ",".join(self.ids) + "}"


@dataclass(frozen=True)
class DualGraph:
    vertices: tuple
    edges: tuple
    k: int = 0
    n: int = 1
    declared_d: Optional[int] = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))

    # -- basic accessors -------------------------------------------------

    @property
    def d(self) -> int:
        return sum(v.degree for v in self.vertices)

    @property
    def ids(self) -> tuple:
        return tuple(v.id for v in self.vertices)

    def vertex(self, vid: str) -> Vertex:
        for v in self.vertices:
            if v.id == vid:
                return v
        raise KeyError(vid)

    def valence(self, vid: str) -> int:
        """Number of node branches at ``vid``; a self-loop counts twice."""
        return sum((a == vid) + (b == vid) for a, b in self.edges)

    def edges_between(self, u: str, v: str) -> list:
        return [i for i, (a, b) in enumerate(self.edges) if {a, b} == {u, v}]

    def induced_edges(self, vids: Iterable[str]) -> list:
        s = set(vids)
        return [i for i, (a, b) in enumerate(self.edges) if a in s and b in s]

    def cross_edges(self, vids: Iterable[str]) -> list:
        """Indices of edges with exactly one endpoint in ``vids``."""
        s = set(vids)
        return [i for i, (a, b) in enumerate(self.edges) if (a in s) != (b in s)]

    def is_connected(self, vids: Optional[Iterable[str]] = None) -> bool:
        s = set(self.ids if vids is None else vids)
        if not s:
            return False
        adj = {v: set() for v in s}
        for a, b in self.edges:
            if a in s and b in s:
                adj[a].add(b)
                adj[b].add(a)
        start = next(iter(sorted(s)))
        seen = {start}
        stack = [start]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return seen == s

    def subcurve_genus(self, vids: Iterable[str]) -> int:
        """Arithmetic genus of the (assumed connected) induced subcurve."""
        s = set(vids)
        genus = sum(self.vertex(v).genus for v in s)
        return genus + len(self.induced_edges(s)) - len(s) + 1

    # -- serialization ---------------------------------------------------

    def to_dict(self) -> dict:
        out = {
            "n": self.n,
            "k": self.k,
            "vertices": [
                {"id": v.id, "genus": v.genus, "degree": v.degree, "marks": list(v.marks)}
                for v in self.vertices
            ],
            "edges": [list(e) for e in self.edges],
        }
        if self.declared_d is not None:
            out["d"] = self.declared_d
        return out

    def to_json(self, **kwargs) -> str:
        kwargs.setdefault("indent", 2)
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_dict(cls, data: dict) -> "DualGraph":
        try:
            vertices = [
                Vertex(str(v["id"]), int(v.get("genus", 0)), int(v.get("degree", 0)),
                       tuple(v.get("marks", [])))
                for v in data["vertices"]
            ]
            edges = []
            for e in data.get("edges", []):
                if len(e) != 2:
                    raise GraphError(f"edge {e!r} must have exactly two endpoints")
                edges.append((str(e[0]), str(e[1])))
            d = data.get("d")
            return cls(tuple(vertices), tuple(edges), int(data.get("k", 0)),
                       int(data.get("n", 1)), None if d is None else int(d))
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, GraphError):
                raise
            raise GraphError(f"malformed graph JSON: {exc!r}") from exc

    @classmethod
    def from_json(cls, text: str) -> "DualGraph":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise GraphError(f"graph file is not valid JSON: {exc}") from exc
        if not isinstance(data, dict):
            raise GraphError("graph JSON must be an object")
        return cls.from_dict(data)

    def marks_raw(self) -> list:
        return [m for v in self.vertices for m in v.marks]


def validate(g: DualGraph) -> ValidationReport:
    """Check every invariant of a stable genus-1 dual graph.

    Structural problems (duplicate vertex ids, edges naming unknown
    vertices, a mark label used twice) are reported separately from
    violated invariants. Invariants depending on a well-formed structure
    are only checked when there are no structural problems.
    """
    structural = []
    violations = []

    counts = Counter(g.ids)
    for vid, c in sorted(counts.items()):
        if c > 1:
            structural.append(Issue("duplicate-vertex", f"vertex id {vid!r} used {c} times", (vid,)))
    known = set(counts)
    for i, (a, b) in enumerate(g.edges):
        for end in (a, b):
            if end not in known:
                structural.append(
                    Issue("unknown-vertex", f"edge {i} ({a},{b}) names unknown vertex {end!r}", (f"e{i}",)))
    mark_counts = Counter(g.marks_raw())
    for m, c in sorted(mark_counts.items()):
        if c > 1:
            owners = tuple(sorted({v.id for v in g.vertices if m in v.marks}))
            structural.append(Issue("duplicate-mark", f"mark {m} appears on {c} vertices", owners))
    if structural:
        return ValidationReport(tuple(structural), ())

    for v in g.vertices:
        if v.genus not in (0, 1):
            violations.append(Issue("vertex-genus", f"vertex {v.id} has genus {v.genus}, expected 0 or 1", (v.id,)))
        if v.degree < 0:
            violations.append(Issue("vertex-degree", f"vertex {v.id} has negative degree {v.degree}", (v.id,)))

    if not g.vertices:
        violations.append(Issue("empty", "graph has no vertices"))
        return ValidationReport((), tuple(violations))

    connected = g.is_connected()
    if not connected:
        violations.append(Issue("connectivity", "graph is disconnected"))
    else:
        genus = arithmetic_genus(g)
        if genus != 1:
            violations.append(Issue("arithmetic-genus", f"arithmetic genus is {genus}, expected 1"))

    if g.k < 0:
        violations.append(Issue("marks", f"k = {g.k} is negative"))
    present = set(mark_counts)
    expected = set(range(1, g.k + 1))
    for m in sorted(present - expected):
        owner = tuple(v.id for v in g.vertices if m in v.marks)
        violations.append(Issue("marks", f"mark {m} is outside 1..{g.k}", owner))
    for m in sorted(expected - present):
        violations.append(Issue("marks", f"mark {m} is carried by no vertex"))

    d = g.d
    if d <= 0:
        violations.append(Issue("total-degree", f"total degree is {d}; need d > 0"))
    if g.declared_d is not None and g.declared_d != d:
        violations.append(Issue("total-degree", f"declared d = {g.declared_d} but degrees sum to {d}"))
    if g.n < 1:
        violations.append(Issue("target", f"target dimension n = {g.n} must be at least 1"))

    for v in g.vertices:
        if v.degree != 0:
            continue
        special = g.valence(v.id) + len(v.marks)
        need = 3 if v.genus == 0 else 1
        if v.genus in (0, 1) and special < need:
            violations.append(Issue(
                "stability",
                f"contracted genus-{v.genus} vertex {v.id} has {special} special points, needs {need}",
                (v.id,)))

    return ValidationReport((), tuple(violations))


def arithmetic_genus(g: DualGraph) -> int:
    """Sum of vertex genera plus the first Betti number of the graph."""
    if not g.is_connected():
        raise GraphError("arithmetic genus is only defined here for connected graphs")
    return g.subcurve_genus(g.ids)


def genus_core(g: DualGraph) -> frozenset:
    """Smallest subgraph carrying the genus: the genus-1 vertex, else the cycle.

    Assumes ``g`` has arithmetic genus 1. Every connected genus-1 subcurve
    contains this set.
    """
    for v in g.vertices:
        if v.genus == 1:
            return frozenset({v.id})
    # prune leaves until only the unique cycle is left
    alive = set(g.ids)
    while True:
        leaves = [v for v in alive
                  if sum((a == v) + (b == v) for a, b in g.edges if a in alive and b in alive) <= 1]
        if not leaves:
            return frozenset(alive)
        alive.difference_update(leaves)


def maximal_contracted_subcurve(g: DualGraph) -> Optional[ContractedSubcurve]:
    """The maximal connected contracted genus-1 subcurve, or ``None``."""
    core = genus_core(g)
    if not core or any(g.vertex(v).degree != 0 for v in core):
        return None
    contracted = {v.id for v in g.vertices if v.degree == 0}
    seen = set(core)
    stack = list(core)
    while stack:
        u = stack.pop()
        for a, b in g.edges:
            if u in (a, b):
                w = b if a == u else a
                if w in contracted and w not in seen:
                    seen.add(w)
                    stack.append(w)
    return ContractedSubcurve(frozenset(seen))
