"""Branches of the tail loci over a fixed curve, and the blow-up schedule.

Over a given dual graph, each admissible contracted subcurve (connected,
all components contracted, arithmetic genus 1) is one way of declaring
an elliptic curve contracted; these are the branches. They form a
lattice under intersection and union.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .dualgraph import ContractedSubcurve, DualGraph, genus_core
from .strata import ModuliContext, enumerate_strata

VARIANTS = ("full", "main")


def is_admissible(g: DualGraph, vids) -> bool:
    vids = frozenset(vids)
    if not vids:
        return False
    if any(g.vertex(v).degree != 0 for v in vids):
        return False
    return g.is_connected(vids) and g.subcurve_genus(vids) == 1


def enumerate_branches(g: DualGraph) -> list:
    """Every admissible contracted subcurve, ordered by size then vertex ids."""
    core = genus_core(g)
    if any(g.vertex(v).degree != 0 for v in core):
        return []
    # every genus-1 subcurve contains the core, so only the rest is free
    free = sorted(v.id for v in g.vertices if v.degree == 0 and v.id not in core)
    found = []
    for r in range(len(free) + 1):
        for extra in combinations(free, r):
            vids = core.union(extra)
            if is_admissible(g, vids):
                found.append(ContractedSubcurve(vids))
    found.sort(key=ContractedSubcurve.sort_key)
    return found


def tail_count(g: DualGraph, e: ContractedSubcurve) -> int:
    """Nodes joining ``e`` to the rest of the curve plus marks lying on ``e``."""
    marks = sum(len(g.vertex(v).marks) for v in e.vertices)
    return len(g.cross_edges(e.vertices)) + marks


def meet(e1: ContractedSubcurve, e2: ContractedSubcurve) -> ContractedSubcurve:
    common = e1.vertices & e2.vertices
    if not common:
        raise ValueError(f"{e1} and {e2} share no component; they are not branches of one curve")
    return ContractedSubcurve(common)


def join(e1: ContractedSubcurve, e2: ContractedSubcurve) -> ContractedSubcurve:
    return ContractedSubcurve(e1.vertices | e2.vertices)


def separation_stage(g: DualGraph, e1: ContractedSubcurve, e2: ContractedSubcurve) -> int:
    """Blow-up stage at which two branches come apart: the tail count of their meet.

    This is a model. It reproduces the known case of two three-tail
    branches sharing a two-tail core, separated by the second blow-up.
    """
    if e1 == e2:
        raise ValueError(f"nothing to separate: both branches are {e1}")
    return tail_count(g, meet(e1, e2))


def hasse_edges(branches: list) -> list:
    """Cover relations ``(i, j)`` with ``branches[i]`` directly below ``branches[j]``."""
    covers = []
    for j, upper in enumerate(branches):
        below = [i for i, lower in enumerate(branches) if lower < upper]
        for i in below:
            if not any(branches[i] < branches[h] for h in below if h != i):
                covers.append((i, j))
    return covers


def branch_lattice_dot(g: DualGraph, branches: list | None = None) -> str:
    if branches is None:
        branches = enumerate_branches(g)
    lines = ["digraph branches {", "  rankdir=BT;", "  node [shape=box];"]
    for i, b in enumerate(branches):
        label = f"{','.join(b.ids)} / t={tail_count(g, b)}"
        lines.append(f'  b{i} [label="{_dot_escape(label)}"];')
    for i, j in hasse_edges(branches):
        lines.append(f"  b{i} -> b{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _dot_escape(s: str) -> str:
    return s.replace("\\", "\\\\").replace('"', '\\"')


@dataclass(frozen=True)
class Stage:
    m: int
    strata: tuple
    action: str
    noop: bool = False


@dataclass(frozen=True)
class BlowupSchedule:
    ctx: ModuliContext
    stages: tuple
    variant: str = "full"

    def flatten(self) -> list:
        return [idx for st in self.stages for idx in st.strata]


def _ordinal_locus(m: int) -> str:
    names = {1: "one", 2: "two", 3: "three", 4: "four", 5: "five"}
    return f"{names.get(m, str(m))}-tail locus"


def blowup_schedule(ctx: ModuliContext, variant: str = "full") -> BlowupSchedule:
    """Stages m = 1 .. d+k, each blowing up (the proper transform of) the m-tail locus.

    ``variant="main"`` blows up the main component instead; there the
    one-tail locus is already a Cartier divisor, so stage 1 does nothing,
    and later stages blow up the intersection of each locus with the
    main component.
    """
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}; expected one of {VARIANTS}")
    stages = []
    for m in range(1, ctx.max_tails + 1):
        strata = tuple(enumerate_strata(ctx, m))
        locus = _ordinal_locus(m)
        if variant == "main" and m == 1:
            stages.append(Stage(m, strata, "no-op (Cartier divisor)", noop=True))
        elif variant == "main":
            stages.append(Stage(m, strata, f"blow up the proper transform of the {locus} inside the main component"))
        elif m == 1:
            stages.append(Stage(m, strata, f"blow up the {locus}"))
        else:
            stages.append(Stage(m, strata, f"blow up the proper transform of the {locus}"))
    return BlowupSchedule(ctx, tuple(stages), variant)
