"""Oriented matroid programs: affine bases, pivots and non-degenerate cycles."""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterator, Optional, Sequence

import networkx as nx

from .chirotope import Chirotope
from .exceptions import (
    DegeneratePivot,
    IndexOutOfRange,
    InputError,
    NoAffineBasis,
    NotAffineBasis,
    NotAPivot,
)


@dataclass(frozen=True)
class OMProgram:
    """The triple ``(chi, f, g)``: ``f`` is the objective, ``g`` the element at infinity."""

    chi: Chirotope
    f: int
    g: int

    def __post_init__(self):
        for x in (self.f, self.g):
            if not 1 <= x <= self.chi.n:
                raise IndexOutOfRange(f"element {x} outside 1..{self.chi.n}")
        if self.f == self.g:
            raise InputError("f and g must differ")

    @property
    def free_elements(self) -> list[int]:
        return [e for e in self.chi.ground_set if e not in (self.f, self.g)]

    def is_affine_basis(self, B: Sequence[int]) -> bool:
        B = tuple(B)
        if len(B) != self.chi.r - 1 or self.f in B or self.g in B:
            return False
        return self.chi.evaluate(B + (self.g,)) != 0


def affine_bases(prog: OMProgram) -> list[tuple[int, ...]]:
    r = prog.chi.r
    return [B for B in combinations(prog.free_elements, r - 1) if prog.is_affine_basis(B)]


@dataclass(frozen=True)
class Cocircuit:
    """Sign vector on ``1..n``; ``signs[e-1]`` is the sign at element ``e``."""

    signs: tuple[int, ...]

    def __getitem__(self, e: int) -> int:
        return self.signs[e - 1]

    @property
    def zero_set(self) -> frozenset:
        return frozenset(i + 1 for i, s in enumerate(self.signs) if s == 0)

    def __str__(self):
        return "".join({1: "+", -1: "-", 0: "0"}[s] for s in self.signs)


def _hyperplane_signs(chi: Chirotope, prefix: tuple[int, ...]) -> list[int]:
    ev = chi.evaluate
    return [ev(prefix + (e,)) for e in chi.ground_set]


def vertex(prog: OMProgram, B: Sequence[int]) -> Cocircuit:
    """The cocircuit vanishing on ``B`` and positive at ``g``."""
    B = tuple(sorted(B))
    if not prog.is_affine_basis(B):
        raise NotAffineBasis(f"{B} is not an affine basis for f={prog.f}, g={prog.g}")
    raw = _hyperplane_signs(prog.chi, B)
    sigma = raw[prog.g - 1]
    return Cocircuit(tuple(sigma * s for s in raw))


class PivotKind(enum.Enum):
    DEGENERATE = "D"
    HORIZONTAL = "H"
    INCREASING = "S"
    DECREASING = "X"

    @property
    def admissible(self) -> bool:
        return self is not PivotKind.DECREASING


@dataclass(frozen=True)
class Pivot:
    edge: tuple[int, ...]
    a: int
    b: int
    kind: PivotKind

    @property
    def source(self) -> tuple[int, ...]:
        return tuple(sorted(self.edge + (self.a,)))

    @property
    def target(self) -> tuple[int, ...]:
        return tuple(sorted(self.edge + (self.b,)))

    def __str__(self):
        L = "{" + ",".join(map(str, self.edge)) + "}"
        return f"L={L} a={self.a} b={self.b} kind={self.kind.value}"


def lemma_product(prog: OMProgram, L: Sequence[int], a: int, b: int) -> tuple[int, int, int, int]:
    """The four factors ``chi(L,g,f), chi(L,a,b), chi(L,g,a), chi(L,g,b)``."""
    lam = tuple(L)
    ev, f, g = prog.chi.evaluate, prog.f, prog.g
    return ev(lam + (g, f)), ev(lam + (a, b)), ev(lam + (g, a)), ev(lam + (g, b))


def _check_pivot(prog, L, a, b):
    L = tuple(sorted(L))
    if a == b or {a, b} & {prog.f, prog.g} or a in L or b in L:
        raise NotAPivot(f"invalid pivot L={L} a={a} b={b}")
    if not (prog.is_affine_basis(tuple(sorted(L + (a,)))) and prog.is_affine_basis(tuple(sorted(L + (b,))))):
        raise NotAPivot(f"L={L} with a={a}, b={b} does not join two affine bases")
    return L


def classify_pivot(prog: OMProgram, L: Sequence[int], a: int, b: int) -> Pivot:
    """Kind of the pivot ``L+a -> L+b`` from the four-factor sign product."""
    L = _check_pivot(prog, tuple(L), a, b)
    gf, ab, ga, gb = lemma_product(prog, L, a, b)
    if ab == 0:
        kind = PivotKind.DEGENERATE
    elif gf == 0:
        kind = PivotKind.HORIZONTAL
    elif gf * ab * ga * gb > 0:
        kind = PivotKind.INCREASING
    else:
        kind = PivotKind.DECREASING
    return Pivot(L, a, b, kind)


def pivot_direction(prog: OMProgram, L: Sequence[int], a: int, b: int) -> Cocircuit:
    """The cocircuit vanishing on ``L`` and ``g`` that agrees with ``v(L+b)`` at ``a``."""
    L = _check_pivot(prog, tuple(L), a, b)
    if prog.chi.evaluate(L + (a, b)) == 0:
        raise DegeneratePivot(f"L={L} with a={a}, b={b} is dependent; direction undefined")
    raw = _hyperplane_signs(prog.chi, L + (prog.g,))
    target = vertex(prog, L + (b,))[a]
    sigma = target * raw[a - 1]
    return Cocircuit(tuple(sigma * s for s in raw))


@dataclass
class PivotGraph:
    nodes: list[tuple[int, ...]]
    edges: list[Pivot]
    graph: nx.DiGraph = field(repr=False)

    def successors(self, B):
        return self.graph.successors(B)

    def pivot(self, u, v) -> Pivot:
        return self.graph.edges[u, v]["pivot"]


def build_pivot_graph(prog: OMProgram, nodes: Optional[Sequence[tuple[int, ...]]] = None) -> PivotGraph:
    """Pivot graph on affine bases (optionally restricted to ``nodes``).

    Strictly increasing pivots are directed edges; degenerate and horizontal
    pivots are inserted in both directions; strictly decreasing ones are
    left out.
    """
    nodes = affine_bases(prog) if nodes is None else list(nodes)
    G = nx.DiGraph()
    G.add_nodes_from(nodes)
    edges = []
    for B1, B2 in combinations(nodes, 2):
        common = set(B1) & set(B2)
        if len(common) != prog.chi.r - 2:
            continue
        L = tuple(sorted(common))
        (a,) = set(B1) - common
        (b,) = set(B2) - common
        for p in (classify_pivot(prog, L, a, b), classify_pivot(prog, L, b, a)):
            if p.kind.admissible:
                G.add_edge(p.source, p.target, pivot=p)
                edges.append(p)
    return PivotGraph(nodes, edges, G)


@dataclass(frozen=True)
class NonDegenerateCycle:
    """Closed pivot walk ``B1 -> ... -> Bk = B1`` whose first pivot is strictly increasing."""

    bases: tuple[tuple[int, ...], ...]
    pivots: tuple[Pivot, ...]

    def __post_init__(self):
        if len(self.bases) != len(self.pivots) + 1 or self.bases[0] != self.bases[-1]:
            raise ValueError("cycle must be closed with one pivot per step")

    def is_valid(self) -> bool:
        if not any(p.kind is PivotKind.INCREASING for p in self.pivots):
            return False
        for i, p in enumerate(self.pivots):
            if not p.kind.admissible:
                return False
            if p.source != self.bases[i] or p.target != self.bases[i + 1]:
                return False
        return True

    def dump(self, f: int, g: int) -> str:
        return "\n".join([f"f={f} g={g}"] + [str(p) for p in self.pivots]) + "\n"


def _bfs_path(G: nx.DiGraph, src, dst, allowed) -> Optional[list]:
    prev = {src: None}
    queue = deque([src])
    while queue:
        u = queue.popleft()
        if u == dst:
            path = [u]
            while prev[path[-1]] is not None:
                path.append(prev[path[-1]])
            return path[::-1]
        for v in sorted(G.successors(u)):
            if v in allowed and v not in prev:
                prev[v] = u
                queue.append(v)
    return None


def iter_nondegenerate_cycles(prog: OMProgram, graph: Optional[PivotGraph] = None) -> Iterator[NonDegenerateCycle]:
    """One cycle per strictly increasing edge lying inside a strongly connected
    component, closed by a shortest path back to the edge's tail."""
    graph = build_pivot_graph(prog) if graph is None else graph
    G = graph.graph
    comp_of = {}
    for i, comp in enumerate(nx.strongly_connected_components(G)):
        for v in comp:
            comp_of[v] = i
    members = {}
    for v, i in comp_of.items():
        members.setdefault(i, set()).add(v)
    increasing = sorted(
        (p for p in graph.edges if p.kind is PivotKind.INCREASING),
        key=lambda p: (p.source, p.target),
    )
    for p in increasing:
        u, v = p.source, p.target
        if comp_of[u] != comp_of[v]:
            continue
        path = _bfs_path(G, v, u, members[comp_of[u]])
        bases = (u,) + tuple(path)
        pivots = tuple(graph.pivot(x, y) for x, y in zip(bases, bases[1:]))
        yield NonDegenerateCycle(bases, pivots)


def find_nondegenerate_cycle(prog: OMProgram) -> Optional[NonDegenerateCycle]:
    return next(iter_nondegenerate_cycles(prog), None)


def programs(chi: Chirotope, f: Optional[int] = None, g: Optional[int] = None) -> Iterator[OMProgram]:
    """Programs over ordered pairs ``(f, g)`` in lexicographic order, skipping
    choices without any affine basis.  ``f``/``g`` restrict the scan."""
    for ff in chi.ground_set:
        if f is not None and ff != f:
            continue
        for gg in chi.ground_set:
            if gg == ff or (g is not None and gg != g):
                continue
            prog = OMProgram(chi, ff, gg)
            if not affine_bases(prog):
                continue
            yield prog


def is_euclidean(chi: Chirotope, f: Optional[int] = None, g: Optional[int] = None):
    """``(True, None)`` if no program has a non-degenerate cycle, otherwise
    ``(False, (f, g, cycle))`` for the first witness in scan order."""
    for prog in programs(chi, f, g):
        cycle = find_nondegenerate_cycle(prog)
        if cycle is not None:
            return False, (prog.f, prog.g, cycle)
    return True, None


def require_affine_basis(prog: OMProgram) -> None:
    if not affine_bases(prog):
        raise NoAffineBasis(f"no affine basis for f={prog.f}, g={prog.g}")
