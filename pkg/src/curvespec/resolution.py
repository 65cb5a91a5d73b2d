"""Decorated dual trees of embedded good resolutions, and their builders.

A resolution graph records, for an embedded good resolution of a plane
curve germ, one vertex per exceptional divisor E_i decorated with the
multiplicity ``m_i = ord_{E_i}(pullback of f)`` and with the number of
strict-transform branches crossing E_i.  The dual graph of such a
resolution is a tree; a distinguished base vertex plays the role of the
first exceptional divisor.

The builders produce the standard families:

* ``build_ordinary(m)`` -- the ordinary m-fold point ``x^m = y^m``;
* ``build_chain(p)`` -- the germ ``(y^p1 - x^p1) * prod_i (y^((i-1)p_i) - x^(i p_i))``,
  whose dual graph is a path ``E_1 - E_k - E_(k-1) - ... - E_2``;
* ``build_basic(p, q)`` -- ``(x^p + y^p)(y^q - x^(2q))``, the two-vertex chain;
* ``merge_generic(graphs)`` -- union of germs in pairwise distinct tangent
  directions, with the deeper multiplicities re-derived from the blowup
  history of the union.

Realizability of arbitrary decorated trees is deliberately not checked:
the recombination calculus evaluates the spectral formulas on formal
trees as well.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import gcd
from typing import Iterable, Mapping, Sequence

from .errors import GraphStructureError, GraphValidationError


@dataclass(frozen=True, order=True)
class Vertex:
    """One exceptional divisor: id, multiplicity, strict-transform count."""

    id: int
    m: int
    germs: int = 0


@dataclass(frozen=True)
class ResolutionGraph:
    """Immutable decorated tree with a distinguished base vertex."""

    vertices: tuple[Vertex, ...]
    edges: tuple[tuple[int, int], ...]
    base: int

    @staticmethod
    def make(
        vertices: Iterable[tuple[int, int, int] | Vertex],
        edges: Iterable[Sequence[int]],
        base: int,
    ) -> "ResolutionGraph":
        """Normalize raw vertex/edge data into canonical sorted form."""
        vs = tuple(
            sorted(v if isinstance(v, Vertex) else Vertex(*v) for v in vertices)
        )
        es = tuple(sorted((min(a, b), max(a, b)) for a, b in edges))
        return ResolutionGraph(vs, es, base)

    # -- queries --------------------------------------------------------

    def vertex_ids(self) -> tuple[int, ...]:
        return tuple(v.id for v in self.vertices)

    def vertex(self, vid: int) -> Vertex:
        for v in self.vertices:
            if v.id == vid:
                return v
        raise KeyError(f"no vertex {vid}")

    def multiplicity(self, vid: int) -> int:
        return self.vertex(vid).m

    def germs(self, vid: int) -> int:
        return self.vertex(vid).germs

    def total_germs(self) -> int:
        return sum(v.germs for v in self.vertices)

    def neighbors(self, vid: int) -> tuple[int, ...]:
        out = [b if a == vid else a for a, b in self.edges if vid in (a, b)]
        return tuple(sorted(out))

    # -- validation -------------------------------------------------------

    def validate(self) -> list[str]:
        """Return diagnostics for every violated invariant (empty when valid)."""
        problems: list[str] = []
        ids = [v.id for v in self.vertices]
        if not ids:
            return ["graph has no vertices"]
        if len(set(ids)) != len(ids):
            problems.append("duplicate vertex ids")
        idset = set(ids)
        for v in self.vertices:
            if v.m < 1:
                problems.append(f"vertex {v.id}: multiplicity {v.m} is not positive")
            if v.germs < 0:
                problems.append(f"vertex {v.id}: negative germ count {v.germs}")
        for a, b in self.edges:
            if a == b:
                problems.append(f"edge ({a},{b}) is a loop")
            if a not in idset or b not in idset:
                problems.append(f"edge ({a},{b}) references a missing vertex")
        if len(set(self.edges)) != len(self.edges):
            problems.append("duplicate edges")
        if self.base not in idset:
            problems.append(f"base {self.base} is not a vertex id")
        if problems:
            return problems
        # Tree check: connected and acyclic.
        if len(self.edges) != len(ids) - 1:
            problems.append(
                f"not a tree: {len(ids)} vertices but {len(self.edges)} edges"
            )
        seen = {self.base}
        stack = [self.base]
        while stack:
            u = stack.pop()
            for w in self.neighbors(u):
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if seen != idset:
            missing = sorted(idset - seen)
            problems.append(f"disconnected: vertices {missing} unreachable from base")
        if not problems:
            if self.total_germs() == 0 and not (len(ids) == 1 and self.vertices[0].m == 1):
                problems.append("no strict-transform branch on any vertex")
        return problems

    def ensure_valid(self) -> "ResolutionGraph":
        problems = self.validate()
        if problems:
            raise GraphValidationError(problems)
        return self

    # -- chronology -------------------------------------------------------

    def parent_map(self) -> dict[int, int]:
        """Map each non-base vertex to its neighbour on the unique path to base."""
        self.ensure_valid()
        parents: dict[int, int] = {}
        stack = [self.base]
        seen = {self.base}
        while stack:
            u = stack.pop()
            for w in self.neighbors(u):
                if w not in seen:
                    seen.add(w)
                    parents[w] = u
                    stack.append(w)
        return parents

    def __str__(self) -> str:
        vs = ", ".join(f"E{v.id}(m={v.m},germs={v.germs})" for v in self.vertices)
        es = ", ".join(f"{a}-{b}" for a, b in self.edges)
        return f"[{vs}; edges {es or 'none'}; base E{self.base}]"


def validate(graph: ResolutionGraph) -> list[str]:
    return graph.validate()


def parent_map(graph: ResolutionGraph) -> dict[int, int]:
    return graph.parent_map()


@dataclass(frozen=True)
class GcdData:
    """Edge and vertex gcd decorations used by the spectral-pair formula.

    ``delta[i] = gcd(m_i, m_parent(i))`` for every non-base vertex, and
    ``r[i] = 1`` when a strict-transform branch crosses E_i, otherwise the
    gcd of m_i with all neighbouring multiplicities.
    """

    delta: Mapping[int, int]
    r: Mapping[int, int]


def gcd_data(graph: ResolutionGraph) -> GcdData:
    graph.ensure_valid()
    parents = graph.parent_map()
    delta = {
        vid: gcd(graph.multiplicity(vid), graph.multiplicity(parent))
        for vid, parent in parents.items()
    }
    r: dict[int, int] = {}
    for v in graph.vertices:
        if v.germs > 0:
            r[v.id] = 1
        else:
            g = v.m
            for w in graph.neighbors(v.id):
                g = gcd(g, graph.multiplicity(w))
            r[v.id] = g
    return GcdData(delta=delta, r=r)


# -- builders -------------------------------------------------------------


def build_ordinary(m: int) -> ResolutionGraph:
    """Graph of the ordinary m-fold point: one divisor crossed by m branches."""
    if m < 1:
        raise GraphValidationError([f"ordinary point needs m >= 1, got {m}"])
    return ResolutionGraph.make([(1, m, m)], [], base=1)


def chain_multiplicities(parts: Sequence[int], seed: int | None = None) -> list[int]:
    """Divisor multiplicities m_1..m_k of a chain germ.

    ``m_1 = p_1 + sum_{i>=2} (i-1) p_i`` and then
    ``m_2 = m_1 + sum_{j>=2} p_j``, ``m_(i+1) = m_i + m_1 + sum_{j>=i+1} p_j``.
    A ``seed`` overrides m_1; this is how the same tangential cluster is
    re-resolved inside a union with other germs (the first blowup then has
    the multiplicity of the whole union).
    """
    k = len(parts)
    m1 = parts[0] + sum((i - 1) * parts[i - 1] for i in range(2, k + 1))
    first = m1 if seed is None else seed
    ms = [first]
    if k >= 2:
        ms.append(first + sum(parts[1:]))
    for i in range(2, k):
        ms.append(ms[-1] + first + sum(parts[i:]))
    if seed is None and k >= 2:
        assert ms[-1] == k * m1 - parts[0]  # closed form for the deepest divisor
    return ms


def build_chain(parts: Sequence[int]) -> ResolutionGraph:
    """Graph of the chain germ with branch counts ``parts = (p_1, ..., p_k)``.

    The dual graph is the path E_1 - E_k - E_(k-1) - ... - E_2 with p_i
    branches crossing E_i; the base is E_1.
    """
    parts = tuple(int(p) for p in parts)
    if not parts:
        raise GraphValidationError(["chain needs at least one part"])
    if any(p < 0 for p in parts):
        raise GraphValidationError([f"negative part in {parts}"])
    if len(parts) > 1 and parts[-1] == 0:
        raise GraphValidationError([f"trailing zero part in {parts}"])
    ms = chain_multiplicities(parts)
    if ms[0] < 1:
        raise GraphValidationError([f"chain {parts} has first multiplicity {ms[0]} < 1"])
    k = len(parts)
    vertices = [(i, ms[i - 1], parts[i - 1]) for i in range(1, k + 1)]
    edges = []
    if k >= 2:
        edges.append((1, k))
        edges.extend((i, i - 1) for i in range(k, 2, -1))
    return ResolutionGraph.make(vertices, edges, base=1)


def build_basic(p: int, q: int) -> ResolutionGraph:
    """Graph of ``(x^p + y^p)(y^q - x^(2q))``.

    For q in {0, 1} the germ is the ordinary (p+q)-fold point and the
    one-vertex graph is returned; for q >= 2 it is the two-vertex chain.
    """
    if p < 0 or q < 0 or (p == 0 and q == 0):
        raise GraphValidationError([f"invalid basic type ({p},{q})"])
    if q <= 1:
        return build_ordinary(p + q)
    return build_chain((p, q))


# -- the merged family ------------------------------------------------------


@dataclass(frozen=True)
class FamilyData:
    """Shape of a graph built from the standard families.

    ``base_m``/``base_germs`` decorate the first blowup; each arm is the
    tuple ``(p_2, ..., p_k)`` of branch counts of one tangential cluster,
    ordered from the far end of the arm towards the base.
    """

    base_m: int
    base_germs: int
    arms: tuple[tuple[int, ...], ...]

    def cluster_multiplicity(self, arm: tuple[int, ...]) -> int:
        """Multiplicity of the tangential cluster an arm resolves."""
        return sum((i - 1) * p for i, p in enumerate(arm, start=2))


def classify_family(graph: ResolutionGraph) -> FamilyData:
    """Recognize a graph as base-plus-chain-arms, or raise GraphStructureError.

    Every builder output (ordinary points, chains, generic unions of those)
    has this shape: the base may carry several arms, each arm is a path
    whose multiplicities follow the chain recursion seeded by the base
    multiplicity.
    """
    graph.ensure_valid()
    base = graph.base
    base_m = graph.multiplicity(base)
    arms: list[tuple[int, ...]] = []
    for arm_root in graph.neighbors(base):
        path = [arm_root]
        prev = base
        while True:
            nxt = [w for w in graph.neighbors(path[-1]) if w != prev]
            if not nxt:
                break
            if len(nxt) > 1:
                raise GraphStructureError(
                    f"vertex {path[-1]} branches inside an arm; graph outside the merged family"
                )
            prev = path[-1]
            path.append(nxt[0])
        # The path runs base -> E_k -> ... -> E_2; chain order is p_2..p_k.
        parts = tuple(graph.germs(v) for v in reversed(path))
        expected = chain_multiplicities((0,) + parts, seed=base_m)[1:]
        actual = [graph.multiplicity(v) for v in reversed(path)]
        if actual != expected:
            raise GraphStructureError(
                f"arm at {arm_root}: multiplicities {actual} do not match the "
                f"chain recursion {expected} seeded by base multiplicity {base_m}"
            )
        arms.append(parts)
    return FamilyData(base_m=base_m, base_germs=graph.germs(base), arms=tuple(arms))


def family_graph(data: FamilyData) -> ResolutionGraph:
    """Rebuild the graph of a FamilyData description (ids in builder layout)."""
    vertices = [(1, data.base_m, data.base_germs)]
    edges: list[tuple[int, int]] = []
    next_id = 2
    for arm in data.arms:
        ms = chain_multiplicities((0,) + arm, seed=data.base_m)[1:]
        k = len(arm)
        ids = list(range(next_id, next_id + k))  # ids in chain order E_2..E_k
        for pos in range(k):
            vertices.append((ids[pos], ms[pos], arm[pos]))
        edges.append((1, ids[-1]))
        for pos in range(k - 1, 0, -1):
            edges.append((ids[pos], ids[pos - 1]))
        next_id += k
    return ResolutionGraph.make(vertices, edges, base=1)


def merge_generic(graphs: Sequence[ResolutionGraph]) -> ResolutionGraph:
    """Union of germs taken in pairwise distinct tangent directions.

    The first blowup of the union carries the sum of the parts' first
    multiplicities and of their transverse branch counts; each part's
    tangential arms reappear with multiplicities re-derived from the new
    first multiplicity (the blowup history below the first divisor is
    unchanged, but every pullback order now includes the other parts).
    """
    if not graphs:
        raise GraphStructureError("merge of an empty list")
    parts = [classify_family(g) for g in graphs]
    merged = FamilyData(
        base_m=sum(p.base_m for p in parts),
        base_germs=sum(p.base_germs for p in parts),
        arms=tuple(arm for p in parts for arm in p.arms),
    )
    return family_graph(merged)


# -- file format ------------------------------------------------------------


def graph_to_dict(graph: ResolutionGraph) -> dict:
    return {
        "vertices": [{"id": v.id, "m": v.m, "germs": v.germs} for v in graph.vertices],
        "edges": [[a, b] for a, b in graph.edges],
        "base": graph.base,
    }


def graph_from_dict(data: dict) -> ResolutionGraph:
    """Strict loader for the graph file format; unknown fields are rejected."""
    if not isinstance(data, dict):
        raise GraphValidationError(["graph document must be a JSON object"])
    unknown = set(data) - {"vertices", "edges", "base"}
    if unknown:
        raise GraphValidationError([f"unknown fields: {sorted(unknown)}"])
    missing = {"vertices", "edges", "base"} - set(data)
    if missing:
        raise GraphValidationError([f"missing fields: {sorted(missing)}"])
    vertices = []
    for entry in data["vertices"]:
        bad = set(entry) - {"id", "m", "germs"}
        if bad:
            raise GraphValidationError([f"unknown vertex fields: {sorted(bad)}"])
        for field in ("id", "m", "germs"):
            if field not in entry or not isinstance(entry[field], int):
                raise GraphValidationError([f"vertex field {field!r} missing or not an integer"])
        vertices.append((entry["id"], entry["m"], entry["germs"]))
    edges = []
    for pair in data["edges"]:
        if not (isinstance(pair, list) and len(pair) == 2 and all(isinstance(x, int) for x in pair)):
            raise GraphValidationError([f"edge {pair!r} is not a pair of vertex ids"])
        edges.append(tuple(pair))
    if not isinstance(data["base"], int):
        raise GraphValidationError(["base must be a vertex id"])
    return ResolutionGraph.make(vertices, edges, data["base"]).ensure_valid()


def load_graph(path: str) -> ResolutionGraph:
    with open(path, "r", encoding="utf-8") as fh:
        return graph_from_dict(json.load(fh))
