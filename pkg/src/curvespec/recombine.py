"""Cut-and-paste calculus on resolution graphs.

The central identity: fix a divisor E_i of multiplicity m and a subset D
of its attachments (transverse branches and/or whole subtrees).  Writing
G(att) for the graph with E_i carrying the attachments ``att``, the
per-divisor spectral contributions are additive in the attachment list,
so for any replacement count d

    Spec G(rest + D) - Spec G(rest + d branches)
        = Spec G(D + (m - d) branches) - Spec G(m branches).

The identity holds for every d; taking d to be the intersection number of
D with E_i makes all four graphs genuine resolutions, which is how the
decomposition of a union of tangential families into chain types below is
driven.  Iterating the swap expresses every spectrum as an integer
combination of chain types and then of basic types; the exact linear
solver plays the role of the closed-form recursion for the last step and
certifies every output against the graph spectrum it must reproduce.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Iterable, Sequence

from . import linalg
from .basictypes import (
    BasicType,
    ChainType,
    TypeCombo,
    basic_spectrum,
    basic_type,
    chain_type,
    combo_spectrum,
)
from .errors import (
    AmbiguousMultiplicityError,
    DecompositionError,
    GraphStructureError,
    NonIntegralSpectrumError,
)
from .formulas import spectrum_from_graph, spectrum_rational
from .resolution import (
    FamilyData,
    ResolutionGraph,
    build_chain,
    build_ordinary,
    classify_family,
    family_graph,
    merge_generic,
)
from .spectrum import SpectrumCombo


# -- the four-term swap ------------------------------------------------------


@dataclass(frozen=True)
class Detachment:
    """Attachment subset at the pivot: a branch count and/or subtree roots."""

    germs: int = 0
    subtrees: tuple[int, ...] = ()


@dataclass(frozen=True)
class SwapInstance:
    """One application of the swap at ``pivot`` detaching ``detached``.

    ``degree`` is the branch count replacing the detached set; when omitted
    it defaults to the number of detached attachment edges (each germ and
    each subtree edge counting one).  Any degree yields a vanishing
    residual; the intersection-number degree additionally keeps all four
    graphs genuine.
    """

    graph: ResolutionGraph
    pivot: int
    detached: Detachment
    degree: int | None = None

    def effective_degree(self) -> int:
        if self.degree is not None:
            return self.degree
        return self.detached.germs + len(self.detached.subtrees)


@dataclass(frozen=True)
class RelationResidual:
    spec_residual: SpectrumCombo
    graphs: tuple[ResolutionGraph, ResolutionGraph, ResolutionGraph, ResolutionGraph]


def _component_vertices(graph: ResolutionGraph, pivot: int, root: int) -> set[int]:
    """Vertices of the component of graph - pivot containing root."""
    seen = {root}
    stack = [root]
    while stack:
        u = stack.pop()
        for w in graph.neighbors(u):
            if w != pivot and w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def _restrict(graph: ResolutionGraph, keep: set[int], base: int) -> ResolutionGraph:
    vertices = [v for v in graph.vertices if v.id in keep]
    edges = [(a, b) for a, b in graph.edges if a in keep and b in keep]
    return ResolutionGraph.make(vertices, edges, base)


def _with_germs(graph: ResolutionGraph, vid: int, germs: int) -> ResolutionGraph:
    vertices = [(v.id, v.m, germs if v.id == vid else v.germs) for v in graph.vertices]
    return ResolutionGraph.make(vertices, graph.edges, graph.base)


def swap_graphs(instance: SwapInstance) -> tuple[ResolutionGraph, ...]:
    """The four graphs (original, D replaced, rest replaced, all replaced)."""
    g = instance.graph.ensure_valid()
    pivot = instance.pivot
    v = g.vertex(pivot)
    det = instance.detached
    nbrs = set(g.neighbors(pivot))
    if det.germs < 0 or det.germs > v.germs:
        raise GraphStructureError(
            f"cannot detach {det.germs} branches from vertex {pivot} carrying {v.germs}"
        )
    if len(set(det.subtrees)) != len(det.subtrees) or not set(det.subtrees) <= nbrs:
        raise GraphStructureError(f"subtrees {det.subtrees} are not attached to vertex {pivot}")
    degree = instance.effective_degree()
    if not 0 <= degree <= v.m:
        raise GraphStructureError(f"replacement degree {degree} outside [0, {v.m}]")

    detached_vertices: set[int] = set()
    for root in det.subtrees:
        detached_vertices |= _component_vertices(g, pivot, root)

    keep2 = {w.id for w in g.vertices} - detached_vertices
    base2 = g.base if g.base in keep2 else pivot
    g2 = _with_germs(_restrict(g, keep2, base2), pivot, v.germs - det.germs + degree)

    keep3 = detached_vertices | {pivot}
    g3 = _with_germs(_restrict(g, keep3, pivot), pivot, det.germs + (v.m - degree))

    g4 = ResolutionGraph.make([(pivot, v.m, v.m)], [], pivot)
    return g, g2, g3, g4


def swap_at_divisor(instance: SwapInstance) -> RelationResidual:
    """Evaluate the four-term identity; the residual vanishes for every
    valid instance (the per-divisor contributions cancel pairwise)."""
    graphs = swap_graphs(instance)
    acc: dict[Fraction, Fraction] = {}
    for graph, sign in zip(graphs, (1, -1, -1, 1)):
        for value, coeff in spectrum_rational(graph).items():
            acc[value] = acc.get(value, 0) + sign * coeff
    acc = {k: v for k, v in acc.items() if v}
    if any(c.denominator != 1 for c in acc.values()):
        raise NonIntegralSpectrumError(f"non-integral swap residual {acc} on {instance}")
    return RelationResidual(SpectrumCombo({k: int(v) for k, v in acc.items()}), graphs)


# -- tangential decomposition ------------------------------------------------


def directional_approximation(part: ResolutionGraph, total_multiplicity: int) -> ResolutionGraph:
    """The part padded with transverse branches up to the full multiplicity."""
    data = classify_family(part)
    extra = total_multiplicity - data.base_m
    if extra < 0:
        raise GraphStructureError(
            f"part multiplicity {data.base_m} exceeds the union multiplicity {total_multiplicity}"
        )
    if extra == 0:
        return family_graph(data)
    return merge_generic([part, build_ordinary(extra)])


def tangential_identity_check(parts: Sequence[ResolutionGraph]) -> SpectrumCombo:
    """Residual of the tangential decomposition identity

        Spec(union) = sum_a Spec(approximation_a) - (r - 1) Spec(ordinary m),

    where m is the union multiplicity and each approximation pads one part
    with m - mult(part) transverse branches.  Vanishes identically.
    """
    if not parts:
        raise GraphStructureError("no parts given")
    datas = [classify_family(p) for p in parts]
    m = sum(d.base_m for d in datas)
    merged = merge_generic(parts)
    residual = spectrum_from_graph(merged)
    for part in parts:
        residual = residual - spectrum_from_graph(directional_approximation(part, m))
    residual = residual + (len(parts) - 1) * spectrum_from_graph(build_ordinary(m))
    return residual


# -- graph -> chains ----------------------------------------------------------


def decompose_graph(graph: ResolutionGraph) -> dict[ChainType, int]:
    """Express Spec(graph) as an integer combination of chain types.

    Successive swaps at the first divisor detach one tangential cluster at
    a time (replacement degree = the cluster multiplicity), producing one
    chain per cluster, padded to the full multiplicity, minus copies of
    the ordinary point.  The result always carries exactly one positive
    summand more than negative ones, and is certified against the input
    spectrum before being returned.
    """
    data = classify_family(graph)
    clusters = [data.cluster_multiplicity(arm) for arm in data.arms]
    if data.base_germs + sum(clusters) != data.base_m:
        raise GraphStructureError(
            f"first multiplicity {data.base_m} does not match branches "
            f"{data.base_germs} plus cluster multiplicities {clusters}; "
            "graph is outside the reach of the chain decomposition"
        )
    combo: dict[ChainType, int] = {}

    def add(ct: ChainType, coeff: int) -> None:
        combo[ct] = combo.get(ct, 0) + coeff
        if combo[ct] == 0:
            del combo[ct]

    if not data.arms:
        add(chain_type((data.base_m,)), 1)
    else:
        for arm, cluster in zip(data.arms, clusters):
            add(chain_type((data.base_m - cluster,) + arm), 1)
        if len(data.arms) > 1:
            add(chain_type((data.base_m,)), -(len(data.arms) - 1))

    expected = spectrum_from_graph(graph)
    total = SpectrumCombo()
    for ct, coeff in combo.items():
        total = total + coeff * spectrum_from_graph(build_chain(ct.parts))
    if total != expected:
        raise DecompositionError(f"chain decomposition failed to reproduce the spectrum of {graph}")
    return combo


# -- chains -> basic types -----------------------------------------------------


def _chain_candidates(parts: tuple[int, ...]) -> list[BasicType]:
    """Basic types the chain decomposition ranges over, plus ordinary points."""
    from .resolution import chain_multiplicities

    k = len(parts)
    ms = chain_multiplicities(parts)
    m1 = ms[0]
    cands: set[BasicType] = set()
    cands.add(basic_type(parts[0], m1 - parts[0]))
    for i in range(2, k):  # chain positions 2..k-1
        sigma = sum(parts[i:])
        cands.add(basic_type(ms[i - 1] - m1 - sigma, m1 + sigma))
        cands.add(basic_type((i - 1) * m1 - parts[0], m1))
    for i in range(2, k + 1):
        cands.add(basic_type(ms[i - 1], 0))
        cands.add(basic_type(i * m1 - parts[0], 0))
    if m1 >= 2:
        cands.add(basic_type(m1, 0))
    cands.discard(BasicType(1, 0))  # empty spectrum
    return sorted(cands, key=lambda b: (b.scale, b.q, b.p), reverse=True)


def _solve_over_types(
    target: SpectrumCombo, candidates: Sequence[BasicType]
) -> tuple[list[int] | None, list[list[Fraction]]]:
    columns = [
        {value: Fraction(coeff) for value, coeff in basic_spectrum(bt.p, bt.q).items()}
        for bt in candidates
    ]
    goal = {value: Fraction(coeff) for value, coeff in target.items()}
    result = linalg.solve(columns, goal)
    if result.particular is None:
        return None, result.kernel
    solution = linalg.canonical_integer_solution(result.particular, result.kernel)
    if solution is None:
        raise DecompositionError(
            "rational solution exists but no integer one was found; "
            "the candidate set is too small or the input is outside the lattice"
        )
    return solution, result.kernel


@lru_cache(maxsize=None)
def _decompose_chain_cached(parts: tuple[int, ...]) -> TypeCombo:
    k = len(parts)
    if k == 1:
        return TypeCombo.of(parts[0], 0)
    if k == 2:
        return TypeCombo({basic_type(parts[0], parts[1]): 1})
    target = spectrum_from_graph(build_chain(parts))
    candidates = _chain_candidates(parts)
    solution, _ = _solve_over_types(target, candidates)
    if solution is None:
        return _spectrum_to_basic_impl(target, 2 * max(target.denominators(), default=1))
    combo = TypeCombo({bt: c for bt, c in zip(candidates, solution)})
    if combo_spectrum(combo) != target:
        raise DecompositionError(f"basic-type decomposition failed for chain{parts}")
    return combo


def decompose_chain(chain: ChainType | Iterable[int]) -> TypeCombo:
    """Integer combination of basic types with the spectrum of the chain germ.

    Chains of length one and two are basic types themselves; longer chains
    are resolved by exact elimination over the candidate family the
    recursive decomposition ranges over.  The result is certified: its
    spectrum equals the chain's graph spectrum exactly.
    """
    if not isinstance(chain, ChainType):
        chain = chain_type(chain)
    return _decompose_chain_cached(chain.parts)


def decompose_graph_to_basic(graph: ResolutionGraph) -> TypeCombo:
    """Full pipeline: graph -> chain combination -> basic-type combination."""
    total = TypeCombo()
    for ct, coeff in decompose_graph(graph).items():
        total = total + coeff * decompose_chain(ct)
    return total


# -- spectrum -> basic types ---------------------------------------------------


def candidate_types(d_max: int) -> list[BasicType]:
    """All basic types with p + 2q <= d_max (q >= 2) or p + q <= d_max (q = 0),
    excluding the smooth germ, in the canonical deep-scale-first order."""
    if d_max < 2:
        raise DecompositionError(f"d_max {d_max} too small")
    cands = [BasicType(m, 0) for m in range(2, d_max + 1)]
    for q in range(2, d_max // 2 + 1):
        for p in range(0, d_max - 2 * q + 1):
            cands.append(BasicType(p, q))
    return sorted(cands, key=lambda b: (b.scale, b.q, b.p), reverse=True)


def default_d_max(combo: SpectrumCombo) -> int:
    """Twice the least common multiple of the value denominators."""
    denominators = combo.denominators()
    return 2 * lcm(*denominators) if denominators else 2


def _spectrum_to_basic_impl(combo: SpectrumCombo, d_max: int) -> TypeCombo:
    candidates = candidate_types(d_max)
    solution, _ = _solve_over_types(combo, candidates)
    if solution is None:
        raise DecompositionError("infeasible")
    return TypeCombo({bt: c for bt, c in zip(candidates, solution)})


def spectrum_to_basic(combo: SpectrumCombo, d_max: int | None = None) -> TypeCombo | None:
    """Integer coordinates of a spectrum over the basic types, or None.

    Solves the exact linear system over all candidates within ``d_max``
    (default: twice the lcm of the denominators).  Returns None when no
    rational solution exists; raises DecompositionError when a rational
    solution exists but no integer one.  Where the candidate spectra admit
    linear relations the returned representative is the canonical one of
    the deterministic elimination order.
    """
    if not combo:
        return TypeCombo()
    if d_max is None:
        d_max = default_d_max(combo)
    if max(combo.denominators()) > d_max:
        return None
    try:
        return _spectrum_to_basic_impl(combo, d_max)
    except DecompositionError as err:
        if str(err) == "infeasible":
            return None
        raise


# -- multiplicity recovery -----------------------------------------------------


def recover_multiplicity(combo: SpectrumCombo, d_max: int | None = None) -> int:
    """Multiplicity of the germ a genuine spectrum belongs to.

    Decomposes the spectrum into basic types (the canonical representative
    of the deterministic elimination, which matches the decomposition the
    cut-and-paste calculus produces on genuine germs) and reads off the
    smallest first-level weight p + q with a nonzero net coefficient:
    every type produced by decomposing a germ of multiplicity m has weight
    >= m, and the weight-m terms sum to +1.  Cancellation at the minimal
    weight is reported as an error, never resolved by guessing.
    """
    if not combo:
        return 1  # smooth germ
    if d_max is None:
        d_max = 2 * max(combo.denominators())
    candidates = candidate_types(d_max)
    solution, _kernel = _solve_over_types(combo, candidates)
    if solution is None:
        raise DecompositionError(
            f"spectrum does not decompose over basic types with d_max={d_max}"
        )
    weights: dict[int, int] = {}
    for bt, coeff in zip(candidates, solution):
        if coeff:
            weights[bt.weight] = weights.get(bt.weight, 0) + coeff
    nets = {w: c for w, c in weights.items() if c}
    if not nets:
        raise DecompositionError("empty decomposition for a nonempty spectrum")
    wmin = min(nets)
    if nets[wmin] <= 0:
        raise AmbiguousMultiplicityError(
            f"weight {wmin} terms cancel to {nets[wmin]}; multiplicity not recoverable"
        )
    return wmin


# -- independence at desk scale --------------------------------------------------


def basis_rank(d_max: int) -> tuple[int, int]:
    """(candidate count, exact rank) of the basic-type spectra within d_max."""
    candidates = candidate_types(d_max)
    columns = [
        {value: Fraction(coeff) for value, coeff in basic_spectrum(bt.p, bt.q).items()}
        for bt in candidates
    ]
    return len(candidates), linalg.rank(columns)


def basis_kernel(d_max: int) -> list[TypeCombo]:
    """Integer basis of the linear relations among candidate spectra."""
    candidates = candidate_types(d_max)
    columns = [
        {value: Fraction(coeff) for value, coeff in basic_spectrum(bt.p, bt.q).items()}
        for bt in candidates
    ]
    result = linalg.solve(columns, {})
    relations = []
    for row in linalg.integer_kernel_basis(result.kernel):
        relations.append(TypeCombo({bt: c for bt, c in zip(candidates, row)}))
    return relations
