"""Spectrum and spectral pairs of a curve germ from its resolution graph.

Both computations run over the decorated dual tree.  Spectral pairs follow
the Schrauwen--Steenbrink--Stevens description: with

    delta_i = gcd(m_i, m_parent(i))          (non-base vertices)
    r_i     = 1 if a branch crosses E_i, else gcd(m_i, {m_j : E_j adjacent})

one forms, per divisor,

    a_i = sum_{0 < s < m_i, m_i does not divide s*r_i}
          (-1 + |C~ cap E_i| s/m_i + sum_{j adjacent} {s m_j / m_i})
          (t^[s/m_i - 1, 1] + t^[1 - s/m_i, 1])
    b_i = sum_{0 < s < r_i} (t^[-s/r_i, 2] + t^[s/r_i, 0])
    c_i = sum_{0 < s < delta_i} (t^[-s/delta_i, 2] + t^[s/delta_i, 0])

and the spectral pairs are

    Spp = sum_i a_i + sum_{i != base} (c_i - b_i) - b_base
          + (total branch count - 1) t^[0, 1].

Forgetting the weights and rearranging gives the spectrum directly as
``sum_i sum_{|k| < m_i} d_{|k|, i} t^(k / m_i)`` with

    d_{k,i} = -1 + |C~ cap E_i| (m_i - k)/m_i
              + sum_{j adjacent, j != parent} { -k m_j / m_i }
              + [i != base] * (1 - { k m_parent / m_i })

where the base vertex drops the bracketed term and sums the fractional
parts over all of its neighbours.  Per-vertex coefficients are rational;
their totals are integers exactly on trees consistent with an actual
resolution, and this integrality is asserted.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import NonIntegralSpectrumError
from .resolution import ResolutionGraph, gcd_data, merge_generic
from .spectrum import Rational, SpectralPairCombo, SpectrumCombo


def _frac(x: Fraction) -> Fraction:
    """Fractional part {x} in [0, 1)."""
    return x - (x.numerator // x.denominator)


@dataclass(frozen=True)
class DCoefficient:
    """Per-divisor spectral coefficient d_{k,i} at exponent k/m_i."""

    vertex: int
    k: int
    value: Fraction


def d_coefficient(graph: ResolutionGraph, parents: dict[int, int], vid: int, k: int) -> Fraction:
    v = graph.vertex(vid)
    m = Fraction(v.m)
    total = Fraction(-1) + v.germs * (v.m - k) / m
    parent = parents.get(vid)
    for w in graph.neighbors(vid):
        if w == parent:
            continue
        total += _frac(Fraction(-k * graph.multiplicity(w), v.m))
    if parent is not None:
        total += 1 - _frac(Fraction(k * graph.multiplicity(parent), v.m))
    return total


def d_coefficients(graph: ResolutionGraph) -> tuple[DCoefficient, ...]:
    """All d_{k,i} for 0 <= k < m_i, in vertex then k order."""
    graph.ensure_valid()
    parents = graph.parent_map()
    out = []
    for v in graph.vertices:
        for k in range(v.m):
            out.append(DCoefficient(v.id, k, d_coefficient(graph, parents, v.id, k)))
    return tuple(out)


@lru_cache(maxsize=65536)
def _rational_spectrum(graph: ResolutionGraph) -> tuple[tuple[Fraction, Fraction], ...]:
    """Exact spectrum totals, coefficient per value, without integrality demands.

    The swap identities cancel exactly even on decorated trees whose
    individual spectra are not integral, so this shared evaluator keeps
    rational coefficients; ``spectrum_from_graph`` adds the integrality
    gate for public consumption.
    """
    graph.ensure_valid()
    parents = graph.parent_map()
    acc: dict[Fraction, Fraction] = {}
    for v in graph.vertices:
        for k in range(v.m):
            d = d_coefficient(graph, parents, v.id, k)
            if d == 0:
                continue
            for value in {Fraction(k, v.m), Fraction(-k, v.m)}:
                acc[value] = acc.get(value, 0) + d
    return tuple(sorted((value, coeff) for value, coeff in acc.items() if coeff != 0))


def spectrum_from_graph(graph: ResolutionGraph) -> SpectrumCombo:
    """Spectrum of the germ resolved by ``graph``; d is evaluated at |k| and
    emitted at both k/m_i and -k/m_i, the k = 0 term once per vertex."""
    terms = _rational_spectrum(graph)
    bad = [(v, c) for v, c in terms if c.denominator != 1]
    if bad:
        raise NonIntegralSpectrumError(
            f"non-integer spectral coefficients {bad[:4]}... on {graph}"
        )
    return SpectrumCombo({v: int(c) for v, c in terms})


def spectrum_rational(graph: ResolutionGraph) -> dict[Fraction, Fraction]:
    """Rational-coefficient spectrum totals (no integrality gate)."""
    return dict(_rational_spectrum(graph))


@lru_cache(maxsize=16384)
def _rational_pairs(graph: ResolutionGraph) -> tuple[tuple[tuple[Fraction, int], Fraction], ...]:
    graph.ensure_valid()
    data = gcd_data(graph)
    acc: dict[tuple[Fraction, int], Fraction] = {}

    def add(value: Fraction, weight: int, coeff: Fraction) -> None:
        key = (value, weight)
        acc[key] = acc.get(key, 0) + coeff

    for v in graph.vertices:
        m = v.m
        r = data.r[v.id]
        for s in range(1, m):
            if (s * r) % m == 0:
                continue
            coeff = Fraction(-1) + Fraction(v.germs * s, m)
            for w in graph.neighbors(v.id):
                coeff += _frac(Fraction(s * graph.multiplicity(w), m))
            if coeff != 0:
                add(Fraction(s, m) - 1, 1, coeff)
                add(1 - Fraction(s, m), 1, coeff)
        # b_i enters with a minus sign for every vertex.
        for s in range(1, r):
            add(Fraction(-s, r), 2, Fraction(-1))
            add(Fraction(s, r), 0, Fraction(-1))
    for vid, delta in data.delta.items():
        for s in range(1, delta):
            add(Fraction(-s, delta), 2, Fraction(1))
            add(Fraction(s, delta), 0, Fraction(1))
    add(Fraction(0), 1, Fraction(graph.total_germs() - 1))
    return tuple(sorted((key, coeff) for key, coeff in acc.items() if coeff != 0))


def spectral_pairs_from_graph(graph: ResolutionGraph) -> SpectralPairCombo:
    """Spectral pairs of the germ resolved by ``graph``.

    Weight convention: the a_i terms carry weight 1 on both paired values,
    the b/c terms weight 2 on the negative value and 0 on the positive one,
    and the global branch-count term sits at t^[0, 1].
    """
    terms = _rational_pairs(graph)
    bad = [(k, c) for k, c in terms if c.denominator != 1]
    if bad:
        raise NonIntegralSpectrumError(
            f"non-integer spectral-pair coefficients {bad[:4]}... on {graph}"
        )
    return SpectralPairCombo({k: int(c) for k, c in terms})


def forget_weights(pairs: SpectralPairCombo) -> SpectrumCombo:
    return pairs.forget_weights()


# -- non-additivity of spectral pairs ---------------------------------------


@dataclass(frozen=True)
class SppWitness:
    """A four-graph swap instance where the spectrum identity holds but the
    spectral-pair identity fails."""

    parts: tuple[tuple[int, ...], ...]
    graphs: tuple[ResolutionGraph, ResolutionGraph, ResolutionGraph, ResolutionGraph]
    spec_residual: SpectrumCombo
    spp_residual: SpectralPairCombo


def _default_parts_library(max_multiplicity: int) -> list[tuple[int, ...]]:
    """Small single-direction families, as chain part tuples, by multiplicity."""
    parts: list[tuple[int, ...]] = []
    for m in range(1, max_multiplicity + 1):
        parts.append((m,))
    for p1 in range(0, 3):
        for q in range(2, max_multiplicity + 1):
            parts.append((p1, q))
    parts.append((0, 0, 1))
    parts.append((0, 0, 2))
    parts.append((1, 0, 1))
    from .resolution import chain_multiplicities

    parts = [p for p in parts if 0 < chain_multiplicities(p)[0] <= max_multiplicity]
    parts.sort(key=lambda p: (chain_multiplicities(p)[0], len(p), p))
    return parts


def find_spectral_pair_counterexample(
    max_multiplicity: int = 8,
    parts_library: Sequence[tuple[int, ...]] | None = None,
) -> SppWitness | None:
    """Search two-direction unions for non-additivity of spectral pairs.

    Every union of two germs in distinct tangent directions satisfies the
    four-term swap identity on spectra.  This enumerates small instances,
    evaluates the same four germs on spectral pairs, and returns the first
    instance whose spectral-pair residual is nonzero while the spectrum
    residual vanishes.  Returns None when the budget is exhausted; that is
    a legitimate, separately reportable outcome.
    """
    from .recombine import Detachment, SwapInstance, swap_at_divisor
    from .resolution import build_chain, chain_multiplicities

    library = list(parts_library) if parts_library is not None else _default_parts_library(
        max_multiplicity
    )
    if max_multiplicity < 2:
        return None
    pairs = []
    for i, a in enumerate(library):
        for b in library[i:]:
            total = chain_multiplicities(a)[0] + chain_multiplicities(b)[0]
            if total <= max_multiplicity:
                pairs.append((total, a, b))
    pairs.sort()
    for _total, a, b in pairs:
        ga, gb = build_chain(a), build_chain(b)
        merged = merge_generic([ga, gb])
        # Detach part a: its transverse germs plus its arm, with degree equal
        # to the intersection number of a's strict transform with the first
        # divisor, i.e. mult(a).  All four graphs are then genuine.
        arm_ids = tuple(merged.neighbors(merged.base)[: 1 if len(a) > 1 else 0])
        instance = SwapInstance(
            graph=merged,
            pivot=merged.base,
            detached=Detachment(germs=a[0], subtrees=arm_ids),
            degree=chain_multiplicities(a)[0],
        )
        residual = swap_at_divisor(instance)
        g1, g2, g3, g4 = residual.graphs
        spp = (
            spectral_pairs_from_graph(g1)
            - spectral_pairs_from_graph(g2)
            - spectral_pairs_from_graph(g3)
            + spectral_pairs_from_graph(g4)
        )
        if spp and not residual.spec_residual:
            return SppWitness(
                parts=(a, b),
                graphs=residual.graphs,
                spec_residual=residual.spec_residual,
                spp_residual=spp,
            )
    return None
