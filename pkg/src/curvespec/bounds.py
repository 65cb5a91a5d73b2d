"""Inequalities satisfied by spectra of plane curve germs.

The relative ("bracket") point of view subtracts the ordinary point of the
same multiplicity; several bounds are easiest to state for the bracket.
The pairing condition on an increasing sequence 0 < a_1 < ... < a_k,

    a_(i+1) + a_(k-i) < 1  for 0 <= i < (k-1)/2,  and the middle
    element is <= 1/2 when k is odd,

is stable under sorted unions; it drives the strengthened Givental bound

    a_(i+r+1) + a_(k-i) <= 1

on the distinct positive spectral values, where r counts the largest set
of distinct divisor multiplicities lying within a factor-two window.
Equality occurs exactly for ordinary multiple points.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .basictypes import ordinary_spectrum
from .errors import ComboError
from .resolution import ResolutionGraph
from .spectrum import Rational, RationalLike, SpectrumCombo, as_rational


def bracket(combo: SpectrumCombo, m: int) -> SpectrumCombo:
    """Relative spectrum: subtract the ordinary m-fold point."""
    if m < 1:
        raise ComboError(f"multiplicity {m} must be positive")
    return combo - ordinary_spectrum(m)


def givental_condition(seq: Sequence[RationalLike]) -> bool:
    """The pairing condition on a strictly increasing sequence in (0, 1)."""
    values = [as_rational(v) for v in seq]
    if any(not 0 < v < 1 for v in values):
        raise ComboError("sequence values must lie in (0, 1)")
    if any(a >= b for a, b in zip(values, values[1:])):
        raise ComboError("sequence must be strictly increasing")
    k = len(values)
    for i in range(k):
        if not i < (k - 1) / 2:
            break
        if values[i] + values[k - 1 - i] >= 1:  # a_(i+1) + a_(k-i), 0-based
            return False
    if k % 2 == 1 and values[(k - 1) // 2] > Fraction(1, 2):
        return False
    return True


def merge_sequences(a: Sequence[RationalLike], b: Sequence[RationalLike]) -> list[Rational]:
    """Sorted union without repetitions of two pairing-condition sequences.

    The union satisfies the condition again; this is asserted.
    """
    for seq in (a, b):
        if not givental_condition(seq):
            raise ComboError(f"input sequence {list(seq)} violates the pairing condition")
    merged = sorted({as_rational(v) for v in list(a) + list(b)})
    assert givental_condition(merged)
    return merged


def givental_r(graph: ResolutionGraph) -> int:
    """Largest number of distinct multiplicities within a strict factor-2 window."""
    graph.ensure_valid()
    ms = sorted({v.m for v in graph.vertices})
    best = 1
    for i, low in enumerate(ms):
        j = i
        while j + 1 < len(ms) and ms[j + 1] < 2 * low:
            j += 1
        best = max(best, j - i + 1)
    return best


@dataclass(frozen=True)
class GiventalReport:
    """Outcome of the strengthened pairing bound on one spectrum."""

    r: int
    alphas: tuple[Rational, ...]
    violations: tuple[tuple[int, int], ...]  # 1-based index pairs with sum > 1
    equality_indices: tuple[tuple[int, int], ...]  # pairs with sum exactly 1

    @property
    def holds(self) -> bool:
        return not self.violations


def givental_check(combo: SpectrumCombo, r: int) -> GiventalReport:
    """Check a_(i+r+1) + a_(k-i) <= 1 over the distinct positive values.

    Requires a symmetric combo with nonnegative coefficients and r >= 1.
    """
    if r < 1:
        raise ComboError(f"r must be >= 1, got {r}")
    if not combo.is_symmetric():
        raise ComboError("spectrum is not symmetric")
    if any(c < 0 for _v, c in combo.items()):
        raise ComboError("spectrum has negative coefficients")
    alphas = tuple(v for v, _c in combo.items() if v > 0)
    k = len(alphas)
    violations = []
    equalities = []
    for i in range(0, k - r - 1 + 1):
        a, b = i + r + 1, k - i  # 1-based indices
        if b < 1 or a > k:
            break
        pair = (min(a, b), max(a, b))
        total = alphas[a - 1] + alphas[b - 1]
        if total > 1:
            if pair not in violations:
                violations.append(pair)
        elif total == 1:
            if pair not in equalities:
                equalities.append(pair)
    return GiventalReport(
        r=r,
        alphas=alphas,
        violations=tuple(violations),
        equality_indices=tuple(equalities),
    )


def stabilization_count(combo: SpectrumCombo, m: int) -> int:
    """Index contribution of the double suspension, relative to the ordinary point.

    For the surface germ f(x, y) + z^2 the count of nonnegative-index
    directions equals twice the bracket's spectral mass in (-1, -1/2]
    (Thom--Sebastiani shifts the spectrum by 1/2).
    """
    return 2 * bracket(combo, m).window_count(Fraction(-1), Fraction(-1, 2))


def durfee_curve_check(
    combo: SpectrumCombo, m: int, alpha: RationalLike
) -> tuple[Rational, Rational, bool]:
    """Exact evaluation of the curve bound

        mu + 2 m / (1-alpha)^2  >  2 / (1-alpha)^2 * |Spec cap (-1, -alpha]|.

    Returns (lhs, rhs, holds) with both sides exact rationals.
    """
    alpha = as_rational(alpha)
    if not 0 <= alpha < 1:
        raise ComboError(f"alpha {alpha} outside [0, 1)")
    scale = 2 / (1 - alpha) ** 2
    lhs = combo.total_mass() + scale * m
    rhs = scale * combo.window_count(Fraction(-1), -alpha)
    return lhs, rhs, lhs > rhs
