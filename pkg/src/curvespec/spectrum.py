"""Signed multisets of spectral values with exact rational arithmetic.

The spectrum of an isolated plane curve singularity is a multiset of mu
rational numbers in the open interval (-1, 1), written additively as
``sum t^(xi_i)``.  This module provides the ambient abelian group: formal
integer combinations of such multisets, together with spectral pairs
(values refined by an integer weight).  Coefficients may be negative;
formal differences of spectra are first-class citizens.

All values are `fractions.Fraction` instances, so every comparison and
every coefficient is exact.  Combos are immutable and iterate in
ascending value order, which makes their text form canonical.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Tuple, Union

from .errors import ComboError

#: The universal exact scalar for spectral values.
Rational = Fraction

RationalLike = Union[Rational, int, str]


def as_rational(value: RationalLike) -> Rational:
    """Coerce ints, ``"p/q"`` strings and Fractions to a reduced Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise ComboError(f"cannot interpret {value!r} as a rational number")


def format_rational(value: Rational) -> str:
    """Render ``p/q`` in lowest terms, or a bare integer when q = 1."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _validate_value(value: Rational) -> Rational:
    if not -1 < value < 1:
        raise ComboError(f"spectral value {value} outside (-1, 1)")
    return value


class SpectrumCombo:
    """Finite map from spectral values in (-1, 1) to signed integer coefficients.

    Zero coefficients are never stored.  Supports addition, subtraction and
    integer scaling; instances are immutable and hashable.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Union[Mapping, Iterable[Tuple]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        data: dict[Rational, int] = {}
        for value, coeff in items:
            value = _validate_value(as_rational(value))
            if not isinstance(coeff, int) or isinstance(coeff, bool):
                raise ComboError(f"coefficient {coeff!r} at t^{value} is not an integer")
            if coeff:
                data[value] = data.get(value, 0) + coeff
                if data[value] == 0:
                    del data[value]
        object.__setattr__(self, "_terms", data)

    # -- basic queries ------------------------------------------------

    def coefficient(self, value: RationalLike) -> int:
        return self._terms.get(as_rational(value), 0)

    def items(self) -> list[Tuple[Rational, int]]:
        """Terms in ascending value order (the canonical order)."""
        return sorted(self._terms.items())

    def support(self) -> Tuple[Rational, ...]:
        return tuple(sorted(self._terms))

    def denominators(self) -> set[int]:
        return {v.denominator for v in self._terms}

    def max_value(self) -> Rational | None:
        """Largest value carrying a nonzero coefficient, or None if empty."""
        return max(self._terms) if self._terms else None

    def total_mass(self) -> int:
        """Sum of all coefficients; equals the Milnor number for a genuine spectrum."""
        return sum(self._terms.values())

    def is_symmetric(self) -> bool:
        """True iff the coefficient at v equals the coefficient at -v for all v."""
        return all(coeff == self._terms.get(-value, 0) for value, coeff in self._terms.items())

    def window_count(self, lo: RationalLike, hi: RationalLike) -> int:
        """Sum of coefficients over the half-open window (lo, hi].

        ``lo = -1`` denotes the open lower end of the whole value range.
        The result may be negative for formal combinations.
        """
        lo = as_rational(lo)
        hi = as_rational(hi)
        if not (-1 <= lo < hi < 1):
            raise ComboError(f"invalid window ({lo}, {hi}]")
        return sum(coeff for value, coeff in self._terms.items() if lo < value <= hi)

    # -- algebra ------------------------------------------------------

    def __add__(self, other: "SpectrumCombo") -> "SpectrumCombo":
        if not isinstance(other, SpectrumCombo):
            return NotImplemented
        data = dict(self._terms)
        for value, coeff in other._terms.items():
            data[value] = data.get(value, 0) + coeff
        return SpectrumCombo(data)

    def __sub__(self, other: "SpectrumCombo") -> "SpectrumCombo":
        return self + (-other)

    def __neg__(self) -> "SpectrumCombo":
        return SpectrumCombo({v: -c for v, c in self._terms.items()})

    def __mul__(self, scalar: int) -> "SpectrumCombo":
        if not isinstance(scalar, int) or isinstance(scalar, bool):
            return NotImplemented
        return SpectrumCombo({v: scalar * c for v, c in self._terms.items()})

    __rmul__ = __mul__

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[Tuple[Rational, int]]:
        return iter(self.items())

    def __eq__(self, other) -> bool:
        return isinstance(other, SpectrumCombo) and self._terms == other._terms

    def __hash__(self) -> int:
        return hash(tuple(self.items()))

    # -- rendering ----------------------------------------------------

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for i, (value, coeff) in enumerate(self.items()):
            term = f"{abs(coeff)}*t^({format_rational(value)})"
            if i == 0:
                parts.append(term if coeff > 0 else f"-{term}")
            else:
                parts.append(f"+ {term}" if coeff > 0 else f"- {term}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"SpectrumCombo({self.items()!r})"

    def to_json_terms(self) -> list[dict]:
        return [{"value": format_rational(v), "coeff": c} for v, c in self.items()]


class SpectralPairCombo:
    """Finite map from (value, weight) pairs to signed integer coefficients.

    Weights refine spectral values; for reduced plane curve germs only the
    weights 0, 1 and 2 occur.  Forgetting weights recovers a SpectrumCombo.
    """

    __slots__ = ("_terms",)

    ALLOWED_WEIGHTS = (0, 1, 2)

    def __init__(self, terms: Union[Mapping, Iterable[Tuple]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        data: dict[Tuple[Rational, int], int] = {}
        for key, coeff in items:
            value, weight = key
            value = _validate_value(as_rational(value))
            if weight not in self.ALLOWED_WEIGHTS:
                raise ComboError(f"weight {weight!r} outside {self.ALLOWED_WEIGHTS}")
            if not isinstance(coeff, int) or isinstance(coeff, bool):
                raise ComboError(f"coefficient {coeff!r} at t^[{value},{weight}] is not an integer")
            if coeff:
                k = (value, weight)
                data[k] = data.get(k, 0) + coeff
                if data[k] == 0:
                    del data[k]
        object.__setattr__(self, "_terms", data)

    def coefficient(self, value: RationalLike, weight: int) -> int:
        return self._terms.get((as_rational(value), weight), 0)

    def items(self) -> list[Tuple[Tuple[Rational, int], int]]:
        return sorted(self._terms.items())

    def total_mass(self) -> int:
        return sum(self._terms.values())

    def forget_weights(self) -> SpectrumCombo:
        """Sum coefficients over weights at equal values."""
        data: dict[Rational, int] = {}
        for (value, _weight), coeff in self._terms.items():
            data[value] = data.get(value, 0) + coeff
        return SpectrumCombo(data)

    def __add__(self, other: "SpectralPairCombo") -> "SpectralPairCombo":
        if not isinstance(other, SpectralPairCombo):
            return NotImplemented
        data = dict(self._terms)
        for key, coeff in other._terms.items():
            data[key] = data.get(key, 0) + coeff
        return SpectralPairCombo(data)

    def __sub__(self, other: "SpectralPairCombo") -> "SpectralPairCombo":
        return self + (-other)

    def __neg__(self) -> "SpectralPairCombo":
        return SpectralPairCombo({k: -c for k, c in self._terms.items()})

    def __mul__(self, scalar: int) -> "SpectralPairCombo":
        if not isinstance(scalar, int) or isinstance(scalar, bool):
            return NotImplemented
        return SpectralPairCombo({k: scalar * c for k, c in self._terms.items()})

    __rmul__ = __mul__

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, SpectralPairCombo) and self._terms == other._terms

    def __hash__(self) -> int:
        return hash(tuple(self.items()))

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for i, ((value, weight), coeff) in enumerate(self.items()):
            term = f"{abs(coeff)}*t^[{format_rational(value)},{weight}]"
            if i == 0:
                parts.append(term if coeff > 0 else f"-{term}")
            else:
                parts.append(f"+ {term}" if coeff > 0 else f"- {term}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"SpectralPairCombo({self.items()!r})"


# -- module-level operation surface ------------------------------------


def combine(combos: Iterable[SpectrumCombo], coefficients: Iterable[int]) -> SpectrumCombo:
    """Pointwise integer-linear combination ``sum a_i * S_i``.

    Raises ComboError when the two lists differ in length.
    """
    combos = list(combos)
    coefficients = list(coefficients)
    if len(combos) != len(coefficients):
        raise ComboError(
            f"length mismatch: {len(combos)} combos vs {len(coefficients)} coefficients"
        )
    total = SpectrumCombo()
    for combo, coeff in zip(combos, coefficients):
        if coeff:
            total = total + coeff * combo
    return total


def window_count(combo: SpectrumCombo, lo: RationalLike, hi: RationalLike) -> int:
    return combo.window_count(lo, hi)


def is_symmetric(combo: SpectrumCombo) -> bool:
    return combo.is_symmetric()


def total_mass(combo: SpectrumCombo) -> int:
    return combo.total_mass()


def forget_weights(pairs: SpectralPairCombo) -> SpectrumCombo:
    return pairs.forget_weights()
