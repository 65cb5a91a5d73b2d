"""Basic singularity types, their closed-form spectra, and the ring they span.

The basic type ``C_(p,q)`` is the germ ``(x^p + y^p)(y^q - x^(2q))``:
p pairwise transverse lines together with q smooth pairwise tangent
branches.  For q in {0, 1} this degenerates to the ordinary (p+q)-fold
point, so q = 1 is normalized away and never stored.

Its spectrum has the two-scale closed form

    sum_{|k| < p+2q} (q - ceil(q|k| / (p+2q))) t^(k/(p+2q))
  + sum_{|k| < p+q}  (p - 1 - floor(p|k| / (p+q))) t^(k/(p+q)),

with collisions between the two scales merged additively.  The chain
types ``C_(p_1,...,p_k)`` generalize the basic ones; their delta
invariant and Milnor number come from summing pairwise intersection
multiplicities of the branches.

Formal integer combinations of basic types form a commutative unital
ring under the merging product, generated on the level of generators by

    C_(p,q) x C_(p',q') = C_(p+p'+q', q) + C_(p+p'+q, q') - C_(p+p'+q+q', 0),

which covers the ordinary-point cases q = 0 or q' = 0 as degenerations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Tuple, Union

from .errors import ComboError, GraphValidationError
from .spectrum import Rational, SpectrumCombo


@dataclass(frozen=True, order=True)
class BasicType:
    """Normalized basic type: q is never 1, and (0,0) is excluded."""

    p: int
    q: int

    def __post_init__(self):
        if self.p < 0 or self.q < 0:
            raise GraphValidationError([f"negative basic type ({self.p},{self.q})"])
        if self.q == 1:
            raise GraphValidationError(["q = 1 must be normalized to (p+1, 0)"])
        if self.p == 0 and self.q == 0:
            raise GraphValidationError(["basic type (0,0) does not exist"])

    @property
    def weight(self) -> int:
        """First-level multiplicity p + q of the germ."""
        return self.p + self.q

    @property
    def scale(self) -> int:
        """The deeper denominator p + 2q."""
        return self.p + 2 * self.q

    def __str__(self) -> str:
        return f"ord({self.p})" if self.q == 0 else f"basic({self.p},{self.q})"


def basic_type(p: int, q: int) -> BasicType:
    """Construct a BasicType, folding q = 1 into the ordinary (p+1)-point."""
    if q == 1:
        return BasicType(p + 1, 0)
    return BasicType(p, q)


@dataclass(frozen=True, order=True)
class ChainType:
    """Branch counts (p_1, ..., p_k) of a chain germ."""

    parts: Tuple[int, ...]

    def __post_init__(self):
        if not self.parts or any(p < 0 for p in self.parts):
            raise GraphValidationError([f"invalid chain parts {self.parts}"])
        if len(self.parts) > 1 and self.parts[-1] == 0:
            raise GraphValidationError([f"trailing zero part in {self.parts}"])
        if self.multiplicity < 1:
            raise GraphValidationError([f"chain {self.parts} has multiplicity 0"])

    @property
    def multiplicity(self) -> int:
        return self.parts[0] + sum((i - 1) * p for i, p in enumerate(self.parts[1:], start=2))

    def __str__(self) -> str:
        return f"chain({','.join(map(str, self.parts))})"


def chain_type(parts: Iterable[int]) -> ChainType:
    return ChainType(tuple(int(p) for p in parts))


# -- closed-form spectra -----------------------------------------------------


@lru_cache(maxsize=None)
def basic_spectrum(p: int, q: int) -> SpectrumCombo:
    """Spectrum of the basic type C_(p,q) from the two-scale closed form."""
    bt = basic_type(p, q)
    p, q = bt.p, bt.q
    acc: dict[Fraction, int] = {}

    def add(value: Fraction, coeff: int) -> None:
        if coeff:
            acc[value] = acc.get(value, 0) + coeff

    deep = p + 2 * q
    for k in range(deep):
        coeff = q - math.ceil(Fraction(q * k, deep))
        add(Fraction(k, deep), coeff)
        if k:
            add(Fraction(-k, deep), coeff)
    shallow = p + q
    for k in range(shallow):
        coeff = p - 1 - math.floor(Fraction(p * k, shallow))
        add(Fraction(k, shallow), coeff)
        if k:
            add(Fraction(-k, shallow), coeff)
    return SpectrumCombo(acc)


def ordinary_spectrum(m: int) -> SpectrumCombo:
    """Spectrum of the ordinary m-fold point: sum_{|k|<m} (m - |k| - 1) t^(k/m)."""
    if m < 1:
        raise GraphValidationError([f"ordinary point needs m >= 1, got {m}"])
    return basic_spectrum(m, 0)


def alpha_max(p: int, q: int) -> Rational:
    """Largest spectral value of C_(p,q).

    Equals 1 - 2/(p+q) when p > q and 1 - 3/(p+2q) when p <= q; for the
    ordinary m-fold point this is (m-2)/m.  Undefined for the smooth germ.
    """
    bt = basic_type(p, q)
    if bt == BasicType(1, 0):
        raise ComboError("smooth germ has an empty spectrum")
    if bt.p > bt.q:
        return 1 - Fraction(2, bt.p + bt.q)
    return 1 - Fraction(3, bt.p + 2 * bt.q)


def chain_delta_mu(chain: ChainType | Iterable[int]) -> tuple[int, int]:
    """Delta invariant and Milnor number of a chain germ.

    delta is the sum of the branch delta invariants and of the pairwise
    intersection multiplicities; mu = 2*delta - r + 1 where r is the
    number of branches, here r = sum p_i.
    """
    if not isinstance(chain, ChainType):
        chain = chain_type(chain)
    p = (0,) + chain.parts  # 1-based indexing
    r = len(chain.parts)
    branches = sum(chain.parts)
    numerator = (p[1] - 1) ** 2
    numerator += sum(((i - 1) * p[i] - 1) * (i * p[i] - 1) for i in range(2, r + 1))
    numerator += sum(p[i] - 1 for i in range(1, r + 1))
    assert numerator % 2 == 0
    delta = numerator // 2
    delta += p[1] * sum((i - 1) * p[i] for i in range(2, r + 1))
    delta += sum(
        p[i] * p[j] * (i - 1) * j for i in range(2, r + 1) for j in range(i + 1, r + 1)
    )
    mu = 2 * delta - branches + 1
    return delta, mu


# -- the ring ---------------------------------------------------------------


class TypeCombo:
    """Signed integer combination of basic types plus a formal unit.

    The unit is adjoined formally: it is the identity of the merging
    product and never acquires a spectrum.
    """

    __slots__ = ("_terms", "unit")

    def __init__(self, terms: Union[Mapping, Iterable[Tuple]] = (), unit: int = 0):
        items = terms.items() if isinstance(terms, Mapping) else terms
        data: dict[BasicType, int] = {}
        for bt, coeff in items:
            if not isinstance(bt, BasicType):
                raise ComboError(f"{bt!r} is not a BasicType")
            if not isinstance(coeff, int) or isinstance(coeff, bool):
                raise ComboError(f"coefficient {coeff!r} is not an integer")
            if coeff:
                data[bt] = data.get(bt, 0) + coeff
                if data[bt] == 0:
                    del data[bt]
        object.__setattr__(self, "_terms", data)
        object.__setattr__(self, "unit", unit)

    @staticmethod
    def one() -> "TypeCombo":
        return TypeCombo(unit=1)

    @staticmethod
    def of(p: int, q: int, coeff: int = 1) -> "TypeCombo":
        return TypeCombo({basic_type(p, q): coeff})

    def items(self) -> list[Tuple[BasicType, int]]:
        return sorted(self._terms.items(), key=lambda kv: (kv[0].scale, kv[0].q, kv[0].p))

    def coefficient(self, bt: BasicType) -> int:
        return self._terms.get(bt, 0)

    def __add__(self, other: "TypeCombo") -> "TypeCombo":
        if not isinstance(other, TypeCombo):
            return NotImplemented
        data = dict(self._terms)
        for bt, coeff in other._terms.items():
            data[bt] = data.get(bt, 0) + coeff
        return TypeCombo(data, unit=self.unit + other.unit)

    def __sub__(self, other: "TypeCombo") -> "TypeCombo":
        return self + (-other)

    def __neg__(self) -> "TypeCombo":
        return TypeCombo({bt: -c for bt, c in self._terms.items()}, unit=-self.unit)

    def __mul__(self, scalar: int) -> "TypeCombo":
        if not isinstance(scalar, int) or isinstance(scalar, bool):
            return NotImplemented
        return TypeCombo({bt: scalar * c for bt, c in self._terms.items()}, unit=scalar * self.unit)

    __rmul__ = __mul__

    def __bool__(self) -> bool:
        return bool(self._terms) or self.unit != 0

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TypeCombo)
            and self._terms == other._terms
            and self.unit == other.unit
        )

    def __hash__(self) -> int:
        return hash((tuple(self.items()), self.unit))

    def __str__(self) -> str:
        parts = []
        if self.unit:
            parts.append((self.unit, "1"))
        parts.extend((c, str(bt)) for bt, c in self.items())
        if not parts:
            return "0"
        out = []
        for i, (coeff, label) in enumerate(parts):
            term = label if abs(coeff) == 1 else f"{abs(coeff)}*{label}"
            if i == 0:
                out.append(term if coeff > 0 else f"-{term}")
            else:
                out.append(f"+ {term}" if coeff > 0 else f"- {term}")
        return " ".join(out)

    def __repr__(self) -> str:
        return f"TypeCombo({self.items()!r}, unit={self.unit})"


def _generator_product(a: BasicType, b: BasicType) -> TypeCombo:
    p, q, pp, qq = a.p, a.q, b.p, b.q
    out = TypeCombo.of(p + pp + qq, q)
    out = out + TypeCombo.of(p + pp + q, qq)
    out = out - TypeCombo.of(p + pp + q + qq, 0)
    return out


def ring_product(a: TypeCombo, b: TypeCombo) -> TypeCombo:
    """Bilinear extension of the generator product; the unit acts as identity."""
    result = TypeCombo(unit=a.unit * b.unit)
    if a.unit:
        result = result + a.unit * TypeCombo(dict(b.items()))
    if b.unit:
        result = result + b.unit * TypeCombo(dict(a.items()))
    for bt_a, ca in a.items():
        for bt_b, cb in b.items():
            result = result + (ca * cb) * _generator_product(bt_a, bt_b)
    return result


@lru_cache(maxsize=None)
def _power_of_type(bt: BasicType, n: int) -> TypeCombo:
    if n == 0:
        return TypeCombo.one()
    if n == 1:
        return TypeCombo({bt: 1})
    return ring_product(_power_of_type(bt, n - 1), TypeCombo({bt: 1}))


def tensor_power(x: TypeCombo | BasicType, n: int) -> TypeCombo:
    """n-fold ring power; memoized on single generators."""
    if n < 0:
        raise ComboError("negative ring power")
    if isinstance(x, BasicType):
        return _power_of_type(x, n)
    result = TypeCombo.one()
    for _ in range(n):
        result = ring_product(result, x)
    return result


def combo_spectrum(combo: TypeCombo) -> SpectrumCombo:
    """Spectrum of a type combination; the formal unit must be absent."""
    if combo.unit != 0:
        raise ComboError("the formal unit has no spectrum")
    total = SpectrumCombo()
    for bt, coeff in combo.items():
        total = total + coeff * basic_spectrum(bt.p, bt.q)
    return total


def check_generator_relation(q: int, q2: int) -> tuple[TypeCombo, SpectrumCombo]:
    """Residuals of the algebraic relation among the tangent-branch generators:

        C_(0,q) x C_(0,q') = C_(1,0)^q' x C_(0,q) + C_(1,0)^q x C_(0,q')
                             - C_(1,0)^(q+q')

    Returns (type residual, spectrum residual); both vanish.
    """
    if q < 2 or q2 < 2:
        raise ComboError("generators need q, q' >= 2")
    smooth = basic_type(1, 0)
    lhs = ring_product(TypeCombo.of(0, q), TypeCombo.of(0, q2))
    rhs = ring_product(tensor_power(smooth, q2), TypeCombo.of(0, q))
    rhs = rhs + ring_product(tensor_power(smooth, q), TypeCombo.of(0, q2))
    rhs = rhs - tensor_power(smooth, q + q2)
    type_residual = lhs - rhs
    if type_residual:
        spec_residual = combo_spectrum(type_residual)
    else:
        spec_residual = SpectrumCombo()
    return type_residual, spec_residual
