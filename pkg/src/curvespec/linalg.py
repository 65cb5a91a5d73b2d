"""Exact sparse linear algebra over the rationals for the decomposition solver.

Columns are sparse mappings ``row key -> Fraction``.  Elimination walks the
columns in the order given by the caller and keeps, for every pivot
column, its reduced form together with its expression over the original
columns.  This makes pivot selection (and hence the canonical solution
returned for underdetermined systems) fully deterministic: dependent
columns become free variables, kernel vectors carry coefficient 1 on
their free column, and the particular solution sets every free variable
to zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Hashable, Mapping, Sequence


@dataclass
class SolveResult:
    particular: list[Fraction] | None  # None when the system is inconsistent
    kernel: list[list[Fraction]]  # basis of solutions of A x = 0
    pivots: list[int]  # column indices that received pivots
    free: list[int]  # column indices without pivots


class _Eliminator:
    """Forward elimination with expression tracking over original columns."""

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.order: list[int] = []  # pivot columns in creation order
        self.reduced: dict[int, dict] = {}  # pivot col -> reduced sparse vector
        self.expr: dict[int, dict[int, Fraction]] = {}  # pivot col -> combo of originals
        self.pivot_row: dict[int, Hashable] = {}  # pivot col -> its pivot row key
        self.free: list[int] = []

    def _reduce(self, vec: dict, expr: dict[int, Fraction]) -> None:
        for p in self.order:
            row = self.pivot_row[p]
            coeff = vec.get(row)
            if not coeff:
                continue
            factor = coeff / self.reduced[p][row]
            for k, v in self.reduced[p].items():
                nv = vec.get(k, Fraction(0)) - factor * v
                if nv:
                    vec[k] = nv
                else:
                    vec.pop(k, None)
            for k, v in self.expr[p].items():
                nv = expr.get(k, Fraction(0)) - factor * v
                if nv:
                    expr[k] = nv
                else:
                    expr.pop(k, None)

    def feed(self, j: int, column: Mapping[Hashable, Fraction]) -> dict[int, Fraction] | None:
        """Insert column j; return a kernel vector when it is dependent."""
        vec = {k: Fraction(v) for k, v in column.items() if v}
        expr: dict[int, Fraction] = {j: Fraction(1)}
        self._reduce(vec, expr)
        if vec:
            self.order.append(j)
            self.reduced[j] = vec
            self.expr[j] = expr
            self.pivot_row[j] = min(vec)
            return None
        self.free.append(j)
        return expr

    def reduce_target(self, target: Mapping[Hashable, Fraction]) -> dict[int, Fraction] | None:
        """Express the target over original columns, or None if inconsistent."""
        vec = {k: Fraction(v) for k, v in target.items() if v}
        expr: dict[int, Fraction] = {}
        self._reduce(vec, expr)
        if vec:
            return None
        return {k: -v for k, v in expr.items()}


def rank(columns: Sequence[Mapping[Hashable, Fraction]]) -> int:
    """Exact rank of the column family."""
    elim = _Eliminator(len(columns))
    for j, col in enumerate(columns):
        elim.feed(j, col)
    return len(elim.order)


def solve(
    columns: Sequence[Mapping[Hashable, Fraction]],
    target: Mapping[Hashable, Fraction],
) -> SolveResult:
    """Solve ``sum_j x_j col_j = target`` exactly over the rationals."""
    n = len(columns)
    elim = _Eliminator(n)
    kernel: list[list[Fraction]] = []
    for j, col in enumerate(columns):
        dep = elim.feed(j, col)
        if dep is not None:
            vec = [Fraction(0)] * n
            for k, v in dep.items():
                vec[k] = v
            kernel.append(vec)
    coords = elim.reduce_target(target)
    if coords is None:
        return SolveResult(None, kernel, list(elim.order), list(elim.free))
    particular = [Fraction(0)] * n
    for k, v in coords.items():
        particular[k] = v
    return SolveResult(particular, kernel, list(elim.order), list(elim.free))


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def integer_kernel_basis(kernel: Sequence[Sequence[Fraction]]) -> list[list[int]]:
    """Integer lattice basis of the kernel in echelon form over the free columns.

    Kernel vectors are echelonized from the *last* nonzero coordinate (the
    free column of the originating solve), so coset reduction pushes
    solution mass onto the earlier, pivot columns; leading entries are
    positive and entries above each lead are reduced, making the reduced
    representative canonical.
    """
    reversed_basis = _echelon([list(reversed(list(v))) for v in kernel])
    return [list(reversed(row)) for row in reversed_basis]


def _echelon(kernel: Sequence[Sequence[Fraction]]) -> list[list[int]]:
    rows: list[list[int]] = []
    for vec in kernel:
        mult = 1
        for v in vec:
            d = Fraction(v).denominator
            mult = mult * d // _gcd(mult, d)
        ints = [int(Fraction(v) * mult) for v in vec]
        g = 0
        for v in ints:
            g = _gcd(g, v)
        if g > 1:
            ints = [v // g for v in ints]
        if any(ints):
            rows.append(ints)

    def lead(row: list[int]) -> int:
        return next(i for i, v in enumerate(row) if v)

    pivots: dict[int, list[int]] = {}
    for row in rows:
        row = list(row)
        while any(row):
            l = lead(row)
            if l not in pivots:
                if row[l] < 0:
                    row = [-v for v in row]
                pivots[l] = row
                break
            b = pivots[l]
            t = row[l] // b[l]
            row = [rv - t * bv for rv, bv in zip(row, b)]
            if row[l]:
                pivots[l], row = row, b  # Euclidean swap keeps entries shrinking
                if pivots[l][l] < 0:
                    pivots[l] = [-v for v in pivots[l]]
    basis = [pivots[l] for l in sorted(pivots)]
    for i in range(len(basis) - 1, -1, -1):
        l = lead(basis[i])
        for j in range(i):
            t = basis[j][l] // basis[i][l]
            if t:
                basis[j] = [av - t * bv for av, bv in zip(basis[j], basis[i])]
    return basis


def canonical_integer_solution(
    particular: Sequence[Fraction], kernel: Sequence[Sequence[Fraction]]
) -> list[int] | None:
    """Unique integer representative with reduced coordinates at kernel pivots.

    Returns None when no integer point of the affine solution set is found
    (after canonical reduction plus a bounded search over kernel shifts).
    """
    x = [Fraction(v) for v in particular]
    basis = integer_kernel_basis(kernel)
    for b in basis:
        l = max(i for i, v in enumerate(b) if v)  # the free column of this vector
        t = x[l] / b[l]
        shift = t.numerator // t.denominator  # floor
        if shift:
            x = [xv - shift * bv for xv, bv in zip(x, b)]
    if all(v.denominator == 1 for v in x):
        return [int(v) for v in x]
    if basis and len(basis) <= 4:
        from itertools import product

        for ts in product(range(-3, 4), repeat=len(basis)):
            y = list(x)
            for t, b in zip(ts, basis):
                if t:
                    y = [yv + t * bv for yv, bv in zip(y, b)]
            if all(v.denominator == 1 for v in y):
                return [int(v) for v in y]
    return None
