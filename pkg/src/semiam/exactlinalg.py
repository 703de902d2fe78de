"""Exact rational scalars, dense matrices and linear solving.

Every other module computes on top of this one; no floats appear anywhere.
Scalars are stdlib Fractions (already reduced, positive denominator), and
the solver reports unsolvable or underdetermined systems with a witness
instead of guessing.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

Rational = Fraction


def rat(value) -> Fraction:
    """Coerce an int, a string like '-3/4', or a Fraction to a Fraction.

    Floats are rejected: a binary float is almost never the rational the
    caller had in mind.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError(f"cannot interpret {value!r} as a rational")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as a rational")


def rat_str(value) -> str:
    """Render as 'p/q', or plain 'p' when the denominator is 1."""
    q = rat(value)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def rat_decimal(value, digits: int = 6) -> str:
    """Exact decimal expansion, truncated toward zero after `digits` places."""
    q = rat(value)
    sign = "-" if q < 0 else ""
    q = -q if q < 0 else q
    whole, rem = divmod(q.numerator, q.denominator)
    if digits <= 0:
        return f"{sign}{whole}"
    frac_digits = rem * 10**digits // q.denominator
    return f"{sign}{whole}.{str(frac_digits).zfill(digits)}"


class ExactMatrix:
    """Dense matrix of Fractions."""

    def __init__(self, rows):
        data = [[rat(x) for x in row] for row in rows]
        if not data or not data[0]:
            raise ValueError("matrix needs at least one row and one column")
        width = len(data[0])
        if any(len(row) != width for row in data):
            raise ValueError("ragged rows")
        self.data = tuple(tuple(row) for row in data)
        self.nrows = len(data)
        self.ncols = width

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "ExactMatrix":
        return cls([[0] * ncols for _ in range(nrows)])

    def __eq__(self, other):
        return isinstance(other, ExactMatrix) and self.data == other.data

    def __hash__(self):
        return hash(self.data)

    def __repr__(self):
        rows = "; ".join(" ".join(rat_str(x) for x in row) for row in self.data)
        return f"ExactMatrix({self.nrows}x{self.ncols}: {rows})"

    def entry(self, i: int, j: int) -> Fraction:
        return self.data[i][j]

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch")
        return ExactMatrix(
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.data, other.data)
            ]
        )

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch")
        return ExactMatrix(
            [
                [a - b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.data, other.data)
            ]
        )

    def scale(self, c) -> "ExactMatrix":
        c = rat(c)
        return ExactMatrix([[c * x for x in row] for row in self.data])

    def __mul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        cols = list(zip(*other.data))
        return ExactMatrix(
            [
                [sum(a * b for a, b in zip(row, col)) for col in cols]
                for row in self.data
            ]
        )

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(list(zip(*self.data)))

    def abs_sum(self) -> Fraction:
        """Sum of absolute values of all entries."""
        return sum((abs(x) for row in self.data for x in row), Fraction(0))

    def to_lists(self):
        return [list(row) for row in self.data]

    def to_strings(self):
        return [[rat_str(x) for x in row] for row in self.data]


def kron(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    """Kronecker product; row/column index of a block is row-major (a, b)."""
    rows = []
    for ra in a.data:
        for rb in b.data:
            rows.append([x * y for x in ra for y in rb])
    return ExactMatrix(rows)


@dataclass
class LinearSolution:
    """Outcome of an exact linear solve.

    status is 'unique' (vector set), 'none' (inconsistent_row is the tag of
    an equation that reduced to 0 = nonzero), or 'many' (free_column is the
    least undetermined unknown).
    """

    status: str
    vector: tuple | None = None
    inconsistent_row: object | None = None
    free_column: int | None = None


class SparseEliminator:
    """Incremental exact Gaussian elimination over the rationals.

    Rows come in as {column: coefficient} plus a right hand side; each is
    scaled to a primitive integer vector, reduced against the pivots seen so
    far, and kept only if it contributes a new pivot.  Feeding rows lazily
    and stopping at full rank is the cheap path the Clifford solver relies
    on.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.pivot_rows: dict[int, tuple[dict, int]] = {}
        self.order: list[int] = []  # pivot columns in insertion order
        self.inconsistent: object | None = None

    @property
    def rank(self) -> int:
        return len(self.pivot_rows)

    def full_rank(self) -> bool:
        return len(self.pivot_rows) == self.ncols

    def _integerize(self, coeffs: dict, rhs) -> tuple[dict, int]:
        row = {}
        scale = 1
        for c, v in coeffs.items():
            v = rat(v)
            if v:
                row[c] = v
                scale = scale * v.denominator // gcd(scale, v.denominator)
        rhs = rat(rhs)
        if rhs:
            scale = scale * rhs.denominator // gcd(scale, rhs.denominator)
        irow = {c: int(v * scale) for c, v in row.items()}
        irhs = int(rhs * scale)
        return irow, irhs

    @staticmethod
    def _normalize(row: dict, rhs: int) -> tuple[dict, int]:
        g = abs(rhs)
        for v in row.values():
            g = gcd(g, abs(v))
            if g == 1:
                return row, rhs
        if g > 1:
            row = {c: v // g for c, v in row.items()}
            rhs //= g
        return row, rhs

    def add_row(self, coeffs: dict, rhs, tag=None) -> str:
        """Reduce one equation into the basis.

        Returns 'pivot', 'dependent', or 'inconsistent'.
        """
        row, irhs = self._integerize(coeffs, rhs)
        row, irhs = self._normalize(row, irhs)
        while True:
            common = row.keys() & self.pivot_rows.keys()
            if not common:
                break
            c = min(common)
            brow, brhs = self.pivot_rows[c]
            a = row.pop(c)
            b = brow[c]
            if b != 1:
                row = {col: v * b for col, v in row.items()}
                irhs *= b
            for col, v in brow.items():
                if col == c:
                    continue
                nv = row.get(col, 0) - a * v
                if nv:
                    row[col] = nv
                else:
                    row.pop(col, None)
            irhs -= a * brhs
            row, irhs = self._normalize(row, irhs)
        if not row:
            if irhs:
                if self.inconsistent is None:
                    self.inconsistent = tag
                return "inconsistent"
            return "dependent"
        pivot = min(row)
        self.pivot_rows[pivot] = (row, irhs)
        self.order.append(pivot)
        return "pivot"

    def solve(self) -> LinearSolution:
        if self.inconsistent is not None:
            return LinearSolution("none", inconsistent_row=self.inconsistent)
        if not self.full_rank():
            free = next(c for c in range(self.ncols) if c not in self.pivot_rows)
            return LinearSolution("many", free_column=free)
        # A stored row only mentions columns that were not yet pivots at its
        # insertion time, so reverse insertion order is back-substitutable.
        x: list = [None] * self.ncols
        for pivot in reversed(self.order):
            row, rhs = self.pivot_rows[pivot]
            acc = Fraction(rhs)
            for col, v in row.items():
                if col != pivot:
                    acc -= v * x[col]
            x[pivot] = acc / row[pivot]
        return LinearSolution("unique", vector=tuple(x))


def solve_linear(a: ExactMatrix, b) -> LinearSolution:
    """Solve a x = b exactly; b is a sequence of length a.nrows."""
    rhs = [rat(v) for v in b]
    if len(rhs) != a.nrows:
        raise ValueError("right hand side length mismatch")
    elim = SparseEliminator(a.ncols)
    for i, row in enumerate(a.data):
        coeffs = {j: v for j, v in enumerate(row) if v}
        elim.add_row(coeffs, rhs[i], tag=i)
    return elim.solve()
