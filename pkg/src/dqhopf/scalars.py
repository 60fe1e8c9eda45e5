"""Exact field arithmetic and dense exact linear algebra.

Two kinds of fields are supported: the rationals, backed by
:class:`fractions.Fraction`, and prime fields ``F_p`` with residues kept in
``[0, p)``.  Everything is exact; there is no floating point anywhere.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DivisionByZero, FieldMismatch, ParseError, Singular

RATIONALS = "Q"
PRIME = "Fp"

_INT_RE = re.compile(r"-?[0-9]+\Z")
_FRAC_RE = re.compile(r"(-?[0-9]+)/([0-9]+)\Z")

# trial division bound
_MAX_MODULUS = 10**6


def _is_prime(p):
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    kind: str = RATIONALS
    modulus: int | None = None

    def __post_init__(self):
        if self.kind == RATIONALS:
            if self.modulus is not None:
                raise ValueError("the rationals take no modulus")
        elif self.kind == PRIME:
            p = self.modulus
            if not isinstance(p, int) or p <= 0 or p >= _MAX_MODULUS or not _is_prime(p):
                raise ValueError(f"modulus must be a prime below {_MAX_MODULUS}, got {p!r}")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @classmethod
    def rationals(cls):
        return cls(RATIONALS)

    @classmethod
    def prime(cls, p):
        return cls(PRIME, p)

    @classmethod
    def parse(cls, text):
        """Parse ``"Q"`` or ``"Fp 7"``."""
        parts = text.split()
        if parts == [RATIONALS]:
            return cls.rationals()
        if len(parts) == 2 and parts[0] == PRIME and parts[1].isdigit():
            try:
                return cls.prime(int(parts[1]))
            except ValueError as exc:
                raise ParseError(str(exc)) from exc
        raise ParseError(f"bad field descriptor {text!r}; expected 'Q' or 'Fp <prime>'")

    @property
    def characteristic(self):
        return 0 if self.kind == RATIONALS else self.modulus

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def __call__(self, value):
        """Coerce an int, Fraction, Scalar or literal string into this field."""
        if isinstance(value, Scalar):
            if value.field != self:
                raise FieldMismatch(f"{value.field} element used in {self}")
            return value
        if isinstance(value, str):
            return self.parse_scalar(value)
        if self.modulus is None:
            return Scalar(self, Fraction(value))
        if isinstance(value, Fraction):
            num = value.numerator % self.modulus
            den = value.denominator % self.modulus
            if den == 0:
                raise DivisionByZero(f"{value} has no image in {self}")
            return Scalar(self, num * pow(den, -1, self.modulus) % self.modulus)
        return Scalar(self, int(value) % self.modulus)

    def parse_scalar(self, text):
        text = text.strip()
        if _INT_RE.match(text):
            return self(int(text))
        m = _FRAC_RE.match(text)
        if m and int(m.group(2)) > 0:
            return self(Fraction(int(m.group(1)), int(m.group(2))))
        raise ParseError(f"bad scalar literal {text!r}")

    def __str__(self):
        return RATIONALS if self.kind == RATIONALS else f"{PRIME} {self.modulus}"


class Scalar:
    """An immutable field element in canonical form."""

    __slots__ = ("field", "value")

    def __init__(self, field, value):
        self.field = field
        self.value = value

    def _other(self, other):
        if isinstance(other, Scalar):
            if other.field is not self.field and other.field != self.field:
                raise FieldMismatch(f"cannot combine {self.field} and {other.field}")
            return other.value
        if isinstance(other, (int, Fraction)):
            return self.field(other).value
        return NotImplemented

    def _make(self, value):
        p = self.field.modulus
        return Scalar(self.field, value % p if p else value)

    def __add__(self, other):
        v = self._other(other)
        if v is NotImplemented:
            return v
        return self._make(self.value + v)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._other(other)
        if v is NotImplemented:
            return v
        return self._make(self.value - v)

    def __rsub__(self, other):
        v = self._other(other)
        if v is NotImplemented:
            return v
        return self._make(v - self.value)

    def __mul__(self, other):
        v = self._other(other)
        if v is NotImplemented:
            return v
        return self._make(self.value * v)

    __rmul__ = __mul__

    def __neg__(self):
        return self._make(-self.value)

    def inverse(self):
        if not self.value:
            raise DivisionByZero("inverse of zero")
        p = self.field.modulus
        if p:
            return Scalar(self.field, pow(self.value, -1, p))
        return Scalar(self.field, 1 / self.value)

    def __truediv__(self, other):
        v = self._other(other)
        if v is NotImplemented:
            return v
        return self * Scalar(self.field, v).inverse()

    def __rtruediv__(self, other):
        v = self._other(other)
        if v is NotImplemented:
            return v
        return Scalar(self.field, v) * self.inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        p = self.field.modulus
        if p:
            return Scalar(self.field, pow(self.value, k, p))
        return Scalar(self.field, self.value**k)

    def __bool__(self):
        return bool(self.value)

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.field == other.field and self.value == other.value
        if isinstance(other, (int, Fraction)):
            return self == self.field(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __str__(self):
        return str(self.value)

    def __repr__(self):
        return f"Scalar({self.field}, {self.value})"


# ---------------------------------------------------------------- matrices


class Matrix:
    """Dense immutable matrix of Scalars.

    Linear maps are stored with images in columns, so the matrix of a
    composition ``f ∘ g`` is ``matrix(f) @ matrix(g)``.
    """

    __slots__ = ("field", "rows", "cols", "entries")

    def __init__(self, field, entries: Iterable[Iterable], cols=None):
        self.field = field
        self.entries = tuple(tuple(field(x) for x in row) for row in entries)
        self.rows = len(self.entries)
        if cols is None:
            cols = len(self.entries[0]) if self.entries else 0
        self.cols = cols
        for row in self.entries:
            if len(row) != cols:
                raise ValueError("ragged matrix")

    @classmethod
    def zeros(cls, field, rows, cols):
        z = field.zero
        return cls(field, [[z] * cols for _ in range(rows)], cols)

    @classmethod
    def identity(cls, field, n):
        return cls(field, [[field.one if i == j else field.zero for j in range(n)] for i in range(n)], n)

    @classmethod
    def from_columns(cls, field, columns: Sequence[Sequence], rows):
        return cls(field, [[col[i] for col in columns] for i in range(rows)], len(columns))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def column(self, j):
        return tuple(row[j] for row in self.entries)

    def transpose(self):
        return Matrix(self.field, [self.column(j) for j in range(self.cols)], self.rows)

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        z = self.field.zero
        out = []
        cols = [other.column(j) for j in range(other.cols)]
        for row in self.entries:
            out_row = []
            for col in cols:
                acc = z
                for a, b in zip(row, col):
                    if a and b:
                        acc = acc + a * b
                out_row.append(acc)
            out.append(out_row)
        return Matrix(self.field, out, other.cols)

    def apply(self, vec):
        z = self.field.zero
        out = []
        for row in self.entries:
            acc = z
            for a, b in zip(row, vec):
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        return tuple(out)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.rows == other.rows and self.cols == other.cols and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in row) for row in self.entries)
        return f"Matrix([{body}])"


def _reduce(field, rows: list[list], ncols):
    """In-place reduced row echelon form; returns pivot columns."""
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [x * inv if x else x for x in rows[r]]
        prow = rows[r]
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f:
                    rows[i] = [a - f * b if b else a for a, b in zip(rows[i], prow)]
        pivots.append(c)
        r += 1
    return pivots


def rref(m: Matrix):
    """Reduced row echelon form and the pivot columns."""
    rows = [list(row) for row in m.entries]
    pivots = _reduce(m.field, rows, m.cols)
    return Matrix(m.field, rows, m.cols), pivots


def rank(m: Matrix):
    return len(rref(m)[1])


def null_space(m: Matrix):
    """Kernel basis in reduced echelon normal form (each leading entry 1)."""
    reduced, pivots = rref(m)
    free = [c for c in range(m.cols) if c not in set(pivots)]
    f = m.field
    basis = []
    for fc in free:
        v = [f.zero] * m.cols
        v[fc] = f.one
        for r, pc in enumerate(pivots):
            v[pc] = -reduced[r, fc]
        basis.append(v)
    if not basis:
        return []
    canon, _ = rref(Matrix(f, basis, m.cols))
    return [row for row in canon.entries if any(row)]


def solve(a: Matrix, b: Matrix):
    """One solution ``x`` of ``a @ x = b`` (free variables set to zero), or None."""
    if a.rows != b.rows:
        raise ValueError("row count mismatch")
    aug = [list(ra) + list(rb) for ra, rb in zip(a.entries, b.entries)]
    pivots = _reduce(a.field, aug, a.cols + b.cols)
    if pivots and pivots[-1] >= a.cols:
        return None
    x = [[a.field.zero] * b.cols for _ in range(a.cols)]
    for r, pc in enumerate(pivots):
        x[pc] = aug[r][a.cols:]
    return Matrix(a.field, x, b.cols)


def inverse(m: Matrix):
    if m.rows != m.cols:
        raise Singular("inverse of a non-square matrix")
    x = solve(m, Matrix.identity(m.field, m.rows))
    if x is None:
        raise Singular("matrix is rank deficient")
    return x
