"""Exact arithmetic over Q(w), w = exp(2*pi*i/3), and small exact linear algebra.

Elements are stored as ``a + b*w`` with rational ``a`` and ``b``; the only
relation needed is ``w**2 = -1 - w``.  Vectors (kets) are kept unnormalized.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

Rational = Union[int, Fraction]

OMEGA_COMPLEX = cmath.exp(2j * cmath.pi / 3)


@dataclass(frozen=True, slots=True)
class EisensteinScalar:
    """The number ``a + b*w`` of Q(w)."""

    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        # Fraction already keeps lowest terms with a positive denominator.
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))

    @classmethod
    def coerce(cls, x: "EisensteinScalar | Rational") -> "EisensteinScalar":
        if isinstance(x, EisensteinScalar):
            return x
        if isinstance(x, (int, Fraction)):
            return cls(Fraction(x), Fraction(0))
        raise TypeError(f"cannot interpret {x!r} as an element of Q(w)")

    def __add__(self, other):
        try:
            o = EisensteinScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return EisensteinScalar(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self) -> "EisensteinScalar":
        return EisensteinScalar(-self.a, -self.b)

    def __sub__(self, other):
        try:
            o = EisensteinScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return EisensteinScalar(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            o = EisensteinScalar.coerce(other)
        except TypeError:
            return NotImplemented
        # (a + bw)(c + dw) = ac + (ad + bc)w + bd w^2,  w^2 = -1 - w
        ac = self.a * o.a
        bd = self.b * o.b
        return EisensteinScalar(ac - bd, self.a * o.b + self.b * o.a - bd)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        """Field norm |x|^2 = a^2 - ab + b^2 (a nonnegative rational)."""
        return self.a * self.a - self.a * self.b + self.b * self.b

    def conjugate(self) -> "EisensteinScalar":
        # conj(w) = w^2 = -1 - w
        return EisensteinScalar(self.a - self.b, -self.b)

    def inverse(self) -> "EisensteinScalar":
        nrm = self.norm()
        if nrm == 0:
            raise ZeroDivisionError("inverse of zero in Q(w)")
        c = self.conjugate()
        return EisensteinScalar(c.a / nrm, c.b / nrm)

    def __truediv__(self, other):
        try:
            o = EisensteinScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return EisensteinScalar.coerce(other) * self.inverse()

    def __eq__(self, other) -> bool:
        try:
            o = EisensteinScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self) -> int:
        return hash((self.a, self.b))

    def __bool__(self) -> bool:
        return bool(self.a) or bool(self.b)

    def is_rational(self) -> bool:
        return self.b == 0

    def to_complex(self) -> complex:
        return float(self.a) + float(self.b) * OMEGA_COMPLEX

    def __str__(self) -> str:
        return format_scalar(self)

    def __repr__(self) -> str:
        return f"EisensteinScalar({format_scalar(self)})"


ZERO = EisensteinScalar()
ONE = EisensteinScalar(Fraction(1))
W = EisensteinScalar(Fraction(0), Fraction(1))
W2 = W * W


def _fmt_coeff(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _fmt_term(q: Fraction, unit: str) -> str:
    if unit == "":
        return _fmt_coeff(q)
    if q == 1:
        return unit
    if q == -1:
        return "-" + unit
    return _fmt_coeff(q) + "*" + unit


def format_scalar(x: EisensteinScalar) -> str:
    """Render in the vector-set text syntax (``w`` for omega).

    ``a + a*w`` equals ``-a*w^2`` and is written that way so the printed
    basis vectors keep their familiar look.
    """
    a, b = x.a, x.b
    if a == 0 and b == 0:
        return "0"
    if b == 0:
        return _fmt_coeff(a)
    if a == b:
        return _fmt_term(-a, "w^2")
    if a == 0:
        return _fmt_term(b, "w")
    tail = _fmt_term(b, "w")
    if not tail.startswith("-"):
        tail = "+" + tail
    return _fmt_coeff(a) + tail


class Ket(tuple):
    """Nonzero column vector with entries in Q(w), stored unnormalized."""

    def __new__(cls, entries: Iterable[EisensteinScalar | Rational]) -> "Ket":
        vals = tuple(EisensteinScalar.coerce(e) for e in entries)
        if not vals:
            raise ValueError("a ket needs at least one entry")
        if not any(vals):
            raise ValueError("the zero vector is not a ray")
        return super().__new__(cls, vals)

    @property
    def dim(self) -> int:
        return len(self)

    def norm_sq(self) -> Fraction:
        return sum((e.norm() for e in self), Fraction(0))

    def to_complex(self) -> list[complex]:
        return [e.to_complex() for e in self]

    def __repr__(self) -> str:
        return "Ket(" + ",".join(format_scalar(e) for e in self) + ")"


def inner_product(u: Sequence[EisensteinScalar], v: Sequence[EisensteinScalar]) -> EisensteinScalar:
    """Hermitian product sum(conj(u_i) * v_i)."""
    if len(u) != len(v):
        raise ValueError(f"dimension mismatch: {len(u)} vs {len(v)}")
    acc = ZERO
    for x, y in zip(u, v):
        if x and y:
            acc = acc + x.conjugate() * y
    return acc


def ray_equal(u: Ket, v: Ket) -> bool:
    """True iff ``u = c*v`` for a nonzero c in Q(w).

    Decided by cross-multiplication against a pivot coordinate ``p``:
    ``u_i * v_p == v_i * u_p`` for every ``i``.
    """
    if len(u) != len(v):
        raise ValueError(f"dimension mismatch: {len(u)} vs {len(v)}")
    if not any(u) or not any(v):
        raise ValueError("the zero vector is not a ray")
    # Anchor on a coordinate where u is nonzero; v must be nonzero there too.
    p = next(i for i, x in enumerate(u) if x)
    if not v[p]:
        return False
    up, vp = u[p], v[p]
    return all(u[i] * vp == v[i] * up for i in range(len(u)))


class ExactMatrix:
    """Square matrix over Q(w)."""

    __slots__ = ("rows",)

    def __init__(self, rows: Iterable[Iterable[EisensteinScalar | Rational]]):
        rs = tuple(tuple(EisensteinScalar.coerce(x) for x in r) for r in rows)
        n = len(rs)
        if n == 0 or any(len(r) != n for r in rs):
            raise ValueError("matrix must be square and nonempty")
        self.rows = rs

    @property
    def dim(self) -> int:
        return len(self.rows)

    @classmethod
    def identity(cls, d: int) -> "ExactMatrix":
        return cls([[ONE if i == j else ZERO for j in range(d)] for i in range(d)])

    @classmethod
    def diagonal(cls, diag: Sequence[EisensteinScalar | Rational]) -> "ExactMatrix":
        d = len(diag)
        return cls([[diag[i] if i == j else ZERO for j in range(d)] for i in range(d)])

    def __getitem__(self, ij: tuple[int, int]) -> EisensteinScalar:
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.dim != other.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")
        cols = list(zip(*other.rows))
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                acc = ZERO
                for x, y in zip(r, c):
                    if x and y:
                        acc = acc + x * y
                row.append(acc)
            out.append(row)
        return ExactMatrix(out)

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.dim != other.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")
        return ExactMatrix([[x - y for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self) -> "ExactMatrix":
        return ExactMatrix([[-x for x in r] for r in self.rows])

    def conj_transpose(self) -> "ExactMatrix":
        return ExactMatrix([[x.conjugate() for x in c] for c in zip(*self.rows)])

    def is_hermitian(self) -> bool:
        return self == self.conj_transpose()

    def trace(self) -> EisensteinScalar:
        acc = ZERO
        for i in range(self.dim):
            acc = acc + self.rows[i][i]
        return acc

    def is_scalar(self, c: EisensteinScalar | Rational) -> bool:
        c = EisensteinScalar.coerce(c)
        return all(
            x == (c if i == j else ZERO)
            for i, r in enumerate(self.rows)
            for j, x in enumerate(r)
        )

    def to_complex(self):
        import numpy as np

        return np.array([[x.to_complex() for x in r] for r in self.rows], dtype=complex)

    def __repr__(self) -> str:
        body = "; ".join(",".join(format_scalar(x) for x in r) for r in self.rows)
        return f"ExactMatrix[{body}]"


def observable_from_ray(v: Ket) -> ExactMatrix:
    """The +-1 observable ``2|v><v|/<v|v> - I`` of a ray, computed exactly."""
    nsq = v.norm_sq()
    if nsq == 0:
        raise ValueError("the zero vector is not a ray")
    scale = Fraction(2) / nsq
    d = len(v)
    rows = []
    for i in range(d):
        row = []
        for j in range(d):
            x = v[i] * v[j].conjugate() * scale
            if i == j:
                x = x - ONE
            row.append(x)
        rows.append(row)
    return ExactMatrix(rows)


def matrix_product(ms: Sequence[ExactMatrix]) -> ExactMatrix:
    """Left-to-right product ``ms[0] @ ms[1] @ ...``."""
    if not ms:
        raise ValueError("empty product has no dimension")
    out = ms[0]
    for m in ms[1:]:
        out = out @ m
    return out
