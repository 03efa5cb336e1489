"""
Dense univariate polynomials in ``q`` with Python (arbitrary precision) int
coefficients.

>>> one_minus_q = IntPolynomial([1, -1])
>>> (one_minus_q * IntPolynomial([1, 1])).to_text()
'1 - q^2'
>>> one_minus_q.reverse(2).to_text()
'-q + q^2'
"""

from __future__ import annotations

from collections.abc import Iterable

__all__ = [
    "IntPolynomial", "DualityDegreeError",
    "ZERO", "ONE", "Q",
    "add", "mul", "reverse", "eval_at_integer",
    "one_minus_q_pow", "monomial",
]


class DualityDegreeError(ValueError):
    """``reverse`` was asked to reflect a polynomial of degree above ``L``."""


class IntPolynomial:
    """
    Coefficient ``d`` of ``coeffs`` is the coefficient of ``q^d``.

    Always stored canonically: no trailing zeros, and the zero polynomial is
    the empty tuple (its ``degree`` is ``None``).
    """
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs: tuple[int, ...] = tuple(c)

    @classmethod
    def _raw(cls, coeffs: tuple[int, ...]) -> IntPolynomial:
        # caller guarantees canonical form
        p = object.__new__(cls)
        p.coeffs = coeffs
        return p

    @property
    def degree(self) -> int | None:
        return len(self.coeffs) - 1 if self.coeffs else None

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, d: int) -> int:
        return self.coeffs[d] if 0 <= d < len(self.coeffs) else 0

    def __eq__(self, other):
        if isinstance(other, int):
            other = IntPolynomial([other])
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other: IntPolynomial) -> IntPolynomial:
        if isinstance(other, int):
            other = IntPolynomial([other])
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for d, c in enumerate(b):
            out[d] += c
        return IntPolynomial(out)

    __radd__ = __add__

    def __neg__(self) -> IntPolynomial:
        return IntPolynomial._raw(tuple(-c for c in self.coeffs))

    def __sub__(self, other: IntPolynomial) -> IntPolynomial:
        if isinstance(other, int):
            other = IntPolynomial([other])
        return self + (-other)

    def __rsub__(self, other: int) -> IntPolynomial:
        return IntPolynomial([other]) - self

    def __mul__(self, other) -> IntPolynomial:
        if isinstance(other, int):
            return self.scale(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return ZERO
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        # leading coefficient is a product of nonzeros, so already canonical
        return IntPolynomial._raw(tuple(out))

    def __rmul__(self, other: int) -> IntPolynomial:
        return self.scale(other)

    def scale(self, c: int) -> IntPolynomial:
        if c == 0:
            return ZERO
        return IntPolynomial._raw(tuple(c * x for x in self.coeffs))

    def shift(self, d: int) -> IntPolynomial:
        """Multiply by ``q^d`` (``d >= 0``)."""
        if not self.coeffs:
            return ZERO
        return IntPolynomial._raw((0,) * d + self.coeffs)

    def reverse(self, L: int) -> IntPolynomial:
        """``q^L * p(1/q)``: coefficient ``d`` of the result is coefficient ``L-d`` of ``p``."""
        if L < 0:
            raise ValueError("reversal length must be nonnegative")
        if not self.coeffs:
            return ZERO
        if len(self.coeffs) - 1 > L:
            raise DualityDegreeError(
                f"degree {len(self.coeffs) - 1} exceeds reversal length {L}"
            )
        padded = self.coeffs + (0,) * (L + 1 - len(self.coeffs))
        return IntPolynomial(reversed(padded))

    def __call__(self, q0: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * q0 + c
        return acc

    def to_text(self, var: str = "q") -> str:
        """Ascending-degree form with explicit signs, e.g. ``1 - 2*q + q^3``."""
        if not self.coeffs:
            return "0"
        terms = []
        for d, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mag = abs(c)
            if d == 0:
                body = str(mag)
            else:
                mono = var if d == 1 else f"{var}^{d}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            if not terms:
                terms.append(body if c > 0 else f"-{body}")
            else:
                terms.append(("+ " if c > 0 else "- ") + body)
        return " ".join(terms)

    def to_json(self) -> list[int]:
        return list(self.coeffs)

    @classmethod
    def from_json(cls, data: list[int]) -> IntPolynomial:
        return cls(data)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"IntPolynomial({list(self.coeffs)})"


ZERO = IntPolynomial()
ONE = IntPolynomial([1])
Q = IntPolynomial([0, 1])


def monomial(d: int, c: int = 1) -> IntPolynomial:
    if d < 0:
        raise ValueError(f"negative exponent {d}")
    return IntPolynomial([0] * d + [c])


def one_minus_q_pow(a: int) -> IntPolynomial:
    """``1 - q^a``; zero when ``a == 0``."""
    return ONE - monomial(a)


def add(p: IntPolynomial, r: IntPolynomial) -> IntPolynomial:
    return p + r


def mul(p: IntPolynomial, r: IntPolynomial) -> IntPolynomial:
    return p * r


def reverse(p: IntPolynomial, L: int) -> IntPolynomial:
    return p.reverse(L)


def eval_at_integer(p: IntPolynomial, q0: int) -> int:
    return p(q0)
