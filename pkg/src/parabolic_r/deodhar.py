"""
Parabolic R-polynomials by Deodhar's recursion, memoized per ``(J, x)``.

For ``u, v`` minimal representatives and ``s = s_j`` a right descent of ``v``::

    R[u, v] = 0                                 if u is not <= v
            = 1                                 if u == v
            = R[us, vs]                         if s is a descent of u
            = q R[us, vs] + (q - 1) R[u, vs]    if us is still a representative
            = (q - 1 - x) R[u, vs]              otherwise

The result does not depend on which descent of ``v`` is used; the choice is
a parameter (``DescentPolicy``) so that this can be tested.

>>> from .quotient import GeneratorSubset
>>> ctx = RContext(3, GeneratorSubset(3, {2}), XMode.Q)
>>> ctx.r_poly("123", "231").to_text()
'1 - q'
>>> RContext(3, GeneratorSubset(3, {2}), XMode.MINUS_ONE).r_poly("123", "231").to_text()
'-q + q^2'
"""

from __future__ import annotations

import enum
import threading
from collections.abc import Sequence

from .perm import Permutation, _as_perm
from .polynomial import ONE, ZERO, IntPolynomial
from .quotient import (
    GeneratorSubset,
    ParabolicInterval,
    QuotientMembershipError,
    dominance_leq,
    enumerate_quotient,
    is_minimal_rep,
)

__all__ = [
    "XMode", "DescentPolicy", "RContext", "r_poly", "r_table",
    "r_polynomial",
]


class XMode(enum.Enum):
    Q = "q"
    MINUS_ONE = "-1"

    @classmethod
    def parse(cls, text: str) -> XMode:
        for m in cls:
            if text.strip() == m.value:
                return m
        raise ValueError(f"x must be 'q' or '-1', got {text!r}")


class DescentPolicy(enum.Enum):
    SMALLEST = "smallest"
    LARGEST = "largest"


def _make_picker(policy):
    """Return ``f(entries) -> 0-based j`` with ``entries[j] > entries[j+1]``."""
    if policy is DescentPolicy.SMALLEST:
        def pick(ve):
            for j in range(len(ve) - 1):
                if ve[j] > ve[j + 1]:
                    return j
            raise AssertionError("identity has no descents")
    elif policy is DescentPolicy.LARGEST:
        def pick(ve):
            for j in range(len(ve) - 2, -1, -1):
                if ve[j] > ve[j + 1]:
                    return j
            raise AssertionError("identity has no descents")
    else:
        # explicit priority order of 1-based generator indices; descents not
        # listed are used afterwards in increasing order
        order = [int(j) - 1 for j in policy]

        def pick(ve):
            for j in order:
                if 0 <= j < len(ve) - 1 and ve[j] > ve[j + 1]:
                    return j
            for j in range(len(ve) - 1):
                if ve[j] > ve[j + 1]:
                    return j
            raise AssertionError("identity has no descents")
    return pick


class RContext:
    """
    One memo table for fixed ``n``, ``J``, ``x`` and descent policy.

    Public calls are serialized with a lock, so a context can be shared
    between threads; separate contexts are independent.
    """

    def __init__(
        self,
        n: int,
        J: GeneratorSubset | ParabolicInterval,
        x: XMode = XMode.Q,
        descent_policy: DescentPolicy | Sequence[int] = DescentPolicy.SMALLEST,
    ):
        if isinstance(J, ParabolicInterval):
            J = J.generators()
        if J.n != n:
            raise ValueError(f"J lives in S_{J.n}, not S_{n}")
        if isinstance(x, str):
            x = XMode.parse(x)
        self.n = n
        self.J = J
        self.x = x
        self.descent_policy = descent_policy
        self.memo: dict[tuple[tuple[int, ...], tuple[int, ...]], IntPolynomial] = {}
        self._pick = _make_picker(descent_policy)
        self._lock = threading.Lock()
        # value a with s_a in J; used to test whether u*s_j leaves W^J
        self._J_values = frozenset(J.included)

    def _check(self, w: Permutation, name: str) -> None:
        if w.n != self.n:
            raise ValueError(f"{name}={w} is not in S_{self.n}")
        if not is_minimal_rep(w, self.J):
            raise QuotientMembershipError(
                f"{name}={w} is not a minimal representative for J={{{self.J.label()}}}"
            )

    def r_poly(self, u, v) -> IntPolynomial:
        u, v = _as_perm(u), _as_perm(v)
        self._check(u, "u")
        self._check(v, "v")
        with self._lock:
            return self._r(u.entries, v.entries)

    def _r(self, ue: tuple[int, ...], ve: tuple[int, ...]) -> IntPolynomial:
        key = (ue, ve)
        memo = self.memo
        hit = memo.get(key)
        if hit is not None:
            return hit
        if ue == ve:
            res = ONE
        elif not dominance_leq(ue, ve):
            res = ZERO
        else:
            j = self._pick(ve)
            vs = ve[:j] + (ve[j + 1], ve[j]) + ve[j + 2:]
            a, b = ue[j], ue[j + 1]
            if a > b:
                res = self._r(ue[:j] + (b, a) + ue[j + 2:], vs)
            elif b == a + 1 and a in self._J_values:
                # u*s_j would put value a+1 before a: not a representative
                below = self._r(ue, vs)
                res = -below if self.x is XMode.Q else below.shift(1)
            else:
                us = ue[:j] + (b, a) + ue[j + 2:]
                top = self._r(us, vs)
                below = self._r(ue, vs)
                # q*top + (q-1)*below
                res = (top + below).shift(1) - below
        memo[key] = res
        return res

    def r_table(self, quotient: Sequence[Permutation] | None = None):
        """Every comparable pair of the quotient -> its polynomial.

        Incomparable pairs are absent from the returned dict.
        """
        if quotient is None:
            quotient = enumerate_quotient(self.n, self.J)
        out: dict[tuple[Permutation, Permutation], IntPolynomial] = {}
        for v in quotient:
            for u in quotient:
                if dominance_leq(u.entries, v.entries):
                    out[(u, v)] = self.r_poly(u, v)
        return out


def r_poly(ctx: RContext, u, v) -> IntPolynomial:
    return ctx.r_poly(u, v)


def r_table(ctx: RContext, quotient: Sequence[Permutation] | None = None):
    return ctx.r_table(quotient)


def r_polynomial(u, v, J, x: XMode | str = XMode.Q) -> IntPolynomial:
    """One-off convenience wrapper building a fresh context."""
    u = _as_perm(u)
    return RContext(u.n, J, x).r_poly(u, v)
