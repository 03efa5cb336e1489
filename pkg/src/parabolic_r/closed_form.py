"""
Product formulas for parabolic R-polynomials (``x = q``) on interval quotients
``J = S minus {s_k..s_i}``:

* ``brenti_single``  -- k = i,
* ``brenti_double``  -- k = i-1, with its two branches,
* ``triple_formula`` -- k = i-2, when ``i`` sits right of ``i-1`` in ``v``,
* ``conjecture_formula`` -- any k <= i, when ``k+1..i`` increase left to
  right in ``v``.  Not a theorem in general; checked against the recursion by
  ``parabolic_r.verify``.

Each evaluator builds the list of factors and multiplies them out.  All of
them require ``u <= v``; ``r_closed`` is the forgiving entry point that
returns 0 for incomparable pairs.
"""

from __future__ import annotations

from functools import reduce

from .deodhar import XMode
from .perm import Permutation, _as_perm, _same_degree
from .polynomial import ONE, Q, ZERO, IntPolynomial, monomial
from .quotient import ParabolicInterval, QuotientMembershipError, bruhat_leq, is_minimal_rep
from .statistics import PairContext, make_context, value_set_stats

__all__ = [
    "ClosedFormError", "NotBruhatComparableError", "IncreasingOrderError",
    "NonPolynomialError",
    "conjecture_formula", "conjecture_factors", "brenti_single",
    "brenti_double", "triple_formula", "r_closed", "satisfies_increasing",
]


class ClosedFormError(ValueError):
    """A product formula was applied outside its hypotheses."""


class NotBruhatComparableError(ClosedFormError):
    pass


class IncreasingOrderError(ClosedFormError):
    """``v`` does not list the values ``k+1..i`` in increasing order."""


class TripleOrderError(IncreasingOrderError):
    """``i`` does not appear after ``i-1`` in ``v``."""


class NonPolynomialError(ClosedFormError):
    """A factor would need a negative power of q."""


def _delta_factor(delta: bool, a: int) -> IntPolynomial:
    """``1 - q + delta * q^(1+a)``."""
    base = ONE - Q
    if not delta:
        return base
    if 1 + a < 0:
        raise NonPolynomialError(f"factor 1 - q + q^({1 + a}) is not a polynomial")
    return base + monomial(1 + a)


def _d_factor(a: int) -> IntPolynomial:
    if a < 0:
        raise NonPolynomialError(f"factor 1 - q^({a}) is not a polynomial")
    return ONE - monomial(a)


def _sign(u: Permutation, v: Permutation) -> int:
    return -1 if (v.length() - u.length()) % 2 else 1


def _expand(sign: int, factors: list[IntPolynomial]) -> IntPolynomial:
    return reduce(lambda x, y: x * y, factors, ONE).scale(sign)


def _require(u: Permutation, v: Permutation, interval: ParabolicInterval) -> None:
    _same_degree(u, v)
    if u.n != interval.n:
        raise ValueError(f"interval lives in S_{interval.n}, permutations in S_{u.n}")
    J = interval.generators()
    for w, name in ((u, "u"), (v, "v")):
        if not is_minimal_rep(w, J):
            raise QuotientMembershipError(
                f"{name}={w} is not a minimal representative for "
                f"J = S minus {{s_{interval.k}..s_{interval.i}}}"
            )
    if not bruhat_leq(u, v):
        raise NotBruhatComparableError(f"u={u} is not <= v={v} in Bruhat order")


def satisfies_increasing(v: Permutation, interval: ParabolicInterval) -> bool:
    """Values ``k+1, ..., i`` appear left to right in ``v``."""
    pos = v.inverse_entries()
    return all(pos[t - 1] < pos[t] for t in range(interval.k + 1, interval.i))


def conjecture_factors(ctx: PairContext) -> tuple[int, list[IntPolynomial]]:
    """``(sign, factors)`` of the general product, before expansion."""
    _require(ctx.u, ctx.v, ctx.interval)
    if not satisfies_increasing(ctx.v, ctx.interval):
        raise IncreasingOrderError(
            f"values {ctx.interval.k + 1}..{ctx.interval.i} are not increasing in v={ctx.v}"
        )
    factors = []
    for t in range(ctx.interval.k + 1, ctx.interval.i + 1):
        delta = ctx.p[t - 1] == ctx.q_vec[t - 1]
        factors.append(_delta_factor(delta, ctx.a_at(ctx.q_vec[t - 1])))
    for j in sorted(ctx.D):
        factors.append(_d_factor(ctx.a_at(j)))
    return _sign(ctx.u, ctx.v), factors


def conjecture_formula(ctx: PairContext) -> IntPolynomial:
    """
    >>> ctx = make_context(Permutation.parse("416273859"),
    ...                    Permutation.parse("671489253"),
    ...                    ParabolicInterval(9, 3, 5))
    >>> conjecture_formula(ctx).to_json()
    [1, -4, 6, -3, -3, 6, -4, 1]
    """
    sign, factors = conjecture_factors(ctx)
    return _expand(sign, factors)


def brenti_single(u, v, i: int) -> IntPolynomial:
    """``J = S minus {s_i}``: ``(-1)^(l(v)-l(u)) prod_{j in D} (1 - q^{a_j})`` with B = [i]."""
    u, v = _as_perm(u), _as_perm(v)
    _require(u, v, ParabolicInterval(u.n, i, i))
    a, D = value_set_stats(u, v, range(1, i + 1))
    return _expand(_sign(u, v), [_d_factor(a[j - 1]) for j in sorted(D)])


def brenti_double(u, v, i: int, branch: str | None = None) -> IntPolynomial:
    """
    ``J = S minus {s_{i-1}, s_i}``.

    The ``"plain"`` branch counts values in ``[i]`` and applies when
    ``u^{-1}(i) >= v^{-1}(i)``; the ``"tilde"`` branch counts values in
    ``[i-1]`` and applies when ``u^{-1}(i) <= v^{-1}(i)``.  With
    ``branch=None`` the plain branch wins ties.
    """
    u, v = _as_perm(u), _as_perm(v)
    if i < 2:
        raise ValueError("the double quotient needs i >= 2")
    _require(u, v, ParabolicInterval(u.n, i - 1, i))
    pu, pv = u.position(i), v.position(i)
    if branch is None:
        branch = "plain" if pu >= pv else "tilde"
    if branch == "plain":
        if pu < pv:
            raise ClosedFormError("plain branch needs u^{-1}(i) >= v^{-1}(i)")
        top = i
    elif branch == "tilde":
        if pu > pv:
            raise ClosedFormError("tilde branch needs u^{-1}(i) <= v^{-1}(i)")
        top = i - 1
    else:
        raise ValueError(f"unknown branch {branch!r}")
    a, D = value_set_stats(u, v, range(1, top + 1))
    factors = [_delta_factor(pu == pv, a[pv - 1])]
    factors += [_d_factor(a[j - 1]) for j in sorted(D)]
    return _expand(_sign(u, v), factors)


def triple_formula(u, v, i: int) -> IntPolynomial:
    """``J = S minus {s_{i-2}, s_{i-1}, s_i}``, with ``i`` after ``i-1`` in ``v``."""
    u, v = _as_perm(u), _as_perm(v)
    if i < 3:
        raise ValueError("the triple quotient needs i >= 3")
    _require(u, v, ParabolicInterval(u.n, i - 2, i))
    if not v.position(i) > v.position(i - 1):
        raise TripleOrderError(f"{i} does not appear after {i - 1} in v={v}")
    B = set(range(1, i - 1))
    for t in (i - 1, i):
        if u.position(t) >= v.position(t):
            B.add(t)
    a, D = value_set_stats(u, v, B)
    factors = [
        _delta_factor(u.position(t) == v.position(t), a[v.position(t) - 1])
        for t in (i - 1, i)
    ]
    factors += [_d_factor(a[j - 1]) for j in sorted(D)]
    return _expand(_sign(u, v), factors)


def r_closed(u, v, interval: ParabolicInterval, x: XMode = XMode.Q) -> IntPolynomial:
    """
    The general product for any comparable pair, 0 when ``u`` is not ``<= v``.

    For ``x = -1`` the ``x = q`` value is converted with the duality
    ``R^{-1} = (-1)^L q^L R^{q}(1/q)``, ``L = l(v) - l(u)``.
    """
    u, v = _as_perm(u), _as_perm(v)
    if not bruhat_leq(u, v):
        # still reject non-representatives
        make_context(u, v, interval)
        return ZERO
    res = conjecture_formula(make_context(u, v, interval))
    if x is XMode.MINUS_ONE:
        L = v.length() - u.length()
        res = res.reverse(L).scale(-1 if L % 2 else 1)
    return res
