"""
Prefix-count statistics on pairs of quotient elements.

For ``J = S minus {s_k..s_i}`` and representatives ``u, v``:

* ``A = {t in k+1..i : u^{-1}(t) >= v^{-1}(t)}`` and ``B = {1..k} | A``;
* ``a_j`` counts positions ``< j`` holding a value of ``B`` in ``u``, minus
  the same count in ``v``;
* ``D`` is the set of positions holding a ``B``-value in ``v`` but not in ``u``.

The single (k = i), double (k = i-1) and triple (k = i-2) quotients are all
special cases, so one engine serves every product formula.

>>> from .perm import Permutation
>>> ctx = make_context(Permutation.parse("416273859"),
...                    Permutation.parse("671489253"),
...                    ParabolicInterval(9, 3, 5))
>>> sorted(ctx.A), sorted(ctx.B), ctx.a, sorted(ctx.D)
([5], [1, 2, 3, 5], (0, 0, 1, 0, 1, 1, 2, 1, 1), [3, 7, 9])
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass

from .perm import Permutation, _as_perm, _same_degree
from .quotient import ParabolicInterval, QuotientMembershipError, is_minimal_rep

__all__ = [
    "PairContext", "make_context", "a_vector", "d_set", "b_stat",
    "value_set_stats",
]


def value_set_stats(
    u: Permutation, v: Permutation, values: Iterable[int]
) -> tuple[tuple[int, ...], frozenset[int]]:
    """
    Return ``(a, D)`` for an arbitrary value set.

    ``a[j-1]`` is ``a_j`` for ``j = 1..n``; ``D`` holds 1-based positions.
    """
    values = frozenset(values)
    u_pos = frozenset(p for p, x in enumerate(u.entries, 1) if x in values)
    v_pos = frozenset(p for p, x in enumerate(v.entries, 1) if x in values)
    a = []
    count = 0
    for j in range(1, u.n + 1):
        a.append(count)
        # position j contributes to a_{j+1} onwards
        count += (j in u_pos) - (j in v_pos)
    return tuple(a), v_pos - u_pos


def b_stat(u, v, t: int, j: int) -> int:
    """
    ``|{r in u^{-1}([t]) : r < j}| - |{r in v^{-1}([t]) : r < j}|``.

    >>> b_stat("123", "231", 1, 3)
    1
    """
    u, v = _as_perm(u), _as_perm(v)
    _same_degree(u, v)
    ue, ve = u.entries, v.entries
    return (
        sum(1 for r in range(j - 1) if ue[r] <= t)
        - sum(1 for r in range(j - 1) if ve[r] <= t)
    )


@dataclass(frozen=True)
class PairContext:
    u: Permutation
    v: Permutation
    interval: ParabolicInterval
    p: tuple[int, ...]       # u^{-1}: p[t-1] is the position of t in u
    q_vec: tuple[int, ...]   # v^{-1}
    A: frozenset[int]
    B: frozenset[int]
    a: tuple[int, ...]       # a[j-1] is a_j
    D: frozenset[int]

    def a_at(self, j: int) -> int:
        """``a_j`` with 1-based ``j``."""
        return self.a[j - 1]

    def as_dict(self) -> dict:
        return {
            "u": str(self.u),
            "v": str(self.v),
            "n": self.u.n,
            "excluded": self.interval.label(),
            "A": sorted(self.A),
            "B": sorted(self.B),
            "a": list(self.a),
            "D": sorted(self.D),
        }


def make_context(u, v, interval: ParabolicInterval) -> PairContext:
    u, v = _as_perm(u), _as_perm(v)
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
    p = u.inverse_entries()
    qv = v.inverse_entries()
    # empty when k == i
    A = frozenset(
        t for t in range(interval.k + 1, interval.i + 1) if p[t - 1] >= qv[t - 1]
    )
    B = frozenset(range(1, interval.k + 1)) | A
    a, D = value_set_stats(u, v, B)
    return PairContext(u, v, interval, p, qv, A, B, a, D)


def a_vector(ctx: PairContext) -> tuple[int, ...]:
    return ctx.a


def d_set(ctx: PairContext) -> frozenset[int]:
    return ctx.D
