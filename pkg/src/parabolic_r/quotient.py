"""
Parabolic generator subsets, minimal coset representatives and Bruhat order.

Convention: ``u`` is a minimal representative for ``J`` when
``length(s u) > length(u)`` for every ``s`` in ``J`` (left multiplication).
Left multiplication by ``s_j`` swaps the *values* ``j`` and ``j+1``, so this
says that value ``j`` sits to the left of value ``j+1`` in ``u`` for every
``s_j`` in ``J``.

>>> J = ParabolicInterval(3, 1, 1).generators()
>>> [str(u) for u in enumerate_quotient(3, J)]
['1,2,3', '2,1,3', '2,3,1']
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import lru_cache

from .perm import Permutation, PermutationError, _as_perm, _same_degree

__all__ = [
    "GeneratorSubset", "ParabolicInterval", "QuotientMembershipError",
    "is_minimal_rep", "enumerate_quotient", "bruhat_leq",
    "bruhat_leq_quotient", "dominance_leq", "b_stats_nonnegative",
    "all_intervals",
]


class QuotientMembershipError(ValueError):
    """A permutation is not a minimal coset representative for ``J``."""


@dataclass(frozen=True)
class GeneratorSubset:
    """The set ``J`` of simple generators ``s_j``, stored by index ``j``."""
    n: int
    included: frozenset[int]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("degree must be >= 1")
        object.__setattr__(self, "included", frozenset(self.included))
        bad = [j for j in self.included if not 1 <= j <= self.n - 1]
        if bad:
            raise ValueError(
                f"generator indices {sorted(bad)} outside 1..{self.n - 1}"
            )

    @classmethod
    def full(cls, n: int) -> GeneratorSubset:
        return cls(n, frozenset(range(1, n)))

    @classmethod
    def empty(cls, n: int) -> GeneratorSubset:
        return cls(n, frozenset())

    @classmethod
    def parse(cls, n: int, text: str) -> GeneratorSubset:
        """``"1,2,4"`` -> ``{s_1, s_2, s_4}``; an empty string gives J = {}."""
        parts = [p for p in re.split(r"[,\s]+", text.strip()) if p]
        try:
            return cls(n, frozenset(int(p) for p in parts))
        except ValueError as exc:
            raise ValueError(f"cannot parse generator list {text!r}: {exc}") from None

    def __contains__(self, j: int) -> bool:
        return j in self.included

    def as_interval(self) -> ParabolicInterval | None:
        """The interval form ``S minus {s_k..s_i}``, if the complement is one."""
        missing = sorted(set(range(1, self.n)) - self.included)
        if not missing or missing != list(range(missing[0], missing[-1] + 1)):
            return None
        return ParabolicInterval(self.n, missing[0], missing[-1])

    def label(self) -> str:
        return ",".join(map(str, sorted(self.included)))


@dataclass(frozen=True)
class ParabolicInterval:
    """``J = S minus {s_k, s_{k+1}, ..., s_i}`` inside ``S_n``."""
    n: int
    k: int
    i: int

    def __post_init__(self):
        if not 1 <= self.k <= self.i <= self.n - 1:
            raise ValueError(
                f"need 1 <= k <= i <= n-1, got k={self.k}, i={self.i}, n={self.n}"
            )

    @classmethod
    def parse(cls, n: int, text: str) -> ParabolicInterval:
        """``"3..5"`` -> k=3, i=5.  A single index ``"4"`` means k=i=4."""
        m = re.fullmatch(r"\s*(\d+)\s*(?:\.\.\s*(\d+))?\s*", text)
        if not m:
            raise ValueError(f"cannot parse interval {text!r}; expected k..i")
        k = int(m.group(1))
        i = int(m.group(2)) if m.group(2) else k
        return cls(n, k, i)

    def generators(self) -> GeneratorSubset:
        return GeneratorSubset(
            self.n,
            frozenset(j for j in range(1, self.n) if not self.k <= j <= self.i),
        )

    def label(self) -> str:
        return f"{self.k}..{self.i}"


def all_intervals(n: int) -> list[ParabolicInterval]:
    return [
        ParabolicInterval(n, k, i)
        for k in range(1, n)
        for i in range(k, n)
    ]


def _as_subset(J) -> GeneratorSubset:
    if isinstance(J, ParabolicInterval):
        return J.generators()
    return J


def is_minimal_rep(u, J) -> bool:
    """True iff value ``j`` precedes value ``j+1`` in ``u`` for each ``s_j`` in J."""
    u = _as_perm(u)
    J = _as_subset(J)
    if u.n != J.n:
        raise PermutationError(f"degree mismatch: S_{u.n} vs J in S_{J.n}")
    pos = u.inverse_entries()
    return all(pos[j - 1] < pos[j] for j in J.included)


@lru_cache(maxsize=64)
def _quotient_cached(n: int, J: GeneratorSubset) -> tuple[Permutation, ...]:
    checks = sorted(J.included)
    out = []
    # itertools.permutations yields lexicographic order on sorted input
    for entries in itertools.permutations(range(1, n + 1)):
        pos = [0] * n
        for p, val in enumerate(entries, 1):
            pos[val - 1] = p
        if all(pos[j - 1] < pos[j] for j in checks):
            out.append(Permutation(entries))
    return tuple(out)


def enumerate_quotient(n: int, J) -> tuple[Permutation, ...]:
    """All minimal representatives for ``J``, sorted lexicographically."""
    J = _as_subset(J)
    if J.n != n:
        raise ValueError(f"J lives in S_{J.n}, not S_{n}")
    return _quotient_cached(n, J)


def dominance_leq(ue: tuple[int, ...], ve: tuple[int, ...]) -> bool:
    """
    Bruhat comparison on raw one-line tuples.

    Tracks ``diff[j] = |{r in u[1..t] : r < j}| - |{r in v[1..t] : r < j}|``
    as ``t`` grows; ``u <= v`` iff no entry ever goes negative.  Only entries
    that just decreased need checking.
    """
    n = len(ue)
    diff = [0] * (n + 2)
    for t in range(n - 1):
        x = ue[t]
        y = ve[t]
        if x < y:
            for j in range(x + 1, y + 1):
                diff[j] += 1
        elif y < x:
            for j in range(y + 1, x + 1):
                diff[j] -= 1
                if diff[j] < 0:
                    return False
    return True


def bruhat_leq(u, v) -> bool:
    """Bruhat order on ``S_n`` via the prefix-dominance criterion."""
    u, v = _as_perm(u), _as_perm(v)
    _same_degree(u, v)
    return dominance_leq(u.entries, v.entries)


def bruhat_leq_quotient(u, v, interval: ParabolicInterval) -> bool:
    """
    Bruhat order on the quotient for ``J = S minus {s_k..s_i}``, tested with
    threshold counts on inverse one-line notation.

    A representative's inverse can only descend at ``t`` in ``k..i``, so it
    suffices to require ``b_stat(u, v, t, j) >= 0`` for those thresholds and
    every position ``j``.  For ``k = i - 2`` these are exactly the three
    families of counts used for the triple quotient; the general ``k..i``
    range is the same argument applied to a longer run of thresholds.
    """
    u, v = _as_perm(u), _as_perm(v)
    _same_degree(u, v)
    if u.n != interval.n:
        raise PermutationError(f"degree mismatch: S_{u.n} vs interval in S_{interval.n}")
    J = interval.generators()
    for w, name in ((u, "u"), (v, "v")):
        if not is_minimal_rep(w, J):
            raise QuotientMembershipError(
                f"{name}={w} is not a minimal representative for "
                f"J = S minus {{s_{interval.k}..s_{interval.i}}}"
            )
    return b_stats_nonnegative(u.entries, v.entries, interval.k, interval.i)


def b_stats_nonnegative(ue: tuple[int, ...], ve: tuple[int, ...], k: int, i: int) -> bool:
    """All ``b_stat(u, v, t, j) >= 0`` for ``k <= t <= i``, every ``j``, in one sweep per ``t``."""
    n = len(ue)
    for t in range(k, i + 1):
        running = 0
        # running == b_stat(u, v, t, j + 2) after processing position j + 1
        for j in range(n - 1):
            running += (ue[j] <= t) - (ve[j] <= t)
            if running < 0:
                return False
    return True
