"""
Elements of the symmetric group $S_n$ in one-line notation.

Values and positions are both 1-based, so ``Permutation.parse("231")(1) == 2``.
Instances are immutable and hashable; every operation returns a new value.

>>> u = Permutation.parse("416273859")
>>> u.length(), sorted(u.right_descents())
(9, [1, 3, 5, 7])
>>> compose(Permutation.parse("213"), Permutation.parse("132"))
Permutation('2,3,1')
"""

from __future__ import annotations

import re
from collections.abc import Iterable

__all__ = [
    "Permutation", "PermutationError",
    "identity", "compose", "inverse", "length", "right_descents",
    "right_mult_adjacent", "inversion_count", "swap_positions",
]


class PermutationError(ValueError):
    """Malformed one-line notation, or a degree mismatch."""


def inversion_count(entries: tuple[int, ...]) -> int:
    """Number of pairs ``a < b`` with ``entries[a] > entries[b]``."""
    n = len(entries)
    return sum(
        1
        for a in range(n)
        for b in range(a + 1, n)
        if entries[a] > entries[b]
    )


def swap_positions(entries: tuple[int, ...], j: int) -> tuple[int, ...]:
    """Swap the entries at 1-based positions ``j`` and ``j+1``."""
    out = list(entries)
    out[j - 1], out[j] = out[j], out[j - 1]
    return tuple(out)


class Permutation:
    __slots__ = ("_entries", "_inverse", "_length")

    def __init__(self, entries: Iterable[int]):
        entries = tuple(int(x) for x in entries)
        n = len(entries)
        if n == 0:
            raise PermutationError("a permutation needs degree n >= 1")
        if sorted(entries) != list(range(1, n + 1)):
            raise PermutationError(
                f"{entries} is not a rearrangement of 1..{n}"
            )
        self._entries = entries
        self._inverse: tuple[int, ...] | None = None
        self._length: int | None = None

    @classmethod
    def parse(cls, text: str) -> Permutation:
        """
        Read ``"4,1,6,2"``, ``"4 1 6 2"`` or the compact ``"4162"``.

        The compact form is only accepted for n <= 9, where every value is
        a single digit.
        """
        text = text.strip()
        if not text:
            raise PermutationError("empty permutation")
        if re.fullmatch(r"\d+", text):
            if len(text) > 9:
                raise PermutationError(
                    f"compact notation {text!r} is ambiguous for n > 9; "
                    "separate values with commas"
                )
            return cls(int(c) for c in text)
        parts = [p for p in re.split(r"[,\s]+", text) if p]
        if not all(p.isdigit() for p in parts):
            raise PermutationError(f"cannot parse permutation {text!r}")
        return cls(int(p) for p in parts)

    @property
    def entries(self) -> tuple[int, ...]:
        return self._entries

    @property
    def n(self) -> int:
        return len(self._entries)

    def __call__(self, i: int) -> int:
        """The value at 1-based position ``i``."""
        if not 1 <= i <= len(self._entries):
            raise IndexError(f"position {i} outside 1..{self.n}")
        return self._entries[i - 1]

    def position(self, value: int) -> int:
        """1-based position of ``value``, i.e. ``u^{-1}(value)``."""
        return self.inverse_entries()[value - 1]

    def inverse_entries(self) -> tuple[int, ...]:
        if self._inverse is None:
            inv = [0] * self.n
            for pos, val in enumerate(self._entries, 1):
                inv[val - 1] = pos
            self._inverse = tuple(inv)
        return self._inverse

    def inverse(self) -> Permutation:
        return Permutation(self.inverse_entries())

    def length(self) -> int:
        if self._length is None:
            self._length = inversion_count(self._entries)
        return self._length

    def right_descents(self) -> frozenset[int]:
        """Indices ``j`` with ``u(j) > u(j+1)``."""
        e = self._entries
        return frozenset(j for j in range(1, self.n) if e[j - 1] > e[j])

    def right_mult_adjacent(self, j: int) -> Permutation:
        """``u * s_j``: swap the entries in positions ``j`` and ``j+1``."""
        if not 1 <= j <= self.n - 1:
            raise PermutationError(f"generator s_{j} does not exist in S_{self.n}")
        return Permutation(swap_positions(self._entries, j))

    def is_identity(self) -> bool:
        return all(v == i for i, v in enumerate(self._entries, 1))

    def __eq__(self, other):
        if not isinstance(other, Permutation):
            return NotImplemented
        return self._entries == other._entries

    def __lt__(self, other: Permutation) -> bool:
        # lexicographic on one-line notation; not the Bruhat order
        return self._entries < other._entries

    def __hash__(self):
        return hash(self._entries)

    def __iter__(self):
        return iter(self._entries)

    def __len__(self):
        return len(self._entries)

    def __str__(self):
        return ",".join(map(str, self._entries))

    def __repr__(self):
        return f"Permutation({str(self)!r})"

    def compact(self) -> str:
        """Digit-string form, e.g. ``416273859``; only meaningful for n <= 9."""
        if self.n > 9:
            return str(self)
        return "".join(map(str, self._entries))


def _as_perm(u) -> Permutation:
    if isinstance(u, Permutation):
        return u
    if isinstance(u, str):
        return Permutation.parse(u)
    return Permutation(u)


def _same_degree(u: Permutation, v: Permutation) -> None:
    if u.n != v.n:
        raise PermutationError(f"degree mismatch: S_{u.n} vs S_{v.n}")


def identity(n: int) -> Permutation:
    if n < 1:
        raise PermutationError("identity needs n >= 1")
    return Permutation(range(1, n + 1))


def compose(u, v) -> Permutation:
    """The product ``uv``, acting as ``(uv)(i) = u(v(i))``."""
    u, v = _as_perm(u), _as_perm(v)
    _same_degree(u, v)
    ue = u.entries
    return Permutation(ue[x - 1] for x in v.entries)


def inverse(u) -> Permutation:
    return _as_perm(u).inverse()


def length(u) -> int:
    return _as_perm(u).length()


def right_descents(u) -> frozenset[int]:
    return _as_perm(u).right_descents()


def right_mult_adjacent(u, j: int) -> Permutation:
    return _as_perm(u).right_mult_adjacent(j)
