"""Finite abelian groups written as products of cyclic groups.

A group is given by its list of cyclic moduli, ``Z4 x Z2^3`` being
``GroupSpec((4, 2, 2, 2))``.  Elements are plain tuples of residues.  No
canonicalization to invariant factors is done: the presentation the caller
asks for is the one used for labels.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from typing import Iterator, Sequence

GroupElem = tuple[int, ...]

#: Largest group order accepted for enumeration-based code paths.
DEFAULT_ENUMERATION_CAP = 1 << 20

_WORD_LIMIT = 1 << 63
_TERM_RE = re.compile(r"^Z(\d+)(?:\^(\d+))?$")


class GroupError(ValueError):
    """Raised for malformed group strings or non-conforming elements."""


@dataclass(frozen=True)
class GroupSpec:
    """Direct product of cyclic groups ``Z_{n_1} x ... x Z_{n_m}``."""

    moduli: tuple[int, ...]

    def __post_init__(self) -> None:
        moduli = tuple(int(n) for n in self.moduli)
        if not moduli:
            raise GroupError("a group needs at least one cyclic factor")
        if any(n < 2 for n in moduli):
            raise GroupError(f"every modulus must be >= 2, got {moduli}")
        if math.prod(moduli) >= _WORD_LIMIT:
            raise GroupError("group order does not fit in a machine word")
        object.__setattr__(self, "moduli", moduli)

    @classmethod
    def parse(cls, text: str) -> "GroupSpec":
        """Parse ``Z4``, ``Z2^3``, ``Z2^3xZ4`` and similar."""
        text = text.strip().replace(" ", "")
        if not text:
            raise GroupError("empty group description")
        moduli: list[int] = []
        for term in re.split(r"[x×*]", text):
            m = _TERM_RE.match(term)
            if m is None:
                raise GroupError(f"cannot parse group term {term!r}")
            n = int(m.group(1))
            k = int(m.group(2)) if m.group(2) is not None else 1
            if n <= 1:
                raise GroupError(f"cyclic order must be >= 2 in {term!r}")
            if k <= 0:
                raise GroupError(f"exponent must be >= 1 in {term!r}")
            moduli.extend([n] * k)
        return cls(tuple(moduli))

    @classmethod
    def power(cls, n: int, k: int) -> "GroupSpec":
        return cls((n,) * k)

    def __str__(self) -> str:
        parts = []
        for n, run in itertools.groupby(self.moduli):
            k = len(list(run))
            parts.append(f"Z{n}" if k == 1 else f"Z{n}^{k}")
        return "x".join(parts)

    @property
    def arity(self) -> int:
        return len(self.moduli)

    @property
    def order(self) -> int:
        return math.prod(self.moduli)

    @property
    def all_even(self) -> bool:
        return all(n % 2 == 0 for n in self.moduli)

    def zero(self) -> GroupElem:
        return (0,) * len(self.moduli)

    def element(self, residues: Sequence[int]) -> GroupElem:
        """Reduce ``residues`` into a conforming element."""
        if len(residues) != len(self.moduli):
            raise GroupError(
                f"element has {len(residues)} coordinates, group {self} has {self.arity}")
        return tuple(int(r) % n for r, n in zip(residues, self.moduli))

    def _check(self, a: Sequence[int]) -> None:
        if len(a) != len(self.moduli):
            raise GroupError(
                f"element has {len(a)} coordinates, group {self} has {self.arity}")

    def add(self, a: GroupElem, b: GroupElem) -> GroupElem:
        self._check(a)
        self._check(b)
        return tuple((x + y) % n for x, y, n in zip(a, b, self.moduli))

    def neg(self, a: GroupElem) -> GroupElem:
        self._check(a)
        return tuple((-x) % n for x, n in zip(a, self.moduli))

    def scalar_mul(self, k: int, a: GroupElem) -> GroupElem:
        self._check(a)
        return tuple((k * x) % n for x, n in zip(a, self.moduli))

    def sum(self, elems: Sequence[GroupElem]) -> GroupElem:
        total = [0] * len(self.moduli)
        for a in elems:
            self._check(a)
            for i, x in enumerate(a):
                total[i] += x
        return tuple(t % n for t, n in zip(total, self.moduli))

    def enumerate_nonzero(self, cap: int = DEFAULT_ENUMERATION_CAP) -> Iterator[GroupElem]:
        """Yield every nonzero element in lexicographic order."""
        if self.order > cap:
            raise GroupError(f"group order {self.order} exceeds enumeration cap {cap}")
        it = itertools.product(*(range(n) for n in self.moduli))
        next(it)  # the identity comes first
        yield from it

    def contains(self, a: Sequence[int]) -> bool:
        return len(a) == len(self.moduli) and all(0 <= x < n for x, n in zip(a, self.moduli))


def is_zero(a: Sequence[int]) -> bool:
    return all(x == 0 for x in a)


def scale_into(target: GroupSpec, k: int, a: Sequence[int]) -> GroupElem:
    """Map ``a`` coordinatewise into ``target`` and multiply by ``k``.

    This is how a ``Z_2^m`` labeling becomes a ``Z_{2j}^m`` labeling: each
    bit is sent to ``j`` times itself.
    """
    return target.element([k * x for x in a])
