"""Elementary gradings of n x n matrices and their partial-injection calculus.

An elementary grading is induced by an n-tuple (g_0, ..., g_{n-1}) of
pairwise distinct group elements: the matrix unit e_ij is homogeneous of
degree g_i^{-1} g_j.  Distinctness is exactly what makes the neutral
component the diagonal, and everything downstream assumes it.

For a group element g, the rows i whose label g_i stays inside the tuple
after right multiplication by g form the set d_set(g), and sending i to
the unique j with g_i g = g_j defines an injective partial self-map of
the rows, ``hat(g)``.  Products of homogeneous matrix units are governed
by composition of these maps, so the identity tests reduce to partial
injection arithmetic.  Rows and columns are 0-based throughout.
"""

from __future__ import annotations

from typing import Iterable, NamedTuple, Optional, Sequence

from .errors import GradingError, PreconditionError
from .groups import Group, group_from_json


class SignedElement(NamedTuple):
    """A group element with an optional star: the letter g or g*."""

    element: int
    star: bool = False

    def render(self, group: Group) -> str:
        return group.name_of(self.element) + ("*" if self.star else "")


class PartialInjection:
    """An injective partial self-map of {0..n-1}, stored as a target tuple."""

    __slots__ = ("targets",)

    def __init__(self, targets: Iterable[Optional[int]]):
        t = tuple(targets)
        hit = [x for x in t if x is not None]
        if len(hit) != len(set(hit)):
            raise PreconditionError(f"targets {t} are not injective")
        if any(not 0 <= x < len(t) for x in hit):
            raise PreconditionError(f"targets {t} leave the index range")
        self.targets = t

    @classmethod
    def identity(cls, n: int) -> "PartialInjection":
        return cls(range(n))

    @classmethod
    def empty(cls, n: int) -> "PartialInjection":
        return cls([None] * n)

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple[int, int]]) -> "PartialInjection":
        t: list[Optional[int]] = [None] * n
        for i, j in pairs:
            if t[i] is not None:
                raise PreconditionError(f"duplicate source {i}")
            t[i] = j
        return cls(t)

    @property
    def n(self) -> int:
        return len(self.targets)

    def __call__(self, i: int) -> Optional[int]:
        return self.targets[i]

    def domain(self) -> tuple[int, ...]:
        return tuple(i for i, x in enumerate(self.targets) if x is not None)

    def image(self) -> tuple[int, ...]:
        return tuple(sorted(x for x in self.targets if x is not None))

    @property
    def is_empty(self) -> bool:
        return all(x is None for x in self.targets)

    def then(self, other: "PartialInjection") -> "PartialInjection":
        """Composition with ``self`` applied first."""
        return PartialInjection(
            other.targets[x] if x is not None else None for x in self.targets
        )

    def inverse(self) -> "PartialInjection":
        t: list[Optional[int]] = [None] * self.n
        for i, x in enumerate(self.targets):
            if x is not None:
                t[x] = i
        return PartialInjection(t)

    def as_dict(self) -> dict[int, int]:
        return {i: x for i, x in enumerate(self.targets) if x is not None}

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PartialInjection) and self.targets == other.targets

    def __hash__(self) -> int:
        return hash(self.targets)

    def __repr__(self) -> str:
        return f"PartialInjection({self.as_dict()})"


def compose_targets(
    first: tuple[Optional[int], ...], then: tuple[Optional[int], ...]
) -> tuple[Optional[int], ...]:
    """Raw-tuple composition (first applied first); hot path for enumeration."""
    return tuple(then[x] if x is not None else None for x in first)


class Grading:
    """An elementary grading, with support and hat maps precomputed.

    Immutable after construction; share freely.
    """

    def __init__(self, group: Group, defining_tuple: tuple[int, ...]):
        self.group = group
        self.defining_tuple = defining_tuple
        self.n = len(defining_tuple)
        n = self.n
        hats: dict[int, PartialInjection] = {}
        pos = {g: i for i, g in enumerate(defining_tuple)}
        for g in group.elements():
            targets: list[Optional[int]] = [None] * n
            for i, gi in enumerate(defining_tuple):
                j = pos.get(group.mul(gi, g))
                if j is not None:
                    targets[i] = j
            pi = PartialInjection(targets)
            if not pi.is_empty:
                hats[g] = pi
        self._hats = hats
        self.support = frozenset(hats)
        self._empty = PartialInjection.empty(n)

    def support_sorted(self) -> list[int]:
        return sorted(self.support)

    def off_support(self) -> list[int]:
        return [g for g in self.group.elements() if g not in self.support]

    def degree_of_unit(self, row: int, col: int) -> int:
        """Degree of the matrix unit e_{row,col}: g_row^{-1} g_col."""
        if not (0 <= row < self.n and 0 <= col < self.n):
            raise PreconditionError(f"unit position ({row},{col}) outside 0..{self.n - 1}")
        g = self.group
        return g.mul(g.inv(self.defining_tuple[row]), self.defining_tuple[col])

    def hat(self, g: int) -> PartialInjection:
        """The partial injection i -> j with g_i g = g_j; empty off support."""
        if not 0 <= g < self.group.order:
            raise GradingError(f"element index {g} outside the group")
        return self._hats.get(g, self._empty)

    def d_set(self, g: int) -> frozenset[int]:
        return frozenset(self.hat(g).domain())

    def im_set(self, g: int) -> frozenset[int]:
        return frozenset(self.hat(g).image())

    def hat_signed(self, letter: SignedElement) -> PartialInjection:
        """hat(g) for the plain letter g, hat(g^{-1}) for the starred one."""
        if letter.star:
            return self.hat(self.group.inv(letter.element))
        return self.hat(letter.element)

    def compose_signed(self, word: Sequence[SignedElement]) -> PartialInjection:
        """Left-to-right composition: the first letter of the word acts first."""
        if not word:
            raise PreconditionError("compose_signed needs a nonempty word")
        acc = self.hat_signed(word[0])
        for letter in word[1:]:
            acc = acc.then(self.hat_signed(letter))
        return acc

    def signed_alphabet(self) -> list[SignedElement]:
        """All support letters g and g*, in canonical order."""
        return [
            SignedElement(g, star) for g in self.support_sorted() for star in (False, True)
        ]

    def to_json(self) -> dict:
        return {
            "group": self.group.to_json(),
            "tuple": [self.group.name_of(g) for g in self.defining_tuple],
        }

    def __repr__(self) -> str:
        names = ", ".join(self.group.name_of(g) for g in self.defining_tuple)
        return f"Grading({names})"


def build_grading(group: Group, entries: Sequence[int | str]) -> Grading:
    """Validate the defining tuple (nonempty, distinct) and build the grading."""
    if not entries:
        raise GradingError("the defining tuple must be nonempty")
    indices = []
    for x in entries:
        indices.append(group.index_of(x) if isinstance(x, str) else x)
    for g in indices:
        if not 0 <= g < group.order:
            raise GradingError(f"tuple entry {g} is not an element index")
    if len(set(indices)) != len(indices):
        raise GradingError(
            "tuple entries must be pairwise distinct; otherwise the neutral "
            "component is larger than the diagonal"
        )
    return Grading(group, tuple(indices))


def grading_from_json(obj: dict) -> Grading:
    """Load a grading config: {"group": <group JSON>, "tuple": [names...]}."""
    if not isinstance(obj, dict) or "group" not in obj or "tuple" not in obj:
        raise GradingError('grading config needs "group" and "tuple" fields')
    group = group_from_json(obj["group"])
    return build_grading(group, obj["tuple"])
