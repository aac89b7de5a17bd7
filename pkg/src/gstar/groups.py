"""Finite groups given by an explicit Cayley table.

Elements are dense indices 0..order-1 internally; names exist only at the
input/output boundary.  Construction validates every axiom exhaustively
(Latin square, identity, inverses, associativity), which is why the order
is capped at desk scale.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import GroupError

MAX_GROUP_ORDER = 64


@dataclass(frozen=True)
class Group:
    names: tuple[str, ...]
    table: tuple[tuple[int, ...], ...]
    identity: int
    inverse: tuple[int, ...]
    _index: dict = field(repr=False, hash=False, compare=False, default_factory=dict)

    @property
    def order(self) -> int:
        return len(self.names)

    def elements(self) -> range:
        return range(self.order)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def name_of(self, a: int) -> str:
        return self.names[a]

    def index_of(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise GroupError(
                f"unknown element {name!r}; known: {', '.join(self.names)}"
            ) from None

    def to_json(self) -> dict:
        return {"elements": list(self.names), "table": [list(row) for row in self.table]}

    def __repr__(self) -> str:
        return f"Group({', '.join(self.names)})"


def _validate(names: Sequence[str], table: Sequence[Sequence[int]], max_order: int):
    n = len(names)
    if n == 0:
        raise GroupError("a group needs at least the identity element")
    if n > max_order:
        raise GroupError(f"order {n} exceeds the configured cap {max_order}")
    if len(set(names)) != n:
        raise GroupError("element names must be pairwise distinct")
    if len(table) != n or any(len(row) != n for row in table):
        raise GroupError(f"table must be {n}x{n} to match the element list")
    for i, row in enumerate(table):
        for j, v in enumerate(row):
            if not isinstance(v, int) or not 0 <= v < n:
                raise GroupError(f"table[{i}][{j}] = {v!r} is not an element index")

    # Latin square: each row and each column is a permutation.
    full = set(range(n))
    for i, row in enumerate(table):
        if set(row) != full:
            raise GroupError(f"row {i} ({names[i]}) is not a permutation: Latin-square violation")
    for j in range(n):
        if {table[i][j] for i in range(n)} != full:
            raise GroupError(f"column {j} ({names[j]}) is not a permutation: Latin-square violation")

    identity = None
    for e in range(n):
        if all(table[e][j] == j for j in range(n)) and all(table[i][e] == i for i in range(n)):
            identity = e
            break
    if identity is None:
        raise GroupError("no two-sided identity element found")

    for a in range(n):
        for b in range(n):
            ab = table[a][b]
            for c in range(n):
                if table[ab][c] != table[a][table[b][c]]:
                    raise GroupError(
                        "not associative: "
                        f"({names[a]}*{names[b]})*{names[c]} != {names[a]}*({names[b]}*{names[c]})"
                    )

    inverse = [0] * n
    for a in range(n):
        found = None
        for b in range(n):
            if table[a][b] == identity and table[b][a] == identity:
                found = b
                break
        if found is None:
            raise GroupError(f"element {names[a]} has no two-sided inverse")
        inverse[a] = found

    return identity, tuple(inverse)


def make_from_table(
    names: Sequence[str], table: Sequence[Sequence[int]], max_order: int = MAX_GROUP_ORDER
) -> Group:
    """Build a validated group from element names and a Cayley table of indices."""
    identity, inverse = _validate(names, table, max_order)
    g = Group(
        names=tuple(names),
        table=tuple(tuple(row) for row in table),
        identity=identity,
        inverse=inverse,
    )
    g._index.update({name: i for i, name in enumerate(g.names)})
    return g


def cyclic_names(order: int) -> list[str]:
    if order == 1:
        return ["e"]
    return ["e", "a"] + [f"a{k}" for k in range(2, order)]


def make_cyclic(order: int, max_order: int = MAX_GROUP_ORDER) -> Group:
    """The cyclic group of the given order, elements named e, a, a2, ..."""
    if order < 1:
        raise GroupError(f"order must be a positive integer, got {order}")
    table = [[(i + j) % order for j in range(order)] for i in range(order)]
    return make_from_table(cyclic_names(order), table, max_order=max_order)


def group_from_json(obj: dict, max_order: int = MAX_GROUP_ORDER) -> Group:
    """Load a group from its JSON form: {"cyclic": m} or {"elements", "table"}."""
    if not isinstance(obj, dict):
        raise GroupError(f"group description must be an object, got {type(obj).__name__}")
    if "cyclic" in obj:
        m = obj["cyclic"]
        if not isinstance(m, int):
            raise GroupError(f"cyclic order must be an integer, got {m!r}")
        return make_cyclic(m, max_order=max_order)
    if "elements" in obj and "table" in obj:
        return make_from_table(obj["elements"], obj["table"], max_order=max_order)
    raise GroupError('group description needs either "cyclic" or "elements"+"table"')
