"""Generic graded matrices over an exact commutative polynomial ring.

The entry variables y[slot,row,col] are commuting indeterminates; a generic
matrix for (slot, g) places one fresh variable on each position (i, hat(g)(i))
of the grading's pattern for g.  Its starred companion is the transpose.
Products of generic matrices are extremely sparse: at most one nonzero entry
per row, always a single monomial with coefficient one.  That structure has a
closed form (``closed_form_product``) which this module computes directly and
which the tests compare against honest matrix multiplication.

(row, col) pairs are 0-based.  Every in-range pair hosts a variable, because
(row, col) determines the unique group element g_row^{-1} g_col whose pattern
passes through it.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import groupby
from typing import NamedTuple, Optional, Sequence

from .errors import ShapeError, TraceDomainError, VariableError
from .gradings import Grading, SignedElement
from .rings import RATIONALS


class EntryVar(NamedTuple):
    """A commuting variable y[slot,row,col]; the triple is its full identity."""

    slot: int
    row: int
    col: int

    def render(self) -> str:
        return f"y[{self.slot},{self.row},{self.col}]"


class CMonomial:
    """A commutative monomial: a multiset of entry variables, stored sorted."""

    __slots__ = ("vars",)

    def __init__(self, variables: Sequence[EntryVar]):
        self.vars = tuple(sorted(variables))

    @property
    def degree(self) -> int:
        return len(self.vars)

    def __mul__(self, other: "CMonomial") -> "CMonomial":
        return CMonomial(self.vars + other.vars)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, CMonomial) and self.vars == other.vars

    def __hash__(self) -> int:
        return hash(self.vars)

    def __lt__(self, other: "CMonomial") -> bool:
        return self.vars < other.vars

    def render(self) -> str:
        if not self.vars:
            return "1"
        parts = []
        for v, grp in groupby(self.vars):
            k = len(list(grp))
            parts.append(v.render() if k == 1 else f"{v.render()}^{k}")
        return "*".join(parts)

    def __repr__(self) -> str:
        return f"CMonomial({self.render()})"


ONE_MONOMIAL = CMonomial(())


class CPolynomial:
    """A finite sum coeff * monomial; zero coefficients are never stored."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict):
        self.terms = {m: c for m, c in terms.items() if c}

    @classmethod
    def zero(cls) -> "CPolynomial":
        return cls({})

    @classmethod
    def from_var(cls, v: EntryVar, one) -> "CPolynomial":
        return cls({CMonomial([v]): one})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other: "CPolynomial") -> "CPolynomial":
        out = dict(self.terms)
        for m, c in other.terms.items():
            if m in out:
                s = out[m] + c
                if s:
                    out[m] = s
                else:
                    del out[m]
            else:
                out[m] = c
        return CPolynomial(out)

    def __neg__(self) -> "CPolynomial":
        return CPolynomial({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "CPolynomial") -> "CPolynomial":
        return self + (-other)

    def __mul__(self, other: "CPolynomial") -> "CPolynomial":
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = m1 * m2
                c = c1 * c2
                if m in out:
                    s = out[m] + c
                    if s:
                        out[m] = s
                    else:
                        del out[m]
                elif c:
                    out[m] = c
        return CPolynomial(out)

    def scale(self, coeff) -> "CPolynomial":
        if not coeff:
            return CPolynomial.zero()
        return CPolynomial({m: c * coeff for m, c in self.terms.items()})

    def terms_sorted(self) -> list:
        return sorted(self.terms.items(), key=lambda mc: mc[0].vars)

    def canonical_key(self) -> tuple:
        return tuple((m.vars, c) for m, c in self.terms_sorted())

    def __eq__(self, other: object) -> bool:
        return isinstance(other, CPolynomial) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def render(self) -> str:
        if not self.terms:
            return "0"
        chunks = []
        for m, c in self.terms_sorted():
            body = m.render()
            if c == 1:
                piece = body
            elif c == -1:
                piece = f"-{body}"
            else:
                piece = f"{c}*{body}" if body != "1" else str(c)
            chunks.append(piece)
        return " + ".join(chunks).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"CPolynomial({self.render()})"


class SparseMatrix:
    """A square matrix over CPolynomial; zero entries are never stored."""

    __slots__ = ("n", "entries")

    def __init__(self, n: int, entries: dict):
        self.n = n
        self.entries = {pos: p for pos, p in entries.items() if p}

    @classmethod
    def zero(cls, n: int) -> "SparseMatrix":
        return cls(n, {})

    @classmethod
    def identity(cls, n: int, one) -> "SparseMatrix":
        p = CPolynomial({ONE_MONOMIAL: one})
        return cls(n, {(i, i): p for i in range(n)})

    def get(self, row: int, col: int) -> CPolynomial:
        return self.entries.get((row, col), CPolynomial.zero())

    @property
    def is_zero(self) -> bool:
        return not self.entries

    def _check(self, other: "SparseMatrix") -> None:
        if self.n != other.n:
            raise ShapeError(f"size mismatch: {self.n} vs {other.n}")

    def __add__(self, other: "SparseMatrix") -> "SparseMatrix":
        self._check(other)
        out = dict(self.entries)
        for pos, p in other.entries.items():
            s = out[pos] + p if pos in out else p
            if s:
                out[pos] = s
            else:
                out.pop(pos, None)
        return SparseMatrix(self.n, out)

    def __neg__(self) -> "SparseMatrix":
        return SparseMatrix(self.n, {pos: -p for pos, p in self.entries.items()})

    def __sub__(self, other: "SparseMatrix") -> "SparseMatrix":
        return self + (-other)

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        self._check(other)
        by_row: dict[int, list] = {}
        for (r, c), p in other.entries.items():
            by_row.setdefault(r, []).append((c, p))
        out: dict = {}
        for (i, k), p in self.entries.items():
            for j, q in by_row.get(k, ()):
                prod = p * q
                if not prod:
                    continue
                pos = (i, j)
                s = out[pos] + prod if pos in out else prod
                if s:
                    out[pos] = s
                else:
                    out.pop(pos, None)
        return SparseMatrix(self.n, out)

    def scale(self, coeff) -> "SparseMatrix":
        return SparseMatrix(self.n, {pos: p.scale(coeff) for pos, p in self.entries.items()})

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(self.n, {(c, r): p for (r, c), p in self.entries.items()})

    def nonzero_items(self) -> list:
        return sorted(self.entries.items())

    def canonical_key(self) -> tuple:
        return tuple((pos, p.canonical_key()) for pos, p in self.nonzero_items())

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, SparseMatrix)
            and self.n == other.n
            and self.entries == other.entries
        )

    def __hash__(self) -> int:
        return hash((self.n, frozenset((pos, p.canonical_key()) for pos, p in self.entries.items())))

    def render(self) -> str:
        if self.is_zero:
            return "0"
        return "\n".join(f"({r},{c}) {p.render()}" for (r, c), p in self.nonzero_items())

    def __repr__(self) -> str:
        return f"SparseMatrix(n={self.n}, nnz={len(self.entries)})"


def canonical_element(row: int, col: int, grading: Grading) -> int:
    """The unique group element whose pattern passes through (row, col)."""
    return grading.degree_of_unit(row, col)


def star_omega(v: EntryVar, grading: Grading) -> EntryVar:
    """The starred companion of an entry variable.

    For v = y[j, k, hat(g)(k)] the star is y[j, hat(g^{-1})(k), k]: the
    variable that occupies row k of the starred generic matrix for g.  The
    map is partial: it needs k in the image of hat(g).  It is an involution
    exactly on variables whose element g satisfies g = g^{-1} (so everywhere
    over groups of exponent 2, and on the diagonal, where g is neutral).
    """
    n = grading.n
    if not (0 <= v.row < n and 0 <= v.col < n):
        raise VariableError(f"{v.render()} is outside a {n}x{n} grading")
    g = canonical_element(v.row, v.col, grading)
    ginv = grading.group.inv(g)
    new_row = grading.hat(ginv)(v.row)
    if new_row is None:
        raise VariableError(
            f"{v.render()} has no starred companion: row {v.row} is not in the "
            f"image of the pattern for {grading.group.name_of(g)}"
        )
    return EntryVar(v.slot, new_row, v.row)


def generic_matrix(slot: int, g: int, grading: Grading, field=RATIONALS) -> SparseMatrix:
    """The generic matrix A(slot, g): fresh variables along the pattern of g."""
    one = field.one
    entries = {}
    for i in sorted(grading.d_set(g)):
        j = grading.hat(g)(i)
        entries[(i, j)] = CPolynomial.from_var(EntryVar(slot, i, j), one)
    return SparseMatrix(grading.n, entries)


def generic_matrix_star(slot: int, g: int, grading: Grading, field=RATIONALS) -> SparseMatrix:
    """The starred generic matrix: same variables transposed into g^{-1}'s pattern."""
    one = field.one
    ginv = grading.group.inv(g)
    entries = {}
    for i in sorted(grading.d_set(ginv)):
        j = grading.hat(ginv)(i)
        # row i carries the variable of the plain matrix at (j, i)
        entries[(i, j)] = CPolynomial.from_var(EntryVar(slot, j, i), one)
    return SparseMatrix(grading.n, entries)


def generic_matrix_signed(
    slot: int, letter: SignedElement, grading: Grading, field=RATIONALS
) -> SparseMatrix:
    if letter.star:
        return generic_matrix_star(slot, letter.element, grading, field)
    return generic_matrix(slot, letter.element, grading, field)


@dataclass(frozen=True)
class RowTrace:
    """The index bookkeeping of one surviving row of a generic product.

    ``s`` has length m+1: s[0] is the starting row and s[p+1] is the row
    reached after the letter at position p (signed hat map applied).  ``t``
    has length m: t[p] is the plain hat image of s[p] under the position-p
    element, which is the column of the position's variable for plain
    letters; for starred letters it can be undefined (None) even though the
    product survives, and the position's variable is y[slot, s[p+1], s[p]].
    """

    start: int
    s: tuple[int, ...]
    t: tuple[Optional[int], ...]


def row_trace(start: int, word: Sequence[SignedElement], grading: Grading) -> RowTrace:
    """Walk one starting row through a signed word; error if the walk dies."""
    s = [start]
    t: list[Optional[int]] = []
    for letter in word:
        cur = s[-1]
        nxt = grading.hat_signed(letter)(cur)
        if nxt is None:
            raise TraceDomainError(
                f"row {start} leaves the domain at position {len(t)} "
                f"({letter.render(grading.group)})"
            )
        t.append(grading.hat(letter.element)(cur))
        s.append(nxt)
    return RowTrace(start, tuple(s), tuple(t))


def slot_variable(slot: int, position: int, trace: RowTrace, starred: bool) -> EntryVar:
    """The variable the given position contributes along a surviving row."""
    a, b = trace.s[position], trace.s[position + 1]
    return EntryVar(slot, b, a) if starred else EntryVar(slot, a, b)


def closed_form_product(
    word: Sequence[tuple[int, SignedElement]], grading: Grading, field=RATIONALS
) -> SparseMatrix:
    """Product of generic matrices computed without matrix multiplication.

    ``word`` is a sequence of (slot, letter) pairs, one per factor.  The
    result has one entry per starting row surviving the composed partial
    injection; that entry sits at (start, final row) and is the monomial
    collecting one entry variable from each factor.
    """
    n = grading.n
    one = field.one
    if not word:
        return SparseMatrix.identity(n, one)
    comp = grading.compose_signed([letter for _, letter in word])
    entries = {}
    for start in comp.domain():
        trace = row_trace(start, [letter for _, letter in word], grading)
        variables = [
            slot_variable(slot, p, trace, letter.star)
            for p, (slot, letter) in enumerate(word)
        ]
        entries[(start, trace.s[-1])] = CPolynomial({CMonomial(variables): one})
    return SparseMatrix(n, entries)
