"""Decision procedures for graded identities with involution.

A word in signed letters is an identity exactly when the composition of its
hat maps has empty domain; a witness otherwise is a matrix-unit assignment
multiplying out to a single matrix unit.  Two non-identity words are
congruent modulo the neutral ideal (the two-sided closure of the neutral
commutator and the neutral star relation under grading- and star-preserving
substitutions) exactly when their generic evaluations share a nonzero entry
at a shared position, which forces the full evaluations to agree.  Reducing
a strongly multi-homogeneous polynomial therefore means: split off the
monomial identities (each with a short contiguous identity subword as its
certificate, when one exists) and partition the rest by generic evaluation;
the polynomial is an identity precisely when every class sums to zero.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import InternalCheckError, PreconditionError, ResourceCapError
from .freealg import (
    GMonomial,
    GPolynomial,
    GVar,
    evaluate,
    evaluate_monomial,
    subword,
    variable,
)
from .genmat import row_trace
from .gradings import Grading, SignedElement, compose_targets
from .groups import Group
from .rings import RATIONALS

Word = tuple[SignedElement, ...]

ENUM_DEGREE_CAP = 12
ENUM_NODE_BUDGET = 5_000_000
STATE_BUDGET = 500_000


# ---------------------------------------------------------------------------
# words and witnesses


def word_is_identity(word: Sequence[SignedElement], grading: Grading) -> bool:
    """Identity test on the signed word alone; variable indices are irrelevant."""
    if not word:
        raise PreconditionError("the empty word is not a monomial")
    return grading.compose_signed(word).is_empty


def word_monomial(word: Sequence[SignedElement], first_index: int = 1) -> GMonomial:
    """The index-free representative: fresh variable indices along the word."""
    return GMonomial(
        [GVar(first_index + p, se.element, se.star) for p, se in enumerate(word)]
    )


def word_to_strings(word: Sequence[SignedElement], group: Group) -> list[str]:
    return [se.render(group) for se in word]


@dataclass(frozen=True)
class MonomialWitness:
    """A unit substitution showing a monomial is not an identity.

    ``units[p]`` is the (row, col) matrix unit assigned to the variable at
    position p; starred positions contribute its transpose to the product,
    which telescopes to the single unit ``result``.
    """

    start: int
    units: tuple[tuple[int, int], ...]
    result: tuple[int, int]

    def to_json(self) -> dict:
        return {
            "start": self.start,
            "units": [list(u) for u in self.units],
            "result": list(self.result),
        }


def unit_product(units: Sequence[tuple[int, int]]) -> Optional[tuple[int, int]]:
    """Multiply matrix units e_{ab}; None when a middle index mismatches."""
    if not units:
        raise PreconditionError("empty unit product")
    a, b = units[0]
    for c, d in units[1:]:
        if b != c:
            return None
        b = d
    return (a, b)


def witness_for_word(word: Sequence[SignedElement], grading: Grading) -> Optional[MonomialWitness]:
    comp = grading.compose_signed(word)
    if comp.is_empty:
        return None
    start = min(comp.domain())
    trace = row_trace(start, word, grading)
    units = []
    for p, se in enumerate(word):
        a, b = trace.s[p], trace.s[p + 1]
        units.append((b, a) if se.star else (a, b))
    result = unit_product(
        [(u[1], u[0]) if se.star else u for u, se in zip(units, word)]
    )
    if result != (start, trace.s[-1]):
        raise InternalCheckError(f"witness product {result} does not telescope")
    return MonomialWitness(start, tuple(units), result)


@dataclass(frozen=True)
class IdentityVerdict:
    """Outcome of an identity test; a verdict of True carries no witness."""

    is_identity: bool
    witness: Optional[MonomialWitness] = None
    offending: tuple = ()

    def to_json(self, group: Optional[Group] = None) -> dict:
        out: dict = {"verdict": "identity" if self.is_identity else "not-identity"}
        out["witness"] = self.witness.to_json() if self.witness else None
        if self.offending:
            out["offending"] = [
                {"row": r, "col": c, "entry": p.render()} for (r, c), p in self.offending
            ]
        return out


def is_monomial_identity(mono: GMonomial, grading: Grading) -> IdentityVerdict:
    """Monomial identity test via the composed partial injection."""
    word = mono.signed_word()
    if word_is_identity(word, grading):
        return IdentityVerdict(True)
    return IdentityVerdict(False, witness=witness_for_word(word, grading))


def is_identity(f: GPolynomial, grading: Grading, field=RATIONALS) -> IdentityVerdict:
    """Polynomial identity test: exact comparison of the generic evaluation to zero."""
    m = evaluate(f, grading, field)
    if m.is_zero:
        return IdentityVerdict(True)
    return IdentityVerdict(False, offending=tuple(m.nonzero_items()))


# ---------------------------------------------------------------------------
# congruence modulo the neutral ideal


def congruent_mod_neutral(
    m1: GMonomial, m2: GMonomial, grading: Grading, field=RATIONALS
) -> bool:
    """Decide congruence of two non-identity monomials modulo the neutral ideal.

    Sharing one nonzero entry at one position already forces the full
    generic evaluations to coincide; both formulations are computed and
    cross-checked here.
    """
    if is_monomial_identity(m1, grading).is_identity or is_monomial_identity(
        m2, grading
    ).is_identity:
        raise PreconditionError("congruence is only defined for non-identity monomials")
    e1 = evaluate_monomial(m1, grading, field)
    e2 = evaluate_monomial(m2, grading, field)
    shared = any(e2.entries.get(pos) == p for pos, p in e1.entries.items())
    if shared != (e1 == e2):
        raise InternalCheckError("shared entry without full evaluation equality")
    return shared


@dataclass(frozen=True)
class DerivationStep:
    """One elementary rewrite: kind 'swap' exchanges the adjacent neutral
    factors [i,j) and [j,k); kind 'star' replaces the neutral factor [i,j)
    by its involution image."""

    kind: str
    i: int
    j: int
    k: Optional[int]
    result: GMonomial

    def to_json(self, group: Group) -> dict:
        out = {"kind": self.kind, "i": self.i, "j": self.j, "result": self.result.render(group)}
        if self.k is not None:
            out["k"] = self.k
        return out


def _prefix_degrees(mono: GMonomial, group: Group) -> list[int]:
    pref = [group.identity]
    for v in mono:
        d = group.inv(v.element) if v.star else v.element
        pref.append(group.mul(pref[-1], d))
    return pref


def _neighbors(mono: GMonomial, group: Group):
    """All single-step rewrites by the neutral-ideal generators."""
    letters = mono.letters
    length = len(letters)
    pref = _prefix_degrees(mono, group)
    e = group.identity

    def factor_deg(i: int, j: int) -> int:
        return group.mul(group.inv(pref[i]), pref[j])

    for i in range(length):
        for j in range(i + 1, length + 1):
            if factor_deg(i, j) != e:
                continue
            starred = subword(mono, i, j).star()
            yield DerivationStep(
                "star", i, j, None, GMonomial(letters[:i] + starred.letters + letters[j:])
            )
            for k in range(j + 1, length + 1):
                if factor_deg(j, k) == e:
                    yield DerivationStep(
                        "swap",
                        i,
                        j,
                        k,
                        GMonomial(letters[:i] + letters[j:k] + letters[i:j] + letters[k:]),
                    )


def derivation_mod_neutral(
    m1: GMonomial,
    m2: GMonomial,
    grading: Grading,
    depth_cap: Optional[int] = None,
) -> Optional[list[DerivationStep]]:
    """Search for an explicit rewrite chain from m2 to m1.

    Every step instantiates one neutral-ideal generator, so each step
    preserves the generic evaluation.  Returns None when no chain is found
    within the cap; that outcome is inconclusive, never a proof of
    non-congruence.
    """
    if not congruent_mod_neutral(m1, m2, grading):
        raise PreconditionError("derivation requires congruent monomials")
    if depth_cap is None:
        depth_cap = 2 * len(m1) + 8
    if m1 == m2:
        return []
    group = grading.group
    frontier = [m2]
    parents: dict[GMonomial, tuple[GMonomial, DerivationStep]] = {}
    seen = {m2}
    for _ in range(depth_cap):
        nxt = []
        for cur in frontier:
            for step in _neighbors(cur, group):
                res = step.result
                if res in seen:
                    continue
                seen.add(res)
                parents[res] = (cur, step)
                if res == m1:
                    chain = []
                    node = m1
                    while node != m2:
                        node, st = parents[node]
                        chain.append(st)
                    chain.reverse()
                    return chain
                nxt.append(res)
        if not nxt:
            return None
        frontier = nxt
    return None


# ---------------------------------------------------------------------------
# the identity basis and reduction against it


def neutral_commutator(group: Group, i: int = 1, j: int = 2, field=RATIONALS) -> GPolynomial:
    """x_i:e x_j:e - x_j:e x_i:e, the commutator of two neutral variables."""
    e = group.identity
    one = field.one
    return variable(i, e, one=one) * variable(j, e, one=one) - variable(
        j, e, one=one
    ) * variable(i, e, one=one)


def neutral_star_difference(group: Group, i: int = 1, field=RATIONALS) -> GPolynomial:
    """x_i:e - x_i:e*, symmetry of the neutral component."""
    e = group.identity
    return variable(i, e, one=field.one) - variable(i, e, star=True, one=field.one)


def off_support_variable(g: int, i: int = 1, field=RATIONALS) -> GPolynomial:
    return variable(i, g, one=field.one)


def sandwich_commutator(
    group: Group, g: int, i: int = 1, j: int = 2, k: int = 3, field=RATIONALS
) -> GPolynomial:
    """x_i:g x_j:g' x_k:g - x_k:g x_j:g' x_i:g with g' the inverse of g."""
    one = field.one
    ginv = group.inv(g)
    return variable(i, g, one=one) * variable(j, ginv, one=one) * variable(
        k, g, one=one
    ) - variable(k, g, one=one) * variable(j, ginv, one=one) * variable(i, g, one=one)


def verify_basis(grading: Grading, field=RATIONALS, samples: int = 0, seed: int = 0) -> dict:
    """Check the four basis families by generic evaluation.

    The neutral commutator and the neutral star difference; the off-support
    variables outside the support; the sandwich commutators for every
    non-neutral support element.  ``samples`` adds that many randomized
    variable-index draws per family.
    """
    group = grading.group
    rng = random.Random(seed)

    def draws(k: int) -> list[tuple[int, ...]]:
        out = []
        for _ in range(samples):
            idx = rng.sample(range(1, 10), k)
            out.append(tuple(idx))
        return out

    def check(f: GPolynomial) -> bool:
        return is_identity(f, grading, field).is_identity

    report: dict = {}

    cases = [check(neutral_commutator(group, field=field))]
    cases += [check(neutral_commutator(group, i, j, field=field)) for i, j in draws(2)]
    report["neutral-commutator"] = {"pass": all(cases), "checked": len(cases)}

    cases = [check(neutral_star_difference(group, field=field))]
    cases += [check(neutral_star_difference(group, i, field=field)) for (i,) in draws(1)]
    report["neutral-star"] = {"pass": all(cases), "checked": len(cases)}

    off = []
    for g in grading.off_support():
        ok = check(off_support_variable(g, field=field))
        ok = ok and all(check(off_support_variable(g, i, field=field)) for (i,) in draws(1))
        off.append({"element": group.name_of(g), "pass": ok})
    report["off-support"] = {"pass": all(c["pass"] for c in off), "cases": off}

    sand = []
    for g in grading.support_sorted():
        if g == group.identity:
            continue
        ok = check(sandwich_commutator(group, g, field=field))
        ok = ok and all(
            check(sandwich_commutator(group, g, i, j, k, field=field)) for i, j, k in draws(3)
        )
        sand.append({"element": group.name_of(g), "pass": ok})
    report["sandwich"] = {"pass": all(c["pass"] for c in sand), "cases": sand}

    report["pass"] = all(
        report[k]["pass"] for k in ("neutral-commutator", "neutral-star", "off-support", "sandwich")
    )
    return report


def subword_identity_certificate(
    mono: GMonomial, grading: Grading, max_len: Optional[int] = None
) -> Optional[tuple[int, int]]:
    """Shortest contiguous identity subword, as a half-open range, if any.

    ``max_len`` defaults to 2n-1, the degree bound for the monomial part of
    the identity basis.  A monomial identity without such a subword is a
    notable finding; callers flag it rather than conclude anything.
    """
    if max_len is None:
        max_len = 2 * grading.n - 1
    word = mono.signed_word()
    length = len(word)
    for size in range(1, min(length, max_len) + 1):
        for start in range(0, length - size + 1):
            if grading.compose_signed(word[start : start + size]).is_empty:
                return (start, start + size)
    return None


def block_certificate(
    mono: GMonomial, grading: Grading, max_blocks: Optional[int] = None
) -> Optional[tuple[int, ...]]:
    """Certify a monomial identity as a substitution image of a short one.

    Searches for a contiguous factor of the word, split into at most
    ``max_blocks`` blocks (default 2n-1), whose block-degree word is itself
    an identity; the monomial is then the image of that shorter identity
    under substituting each variable by its block.  This is strictly more
    complete than the contiguous-subword certificate: neutral-degree
    padding inside a word defeats the subword search but not this one.
    Returns the block boundaries (i_0 < i_1 < ... < i_s) or None.
    """
    if max_blocks is None:
        max_blocks = 2 * grading.n - 1
    word = mono.signed_word()
    group = grading.group
    length = len(word)
    degrees = [group.inv(se.element) if se.star else se.element for se in word]
    identity_targets = tuple(range(grading.n))
    empty = (None,) * grading.n
    for start in range(length):
        # state: (position, composition after the blocks closed so far,
        #         blocks closed); an open block accumulates a degree
        frontier = {(start, identity_targets, 0): (start,)}
        while frontier:
            nxt: dict = {}
            for (pos, comp, blocks), bounds in frontier.items():
                if pos == length or blocks == max_blocks:
                    continue
                acc = group.identity
                for end in range(pos + 1, length + 1):
                    acc = group.mul(acc, degrees[end - 1])
                    new_comp = compose_targets(comp, grading.hat(acc).targets)
                    new_bounds = bounds + (end,)
                    if new_comp == empty:
                        return new_bounds
                    key = (end, new_comp, blocks + 1)
                    if key not in nxt and key not in frontier:
                        nxt[key] = new_bounds
            frontier = nxt
    return None


@dataclass(frozen=True)
class IdentityTerm:
    monomial: GMonomial
    coefficient: object
    certificate: Optional[tuple[int, int]]

    def to_json(self, group: Group) -> dict:
        return {
            "monomial": self.monomial.render(group),
            "coefficient": str(self.coefficient),
            "subword": list(self.certificate) if self.certificate else None,
        }


@dataclass(frozen=True)
class CongruenceClass:
    members: tuple[tuple[GMonomial, object], ...]
    total: object

    def to_json(self, group: Group) -> dict:
        return {
            "monomials": [m.render(group) for m, _ in self.members],
            "coefficients": [str(c) for _, c in self.members],
            "sum": str(self.total),
        }


@dataclass(frozen=True)
class BasisReduction:
    """Result of reducing a strongly multi-homogeneous polynomial.

    ``is_identity`` holds exactly when every congruence class sums to zero;
    the classes plus the certified monomial identity terms are the
    membership certificate for the identity basis.
    """

    identity_terms: tuple[IdentityTerm, ...]
    classes: tuple[CongruenceClass, ...]
    is_identity: bool

    @property
    def fully_certified(self) -> bool:
        return all(t.certificate is not None for t in self.identity_terms)

    def to_json(self, group: Group) -> dict:
        return {
            "verdict": "identity" if self.is_identity else "not-identity",
            "identity_terms": [t.to_json(group) for t in self.identity_terms],
            "classes": [c.to_json(group) for c in self.classes],
            "fully_certified": self.fully_certified,
        }


def basis_reduce(f: GPolynomial, grading: Grading, field=RATIONALS) -> BasisReduction:
    """Reduce a strongly multi-homogeneous polynomial against the basis.

    Monomial identity terms are separated and annotated with a contiguous
    identity subword of degree at most 2n-1 when one exists; the remaining
    terms are partitioned by generic evaluation, which classifies them up to
    congruence modulo the neutral ideal.
    """
    terms = f.terms_sorted()
    if not terms:
        return BasisReduction((), (), True)
    degrees = {m.multidegree() for m, _ in terms}
    if len(degrees) > 1:
        raise PreconditionError(
            "basis_reduce needs a strongly multi-homogeneous input; "
            "split with multihomogeneous_components first"
        )
    identity_terms = []
    buckets: dict[tuple, list] = {}
    for mono, coeff in terms:
        if is_monomial_identity(mono, grading).is_identity:
            cert = subword_identity_certificate(mono, grading)
            identity_terms.append(IdentityTerm(mono, coeff, cert))
        else:
            key = evaluate_monomial(mono, grading, field).canonical_key()
            buckets.setdefault(key, []).append((mono, coeff))
    classes = []
    for key in sorted(buckets, key=lambda k: buckets[k][0][0].sort_key()):
        members = buckets[key]
        total = members[0][1]
        for _, c in members[1:]:
            total = total + c
        classes.append(CongruenceClass(tuple(members), total))
    in_ideal = all(not c.total for c in classes)
    return BasisReduction(tuple(identity_terms), tuple(classes), in_ideal)


# ---------------------------------------------------------------------------
# enumeration of monomial identities


def _word_key(word: Word):
    return (len(word), tuple((se.element, se.star) for se in word))


def _empty_state_reachable(grading: Grading, max_degree: int) -> bool:
    """Whether any composition of at most max_degree support letters dies."""
    letters = [grading.hat_signed(se).targets for se in grading.signed_alphabet()]
    if not letters:
        return False
    empty = (None,) * grading.n
    frontier = set(letters)
    seen = set(frontier)
    if empty in frontier:
        return True
    for _ in range(max_degree - 1):
        nxt = set()
        for state in frontier:
            for step in letters:
                new = compose_targets(state, step)
                if new == empty:
                    return True
                if new not in seen:
                    seen.add(new)
                    nxt.add(new)
        if not nxt:
            return False
        frontier = nxt
    return False


def enumerate_monomial_identities(
    grading: Grading,
    max_degree: int,
    minimal_only: bool = False,
    degree_cap: int = ENUM_DEGREE_CAP,
    node_budget: int = ENUM_NODE_BUDGET,
) -> list[Word]:
    """All index-free monomial identities up to the given degree.

    Words run over the signed support alphabet, plus the plain off-support
    variables as degree-one identities.  With ``minimal_only`` a word is
    kept only if no proper contiguous subword is itself an identity; the
    search prunes every branch that already contains one, since no
    extension can be minimal.
    """
    if max_degree < 1:
        raise PreconditionError("max_degree must be at least 1")
    if max_degree > degree_cap:
        raise ResourceCapError(
            f"max_degree {max_degree} exceeds the configured cap {degree_cap}"
        )
    found: list[Word] = [
        (SignedElement(g, False),) for g in grading.off_support()
    ]
    alphabet = [
        (se, grading.hat_signed(se).targets) for se in grading.signed_alphabet()
    ]
    if alphabet and _empty_state_reachable(grading, max_degree):
        empty = (None,) * grading.n
        nodes = 0

        def bump() -> None:
            nonlocal nodes
            nodes += 1
            if nodes > node_budget:
                raise ResourceCapError(f"enumeration exceeded the node budget {node_budget}")

        if minimal_only:

            def rec_min(word: Word, full, suffixes) -> None:
                if len(word) == max_degree:
                    return
                for se, step in alphabet:
                    bump()
                    new_suffixes = [compose_targets(s, step) for s in suffixes]
                    new_suffixes.append(step)
                    if any(s == empty for s in new_suffixes):
                        continue
                    new_full = compose_targets(full, step)
                    new_word = word + (se,)
                    if new_full == empty:
                        found.append(new_word)
                    else:
                        rec_min(new_word, new_full, new_suffixes)

            for se, step in alphabet:
                bump()
                if step == empty:
                    found.append((se,))
                else:
                    rec_min((se,), step, [])
        else:

            def rec_all(word: Word, full) -> None:
                if len(word) == max_degree:
                    return
                for se, step in alphabet:
                    bump()
                    new_full = compose_targets(full, step)
                    new_word = word + (se,)
                    if new_full == empty:
                        found.append(new_word)
                    rec_all(new_word, new_full)

            for se, step in alphabet:
                bump()
                if step == empty:
                    found.append((se,))
                rec_all((se,), step)

    return sorted(found, key=_word_key)


def minimal_identities_up_to(
    grading: Grading, max_degree: int, state_budget: int = STATE_BUDGET
) -> list[Word]:
    """One representative minimal identity word per reachable length and shape.

    Works on the quotient of identity-free words by their composition
    profile (full composition plus the set of proper suffix compositions),
    which collapses the search space enough to probe degrees the word-level
    enumeration cannot reach.  Sound and complete at the level of lengths:
    if any minimal identity of some length exists, one is returned.
    """
    alphabet = [
        (se, grading.hat_signed(se).targets) for se in grading.signed_alphabet()
    ]
    empty = (None,) * grading.n
    found: list[Word] = [(SignedElement(g, False),) for g in grading.off_support()]
    frontier: dict[tuple, Word] = {}
    for se, step in alphabet:
        if step == empty:
            found.append((se,))
        else:
            frontier.setdefault((step, frozenset()), (se,))
    states = len(frontier)
    for _ in range(1, max_degree):
        nxt: dict[tuple, Word] = {}
        for (full, suffixes), word in frontier.items():
            for se, step in alphabet:
                new_suffixes = frozenset(
                    compose_targets(s, step) for s in suffixes
                ) | {step}
                if empty in new_suffixes:
                    continue
                new_full = compose_targets(full, step)
                if new_full == empty:
                    found.append(word + (se,))
                    continue
                key = (new_full, new_suffixes)
                if key not in nxt:
                    nxt[key] = word + (se,)
        states += len(nxt)
        if states > state_budget:
            raise ResourceCapError(f"profile search exceeded the state budget {state_budget}")
        if not nxt:
            break
        frontier = nxt
    return sorted(found, key=_word_key)
