"""Cross-checking suites: every module's invariants run against one grading.

These are the checks behind the ``selftest`` CLI subcommand.  They are
deterministic given a seed, and they are also reused by the pytest suite,
where the heavier exhaustive variants back the acceptance criteria.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .freealg import (
    GPolynomial,
    evaluate,
    evaluate_monomial,
    star_polynomial,
)
from .genmat import closed_form_product, generic_matrix_signed
from .gradings import Grading, SignedElement, compose_targets
from .identities import (
    basis_reduce,
    congruent_mod_neutral,
    derivation_mod_neutral,
    is_identity,
    is_monomial_identity,
    unit_product,
    verify_basis,
    witness_for_word,
    word_monomial,
)
from .rings import RATIONALS
from .sampling import (
    congruent_partner,
    random_monomial,
    random_multihomogeneous_poly,
    random_slotted_word,
)


@dataclass
class SuiteResult:
    name: str
    passed: bool
    detail: str

    def to_json(self) -> dict:
        return {"suite": self.name, "pass": self.passed, "detail": self.detail}


@dataclass
class ScanReport:
    """Outcome of an exhaustive walk over all signed support words."""

    words: int
    identities: int
    crosschecks: int
    failures: list

    @property
    def passed(self) -> bool:
        return not self.failures


def exhaustive_word_scan(
    grading: Grading,
    max_degree: int,
    field=RATIONALS,
    crosscheck_stride: int = 0,
    witness_check: bool = True,
) -> ScanReport:
    """Three-way agreement over every signed support word up to a degree.

    For each word the scan maintains, along the search tree, (a) the
    composed partial injection, (b) a row-by-row evaluation walk through the
    generic matrix patterns, and (c) a matrix-unit fold per starting row.
    It asserts that the three agree: the word evaluates to zero exactly when
    the composition dies, and otherwise every surviving start row folds to
    the predicted matrix unit.  Every ``crosscheck_stride``-th word is also
    evaluated through the sparse-matrix product and the closed form, which
    exercises the full coefficient path of the given field.
    """
    alphabet = [
        (se, grading.hat_signed(se).targets) for se in grading.signed_alphabet()
    ]
    n = grading.n
    failures: list[str] = []
    counter = {"words": 0, "identities": 0, "crosschecks": 0}

    def crosscheck(word: tuple[SignedElement, ...]) -> None:
        counter["crosschecks"] += 1
        slotted = [(p + 1, se) for p, se in enumerate(word)]
        closed = closed_form_product(slotted, grading, field)
        direct = None
        for slot, se in slotted:
            m = generic_matrix_signed(slot, se, grading, field)
            direct = m if direct is None else direct @ m
        if closed != direct:
            failures.append(f"closed form mismatch on {word}")
            return
        mono = word_monomial(word)
        if evaluate_monomial(mono, grading, field) != direct:
            failures.append(f"evaluation mismatch on {word}")
        if witness_check and not direct.is_zero:
            w = witness_for_word(word, grading)
            folded = unit_product(
                [(u[1], u[0]) if se.star else u for u, se in zip(w.units, word)]
            )
            if folded != w.result:
                failures.append(f"witness fold mismatch on {word}")

    def visit(word, comp, alive, fold) -> None:
        counter["words"] += 1
        comp_alive = {i for i, x in enumerate(comp) if x is not None}
        walk_alive = {s for s, _ in alive}
        fold_alive = {s for s, _, _ in fold}
        if not (comp_alive == walk_alive == fold_alive):
            failures.append(f"route disagreement on {word}")
            return
        if not comp_alive:
            counter["identities"] += 1
        else:
            for s, r in alive:
                if comp[s] != r:
                    failures.append(f"composition vs walk mismatch on {word}")
            for s, a, b in fold:
                if a != s or comp[s] != b:
                    failures.append(f"unit fold mismatch on {word}")
        if crosscheck_stride and counter["words"] % crosscheck_stride == 0:
            crosscheck(word)

    def rec(word, comp, alive, fold, depth) -> None:
        if depth == max_degree:
            return
        for se, step in alphabet:
            new_comp = compose_targets(comp, step)
            new_alive = tuple(
                (s, step[r]) for s, r in alive if step[r] is not None
            )
            new_fold = []
            for s, a, b in fold:
                nxt = step[b]
                if nxt is None:
                    continue
                # the position's assigned unit is e(b,nxt), transposed from
                # e(nxt,b) when starred; its contribution always chains at b
                prod = unit_product([(a, b), (b, nxt)])
                if prod is None:
                    failures.append(f"unit fold died unexpectedly after {word + (se,)}")
                    continue
                new_fold.append((s, prod[0], prod[1]))
            new_word = word + (se,)
            visit(new_word, new_comp, new_alive, tuple(new_fold))
            rec(new_word, new_comp, new_alive, tuple(new_fold), depth + 1)

    # degree-one seeds: the fold starts as the first unit itself
    for se, step in alphabet:
        alive = tuple((s, step[s]) for s in range(n) if step[s] is not None)
        fold = []
        for s in range(n):
            nxt = step[s]
            if nxt is None:
                continue
            fold.append((s, s, nxt))
        visit((se,), step, alive, tuple(fold))
        rec((se,), step, alive, tuple(fold), 1)
    return ScanReport(
        counter["words"], counter["identities"], counter["crosschecks"], failures
    )


def _suite_group_axioms(grading: Grading, rng: random.Random) -> SuiteResult:
    g = grading.group
    n = g.order
    ok = True
    detail = []
    triples = (
        [(a, b, c) for a in range(n) for b in range(n) for c in range(n)]
        if n <= 12
        else [tuple(rng.randrange(n) for _ in range(3)) for _ in range(2000)]
    )
    for a, b, c in triples:
        if g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)):
            ok = False
            detail.append(f"associativity fails at ({a},{b},{c})")
            break
    for a in range(n):
        if g.mul(a, g.inv(a)) != g.identity or g.mul(g.identity, a) != a:
            ok = False
            detail.append(f"identity/inverse law fails at {a}")
            break
    return SuiteResult("group-axioms", ok, "; ".join(detail) or f"{len(triples)} triples")


def _suite_hat_maps(grading: Grading, rng: random.Random) -> SuiteResult:
    g = grading.group
    problems = []
    for x in grading.support_sorted():
        h = grading.hat(x)
        if set(h.domain()) != grading.d_set(x) or set(h.image()) != grading.im_set(x):
            problems.append(f"domain/image mismatch for {g.name_of(x)}")
        if grading.hat(g.inv(x)) != h.inverse():
            problems.append(f"inverse law fails for {g.name_of(x)}")
        if len(h.domain()) != len(h.image()):
            problems.append(f"injectivity fails for {g.name_of(x)}")
    support = grading.support_sorted()
    for x in support:
        for y in support:
            hx, hy = grading.hat(x), grading.hat(y)
            if x != y:
                for i in range(grading.n):
                    if hx(i) is not None and hx(i) == hy(i):
                        problems.append(
                            f"collision: hat({g.name_of(x)}) and hat({g.name_of(y)}) agree at {i}"
                        )
            composed = hx.then(hy)
            target = grading.hat(g.mul(x, y))
            for i in composed.domain():
                if target(i) != composed(i):
                    problems.append(
                        f"composition law fails for ({g.name_of(x)},{g.name_of(y)}) at {i}"
                    )
    off = [x for x in grading.off_support() if not grading.hat(x).is_empty]
    if off:
        problems.append(f"nonempty hat off support: {off}")
    return SuiteResult(
        "hat-maps", not problems, "; ".join(problems) or f"{len(support)} support elements"
    )


def _suite_product_oracle(
    grading: Grading, rng: random.Random, field, words: int
) -> SuiteResult:
    problems = []
    for k in range(words):
        length = rng.randint(1, 8)
        slotted = random_slotted_word(rng, grading, length, repeat_slots=(k % 7 == 0))
        closed = closed_form_product(slotted, grading, field)
        direct = None
        for slot, se in slotted:
            m = generic_matrix_signed(slot, se, grading, field)
            direct = m if direct is None else direct @ m
        if closed != direct:
            problems.append(f"closed form mismatch on word {k}")
            continue
        rows = [r for (r, _c) in direct.entries]
        if len(rows) != len(set(rows)):
            problems.append(f"row uniqueness fails on word {k}")
        deg = None
        for se in (se for _s, se in slotted):
            d = grading.group.inv(se.element) if se.star else se.element
            deg = d if deg is None else grading.group.mul(deg, d)
        for (r, c), poly in direct.entries.items():
            terms = poly.terms_sorted()
            if len(terms) != 1 or terms[0][1] != field.one:
                problems.append(f"entry not a monic monomial on word {k}")
            if grading.degree_of_unit(r, c) != deg:
                problems.append(f"homogeneity fails on word {k} at ({r},{c})")
    return SuiteResult(
        "product-oracle", not problems, "; ".join(problems[:3]) or f"{words} random words"
    )


def _suite_monomial_threeway(grading: Grading, field) -> SuiteResult:
    depth = 4 if len(grading.support) <= 4 else 3
    stride = 17
    report = exhaustive_word_scan(grading, depth, field, crosscheck_stride=stride)
    detail = (
        f"{report.words} words, {report.identities} identities, "
        f"{report.crosschecks} crosschecked"
    )
    return SuiteResult(
        "monomial-threeway", report.passed, "; ".join(report.failures[:3]) or detail
    )


def _suite_congruence(grading: Grading, rng: random.Random, field, pairs: int) -> SuiteResult:
    problems = []
    done = 0
    attempts = 0
    while done < pairs and attempts < pairs * 20:
        attempts += 1
        mono = random_monomial(rng, grading, rng.randint(1, 4))
        if is_monomial_identity(mono, grading).is_identity:
            continue
        partner = congruent_partner(rng, mono, grading)
        if partner is None:
            continue
        done += 1
        if not congruent_mod_neutral(mono, partner, grading, field):
            problems.append(f"engineered congruent pair rejected: {mono!r}")
            continue
        if len(mono) <= 3:
            chain = derivation_mod_neutral(mono, partner, grading)
            if chain is None:
                problems.append(f"no derivation found for a short pair: {mono!r}")
            else:
                ref = evaluate_monomial(partner, grading, field)
                for step in chain:
                    if evaluate_monomial(step.result, grading, field) != ref:
                        problems.append(f"derivation step changes evaluation: {step!r}")
                        break
                if chain and chain[-1].result != mono:
                    problems.append("derivation does not land on the target")
    return SuiteResult(
        "congruence", not problems, "; ".join(problems[:3]) or f"{done} engineered pairs"
    )


def _suite_star_involution(grading: Grading, rng: random.Random, field, polys: int) -> SuiteResult:
    problems = []
    for _ in range(polys):
        terms = {}
        for _ in range(rng.randint(1, 4)):
            m = random_monomial(rng, grading, rng.randint(1, 4))
            terms[m] = field.one if rng.random() < 0.5 else -field.one
        f = GPolynomial(terms)
        if star_polynomial(star_polynomial(f)) != f:
            problems.append("star applied twice is not the identity")
            break
        if evaluate(star_polynomial(f), grading, field) != evaluate(f, grading, field).transpose():
            problems.append("star does not match transposition under evaluation")
            break
    return SuiteResult(
        "star-involution", not problems, "; ".join(problems) or f"{polys} random polynomials"
    )


def _suite_basis_identities(grading: Grading, field) -> SuiteResult:
    report = verify_basis(grading, field, samples=2, seed=7)
    failing = [k for k in ("neutral-commutator", "neutral-star", "off-support", "sandwich")
               if not report[k]["pass"]]
    return SuiteResult(
        "basis-identities", report["pass"], "; ".join(failing) or "all four families hold"
    )


def _suite_basis_reduce(grading: Grading, rng: random.Random, field, polys: int) -> SuiteResult:
    problems = []
    produced = 0
    while produced < polys:
        f = random_multihomogeneous_poly(rng, grading, field)
        if f is None:
            continue
        produced += 1
        red = basis_reduce(f, grading, field)
        direct = is_identity(f, grading, field).is_identity
        if red.is_identity != direct:
            problems.append("reduction verdict disagrees with evaluation")
            break
        if red.is_identity:
            if any(c.total for c in red.classes):
                problems.append("identity with a nonzero class sum")
                break
    return SuiteResult(
        "basis-reduce", not problems, "; ".join(problems) or f"{produced} random polynomials"
    )


@dataclass
class SelftestReport:
    grading: str
    seed: int
    results: list

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def to_json(self) -> dict:
        return {
            "grading": self.grading,
            "seed": self.seed,
            "pass": self.passed,
            "suites": [r.to_json() for r in self.results],
        }


def run_selftest(
    grading: Grading,
    field=RATIONALS,
    seed: int = 1,
    words: int = 120,
    pairs: int = 40,
    polys: int = 40,
) -> SelftestReport:
    """Run every suite against one grading; deterministic given the seed."""
    rng = random.Random(seed)
    results = [
        _suite_group_axioms(grading, rng),
        _suite_hat_maps(grading, rng),
        _suite_product_oracle(grading, rng, field, words),
        _suite_monomial_threeway(grading, field),
        _suite_congruence(grading, rng, field, pairs),
        _suite_star_involution(grading, rng, field, polys // 2 or 1),
        _suite_basis_identities(grading, field),
        _suite_basis_reduce(grading, rng, field, polys),
    ]
    return SelftestReport(repr(grading), seed, results)
