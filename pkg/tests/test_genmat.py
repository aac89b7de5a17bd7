import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gstar import (
    CMonomial,
    CPolynomial,
    EntryVar,
    SignedElement,
    SparseMatrix,
    TraceDomainError,
    VariableError,
    closed_form_product,
    generic_matrix,
    generic_matrix_signed,
    generic_matrix_star,
    row_trace,
    star_omega,
)
from gstar.errors import ShapeError
from gstar.rings import RATIONALS, PrimeField
from gstar.sampling import random_grading, random_slotted_word


def var_poly(slot, row, col, one=None):
    return CPolynomial.from_var(EntryVar(slot, row, col), one or RATIONALS.one)


# ---------------------------------------------------------------------------
# ring and matrix plumbing


def test_cpolynomial_ring_laws():
    one = RATIONALS.one
    p = var_poly(1, 0, 1) + var_poly(2, 1, 0).scale(one * 2)
    q = var_poly(1, 0, 1) - var_poly(3, 0, 0)
    assert p + q == q + p
    assert (p + q) - q == p
    assert p * q == q * p
    assert not (p - p)
    assert (p * q).scale(-one) == p * (-q)


def test_matrix_identity_and_transpose_laws():
    rng = random.Random(5)
    n = 3
    one = RATIONALS.one
    ident = SparseMatrix.identity(n, one)

    def rand_matrix(slot):
        entries = {}
        for _ in range(4):
            r, c = rng.randrange(n), rng.randrange(n)
            entries[(r, c)] = var_poly(slot, r, c)
        return SparseMatrix(n, entries)

    for k in range(5):
        a, b = rand_matrix(2 * k + 1), rand_matrix(2 * k + 2)
        assert a @ ident == a
        assert ident @ a == a
        assert a.transpose().transpose() == a
        assert (a @ b).transpose() == b.transpose() @ a.transpose()
        assert (a + b).transpose() == a.transpose() + b.transpose()


def test_matrix_shape_mismatch():
    with pytest.raises(ShapeError):
        SparseMatrix.zero(2) @ SparseMatrix.zero(3)


def test_cmonomial_render_groups_powers():
    m = CMonomial([EntryVar(1, 0, 1), EntryVar(1, 0, 1), EntryVar(2, 1, 0)])
    assert m.render() == "y[1,0,1]^2*y[2,1,0]"


# ---------------------------------------------------------------------------
# generic matrices


def test_generic_matrix_z2(gr_z2, z2):
    a = z2.index_of("a")
    m = generic_matrix(1, a, gr_z2)
    assert m.nonzero_items() == [
        ((0, 1), var_poly(1, 0, 1)),
        ((1, 0), var_poly(1, 1, 0)),
    ]


def test_generic_matrix_neutral_is_diagonal(gradings):
    for grading in gradings.values():
        m = generic_matrix(1, grading.group.identity, grading)
        assert set(m.entries) == {(i, i) for i in range(grading.n)}


def test_generic_matrix_off_support_is_zero(gr_z6, z6):
    assert generic_matrix(1, z6.index_of("a3"), gr_z6).is_zero


def test_star_matrix_z2(gr_z2, z2):
    a = z2.index_of("a")
    m = generic_matrix_star(1, a, gr_z2)
    assert m.nonzero_items() == [
        ((0, 1), var_poly(1, 1, 0)),
        ((1, 0), var_poly(1, 0, 1)),
    ]


def test_star_matrix_is_transpose_everywhere():
    rng = random.Random(11)
    for _ in range(25):
        grading = random_grading(rng)
        for g in grading.support_sorted():
            assert generic_matrix_star(3, g, grading) == generic_matrix(3, g, grading).transpose()


def test_star_matrix_neutral_fixed(gradings):
    for grading in gradings.values():
        e = grading.group.identity
        assert generic_matrix_star(2, e, grading) == generic_matrix(2, e, grading)


def test_entry_count_matches_pattern_size(gradings):
    for grading in gradings.values():
        for g in grading.support_sorted():
            m = generic_matrix(1, g, grading)
            assert len(m.entries) == len(grading.d_set(g))
            for pos, p in m.entries.items():
                ((mono, coeff),) = p.terms_sorted()
                assert coeff == 1 and mono.degree == 1


def test_each_variable_belongs_to_one_element(gradings):
    # a given (row, col) pair occurs in the pattern of exactly one element
    for grading in gradings.values():
        seen = {}
        for g in grading.support_sorted():
            for i in sorted(grading.d_set(g)):
                pos = (i, grading.hat(g)(i))
                assert pos not in seen, f"{pos} hosted by two elements"
                seen[pos] = g
        assert len(seen) == sum(len(grading.d_set(g)) for g in grading.support)


# ---------------------------------------------------------------------------
# the star map on entry variables


def test_star_omega_swap_in_z2(gr_z2):
    assert star_omega(EntryVar(1, 0, 1), gr_z2) == EntryVar(1, 1, 0)


def test_star_omega_fixes_diagonal(gradings):
    for grading in gradings.values():
        for i in range(grading.n):
            v = EntryVar(4, i, i)
            assert star_omega(v, grading) == v


def test_star_omega_matches_starred_matrix_rows(gradings):
    # star of the row-k entry of the plain matrix is the row-k entry of the
    # starred matrix, whenever the starred matrix has that row
    for grading in gradings.values():
        for g in grading.support_sorted():
            plain = generic_matrix(1, g, grading)
            starred = generic_matrix_star(1, g, grading)
            star_rows = {r: p for (r, _c), p in starred.entries.items()}
            for (r, _c), p in plain.entries.items():
                ((mono, _),) = p.terms_sorted()
                if r in star_rows:
                    image = star_omega(mono.vars[0], grading)
                    ((expected, _),) = star_rows[r].terms_sorted()
                    assert image == expected.vars[0]


def test_star_omega_involutive_on_involution_components():
    rng = random.Random(3)
    checked = 0
    while checked < 100:
        grading = random_grading(rng)
        group = grading.group
        r = rng.randrange(grading.n)
        c = rng.randrange(grading.n)
        g = grading.degree_of_unit(r, c)
        if group.inv(g) != g:
            continue
        v = EntryVar(rng.randint(1, 5), r, c)
        assert star_omega(star_omega(v, grading), grading) == v
        checked += 1


def test_star_omega_partial_case(gr_z6):
    # row 0 never meets the starred pattern of a2 in the (e, a, a2) grading
    with pytest.raises(VariableError):
        star_omega(EntryVar(1, 0, 2), gr_z6)
    with pytest.raises(VariableError):
        star_omega(EntryVar(1, 0, 5), gr_z6)


# ---------------------------------------------------------------------------
# row traces and the closed-form product


def test_row_trace_z2(gr_z2, z2):
    a = SignedElement(z2.index_of("a"), False)
    tr = row_trace(0, [a, a], gr_z2)
    assert tr.s == (0, 1, 0)
    assert tr.t == (1, 0)


def test_row_trace_neutral(gr_z6, z6):
    e = SignedElement(z6.identity, False)
    for k in range(3):
        tr = row_trace(k, [e], gr_z6)
        assert tr.s == (k, k)
        assert tr.t == (k,)


def test_row_trace_plain_then_star(gr_z6, z6):
    a = z6.index_of("a")
    word = [SignedElement(a, False), SignedElement(a, True)]
    tr = row_trace(0, word, gr_z6)
    assert tr.s == (0, 1, 0)
    # the second entry follows the plain hat map of the position's element
    assert tr.t == (1, 2)


def test_row_trace_star_slot_can_lack_plain_image(gr_z6, z6):
    word = [SignedElement(z6.index_of("a"), True)]
    tr = row_trace(2, word, gr_z6)
    assert tr.s == (2, 1)
    assert tr.t == (None,)


def test_row_trace_outside_domain(gr_z6, z6):
    a = SignedElement(z6.index_of("a"), False)
    with pytest.raises(TraceDomainError):
        row_trace(2, [a], gr_z6)


def test_closed_form_z2(gr_z2, z2):
    a = SignedElement(z2.index_of("a"), False)
    m = closed_form_product([(1, a), (2, a)], gr_z2)
    expected = SparseMatrix(
        2,
        {
            (0, 0): CPolynomial(
                {CMonomial([EntryVar(1, 0, 1), EntryVar(2, 1, 0)]): RATIONALS.one}
            ),
            (1, 1): CPolynomial(
                {CMonomial([EntryVar(1, 1, 0), EntryVar(2, 0, 1)]): RATIONALS.one}
            ),
        },
    )
    assert m == expected


def test_closed_form_dead_word_is_zero(gr_z6, z6):
    a = SignedElement(z6.index_of("a"), False)
    assert closed_form_product([(1, a), (2, a), (3, a)], gr_z6).is_zero


def test_closed_form_single_letter(gr_z6, z6):
    e = SignedElement(z6.identity, False)
    assert closed_form_product([(1, e)], gr_z6) == generic_matrix(1, z6.identity, gr_z6)


def oracle_product(word, grading, field=RATIONALS):
    acc = None
    for slot, se in word:
        m = generic_matrix_signed(slot, se, grading, field)
        acc = m if acc is None else acc @ m
    return acc


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=0, max_value=100_000))
def test_closed_form_matches_matmul(seed):
    rng = random.Random(seed)
    grading = random_grading(rng)
    word = random_slotted_word(rng, grading, rng.randint(1, 8), repeat_slots=rng.random() < 0.3)
    closed = closed_form_product(word, grading)
    assert closed == oracle_product(word, grading)
    rows = [r for r, _ in closed.entries]
    assert len(rows) == len(set(rows))


def test_closed_form_matches_matmul_modp():
    rng = random.Random(20240817)
    field = PrimeField(5)
    for _ in range(40):
        grading = random_grading(rng)
        word = random_slotted_word(rng, grading, rng.randint(1, 6))
        assert closed_form_product(word, grading, field) == oracle_product(word, grading, field)


def test_product_entries_are_homogeneous():
    rng = random.Random(99)
    for _ in range(50):
        grading = random_grading(rng)
        group = grading.group
        word = random_slotted_word(rng, grading, rng.randint(1, 6))
        deg = group.identity
        for _slot, se in word:
            d = group.inv(se.element) if se.star else se.element
            deg = group.mul(deg, d)
        product = closed_form_product(word, grading)
        for (r, c), _p in product.entries.items():
            assert grading.degree_of_unit(r, c) == deg
