from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from krystal import UsageError, load_datum, parse_weight
from krystal.rootdata import weight_from_json, weight_to_json

AFFINE_TAGS = ["A1~", "A2~", "A3~", "B3~", "C2~", "D4~", "G2~", "F4~",
               "A2^(2)", "A4^(2)", "D3^(2)"]


def kernel_vector(matrix):
    """Minimal positive integer kernel vector, computed with sympy."""
    (vec,) = sympy.Matrix(matrix).nullspace()
    vec = vec / min(x for x in vec if x != 0)
    den = sympy.ilcm(*[sympy.fraction(x)[1] for x in vec])
    vec = [int(x * den) for x in vec]
    g = sympy.igcd(*vec)
    return tuple(abs(x) // g for x in vec)


@pytest.mark.parametrize("tag", AFFINE_TAGS)
def test_marks_and_comarks_span_the_kernels(tag):
    d = load_datum(tag)
    cart = [list(r) for r in d.cartan]
    assert tuple(d.marks) == kernel_vector(cart)
    assert tuple(d.comarks) == kernel_vector(sympy.Matrix(cart).T.tolist())


def test_a1_affine_cartan():
    d = load_datum("A1~")
    assert [list(r) for r in d.cartan] == [[2, -2], [-2, 2]]
    assert tuple(d.marks) == (1, 1) and tuple(d.comarks) == (1, 1)


@pytest.mark.parametrize("n", [1, 2])
def test_a_even_twisted_lengths(n):
    d = load_datum(f"A{2 * n}^(2)")
    assert d.inner(d.alpha(0), d.alpha(0)) == 4
    assert d.inner(d.alpha(n), d.alpha(n)) == 1


def test_a4_twisted_null_root_and_center():
    d = load_datum("A4^(2)")
    assert tuple(d.marks) == (1, 2, 2)
    assert tuple(d.comarks) == (2, 2, 1)


def test_f4_affine_marks():
    d = load_datum("F4~")
    assert tuple(d.marks) == (1, 2, 3, 4, 2)
    assert tuple(d.comarks) == (1, 2, 3, 2, 1)


@pytest.mark.parametrize("tag", AFFINE_TAGS + ["A2", "G2", "B3"])
def test_pairing_with_simple_roots_is_cartan(tag):
    d = load_datum(tag)
    for i in d.index_set:
        for j in d.index_set:
            assert d.pairing(i, d.alpha(j)) == d.a(i, j)


@pytest.mark.parametrize("tag", AFFINE_TAGS)
def test_level_zero_weights(tag):
    d = load_datum(tag)
    assert d.level(d.delta) == 0
    for k in d.I0:
        assert d.level(d.varpi(k)) == 0
    assert all(d.pairing(i, d.delta) == 0 for i in d.index_set)


def test_varpi_representatives():
    d = load_datum("A1~")
    assert d.varpi(1) == d.Lambda(1) - d.Lambda(0)
    t = load_datum("A2^(2)")
    assert t.varpi(1) == 2 * t.Lambda(1) - t.Lambda(0)


@pytest.mark.parametrize("tag", ["A1~", "A2~", "A3~", "B3~", "D4~", "G2~", "F4~"])
def test_untwisted_c_constants_are_one(tag):
    d = load_datum(tag)
    assert all(d.c_const(k) == 1 for k in d.I0)


def test_a2_twisted_c_constant():
    assert load_datum("A2^(2)").c_const(1) == 1


def test_c_const_rejects_zero_node():
    with pytest.raises(UsageError):
        load_datum("A1~").c_const(0)


def test_reflections():
    d = load_datum("A1~")
    assert d.reflect(1, d.Lambda(1)) == d.Lambda(1) - d.alpha(1)
    assert d.reflect(0, d.Lambda(0)) == d.Lambda(0) - d.alpha(0)
    assert all(d.reflect(i, d.delta) == d.delta for i in d.index_set)


def test_to_dominant_examples():
    d = load_datum("A1~")
    lam, word = d.to_dominant(d.Lambda(0) + d.varpi(1))
    assert lam == d.Lambda(1) and word == ()
    lam, word = d.to_dominant(d.reflect(0, d.Lambda(0)))
    assert lam == d.Lambda(0) and tuple(word) == (0,)
    f4 = load_datum("F4~")
    lam, _ = f4.to_dominant(f4.Lambda(0) + f4.varpi(3))
    assert lam.lam == f4.Lambda(4).lam


def test_reduce_word_examples():
    d = load_datum("A1~")
    assert d.reduce_word((1, 1)) == ()
    assert tuple(d.reduce_word((0, 1, 0))) == (0, 1, 0)
    assert d.is_reduced((0, 1, 0)) and not d.is_reduced((0, 0))


def test_inversion_roots_of_a_reduced_word_are_distinct_positive():
    d = load_datum("A1~")
    roots = d.inversion_roots((0, 1, 0))
    assert len(set(roots)) == 3
    assert all(all(c >= 0 for c in r) for r in roots)


def test_translation_of_lambda0():
    d = load_datum("A1~")
    t = d.translation(d.alpha(1))
    assert t(d.Lambda(0)) == d.Lambda(0) + d.alpha(1) - d.delta
    assert t(d.delta) == d.delta


def real_roots_a1_oracle(height):
    out = set()
    for n in range(height + 1):
        for coeffs in ((n, n + 1), (n + 1, n)):
            if sum(coeffs) <= height:
                out.add(coeffs)
    return out


@pytest.mark.parametrize("height", [1, 3, 6, 9])
def test_real_roots_a1_match_closed_form(height):
    d = load_datum("A1~")
    got = {r.coeffs for r in d.real_roots_up_to_height(height)}
    assert got == real_roots_a1_oracle(height)


@pytest.mark.parametrize("tag", ["A2~", "C2~", "A2^(2)", "G2~"])
def test_real_roots_are_real_and_come_with_imaginary_shifts(tag):
    d = load_datum(tag)
    roots = {r.coeffs: r for r in d.real_roots_up_to_height(8)}
    marks = tuple(d.marks)
    for coeffs, r in roots.items():
        beta = d.root_to_weight(coeffs)
        assert d.inner(beta, beta) > 0
        assert d.root_act(r.word, d.simple_root(r.index)) == coeffs
        c = d.c_const(coeffs)
        shifted = tuple(x + c * m for x, m in zip(coeffs, marks))
        if sum(shifted) <= 8:
            assert shifted in roots


def test_root_length_bounds_small():
    for tag in ["A2~", "B3~", "F4~"]:
        d = load_datum(tag)
        assert all(d.inner(d.root_to_weight(r.coeffs), d.root_to_weight(r.coeffs)) / 2 <= 1
                   for r in d.real_roots_up_to_height(6))
    d = load_datum("A4^(2)")
    vals = {d.inner(d.root_to_weight(r.coeffs), d.root_to_weight(r.coeffs)) / 2
            for r in d.real_roots_up_to_height(6)}
    assert vals <= {Fraction(1, 2), 1, 2}


def test_unknown_type_is_rejected():
    with pytest.raises(Exception) as info:
        load_datum("Q7")
    assert "Q7" in str(info.value)


def test_parse_weight():
    d = load_datum("A1~")
    assert parse_weight(d, "s0L0") == d.Lambda(0) - d.alpha(0)
    assert parse_weight(d, "L0+w1") == d.Lambda(1)
    assert parse_weight(d, "2L1-L0+d") == 2 * d.Lambda(1) - d.Lambda(0) + d.delta
    with pytest.raises(UsageError):
        parse_weight(d, "L0+?")


def test_weight_json_round_trip():
    d = load_datum("A2^(2)")
    w = d.weight((1, -2), Fraction(3, 2))
    assert weight_from_json(weight_to_json(w)) == w


# --- properties --------------------------------------------------------------

tags = st.sampled_from(["A1~", "A2~", "C2~", "A2^(2)", "G2~", "A3"])


@st.composite
def datum_word_weight(draw):
    d = load_datum(draw(tags))
    word = draw(st.lists(st.sampled_from(list(d.index_set)), max_size=8))
    lam = d.weight(tuple(draw(st.integers(-3, 3)) for _ in range(d.size)),
                   draw(st.integers(-2, 2)) if d.affine else 0)
    mu = d.weight(tuple(draw(st.integers(-3, 3)) for _ in range(d.size)),
                  draw(st.integers(-2, 2)) if d.affine else 0)
    return d, tuple(word), lam, mu


@given(datum_word_weight())
def test_reduce_word_preserves_the_group_element(case):
    d, word, lam, _ = case
    red = d.reduce_word(word)
    assert d.act(red, lam) == d.act(word, lam)
    assert d.is_reduced(red) and len(red) <= len(word)
    assert (len(word) - len(red)) % 2 == 0


@given(datum_word_weight())
def test_weyl_group_preserves_the_form(case):
    d, word, lam, mu = case
    assert d.inner(d.act(word, lam), d.act(word, mu)) == d.inner(lam, mu)


@given(datum_word_weight())
def test_to_dominant_inverts_the_action(case):
    d, word, lam, _ = case
    if d.affine:
        lam = lam + (1 - d.level(lam)) * d.Lambda(0) if d.level(lam) <= 0 else lam
    nu = d.act(word, lam)
    top, w = d.to_dominant(nu)
    assert d.is_dominant(top)
    assert d.act(w, top) == nu


@given(datum_word_weight())
def test_translations_are_isometries(case):
    d, _, lam, mu = case
    if not d.affine:
        return
    xi = d.reflect(1, d.alpha(1))
    t = d.translation(xi)
    assert d.inner(t(lam), t(mu)) == d.inner(lam, mu)
