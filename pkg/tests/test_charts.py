"""Chart constructions and the coordinate changes between them."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from flagmirror.charts import (
    IdealPoint,
    StringPoint,
    braid_transform_m,
    braid_transform_z,
    chamber_ansatz_coords,
    chart_json,
    ideal_chart,
    ideal_point,
    ideal_to_string,
    p_coords,
    string_chart,
    string_point,
    string_to_ideal,
    string_to_ideal_general,
    universal_weight_matrix,
    weight_matrix_string,
    word_i0_prime,
)
from flagmirror.errors import InvalidMove, NotReduced, WordNotSupported
from flagmirror.matrices import Matrix, w0bar, x_neg_word, x_word, y_el
from flagmirror.scalars import RationalFunction as RF, rf
from flagmirror.weyl import root_order, word_i0


def sym_d(n):
    return tuple(rf(f"d{i}") for i in range(1, n + 1))


def sym_z(n):
    return tuple(rf(f"z{i}") for i in range(1, n * (n - 1) // 2 + 1))


positive_fraction = st.fractions(
    min_value=Fraction(1, 40), max_value=Fraction(40)
).filter(lambda q: q > 0)


# ---------------------------------------------------------------- string ---


def test_string_chart_dim3_worked_example():
    d1, d2, d3 = d = sym_d(3)
    z1, z2, z3 = z = sym_z(3)
    zel = string_chart(string_point(d, z))
    zero = rf(0)
    assert zel.b == Matrix([
        [d3 * z2, zero, zero],
        [d3 * (z1 + z2 / z3), d2 * z1 * z3 / z2, zero],
        [d3 + zero, d2 * z3 / z2, d1 / (z1 * z3)],
    ])
    one = rf(1)
    assert zel.u1 == Matrix([
        [one, z3, z2],
        [zero, one, z1 + z2 / z3],
        [zero, zero, one],
    ])
    W = zel.superpotential()
    assert W == z1 + z2 / z3 + z3 + (d1 / d2) * (1 / z3 + z2 / (z1 * z3 ** 2)) \
        + (d2 / d3) * (z3 / z2)


@pytest.mark.parametrize("n", [3, 4])
def test_string_chart_factorizations_multiply_back(n):
    zel = string_chart(string_point(sym_d(n), sym_z(n)))
    assert zel.check()


def test_string_point_rejects_non_reduced_word():
    with pytest.raises(NotReduced):
        StringPoint(sym_d(3), sym_z(3), (1, 1, 2))
    with pytest.raises(ValueError):
        string_point(sym_d(3), sym_z(3)[:2])


def test_weight_matrix_string_dim3():
    d1, d2, d3 = d = sym_d(3)
    z1, z2, z3 = z = sym_z(3)
    wm = weight_matrix_string(string_point(d, z))
    assert wm == Matrix.diagonal((d3 * z2, d2 * z1 * z3 / z2, d1 / (z1 * z3)))


@pytest.mark.parametrize("n", [3, 4])
def test_weight_matrix_string_equals_ldu_diagonal(n):
    p = string_point(sym_d(n), sym_z(n))
    assert weight_matrix_string(p) == string_chart(p).t_R


def test_weight_matrix_string_at_one():
    d = sym_d(3)
    ones = (Fraction(1),) * 3
    wm = weight_matrix_string(string_point(d, ones))
    assert wm == Matrix.diagonal((d[2], d[1], d[0]))


def test_weight_matrix_string_rejects_other_words():
    p = string_point(sym_d(3), sym_z(3), (2, 1, 2))
    with pytest.raises(WordNotSupported):
        weight_matrix_string(p)


# ----------------------------------------------------------------- ideal ---


def test_ideal_chart_dim3_worked_example():
    d1, d2, d3 = d = sym_d(3)
    m1, m2, m3 = rf("m1"), rf("m2"), rf("m3")
    zel = ideal_chart(ideal_point(d, {(1, 2): m1, (1, 3): m2, (2, 3): m3}))
    assert zel.b.entry(2, 1) == d3 * (m2 + m2 * m3 / m1)
    assert zel.b.entry(3, 3) == d1 / (m1 * m2)
    assert zel.superpotential() == m1 + m2 + m2 * m3 / m1 \
        + (d2 / d3) * m1 / (m2 * m3) + (d1 / d2) * (m3 / m1 ** 2 + 1 / m1)
    assert zel.check()


def test_ideal_chart_dim2_direct():
    d1, d2 = d = sym_d(2)
    m = rf("m")
    zel = ideal_chart(ideal_point(d, {(1, 2): m}))
    assert zel.b == y_el(1, 1 / m, 2) * Matrix.diagonal((d2 * m, d1 / m))


def test_universal_weight_matrix_dim4():
    d1, d2, d3, d4 = d = sym_d(4)
    m = {r: rf(f"m_{r[0]}{r[1]}") for r in root_order(word_i0(4), 4)}
    wm = universal_weight_matrix(d, m)
    assert wm.entry(1, 1) == d4 * m[(1, 4)] * m[(2, 4)] * m[(3, 4)]
    assert wm.entry(2, 2) == d3 * m[(1, 3)] * m[(2, 3)] / m[(3, 4)]
    assert wm.entry(3, 3) == d2 * m[(1, 2)] / (m[(2, 3)] * m[(2, 4)])
    assert wm.entry(4, 4) == d1 / (m[(1, 2)] * m[(1, 3)] * m[(1, 4)])


def test_universal_weight_matrix_dim2():
    d1, d2 = d = sym_d(2)
    m = rf("m")
    wm = universal_weight_matrix(d, {(1, 2): m})
    assert wm == Matrix.diagonal((d2 * m, d1 / m))


@pytest.mark.parametrize("n", [3, 4])
def test_universal_weight_matrix_reindexes_to_string_form(n):
    d, z = sym_d(n), sym_z(n)
    wm = universal_weight_matrix(d, string_to_ideal(z))
    assert wm == weight_matrix_string(string_point(d, z))


# --------------------------------------------------- coordinate changes ---


def test_string_to_ideal_dim3():
    z1, z2, z3 = z = sym_z(3)
    m = string_to_ideal(z)
    assert m[(1, 2)] == z3 and m[(1, 3)] == z1 and m[(2, 3)] == z2 / z1


def test_string_to_ideal_dim4():
    z = sym_z(4)
    m = string_to_ideal(z)
    assert m[(1, 2)] == z[5] and m[(1, 3)] == z[3] and m[(1, 4)] == z[0]
    assert m[(2, 3)] == z[4] / z[3] and m[(2, 4)] == z[1] / z[0]
    assert m[(3, 4)] == z[2] / z[1]


def test_ideal_to_string_dim3():
    z1, z2, z3 = z = sym_z(3)
    m = string_to_ideal(z)
    assert ideal_to_string(m) == (z1, z2, z3)
    m1, m2, m3 = rf("m1"), rf("m2"), rf("m3")
    back = ideal_to_string({(1, 2): m1, (1, 3): m2, (2, 3): m3})
    assert back == (m2, m2 * m3, m1)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_coordinate_change_round_trips(n):
    z = sym_z(n)
    assert ideal_to_string(string_to_ideal(z)) == z


@pytest.mark.parametrize("n", [3, 4])
def test_coordinate_change_theorem(n):
    d, z = sym_d(n), sym_z(n)
    zs = string_chart(string_point(d, z))
    zi = ideal_chart(ideal_point(d, string_to_ideal(z)))
    assert zs.b == zi.b


def test_p_coords_dim3():
    z1, z2, z3 = z = sym_z(3)
    assert p_coords(z) == (z1, z3, z2 / z3)


@pytest.mark.parametrize("n", [3, 4])
def test_u1_factors_along_i0_prime(n):
    z = sym_z(n)
    zel = string_chart(string_point(sym_d(n), z))
    assert zel.u1 == x_word(word_i0_prime(n), p_coords(z), n)


# --------------------------------------------------------------- chamber ---


def test_chamber_ansatz_dim3():
    z = sym_z(3)
    zel = string_chart(string_point(sym_d(3), z))
    t = chamber_ansatz_coords(zel.u1, word_i0(3))
    m = string_to_ideal(z)
    roots = root_order(word_i0(3), 3)
    assert all(t[k] == 1 / m[roots[k]] for k in range(3))


def test_chamber_ansatz_matches_transported_coords_dim4():
    word = (1, 2, 3, 2, 1, 2)
    z = sym_z(4)
    zel = string_chart(string_point(sym_d(4), z, word))
    t = chamber_ansatz_coords(zel.u1, word)
    m = string_to_ideal_general(word, z)
    roots = root_order(word, 4)
    assert all(t[k] == 1 / m[roots[k]] for k in range(6))


# ----------------------------------------------------------- braid moves ---


def test_braid_transform_m_three_move_formulas():
    # symbolic 3-move (1,2,1) -> (2,1,2)
    a, b, c = rf("a"), rf("b"), rf("c")
    m = {(1, 2): a, (1, 3): b, (2, 3): c}
    out = braid_transform_m((1, 2, 1), 0, m)
    assert out[(1, 2)] == b * (a + c) / c
    assert out[(1, 3)] == a * c / (a + c)
    assert out[(2, 3)] == b * (a + c) / a


def test_braid_transform_m_involution():
    a, b, c = rf("a"), rf("b"), rf("c")
    m = {(1, 2): a, (1, 3): b, (2, 3): c}
    twice = braid_transform_m((1, 2, 1), 0, braid_transform_m((1, 2, 1), 0, m))
    assert all(twice[r] == m[r] for r in m)


def test_braid_transform_m_relations():
    word = word_i0(4)
    m = {r: rf(f"m_{r[0]}{r[1]}") for r in root_order(word, 4)}
    roots = root_order(word, 4)
    alpha, mid, beta = roots[3], roots[4], roots[5]
    out = braid_transform_m(word, 3, m)
    assert out[alpha] * out[mid] == m[alpha] * m[mid]
    assert out[beta] * out[mid] == m[beta] * m[mid]
    assert out[alpha] / out[beta] == m[alpha] / m[beta]


def test_braid_transform_m_two_move_keeps_values():
    word = (1, 3, 2, 1, 3, 2)
    m = {r: rf(f"m_{r[0]}{r[1]}") for r in root_order(word, 4)}
    out = braid_transform_m(word, 0, m)
    assert all(out[r] == m[r] for r in m)


def test_braid_transform_m_rejects_bad_position():
    m = {(1, 2): rf("a"), (1, 3): rf("b"), (2, 3): rf("c")}
    with pytest.raises(InvalidMove):
        braid_transform_m((1, 2, 1), 1, m)
    with pytest.raises(InvalidMove):
        braid_transform_m((1, 2, 1), -1, m)


def test_braid_transform_m_preserves_chart():
    d = sym_d(3)
    m = {(1, 2): rf("a"), (1, 3): rf("b"), (2, 3): rf("c")}
    out = braid_transform_m((1, 2, 1), 0, m)
    b1 = ideal_chart(ideal_point(d, m, (1, 2, 1))).b
    b2 = ideal_chart(ideal_point(d, out, (2, 1, 2))).b
    assert b1 == b2


def test_braid_transform_z_preserves_product():
    word = (1, 2, 1)
    z = tuple(rf(v) for v in "abc")
    out = braid_transform_z(word, 0, z)
    assert x_neg_word(word, z, 3) == x_neg_word((2, 1, 2), out, 3)


@given(vals=st.tuples(positive_fraction, positive_fraction, positive_fraction,
                      positive_fraction, positive_fraction, positive_fraction))
@settings(max_examples=25, deadline=None)
def test_braid_transform_z_numeric_product_invariance(vals):
    word = (1, 2, 3, 2, 1, 2)
    out = braid_transform_z(word, 3, vals)
    new_word = (1, 2, 3, 1, 2, 1)
    assert x_neg_word(word, vals, 4) == x_neg_word(new_word, out, 4)


def test_universal_weight_matrix_braid_invariance():
    # substituting the 3-move formulas into the re-keyed universal matrix
    # reproduces the original one
    for n in (3, 4):
        word = word_i0(n)
        d = sym_d(n)
        m = {r: rf(f"m_{r[0]}{r[1]}") for r in root_order(word, n)}
        out = braid_transform_m(word, 0, m) if n == 3 else braid_transform_m(word, 3, m)
        assert universal_weight_matrix(d, m) == universal_weight_matrix(d, out)


# ------------------------------------------------------------- general ---


def test_string_to_ideal_general_dim4_closed_forms():
    w1, w2, w3, w4, w5, w6 = z = tuple(rf(f"w{i}") for i in range(1, 7))
    m = string_to_ideal_general((1, 2, 3, 2, 1, 2), z)
    assert m[(1, 2)] == (w4 * w6 + w5) / w6
    assert m[(1, 3)] == w5 * w6 / (w4 * w6 + w5)
    assert m[(1, 4)] == w1
    assert m[(3, 4)] == w2 / w1 + w3 * w5 / (w1 * w4 * (w4 * w6 + w5))
    assert m[(2, 4)] == w3 * w4 * (w4 * w6 + w5) / (w2 * w4 * (w4 * w6 + w5) + w3 * w5)
    assert m[(2, 3)] == (w2 ** 2 * w4 ** 2 * w6 + w2 ** 2 * w4 * w5 + w2 * w3 * w5) \
        / (w1 * w3 * w5)


def test_string_to_ideal_general_reduces_to_i0():
    z = sym_z(4)
    assert string_to_ideal_general(word_i0(4), z) == string_to_ideal(z)


def test_string_to_ideal_general_chart_equality():
    word = (1, 2, 3, 2, 1, 2)
    d, z = sym_d(4), tuple(rf(f"w{i}") for i in range(1, 7))
    m = string_to_ideal_general(word, z)
    assert string_chart(string_point(d, z, word)).b == \
        ideal_chart(ideal_point(d, m, word)).b


# --------------------------------------------------------------- output ---


def test_chart_json_shape():
    d, z = sym_d(3), sym_z(3)
    p = string_point(d, z)
    doc = chart_json(p, string_chart(p))
    assert doc["chart"] == "string"
    assert doc["word"] == [1, 2, 1]
    assert doc["coords"]["z2"] == "z2"
    assert doc["b"][0][0] == "d3*z2"
    assert doc["superpotential"]
    ip = ideal_point(d, string_to_ideal(z))
    doc2 = chart_json(ip, ideal_chart(ip))
    assert doc2["chart"] == "ideal"
    assert doc2["coords"]["a_{1,2}"] == "z3"
