from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from simplicial_codes.code import (
    LinearCode,
    build_code,
    closed_form_weight_f8,
    codeword_weight,
    complement,
    defining_set_from_elements,
    defining_set_from_parts,
    exclusive_parts_condition,
    matrix_text,
    message_at,
    message_index,
    parse_matrix_text,
    puncture,
    rank,
    row_reduce,
)
from simplicial_codes.errors import CapacityError, UsageError
from simplicial_codes.field import gf
from simplicial_codes.simplicial import SupportVector, popcount, simplex_of

F8 = gf(3)


def vecs(*strings):
    return [SupportVector.from_string(s) for s in strings]


def simplex_parts(masks, m):
    return [simplex_of(x, m) for x in masks]


def example_31():
    return defining_set_from_parts(simplex_parts([0b0011, 0b0110, 0b0010], 4), F8)


def oracle_codewords(G: np.ndarray, field) -> np.ndarray:
    """All v.G by direct table lookup, messages in message_index order."""
    k = G.shape[0]
    mul = field.mul_table
    words = []
    for idx in range(field.q ** k):
        v = message_at(idx, field.q, k)
        w = np.zeros(G.shape[1], dtype=np.uint8)
        for r, x in enumerate(v):
            w ^= mul[x][G[r]]
        words.append(w)
    return np.array(words)


# ---------------------------------------------------------------------------
# defining sets


def test_parts_small_example_has_six_elements():
    D = defining_set_from_parts([vecs("10"), vecs("01", "11"), vecs("10", "01", "11")], F8)
    assert len(D) == 6
    assert D.tuples() == [(1, 6), (3, 6), (5, 2), (5, 6), (7, 2), (7, 6)]


def test_parts_counts():
    assert len(example_31()) == 32
    D = defining_set_from_parts([[0], [0], [0]], F8, m=3)
    assert D.tuples() == [(0, 0, 0)]


def test_parts_elements_decompose():
    D = example_31()
    parts = [set(p) for p in D.parts]
    for row in D.elements:
        for i in range(3):
            d_i = sum(((int(x) >> i) & 1) << j for j, x in enumerate(row))
            assert d_i in parts[i]


def test_parts_validation():
    with pytest.raises(UsageError):
        defining_set_from_parts(simplex_parts([1, 1], 2), F8)
    with pytest.raises(UsageError):
        defining_set_from_parts([[1], [], [1]], F8, m=2)
    with pytest.raises(UsageError):
        defining_set_from_elements(F8, [(1, 2), (1, 2)])


def test_canonical_order():
    D = defining_set_from_elements(F8, [(0, 5), (1, 0), (0, 7)])
    assert D.tuples() == [(0, 5), (0, 7), (1, 0)]


def test_puncture_examples():
    D = example_31()
    assert len(puncture(D)) == 31
    E = defining_set_from_elements(F8, [(1, 0), (0, 3)])
    assert puncture(E).tuples() == E.tuples()
    assert len(puncture(defining_set_from_parts([[0]] * 3, F8, m=2))) == 0


def test_complement_examples():
    D = defining_set_from_parts(simplex_parts([0b0011, 0b0110, 0b0010], 4), F8)
    assert len(complement(D)) == 4064
    D = defining_set_from_parts(simplex_parts([0b0011] * 3, 4), F8)
    assert len(complement(D)) == 4032
    full = defining_set_from_parts(simplex_parts([0b11] * 3, 2), F8)
    assert len(complement(full)) == 0


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.integers(1, 3).flatmap(
    lambda m: st.tuples(st.just(n), st.just(m),
                        st.lists(st.sets(st.integers(0, (1 << m) - 1), min_size=1),
                                 min_size=n, max_size=n)))))
def test_complement_is_set_difference(args):
    n, m, parts = args
    F = gf(n)
    D = defining_set_from_parts([sorted(p) for p in parts], F, m=m)
    Dc = complement(D)  # the structured assembly is checked inside
    assert len(Dc) == F.q ** m - len(D)
    assert not set(Dc.tuples()) & set(D.tuples())


# ---------------------------------------------------------------------------
# codes


def test_build_code_small_example_derived_generator():
    # the stated parts give this [6, 2, 5] generator (not the printed [6, 2, 4] one)
    D = defining_set_from_parts([vecs("10"), vecs("01", "11"), vecs("10", "01", "11")], F8)
    code = build_code(D)
    assert code.gen_matrix.tolist() == [[1, 3, 5, 5, 7, 7], [6, 6, 2, 6, 2, 6]]
    assert code.parameters == (6, 2, 5)


def test_printed_small_generator_matches_swapped_parts_distribution():
    printed = LinearCode(F8, np.array([[1, 1, 4, 4, 7, 7], [0, 1, 1, 4, 1, 3]]))
    assert printed.parameters == (6, 2, 4)
    swapped = build_code(defining_set_from_parts(
        [vecs("10"), vecs("10", "01", "11"), vecs("01", "11")], F8))
    assert swapped.parameters == (6, 2, 4)
    assert swapped.distribution.A == printed.distribution.A == {0: 1, 4: 14, 5: 14, 6: 35}


def test_build_code_examples():
    code = build_code(puncture(example_31()))
    assert (code.length, code.dimension) == (31, 3)
    single = build_code(defining_set_from_elements(F8, [(1, 0, 0)]))
    assert single.parameters == (1, 1, 1)
    with pytest.raises(UsageError):
        build_code(puncture(defining_set_from_parts([[0]] * 3, F8, m=2)))


def test_codeword_weight_examples():
    Ds = puncture(example_31())
    assert codeword_weight((0, 0, 0, 0), Ds) == 0
    assert codeword_weight((1, 0, 0, 0), Ds) == 16
    D63 = puncture(defining_set_from_parts(simplex_parts([0b011] * 3, 3), F8))
    for idx in range(8 ** 3):
        v = message_at(idx, 8, 3)
        if v[0] or v[1]:
            assert codeword_weight(v, D63) == 56


def test_weight_distribution_examples():
    code = build_code(puncture(example_31()))
    assert code.distribution.nonzero_weights == [16, 24, 28]
    assert code.min_distance == 16
    D63 = puncture(defining_set_from_parts(simplex_parts([0b011] * 3, 3), F8))
    c63 = build_code(D63)
    assert c63.distribution.A == {0: 1, 56: 63}
    assert c63.min_distance == 56
    comp = build_code(complement(example_31()))
    assert comp.distribution.nonzero_weights == [3556, 3560, 3568, 3584]


def test_zero_code_has_no_distance():
    code = LinearCode(F8, np.zeros((2, 3), dtype=np.uint8))
    assert code.dimension == 0
    with pytest.raises(UsageError):
        code.min_distance


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 3).flatmap(lambda n: st.tuples(
    st.just(n), st.integers(1, 3), st.integers(1, 7), st.randoms(use_true_random=False))))
def test_enumeration_matches_direct_oracle(args):
    n, k, length, rnd = args
    F = gf(n)
    G = np.array([[rnd.randrange(F.q) for _ in range(length)] for _ in range(k)], dtype=np.uint8)
    code = LinearCode(F, G)
    words = oracle_codewords(G, F)
    weights = np.count_nonzero(words, axis=1)
    assert code.message_weights.tolist() == weights.tolist()
    distinct = np.unique(words, axis=0)
    assert len(distinct) == F.q ** code.dimension
    dist = code.distribution
    assert dist.z0 * sum(dist.A.values()) == F.q ** k
    for w, a in dist.A.items():
        assert dist.Z[w] == dist.z0 * a
        assert a == int(np.sum(np.count_nonzero(distinct, axis=1) == w))
    # codeword store agrees too
    assert len(code.codewords()) == len(distinct)


def test_message_index_roundtrip():
    for idx in range(512):
        assert message_index(message_at(idx, 8, 3), 8) == idx


def test_row_reduce_rank():
    G = np.array([[1, 2, 3], [2, 4, 6], [0, 1, 1]], dtype=np.uint8)
    # row 2 = w * row 1 over GF(8)
    assert rank(G, F8) == 2
    rows, pivots = row_reduce(G, F8)
    assert pivots == [0, 1]


@pytest.mark.parametrize("n", [1, 2, 3])
def test_dimension_law(n):
    F = gf(n)
    for m in range(1, 5):
        for masks in itertools.product(range(1 << m), repeat=n):
            if not any(masks):
                continue
            D = puncture(defining_set_from_parts(simplex_parts(masks, m), F))
            union = 0
            for x in masks:
                union |= x
            code = build_code(D)
            assert code.length == 2 ** sum(popcount(x) for x in masks) - 1
            assert code.dimension == popcount(union)


def test_message_budget():
    F = gf(4)
    code = LinearCode(F, np.ones((7, 3), dtype=np.uint8))
    with pytest.raises(CapacityError):
        code.message_weights
    small = LinearCode(F, np.ones((2, 3), dtype=np.uint8), budget=100)
    with pytest.raises(CapacityError):
        small.distribution


# ---------------------------------------------------------------------------
# closed form over GF(8)


def test_closed_form_examples():
    L, M, N = {1, 2}, {2, 3}, {2}
    assert closed_form_weight_f8(0, 0, 0, L, M, N) == (0, 7)
    assert closed_form_weight_f8({1}, 0, 0, L, M, N) == (16, 3)
    assert closed_form_weight_f8({1, 3}, 0, 0, L, M, N) == (24, 1)


def test_theta_values_under_hypothesis():
    m = 3
    for L, M, N in itertools.product(range(1, 8), repeat=3):
        if not exclusive_parts_condition(L, M, N):
            continue
        for a, b, c in itertools.product(range(8), repeat=3):
            _, theta = closed_form_weight_f8(a, b, c, L, M, N)
            assert theta in (0, 1, 3, 7)


def test_matrix_text_roundtrip():
    code = build_code(puncture(example_31()))
    text = matrix_text(code.gen_matrix, F8)
    assert text.splitlines()[0] == "# GF(2^3) modulus=11 rows=4 cols=31"
    n, modulus, G = parse_matrix_text(text)
    assert (n, modulus) == (3, 11)
    assert np.array_equal(G, code.gen_matrix)
