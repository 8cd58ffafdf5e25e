from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from simplicial_codes.analysis import (
    ashikhmin_barg,
    check_subfield_weight_relation,
    check_weight_relation,
    distance_optimal_by_griesmer,
    griesmer_sum,
    is_griesmer,
    is_minimal_exhaustive,
    make_report,
    minimality,
)
from simplicial_codes.code import (
    LinearCode,
    build_code,
    complement,
    defining_set_from_parts,
    exclusive_parts_condition,
    puncture,
)
from simplicial_codes.errors import UsageError
from simplicial_codes.field import gf
from simplicial_codes.simplicial import popcount, simplex_of
from simplicial_codes.subfield import build_subfield_code

F8 = gf(3)


def simplex_D(masks, m, n=3):
    return defining_set_from_parts([simplex_of(x, m) for x in masks], gf(n))


def star(masks, m, n=3):
    return build_code(puncture(simplex_D(masks, m, n)))


def comp(masks, m, n=3):
    return build_code(complement(simplex_D(masks, m, n)))


def test_griesmer_sum_examples():
    assert griesmer_sum(4, 3556, 8) == 4064
    assert griesmer_sum(1, 77, 5) == 77
    assert griesmer_sum(9, 240, 2) == 480
    with pytest.raises(UsageError):
        griesmer_sum(0, 3, 2)


@given(st.integers(1, 10), st.integers(1, 5000), st.sampled_from([2, 4, 8, 16]))
def test_griesmer_sum_monotone(k, d, q):
    g = griesmer_sum(k, d, q)
    assert g >= d
    assert griesmer_sum(k + 1, d, q) >= g
    assert griesmer_sum(k, d + 1, q) >= g


def test_is_griesmer_examples():
    assert is_griesmer(star([0b011] * 3, 3))
    c31 = star([0b0011, 0b0110, 0b0010], 4)
    assert c31.parameters == (31, 3, 16)
    assert not is_griesmer(c31)
    assert is_griesmer(build_subfield_code(puncture(simplex_D([0b011, 0b110, 0b010], 3))).code)
    with pytest.raises(UsageError):
        is_griesmer(LinearCode(F8, np.zeros((1, 4), dtype=np.uint8)))


def test_distance_optimal_examples():
    assert distance_optimal_by_griesmer(comp([0b0011] * 3, 4))
    assert distance_optimal_by_griesmer(
        build_subfield_code(complement(simplex_D([0b011, 0b110, 0b010], 3))).code)
    assert not distance_optimal_by_griesmer(star([0b0011, 0b0110, 0b0010], 4))


def test_ashikhmin_barg_examples():
    c = comp([0b0011, 0b0110, 0b0010], 4)
    assert c.distribution.nonzero_weights[0] == 3556 and ashikhmin_barg(c)
    s = build_subfield_code(complement(simplex_D([0b01, 0b10, 0b10], 2))).code
    assert s.distribution.nonzero_weights == [28, 32] and ashikhmin_barg(s)
    assert ashikhmin_barg(star([0b011] * 3, 3))


def test_minimal_exhaustive_examples():
    s = build_subfield_code(puncture(simplex_D([0b01, 0b10, 0b10], 2))).code
    assert s.parameters == (7, 3, 4)
    assert is_minimal_exhaustive(s) is True
    cover = LinearCode(gf(1), np.array([[1, 1, 0], [0, 0, 1]], dtype=np.uint8))
    assert is_minimal_exhaustive(cover) is False  # (1,1,0) is covered by (1,1,1)
    assert is_minimal_exhaustive(star([0b011] * 3, 3)) is True


def test_minimal_exhaustive_scalar_multiples_allowed():
    # a one-dimensional code: all codewords are scalar multiples, so it is minimal
    one = LinearCode(F8, np.array([[1, 2, 3, 0]], dtype=np.uint8))
    assert is_minimal_exhaustive(one) is True


def test_minimal_exhaustive_skips_over_budget():
    c = comp([0b0011] * 3, 4)
    assert is_minimal_exhaustive(c) is None
    assert minimality(c) == (True, "ashikhmin-barg")


def naive_minimal(code: LinearCode) -> bool:
    """Oracle: every pair of nonzero codewords, scalar multiples tested by brute force."""
    f = code.field
    words = [w for w in code.codewords() if w.any()]
    supports = [frozenset(np.flatnonzero(w)) for w in words]
    for u, su in zip(words, supports):
        for v, sv in zip(words, supports):
            if su <= sv:
                if not any(np.array_equal(u, f.mul_table[lam][v]) for lam in range(1, f.q)):
                    return False
    return True


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 3).flatmap(lambda n: st.tuples(
    st.just(n), st.integers(1, 2), st.integers(2, 5), st.randoms(use_true_random=False))))
def test_minimal_exhaustive_matches_naive(args):
    n, k, length, rnd = args
    F = gf(n)
    G = np.array([[rnd.randrange(F.q) for _ in range(length)] for _ in range(k)], dtype=np.uint8)
    code = LinearCode(F, G)
    if code.dimension == 0:
        return
    assert is_minimal_exhaustive(code) == naive_minimal(code)
    if ashikhmin_barg(code):
        assert is_minimal_exhaustive(code) is True


def test_weight_relation_examples():
    for masks in itertools.product(range(1, 4), repeat=2):
        rel = check_weight_relation(simplex_D(masks, 2, n=2))
        assert rel.holds and rel.messages == 16
    rel = check_weight_relation(simplex_D([0b01, 0b10, 0b11], 2))
    assert rel.holds


def test_weight_relation_detects_a_break():
    from simplicial_codes.analysis import compare_relation

    w_star = np.array([0, 5, 5, 5])
    w_c = np.array([0, 3, 2, 3])
    bad = compare_relation(w_c, w_star, 8, 2, 2)
    assert not bad and bad.counterexample == (0, 1)


def test_subfield_weight_relation_examples():
    for masks in itertools.product(range(1, 4), repeat=2):
        assert check_subfield_weight_relation(simplex_D(masks, 2, n=2)).holds
    with pytest.raises(UsageError):
        check_weight_relation(puncture(simplex_D([1, 1, 1], 1)))


def test_report_flags_and_schema():
    r = make_report(comp([0b0011] * 3, 4), recipe="demo", m=4)
    d = r.to_dict()
    assert d["field"] == {"n": 3, "modulus": 11}
    assert (d["length"], d["dimension"], d["min_distance"]) == (4032, 4, 3528)
    assert d["weights"][0] == {"w": 0, "A": 1, "Z": 1}
    assert d["flags"] == {"griesmer": True, "distance_optimal_griesmer": True,
                          "ashikhmin_barg": True, "minimal_exhaustive": None}
    assert "4032" in r.to_text()


def test_report_notes_uncertified_optimality():
    r = make_report(star([0b0011, 0b0110, 0b0010], 4))
    assert r.distance_optimal_griesmer is False
    assert r.notes


def four_weight_instances(m):
    full = (1 << m) - 1
    for L, M, N in itertools.product(range(1, 1 << m), repeat=3):
        if (L | M | N) != full and exclusive_parts_condition(L, M, N):
            yield L, M, N


def test_four_weight_complement_family():
    m = 4
    count = 0
    for L, M, N in four_weight_instances(m):
        s = popcount(L) + popcount(M) + popcount(N)
        c = comp([L, M, N], m)
        base = 7 * 8 ** (m - 1)
        assert c.distribution.nonzero_weights == [base - k * 2 ** (s - 3) for k in (7, 6, 4, 0)]
        assert c.dimension == m and is_griesmer(c)
        assert ashikhmin_barg(c) == (s <= 3 * m - 4)
        count += 1
    assert count > 0


def test_four_weight_family_has_no_instance_at_m3():
    # the hypotheses (proper union, two exclusive parts) cannot be met with m = 3
    assert list(four_weight_instances(3)) == []


@pytest.mark.parametrize("m", [2, 3, 4])
def test_equal_parts_complement_two_weights(m):
    for size in range(1, m):
        L = (1 << size) - 1
        c = comp([L] * 3, m)
        assert c.distribution.num_weights == 2
        assert ashikhmin_barg(c) == (3 * (m - size) >= 4)
        assert minimality(c)[0] is True or 3 * (m - size) < 4
