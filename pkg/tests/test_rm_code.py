import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import rmts


def test_rm13_construction():
    spec = rmts.build_code(3, 1)
    assert (spec.N, spec.K, spec.d) == (8, 4, 4)
    assert spec.frozen.tolist() == [0, 1, 2, 4]
    assert spec.info.tolist() == [3, 5, 6, 7]
    assert spec.last_frozen == 4
    assert spec.k_tail == 3


def test_rate1_code_has_no_frozen_bits():
    spec = rmts.build_code(3, 3)
    assert spec.K == 8
    assert spec.frozen.size == 0
    assert spec.last_frozen is None
    assert spec.k_tail == spec.K


def test_rm24_construction():
    spec = rmts.build_code(4, 2)
    assert spec.K == 11
    assert spec.frozen.tolist() == [0, 1, 2, 4, 8]


@pytest.mark.parametrize("m,r", [(0, 0), (1, 0), (3, 1), (4, 2), (5, 3), (7, 3), (7, 4), (8, 2)])
def test_dimension_matches_binomial_sum(m, r):
    spec = rmts.build_code(m, r)
    assert spec.K == sum(math.comb(m, i) for i in range(r + 1))
    assert len(spec.frozen) + len(spec.info) == spec.N
    assert not set(spec.frozen.tolist()) & set(spec.info.tolist())


@pytest.mark.parametrize("m,r", [(3, 1), (4, 2), (5, 2)])
def test_weight_rule(m, r):
    spec = rmts.build_code(m, r)
    for i in range(spec.N):
        w = 1 << i.bit_count()
        assert spec.frozen_mask[i] == (w < spec.d)


@pytest.mark.parametrize("m,r", [(-1, 0), (3, 4), (21, 2), (3, -1)])
def test_build_rejects_bad_parameters(m, r):
    with pytest.raises(ValueError):
        rmts.build_code(m, r)


def test_encode_single_row():
    spec = rmts.build_code(3, 1)
    msg = np.array([1, 0, 0, 0], dtype=np.uint8)  # u_3 = 1
    assert rmts.encode(spec, msg).tolist() == [1, 1, 1, 1, 0, 0, 0, 0]


def test_encode_all_zero():
    spec = rmts.build_code(4, 2)
    assert not rmts.encode(spec, np.zeros(spec.K, dtype=np.uint8)).any()


def test_encode_row_xor():
    # u_3 and u_7 set: row 3 XOR row 7 (all ones)
    spec = rmts.build_code(3, 1)
    msg = np.array([1, 0, 0, 1], dtype=np.uint8)
    assert rmts.encode(spec, msg).tolist() == [0, 0, 0, 0, 1, 1, 1, 1]


def test_encode_rejects_bad_message():
    spec = rmts.build_code(3, 1)
    with pytest.raises(ValueError):
        rmts.encode(spec, np.zeros(3, dtype=np.uint8))
    with pytest.raises(ValueError):
        rmts.encode(spec, np.array([0, 2, 0, 0], dtype=np.uint8))


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**11 - 1), st.integers(0, 2**11 - 1))
def test_encode_is_linear(a_bits, b_bits):
    spec = rmts.build_code(4, 2)
    a = np.array([(a_bits >> i) & 1 for i in range(spec.K)], dtype=np.uint8)
    b = np.array([(b_bits >> i) & 1 for i in range(spec.K)], dtype=np.uint8)
    assert np.array_equal(rmts.encode(spec, a ^ b), rmts.encode(spec, a) ^ rmts.encode(spec, b))


@pytest.mark.parametrize("m,r", [(2, 1), (3, 1), (3, 2), (4, 1), (4, 2), (3, 0)])
def test_minimum_weight_by_enumeration(m, r):
    spec = rmts.build_code(m, r)
    assert spec.K <= 12
    best = spec.N + 1
    for msg_bits in range(1, 1 << spec.K):
        msg = np.array([(msg_bits >> i) & 1 for i in range(spec.K)], dtype=np.uint8)
        best = min(best, int(rmts.encode(spec, msg).sum()))
    assert best == spec.d


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 5), st.data())
def test_butterfly_is_an_involution(m, data):
    n = 1 << m
    bits = np.array(data.draw(st.lists(st.integers(0, 1), min_size=n, max_size=n)), dtype=np.uint8)
    once = rmts.butterfly_transform(bits)
    assert np.array_equal(rmts.butterfly_transform(once), bits)


def test_butterfly_rejects_non_power_of_two():
    with pytest.raises(ValueError):
        rmts.butterfly_transform(np.zeros(6, dtype=np.uint8))


def test_spec_prints_summary():
    text = str(rmts.build_code(3, 1))
    assert "RM(1,3)" in text and "[0, 1, 2, 4]" in text
