from fractions import Fraction
from functools import lru_cache

import pytest
from hypothesis import given
from hypothesis import strategies as st

from matnorm.errors import Overflow, ValidationError
from matnorm.partitions import Partition, dim_sym, partitions_by_length, partitions_of, z_beta


@lru_cache(maxsize=None)
def count_partitions(k, largest):
    # independent recurrence: partitions of k with parts <= largest
    if k == 0:
        return 1
    return sum(count_partitions(k - j, j) for j in range(1, min(k, largest) + 1))


def test_k3_grouping():
    groups = partitions_by_length(3)
    assert {l: [b.parts for b in g] for l, g in groups.items()} == {1: [(3,)], 2: [(2, 1)], 3: [(1, 1, 1)]}


def test_small_cases():
    assert [b.parts for b in partitions_of(1)] == [(1,)]
    assert [b.parts for b in partitions_of(4)] == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]


def test_reverse_lex_within_groups():
    for l, group in partitions_by_length(9).items():
        parts = [b.parts for b in group]
        assert parts == sorted(parts, reverse=True)
        assert all(len(p) == l for p in parts)


@pytest.mark.parametrize("k", range(1, 31))
def test_counts_match_recurrence(k):
    parts = partitions_of(k)
    assert len(parts) == count_partitions(k, k)
    assert len({b.parts for b in parts}) == len(parts)


def test_z_beta_examples():
    assert [z_beta(b) for b in [(3,), (2, 1), (1, 1, 1)]] == [3, 2, 6]
    assert z_beta((2, 2)) == 8
    assert z_beta((1,)) == 1


@pytest.mark.parametrize("k", range(1, 21))
def test_weights_sum_to_one(k):
    assert sum(Fraction(1, z_beta(b)) for b in partitions_of(k)) == 1


def test_partition_type_invariants():
    b = Partition((3, 1, 1))
    assert b.k == 5
    assert b.multiplicities == {3: 1, 1: 2}
    assert b.z == 3 * 2
    with pytest.raises(ValidationError):
        Partition((1, 2))
    with pytest.raises(ValidationError):
        Partition((2, 0))


def test_dim_sym_examples():
    assert dim_sym(2, 2) == 3
    assert dim_sym(2, 4) == 5
    assert dim_sym(7, 0) == 1


@given(st.integers(2, 20), st.integers(1, 20))
def test_pascal_identity(n, k):
    assert dim_sym(n, k) == dim_sym(n - 1, k) + dim_sym(n, k - 1)


def test_overflow_guards():
    with pytest.raises(Overflow):
        dim_sym(10**6, 10**4)
    with pytest.raises(Overflow):
        partitions_of(65)
