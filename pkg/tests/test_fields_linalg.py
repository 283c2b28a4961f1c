from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from glmy import linalg
from glmy._kernels import inv_mod, rank_mod, rref_mod
from glmy.fields import GF, QQ, PrimeField, parse_field


def test_prime_field_symmetric_representative():
    assert GF(32749) == 0
    assert GF(-1) == -1
    assert GF(32748) == -1
    assert GF(16374) == 16374
    assert GF(16375) == -16374
    assert GF.div(1, 2) * 2 % GF.q == 1


def test_parse_field():
    assert parse_field("gf:32749") == GF
    assert parse_field("gf:7") == PrimeField(7)
    assert parse_field("rational") is QQ
    for bad in ("gf:1", "gf:8", "gf:x", "real"):
        with pytest.raises(ValueError):
            parse_field(bad)


def test_zero_has_no_inverse():
    with pytest.raises(ZeroDivisionError):
        GF.inv(0)
    with pytest.raises(ZeroDivisionError):
        QQ.inv(0)


@given(st.integers(min_value=1, max_value=32748))
def test_inverse_mod(x):
    assert x * inv_mod(x, 32749) % 32749 == 1
    assert GF(x * GF.inv(x)) == 1


def test_rref_mod_matches_rational():
    rng = np.random.default_rng(5)
    for _ in range(200):
        r, c = rng.integers(1, 7, size=2)
        M = rng.integers(-2, 3, size=(r, c))
        rank = rank_mod(M.astype(np.int64) % 32749, 32749)
        _, piv = linalg.rref([[Fraction(int(x)) for x in row] for row in M], QQ, int(c))
        assert rank == len(piv) == np.linalg.matrix_rank(M)


def test_rref_mod_is_reduced():
    M = np.array([[2, 4, 1], [1, 2, 0], [3, 6, 1]], dtype=np.int64)
    rank, piv = rref_mod(M, 7)
    assert rank == 2
    assert list(piv[:rank]) == [0, 2]
    assert M[0].tolist() == [1, 2, 0]
    assert M[1].tolist() == [0, 0, 1]
    assert not M[2].any()


def test_split_blocks():
    rows = [{0: 1}, {5: 1}, {0: 2, 3: 1}, {}, {5: 1, 6: 1}]
    blocks = linalg.split_blocks(rows)
    assert blocks == [([0, 2], [0, 3]), ([1, 4], [5, 6]), ([3], [])]


@settings(max_examples=150, deadline=None)
@given(
    st.lists(
        st.dictionaries(st.integers(0, 6), st.integers(-3, 3).filter(bool), max_size=4),
        max_size=8,
    )
)
def test_left_kernel_annihilates(rows):
    for field in (GF, QQ):
        rows_f = [{c: field(v) for c, v in r.items()} for r in rows]
        basis = linalg.left_kernel(rows_f, field)
        assert len(basis) == linalg.left_kernel_dim(rows_f, field)
        for vec in basis:
            for col in range(7):
                total = sum(field(vec.get(r, 0)) * rows_f[r].get(col, 0) for r in range(len(rows)))
                assert field(total) == 0
        assert linalg.rank(basis, field) == len(basis)
