import logging

import pytest
from hypothesis import given, strategies as st

from covertwist.rank import (
    CM_ELLIPTIC,
    GENERIC_ELLIPTIC,
    AbelianVarietyDescriptor,
    dihedral_jacobian_group,
    dihedral_jacobian_rank,
    predict_mw_group,
    predict_mw_rank,
)


def test_examples():
    assert predict_mw_rank(GENERIC_ELLIPTIC, 3) == 3
    assert predict_mw_rank(CM_ELLIPTIC, 5) == 10
    assert predict_mw_rank(GENERIC_ELLIPTIC, 0) == 0


def test_group_shape():
    A = AbelianVarietyDescriptor("E", 1, (2, 2))
    pred = predict_mw_group(A, 3, 2)
    assert pred.rank == 3 and pred.free_generators == 3
    assert pred.shape == "End_k(E)^3 + E[2](k) = Z/2 x Z/2"
    assert not pred.lower_bound


def test_lower_bound_warns(caplog):
    A = AbelianVarietyDescriptor("Jac(C)", 2, assert_no_extra_factor=False)
    with caplog.at_level(logging.WARNING):
        assert dihedral_jacobian_rank(A, 4) == 8
    assert "lower bound" in caplog.text
    assert dihedral_jacobian_group(A, 4, 3).torsion_level == 6


@pytest.mark.parametrize("kwargs", [dict(rk_end=0), dict(rk_end=1, torsion=(1,)), dict(rk_end=1, dimension=0)])
def test_descriptor_validation(kwargs):
    with pytest.raises(ValueError):
        AbelianVarietyDescriptor("A", **kwargs)


@given(st.integers(1, 8), st.integers(0, 20), st.integers(0, 20))
def test_linear_in_m(rk, m1, m2):
    A = AbelianVarietyDescriptor("A", rk)
    assert predict_mw_rank(A, m1 + m2) == predict_mw_rank(A, m1) + predict_mw_rank(A, m2)
