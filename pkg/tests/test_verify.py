import random

import pytest

from covertwist.construct import AbelianCoverSpec, DihedralCoverSpec, Layer, SymbolicPoint, build
from covertwist.coverring import normal_form
from covertwist.ffcheck import check_twist_point_ff, sample_cover_point
from covertwist.galois import diagonal_kummer_action
from covertwist.multipoly import MultiPoly, parse, substitute_fractions, var
from covertwist.verify import (
    FAIL,
    PASS,
    SKIPPED,
    ZeroDenominatorError,
    check_invariance,
    check_point_membership,
    full_verification,
)

F = parse("x^3 + 1")


def cyclic(n, m=2, f=F):
    return AbelianCoverSpec(1, (Layer(n, f),), m)


LAYERED = AbelianCoverSpec(1, (Layer(2, F), Layer(4, parse("x^3 + 3"))), 2)


def test_cyclic_report_passes():
    rep = full_verification(cyclic(2, m=3))
    assert rep.overall == PASS
    names = [c.name for c in rep.checks]
    assert names == ["well_formed", "fiber_product", "invariance", "quotient_identity", "twist_identity",
                     "membership[P1]", "membership[P2]", "membership[P3]", "trivialization", "cocycle"]
    assert not rep.discrepancies()


def test_wrong_point_fails_with_witness():
    con = build(cyclic(2))
    one = MultiPoly.const(1)
    wrong = SymbolicPoint("bad", con.twist.variety.variables,
                          ((parse("x[2][1]"), one), (parse("w[2][1]"), one)))
    res = check_point_membership(wrong, con.twist.variety, con.relations)
    assert res.status == FAIL
    assert res.witness == parse("(x[1][1]^3 + 1)*(x[2][1]^3 + 1) - (x[2][1]^3 + 1)")


def test_witness_reverifies():
    con = build(cyclic(2))
    one = MultiPoly.const(1)
    wrong = SymbolicPoint("bad", con.twist.variety.variables,
                          ((parse("x[2][1]"), one), (parse("w[2][1]"), one)))
    res = check_point_membership(wrong, con.twist.variety, con.relations)
    cleared, _ = substitute_fractions(con.twist.variety.equations[0], wrong.as_substitution())
    assert normal_form(cleared, con.relations) == res.witness


def test_zero_denominator_raises():
    con = build(cyclic(2))
    pt = SymbolicPoint("z", con.twist.variety.variables,
                       ((parse("x[2][1]"), MultiPoly.const(1)),
                        (parse("1"), parse("w[1][1]^2 - x[1][1]^3 - 1"))))
    with pytest.raises(ZeroDenominatorError):
        check_point_membership(pt, con.twist.variety, con.relations)


def test_closed_form_generators_fail_invariance_for_layered():
    action = diagonal_kummer_action((2, 4), (1, 2))
    res = check_invariance([parse("w[1][1]*w[2][1]"), parse("w[1][2]*w[2][2]")], action)
    assert res.status == FAIL
    assert res.witness == parse("-2*w[1][2]*w[2][2]")


def test_layered_report_discrepancies():
    rep = full_verification(LAYERED)
    assert rep.overall == PASS
    disc = rep.discrepancies()
    assert len(disc) == 3
    c_note = next(d for d in disc if "quotient exponent" in d)
    assert "c = 3" in c_note and "= 2" in c_note
    assert all(d.startswith("discrepancy layer 2") for d in disc)


def test_m1_trivialization_skipped():
    rep = full_verification(cyclic(2, m=1))
    assert rep.check("trivialization").status == SKIPPED
    assert rep.check("quotient_identity").status == SKIPPED
    assert rep.overall == PASS


def test_zero_f_gives_well_formed_failure():
    rep = full_verification(cyclic(2, f=parse("0")))
    assert rep.check("well_formed").status == FAIL
    assert all(c.status == SKIPPED for c in rep.checks[1:])
    assert rep.overall == FAIL


def test_report_is_deterministic():
    a = full_verification(LAYERED).to_dict()
    b = full_verification(LAYERED).to_dict()
    assert a == b


@pytest.mark.parametrize("n", [2, 3])
def test_dihedral_report(n):
    rep = full_verification(DihedralCoverSpec(n, F, parse("x + 2"), 3))
    assert rep.overall == PASS
    assert rep.check("cocycle").status == PASS


def test_dihedral_u_dependent_note():
    rep = full_verification(DihedralCoverSpec(3, F, parse("u + x + 3"), 2))
    assert any("convention-dependent" in n for n in rep.check("twist_identity").notes)


def test_failures_are_real_mod_p():
    # the wrong point from above is also wrong on honest samples mod p
    con = build(cyclic(2))
    one = MultiPoly.const(1)
    wrong = SymbolicPoint("bad", con.twist.variety.variables,
                          ((parse("x[2][1]"), one), (parse("w[2][1]"), one)))
    bad_con = type(con)(**{**con.__dict__, "points": (wrong,)})
    rng = random.Random(3)
    failures = 0
    for _ in range(30):
        s = sample_cover_point(con.spec, 11, rng=rng)
        failures += not check_twist_point_ff(s, bad_con)
    assert failures > 0


def test_passes_are_real_mod_p():
    con = build(LAYERED)
    rng = random.Random(4)
    for _ in range(30):
        s = sample_cover_point(con.spec, 13, rng=rng)
        assert check_twist_point_ff(s, con)
