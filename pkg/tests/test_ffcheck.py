import random

import pytest

from covertwist.construct import AbelianCoverSpec, DihedralCoverSpec, Layer, build
from covertwist.ffcheck import (
    BadPrimeError,
    BudgetExceededError,
    ExhaustedError,
    FFSample,
    PrimeFieldElement,
    check_trivialization_ff,
    check_twist_point_ff,
    enumerate_solutions,
    evaluate_mod_p,
    run_oracle,
    sample_cover_point,
    sample_is_valid,
)
from covertwist.multipoly import parse, var

F = parse("x^3 + 1")
CYC = AbelianCoverSpec(1, (Layer(2, F),), 2)


def test_roots_at_p7():
    # f(2) = 9 = 2 mod 7 and 3^2 = 4^2 = 2
    count, sols = enumerate_solutions([parse("w^2 - (x^3 + 1)"), parse("x - 2")], 7, [var("x"), var("w")])
    assert count == 2 and {w for _, w in sols} == {3, 4}


def test_bad_primes():
    with pytest.raises(BadPrimeError):
        sample_cover_point(CYC, 2)
    with pytest.raises(BadPrimeError):
        sample_cover_point(CYC, 9)
    with pytest.raises(BadPrimeError):
        sample_cover_point(AbelianCoverSpec(1, (Layer(2, parse("x/7 + 1")),), 2), 7)


def test_exhausted():
    # 3 is not a square mod 5
    with pytest.raises(ExhaustedError):
        sample_cover_point(AbelianCoverSpec(1, (Layer(2, parse("3")),), 2), 5, trials=20)


def test_worked_instance():
    con = build(CYC)
    a = {var("x", 1, 1): 2, var("w", 1, 1): 3, var("x", 2, 1): 0, var("w", 2, 1): 1,
         var("x"): 0, var("w", 1): 1}
    s = FFSample(7, a)
    assert sample_is_valid(s, con)
    # Z = w2/w1 = 1/3 = 5 mod 7 and f(2) * 5^2 = 2 * 25 = 1 = f(0)
    assert 3 * 5 % 7 == 1 and (9 * 25 - 1) % 7 == 0
    assert check_twist_point_ff(s, con)
    assert check_trivialization_ff(s, con)


def test_corrupted_sample_fails():
    con = build(CYC)
    a = {var("x", 1, 1): 2, var("w", 1, 1): 3, var("x", 2, 1): 0, var("w", 2, 1): 2,
         var("x"): 0, var("w", 1): 1}
    s = FFSample(7, a)
    assert not sample_is_valid(s, con)
    assert not check_twist_point_ff(s, con)


def test_first_point_always_passes():
    con = build(CYC)
    rng = random.Random(1)
    for _ in range(20):
        s = sample_cover_point(CYC, 11, rng=rng)
        vals = dict(s.assignment)
        vals[var("x")] = vals[var("x", 1, 1)]
        vals[var("Z", 1)] = 1
        assert evaluate_mod_p(con.twist.variety.equations[0], vals, 11) == 0


def test_enumerate_examples():
    assert enumerate_solutions([parse("w^2 - x")], 3, [var("x"), var("w")])[0] == 3
    assert enumerate_solutions([], 5, [var("x"), var("y")])[0] == 25
    assert enumerate_solutions([parse("1")], 5, [var("x")])[0] == 0
    with pytest.raises(BudgetExceededError):
        enumerate_solutions([], 13, [var("x")] * 7, budget=1000)


def test_field_element():
    a = PrimeFieldElement(3, 7)
    assert a * a.inverse() == 1
    assert a / 3 == 1 and a ** 6 == 1 and a + 5 == 1
    with pytest.raises(ZeroDivisionError):
        PrimeFieldElement(0, 7).inverse()


@pytest.mark.parametrize("spec", [
    CYC,
    AbelianCoverSpec(1, (Layer(2, F), Layer(4, parse("x^3 + 3"))), 2),
    DihedralCoverSpec(3, F, parse("x + 2"), 2),
])
def test_oracle_passes(spec):
    con = build(spec)
    s = run_oracle(con, 11, 30, seed=2)
    assert s.valid == 30 and s.passed == 30


def test_oracle_catches_wrong_exponent():
    # swap the twist for the closed-form exponent t = d = 2 on the layered spec
    spec = AbelianCoverSpec(1, (Layer(2, F), Layer(4, parse("x^3 + 3"))), 2)
    con = build(spec)
    eqs = list(con.twist.variety.equations)
    eqs[1] = parse("(x[1][1]^3 + 3)^2*Z[2]^4 - (x^3 + 3)")
    bad = type(con)(**{**con.__dict__, "twist": type(con.twist)(
        **{**con.twist.__dict__, "variety": type(con.twist.variety)(
            **{**con.twist.variety.__dict__, "equations": tuple(eqs)})})})
    s = run_oracle(bad, 13, 30, seed=5)
    assert s.passed < s.valid
