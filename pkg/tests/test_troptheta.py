import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from troparith.errors import RadicalViolation, UnboundedBelow
from troparith.quadform import Covector, QuadChar, shift_char, translate
from troparith.sampling import random_pair
from troparith.troptheta import (ThetaValue, cocycle_check_c, cocycle_check_pl, conical_c,
                                 theta_eq, theta_inv, theta_inv_direct, theta_pl,
                                 verify_admissibility)

import oracles
from strategies import int_vectors, pairs

F = Fraction


def q1(char):
    return QuadChar([[2]], [char])


def test_theta_pl_examples():
    assert theta_pl(q1(1), Covector((0,))).value == F(1, 4)
    assert theta_pl(q1(1), Covector((0,))).witnesses == ((0,), (1,))
    assert theta_pl(q1(0), Covector((0,))).value == 0
    t = theta_pl(q1(0), Covector((2,)))
    assert t.value == -1 and t.witnesses == ((-1,),) and t.kind == "pl"


def test_theta_eq_examples():
    assert theta_eq(q1(0), Covector((F(1, 2),))).value == F(-1, 16)
    assert theta_eq(QuadChar([[4, 2], [2, 4]], [1, 1]), Covector((0, 0))).value == 0
    assert theta_eq(q1(1), Covector((1,))).value == F(1, 4)
    with pytest.raises(RadicalViolation):
        theta_eq(QuadChar([[2, 0], [0, 0]], [0, 0]), Covector((0, 1)))


def test_theta_inv_examples():
    assert theta_inv(q1(0), Covector((F(1, 2),))).value == F(1, 16)
    assert theta_inv(q1(1), Covector((0,))).value == F(1, 4)
    assert theta_inv(q1(0), Covector((0,))).value == 0
    with pytest.raises(UnboundedBelow):
        theta_inv(QuadChar([[2, 0], [0, 0]], [0, 0]), Covector((0, 1)))


def test_theta_inv_direct_examples():
    t = theta_inv_direct(q1(1), Covector((0,)))
    assert t.value == F(1, 4) and set(t.witnesses) == {(0,), (1,)}
    t = theta_inv_direct(q1(0), Covector((F(1, 2),)))
    assert t.value == F(1, 16) and t.witnesses == ((0,),)
    q = QuadChar([[4, 2], [2, 4]], [1, 1])
    t = theta_inv_direct(q, q.half_char_covector)
    assert t.value == 0 and (0, 0) in t.witnesses


def test_conical_c_examples():
    assert conical_c(q1(1), Covector((0,))).value == F(1, 4)
    q = QuadChar([[4, 2], [2, 4]], [1, 0])
    assert conical_c(q, Covector((0, 0))).value == theta_pl(q, Covector((0, 0))).value
    assert conical_c(q1(0), Covector((F(1, 2),))).value == F(1, 16)
    assert conical_c(q1(0), Covector((0,))).kind == "c"


def test_cocycle_examples():
    assert cocycle_check_pl(q1(0), Covector((0,)), (1,)) == (1, 1)
    assert cocycle_check_pl(q1(0), Covector((F(1, 3),)), (0,)) == (0, 0)
    assert cocycle_check_pl(q1(1), Covector((1,)), (1,)) == (1, 1)
    assert cocycle_check_c(q1(0), Covector((F(1, 2),)), (1,)) == (F(1, 16), F(1, 16))
    lhs, rhs = cocycle_check_c(q1(0), Covector((F(1, 2),)), (0,))
    assert lhs == rhs
    lhs, rhs = cocycle_check_c(QuadChar([[4, 2], [2, 4]], [0, 0]), Covector((1, 0)), (0, 1))
    assert lhs == rhs


def test_kind_is_checked():
    with pytest.raises(ValueError):
        ThetaValue(F(0), (), "xyz")


def test_admissibility_examples():
    q, l = q1(0), Covector((3,))
    assert theta_pl(q, l).value == -2
    assert theta_pl(q.scaled(2), l.scale(2)).value == -4
    # midpoint between (B=2, l=0) and (B=2, l=2)
    left, right = theta_pl(q, Covector((0,))).value, theta_pl(q, Covector((2,))).value
    assert (left + right) / 2 == F(-1, 2)
    assert theta_pl(q, Covector((1,))).value == 0 >= (left + right) / 2


def test_admissibility_report_is_clean():
    sampler = lambda rng, g=None: random_pair(rng, g, gmax=3)
    report = verify_admissibility(sampler, 30, seed=3)
    assert report.ok, report.counterexamples
    assert all(n == 30 for n in report.checked.values())


def test_admissibility_report_catches_a_wrong_phi():
    # An additive constant is not conical.
    def wrong(q, l):
        t = theta_pl(q, l)
        return ThetaValue(t.value + 1, t.witnesses, "pl")
    sampler = lambda rng, g=None: random_pair(rng, g, gmax=2)
    report = verify_admissibility(sampler, 20, seed=1, phi=wrong)
    assert not report.ok
    assert report.counterexamples["homogeneity"]


@given(pairs(definite=True))
def test_theta_pl_matches_brute_force(pair):
    q, l = pair
    value, _ = oracles.brute_min(q.gram, q.char, l.coeffs)
    rho = q.char
    q_rho = sum(F(q.gram[i][j]) * rho[i] * rho[j] for i in range(q.rank) for j in range(q.rank))
    assert theta_pl(q, l).value == value + q_rho / 8


@given(pairs(definite=True))
def test_theta_eq_matches_dual_form(pair):
    q, l = pair
    expected = -oracles.dual_form(q.gram, l.coeffs) / 2 + sum(a * r for a, r in zip(l.coeffs, q.char)) / 2
    assert theta_eq(q, l).value == expected


@given(pairs())
def test_decomposition_and_direct_formula(pair):
    q, l = pair
    pl, eq, inv = theta_pl(q, l), theta_eq(q, l), theta_inv(q, l)
    assert pl.value == eq.value + inv.value
    assert inv.value == theta_inv_direct(q, l).value
    assert inv.value >= 0
    assert conical_c(q, l).value == inv.value


@given(pairs(), st.data())
def test_translation_invariance(pair, data):
    q, l = pair
    v = data.draw(int_vectors(q.rank))
    assert theta_inv(q, translate(q, l, v)).value == theta_inv(q, l).value
    lhs, rhs = cocycle_check_pl(q, l, v)
    assert lhs == rhs
    lhs, rhs = cocycle_check_c(q, l, v)
    assert lhs == rhs


@given(pairs())
def test_minimum_zero_at_half_characteristic(pair):
    q, _ = pair
    assert theta_inv(q, q.half_char_covector).value == 0


@given(pairs(), st.data())
def test_even_shift_of_characteristic(pair, data):
    q, l = pair
    u = data.draw(int_vectors(q.rank, 2))
    q2 = shift_char(q, tuple(r + 2 * x for r, x in zip(q.char, u)))
    assert theta_inv(q2, l).value == theta_inv(q, l).value
    assert theta_inv_direct(q2, l).value == theta_inv_direct(q, l).value
    assert theta_pl(q2, l).value == theta_pl(q, l).value + l(u)


@given(pairs())
def test_even_for_zero_characteristic(pair):
    q, l = pair
    q0 = QuadChar(q.gram, (0,) * q.rank)
    assert theta_inv(q0, -l).value == theta_inv(q0, l).value


@given(pairs(definite=True, gmax=2), st.data())
def test_theta_pl_concave_along_covectors(pair, data):
    q, l = pair
    l2 = Covector(tuple(data.draw(st.integers(-12, 12)) / F(data.draw(st.integers(1, 6)))
                        for _ in range(q.rank)))
    mid = theta_pl(q, (l + l2).scale(F(1, 2))).value
    assert 2 * mid >= theta_pl(q, l).value + theta_pl(q, l2).value


def test_many_random_instances_reproducible():
    rng = random.Random(7)
    values = [theta_inv(*random_pair(rng)).value for _ in range(20)]
    rng = random.Random(7)
    assert values == [theta_inv(*random_pair(rng)).value for _ in range(20)]
