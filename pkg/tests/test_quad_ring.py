from decimal import Decimal, getcontext
from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from fibgf import (
    Params,
    PreconditionError,
    QuadNum,
    RadiusSpec,
    counterexample_report,
    eval_f_quad,
    eval_l_quad,
    in_z_sqrt_d,
    quad_arith,
    quad_family_membership,
    within_radius,
)
from fibgf.classifier import eval_f_rational, eval_l_rational
from fibgf.errors import ParseError
from fibgf.quad_ring import format_quad, is_square_free, parse_quad
from fibgf.sequences import Family, seq_at

from .conftest import MATRIX

R2 = QuadNum.sqrt(2)
SQUARE_FREE = [1, 2, 3, 5, 6, 7, 10, 11, 13]

rats = st.builds(Fraction, st.integers(-2000, 2000), st.integers(1, 60))


def quads(d=None):
    ds = st.just(d) if d else st.sampled_from(SQUARE_FREE)
    return st.builds(QuadNum, rats, rats, ds)


def test_arith_examples():
    assert (2 + R2) * (2 - R2) == 2
    assert 1 / (2 + R2) == QuadNum(1, Fraction(-1, 2), 2)
    r3 = QuadNum.sqrt(3)
    assert quad_arith("add", 1 + r3, 2 - r3) == 3
    assert quad_arith("div", QuadNum(1, 0, 2), 2 + R2) == 1 - R2 / 2
    with pytest.raises(PreconditionError):
        quad_arith("add", R2, r3)
    with pytest.raises(PreconditionError):
        quad_arith("div", R2, QuadNum(0, 0, 2))


def test_square_free_validation():
    assert [d for d in range(1, 20) if is_square_free(d)] == [1, 2, 3, 5, 6, 7, 10, 11, 13, 14, 15, 17, 19]
    for d in (0, 4, 12, -3):
        with pytest.raises(PreconditionError):
            QuadNum(1, 1, d)


def test_eval_examples():
    assert eval_f_quad(Params(2, 1), 2, 1 / (2 + R2)) == 2 + R2
    assert eval_f_quad(Params(2, 1), 2, QuadNum(0, 0, 2)) == 0
    assert eval_f_quad(Params(1, 1), 1, QuadNum(Fraction(1, 2))) == 2
    assert eval_l_quad(Params(1, 1), 2, (6 - 5 * R2) / 7) == 16 - 10 * R2
    assert eval_l_quad(Params(1, 1), 2, QuadNum(0, 0, 2)) == 2
    assert eval_l_quad(Params(1, 1), 1, QuadNum(Fraction(1, 3))) == 3


def test_in_z_sqrt_d():
    assert in_z_sqrt_d(2 + R2)
    assert not in_z_sqrt_d((6 - 5 * R2) / 7)
    assert in_z_sqrt_d(QuadNum(0, 0, 2))


def test_within_radius_examples():
    assert within_radius(RadiusSpec(Params(2, 1), 2), 1 / (2 + R2))
    assert within_radius(RadiusSpec(Params(1, 1), 2), (6 - 5 * R2) / 7)
    for a, b in MATRIX:
        for d in (1, 2, 7):
            assert within_radius(RadiusSpec(Params(a, b), d), QuadNum(0, 0, d))
    with pytest.raises(PreconditionError):
        within_radius(RadiusSpec(Params(1, 1), 3), R2)


def test_radius_is_open():
    # for a = b = 1, d = 5 the radius 2/(sqrt5 + sqrt9) = (3 - sqrt5)/2 is itself in Q(sqrt 5)
    r5 = QuadNum.sqrt(5)
    edge = (3 - r5) / 2
    spec = RadiusSpec(Params(1, 1), 5)
    assert not within_radius(spec, edge)
    assert not within_radius(spec, -edge)
    assert within_radius(spec, edge - Fraction(1, 10**30))


def test_membership_examples():
    rep = quad_family_membership(Params(2, 1), 2, 1 / (2 + R2), "f")
    assert not rep.is_member and set(rep.indices) == {Family.F_RATIO, Family.NEG_F_RATIO_OVER_B}
    rep = quad_family_membership(Params(1, 1), 2, (6 - 5 * R2) / 7, "l")
    assert not rep.is_member and len(rep.indices) == 4
    rep = quad_family_membership(Params(1, 1), 1, QuadNum(Fraction(1, 2)), "f")
    assert rep.indices[Family.F_RATIO] == 2
    with pytest.raises(PreconditionError):
        quad_family_membership(Params(1, 1), 2, R2, "g")


@given(st.sampled_from(MATRIX), st.sampled_from([2, 3, 5]), st.integers(0, 15))
def test_membership_finds_members(ab, d, i):
    p = Params(*ab)
    point = QuadNum.sqrt(d)
    for fam in Family:
        if i < fam.min_index:
            continue
        num, den = fam.member(p, i)
        t = num(point) / den(point)
        which = "f" if fam in (Family.F_RATIO, Family.NEG_F_RATIO_OVER_B) else "l"
        assert quad_family_membership(p, d, t, which).indices[fam] == i


def test_counterexample_report():
    entries = counterexample_report()
    assert [(e.fn, e.params.a, e.params.b, e.d) for e in entries] == [("f", 2, 1, 2), ("l", 1, 1, 2)]
    for e in entries:
        assert e.ok, e.as_dict()
        assert "not a counterexample" in e.d1_note or "classification holds" in e.d1_note


def test_format_and_parse():
    cases = {
        "1 - 1/2*sqrt(2)": QuadNum(1, Fraction(-1, 2), 2),
        "16 - 10*sqrt(2)": 16 - 10 * R2,
        "sqrt(2)": R2,
        "-sqrt(2)": -R2,
        "3": QuadNum(3, 0, 2),
        "22*sqrt(2)": 22 * R2,
        "12/35 + 103/7*sqrt(2)": QuadNum(Fraction(12, 35), Fraction(103, 7), 2),
    }
    for text, value in cases.items():
        assert format_quad(value) == text
        assert parse_quad(text, 2) == value
    assert parse_quad("6/7 - 5/7*sqrt(d)", 2) == (6 - 5 * R2) / 7
    assert parse_quad("-2sqrt(2)", 2) == parse_quad("- 2 * sqrt(2)", 2) == -2 * R2
    for bad in ("", "1 sqrt(2)", "sqrt(3)", "1/0", "1 + 2 sqrt(2)"):
        with pytest.raises(ParseError):
            parse_quad(bad, 2)


@given(quads())
def test_format_round_trip(t):
    assert parse_quad(format_quad(t), t.d) == t


@given(st.sampled_from(SQUARE_FREE[1:]).flatmap(lambda d: st.tuples(quads(d), quads(d), quads(d))))
def test_field_axioms(stu):
    s, t, u = stu
    assert (s + t) + u == s + (t + u)
    assert (s * t) * u == s * (t * u)
    assert s * (t + u) == s * t + s * u
    assert s * t == t * s
    if t != 0:
        assert (s * t) * t.inverse() == s
        assert (s / t) * t == s


@given(st.sampled_from(SQUARE_FREE[1:]).flatmap(lambda d: st.tuples(quads(d), quads(d))))
def test_conjugation_is_a_homomorphism(st_):
    s, t = st_
    assert (s * t).conj() == s.conj() * t.conj()
    assert (s + t).conj() == s.conj() + t.conj()
    n = s * s.conj()
    assert n.v == 0 and n.u == s.norm()


def _decimal(t):
    getcontext().prec = 80
    return Decimal(t.u.numerator) / t.u.denominator + Decimal(t.v.numerator) / t.v.denominator * Decimal(t.d).sqrt()


@given(quads())
def test_order_matches_high_precision(t):
    x = _decimal(t)
    assert t.sign() == (x > 0) - (x < 0)


@given(st.sampled_from(MATRIX), quads())
def test_within_radius_matches_high_precision(ab, t):
    a, b = ab
    getcontext().prec = 80
    sd = Decimal(t.d).sqrt()
    rho = 2 / (a * sd + (a * a * t.d + 4 * b) ** Decimal("0.5"))
    gap = rho - abs(_decimal(t))
    assume(abs(gap) > Decimal(10) ** -40)
    assert within_radius(RadiusSpec(Params(a, b), t.d), t) == (gap > 0)


@given(st.sampled_from(MATRIX), st.sampled_from([2, 3, 5]), quads(), quads())
def test_within_radius_is_monotone(ab, d, s, t):
    s, t = QuadNum(s.u, s.v, d), QuadNum(t.u, t.v, d)
    if abs(s) > abs(t):
        s, t = t, s
    spec = RadiusSpec(Params(*ab), d)
    if within_radius(spec, t):
        assert within_radius(spec, s)


@given(st.sampled_from(MATRIX), rats)
def test_d1_agrees_with_rational_evaluation(ab, q):
    p = Params(*ab)
    t = QuadNum(q)
    for quad_eval, rat_eval in ((eval_f_quad, eval_f_rational), (eval_l_quad, eval_l_rational)):
        expected = rat_eval(p, q)
        if expected is None:
            with pytest.raises(PreconditionError):
                quad_eval(p, 1, t)
        else:
            assert quad_eval(p, 1, t) == QuadNum(expected)


@pytest.mark.parametrize("d", [2, 3, 5, 6])
def test_cassini_at_sqrt_d(params, d):
    point = QuadNum.sqrt(d)
    F = [seq_at(params, "F", n, point) for n in range(32)]
    for n in range(1, 31):
        assert F[n] * F[n] - F[n - 1] * F[n + 1] == (-params.b) ** (n - 1)
