import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fibgf import (
    NOT_INTEGER,
    Params,
    Poly,
    PreconditionError,
    RatFn,
    X,
    classify_f,
    classify_f_rational,
    classify_l,
    classify_l_rational,
    eval_f,
    eval_l,
    fib_poly,
    lucas_poly,
    scan_f,
    scan_l,
    solve_f,
    solve_l,
)
from fibgf.classifier import (
    case_roots_f,
    case_roots_l,
    eval_f_rational,
    eval_l_rational,
    family_member,
)
from fibgf.exact_arith import is_integer_poly
from fibgf.sequences import Family

from . import oracles
from .conftest import MATRIX

U = Params(1, 1)
FR, NFR, LR, NLR = Family.F_RATIO, Family.NEG_F_RATIO_OVER_B, Family.L_RATIO, Family.NEG_L_RATIO_OVER_B


def test_eval_f_examples():
    assert eval_f(U, RatFn(Poly())) == RatFn(Poly())
    assert eval_f(U, RatFn(X, X**2 + 1)) == RatFn(X**3 + X)
    assert eval_f(U, RatFn(Poly([Fraction(1, 2)]))) == RatFn(Poly([2]), -2 * X + 3)


def test_eval_l_examples():
    assert eval_l(U, RatFn(Poly())) == RatFn(Poly([2]))
    assert eval_l(U, RatFn(X, X**2 + 2)) == RatFn(X**2 + 2)
    assert eval_l(U, RatFn(-X / 2)) == RatFn(Poly([2]))


def test_eval_has_no_pole_over_rational_functions(params):
    # the denominator vanishes only at roots of b t^2 + a x t - 1, which are irrational in Q(x)
    for q in (RatFn(Poly([2]), X), RatFn(-X, Poly([params.b])), RatFn(X**2 + 1, X - 3)):
        eval_f(params, q)
        eval_l(params, q)


def test_classify_f_examples():
    r = classify_f(U, RatFn(X, X**2 + 1))
    assert (r.verdict, r.index, r.value) == ("FRatio", 2, X**3 + X)
    r = classify_f(U, RatFn(-(X**2) - 1, X))
    assert (r.verdict, r.index, r.value) == ("NegFRatioOverB", 2, X**3 + X)
    assert classify_f(U, RatFn(Poly([Fraction(1, 2)]))).verdict == NOT_INTEGER


def test_classify_l_examples():
    # l(2/(ax)) has numerator 2 - ax * 2/(ax) = 0
    r = classify_l(U, RatFn(Poly([2]), X))
    assert (r.label, r.value) == ("LRatio(0)", Poly())
    r = classify_l(U, RatFn(X, X**2 + 2))
    assert (r.label, r.value) == ("LRatio(1)", X**2 + 2)
    r = classify_l(U, RatFn(-X / 2))
    assert (r.label, r.value) == ("NegLRatioOverB(0)", Poly([2]))


def test_classify_requires_divisibility():
    with pytest.raises(PreconditionError, match="b must divide a"):
        classify_f(Params(3, 2), RatFn(Poly()))


def test_solve_f_examples():
    assert solve_f(U, Poly()) == {RatFn(Poly())}
    assert solve_f(U, X**3 + X) == {RatFn(X, X**2 + 1), RatFn(-(X**2) - 1, X)}
    assert solve_f(U, Poly([1])) == set()


def test_solve_l_examples():
    assert solve_l(U, Poly()) == {RatFn(Poly([2]), X)}
    assert solve_l(U, Poly([2])) == {RatFn(Poly()), RatFn(-X / 2)}
    roots = solve_l(U, X**2 + 2)
    assert roots == {RatFn(X, X**2 + 2), RatFn(-X)}
    assert all(eval_l(U, q) == RatFn(X**2 + 2) for q in roots)


def test_solve_rejects_rational_k():
    with pytest.raises(PreconditionError):
        solve_f(U, X / 2)


def test_rational_examples():
    r = classify_f_rational(U, Fraction(1, 2))
    assert (r.label, r.value) == ("FRatio(2)", 2)
    r = classify_f_rational(U, Fraction(-1))
    assert (r.label, r.value) == ("NegFRatioOverB(1)", -1)
    assert classify_f_rational(U, Fraction(1, 3)).verdict == NOT_INTEGER
    assert eval_f_rational(U, Fraction(1, 3)) == Fraction(3, 5)
    r = classify_l_rational(U, Fraction(1, 3))
    assert (r.label, r.value) == ("LRatio(1)", 3)
    r = classify_l_rational(U, Fraction(4, 7))
    assert (r.label, r.value) == ("LRatio(3)", 14)
    assert classify_l_rational(U, Fraction(1, 4)).verdict == NOT_INTEGER


def test_rational_pole():
    # a^2 + 4b = 9 for a = 1, b = 2, so 1 - t - 2t^2 vanishes at t = 1/2 and t = -1
    p = Params(1, 2)
    assert eval_f_rational(p, Fraction(1, 2)) is None
    assert eval_l_rational(p, Fraction(-1)) is None
    assert eval_f_rational(U, Fraction(0)) == 0
    assert eval_l_rational(U, Fraction(0)) == 2


def test_scan_f_examples():
    q = Fraction
    assert scan_f(U, 13) == [(0, 0), (q(1, 2), 2), (q(3, 5), 15), (q(8, 13), 104)]
    assert scan_f(U, 1) == [(0, 0)]
    v = eval_f_rational(Params(2, 2), q(1, 3))
    assert scan_f(Params(2, 2), 3) == [(0, 0), (q(1, 3), v)]
    with pytest.raises(PreconditionError):
        scan_f(U, 0)


def test_scan_l_unit_params_includes_negative_half():
    # -1/2 = -L_1/(b L_0) lies inside the radius (about 0.618) and l(-1/2) = 2
    q = Fraction
    assert eval_l_rational(U, q(-1, 2)) == 2
    assert scan_l(U, 7) == [(q(-1, 2), 2), (0, 2), (q(1, 3), 3), (q(1, 2), 6), (q(4, 7), 14), (q(3, 5), 35)]
    assert scan_l(U, 2) == [(q(-1, 2), 2), (0, 2), (q(1, 2), 6)]
    with pytest.raises(PreconditionError):
        scan_l(U, 0)


@pytest.mark.parametrize("ab", MATRIX)
@pytest.mark.parametrize("lucas", [False, True])
def test_scan_matches_brute_force(ab, lucas):
    p = Params(*ab)
    got = (scan_l if lucas else scan_f)(p, 60)
    assert got == oracles.brute_scan(*ab, 60, lucas)


@pytest.mark.parametrize("ab", MATRIX[1:])
def test_scan_l_is_the_stated_union_away_from_unit_params(ab):
    a, b = ab
    p = Params(a, b)
    fs, ls = oracles.fib_numbers(a, b, 40), oracles.fib_numbers(a, b, 40, lucas=True)
    expected = set()
    for i in range(19):
        for t in (Fraction(fs[2 * i], fs[2 * i + 1]), Fraction(ls[2 * i + 1], ls[2 * i + 2])):
            if t.denominator <= 200:
                expected.add(t)
    assert {t for t, _ in scan_l(p, 200)} == expected


# (family for even n, family for odd n) as worked out in the case-by-case reductions
CASE_TABLE = {
    "A": (FR, NFR),
    "B": (NFR, FR),
    "C": (FR, LR),
    "D": (NLR, NFR),
    "E": (NFR, NLR),
    "F": (LR, FR),
}


@pytest.mark.parametrize("n", range(0, 9))
def test_case_formulas_reduce_per_parity(params, n):
    cases = dict(case_roots_l(params, n))
    if n >= 1:
        cases.update(case_roots_f(params, n))
    for name, q in cases.items():
        fam = CASE_TABLE[name][n % 2]
        assert q == family_member(params, fam, n), (name, n)


@pytest.mark.parametrize("i", range(0, 10))
def test_case_coverage_of_solutions(params, i):
    for fams, classify, solve, case_roots in (
        ((FR, NFR), classify_f, solve_f, lambda n: case_roots_f(params, n) if n >= 1 else {}),
        ((FR, LR, NLR, NFR), classify_l, solve_l, lambda n: case_roots_l(params, n)),
    ):
        for fam in fams:
            if i < fam.min_index:
                continue
            res = classify(params, family_member(params, fam, i))
            for q in solve(params, res.value):
                named = classify(params, q)
                member = family_member(params, Family(named.verdict), named.index)
                assert q.num * member.den == member.num * q.den
                if not q.num.is_zero() or classify is classify_l:
                    assert q in case_roots(named.index).values() or q == RatFn(Poly([2]), params.a * X)


def _random_poly(rng, max_deg=6, bound=20):
    return Poly([rng.randint(-bound, bound) for _ in range(rng.randint(0, max_deg) + 1)])


def _random_q(rng, params):
    # a third of the draws are disguised family members, so both verdicts are exercised
    if rng.random() < 1 / 3:
        fam = rng.choice(list(Family))
        num, den = fam.member(params, rng.randint(fam.min_index, 5))
        c = _random_poly(rng, 1, 3)
        if not c.is_zero():
            return num * c, den * c
    den = _random_poly(rng)
    while den.is_zero():
        den = _random_poly(rng)
    return _random_poly(rng), den


def _numerators(p):
    return [int(c) for c in p.coeffs]


@pytest.mark.parametrize("seed", range(4))
def test_classify_agrees_with_long_division(params, seed):
    rng = random.Random(seed)
    for _ in range(150):
        num, den = _random_q(rng, params)
        for lucas, classify in ((False, classify_f), (True, classify_l)):
            expected = oracles.gf_is_integral_poly(params.a, params.b, _numerators(num), _numerators(den), lucas)
            if expected is None:
                with pytest.raises(PreconditionError):
                    classify(params, RatFn(num, den))
                continue
            assert (classify(params, RatFn(num, den)).verdict != NOT_INTEGER) == expected


@settings(max_examples=300)
@given(st.sampled_from(MATRIX), st.fractions(max_denominator=400).filter(lambda t: abs(t) < 3))
def test_rational_classification_matches_direct_evaluation(ab, t):
    p = Params(*ab)
    for lucas, classify, direct in (
        (False, classify_f_rational, oracles.f_rational),
        (True, classify_l_rational, oracles.l_rational),
    ):
        v = direct(*ab, t)
        r = classify(p, t)
        integral = v is not None and v.denominator == 1
        assert (r.verdict != NOT_INTEGER) == integral
        if integral:
            assert r.value == v
            assert r.witness == t


@given(st.sampled_from(MATRIX), st.integers(0, 12))
def test_rational_family_members_classify(ab, i):
    p = Params(*ab)
    for fam in Family:
        if i < fam.min_index:
            continue
        num, den = fam.member(p, i)
        t = Fraction(num(1)) / den(1)
        for classify in (classify_l_rational,) + ((classify_f_rational,) if fam in (FR, NFR) else ()):
            r = classify(p, t)
            assert r.verdict != NOT_INTEGER
            assert r.witness == t


def test_value_formulas_for_each_family(params):
    b = params.b
    for i in range(0, 8):
        F, L = fib_poly(params, i), lucas_poly(params, i)
        F1, L1 = fib_poly(params, i + 1), lucas_poly(params, i + 1)
        sgn = (-b) ** i
        assert classify_f(params, family_member(params, FR, i)).value == F * F1 / sgn
        # F_i/F_{i+1} shares its l-value with -L_{i+1}/(b L_i); L_i/L_{i+1} shares one with -F_{i+1}/(b F_i)
        l_pair_one = classify_l(params, family_member(params, FR, i)).value
        assert l_pair_one == classify_l(params, family_member(params, NLR, i)).value
        l_pair_two = classify_l(params, family_member(params, LR, i)).value
        assert l_pair_two == L1 * F / -sgn
        assert is_integer_poly(l_pair_one)
        if i >= 1:
            assert classify_f(params, family_member(params, NFR, i)).value == F * F1 / sgn
