"""Where do ``f(x, t) = t/(1 - a x t - b t^2)`` and ``l(x, t) = (2 - a x t)/(1 - a x t - b t^2)``
take integral values?

For ``b | a`` the answer is exactly the ratio families of
:class:`fibgf.sequences.Family`: two of them for ``f``, all four for ``l``.
This module evaluates, classifies, and inverts (given the value ``k``, finds
every ``q``), both over Q(x) and over Q with ``x = 1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import ConsistencyError, PreconditionError
from .exact_arith import X, Poly, RatFn, format_poly, format_ratfn, is_integer_poly, poly_square_root
from .pell_descent import descend, descend_int
from .quad_ring import QuadNum, RadiusSpec, within_radius
from .sequences import Family, Params, fib_poly, family_index, lucas_poly

NOT_INTEGER = "NotInteger"

F_FAMILIES = (Family.F_RATIO, Family.NEG_F_RATIO_OVER_B)
L_FAMILIES = (Family.F_RATIO, Family.L_RATIO, Family.NEG_L_RATIO_OVER_B, Family.NEG_F_RATIO_OVER_B)


@dataclass(frozen=True)
class ClassifyResult:
    verdict: str  # a Family value or NOT_INTEGER
    index: int | None = None
    value: Union[Poly, int, None] = None
    witness: Union[RatFn, Fraction, None] = None

    @property
    def label(self) -> str:
        return self.verdict if self.index is None else f"{self.verdict}({self.index})"

    def as_dict(self) -> dict:
        out: dict = {"verdict": self.verdict, "index": self.index, "label": self.label}
        if isinstance(self.value, Poly):
            out["value"] = format_poly(self.value)
        elif self.value is not None:
            out["value"] = str(self.value)
        else:
            out["value"] = None
        if isinstance(self.witness, RatFn):
            out["witness"] = format_ratfn(self.witness)
        else:
            out["witness"] = None if self.witness is None else str(self.witness)
        return out


def family_member(params: Params, family: Family | str, i: int) -> RatFn:
    num, den = Family(family).member(params, i)
    return RatFn(num, den)


# -- evaluation over Q(x) ----------------------------------------------

def _gf_parts(params: Params, q: RatFn) -> tuple[Poly, Poly, Poly]:
    """``N, M, M^2 - a x N M - b N^2`` for ``q = N/M``."""
    n, m = q.num, q.den
    ax = params.a * X
    den = m * m - ax * n * m - params.b * n * n
    if den.is_zero():
        raise PreconditionError(f"pole of the generating function at q = {format_ratfn(q)}")
    return n, m, den


def eval_f(params: Params, q: RatFn) -> RatFn:
    n, m, den = _gf_parts(params, q)
    return RatFn(n * m, den)


def eval_l(params: Params, q: RatFn) -> RatFn:
    n, m, den = _gf_parts(params, q)
    return RatFn(2 * m * m - params.a * X * n * m, den)


def _integral_value(value: RatFn) -> Poly | None:
    if value.is_poly() and is_integer_poly(value.num):
        return value.num
    return None


def _search_families(params: Params, q: RatFn, families) -> tuple[Family, int] | None:
    bound = max(q.num.degree, q.den.degree, 0) + 2
    for i in range(bound + 1):
        for fam in families:
            if i < fam.min_index:
                continue
            num, den = fam.member(params, i)
            if q.num * den == num * q.den:
                return fam, i
    return None


def _classify(params: Params, q: RatFn, families, evaluate) -> ClassifyResult:
    params.require_b_divides_a()
    value = _integral_value(evaluate(params, q))
    if value is None:
        return ClassifyResult(NOT_INTEGER)
    hit = _search_families(params, q, families)
    if hit is None:
        raise ConsistencyError(
            f"value {format_poly(value)} is in Z[x] but q = {format_ratfn(q)} matches no family"
        )
    fam, i = hit
    return ClassifyResult(fam.value, i, value, family_member(params, fam, i))


def classify_f(params: Params, q: RatFn) -> ClassifyResult:
    return _classify(params, q, F_FAMILIES, eval_f)


def classify_l(params: Params, q: RatFn) -> ClassifyResult:
    return _classify(params, q, L_FAMILIES, eval_l)


# -- inversion ------------------------------------------------------------

def case_roots_f(params: Params, n: int) -> dict[str, RatFn]:
    """Closed forms (A), (B) for the roots of ``f(x, q) = F_n F_{n+1} / (-b)^n``, ``n >= 1``."""
    if n < 1:
        raise PreconditionError("the f case formulas need n >= 1")
    b = params.b
    fn, fn1, f2n1 = fib_poly(params, n), fib_poly(params, n + 1), fib_poly(params, 2 * n + 1)
    base = -params.a * X * fn * fn1 - (-b) ** n
    den = 2 * b * fn * fn1
    sign = (-1) ** n
    return {"A": RatFn(base + sign * f2n1, den), "B": RatFn(base - sign * f2n1, den)}


def case_roots_l(params: Params, n: int) -> dict[str, RatFn]:
    """Closed forms (C)-(F) for the roots of ``l(x, q) = 1 +- F_{2n+1}/b^n``.

    (C), (D) need ``n >= 0``; (E), (F) only exist for ``n >= 1``.
    """
    if n < 0:
        raise PreconditionError("the l case formulas need n >= 0")
    b = params.b
    ax = params.a * X
    f, l = fib_poly(params, 2 * n + 1), lucas_poly(params, 2 * n + 1)
    bn = b ** n
    out = {
        "C": RatFn(-ax * f + l, 2 * b * (f + bn)),
        "D": RatFn(-ax * f - l, 2 * b * (f + bn)),
    }
    if n >= 1:
        out["E"] = RatFn(ax * f + l, 2 * b * (bn - f))
        out["F"] = RatFn(ax * f - l, 2 * b * (bn - f))
    return out


def _require_k(params: Params, k: Poly) -> None:
    params.require_b_divides_a()
    if not is_integer_poly(k):
        raise PreconditionError(f"k must have integer coefficients, got {format_poly(k)}")


def _normalize_sign(p: Poly) -> Poly:
    return -p if p.lc < 0 else p


def _roots(a2: Poly, a1: Poly, root_disc: Poly) -> set[RatFn]:
    """Roots of ``a2 q^2 + a1 q + c`` given the square root of the discriminant."""
    return {RatFn(-a1 + root_disc, 2 * a2), RatFn(-a1 - root_disc, 2 * a2)}


def _cross_check(roots: set[RatFn], cases: dict[str, RatFn], what: str) -> None:
    for r in roots:
        if not any(r == c for c in cases.values()):
            raise ConsistencyError(f"{what}: root {format_ratfn(r)} matches none of the case formulas")


def solve_f(params: Params, k: Poly) -> set[RatFn]:
    """All ``q`` in Q(x) with ``f(x, q) == k``."""
    _require_k(params, k)
    if k.is_zero():
        return {RatFn(0)}
    ax = params.a * X
    disc = (ax * k + 1) ** 2 + 4 * params.b * k * k
    m = poly_square_root(disc)
    if m is None:
        return set()
    roots = {q for q in _roots(params.b * k, ax * k + 1, m) if eval_f(params, q) == k}
    if roots:
        # ((a^2x^2+4b)k + ax, M) solves the norm equation with value -4b;
        # its descent index 2n+1 pins down which case formulas apply.
        pell_p = _normalize_sign(params.disc * k + ax)
        result = descend(params, pell_p, m)
        if result.n % 2 != 1:
            raise ConsistencyError(f"descent for k = {format_poly(k)} returned even index {result.n}")
        _cross_check(roots, case_roots_f(params, result.n // 2), f"solve_f({format_poly(k)})")
    return roots


def solve_l(params: Params, k: Poly) -> set[RatFn]:
    """All ``q`` in Q(x) with ``l(x, q) == k``."""
    _require_k(params, k)
    ax = params.a * X
    if k.is_zero():
        return {RatFn(2, ax)}
    km1 = k - 1
    disc = ax * ax * km1 * km1 - 4 * params.b * k * (2 - k)
    m = poly_square_root(disc)
    if m is None:
        return set()
    roots = {q for q in _roots(params.b * k, ax * km1, m) if eval_l(params, q) == k}
    if roots:
        result = descend(params, m, _normalize_sign(km1))
        if result.n % 2 != 1:
            raise ConsistencyError(f"descent for k = {format_poly(k)} returned even index {result.n}")
        _cross_check(roots, case_roots_l(params, result.n // 2), f"solve_l({format_poly(k)})")
    return roots


# -- rational points (x = 1) ------------------------------------------

def _eval_rational(params: Params, q: Fraction, lucas: bool) -> Fraction | None:
    den = 1 - params.a * q - params.b * q * q
    if den == 0:
        return None
    return (2 - params.a * q) / den if lucas else q / den


def eval_f_rational(params: Params, q: Fraction) -> Fraction | None:
    """``f(q)`` at ``x = 1``; None at a pole."""
    return _eval_rational(params, Fraction(q), lucas=False)


def eval_l_rational(params: Params, q: Fraction) -> Fraction | None:
    return _eval_rational(params, Fraction(q), lucas=True)


def _isqrt_exact(n: int) -> int | None:
    if n < 0:
        return None
    r = math.isqrt(n)
    return r if r * r == n else None


def _descent_index_rational(params: Params, k: int, lucas: bool) -> int:
    """Family index predicted by integer descent for the value ``k != 0``."""
    a, b = params.a, params.b
    if lucas:
        m = _isqrt_exact(a * a * (k - 1) ** 2 - 4 * b * k * (2 - k))
        pair = (m, abs(k - 1))
    else:
        m = _isqrt_exact((a * k + 1) ** 2 + 4 * b * k * k)
        pair = (abs((a * a + 4 * b) * k + a), m)
    if m is None:
        raise ConsistencyError(f"integral value {k} but the discriminant is not a square")
    return descend_int(params, *pair) // 2


def _classify_rational(params: Params, q: Fraction, families, lucas: bool) -> ClassifyResult:
    params.require_b_divides_a()
    q = Fraction(q)
    value = _eval_rational(params, q, lucas)
    if value is None or value.denominator != 1:
        return ClassifyResult(NOT_INTEGER)
    k = value.numerator
    for fam in families:
        i = family_index(params, fam, q)
        if i is not None:
            break
    else:
        raise ConsistencyError(f"value {k} is an integer but q = {q} matches no family")
    if (k != 0) and _descent_index_rational(params, k, lucas) != i:
        raise ConsistencyError(f"q = {q}: family index {i} disagrees with the descent route")
    num, den = fam.member(params, i)
    return ClassifyResult(fam.value, i, k, Fraction(num(1), den(1)))


def classify_f_rational(params: Params, q: Fraction) -> ClassifyResult:
    return _classify_rational(params, q, F_FAMILIES, lucas=False)


def classify_l_rational(params: Params, q: Fraction) -> ClassifyResult:
    return _classify_rational(params, q, L_FAMILIES, lucas=True)


# -- scans over the interval of convergence ----------------------------

def candidates(params: Params, max_den: int) -> list[Fraction]:
    """Reduced rationals with denominator <= max_den strictly inside the radius, ascending."""
    if isinstance(max_den, bool) or not isinstance(max_den, int) or max_den < 1:
        raise PreconditionError(f"max_den must be a positive integer, got {max_den!r}")
    spec = RadiusSpec(params, 1)
    # radius < 1/a, so |num| < den/a bounds the candidate numerators
    out = []
    for den in range(1, max_den + 1):
        top = den // params.a
        for num in range(-top, top + 1):
            if math.gcd(num, den) != 1:
                continue
            q = Fraction(num, den)
            if within_radius(spec, QuadNum(q)):
                out.append(q)
    out.sort()
    return out


def _scan(params: Params, max_den: int, lucas: bool) -> list[tuple[Fraction, int]]:
    params.require_b_divides_a()
    out = []
    for q in candidates(params, max_den):
        value = _eval_rational(params, q, lucas)
        if value is not None and value.denominator == 1:
            out.append((q, value.numerator))
    return out


def scan_f(params: Params, max_den: int) -> list[tuple[Fraction, int]]:
    """Points inside the interval of convergence where ``f`` is an integer, by ascending ``q``."""
    return _scan(params, max_den, lucas=False)


def scan_l(params: Params, max_den: int) -> list[tuple[Fraction, int]]:
    return _scan(params, max_den, lucas=True)
