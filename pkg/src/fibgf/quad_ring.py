"""Exact arithmetic in Q(sqrt d) and the sqrt(d)-specialised generating functions."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Any

from .errors import ParseError, PreconditionError
from .sequences import Family, Params, family_index


def is_square_free(d: int) -> bool:
    if d < 1:
        return False
    k = 2
    while k * k <= d:
        if d % (k * k) == 0:
            return False
        k += 1
    return True


def _check_d(d: int) -> int:
    if isinstance(d, bool) or not isinstance(d, int) or not is_square_free(d):
        raise PreconditionError(f"d must be a square-free positive integer, got {d!r}")
    return d


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


@total_ordering
class QuadNum:
    """``u + v*sqrt(d)`` for a square-free ``d``, ordered as a real number."""

    __slots__ = ("u", "v", "d")

    def __init__(self, u: Any = 0, v: Any = 0, d: int = 1) -> None:
        u, v = Fraction(u), Fraction(v)
        _check_d(d)
        if d == 1:
            u, v = u + v, Fraction(0)
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "v", v)
        object.__setattr__(self, "d", d)

    def __setattr__(self, name, value):
        raise AttributeError("QuadNum is immutable")

    @classmethod
    def sqrt(cls, d: int) -> QuadNum:
        return cls(0, 1, d)

    def _coerce(self, other: object) -> QuadNum | None:
        if isinstance(other, QuadNum):
            if other.d != self.d:
                raise PreconditionError(f"mixed radicands sqrt({self.d}) and sqrt({other.d})")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadNum(other, 0, self.d)
        return None

    def is_rational(self) -> bool:
        return self.v == 0

    def conj(self) -> QuadNum:
        return QuadNum(self.u, -self.v, self.d)

    def norm(self) -> Fraction:
        return self.u * self.u - self.d * self.v * self.v

    def sign(self) -> int:
        su, sv = _sign(self.u), _sign(self.v)
        if sv == 0 or su == sv:
            return su or sv
        if su == 0:
            return sv
        # opposite signs: the larger magnitude wins
        return su if self.u * self.u > self.d * self.v * self.v else sv

    def __abs__(self) -> QuadNum:
        return -self if self.sign() < 0 else self

    def __add__(self, other: object) -> QuadNum:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadNum(self.u + o.u, self.v + o.v, self.d)

    __radd__ = __add__

    def __neg__(self) -> QuadNum:
        return QuadNum(-self.u, -self.v, self.d)

    def __sub__(self, other: object) -> QuadNum:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadNum(self.u - o.u, self.v - o.v, self.d)

    def __rsub__(self, other: object) -> QuadNum:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other: object) -> QuadNum:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadNum(
            self.u * o.u + self.d * self.v * o.v,
            self.u * o.v + self.v * o.u,
            self.d,
        )

    __rmul__ = __mul__

    def inverse(self) -> QuadNum:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("QuadNum division by zero")
        return QuadNum(self.u / n, -self.v / n, self.d)

    def __truediv__(self, other: object) -> QuadNum:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other: object) -> QuadNum:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int) -> QuadNum:
        if n < 0:
            return self.inverse() ** (-n)
        result, base = QuadNum(1, 0, self.d), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, QuadNum) and other.d != self.d:
            return False
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.u == o.u and self.v == o.v

    def __lt__(self, other: object) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() < 0

    def __hash__(self) -> int:
        if self.v == 0:
            return hash(self.u)
        return hash((self.u, self.v, self.d))

    def __repr__(self) -> str:
        return f"QuadNum({format_quad(self)!r}, d={self.d})"

    def __str__(self) -> str:
        return format_quad(self)


def quad_arith(op: str, s: QuadNum, t: QuadNum) -> QuadNum:
    if s.d != t.d:
        raise PreconditionError(f"mixed radicands sqrt({s.d}) and sqrt({t.d})")
    if op == "add":
        return s + t
    if op == "sub":
        return s - t
    if op == "mul":
        return s * t
    if op == "div":
        if t == 0:
            raise PreconditionError("division by zero in Q(sqrt d)")
        return s / t
    raise PreconditionError(f"unknown operation {op!r}")


def in_z_sqrt_d(t: QuadNum) -> bool:
    return t.u.denominator == 1 and t.v.denominator == 1


# -- text format --------------------------------------------------------

def format_quad(t: QuadNum) -> str:
    if t.v == 0:
        return str(t.u)
    mag = abs(t.v)
    radical = f"sqrt({t.d})" if mag == 1 else f"{mag}*sqrt({t.d})"
    if t.u == 0:
        return ("-" if t.v < 0 else "") + radical
    return f"{t.u} {'-' if t.v < 0 else '+'} {radical}"


_RAT = r"\d+(?:/\d+)?"
_QUAD_RE = re.compile(
    rf"""\s*(?:(?P<usign>[+-])?\s*(?P<u>{_RAT})(?![\d/]|\s*\*?\s*sqrt))?
        \s*(?:(?P<vsign>[+-])?\s*(?:(?P<v>{_RAT})(?:\s*\*\s*)?)?sqrt\(\s*(?P<rad>\d+|d)\s*\))?\s*""",
    re.VERBOSE,
)


def parse_quad(text: str, d: int) -> QuadNum:
    """Parse ``"u + v*sqrt(d)"``; either part may be omitted.

    The radicand may be written literally as ``d`` or as the integer ``d``.
    """
    _check_d(d)
    m = _QUAD_RE.fullmatch(text)
    if not m or (m.group("u") is None and m.group("rad") is None):
        raise ParseError(f"malformed quadratic number {text!r}", text, 0)
    if m.group("rad") is not None and m.group("rad") != "d" and int(m.group("rad")) != d:
        raise ParseError(f"radicand {m.group('rad')} does not match d={d}", text, m.start("rad"))
    if m.group("u") is not None and m.group("rad") is not None and m.group("vsign") is None:
        raise ParseError("expected '+' or '-' before the radical part", text, m.start("rad"))

    def rat(s: str | None, sign: str | None, default: int) -> Fraction:
        if s is None:
            value = Fraction(default)
        else:
            num, _, den = s.partition("/")
            if den and int(den) == 0:
                raise ParseError("zero denominator", text, 0)
            value = Fraction(int(num), int(den or 1))
        return -value if sign == "-" else value

    u = rat(m.group("u"), m.group("usign"), 0)
    v = rat(m.group("v"), m.group("vsign"), 1) if m.group("rad") is not None else Fraction(0)
    return QuadNum(u, v, d)


# -- generating functions at x = sqrt(d) ---------------------------------

def _gf_denominator(params: Params, d: int, t: QuadNum) -> QuadNum:
    if t.d != d:
        raise PreconditionError(f"point lives in Q(sqrt {t.d}), expected Q(sqrt {d})")
    den = 1 - params.a * QuadNum.sqrt(d) * t - params.b * t * t
    if den == 0:
        raise PreconditionError(f"pole of the generating function at t = {format_quad(t)}")
    return den


def eval_f_quad(params: Params, d: int, t: QuadNum) -> QuadNum:
    return t / _gf_denominator(params, d, t)


def eval_l_quad(params: Params, d: int, t: QuadNum) -> QuadNum:
    den = _gf_denominator(params, d, t)
    return (2 - params.a * QuadNum.sqrt(d) * t) / den


@dataclass(frozen=True)
class RadiusSpec:
    """The radius ``2 / (a sqrt d + sqrt(a^2 d + 4b))``."""

    params: Params
    d: int

    def __post_init__(self) -> None:
        _check_d(self.d)

    def approx(self) -> float:
        """Floating-point value, for display only."""
        a, b, d = self.params.a, self.params.b, self.d
        return 2 / (a * math.sqrt(d) + math.sqrt(a * a * d + 4 * b))


def within_radius(spec: RadiusSpec, t: QuadNum) -> bool:
    """Exact test of ``|t| < radius``.

    The radius is the positive root of ``b s^2 + a sqrt(d) s - 1``, which is
    increasing for ``s >= 0``, so ``|t| < radius`` iff
    ``1 - b s^2 - a sqrt(d) s > 0`` with ``s = |t|``.  That expression lies in
    Q(sqrt d), whose elements have an exactly computable sign.
    """
    if t.d != spec.d:
        raise PreconditionError(f"point lives in Q(sqrt {t.d}), expected Q(sqrt {spec.d})")
    s = abs(t)
    g = 1 - spec.params.b * s * s - spec.params.a * QuadNum.sqrt(spec.d) * s
    return g.sign() > 0


# -- family membership ---------------------------------------------------

F_FAMILIES = (Family.F_RATIO, Family.NEG_F_RATIO_OVER_B)
L_FAMILIES = (Family.F_RATIO, Family.L_RATIO, Family.NEG_L_RATIO_OVER_B, Family.NEG_F_RATIO_OVER_B)


@dataclass(frozen=True)
class MembershipReport:
    params: Params
    d: int
    t: QuadNum
    indices: dict[Family, int | None]

    @property
    def is_member(self) -> bool:
        return any(i is not None for i in self.indices.values())

    def as_dict(self) -> dict[str, Any]:
        return {
            "t": format_quad(self.t),
            "d": self.d,
            "families": {fam.value: i for fam, i in self.indices.items()},
            "member": self.is_member,
        }


def quad_family_membership(params: Params, d: int, t: QuadNum, which: str) -> MembershipReport:
    """Check ``t`` against the f-families or the l-families evaluated at ``sqrt(d)``.

    Non-membership is certified by the monotone bracketing of the ratios, not
    by a fixed search depth.
    """
    if t.d != d:
        raise PreconditionError(f"point lives in Q(sqrt {t.d}), expected Q(sqrt {d})")
    families = {"f": F_FAMILIES, "l": L_FAMILIES}.get(which)
    if families is None:
        raise PreconditionError(f"which must be 'f' or 'l', got {which!r}")
    point = QuadNum.sqrt(d)
    return MembershipReport(params, d, t, {fam: family_index(params, fam, t, point) for fam in families})


# -- the two counterexamples for d = 2 ----------------------------------

@dataclass(frozen=True)
class Claim:
    name: str
    expected: Any
    observed: Any

    @property
    def ok(self) -> bool:
        return self.expected == self.observed


@dataclass(frozen=True)
class CounterexampleEntry:
    fn: str
    params: Params
    d: int
    t: QuadNum
    value: QuadNum
    claims: tuple[Claim, ...]
    d1_note: str

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.claims)

    def as_dict(self) -> dict[str, Any]:
        return {
            "fn": self.fn,
            "a": self.params.a,
            "b": self.params.b,
            "d": self.d,
            "t": format_quad(self.t),
            "value": format_quad(self.value),
            "claims": [
                {"name": c.name, "expected": _jsonable(c.expected), "observed": _jsonable(c.observed), "ok": c.ok}
                for c in self.claims
            ],
            "ok": self.ok,
            "d1_note": self.d1_note,
        }


def _jsonable(v: Any) -> Any:
    if isinstance(v, QuadNum):
        return format_quad(v)
    if isinstance(v, Fraction):
        return str(v)
    return v


def _d1_note(params: Params, fn: str, point_of) -> str:
    """Re-evaluate the example with sqrt(d) replaced by 1 and describe the outcome."""
    from .classifier import classify_f_rational, classify_l_rational

    q = point_of(QuadNum(1)).u
    result = (classify_f_rational if fn == "f" else classify_l_rational)(params, q)
    if result.verdict == "NotInteger":
        return f"with d=1 the point becomes {q} and {fn}({q}) is not an integer; not a counterexample"
    return f"with d=1 the point becomes {q}, which is {result.label}; the classification holds there"


def _entry(fn: str, params: Params, d: int, point_of, value_of) -> CounterexampleEntry:
    """``point_of``/``value_of`` build the claimed point and value from sqrt(d)."""
    r = QuadNum.sqrt(d)
    t = point_of(r)
    value = (eval_f_quad if fn == "f" else eval_l_quad)(params, d, t)
    report = quad_family_membership(params, d, t, fn)
    claims = [
        Claim("value", value_of(r), value),
        Claim("value_in_Z[sqrt d]", True, in_z_sqrt_d(value)),
        Claim("within_radius", True, within_radius(RadiusSpec(params, d), t)),
    ]
    claims += [Claim(f"not_in_{fam.value}", None, idx) for fam, idx in report.indices.items()]
    return CounterexampleEntry(fn, params, d, t, value, tuple(claims), _d1_note(params, fn, point_of))


def counterexample_report() -> list[CounterexampleEntry]:
    """Recompute both d = 2 counterexamples from scratch."""
    return [
        _entry("f", Params(2, 1), 2, lambda r: 1 / (2 + r), lambda r: 2 + r),
        _entry("l", Params(1, 1), 2, lambda r: (6 - 5 * r) / 7, lambda r: 16 - 10 * r),
    ]
