"""Exact arithmetic over Q, Q[x] and Q(x).

Rationals are :class:`fractions.Fraction`.  Polynomials are stored as a tuple
of integer numerators (ascending degree) over one positive common
denominator, which keeps products of the large, integral Fibonacci/Lucas
polynomials in pure ``int`` arithmetic.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Union

from .errors import ParseError, PreconditionError

Rat = Fraction

#: Degree of the zero polynomial.  Compares below every integer and is
#: unchanged by adding or subtracting integers.
NEG_INF = float("-inf")

Scalar = Union[int, Fraction]


def _normalize(nums: Iterable[int], den: int) -> tuple[tuple[int, ...], int]:
    nums = list(nums)
    while nums and nums[-1] == 0:
        nums.pop()
    if not nums:
        return (), 1
    if den < 0:
        nums = [-c for c in nums]
        den = -den
    g = den
    for c in nums:
        g = math.gcd(g, c)
        if g == 1:
            break
    if g != 1:
        nums = [c // g for c in nums]
        den //= g
    return tuple(nums), den


class Poly:
    """Immutable dense univariate polynomial with rational coefficients."""

    __slots__ = ("_nums", "_den", "_hash")

    def __init__(self, coeffs: Iterable[Scalar] = ()) -> None:
        coeffs = [Fraction(c) for c in coeffs]
        den = 1
        for c in coeffs:
            den = den * c.denominator // math.gcd(den, c.denominator)
        nums = [c.numerator * (den // c.denominator) for c in coeffs]
        self._nums, self._den = _normalize(nums, den)
        self._hash = None

    @classmethod
    def _raw(cls, nums: Iterable[int], den: int = 1) -> Poly:
        p = cls.__new__(cls)
        p._nums, p._den = _normalize(nums, den)
        p._hash = None
        return p

    @classmethod
    def const(cls, c: Scalar) -> Poly:
        c = Fraction(c)
        return cls._raw((c.numerator,), c.denominator)

    @classmethod
    def x(cls) -> Poly:
        return cls._raw((0, 1))

    @classmethod
    def monomial(cls, coeff: Scalar, degree: int) -> Poly:
        c = Fraction(coeff)
        return cls._raw([0] * degree + [c.numerator], c.denominator)

    # -- inspection -----------------------------------------------------

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        """Coefficients in ascending degree; empty for the zero polynomial."""
        return tuple(Fraction(c, self._den) for c in self._nums)

    @property
    def numerators(self) -> tuple[int, ...]:
        return self._nums

    @property
    def denominator(self) -> int:
        return self._den

    @property
    def degree(self) -> int | float:
        return len(self._nums) - 1 if self._nums else NEG_INF

    @property
    def lc(self) -> Fraction:
        return Fraction(self._nums[-1], self._den) if self._nums else Fraction(0)

    def is_zero(self) -> bool:
        return not self._nums

    def is_constant(self) -> bool:
        return len(self._nums) <= 1

    def coeff(self, k: int) -> Fraction:
        if 0 <= k < len(self._nums):
            return Fraction(self._nums[k], self._den)
        return Fraction(0)

    # -- arithmetic -----------------------------------------------------

    @staticmethod
    def _coerce(other: object) -> Poly | None:
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(other)
        return None

    def __add__(self, other: object) -> Poly:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d1, d2 = self._den, o._den
        lcm = d1 * d2 // math.gcd(d1, d2)
        s1, s2 = lcm // d1, lcm // d2
        n1, n2 = self._nums, o._nums
        if len(n1) < len(n2):
            n1, n2, s1, s2 = n2, n1, s2, s1
        out = [c * s1 for c in n1]
        for i, c in enumerate(n2):
            out[i] += c * s2
        return Poly._raw(out, lcm)

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly._raw([-c for c in self._nums], self._den)

    def __pos__(self) -> Poly:
        return self

    def __sub__(self, other: object) -> Poly:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: object) -> Poly:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other: object) -> Poly:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self._nums, o._nums
        if not a or not b:
            return Poly._raw(())
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        return Poly._raw(out, self._den * o._den)

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> Poly:
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if c == 0:
                raise ZeroDivisionError("polynomial divided by zero")
            return Poly._raw([n * c.denominator for n in self._nums], self._den * c.numerator)
        return NotImplemented

    def __pow__(self, n: int) -> Poly:
        if n < 0:
            raise ValueError("negative polynomial power")
        result, base = Poly.const(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other: object) -> tuple[Poly, Poly]:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        div = o.coeffs
        dd = len(div) - 1
        quot = [Fraction(0)] * max(len(rem) - dd, 0)
        lead = div[-1]
        for k in range(len(rem) - 1 - dd, -1, -1):
            c = rem[k + dd] / lead
            quot[k] = c
            if c:
                for i, dc in enumerate(div):
                    rem[k + i] -= c * dc
        return Poly(quot), Poly(rem[:dd])

    def __floordiv__(self, other: object) -> Poly:
        return divmod(self, other)[0]

    def __mod__(self, other: object) -> Poly:
        return divmod(self, other)[1]

    def monic(self) -> Poly:
        if self.is_zero():
            return self
        return Poly._raw(self._nums, self._nums[-1])

    def __call__(self, point):
        """Evaluate by Horner's rule at any value supporting ``*`` and ``+``."""
        acc = 0
        for c in reversed(self._nums):
            acc = acc * point + c
        if self._den == 1:
            return acc
        if isinstance(acc, int):
            return Fraction(acc, self._den)
        return acc / self._den

    # -- comparison -----------------------------------------------------

    def __eq__(self, other: object) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._nums == o._nums and self._den == o._den

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._nums, self._den))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._nums)

    def __repr__(self) -> str:
        return f"Poly({format_poly(self)!r})"

    def __str__(self) -> str:
        return format_poly(self)


X = Poly.x()


def _primitive(nums: list[int]) -> list[int]:
    g = 0
    for c in nums:
        g = math.gcd(g, c)
    if g > 1:
        nums = [c // g for c in nums]
    if nums and nums[-1] < 0:
        nums = [-c for c in nums]
    return nums


def _prem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder of integer coefficient lists (ascending degree)."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    while r and len(r) - 1 >= db:
        shift = len(r) - 1 - db
        lr = r[-1]
        r = [c * lb for c in r]
        for i, bc in enumerate(b):
            r[i + shift] -= lr * bc
        while r and r[-1] == 0:
            r.pop()
    return r


def poly_gcd(p: Poly, q: Poly) -> Poly:
    """Monic gcd (zero only when both inputs are zero)."""
    a = _primitive(list(p.numerators))
    b = _primitive(list(q.numerators))
    if len(a) < len(b):
        a, b = b, a
    while b:
        a, b = b, _primitive(_prem(a, b))
    return Poly._raw(a).monic()


def is_integer_poly(p: Poly) -> bool:
    return p.denominator == 1


def _rat_sqrt(c: Fraction) -> Fraction | None:
    if c < 0:
        return None
    rn, rd = math.isqrt(c.numerator), math.isqrt(c.denominator)
    if rn * rn != c.numerator or rd * rd != c.denominator:
        return None
    return Fraction(rn, rd)


def poly_square_root(p: Poly) -> Poly | None:
    """Return ``M`` with ``M**2 == p`` and non-negative leading coefficient.

    Coefficients are peeled from the top: with ``M = sum r_k x^k`` of degree
    ``m``, the coefficient of ``x^(m+k)`` in ``p`` determines ``r_k`` once
    ``r_(k+1) .. r_m`` are known.  Returns ``None`` when no square root exists.
    """
    if p.is_zero():
        return p
    deg = p.degree
    if deg % 2:
        return None
    top = _rat_sqrt(p.lc)
    if top is None:
        return None
    m = deg // 2
    c = p.coeffs
    r = [Fraction(0)] * (m + 1)
    r[m] = top
    twice_top = 2 * top
    for k in range(m - 1, -1, -1):
        s = sum((r[i] * r[m + k - i] for i in range(k + 1, m)), Fraction(0))
        r[k] = (c[m + k] - s) / twice_top
    root = Poly(r)
    return root if root * root == p else None


class RatFn:
    """Element of Q(x) kept in lowest terms with a monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly | Scalar, den: Poly | Scalar = 1) -> None:
        num = Poly._coerce(num)
        den = Poly._coerce(den)
        if num is None or den is None:
            raise TypeError("RatFn expects polynomial or rational operands")
        if den.is_zero():
            raise PreconditionError("rational function with zero denominator")
        if num.is_zero():
            num, den = Poly._raw(()), Poly.const(1)
        elif not den.is_constant():
            g = poly_gcd(num, den)
            if not g.is_constant():
                num, den = num // g, den // g
        lead = den.lc
        if lead != 1:
            num, den = num / lead, den / lead
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RatFn is immutable")

    @staticmethod
    def _coerce(other: object) -> RatFn | None:
        if isinstance(other, RatFn):
            return other
        if isinstance(other, (Poly, int, Fraction)):
            return RatFn(other)
        return None

    def is_poly(self) -> bool:
        return self.den == 1

    def __add__(self, other: object) -> RatFn:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RatFn(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self) -> RatFn:
        return RatFn(-self.num, self.den)

    def __sub__(self, other: object) -> RatFn:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: object) -> RatFn:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other: object) -> RatFn:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RatFn(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> RatFn:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.num.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RatFn(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other: object) -> RatFn:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __eq__(self, other: object) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num * o.den == o.num * self.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __repr__(self) -> str:
        return f"RatFn({format_ratfn(self)!r})"

    def __str__(self) -> str:
        return format_ratfn(self)


def ratfn_reduce(num: Poly, den: Poly) -> RatFn:
    return RatFn(num, den)


# -- text format --------------------------------------------------------

def _var_text(k: int) -> str:
    return "x" if k == 1 else f"x^{k}"


def format_poly(p: Poly) -> str:
    if p.is_zero():
        return "0"
    parts: list[str] = []
    for k in range(p.degree, -1, -1):
        c = p.coeff(k)
        if not c:
            continue
        mag = abs(c)
        if k == 0:
            body = str(mag)
        elif mag == 1:
            body = _var_text(k)
        else:
            body = f"{mag}*{_var_text(k)}"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append((" - " if c < 0 else " + ") + body)
    return "".join(parts)


def format_rat(c: Fraction) -> str:
    return str(Fraction(c))


def format_ratfn(r: RatFn) -> str:
    if r.is_poly():
        return format_poly(r.num)
    return f"({format_poly(r.num)})/({format_poly(r.den)})"


class _Scanner:
    def __init__(self, text: str, offset: int = 0) -> None:
        self.text = text
        self.i = 0
        self.offset = offset

    def error(self, message: str, at: int | None = None) -> ParseError:
        pos = self.i if at is None else at
        return ParseError(message, self.text, pos + self.offset)

    def ws(self) -> None:
        while self.i < len(self.text) and self.text[self.i].isspace():
            self.i += 1

    def peek(self) -> str:
        return self.text[self.i] if self.i < len(self.text) else ""

    def digits(self) -> int | None:
        start = self.i
        while self.i < len(self.text) and self.text[self.i].isdigit():
            self.i += 1
        if self.i == start:
            return None
        return int(self.text[start:self.i])

    def coeff(self) -> Fraction | None:
        start = self.i
        num = self.digits()
        if num is None:
            return None
        if self.peek() == "/":
            self.i += 1
            den = self.digits()
            if den is None:
                raise self.error("expected denominator")
            if den == 0:
                raise self.error("zero denominator", start)
            return Fraction(num, den)
        return Fraction(num)

    def var(self) -> int | None:
        if self.peek() != "x":
            return None
        self.i += 1
        if self.peek() == "^":
            self.i += 1
            e = self.digits()
            if e is None:
                raise self.error("expected exponent")
            return e
        return 1

    def term(self) -> tuple[Fraction, int]:
        c = self.coeff()
        if c is None:
            e = self.var()
            if e is None:
                raise self.error("expected coefficient or 'x'")
            return Fraction(1), e
        save = self.i
        self.ws()
        if self.peek() == "*":
            self.i += 1
            self.ws()
            e = self.var()
            if e is None:
                raise self.error("expected 'x' after '*'")
            return c, e
        self.i = save
        e = self.var()
        return c, (0 if e is None else e)

    def poly(self) -> Poly:
        acc: dict[int, Fraction] = {}
        self.ws()
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.peek() == "-" else 1
            self.i += 1
            self.ws()
        while True:
            c, e = self.term()
            acc[e] = acc.get(e, Fraction(0)) + sign * c
            self.ws()
            ch = self.peek()
            if ch in ("+", "-"):
                sign = -1 if ch == "-" else 1
                self.i += 1
                self.ws()
                continue
            break
        top = max(acc)
        return Poly([acc.get(k, 0) for k in range(top + 1)])

    def poly_checked(self) -> Poly:
        p = self.poly()
        if self.i != len(self.text):
            raise self.error(f"unexpected character {self.text[self.i]!r}")
        return p


def parse_poly(text: str) -> Poly:
    """Parse e.g. ``"4*x^3 + 6*x"``, ``"-3/2*x^2 + x - 1"`` or ``"0"``."""
    return _Scanner(text).poly_checked()


def parse_rat(text: str) -> Fraction:
    m = re.fullmatch(r"\s*([+-]?)\s*(\d+)(?:/(\d+))?\s*", text)
    if not m:
        raise ParseError(f"malformed rational {text!r}", text, 0)
    if m.group(3) is not None and int(m.group(3)) == 0:
        raise ParseError("zero denominator", text, m.start(3))
    value = Fraction(int(m.group(2)), int(m.group(3) or 1))
    return -value if m.group(1) == "-" else value


def parse_ratfn(text: str) -> RatFn:
    """Parse ``"(poly)/(poly)"``, ``"(poly)"`` or a bare polynomial."""
    stripped = text.strip()
    lead = len(text) - len(text.lstrip())
    if not stripped.startswith("("):
        return RatFn(parse_poly(text))
    close = stripped.find(")")
    if close < 0:
        raise ParseError("unbalanced '('", text, lead)
    num = _Scanner(stripped[1:close], lead + 1).poly_checked()
    rest = stripped[close + 1:].strip()
    if not rest:
        return RatFn(num)
    rest_at = lead + close + 1 + (len(stripped[close + 1:]) - len(stripped[close + 1:].lstrip()))
    if not rest.startswith("/"):
        raise ParseError("expected '/'", text, rest_at)
    tail = rest[1:].strip()
    tail_at = rest_at + 1 + (len(rest[1:]) - len(rest[1:].lstrip()))
    if not (tail.startswith("(") and tail.endswith(")")):
        raise ParseError("expected parenthesised denominator", text, tail_at)
    den = _Scanner(tail[1:-1], tail_at + 1).poly_checked()
    if den.is_zero():
        raise PreconditionError("rational function with zero denominator")
    return RatFn(num, den)


def coeff_strings(p: Poly) -> list[str]:
    """Ascending ``"num/den"`` strings, the machine-readable twin of ``format_poly``."""
    return [f"{c.numerator}/{c.denominator}" for c in p.coeffs]
