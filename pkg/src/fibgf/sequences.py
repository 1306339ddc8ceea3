"""Generalized Fibonacci and Lucas polynomials.

``F_{n+2} = a x F_{n+1} + b F_n`` with ``F_0 = 0, F_1 = 1`` and the same
recurrence for ``L_n`` with ``L_0 = 2, L_1 = a x``.
"""

from __future__ import annotations

import enum
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from .errors import PreconditionError
from .exact_arith import X, Poly


@dataclass(frozen=True)
class Params:
    a: int
    b: int
    b_divides_a: bool = field(init=False, compare=False)

    def __post_init__(self) -> None:
        for name in ("a", "b"):
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, int) or v < 1:
                raise PreconditionError(f"{name} must be a positive integer, got {v!r}")
        object.__setattr__(self, "b_divides_a", self.a % self.b == 0)

    @property
    def disc(self) -> Poly:
        """``a^2 x^2 + 4b``, the discriminant of ``t^2 - a x t - b``."""
        return Poly((4 * self.b, 0, self.a * self.a))

    def require_b_divides_a(self) -> None:
        if not self.b_divides_a:
            raise PreconditionError(
                f"b must divide a (hypothesis of the classification theorems); "
                f"got a={self.a}, b={self.b}"
            )


class Kind(str, enum.Enum):
    F = "F"
    L = "L"


class _Table:
    """Append-only memo of one sequence for one parameter pair.

    Readers index ``terms`` without locking: entries are only ever appended,
    and a list append is atomic, so a reader sees either the old or the new
    length, never a partial entry.
    """

    def __init__(self, first: Poly, second: Poly, step: Poly, b: int) -> None:
        self.terms = [first, second]
        self.step = step
        self.b = b
        self.lock = threading.Lock()

    def get(self, n: int) -> Poly:
        terms = self.terms
        if n < len(terms):
            return terms[n]
        with self.lock:
            while len(terms) <= n:
                terms.append(self.step * terms[-1] + self.b * terms[-2])
        return terms[n]


_tables: dict[tuple[int, int, Kind], _Table] = {}
_tables_lock = threading.Lock()


def _table(params: Params, kind: Kind) -> _Table:
    key = (params.a, params.b, kind)
    table = _tables.get(key)
    if table is None:
        with _tables_lock:
            table = _tables.get(key)
            if table is None:
                ax = params.a * X
                first = Poly.const(0 if kind is Kind.F else 2)
                second = Poly.const(1) if kind is Kind.F else ax
                table = _tables[key] = _Table(first, second, ax, params.b)
    return table


def _check_index(n: int) -> None:
    if isinstance(n, bool) or not isinstance(n, int) or n < 0:
        raise PreconditionError(f"sequence index must be a non-negative integer, got {n!r}")


def fib_poly(params: Params, n: int) -> Poly:
    _check_index(n)
    return _table(params, Kind.F).get(n)


def lucas_poly(params: Params, n: int) -> Poly:
    _check_index(n)
    return _table(params, Kind.L).get(n)


def seq_poly(params: Params, kind: Kind | str, n: int) -> Poly:
    return fib_poly(params, n) if Kind(kind) is Kind.F else lucas_poly(params, n)


def seq_at(params: Params, kind: Kind | str, n: int, point):
    """Evaluate ``F_n`` or ``L_n`` at ``point`` (a rational or a QuadNum)."""
    return seq_poly(params, kind, n)(point)


def seq_values(params: Params, kind: Kind | str, point) -> Iterator:
    """Yield ``V_0(point), V_1(point), ...`` straight from the recurrence."""
    step = params.a * point
    if Kind(kind) is Kind.F:
        prev, cur = 0 * point, 0 * point + 1
    else:
        prev, cur = 0 * point + 2, step
    while True:
        yield prev
        prev, cur = cur, step * cur + params.b * prev


class IdentityId(str, enum.Enum):
    I5 = "I5"
    I6 = "I6"
    I7 = "I7"
    I8 = "I8"
    I9 = "I9"
    I10 = "I10"
    I11 = "I11"
    I12 = "I12"
    I13 = "I13"
    I14 = "I14"
    NORM = "NORM"

    @property
    def min_n(self) -> int:
        return 1 if self in (IdentityId.I5, IdentityId.I6) else 0


def _sides(params: Params, ident: IdentityId, n: int) -> tuple[Poly, Poly]:
    a, b = params.a, params.b
    F = lambda k: fib_poly(params, k)  # noqa: E731
    L = lambda k: lucas_poly(params, k)  # noqa: E731
    ax = a * X
    disc = params.disc
    sgn = (-b) ** n

    if ident is IdentityId.I5:
        return F(n) ** 2 - F(n - 1) * F(n + 1), Poly.const((-b) ** (n - 1))
    if ident is IdentityId.I6:
        return L(n) ** 2 - L(n - 1) * L(n + 1), -((-b) ** (n - 1)) * disc
    if ident is IdentityId.I7:
        return F(2 * n + 1), L(n + 1) * F(n) + sgn
    if ident is IdentityId.I8:
        return L(2 * n + 1), L(n + 1) * L(n) - sgn * ax
    if ident is IdentityId.I9:
        return L(2 * n + 1), disc * F(n + 1) * F(n) + sgn * ax
    if ident is IdentityId.I10:
        return F(n + 1) * L(n), F(n) * L(n + 1) + 2 * sgn
    # (11)-(14) are compared with the division by 2 or 2b cleared.
    if ident is IdentityId.I11:
        return 2 * F(n + 1), ax * F(n) + L(n)
    if ident is IdentityId.I12:
        return 2 * b * F(n), -ax * F(n + 1) + L(n + 1)
    if ident is IdentityId.I13:
        return 2 * L(n + 1), ax * L(n) + disc * F(n)
    if ident is IdentityId.I14:
        return 2 * b * L(n), -ax * L(n + 1) + disc * F(n + 1)
    return L(n) ** 2 - disc * F(n) ** 2, Poly.const(4 * sgn)


def check_identity(params: Params, ident: IdentityId | str, n: int) -> bool:
    ident = IdentityId(ident)
    if isinstance(n, bool) or not isinstance(n, int) or n < ident.min_n:
        raise PreconditionError(f"{ident.value} needs n >= {ident.min_n}, got {n!r}")
    lhs, rhs = _sides(params, ident, n)
    return lhs == rhs


def ratio_index(params: Params, kind: Kind | str, target, point=1, start: int = 0) -> int | None:
    """Index ``i >= start`` with ``V_i(point)/V_{i+1}(point) == target``, else None.

    ``point`` must be a positive real (a rational or a QuadNum); ``target``
    must support exact ordering against the ratios.  The ratios alternate
    around the positive root ``rho`` of ``b t^2 + a*point*t - 1`` with each
    parity class converging monotonically, Fibonacci ratios from below on even
    indices and Lucas ratios from above.  The search stops as soon as the
    class that approaches from one side has crossed ``target``.
    """
    kind = Kind(kind)
    ap = params.a * point
    if params.b * target * target + ap * target - 1 == 0:
        # target == rho; no ratio ever reaches the limit
        return None
    below_parity = 0 if kind is Kind.F else 1
    values = seq_values(params, kind, point)
    prev = next(values)
    i = 0
    for cur in values:
        if i >= start:
            if target * cur == prev:
                return i
            r = prev / cur if not isinstance(prev, int) else Fraction(prev, cur)
            if i % 2 == below_parity:
                if r > target:
                    return None
            elif r < target:
                return None
        prev = cur
        i += 1
    return None  # pragma: no cover


class Family(str, enum.Enum):
    """The four ratio families; ``V_i`` is ``F_i`` or ``L_i`` at a fixed point."""

    F_RATIO = "FRatio"  # F_i / F_{i+1}, i >= 0
    NEG_F_RATIO_OVER_B = "NegFRatioOverB"  # -F_{i+1} / (b F_i), i >= 1
    L_RATIO = "LRatio"  # L_i / L_{i+1}, i >= 0
    NEG_L_RATIO_OVER_B = "NegLRatioOverB"  # -L_{i+1} / (b L_i), i >= 0

    @property
    def kind(self) -> Kind:
        return Kind.F if self in (Family.F_RATIO, Family.NEG_F_RATIO_OVER_B) else Kind.L

    @property
    def negative(self) -> bool:
        return self in (Family.NEG_F_RATIO_OVER_B, Family.NEG_L_RATIO_OVER_B)

    @property
    def min_index(self) -> int:
        return 1 if self is Family.NEG_F_RATIO_OVER_B else 0

    def member(self, params: Params, i: int):
        """The ``i``-th member as a pair ``(numerator, denominator)`` of polynomials."""
        if i < self.min_index:
            raise PreconditionError(f"{self.value} starts at index {self.min_index}")
        cur, nxt = seq_poly(params, self.kind, i), seq_poly(params, self.kind, i + 1)
        if self.negative:
            return -nxt, params.b * cur
        return cur, nxt


def family_index(params: Params, family: Family | str, t, point=1) -> int | None:
    """Index at which ``family`` evaluated at ``point`` equals ``t``, or None."""
    family = Family(family)
    if not family.negative:
        return ratio_index(params, family.kind, t, point)
    if not t < 0:
        return None
    return ratio_index(params, family.kind, -1 / (params.b * t), point, start=family.min_index)
