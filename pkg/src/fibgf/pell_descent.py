"""Descent on solutions of ``P^2 - (a^2 x^2 + 4b) Q^2 = 4(-b)^r``.

Every solution with non-negative leading coefficients is
``(L_n, F_n) / b^(n//2)`` for a unique ``n``.  :func:`phi` lowers ``n`` by two
(and both degrees by two); :func:`descend` iterates it down to one of three
base pairs.  :func:`descend_int` is the same walk on integers at ``x = 1``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ConsistencyError, PreconditionError
from .exact_arith import X, Poly, format_poly
from .sequences import Params


@dataclass(frozen=True)
class PellPair:
    p: Poly
    q: Poly
    r0: int

    @classmethod
    def of(cls, params: Params, p: Poly, q: Poly) -> PellPair:
        """Validate ``(p, q)`` and infer ``r0`` from the constant it produces."""
        if p.lc < 0 or q.lc < 0:
            raise PreconditionError("leading coefficients of p and q must be non-negative")
        value = p * p - params.disc * q * q
        b = params.b
        if value == 4:
            r0 = 0
        elif value == -4 * b:
            r0 = 1
        else:
            raise PreconditionError(
                f"p^2 - (a^2x^2+4b) q^2 = {format_poly(value)}, expected 4 or {-4 * b}"
            )
        return cls(p, q, r0)

    @property
    def degrees(self) -> tuple[int | float, int | float]:
        return self.p.degree, self.q.degree


@dataclass(frozen=True)
class DescentResult:
    n: int
    r0: int
    trace: tuple[tuple[int | float, int | float], ...]


def _parts(params: Params) -> tuple[Poly, Poly, Poly, int]:
    a, b = params.a, params.b
    ax = a * X
    return ax, params.disc, Poly((2 * b, 0, a * a)), 2 * b


def phi(params: Params, pair: PellPair) -> PellPair:
    """One descent step; requires ``deg q >= 2``."""
    if not pair.q.degree >= 2:
        raise PreconditionError(f"phi needs deg q >= 2, got deg q = {pair.q.degree}")
    ax, disc, mid, two_b = _parts(params)
    p_bar = (mid * pair.p - ax * disc * pair.q) / two_b
    q_bar = (mid * pair.q - ax * pair.p) / two_b
    if p_bar.degree != pair.p.degree - 2 or q_bar.degree != pair.q.degree - 2:
        raise ConsistencyError(
            f"phi did not lower both degrees by two: {pair.degrees} -> {(p_bar.degree, q_bar.degree)}"
        )
    try:
        out = PellPair.of(params, p_bar, q_bar)
    except PreconditionError as exc:
        raise ConsistencyError(f"phi left the solution set: {exc}") from exc
    if out.r0 != pair.r0:
        raise ConsistencyError("phi changed r0")
    return out


def phi_inv(params: Params, pair: PellPair) -> PellPair:
    """Inverse step; raises ``n`` by two."""
    PellPair.of(params, pair.p, pair.q)
    ax, disc, mid, two_b = _parts(params)
    p_up = (mid * pair.p + ax * disc * pair.q) / two_b
    q_up = (mid * pair.q + ax * pair.p) / two_b
    if p_up.degree != pair.p.degree + 2 or (not pair.q.is_zero() and q_up.degree != pair.q.degree + 2):
        raise ConsistencyError("phi_inv did not raise the degrees by two")
    return PellPair.of(params, p_up, q_up)


def base_pairs(params: Params) -> dict[int, tuple[Poly, Poly]]:
    a, b = params.a, params.b
    return {
        0: (Poly.const(2), Poly()),
        1: (a * X, Poly.const(1)),
        2: (Poly((2 * b, 0, a * a)) / b, (a * X) / b),
    }


def _base_index(params: Params, pair: PellPair) -> int:
    # q = 0, deg q = 0, deg q = 1 correspond to n = 0, 1, 2
    n = 0 if pair.q.is_zero() else pair.q.degree + 1
    p, q = base_pairs(params)[n]
    if (pair.p, pair.q) != (p, q):
        raise ConsistencyError(
            f"pair ({format_poly(pair.p)}, {format_poly(pair.q)}) satisfies the norm equation "
            f"but is not the base pair for n = {n}"
        )
    return n


def descend(params: Params, p: Poly, q: Poly) -> DescentResult:
    """Return the ``n`` with ``b^(n//2) p == L_n`` and ``b^(n//2) q == F_n``."""
    pair = PellPair.of(params, p, q)
    trace = [pair.degrees]
    budget = -(-max(p.degree, 0) // 2) + 1
    steps = 0
    while pair.q.degree >= 2:
        if steps >= budget:
            raise ConsistencyError(f"descent exceeded its budget of {budget} steps")
        pair = phi(params, pair)
        trace.append(pair.degrees)
        steps += 1
    n = _base_index(params, pair) + 2 * steps
    if n % 2 != pair.r0:
        raise ConsistencyError(f"index {n} has the wrong parity for r0 = {pair.r0}")
    return DescentResult(n, pair.r0, tuple(trace))


def descend_int(params: Params, p: int, q: int) -> int:
    """Odd index ``m`` with ``b^(m//2) p == L_m(1)`` and ``b^(m//2) q == F_m(1)``.

    Requires ``b | a`` and ``p^2 - (a^2 + 4b) q^2 == -4b``.
    """
    params.require_b_divides_a()
    a, b = params.a, params.b
    for name, v in (("p", p), ("q", q)):
        if isinstance(v, bool) or not isinstance(v, int) or v < 1:
            raise PreconditionError(f"{name} must be a positive integer, got {v!r}")
    if p * p - (a * a + 4 * b) * q * q != -4 * b:
        raise PreconditionError(f"p^2 - (a^2+4b) q^2 != -4b for (p, q) = ({p}, {q})")
    mid, two_b = a * a + 2 * b, 2 * b
    m = 1
    while q > 1:
        qn, qr = divmod(mid * q - a * p, two_b)
        pn, pr = divmod(mid * p - a * (a * a + 4 * b) * q, two_b)
        if qr or pr:
            raise ConsistencyError(f"non-integral descent step from ({p}, {q})")
        if not 0 <= qn < q or pn < 0:
            raise ConsistencyError(f"descent step from ({p}, {q}) did not decrease q")
        p, q = pn, qn
        m += 2
    if (p, q) != (a, 1):
        raise ConsistencyError(f"integer descent ended at ({p}, {q}), expected ({a}, 1)")
    return m
