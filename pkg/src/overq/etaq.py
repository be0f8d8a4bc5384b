"""Eta quotients, their q-expansions, and the classical cusp criteria.

An eta quotient of level N is ``prod_{delta | N} eta(delta*tau)^m_delta``.
This module expands them as :class:`~overq.bigseries.QSeries`, checks
Newman's modularity conditions, enumerates cusps of Gamma0(N), computes
Ligozat's order at each cusp, and evaluates the Gordon-Hughes lower bound
for the order of ``f | U_ell``.

All orders are exact :class:`fractions.Fraction` values.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt

from . import bigseries as bs
from .bigseries import QSeries
from .errors import CuspNotOnLevel, HypothesisViolated


def divisors(n: int) -> list[int]:
    small = [d for d in range(1, isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def euler_phi(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)


def _nu(n: int, p: int) -> int:
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


@dataclass(frozen=True)
class EtaQuotient:
    level: int
    exponents: tuple  # sorted (delta, m_delta) pairs with m_delta != 0

    def __init__(self, level: int, exponents: dict):
        exps = tuple(sorted((int(d), int(m)) for d, m in dict(exponents).items() if m))
        if level < 1:
            raise ValueError("level must be positive")
        for d, _ in exps:
            if d < 1 or level % d:
                raise ValueError(f"{d} does not divide level {level}")
        if not exps:
            raise ValueError("an eta quotient needs a nonzero exponent")
        object.__setattr__(self, "level", int(level))
        object.__setattr__(self, "exponents", exps)

    def m(self, delta: int) -> int:
        return dict(self.exponents).get(delta, 0)

    def at_level(self, level: int) -> "EtaQuotient":
        if level % self.level:
            raise ValueError(f"level {self.level} does not divide {level}")
        return EtaQuotient(level, dict(self.exponents))

    def __mul__(self, other: "EtaQuotient") -> "EtaQuotient":
        N = self.level * other.level // gcd(self.level, other.level)
        exps = dict(self.exponents)
        for d, m in other.exponents:
            exps[d] = exps.get(d, 0) + m
        return EtaQuotient(N, exps)

    def __pow__(self, k: int) -> "EtaQuotient":
        return EtaQuotient(self.level, {d: k * m for d, m in self.exponents})

    def __truediv__(self, other: "EtaQuotient") -> "EtaQuotient":
        return self * other ** -1

    @property
    def offset(self) -> Fraction:
        return Fraction(sum(d * m for d, m in self.exponents), 24)

    def to_dict(self) -> dict:
        return {"level": self.level, "exponents": {str(d): m for d, m in self.exponents}}


def eta(delta: int) -> EtaQuotient:
    return EtaQuotient(delta, {delta: 1})


@lru_cache(maxsize=32)
def _euler_coeffs(trunc: int) -> tuple:
    # prod (1 - q^n) = sum_k (-1)^k q^{k(3k-1)/2}, k over all integers
    cs = [0] * (trunc + 1)
    k = 0
    while True:
        e1 = k * (3 * k - 1) // 2
        if e1 > trunc:
            break
        sign = -1 if k % 2 else 1
        cs[e1] += sign
        e2 = k * (3 * k + 1) // 2
        if k and e2 <= trunc:
            cs[e2] += sign
        k += 1
    return tuple(cs)


def euler_product(trunc: int, delta: int = 1, modulus_exp=None) -> QSeries:
    """``prod_{n>=1} (1 - q^{delta n})`` through ``q^trunc``."""
    base = _euler_coeffs(trunc // delta)
    cs = [0] * (trunc + 1)
    cs[::delta] = base[: len(cs[::delta])]
    return QSeries(tuple(cs), 0, modulus_exp)


def eta_expansion(e: EtaQuotient, trunc: int, modulus_exp=None) -> QSeries:
    """Expansion of the product part to ``q^trunc``; the ``q^(sum delta m/24)``
    prefactor is carried in ``offset``."""
    num = QSeries.one(trunc, modulus_exp)
    den = None
    for d, m in e.exponents:
        f = bs.series_pow(euler_product(trunc, d, modulus_exp), abs(m))
        if m > 0:
            num = num * f
        else:
            den = f if den is None else den * f
    out = num if den is None else num * bs.series_invert(den)
    return QSeries(out.coeffs, e.offset, modulus_exp)


def eta_series(e: EtaQuotient, trunc: int, modulus_exp=None) -> QSeries:
    """Offset-0 expansion through ``q^trunc`` (requires an integral offset >= 0)."""
    off = e.offset
    if off.denominator != 1 or off < 0:
        raise ValueError(f"offset {off} is not a nonnegative integer")
    k = int(off)
    if k > trunc:
        return QSeries.zero(trunc, modulus_exp)
    return eta_expansion(e, trunc - k, modulus_exp).integral()


# Newman


@dataclass(frozen=True)
class NewmanVerdict:
    weighted_sum: bool  # sum delta m_delta == 0 mod 24
    coweighted_sum: bool  # sum (N/delta) m_delta == 0 mod 24
    rational_square: bool
    weight_zero: bool

    @property
    def passed(self) -> bool:
        return self.weighted_sum and self.coweighted_sum and self.rational_square and self.weight_zero

    def to_dict(self) -> dict:
        return {
            "c1": self.weighted_sum,
            "c2": self.coweighted_sum,
            "c3": self.rational_square,
            "c4": self.weight_zero,
            "pass": self.passed,
        }


def _is_rational_square(num: int, den: int) -> bool:
    return isqrt(num) ** 2 == num and isqrt(den) ** 2 == den


def newman_check(e: EtaQuotient) -> NewmanVerdict:
    N = e.level
    s1 = sum(d * m for d, m in e.exponents)
    s2 = sum((N // d) * m for d, m in e.exponents)
    num = den = 1
    for d, m in e.exponents:
        if m > 0:
            num *= d**m
        else:
            den *= d ** (-m)
    g = gcd(num, den)
    return NewmanVerdict(
        s1 % 24 == 0,
        s2 % 24 == 0,
        _is_rational_square(num // g, den // g),
        sum(m for _, m in e.exponents) == 0,
    )


# cusps


@dataclass(frozen=True, order=True)
class Cusp:
    den: int
    num: int
    level: int = field(compare=False)

    @property
    def width(self) -> int:
        return self.level // gcd(self.den * self.den, self.level)

    @property
    def is_infinity(self) -> bool:
        return self.den == self.level

    def __str__(self):
        return f"{self.num}/{self.den}"

    def to_dict(self) -> dict:
        return {"num": self.num, "den": self.den, "width": self.width}


def _representative(d: int, x: int, N: int) -> Cusp:
    g = gcd(d, N // d)
    a = x % g if g > 1 else 0
    while gcd(a, d) != 1:
        a += g
    return Cusp(d, a, N)


def cusp_set(N: int) -> list[Cusp]:
    """One cusp per Gamma0(N)-class: denominators d | N, numerators modulo
    gcd(d, N/d) coprime to it."""
    out = []
    for d in divisors(N):
        g = gcd(d, N // d)
        for x in range(g):
            if gcd(x, g) == 1:
                out.append(_representative(d, x, N))
    return out


def normalize_cusp(x, N: int) -> Cusp:
    """Representative from :func:`cusp_set` equivalent to ``x``.

    ``x`` is a Fraction/int, a ``(num, den)`` pair, or ``None``/``"inf"`` for
    infinity.  Two reduced fractions a/c and a'/c' are Gamma0(N)-equivalent
    iff gcd(c, N) = gcd(c', N) = d and a*(c/d) = a'*(c'/d) mod gcd(d, N/d).
    """
    if x is None or x == "inf" or x == "oo":
        a, c = 1, 0
    elif isinstance(x, tuple):
        a, c = x
        g = gcd(a, c)
        a, c = a // g, c // g
    else:
        x = Fraction(x)
        a, c = x.numerator, x.denominator
    if c < 0:
        a, c = -a, -c
    d = gcd(c, N)
    g = gcd(d, N // d)
    inv = (a * (c // d)) % g if g > 1 else 0
    return _representative(d, inv, N)


def ligozat_order(e: EtaQuotient, r: Cusp) -> Fraction:
    N = e.level
    d = r.den
    if N % d:
        raise CuspNotOnLevel(f"cusp denominator {d} does not divide level {N}")
    g = gcd(d, N // d)
    total = sum(Fraction(gcd(d, delta) ** 2 * m, g * d * delta) for delta, m in e.exponents)
    return Fraction(N, 24) * total


@dataclass(frozen=True)
class CuspOrderReport:
    quotient: EtaQuotient
    orders: tuple  # (Cusp, Fraction) pairs

    def total(self) -> Fraction:
        return sum((o for _, o in self.orders), Fraction(0))

    def to_dict(self) -> dict:
        cusps = []
        for c, o in self.orders:
            rec = c.to_dict()
            rec.update(order_num=o.numerator, order_den=o.denominator)
            cusps.append(rec)
        return cusps


def cusp_orders(e: EtaQuotient) -> CuspOrderReport:
    return CuspOrderReport(e, tuple((c, ligozat_order(e, c)) for c in cusp_set(e.level)))


def order_at(e: EtaQuotient, x) -> Fraction:
    """Ligozat order at an arbitrary point of P^1(Q), normalized on e.level."""
    return ligozat_order(e, normalize_cusp(x, e.level))


def gordon_hughes_bound(e: EtaQuotient, ell: int, N: int, r) -> Fraction:
    """Lower bound for Ord(f | U_ell, r, Gamma0(N)) with f an eta quotient
    that is a modular function on Gamma0(ell*N)."""
    if N % ell:
        raise HypothesisViolated(f"{ell} does not divide {N}")
    f = e.at_level(ell * N) if e.level != ell * N else e
    if not newman_check(f).passed:
        raise HypothesisViolated("the eta quotient is not a modular function on Gamma0(ell*N)")
    if not isinstance(r, Cusp):
        r = normalize_cusp(r, N)
    c, d = r.num, r.den
    v_d, v_N = _nu(d, ell), _nu(N, ell)

    def at(lam):
        return order_at(f, (c + lam * d, d * ell))

    if 2 * v_d >= v_N:
        return Fraction(1, ell) * at(0)
    if v_d > 0:
        return at(0)
    return min(at(lam) for lam in range(ell))
