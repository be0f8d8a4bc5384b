"""Exact truncated q-series over arbitrary-precision integers.

A :class:`QSeries` stores the coefficients of ``q^(offset + i)`` for
``i = 0 .. trunc``.  Everything above ``trunc`` is unknown, and every
operation returns the largest truncation it can actually guarantee.

Large products go through Kronecker substitution: both operands are packed
into one big integer, multiplied by GMP, and unpacked again.  That keeps the
10^4 to 10^5 term tables used by the congruence checks cheap.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Iterable

import gmpy2

from .errors import (
    IncompatibleOffset,
    ModulusPresent,
    NonUnitConstantTerm,
    OffsetNotIntegral,
)

# shorter operand length below which schoolbook beats packing
SCHOOLBOOK_CUTOFF = 40
# operands with at most this many nonzero terms use shift-and-add
SPARSE_CUTOFF = 24

INF = math.inf


def nu2(n: int) -> float:
    """2-adic valuation of ``n``; ``inf`` for zero, ``|n|`` for negatives."""
    if n == 0:
        return INF
    n = abs(n)
    return (n & -n).bit_length() - 1


def _as_fraction(x) -> Fraction:
    x = Fraction(x)
    if 24 % x.denominator:
        raise ValueError(f"offset {x} does not have denominator dividing 24")
    return x


@dataclass(frozen=True)
class QSeries:
    coeffs: tuple
    offset: Fraction = Fraction(0)
    modulus_exp: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "offset", _as_fraction(self.offset))
        cs = tuple(int(c) for c in self.coeffs)
        if not cs:
            raise ValueError("a QSeries needs at least one coefficient")
        K = self.modulus_exp
        if K is not None:
            if K < 1:
                raise ValueError("modulus exponent must be >= 1")
            m = (1 << K) - 1
            cs = tuple(c & m for c in cs)
        object.__setattr__(self, "coeffs", cs)

    # construction helpers

    @classmethod
    def one(cls, trunc: int, modulus_exp=None) -> "QSeries":
        return cls((1,) + (0,) * trunc, 0, modulus_exp)

    @classmethod
    def zero(cls, trunc: int, modulus_exp=None) -> "QSeries":
        return cls((0,) * (trunc + 1), 0, modulus_exp)

    @classmethod
    def from_sparse(cls, terms: dict, trunc: int, modulus_exp=None) -> "QSeries":
        cs = [0] * (trunc + 1)
        for e, c in terms.items():
            if 0 <= e <= trunc:
                cs[e] += c
        return cls(tuple(cs), 0, modulus_exp)

    # basic properties

    @property
    def trunc(self) -> int:
        return len(self.coeffs) - 1

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i]

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def order(self):
        """Exponent of the first nonzero coefficient, or None."""
        for i, c in enumerate(self.coeffs):
            if c:
                return self.offset + i
        return None

    def truncate(self, n: int) -> "QSeries":
        if n > self.trunc:
            raise ValueError(f"cannot extend trunc {self.trunc} to {n}")
        return QSeries(self.coeffs[: n + 1], self.offset, self.modulus_exp)

    def integral(self) -> "QSeries":
        """Absorb a nonnegative integral offset into the coefficient list."""
        if self.offset == 0:
            return self
        if self.offset.denominator != 1 or self.offset < 0:
            raise OffsetNotIntegral(f"offset {self.offset} is not a nonnegative integer")
        k = int(self.offset)
        return QSeries((0,) * k + self.coeffs, 0, self.modulus_exp)

    # arithmetic

    def __neg__(self):
        return QSeries(tuple(-c for c in self.coeffs), self.offset, self.modulus_exp)

    def __add__(self, other):
        if isinstance(other, int):
            return series_add(self, _constant(other, self))
        if not isinstance(other, QSeries):
            return NotImplemented
        return series_add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, int):
            return series_add(self, _constant(-other, self))
        if not isinstance(other, QSeries):
            return NotImplemented
        return series_add(self, -other)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, int):
            return QSeries(tuple(other * c for c in self.coeffs), self.offset, self.modulus_exp)
        if not isinstance(other, QSeries):
            return NotImplemented
        return series_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        return series_pow(self, e)

    def __repr__(self):
        head = ", ".join(str(c) for c in self.coeffs[:8])
        more = ", ..." if len(self.coeffs) > 8 else ""
        mod = f", mod 2^{self.modulus_exp}" if self.modulus_exp else ""
        return f"QSeries([{head}{more}], offset={self.offset}, trunc={self.trunc}{mod})"


def _constant(c: int, like: QSeries) -> QSeries:
    if like.offset != 0:
        raise IncompatibleOffset("cannot add a constant to a series with nonzero offset")
    return QSeries((c,) + (0,) * like.trunc, 0, like.modulus_exp)


def _merge_modulus(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def series_add(a: QSeries, b: QSeries) -> QSeries:
    K = _merge_modulus(a.modulus_exp, b.modulus_exp)
    if a.offset != b.offset:
        # a zero operand has no meaningful offset; its trunc still bounds the result
        if b.is_zero():
            hi = min(a.offset + a.trunc, b.offset + b.trunc) - a.offset
            return QSeries(a.coeffs[: max(int(hi), 0) + 1], a.offset, K)
        if a.is_zero():
            return series_add(b, a)
        raise IncompatibleOffset(f"offsets {a.offset} and {b.offset} differ")
    n = min(a.trunc, b.trunc)
    return QSeries(tuple(x + y for x, y in zip(a.coeffs[: n + 1], b.coeffs[: n + 1])), a.offset, K)


# multiplication kernels on plain lists of ints


def _nonzero(cs):
    return [(i, c) for i, c in enumerate(cs) if c]


def _mul_sparse(sparse, dense, n):
    out = [0] * (n + 1)
    for i, c in sparse:
        if i > n:
            break
        for j, d in enumerate(dense[: n + 1 - i]):
            if d:
                out[i + j] += c * d
    return out


def _mul_schoolbook(a, b, n):
    out = [0] * (n + 1)
    for i, x in enumerate(a[: n + 1]):
        if not x:
            continue
        for j, y in enumerate(b[: n + 1 - i]):
            out[i + j] += x * y
    return out


def _pack(cs, nbytes):
    width = 8 * nbytes
    mask = (1 << width) - 1
    buf = b"".join([(c & mask).to_bytes(nbytes, "little") for c in cs])
    v = gmpy2.mpz(int.from_bytes(buf, "little"))
    negs = [i for i, c in enumerate(cs) if c < 0]
    if negs:
        borrow = bytearray(nbytes * (len(cs) + 1))
        for i in negs:
            borrow[(i + 1) * nbytes] = 1
        v -= gmpy2.mpz(int.from_bytes(borrow, "little"))
    return v


def _unpack(R, nbytes, count):
    width = 8 * nbytes
    half = 1 << (width - 1)
    bias = int.from_bytes(half.to_bytes(nbytes, "little") * count, "little")
    total = (R + bias) & ((gmpy2.mpz(1) << (width * count)) - 1)
    buf = int(total).to_bytes(nbytes * count, "little")
    fb = int.from_bytes
    return [fb(buf[i : i + nbytes], "little") - half for i in range(0, nbytes * count, nbytes)]


def _mul_kronecker(a, b, n):
    a = a[: n + 1]
    b = b[: n + 1]
    ba = max(abs(x) for x in a).bit_length()
    bb = max(abs(x) for x in b).bit_length()
    if ba == 0 or bb == 0:
        return [0] * (n + 1)
    bits = ba + bb + min(len(a), len(b)).bit_length() + 2
    nbytes = (bits + 7) // 8
    A = _pack(a, nbytes)
    R = A * A if a is b or a == b else A * _pack(b, nbytes)
    count = min(n + 1, len(a) + len(b) - 1)
    out = _unpack(R, nbytes, count)
    out.extend([0] * (n + 1 - count))
    return out


def mul_lists(a, b, n):
    """First ``n + 1`` coefficients of the product of two coefficient lists."""
    a = list(a[: n + 1])
    b = list(b[: n + 1])
    sa, sb = _nonzero(a), _nonzero(b)
    if not sa or not sb:
        return [0] * (n + 1)
    if len(sa) <= SPARSE_CUTOFF or len(sb) <= SPARSE_CUTOFF:
        if len(sa) <= len(sb):
            return _mul_sparse(sa, b, n)
        return _mul_sparse(sb, a, n)
    if min(len(a), len(b)) <= SCHOOLBOOK_CUTOFF:
        return _mul_schoolbook(a, b, n)
    return _mul_kronecker(a, b, n)


def series_mul(a: QSeries, b: QSeries) -> QSeries:
    K = _merge_modulus(a.modulus_exp, b.modulus_exp)
    n = min(a.trunc, b.trunc)
    ca, cb = a.coeffs, b.coeffs
    if K is not None:
        m = (1 << K) - 1
        ca = tuple(c & m for c in ca)
        cb = ca if b is a else tuple(c & m for c in cb)
    return QSeries(tuple(mul_lists(ca, cb, n)), a.offset + b.offset, K)


def _invert_recurrence(nz, c0inv, n, mask):
    # g_k = -c0^{-1} * sum_{i>=1} a_i g_{k-i}, using only the nonzero a_i
    nz = [(i, c) for i, c in nz if i > 0]
    g = [0] * (n + 1)
    g[0] = c0inv
    for k in range(1, n + 1):
        s = 0
        for i, c in nz:
            if i > k:
                break
            s += c * g[k - i]
        s = -c0inv * s
        g[k] = s & mask if mask else s
    return g


def invert_lists(a, n, modulus_exp=None):
    """Coefficients of ``1/a`` through ``q^n``; ``a[0]`` must be a unit."""
    c0 = a[0]
    if modulus_exp is None:
        if c0 not in (1, -1):
            raise NonUnitConstantTerm(f"constant term {c0} is not +-1")
        c0inv = c0
        mask = 0
    else:
        if c0 % 2 == 0:
            raise NonUnitConstantTerm(f"constant term {c0} is not a unit mod 2^{modulus_exp}")
        mask = (1 << modulus_exp) - 1
        c0inv = pow(c0, -1, 1 << modulus_exp)
    a = list(a[: n + 1])
    nz = _nonzero(a)
    if len(nz) <= 4 * isqrt(n) + 16 or n <= 64:
        return _invert_recurrence(nz, c0inv, n, mask)
    # Newton: g <- g (2 - a g), doubling the known precision each step
    prec = 64
    g = _invert_recurrence(_nonzero(a[: prec + 1]), c0inv, prec, mask)
    while prec < n:
        prec = min(2 * prec + 1, n)
        e = mul_lists(a, g, prec)
        e = [-x for x in e]
        e[0] += 2
        g = mul_lists(g, e, prec)
        if mask:
            g = [x & mask for x in g]
    return g


def series_invert(a: QSeries, n: int | None = None) -> QSeries:
    if a.offset != 0:
        raise NonUnitConstantTerm("only offset-0 series with unit constant term are invertible")
    n = a.trunc if n is None else min(n, a.trunc)
    return QSeries(tuple(invert_lists(a.coeffs, n, a.modulus_exp)), 0, a.modulus_exp)


def series_pow(a: QSeries, e: int) -> QSeries:
    if e < 0:
        return series_pow(series_invert(a), -e)
    result = None
    base = a
    while True:
        if e & 1:
            result = base if result is None else series_mul(result, base)
        e >>= 1
        if not e:
            break
        base = series_mul(base, base)
    if result is None:
        return QSeries.one(a.trunc, a.modulus_exp)
    return result


def _require_integral(a: QSeries) -> QSeries:
    if a.offset.denominator != 1:
        raise OffsetNotIntegral(f"offset {a.offset} is not integral")
    if a.offset < 0:
        raise OffsetNotIntegral(f"negative offset {a.offset}")
    return a.integral()


def v_p(a: QSeries, p: int) -> QSeries:
    """Substitute ``q -> q^p``."""
    a = _require_integral(a)
    n = a.trunc
    cs = [0] * (p * n + p)
    cs[::p] = a.coeffs
    return QSeries(tuple(cs), 0, a.modulus_exp)


def u_p(a: QSeries, p: int) -> QSeries:
    """Atkin's U_p: keep the coefficients at multiples of ``p``."""
    a = _require_integral(a)
    return QSeries(a.coeffs[::p], 0, a.modulus_exp)


def alternate_sign(a: QSeries) -> QSeries:
    """Substitute ``q -> -q``."""
    a = _require_integral(a)
    return QSeries(tuple(-c if i & 1 else c for i, c in enumerate(a.coeffs)), 0, a.modulus_exp)


def reduce_mod2k(a: QSeries, K: int) -> QSeries:
    return QSeries(a.coeffs, a.offset, _merge_modulus(a.modulus_exp, K))


@dataclass(frozen=True)
class Valuation2Profile:
    entries: tuple  # (exponent, valuation) pairs; zero coefficients carry inf

    def minimum(self):
        return min((v for _, v in self.entries), default=INF)

    def __iter__(self):
        return iter(self.entries)


def valuation2_profile(a: QSeries) -> Valuation2Profile:
    if a.modulus_exp is not None:
        raise ModulusPresent("2-adic valuations are not determined by residues mod 2^K")
    off = a.offset
    expo = (lambda i: i) if off == 0 else (lambda i: off + i)
    return Valuation2Profile(tuple((expo(i), nu2(c)) for i, c in enumerate(a.coeffs)))


def first_nonzero(a: QSeries):
    """Exponent of the first nonzero coefficient (None when all vanish)."""
    return a.order()


# cache records


def to_record(a: QSeries) -> dict:
    rec = {
        "offset_num": a.offset.numerator,
        "offset_den": a.offset.denominator,
        "trunc": a.trunc,
        "coeffs": [str(c) for c in a.coeffs],
    }
    if a.modulus_exp is not None:
        rec["modulus_exp"] = a.modulus_exp
    return rec


def from_record(rec: dict) -> QSeries:
    cs = tuple(int(c) for c in rec["coeffs"])
    if len(cs) != rec["trunc"] + 1:
        raise ValueError("record trunc does not match coefficient count")
    return QSeries(cs, Fraction(rec["offset_num"], rec["offset_den"]), rec.get("modulus_exp"))


def dump(a: QSeries, path) -> None:
    with open(path, "w") as fh:
        json.dump(to_record(a), fh)


def load(path) -> QSeries:
    with open(path) as fh:
        return from_record(json.load(fh))


def coefficients_equal(a: QSeries, b: QSeries) -> bool:
    n = min(a.trunc, b.trunc)
    return a.offset == b.offset and a.coeffs[: n + 1] == b.coeffs[: n + 1]


def poly(terms: Iterable[int], trunc: int | None = None, modulus_exp=None) -> QSeries:
    """Series from a coefficient list, zero-padded to ``trunc``."""
    cs = list(terms)
    if trunc is None:
        trunc = len(cs) - 1
    cs = (cs + [0] * (trunc + 1))[: trunc + 1]
    return QSeries(tuple(cs), 0, modulus_exp)
