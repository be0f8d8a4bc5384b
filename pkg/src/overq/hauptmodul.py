"""The level 2 / level 8 Hauptmoduln, their -q twins, and identities among them.

Named functions (all with integer q-expansions, offset 0)::

    Phi2      eta(2t) / eta(t)^2                  overpartition generating function
    Phi2Neg   Phi2(-q)  = eta(t)^2 eta(4t)^2 / eta(2t)^5
    G2        (eta(2t) / eta(t))^24               Hauptmodul on Gamma0(2)
    G2Neg     G2(-q)    = -eta(t)^24 eta(4t)^24 / eta(2t)^48
    G8        eta(8t)^4 eta(2t)^2 / (eta(4t)^2 eta(t)^4)   Hauptmodul on Gamma0(8)
    G8Neg     G8(-q)    = -eta(8t)^4 eta(4t)^2 eta(t)^4 / eta(2t)^10
    Eta4OverEta1Pow8   (eta(4t) / eta(t))^8
    F         Phi2(-q) / Phi2(-q^4)

Every "constant found by comparing coefficients" is recomputed here by a
triangular fit in powers of a generator ``G = q + O(q^2)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import bigseries as bs
from .bigseries import QSeries, alternate_sign, u_p, v_p
from .errors import CrossCheckFailed, IdentityViolated, NotInSpan, UnknownName
from .etaq import EtaQuotient, eta_series

GUARD = 10

ETA_FORMS = {
    "Phi2": (1, EtaQuotient(2, {2: 1, 1: -2})),
    "Phi2Neg": (1, EtaQuotient(4, {1: 2, 4: 2, 2: -5})),
    "G2": (1, EtaQuotient(2, {2: 24, 1: -24})),
    "G2Neg": (-1, EtaQuotient(4, {1: 24, 4: 24, 2: -48})),
    "G8": (1, EtaQuotient(8, {8: 4, 2: 2, 4: -2, 1: -4})),
    "G8Neg": (-1, EtaQuotient(8, {8: 4, 4: 2, 1: 4, 2: -10})),
    "Eta4OverEta1Pow8": (1, EtaQuotient(4, {4: 8, 1: -8})),
    "F": (1, EtaQuotient(16, {1: 2, 8: 5, 2: -5, 16: -2})),
}

TWINS = {"Phi2Neg": "Phi2", "G2Neg": "G2", "G8Neg": "G8"}

# P(x) with P(G8) Phi2(-q^2) = (Phi2(-q) G2(-q)) | U2
P_COEFFS = {
    1: 2 * 13,
    2: 2**3 * 403,
    3: 2**6 * 2015,
    4: 2**10 * 2431,
    5: 2**15 * 819,
    6: 2**19 * 325,
    7: 2**22 * 151,
    8: 2**26 * 19,
    9: 2**30,
}


@dataclass(frozen=True)
class NamedFunction:
    tag: str
    expansion: QSeries
    eta_form: EtaQuotient
    sign: int = 1


@lru_cache(maxsize=64)
def build_named(tag: str, trunc: int) -> NamedFunction:
    if tag not in ETA_FORMS:
        raise UnknownName(f"unknown function {tag!r}; known: {', '.join(ETA_FORMS)}")
    sign, form = ETA_FORMS[tag]
    expansion = eta_series(form, trunc) * sign
    if tag in TWINS:
        twin = alternate_sign(build_named(TWINS[tag], trunc).expansion)
        if twin != expansion:
            raise CrossCheckFailed(f"{tag}: eta form disagrees with q -> -q of {TWINS[tag]}")
    if tag == "F":
        phi = build_named("Phi2Neg", trunc).expansion
        other = phi * bs.series_invert(v_p(v_p(phi, 2), 2).truncate(trunc))
        if other != expansion:
            raise CrossCheckFailed("F: eta form disagrees with Phi2(-q)/Phi2(-q^4)")
    return NamedFunction(tag, expansion, form, sign)


def named(tag: str, trunc: int) -> QSeries:
    return build_named(tag, trunc).expansion


# polynomials in a Hauptmodul


@dataclass(frozen=True)
class G8Polynomial:
    """Finite sum ``sum_r c_r G^r`` stored as a degree -> coefficient map."""

    coeffs: tuple  # sorted (degree, coefficient) pairs, zeros dropped

    def __init__(self, coeffs=None):
        items = dict(coeffs or {})
        object.__setattr__(self, "coeffs", tuple(sorted((int(r), int(c)) for r, c in items.items() if c)))

    def as_dict(self) -> dict:
        return dict(self.coeffs)

    def __getitem__(self, r):
        return self.as_dict().get(r, 0)

    def __iter__(self):
        return iter(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    @property
    def degree(self) -> int:
        return self.coeffs[-1][0] if self.coeffs else -1

    @property
    def low_degree(self) -> int:
        return self.coeffs[0][0] if self.coeffs else -1

    def __add__(self, other):
        out = self.as_dict()
        for r, c in other.coeffs:
            out[r] = out.get(r, 0) + c
        return G8Polynomial(out)

    def __mul__(self, other):
        if isinstance(other, int):
            return G8Polynomial({r: other * c for r, c in self.coeffs})
        out = {}
        for r, c in self.coeffs:
            for s, d in other.coeffs:
                out[r + s] = out.get(r + s, 0) + c * d
        return G8Polynomial(out)

    __rmul__ = __mul__

    def to_json(self) -> dict:
        return {str(r): str(c) for r, c in self.coeffs}


def _generator(trunc, generator):
    g = named("G8", trunc) if generator is None else generator.truncate(trunc)
    if g[0] != 0 or g[1] not in (1, -1):
        raise ValueError("fit generator must be q + O(q^2) up to sign")
    return g


def triangular_coefficients(target: QSeries, upto: int, include_constant=True, generator=None):
    """Coefficients c_0..c_upto with target = sum c_i G^i + O(q^(upto+1)),
    plus the residual series (exact through target.trunc).

    Pivots are units, so a target reduced mod 2^K yields every c_i mod 2^K.
    """
    target = target.integral()
    n = target.trunc
    K = target.modulus_exp
    g = _generator(n, generator)
    if K is not None:
        g = bs.reduce_mod2k(g, K)
    lead = g[1] if K is None else (1 if g[1] == 1 else -1)
    mask = None if K is None else (1 << K) - 1
    res = list(target.coeffs)
    out = {}
    if include_constant:
        out[0] = res[0]
        res[0] = 0
    power = QSeries.one(n, K)
    for i in range(1, min(upto, n) + 1):
        power = power * g
        c = res[i] * lead**i  # lead is +-1, so this divides exactly
        if mask is not None:
            c &= mask
        if c:
            out[i] = c
            pc = power.coeffs
            for k in range(i, n + 1):
                res[k] -= c * pc[k]
            if mask is not None:
                res[i:] = [x & mask for x in res[i:]]
    return G8Polynomial(out), QSeries(tuple(res), 0, K)


def fit_in_basis(target: QSeries, basis_max_degree: int, include_constant=True, generator=None,
                 guard: int = GUARD) -> G8Polynomial:
    """Express ``target`` as a polynomial of degree <= basis_max_degree in the
    generator (G8 by default); the residual must vanish through target.trunc."""
    target = target.integral()
    if target.trunc < basis_max_degree + guard:
        raise ValueError(
            f"trunc {target.trunc} leaves fewer than {guard} guard coefficients beyond degree {basis_max_degree}"
        )
    if not include_constant and target[0]:
        raise NotInSpan("nonzero constant term with constant excluded", 0)
    p, res = triangular_coefficients(target, basis_max_degree, include_constant, generator)
    bad = res.order()
    if bad is not None:
        raise NotInSpan(f"residual nonzero at q^{bad}", int(bad))
    return p


def eval_g8_polynomial(p: G8Polynomial, trunc: int, generator=None) -> QSeries:
    g = _generator(trunc, generator) if p.degree > 0 else None
    out = QSeries.zero(trunc)
    power = QSeries.one(trunc)
    last = 0
    for r, c in p.coeffs:
        if r > trunc:
            break
        for _ in range(r - last):
            power = power * g
        last = r
        out = out + power * c
    return out


# identities


@dataclass(frozen=True)
class IdentityVerdict:
    identity: str
    trunc: int
    passed: bool
    first_failure_exponent: int | None = None

    def to_dict(self) -> dict:
        d = {"identity": self.identity, "trunc": self.trunc, "pass": self.passed}
        if self.first_failure_exponent is not None:
            d["first_failure_exponent"] = self.first_failure_exponent
        return d

    def raise_if_failed(self):
        if not self.passed:
            raise IdentityViolated(self.identity, self.first_failure_exponent)
        return self


def _compare(name, lhs: QSeries, rhs: QSeries) -> IdentityVerdict:
    n = min(lhs.trunc, rhs.trunc)
    diff = lhs.truncate(n) - rhs.truncate(n)
    bad = diff.order()
    return IdentityVerdict(name, n, bad is None, None if bad is None else int(bad))


def _bump(c, perturb):
    return c - 1 if perturb else c


def _modeq1(trunc, perturb):
    g = named("G2", trunc)
    g2 = v_p(named("G2", trunc // 2), 2).truncate(trunc)
    return g * g, g2 + g * (g2 * 48 + g2 * g2 * _bump(4096, perturb))


def _modeq2(trunc, perturb):
    g = named("G8", trunc)
    h = v_p(named("G8", trunc // 2), 2).truncate(trunc)
    return g * g, (h * 8 + h * h * 32) * g + (h + h * h * _bump(4, perturb))


def _modeq3(trunc, perturb):
    coeffs = {1: 1, 2: 20, 3: 128, 4: _bump(256, perturb)}
    return named("G2", trunc), eval_g8_polynomial(G8Polynomial(coeffs), trunc)


def _g4g8(trunc, perturb):
    return named("Eta4OverEta1Pow8", trunc), eval_g8_polynomial(G8Polynomial({1: 1, 2: _bump(4, perturb)}), trunc)


def _u2_setup(trunc):
    # U2 halves the precision, so build inputs to 2*trunc + 1
    big = 2 * trunc + 1
    phi_sq = v_p(named("Phi2Neg", trunc // 2 + 1), 2).truncate(trunc)
    return big, phi_sq


def _g8u(trunc, perturb):
    big, _ = _u2_setup(trunc)
    return u_p(named("G8", big), 2), eval_g8_polynomial(G8Polynomial({1: 4, 2: _bump(16, perturb)}), trunc)


def _phi2u(trunc, perturb):
    big, phi_sq = _u2_setup(trunc)
    rhs = eval_g8_polynomial(G8Polynomial({0: 1, 1: _bump(4, perturb)}), trunc) * phi_sq
    return u_p(named("Phi2Neg", big), 2), rhs


def _phi2g8u(trunc, perturb):
    big, phi_sq = _u2_setup(trunc)
    lhs = u_p(named("Phi2Neg", big) * named("G8", big), 2)
    rhs = eval_g8_polynomial(G8Polynomial({1: 2, 2: _bump(8, perturb)}), trunc) * phi_sq
    return lhs, rhs


def _phi2g2u(trunc, perturb):
    big, phi_sq = _u2_setup(trunc)
    lhs = u_p(named("Phi2Neg", big) * named("G2Neg", big), 2)
    coeffs = dict(P_COEFFS)
    coeffs[9] = _bump(coeffs[9], perturb)
    return lhs, eval_g8_polynomial(G8Polynomial(coeffs), trunc) * phi_sq


MODULAR_EQUATIONS = {"modeq1": _modeq1, "modeq2": _modeq2, "modeq3": _modeq3, "G4G8": _g4g8}
U2_ACTIONS = {"G8U": _g8u, "Phi2U": _phi2u, "Phi2G8U": _phi2g8u, "Phi2G2U": _phi2g2u}


def verify_modular_equation(identity: str, trunc: int = 200, perturb=False) -> IdentityVerdict:
    if identity not in MODULAR_EQUATIONS:
        raise UnknownName(identity)
    lhs, rhs = MODULAR_EQUATIONS[identity](trunc, perturb)
    return _compare(identity, lhs, rhs)


def verify_u2_action(identity: str, trunc: int = 200, perturb=False) -> IdentityVerdict:
    if identity not in U2_ACTIONS:
        raise UnknownName(identity)
    lhs, rhs = U2_ACTIONS[identity](trunc, perturb)
    return _compare(identity, lhs, rhs)


def eta_negate(e: EtaQuotient):
    """The eta quotient equal to e(tau + 1/2) up to a root of unity, and the
    sign relating their integer q-series when the offset is integral.

    Odd delta: eta(delta t + 1/2 mod 1) ~ eta(2 delta t)^3 / (eta(delta t) eta(4 delta t)).
    Even delta: eta(delta t + delta/2) ~ eta(delta t).
    """
    exps = {}
    level = e.level
    for d, m in e.exponents:
        if d % 2:
            level = 4 * e.level
            for dd, k in ((2 * d, 3 * m), (d, -m), (4 * d, -m)):
                exps[dd] = exps.get(dd, 0) + k
        else:
            exps[d] = exps.get(d, 0) + m
    off = e.offset
    sign = -1 if off.denominator == 1 and off.numerator % 2 else 1
    return sign, EtaQuotient(level, exps)


def verify_eta_halfshift(trunc: int = 64) -> IdentityVerdict:
    """q -> -q on eta quotients, checked factor by factor and on the
    product identities G8(-q)G8(q) and G2(-q)G2(q)."""
    failures = []
    for tag in ("Phi2", "G2", "G8", "Eta4OverEta1Pow8", "F"):
        _, form = ETA_FORMS[tag]
        sign, neg = eta_negate(form)
        lhs = alternate_sign(eta_series(form, trunc))
        failures.append(_compare(tag, lhs, eta_series(neg, trunc) * sign).first_failure_exponent)
    for tag, base in TWINS.items():
        sign, form = ETA_FORMS[tag]
        s2, neg = eta_negate(ETA_FORMS[base][1])
        if (s2, dict(neg.exponents)) != (sign, dict(form.exponents)):
            failures.append(0)
    prod8 = named("G8Neg", trunc) * named("G8", trunc)
    failures.append(_compare("G8G8", prod8, -eta_series(EtaQuotient(8, {8: 8, 2: -8}), trunc)).first_failure_exponent)
    prod2 = named("G2Neg", trunc) * named("G2", trunc)
    g2sq = v_p(named("G2", trunc // 2), 2).truncate(trunc)
    failures.append(_compare("G2G2", prod2, -g2sq).first_failure_exponent)
    bad = [f for f in failures if f is not None]
    return IdentityVerdict("eta_halfshift", trunc, not bad, min(bad) if bad else None)


def quadratic_relations(trunc: int) -> list[IdentityVerdict]:
    """Root sums and products of the two quadratics whose roots are G(q), G(-q)."""
    g2, g2n = named("G2", trunc), named("G2Neg", trunc)
    h2 = v_p(named("G2", trunc // 2), 2).truncate(trunc)
    g8, g8n = named("G8", trunc), named("G8Neg", trunc)
    h8 = v_p(named("G8", trunc // 2), 2).truncate(trunc)
    return [
        _compare("G2 root sum", g2 + g2n, h2 * 48 + h2 * h2 * 4096),
        _compare("G2 root product", g2 * g2n, -h2),
        _compare("G8 root sum", g8 + g8n, h8 * 8 + h8 * h8 * 32),
        _compare("G8 root product", g8 * g8n, -(h8 + h8 * h8 * 4)),
    ]


def all_identities(trunc: int = 200, perturb=False) -> list[IdentityVerdict]:
    out = [verify_modular_equation(k, trunc, perturb) for k in MODULAR_EQUATIONS]
    out += [verify_u2_action(k, trunc, perturb) for k in U2_ACTIONS]
    out.append(verify_eta_halfshift(trunc))
    return out
