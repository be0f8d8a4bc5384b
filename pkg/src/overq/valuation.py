"""Coefficient tables for iterated U2 and their 2-adic audits.

With G = G8 and phi = Phi2(-q):

    G^j | U2              = sum_r t[j][r] G^r
    (phi G^j) | U2        = phi(q^2) sum_r u[j][r] G^r
    L_1^s = (phi G2(-q)^s) | U2 = phi(q^2) sum_j c_1[j] G^j
    L_{2a}^s   = L_{2a-1}^s | U2 = phi(q)   sum_j b_a[j] G^j
    L_{2a+1}^s = L_{2a}^s   | U2 = phi(q^2) sum_j c_{a+1}[j] G^j

Rows of every family are finite polynomials in G.  They are built twice,
by recurrence/convolution and by fitting directly iterated q-series, and
the two must agree exactly.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from functools import lru_cache

from .bigseries import nu2, series_invert, u_p, v_p
from .errors import BoundViolated, CrossCheckFailed, SupportViolation
from .etaq import eta_series
from .hauptmodul import (
    ETA_FORMS,
    GUARD,
    P_COEFFS,
    G8Polynomial,
    eval_g8_polynomial,
    fit_in_basis,
    named,
    triangular_coefficients,
)

# modular equation for G8: G^2 = (8h + 32h^2) G + (h + 4h^2), h = G(q^2)
STEP_SELF = G8Polynomial({1: 8, 2: 32})
STEP_PREV = G8Polynomial({1: 1, 2: 4})
# G2 in terms of G8
G2_IN_G8 = G8Polynomial({1: 1, 2: 20, 3: 128, 4: 256})


def _ceil_half(j):
    return -(-j // 2)


@dataclass(frozen=True)
class CoeffTable:
    name: str
    rows: tuple  # rows[j] is a G8Polynomial

    @property
    def jmax(self) -> int:
        return len(self.rows) - 1

    def __getitem__(self, j) -> G8Polynomial:
        return self.rows[j]

    def entries(self):
        for j, row in enumerate(self.rows):
            for r, c in row.coeffs:
                yield j, r, c


def _recurrence_row(prev2, prev1):
    """Row k+1 from rows k-1 and k:
    x_{k+1,r} = x_{k-1,r-1} + 8 x_{k,r-1} + 4 x_{k-1,r-2} + 32 x_{k,r-2}."""
    a, b = prev2.as_dict(), prev1.as_dict()
    lo = min(prev2.low_degree, prev1.low_degree) + 1
    hi = max(prev2.degree, prev1.degree) + 2
    row = {}
    for r in range(lo, hi + 1):
        v = a.get(r - 1, 0) + 8 * b.get(r - 1, 0) + 4 * a.get(r - 2, 0) + 32 * b.get(r - 2, 0)
        if v:
            row[r] = v
    return G8Polynomial(row)


@lru_cache(maxsize=8)
def _t_rows(jmax):
    rows = [G8Polynomial({0: 1}), G8Polynomial({1: 4, 2: 16}), G8Polynomial({1: 1, 2: 36, 3: 256, 4: 512})]
    while len(rows) <= jmax:
        rows.append(_recurrence_row(rows[-2], rows[-1]))
    return tuple(rows[: jmax + 1])


def t_table(jmax: int) -> CoeffTable:
    """t[j][r] for 0 <= j <= jmax (row 0 is the trivial 1 | U2 = 1)."""
    rows = _t_rows(max(jmax, 2))[: jmax + 1]
    for j, row in enumerate(rows[1:], 1):
        if row.low_degree < _ceil_half(j) or row.degree > 2 * j:
            raise SupportViolation(f"t row {j} has support {row.low_degree}..{row.degree}")
    return CoeffTable("t", rows)


@lru_cache(maxsize=8)
def _u_rows(jmax):
    rows = [G8Polynomial({0: 1, 1: 4}), G8Polynomial({1: 2, 2: 8})]
    while len(rows) <= jmax:
        rows.append(_recurrence_row(rows[-2], rows[-1]))
    return tuple(rows[: jmax + 1])


def u_table(jmax: int) -> CoeffTable:
    return CoeffTable("u", _u_rows(max(jmax, 1))[: jmax + 1])


def t_row_by_fit(j: int) -> G8Polynomial:
    n = 2 * j + GUARD
    return fit_in_basis(u_p(named("G8", 2 * n + 1) ** j, 2), 2 * j)


def u_row_by_fit(j: int) -> G8Polynomial:
    deg = max(2 * j, 1)  # u[0] = 1 + 4G
    n = deg + GUARD
    big = 2 * n + 1
    lhs = u_p(named("Phi2Neg", big) * named("G8", big) ** j, 2)
    phi_sq = v_p(named("Phi2Neg", n // 2 + 1), 2).truncate(n)
    return fit_in_basis(lhs * series_invert(phi_sq), deg)


# first tower row


def row1_support(s: int):
    return _ceil_half(s), 8 * s + 1


def c1_by_fit(s: int) -> G8Polynomial:
    lo, hi = row1_support(s)
    n = hi + GUARD
    big = 2 * n + 1
    base = named("Phi2Neg", big) * named("G2Neg", big) ** s
    phi_sq = v_p(named("Phi2Neg", n // 2 + 1), 2).truncate(n)
    row = fit_in_basis(u_p(base, 2) * series_invert(phi_sq), hi)
    if row and (row.low_degree < lo or row.degree > hi):
        raise SupportViolation(f"s={s}: row 1 support {row.low_degree}..{row.degree} outside {lo}..{hi}")
    return row


def g2_square_step():
    """(A, B) with G2(-q)^2 = A(G8(q^2)) + G2(-q) B(G8(q^2))."""
    A = G2_IN_G8
    return A, A * 48 + A * A * 4096


def c1_by_recurrence(s: int) -> G8Polynomial:
    A, B = g2_square_step()
    rows = [G8Polynomial({0: 1, 1: 4}), G8Polynomial(P_COEFFS)]
    while len(rows) <= s:
        rows.append(rows[-2] * A + rows[-1] * B)
    return rows[s]


# the tower


@dataclass(frozen=True)
class LTowerRow:
    s: int
    level: int  # m in L_m
    coeffs: G8Polynomial
    certified_degree: int = -1  # coefficients up to here matched the direct series fit

    @property
    def parity(self) -> str:
        return "odd" if self.level % 2 else "even"

    @property
    def alpha(self) -> int:
        """Index a of c_a (odd level 2a-1) or b_a (even level 2a)."""
        return (self.level + 1) // 2

    @property
    def family(self) -> str:
        return "c" if self.level % 2 else "b"

    def required(self, j: int) -> int:
        if self.level % 2:
            return 2 * self.alpha + 2 * j - self.s - 2
        return 2 * self.alpha + 2 * j - self.s - 1


def convolve(row: G8Polynomial, table: CoeffTable) -> G8Polynomial:
    """sum_j row[j] * table[j] as a polynomial."""
    out = {}
    for j, c in row.coeffs:
        for r, t in table[j].coeffs:
            out[r] = out.get(r, 0) + c * t
    return G8Polynomial(out)


def _direct_levels(s, alpha_max, trunc):
    """Directly iterated U2 series L_1..L_alpha_max, each divided by its
    phi(q^eps) factor."""
    big = trunc
    base = named("Phi2Neg", big) * named("G2Neg", big) ** s
    out = []
    cur = base
    for m in range(1, alpha_max + 1):
        cur = u_p(cur, 2)
        n = cur.trunc
        if m % 2:
            phi = v_p(named("Phi2Neg", n // 2 + 1), 2).truncate(n)
        else:
            phi = named("Phi2Neg", n)
        out.append((cur, cur * series_invert(phi)))
    return out


@dataclass
class Tower:
    s: int
    rows: list
    series: list = field(default_factory=list)  # direct L_m series (unreduced)


def default_trunc(alpha_max: int, certify: int = 20) -> int:
    return 2**alpha_max * (certify + GUARD + 1)


def l_tower(s: int, alpha_max: int, trunc: int | None = None, certify: int = 20) -> Tower:
    """Rows of L_1..L_alpha_max for a fixed power s of G2.

    ``trunc`` is the precision of the base series phi(q) G2(-q)^s; level m is
    checked against the direct series through q^(trunc / 2^m).
    """
    if trunc is None:
        trunc = default_trunc(alpha_max, certify)
    row = c1_by_fit(s)
    if row != c1_by_recurrence(s):
        raise CrossCheckFailed(f"s={s}: row 1 fit disagrees with the G2 recurrence")
    polys = [row]
    for m in range(2, alpha_max + 1):
        prev = polys[-1]
        if m % 2 == 0:
            polys.append(convolve(prev, t_table(max(prev.degree, 2))))
        else:
            polys.append(convolve(prev, u_table(max(prev.degree, 1))))
    direct = _direct_levels(s, alpha_max, trunc)
    rows = []
    for m, (poly, (series, quotient)) in enumerate(zip(polys, direct), 1):
        n = series.trunc
        # reconstruction below pins every coefficient through q^n; the fit
        # is the independent route and only needs to reach past the row
        k = min(n, max(poly.degree, certify) + GUARD)
        fitted, _ = triangular_coefficients(quotient.truncate(k), k)
        expected = G8Polynomial({r: c for r, c in poly.coeffs if r <= k})
        if fitted != expected:
            raise CrossCheckFailed(f"s={s}, level {m}: recurrence row disagrees with direct series fit")
        eps = 2 if m % 2 else 1
        phi = named("Phi2Neg", n) if eps == 1 else v_p(named("Phi2Neg", n // 2 + 1), 2).truncate(n)
        if eval_g8_polynomial(poly, n) * phi != series:
            raise CrossCheckFailed(f"s={s}, level {m}: reconstruction disagrees with direct series")
        rows.append(LTowerRow(s, m, poly, n))
    return Tower(s, rows, [d[0] for d in direct])


# audit


@dataclass(frozen=True)
class AuditEntry:
    family: str  # t, u, c, b, corollary
    s: int | None
    level: int | None
    j: int
    r: int | None
    value: int | None
    actual: float
    required: int
    modulus_exp: int | None = None  # set when only a residue mod 2^K was computed

    @property
    def slack(self) -> float:
        return self.actual - self.required

    @property
    def ok(self) -> bool:
        return self.actual >= self.required


@dataclass
class AuditReport:
    entries: list

    @property
    def passed(self) -> bool:
        return all(e.ok for e in self.entries)

    def violations(self):
        return [e for e in self.entries if not e.ok]

    def summary(self) -> dict:
        fam = {}
        for e in self.entries:
            f = fam.setdefault(e.family, {"checked": 0, "violations": 0, "min_slack": None})
            f["checked"] += 1
            f["violations"] += not e.ok
            if e.slack != float("inf"):
                f["min_slack"] = e.slack if f["min_slack"] is None else min(f["min_slack"], e.slack)
        return {"pass": self.passed, "families": fam}

    def raise_if_failed(self):
        bad = self.violations()
        if bad:
            e = bad[0]
            raise BoundViolated(f"{e.family} bound fails at s={e.s}, level={e.level}, j={e.j}, r={e.r}",
                                (e.s, e.level, e.j, e.r))
        return self

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(["family", "s", "level", "j", "r", "coefficient", "pi2_actual", "pi2_required", "slack",
                    "modulus_exp"])
        blank = lambda v: "" if v is None else v  # noqa: E731
        for e in self.entries:
            act = "inf" if e.actual == float("inf") else e.actual
            slack = "inf" if e.slack == float("inf") else e.slack
            w.writerow([e.family, blank(e.s), blank(e.level), e.j, blank(e.r), blank(e.value), act, e.required,
                        slack, blank(e.modulus_exp)])
        return buf.getvalue()

    def to_json(self) -> str:
        return json.dumps(self.summary(), sort_keys=True)


def audit_valuations(tables=(), towers=(), inject_violation=False) -> AuditReport:
    entries = []
    for table in tables:
        for j, r, c in table.entries():
            entries.append(AuditEntry(table.name, None, None, j, r, c, nu2(c), 2 * r - j))
    for tower in towers:
        for row in tower.rows:
            for j, c in row.coeffs:
                entries.append(AuditEntry(row.family, row.s, row.level, j, None, c, nu2(c), row.required(j)))
        for m, series in enumerate(tower.series, 1):
            a = (m + 1) // 2
            need = 2 * a - tower.s if m % 2 else 2 * a - tower.s + 1
            actual = min((nu2(c) for c in series.coeffs), default=float("inf"))
            entries.append(AuditEntry("corollary", tower.s, m, 0, None, None, actual, need))
    if inject_violation and entries:
        e = entries[0]
        entries[0] = AuditEntry(e.family, e.s, e.level, e.j, e.r, e.value, e.required - 1, e.required)
    return AuditReport(entries)


def _required(s, level, j):
    return LTowerRow(s, level, G8Polynomial()).required(j)


def deep_tower_audit(s: int, levels: int, certify: int = 20, modulus_exp: int | None = None) -> list:
    """Audit rows of L_1..L_levels for j <= certify from the directly iterated
    series reduced mod 2^K.

    Full rows of deep levels have thousands of huge entries, but a residue
    mod 2^K with K above every required bound is enough to certify the lower
    bounds.  Entries report min(pi2, K) and carry ``modulus_exp``.
    """
    if modulus_exp is None:
        modulus_exp = max(_required(s, m, certify) for m in range(1, levels + 1)) + 8
    K = modulus_exp
    trunc = 2**levels * (certify + 1) + 2**levels - 1

    def mod_named(tag, n):
        sign, form = ETA_FORMS[tag]
        return eta_series(form, n, K) * sign

    cur = mod_named("Phi2Neg", trunc) * mod_named("G2Neg", trunc) ** s
    entries = []
    for m in range(1, levels + 1):
        cur = u_p(cur, 2)
        n = cur.trunc
        if m % 2:
            phi = v_p(mod_named("Phi2Neg", n // 2 + 1), 2).truncate(n)
        else:
            phi = mod_named("Phi2Neg", n)
        quotient = cur * series_invert(phi)
        k = min(n, certify)
        row, _ = triangular_coefficients(quotient.truncate(k), k)
        fam = "c" if m % 2 else "b"
        for j in range(1, k + 1):
            c = row[j]
            actual = K if c == 0 else min(nu2(c), K)
            entries.append(AuditEntry(fam, s, m, j, None, None, actual, _required(s, m, j), K))
        a = (m + 1) // 2
        need = 2 * a - s if m % 2 else 2 * a - s + 1
        actual = min((min(nu2(c), K) if c else K for c in cur.coeffs), default=K)
        entries.append(AuditEntry("corollary", s, m, 0, None, None, actual, need, K))
    return entries
