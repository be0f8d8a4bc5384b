"""Command line entry point.

Exit codes: 0 everything passed, 1 a counterexample or failed identity,
2 usage or resource error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import __version__
from . import bigseries as bs
from . import congruence, etaq, hauptmodul, valuation
from .errors import BudgetExceeded, OverqError, UnknownName

CACHE_ENV = "OVERQ_CACHE_DIR"

NAME_ALIASES = {tag.lower(): tag for tag in hauptmodul.ETA_FORMS}
NAME_ALIASES.update({"g2neg": "G2Neg", "g8neg": "G8Neg", "phi2neg": "Phi2Neg", "eta4": "Eta4OverEta1Pow8"})


def parse_exponents(text: str) -> dict:
    """'1:-4,2:2,4:-2,8:4' -> {1: -4, 2: 2, 4: -2, 8: 4}"""
    out = {}
    for part in text.split(","):
        d, m = part.split(":")
        out[int(d)] = out.get(int(d), 0) + int(m)
    return out


def parse_int_list(text: str) -> list[int]:
    out = []
    for part in str(text).split(","):
        if "-" in part[1:]:
            lo, hi = part.split("-", 1)
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(part))
    return out


def _emit(args, command, result, text=None, csv_text=None):
    if args.format == "csv" and csv_text is not None:
        payload = csv_text
    elif args.format == "text" and text is not None:
        payload = text
    else:
        payload = json.dumps({"command": command, "result": result, "meta": {"version": __version__}},
                             indent=2, sort_keys=True)
    if args.out:
        Path(args.out).write_text(payload if payload.endswith("\n") else payload + "\n")
    else:
        print(payload)


def _cache_dir(args):
    d = args.cache_dir or os.environ.get(CACHE_ENV)
    return Path(d) if d else None


def _expand_series(args):
    if args.eta:
        level, _, exps = args.eta.partition("/")
        e = etaq.EtaQuotient(int(level), parse_exponents(exps))
        return f"eta_{level}_{exps}", etaq.eta_expansion(e, args.trunc, args.mod)
    tag = NAME_ALIASES.get(args.name.lower())
    if tag is None:
        raise UnknownName(f"unknown name {args.name!r}; try one of {', '.join(sorted(NAME_ALIASES))}")
    cache = _cache_dir(args)
    path = cache / f"{tag}_{args.trunc}_{args.mod}.json" if cache else None
    if path and path.exists():
        return tag, bs.load(path)
    s = hauptmodul.named(tag, args.trunc)
    if args.mod:
        s = bs.reduce_mod2k(s, args.mod)
    if path:
        path.parent.mkdir(parents=True, exist_ok=True)
        bs.dump(s, path)
    return tag, s


def cmd_expand(args):
    name, s = _expand_series(args)
    text = ",".join(str(c) for c in s.coeffs)
    if s.offset:
        text = f"q^({s.offset}) * [{text}]"
    _emit(args, "expand", {"name": name, **bs.to_record(s)}, text=text)
    return 0


def cmd_check_identities(args):
    verdicts = hauptmodul.all_identities(args.trunc, perturb=args.perturb)
    ok = all(v.passed for v in verdicts)
    lines = [f"{'PASS' if v.passed else 'FAIL'} {v.identity} (trunc {v.trunc})"
             + ("" if v.passed else f" first failure q^{v.first_failure_exponent}") for v in verdicts]
    _emit(args, "check-identities", {"pass": ok, "identities": [v.to_dict() for v in verdicts]},
          text="\n".join(lines))
    return 0 if ok else 1


def cmd_etaq(args):
    e = etaq.EtaQuotient(args.level, parse_exponents(args.exponents))
    verdict = etaq.newman_check(e)
    report = etaq.cusp_orders(e)
    result = {"level": e.level, "exponents": {str(d): m for d, m in e.exponents},
              "newman": verdict.to_dict(), "cusps": report.to_dict()}
    if args.ell:
        N = e.level // args.ell
        result["gordon_hughes"] = [
            {"num": c.num, "den": c.den, "bound": str(etaq.gordon_hughes_bound(e, args.ell, N, c))}
            for c in etaq.cusp_set(N)
        ]
    lines = [f"newman: {verdict.to_dict()}"]
    lines += [f"cusp {c} (width {c.width}): order {o}" for c, o in report.orders]
    _emit(args, "etaq", result, text="\n".join(lines))
    return 0


def cmd_valuations(args):
    tables = [valuation.t_table(args.jmax), valuation.u_table(args.jmax)]
    towers = [valuation.l_tower(s, args.alpha) for s in range(1, args.smax + 1)]
    report = valuation.audit_valuations(tables, towers, inject_violation=args.inject_violation)
    if args.deep:
        extra = []
        for s in range(1, args.smax + 1):
            extra += valuation.deep_tower_audit(s, args.deep, certify=args.jmax)
        report = valuation.AuditReport(report.entries + extra)
    summary = report.summary()
    summary["rows"] = [
        {"s": r.s, "level": r.level, "family": r.family, "low": r.coeffs.low_degree, "high": r.coeffs.degree,
         "certified_degree": r.certified_degree}
        for tw in towers for r in tw.rows
    ]
    _emit(args, "valuations", summary, csv_text=report.to_csv())
    return 0 if report.passed else 1


def _report_out(args, command, reports):
    ok = all(r.passed for r in reports)
    lines = []
    for r in reports:
        c = r.claim
        extra = f" max_valid_K={r.max_valid_K}" if c.kind == "scan" else ""
        lines.append(f"{r.verdict.upper()} {c.kind} ell={c.ell} alpha={c.alpha} K={c.K} n<={c.n_max}"
                     f" checked={r.checked}{extra}")
    csv_lines = ["ell,alpha,n_max,verdict,checked,max_valid_K"]
    csv_lines += [f"{r.claim.ell},{r.claim.alpha},{r.claim.n_max},{r.verdict},{r.checked},"
                  f"{'' if r.max_valid_K is None else r.max_valid_K}" for r in reports]
    _emit(args, command, [r.to_dict() for r in reports], text="\n".join(lines), csv_text="\n".join(csv_lines))
    if any(r.verdict == "fail" for r in reports):
        return 1
    return 0 if ok else 2


def cmd_verify(args):
    reports = [congruence.verify_main_congruence(ell, a, args.nmax)
               for ell in parse_int_list(args.ell) for a in parse_int_list(args.alpha)]
    return _report_out(args, "verify", reports)


def cmd_corollary(args):
    reports = [congruence.verify_corollary_congruence(ell, a, args.nmax, budget=args.budget)
               for ell in parse_int_list(args.ell) for a in parse_int_list(args.alpha)]
    return _report_out(args, "corollary", reports)


def cmd_scan(args):
    reports = [congruence.scan_max_power(ell, a, args.nmax, budget=args.budget)
               for ell in parse_int_list(args.ell) for a in parse_int_list(args.alpha)]
    return _report_out(args, "scan", reports)


def cmd_garvan_morrow(args):
    fits = [congruence.fit_garvan_morrow(ell, args.trunc) for ell in parse_int_list(args.ell)]
    text = "\n".join(f"ell={f.ell}: " + ", ".join(f"a({s})={a}" for s, a in sorted(f.coeffs.items())) for f in fits)
    _emit(args, "garvan-morrow", [f.to_dict() for f in fits], text=text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "csv", "text"], default="json")
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--cache-dir", help=f"series cache directory (env {CACHE_ENV})")
    common.add_argument("--budget", type=int, default=congruence.EXACT_BUDGET,
                        help="largest exact overpartition index to compute")

    p = argparse.ArgumentParser(prog="overq", description="Overpartition congruences modulo powers of 2")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("expand", parents=[common], help="print a q-expansion")
    e.add_argument("name", nargs="?", default="phi2")
    e.add_argument("--eta", help="eta quotient as LEVEL/d:m,d:m,...")
    e.add_argument("--trunc", type=int, default=20)
    e.add_argument("--mod", type=int, help="reduce coefficients mod 2^K")
    e.set_defaults(func=cmd_expand)

    c = sub.add_parser("check-identities", parents=[common], help="verify the modular equations and U2 actions")
    c.add_argument("--trunc", type=int, default=200)
    c.add_argument("--perturb", action="store_true", help="perturb one constant per identity (must fail)")
    c.set_defaults(func=cmd_check_identities)

    q = sub.add_parser("etaq", parents=[common], help="Newman conditions and cusp orders of an eta quotient")
    q.add_argument("--level", type=int, required=True)
    q.add_argument("--exponents", required=True, help="d:m pairs, e.g. 1:-4,2:2,4:-2,8:4")
    q.add_argument("--ell", type=int, help="also report Gordon-Hughes bounds for U_ell")
    q.set_defaults(func=cmd_etaq)

    v = sub.add_parser("valuations", parents=[common], help="coefficient tables and 2-adic audit")
    v.add_argument("--smax", type=int, default=2)
    v.add_argument("--alpha", type=int, default=4, help="number of U2 levels L_1..L_alpha")
    v.add_argument("--jmax", type=int, default=20)
    v.add_argument("--deep", type=int, default=0, help="also audit L_1..L_deep mod 2^K for j <= jmax")
    v.add_argument("--inject-violation", action="store_true")
    v.set_defaults(func=cmd_valuations)

    for name, func, helptext in (
        ("verify", cmd_verify, "check the Hecke-type congruence mod 2^(alpha+12)"),
        ("scan", cmd_scan, "largest power of 2 for which the relation holds"),
        ("corollary", cmd_corollary, "check the ell^3 n specialization"),
    ):
        s = sub.add_parser(name, parents=[common], help=helptext)
        s.add_argument("--ell", default="3", help="odd prime(s), e.g. 3,5")
        s.add_argument("--alpha", default="1", help="alpha value(s), e.g. 0-3")
        s.add_argument("--nmax", type=int, default=1000)
        s.set_defaults(func=func)

    g = sub.add_parser("garvan-morrow", parents=[common], help="fit the integers a(s)")
    g.add_argument("--ell", default="3")
    g.add_argument("--trunc", type=int, default=500)
    g.set_defaults(func=cmd_garvan_morrow)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (BudgetExceeded, UnknownName, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OverqError as exc:
        print(f"failed: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
