"""Command-line verification harness.

Exit codes: 0 when every asserted check passes, 1 on a failed assertion or
a VIOLATION certificate, 2 on an invalid configuration.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from datetime import datetime, timezone
from fractions import Fraction

from . import __version__
from .bases import basis_ids, basis_element, full_basis, random_element, space_dim
from .bernstein import (THEOREMS, BernsteinError, TheoremId, Verdict, certify, rayleigh_max, sharpness_check,
                        theorem_id)
from .gpoly import GPolyError, parse_rational, to_text
from .moments import DomainError, DomainSpec, Kind, inner
from .operators import (apply_ball_op, ball_op_divergence, decomposition_residual, eigen_residual,
                        integral_R_identity, integral_ball_identity, integral_surface_identity,
                        ball_integral_forms, selfadjoint_gap)
from .quadcheck import crosscheck
from .surface import SurfaceFun

WORKERS_ENV = "PARABERN_WORKERS"


class ConfigError(ValueError):
    pass


def _rat(s: str) -> Fraction:
    try:
        return parse_rational(s)
    except (GPolyError, ZeroDivisionError) as exc:
        raise ConfigError(f"invalid rational {s!r}; use p/q or an integer") from exc


def _domain(args, th: TheoremId | None = None) -> DomainSpec:
    kind = args.domain
    if kind is None:
        if th is None:
            raise ConfigError("--domain is required")
        kind = THEOREMS[th].kinds[0].value
    try:
        k = Kind(kind)
    except ValueError:
        raise ConfigError(f"unknown domain {kind!r}") from None
    try:
        return DomainSpec(k, args.d, _rat(args.gamma), _rat(args.mu))
    except DomainError as exc:
        raise ConfigError(str(exc)) from exc


def _workers() -> int:
    raw = os.environ.get(WORKERS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise ConfigError(f"{WORKERS_ENV} must be an integer, got {raw!r}") from None


def _fmt_element(f) -> str:
    return f.to_text() if isinstance(f, SurfaceFun) else to_text(f)


# commands --------------------------------------------------------------------------

def cmd_eigen(args) -> tuple[list[dict], bool]:
    dom = _domain(args)
    rows, ok = [], True
    for n in range(args.nmax + 1):
        for bid in basis_ids(dom, n):
            r = eigen_residual(bid, literal=args.operator_literal)
            good = r.is_zero and r.polynomial
            ok &= good
            row = {"id": bid.label(), "n": bid.n, "m": bid.m, "eigenvalue": str(r.eigenvalue),
                   "residual_zero": r.is_zero, "polynomial": r.polynomial}
            if not r.is_zero:
                row["residual"] = _fmt_element(r.residual)
            rows.append(row)
    return rows, ok


def cmd_orthogonality(args) -> tuple[list[dict], bool]:
    dom = _domain(args)
    basis = full_basis(dom, args.nmax)
    rows, ok = [], True
    for i, (bi, ei) in enumerate(basis):
        off = [bj.label() for bj, ej in basis[i + 1:] if inner(dom, ei, ej) != 0]
        nrm = inner(dom, ei, ei)
        good = not off and nrm > 0
        ok &= good
        rows.append({"id": bi.label(), "norm2": str(nrm), "nonzero_off_diagonal": off, "ok": good})
    for n in range(args.nmax + 1):
        cnt = len(basis_ids(dom, n))
        want = space_dim(dom, n)
        ok &= cnt == want
        rows.append({"id": f"dim V_{n}", "count": cnt, "expected": want, "ok": cnt == want})
    return rows, ok


def cmd_decomposition(args) -> tuple[list[dict], bool]:
    dom = _domain(args)
    rows, ok = [], True
    for s in range(args.seed, args.seed + args.trials):
        f = random_element(dom, args.nmax, s)
        g = random_element(dom, args.nmax, s + 10 ** 6)
        row: dict = {"seed": s}
        if dom.kind is Kind.BALL:
            row["operator_identity"] = apply_ball_op(f, dom.mu) == ball_op_divergence(f, dom.mu)
            forms = ball_integral_forms(dom.d, dom.mu, f, g)
            row["integral_identity"] = len(set(forms.values())) == 1
        else:
            row["operator_identity"] = decomposition_residual(dom, f).is_zero()
            a, b = integral_R_identity(dom, f, g)
            row["R_identity"] = a == b
            if dom.kind.is_surface:
                a, b = integral_surface_identity(dom, f, g)
                row["integral_identity"] = a == b
            else:
                forms = integral_ball_identity(dom, f, g)
                row["integral_identity"] = len(set(forms.values())) == 1
        good = all(v for k, v in row.items() if k != "seed")
        ok &= good
        rows.append(row)
    return rows, ok


def cmd_selfadjoint(args) -> tuple[list[dict], bool]:
    dom = _domain(args)
    rows, ok = [], True
    for s in range(args.seed, args.seed + args.trials):
        f = random_element(dom, args.nmax, s)
        g = random_element(dom, args.nmax, s + 10 ** 6)
        gap = selfadjoint_gap(dom, f, g, literal=args.operator_literal)
        ok &= gap == 0
        rows.append({"seed": s, "gap": str(gap), "ok": gap == 0})
    return rows, ok


def _certify_job(job):
    th, dom, n, seed, literal = job
    return certify(th, random_element(dom, n, seed), dom, n, literal).to_dict()


def cmd_bernstein(args) -> tuple[list[dict], bool]:
    th = _theorem(args)
    dom = _domain(args, th)
    n = _degree(args)
    jobs = [(th, dom, n, s, args.literal_constants) for s in range(args.seed, args.seed + args.trials)]
    workers = _workers()
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(workers) as ex:
            rows = list(ex.map(_certify_job, jobs))
    else:
        rows = [_certify_job(j) for j in jobs]
    ok = all(r["verdict"] != Verdict.VIOLATION.value for r in rows)
    return rows, ok


def cmd_sharpness(args) -> tuple[list[dict], bool]:
    th = _theorem(args)
    dom = _domain(args, th)
    degrees = [args.n] if args.n is not None else range(args.nmax + 1)
    rows, ok = [], True
    for n in degrees:
        try:
            cert = sharpness_check(th, dom, n, args.literal_constants)
        except BernsteinError as exc:
            rows.append({"theorem": th.value, "n": n, "skipped": str(exc)})
            continue
        row = cert.to_dict()
        if cert.note == "asserted":
            row["ok"] = cert.verdict is Verdict.EQUALITY
            ok &= row["ok"]
        else:
            ok &= cert.verdict is not Verdict.VIOLATION
        rows.append(row)
    return rows, ok


def cmd_rayleigh(args) -> tuple[list[dict], bool]:
    th = _theorem(args)
    dom = _domain(args, th)
    n = _degree(args)
    res = rayleigh_max(th, dom, n, args.literal_constants)
    row = res.to_dict()
    ok = True
    b = float(res.bound)
    if THEOREMS[th].sharp:
        err = abs(res.value - b) / max(abs(b), 1.0)
        row["rel_error"] = repr(err)
        row["ok"] = err < 1e-8
        ok = row["ok"]
    else:
        row["sharp"] = "not asserted"
        ok = res.value <= b * (1 + 1e-8) + 1e-12
    return [row], ok


def cmd_crosscheck(args) -> tuple[list[dict], bool]:
    dom = _domain(args)
    rep = crosscheck(dom, args.trials, args.seed)
    rows = [r.to_dict() for r in rep.rows]
    for w in rep.warnings:
        print(f"warning: {w}", file=sys.stderr)
    return rows, rep.passed


def cmd_dump_basis(args) -> tuple[list[dict], bool]:
    dom = _domain(args)
    rows = []
    for bid, e in full_basis(dom, args.nmax):
        rows.append({"id": bid.label(), "n": bid.n, "m": bid.m, "element": _fmt_element(e),
                     "norm2": str(inner(dom, e, e))})
    return rows, True


def _theorem(args) -> TheoremId:
    if not args.theorem:
        raise ConfigError("--theorem is required")
    try:
        return theorem_id(args.theorem)
    except BernsteinError as exc:
        raise ConfigError(str(exc)) from exc


def _degree(args) -> int:
    n = args.n if args.n is not None else args.nmax
    if n < 0:
        raise ConfigError("degree must be non-negative")
    return n


COMMANDS = {
    ("verify", "eigen"): cmd_eigen,
    ("verify", "orthogonality"): cmd_orthogonality,
    ("verify", "decomposition"): cmd_decomposition,
    ("verify", "selfadjoint"): cmd_selfadjoint,
    ("verify", "bernstein"): cmd_bernstein,
    ("sharpness",): cmd_sharpness,
    ("rayleigh",): cmd_rayleigh,
    ("crosscheck",): cmd_crosscheck,
    ("dump-basis",): cmd_dump_basis,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="parabern", description="Exact verification of orthogonal bases, operators "
                "and Bernstein inequalities on balls, paraboloids and parabolic surfaces.")
    p.add_argument("command", nargs="+", help="verify {eigen,orthogonality,decomposition,selfadjoint,bernstein} | "
                   "sharpness | rayleigh | crosscheck | dump-basis")
    p.add_argument("--domain", choices=[k.value for k in Kind])
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--gamma", default="0")
    p.add_argument("--mu", default="1/2")
    p.add_argument("--nmax", type=int, default=4)
    p.add_argument("--n", type=int)
    p.add_argument("--theorem", choices=[t.value for t in TheoremId])
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--operator-literal", action="store_true",
                   help="use the uncorrected solid Laguerre operator and ball eigenvalue")
    p.add_argument("--literal-constants", action="store_true",
                   help="use the uncorrected ball constants n(n+2mu+d) in Bernstein bounds")
    return p


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, float):
        return repr(x)
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(_jsonable(report), indent=2, sort_keys=False) + "\n"
    rows = [_jsonable(r) for r in report["results"]]
    cols: list[str] = []
    for r in rows:
        for k in r:
            if k not in cols:
                cols.append(k)
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: json.dumps(v) if isinstance(v, (list, dict)) else v for k, v in r.items()})
    return buf.getvalue()


def run(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        key = tuple(args.command)
        if key not in COMMANDS:
            raise ConfigError(f"unknown command {' '.join(args.command)!r}")
        if args.trials < 0 or args.nmax < 0:
            raise ConfigError("--trials and --nmax must be non-negative")
        rows, ok = COMMANDS[key](args)
    except ConfigError as exc:
        print(f"parabern: error: {exc}", file=sys.stderr)
        return 2
    except (BernsteinError, DomainError) as exc:
        print(f"parabern: error: {exc}", file=sys.stderr)
        return 2
    params = {k: v for k, v in vars(args).items() if k not in ("command", "output", "format")}
    report = {
        "command": " ".join(args.command),
        "params": params,
        "results": rows,
        "verdict": "PASS" if ok else "FAIL",
        "version": __version__,
        "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
    }
    text = render(report, args.format)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if not ok:
        failed = [r.get("id") or r.get("theorem") or r.get("item") or r.get("seed") for r in rows
                  if r.get("ok") is False or r.get("verdict") == Verdict.VIOLATION.value
                  or r.get("residual_zero") is False]
        print(f"parabern: FAIL ({report['command']}): {failed[:10]}", file=sys.stderr)
    return 0 if ok else 1


def main() -> None:
    sys.exit(run())
