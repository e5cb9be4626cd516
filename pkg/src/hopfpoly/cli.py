"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 internal assertion.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, replace

from .exactalg import RatFun
from .fixtures import CORRECTED, TABLE_NAMES, TABLES, check_table
from .hopf import (
    COLORINGS,
    QTILDE_MODES,
    HopfError,
    InvariantRecord,
    binomial_coefficients,
    closed_antisym,
    closed_lambda_antisym,
    negative_terms,
    to_bold,
    torus_knot_reduced,
    z_inst,
)
from .operators import ztilde
from .partitions import Partition, enumerate_partitions, parse_range
from .verify import SUITES, run

FORMATS = ("text", "json", "latex")


class UsageError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    lam: tuple[Partition, ...] = ()
    mu: tuple[Partition, ...] = ()
    N: tuple[int, ...] = ()
    coloring: str = "macdonald"
    qtilde: str | None = None
    guard: int = 2
    fmt: str = "text"
    output: str | None = None
    suite: str = "all"
    max_size: int | None = None
    check_bound: int = 4
    bold: bool = False
    fixture: str | None = None


def parse_partition(text: str) -> Partition:
    """Strict form of a partition string: "3,1,1"; "", "-" and "0" are empty."""
    text = text.strip()
    if text in ("", "-", "0", "()", "[]"):
        return Partition()
    try:
        parts = [int(x) for x in text.strip("()[]").split(",")]
    except ValueError:
        raise UsageError(f"not a partition: {text!r}") from None
    if any(x <= 0 for x in parts) or any(a < b for a, b in zip(parts, parts[1:])):
        raise UsageError(f"not a partition (weakly decreasing positive integers): {text!r}")
    return Partition(parts)


def parse_partitions(text: str) -> tuple[Partition, ...]:
    return tuple(parse_partition(x) for x in text.split(";"))


def parse_N(text: str | None) -> tuple[int, ...]:
    if text is None or not text.strip():
        return ()
    try:
        values = parse_range(text)
    except ValueError:
        raise UsageError(f"--at-tN expects an integer or a range a..b, got {text!r}") from None
    if any(v < 0 for v in values):
        raise UsageError("--at-tN values must be non-negative")
    return tuple(values)


# ---------------------------------------------------------------- formatting


def _show(f: RatFun, cfg: RunConfig, latex: bool | None = None) -> str:
    if cfg.bold:
        f = to_bold(f)
    return f.latex() if (cfg.fmt == "latex" if latex is None else latex) else str(f)


def _rj(f: RatFun, cfg: RunConfig) -> dict:
    return {"value": (to_bold(f) if cfg.bold else f).to_json(), "text": _show(f, cfg, False)}


def _plist(p: Partition) -> str:
    return "(" + ",".join(map(str, p)) + ")" if p else "()"


def _emit(text: str, cfg: RunConfig):
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump(data) -> str:
    return json.dumps(data, sort_keys=True, ensure_ascii=False) + "\n"


# ---------------------------------------------------------------- compute


def _is_column(p: Partition) -> bool:
    return all(x == 1 for x in p)


def _fastest(lam: Partition, mu: Partition, coloring: str, guard: int) -> InvariantRecord:
    if _is_column(lam) and _is_column(mu):
        rec = closed_antisym(len(lam), len(mu))
        return replace(rec, coloring=coloring)
    if _is_column(mu):
        return closed_lambda_antisym(lam, len(mu), coloring)
    return z_inst(lam, mu, coloring, guard)


def compute_record(cfg: RunConfig) -> tuple[InvariantRecord, dict]:
    lam, mu = cfg.lam[0], cfg.mu[0]
    rec = _fastest(lam, mu, cfg.coloring, cfg.guard)
    check = {"bound": cfg.check_bound, "performed": False}
    if rec.method != "sum" and lam.size + mu.size <= cfg.check_bound:
        oracle = z_inst(lam, mu, cfg.coloring, cfg.guard)
        check.update(performed=True, agree=oracle.value == rec.value)
        if not check["agree"]:
            check["difference"] = str(rec.value - oracle.value)
        rec = replace(rec, guard=oracle.guard)
    if cfg.qtilde is not None and cfg.coloring == "macdonald":
        rec = rec.with_qtilde(cfg.qtilde)
    if cfg.N:
        sign = (-1) ** (lam.size + mu.size)
        positive = all(
            v.is_polynomial() and not negative_terms(v) for v in (rec.at_tN(N) * sign for N in cfg.N)
        )
        rec = replace(rec, flags=dict(rec.flags, positivity=positive))
    return rec, check


def cmd_compute(cfg: RunConfig) -> int:
    if len(cfg.lam) != 1 or len(cfg.mu) != 1:
        raise UsageError("compute takes a single --lambda and a single --mu")
    rec, check = compute_record(cfg)
    lam, mu = rec.lam, rec.mu
    sign = (-1) ** (lam.size + mu.size)
    evals = [(N, rec.at_tN(N)) for N in cfg.N]
    if cfg.fmt == "json":
        data = rec.to_json()
        if cfg.bold:
            data["bold"] = _rj(rec.value, cfg)
        data["cross_check"] = check
        data["at_tN"] = [
            dict(_rj(v, cfg), N=N, negative_terms=[m for m, _ in negative_terms(v * sign)] if v.is_polynomial() else None)
            for N, v in evals
        ]
        out = _dump(data)
    elif cfg.fmt == "latex":
        name = f"Z^{{\\rm inst}}_{{{_plist(lam)},{_plist(mu)}}}"
        lines = [f"{name} &= {_show(rec.value, cfg)} \\\\"]
        lines += [f"{name}(Q=t^{{{N}}}) &= {_show(v, cfg)} \\\\" for N, v in evals]
        out = "\n".join(lines) + "\n"
    else:
        lines = [
            f"lambda = {_plist(lam)}  mu = {_plist(mu)}  method = {rec.method}  coloring = {rec.coloring}",
            f"substitutions: {json.dumps(dict(sorted(rec.substitutions.items())), sort_keys=True)}",
            f"flags: {json.dumps(rec.to_json()['flags'], sort_keys=True)}",
            f"cross-check against the partition sum: "
            + ("agree" if check.get("agree") else "DISAGREE" if check["performed"] else "not performed"),
            f"Z = {_show(rec.value, cfg)}",
        ]
        for N, v in evals:
            lines.append(f"N = {N}: {_show(v, cfg)}")
            if v.is_polynomial():
                neg = [m for m, _ in negative_terms(v * sign)]
                if neg:
                    lines.append(f"  negative terms of (-1)^{lam.size + mu.size} Z: {', '.join(neg)}")
        if check.get("difference"):
            lines.append(f"difference (method - sum): {check['difference']}")
        out = "\n".join(lines) + "\n"
    _emit(out, cfg)
    return 1 if check["performed"] and not check["agree"] else 0


# ---------------------------------------------------------------- verify


def cmd_verify(cfg: RunConfig) -> int:
    if cfg.suite not in SUITES + ("all",):
        raise UsageError(f"unknown suite {cfg.suite!r}; expected one of {', '.join(SUITES + ('all',))}")
    report = run(cfg.suite, cfg.max_size)
    if cfg.fmt == "json":
        out = _dump(report)
    else:
        lines = []
        for rep in report.get("suites", [report]):
            for c in rep["checks"]:
                tail = f": {c['detail']}" if c["detail"] else ""
                lines.append(f"{'PASS' if c['pass'] else 'FAIL'} [{rep['suite']}] {c['name']}{tail}")
        n_fail = len(report["failures"])
        lines.append(f"{cfg.suite}: {'pass' if report['passed'] else f'{n_fail} failure(s)'}")
        out = "\n".join(lines) + "\n"
    _emit(out, cfg)
    return 0 if report["passed"] else 1


# ---------------------------------------------------------------- table


def _grid(cfg: RunConfig) -> list[tuple[Partition, Partition]]:
    bound = 2 if cfg.max_size is None else cfg.max_size

    def pool(given):
        return list(given) if given else [p for d in range(0, bound + 1) for p in enumerate_partitions(d)]

    return [(a, b) for a in pool(cfg.lam) for b in pool(cfg.mu) if a.size + b.size <= bound]


def _table_rows(cfg: RunConfig) -> list[dict]:
    rows = []
    for lam, mu in _grid(cfg):
        rec = z_inst(lam, mu, cfg.coloring, cfg.guard)
        if cfg.qtilde is not None and cfg.coloring == "macdonald":
            rec = rec.with_qtilde(cfg.qtilde)
        rows.append({
            "lambda": lam,
            "mu": mu,
            "binomial": binomial_coefficients(rec.value, lam.size + mu.size),
            "values": [(N, rec.at_tN(N)) for N in cfg.N],
        })
    return rows


def _fixture_report(cfg: RunConfig) -> tuple[str, int]:
    if cfg.fixture not in TABLE_NAMES:
        raise UsageError(f"unknown fixture {cfg.fixture!r}; expected one of {', '.join(TABLE_NAMES)}")
    i = TABLE_NAMES.index(cfg.fixture)
    printed, fixed = TABLES[i], CORRECTED[i]
    Ns = cfg.N or tuple(range(0, 6))
    bad_fixed = check_table(fixed, Ns)
    bad_printed = check_table(printed, Ns)
    rows = []
    for N in Ns:
        for (lam, mu), v in fixed.expected(N).items():
            rows.append({"lambda": list(lam), "mu": list(mu), "N": N, **_rj(v, cfg)})
    data = {
        "fixture": fixed.name,
        "N": list(Ns),
        "exact_as_tabulated": not bad_printed,
        "exact_after_correction": not bad_fixed,
        "erratum": fixed.erratum,
        "rows": rows,
    }
    if cfg.fmt == "json":
        return _dump(data), 0 if not bad_fixed else 1
    lines = [f"fixture {fixed.name}: "
             + ("exact as tabulated" if not bad_printed else
                f"exact after correction: {fixed.erratum}" if not bad_fixed else "MISMATCH")]
    for r in rows:
        lines.append(f"{_plist(Partition(r['lambda']))} {_plist(Partition(r['mu']))} N={r['N']}: "
                     + _show(RatFun.from_json(r["value"]), replace(cfg, bold=False)))
    return "\n".join(lines) + "\n", 0 if not bad_fixed else 1


def cmd_table(cfg: RunConfig) -> int:
    if cfg.fixture is not None:
        out, code = _fixture_report(cfg)
        _emit(out, cfg)
        return code
    rows = _table_rows(cfg)
    if cfg.fmt == "json":
        out = _dump([
            {
                "lambda": list(r["lambda"]),
                "mu": list(r["mu"]),
                "binomial_basis": [_rj(c, cfg) for c in r["binomial"]],
                "at_tN": [dict(_rj(v, cfg), N=N) for N, v in r["values"]],
            }
            for r in rows
        ])
    elif cfg.fmt == "latex":
        lines = ["\\begin{array}{lll}"]
        for r in rows:
            lhs = f"Z^{{\\rm inst}}_{{{_plist(r['lambda'])},{_plist(r['mu'])}}}(t^N)"
            basis = " + ".join(f"\\left({_show(c, cfg)}\\right) \\binom{{N}}{{{j}}}_t"
                               for j, c in enumerate(r["binomial"]) if not c.is_zero()) or "0"
            lines.append(f"{lhs} & = & {basis} \\\\")
        lines.append("\\end{array}")
        out = "\n".join(lines) + "\n"
    else:
        lines = []
        for r in rows:
            head = f"{_plist(r['lambda'])} {_plist(r['mu'])}"
            terms = [f"({_show(c, cfg)}) [N,{j}]" for j, c in enumerate(r["binomial"]) if not c.is_zero()]
            lines.append(f"{head}: Z(t^N) = {' + '.join(terms) or '0'}")
            for N, v in r["values"]:
                lines.append(f"{head} N={N}: {_show(v, cfg)}")
        out = "\n".join(lines) + ("\n" if lines else "")
    _emit(out, cfg)
    return 0


# ---------------------------------------------------------------- ztilde, torus


def cmd_ztilde(cfg: RunConfig) -> int:
    out_rows = []
    for lam in cfg.lam:
        res = ztilde(lam)
        out_rows.append(res)
    if cfg.fmt == "json":
        data = [dict(res.to_json(), text=_show(res.value, cfg, False)) for res in out_rows]
        out = _dump(data if len(data) != 1 else data[0])
    else:
        lines = []
        for res in out_rows:
            vanish = ", ".join(f"c=t^{n}" for n in res.vanishes_at) or "none"
            lines.append(f"Z~^{_plist(res.lam)} = {_show(res.value, cfg)}")
            lines.append(f"  constant term vanishes at {vanish}; degree in c {res.degree_in_c}")
        out = "\n".join(lines) + "\n"
    _emit(out, cfg)
    return 0


def cmd_torus(cfg: RunConfig) -> int:
    ns = cfg.N or (2,)
    if any(n < 1 for n in ns):
        raise UsageError("torus needs n >= 1")
    vals = [(n, torus_knot_reduced(n)) for n in ns]
    if cfg.fmt == "json":
        out = _dump([dict(_rj(v, cfg), n=n) for n, v in vals])
    else:
        out = "".join(f"n = {n}: {_show(v, cfg)}\n" for n, v in vals)
    _emit(out, cfg)
    return 0


COMMANDS = {"compute": cmd_compute, "verify": cmd_verify, "table": cmd_table, "ztilde": cmd_ztilde, "torus": cmd_torus}


# ---------------------------------------------------------------- argument parsing


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hopfpoly", description="Colored Hopf link superpolynomials and Macdonald identities.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, fmt=FORMATS):
        p.add_argument("--format", choices=fmt, default="text")
        p.add_argument("--output", help="write to this file instead of stdout")
        p.add_argument("--bold", action="store_true", help="rewrite results in (a; q, t) = (Q^-1/2; t^-1/2, -(t/q)^1/2)")

    def invariant(p):
        p.add_argument("--coloring", choices=COLORINGS, default="macdonald")
        p.add_argument("--qtilde", choices=QTILDE_MODES, help="substitute qtilde (macdonald coloring); default symbolic")
        p.add_argument("--guard", type=int, default=2, help="extra Q orders checked to vanish")

    p = sub.add_parser("compute", help="Z^inst for one pair of partitions")
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--mu", required=True)
    p.add_argument("--at-tN", dest="at_tN", help="N or a..b: substitute Q = t^N")
    p.add_argument("--check-bound", type=int, default=4, help="cross-check closed forms when |lambda|+|mu| <= bound")
    invariant(p)
    common(p)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", default="all", help=f"one of {', '.join(SUITES + ('all',))}")
    p.add_argument("--max-size", type=int)
    common(p, ("text", "json"))

    p = sub.add_parser("table", help="grid of Z^inst values in the t-binomial basis")
    p.add_argument("--lambda", dest="lam", help="partitions separated by ';' (default: all up to --max-size)")
    p.add_argument("--mu", help="partitions separated by ';'")
    p.add_argument("--at-tN", dest="at_tN")
    p.add_argument("--max-size", type=int, help="bound on |lambda|+|mu| (default 2)")
    p.add_argument("--fixture", help=f"reproduce a tabulated fixture: {', '.join(TABLE_NAMES)}")
    invariant(p)
    common(p)

    p = sub.add_parser("ztilde", help="the constant-term polynomial Z~^lambda")
    p.add_argument("--lambda", dest="lam", required=True, help="partitions separated by ';'")
    common(p)

    p = sub.add_parser("torus", help="reduced torus-knot polynomial")
    p.add_argument("--n", default="2", help="n or a..b")
    common(p)
    return ap


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    cmd = ns.command
    kw: dict = {"command": cmd, "fmt": ns.format, "output": ns.output, "bold": ns.bold}
    if cmd in ("compute", "table"):
        kw.update(coloring=ns.coloring, qtilde=ns.qtilde, guard=ns.guard, N=parse_N(ns.at_tN))
        if ns.guard < 0:
            raise UsageError("--guard must be non-negative")
        if ns.coloring == "schur" and ns.qtilde not in (None, "zero"):
            raise UsageError("--qtilde only applies to the macdonald coloring")
    if cmd == "compute":
        kw.update(lam=(parse_partition(ns.lam),), mu=(parse_partition(ns.mu),), check_bound=ns.check_bound)
    elif cmd == "table":
        kw.update(
            lam=parse_partitions(ns.lam) if ns.lam is not None else (),
            mu=parse_partitions(ns.mu) if ns.mu is not None else (),
            max_size=ns.max_size,
            fixture=ns.fixture,
        )
    elif cmd == "verify":
        kw.update(suite=ns.suite, max_size=ns.max_size)
    elif cmd == "ztilde":
        kw.update(lam=parse_partitions(ns.lam))
    elif cmd == "torus":
        kw.update(N=parse_N(ns.n))
    return RunConfig(**kw)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = config_from_args(ns)
        return COMMANDS[cfg.command](cfg)
    except UsageError as exc:
        print(f"hopfpoly: error: {exc}", file=sys.stderr)
        return 2
    except HopfError as exc:
        print(f"hopfpoly: verification failure: {exc}", file=sys.stderr)
        return 1
    except (AssertionError, ArithmeticError) as exc:
        print(f"hopfpoly: internal assertion: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
