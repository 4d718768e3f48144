"""Command-line front end: ``cobordism-forge <command> --prime P [options]``.

Exit status is 0 on success, 1 when a verification check fails, 2 for usage
or parse errors and 3 when a computation needs more than ``--max-degree``.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .errors import ParseError, TruncationError
from .lazard import is_prime, make_context
from .parser import evaluate
from .presentations.omega import coeff_str, omega_ring
from .verify import kosniowski_catalog, run_all

CSV_COLUMNS = ("symbol", "i", "l", "j", "degree", "value")


class UsageError(Exception):
    pass


def _csv(rows, header):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue().rstrip("\n").split("\n")


def _dumps(obj):
    return json.dumps(obj, sort_keys=True)


# -- tables ------------------------------------------------------------------

def table_rows(ctx):
    """``(symbol, i, l, j, degree, value)`` rows; empty fields are ``None``."""
    p, D = ctx.prime, ctx.truncation
    rows = []
    for j in range(D + 1):
        c = ctx.c(j)
        rows.append(("c", None, None, j, 2 * (j - 1) if j else 0, coeff_str(c)))
    for i in range(1, p):
        for n in range(1, D + 2):
            for k in range(n + 1):
                rows.append(("a", i, k, n - k, 2 * (n - 1), coeff_str(ctx.a_shift(i, k, n - k))))
    for i in range(1, p):
        for l in range(D + 1):
            for j in range(-(l + 1), D - l):
                rows.append(("t", i, l, j, 2 * (l + j + 1), coeff_str(ctx.t(i, l, j))))
    return rows


def _symbol_text(sym, i, l, j):
    if sym == "c":
        return "c_%d" % j
    return "%s_{%d,%d}^(%d)" % (sym, l, j, i)


def cmd_tables(ctx, args):
    rows = table_rows(ctx)
    if args.format == "csv":
        return _csv([["" if v is None else v for v in r] for r in rows], CSV_COLUMNS)
    if args.format == "json":
        return [_dumps(dict(zip(CSV_COLUMNS, r))) for r in rows]
    return ["%s = %s" % (_symbol_text(*r[:4]), r[5]) for r in rows]


# -- expressions -------------------------------------------------------------

def _pair_json(x):
    return {"rho": x.rho.to_str(coeff_str), "kappa": x.kappa.to_str(coeff_str)}


def cmd_nf(ctx, args):
    x = evaluate(args.expression, ctx, "omega")
    if args.format == "json":
        out = x.to_json()
        out["text"] = x.to_str()
        return [_dumps(out)]
    if args.format == "csv":
        return _csv([[t["basis"], t["coeff"]] for t in x.to_json()["terms"]], ("basis", "coeff"))
    return [x.to_str()]


def cmd_eval(ctx, args):
    if args.mode == "mu":
        x = evaluate(args.expression, ctx, "mu")
        d = _pair_json(x)
        if args.format == "json":
            return [_dumps(d)]
        if args.format == "csv":
            return _csv([["rho", d["rho"]], ["kappa", d["kappa"]]], ("channel", "value"))
        return ["rho   = %s" % d["rho"], "kappa = %s" % d["kappa"]]
    R = omega_ring(ctx)
    x = evaluate(args.expression, ctx, "omega")
    d = {"normal_form": x.to_str(), "kappa": R.kappa(x).to_str(coeff_str),
         "res": coeff_str(R.res(x))}
    if args.format == "json":
        return [_dumps(d)]
    if args.format == "csv":
        return _csv([[k, d[k]] for k in ("normal_form", "kappa", "res")], ("field", "value"))
    return ["nf    = %s" % d["normal_form"], "kappa = %s" % d["kappa"], "res   = %s" % d["res"]]


# -- suites ------------------------------------------------------------------

def cmd_verify(ctx, args):
    result = run_all(ctx, seed=args.seed, samples=args.samples)
    if args.format == "json":
        lines = result.json_lines()
    elif args.format == "csv":
        rows = [[r.relation, _dumps(dict(r.indices)), r.channel, r.status, r.detail or ""]
                for r in result.reports]
        rows += [["catalog." + e.tag, "{}", "kappa", e.status, "; ".join(e.notes)]
                 for e in result.catalog]
        lines = _csv(rows, ("relation", "indices", "channel", "status", "detail"))
    else:
        s = result.summary()
        lines = ["p=%d D=%d seed=%d: %d checks, %d passed, %d failed; catalog %d entries, %d failed"
                 % (s["prime"], s["max_degree"], s["seed"], s["checks"], s["passed"],
                    s["failed"], s["catalog_entries"], s["catalog_failed"])]
        for r in result.reports:
            if not r.ok:
                lines.append("FAIL %s %s [%s]: %s" % (r.relation, _dumps(dict(r.indices)),
                                                      r.channel, r.detail))
        for e in result.catalog:
            if not e.ok:
                lines.append("FAIL catalog %s: %s" % (e.tag, "; ".join(e.notes)))
    return lines, (0 if result.ok else 1)


def cmd_kosniowski(ctx, args):
    cat = kosniowski_catalog(ctx)
    if args.format == "json":
        lines = [_dumps(e.to_json()) for e in cat]
    elif args.format == "csv":
        rows = [[e.tag, e.status, "" if e.N is None else e.N, "" if e.M is None else str(e.M),
                 e.target.to_str(coeff_str), "" if e.claimed is None else e.claimed.to_str()]
                for e in cat]
        lines = _csv(rows, ("tag", "status", "N", "M", "target", "claimed"))
    else:
        lines = []
        for e in cat:
            lines.append("%-18s %-10s target: %s" % (e.tag, e.status, e.target.to_str(coeff_str)))
            if e.claimed is not None:
                lines.append("%18s claimed: %s" % ("", e.claimed.to_str()))
            if e.N is not None:
                lines.append("%18s N = %d, M = %s" % ("", e.N, e.M))
            for n in e.notes:
                lines.append("%18s note: %s" % ("", n))
    return lines, (0 if all(e.ok for e in cat) else 1)


# -- driver ------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--prime", "-p", type=int, required=True, help="the prime p")
    common.add_argument("--max-degree", "-D", type=int, default=10,
                        help="truncation D; internal degrees up to 2D (default 10)")
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    common.add_argument("--out", help="write output to this file instead of stdout")

    ap = _Parser(prog="cobordism-forge", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("tables", parents=[common], help="coefficient tables c, a, t")
    p_eval = sub.add_parser("eval", parents=[common], help="evaluate an expression")
    p_eval.add_argument("expression")
    p_eval.add_argument("--mode", choices=("omega", "mu"), default="omega",
                        help="normal form with kappa and res, or a pullback pair")
    p_nf = sub.add_parser("nf", parents=[common], help="normal form of an expression")
    p_nf.add_argument("expression")
    p_ver = sub.add_parser("verify", parents=[common], help="run all verification suites")
    p_ver.add_argument("--samples", type=int, default=200, help="random samples per suite")
    sub.add_parser("kosniowski", parents=[common], help="catalog of geometric generators")
    return ap


def run(argv=None, stdout=None, stderr=None):
    """Run the CLI; returns the exit code."""
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    try:
        args = build_parser().parse_args(argv)
        if not is_prime(args.prime):
            raise UsageError("--prime must be a prime, got %d" % args.prime)
        if args.max_degree < 1:
            raise UsageError("--max-degree must be positive")
        ctx = make_context(args.prime, args.max_degree)
        handler = {"tables": cmd_tables, "eval": cmd_eval, "nf": cmd_nf,
                   "verify": cmd_verify, "kosniowski": cmd_kosniowski}[args.command]
        out = handler(ctx, args)
        lines, code = out if isinstance(out, tuple) else (out, 0)
    except SystemExit as e:  # --help
        return int(e.code or 0)
    except UsageError as e:
        print("cobordism-forge: error: %s" % e, file=stderr)
        return 2
    except ParseError as e:
        print("cobordism-forge: parse error: %s" % e, file=stderr)
        return 2
    except TruncationError as e:
        print("cobordism-forge: truncation: %s (raise --max-degree)" % e, file=stderr)
        return 3
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
