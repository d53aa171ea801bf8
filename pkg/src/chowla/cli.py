"""Command-line front end.

Exit codes: 0 success, 1 input or usage error (including a divergent series
for ``lvalue``), 2 verification failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import sys
from dataclasses import dataclass

from mpmath import mp

from .characters import enumerate_characters
from .cyclotomic import CyclotomicNumber, embed
from .enclosure import DEFAULT_PRECISION, MIN_PRECISION
from .errors import ChowlaError, DivergentSeries
from .lvalue import decide_vanishing, eval_log_form, eval_partial, log_form
from .periodic import (
    PeriodicFunction,
    bbw_span_generators,
    chowla12_demo,
    cmp_even_generators,
    euler_damped,
    period_sum,
)
from .suites import SUITES, kernel_suite

log = logging.getLogger("chowla")

EXIT_OK, EXIT_USAGE, EXIT_VERIFY = 0, 1, 2


@dataclass(frozen=True)
class RunConfig:
    precision_bits: int = DEFAULT_PRECISION
    term_cutoff: int = 10**6
    output_format: str = "json"
    input_path: str | None = None

    def __post_init__(self):
        if self.precision_bits < MIN_PRECISION:
            raise ValueError(f"--precision must be at least {MIN_PRECISION}")
        if self.term_cutoff < 1:
            raise ValueError("--terms must be at least 1")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _exact_str(v: CyclotomicNumber) -> str:
    if v.is_rational():
        r = v.rational_value()
        return f"{r.numerator}/{r.denominator}"
    return json.dumps(v.to_json(), separators=(",", ":"))


def _decimal(x, digits: int = 30) -> str:
    return mp.nstr(x, digits, min_fixed=-math.inf, max_fixed=math.inf)


def _table_rows(f: PeriodicFunction, precision: int, label: str = "") -> list[list[str]]:
    rows = []
    for n, v in enumerate(f.values, start=1):
        mid = embed(v, precision).midpoint()
        rows.append([label, str(n), _exact_str(v), _decimal(mid.real), _decimal(mid.imag), str(precision)])
    return rows


def _emit_json(doc) -> str:
    return json.dumps(doc, indent=2) + "\n"


def _emit_csv(header: list[str], rows: list[list[str]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _read_table(path: str) -> PeriodicFunction:
    text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    return PeriodicFunction.from_json(json.loads(text))


# ---------------------------------------------------------------------------
# subcommands; each returns (exit code, complete output text)


def cmd_characters(q: int, cfg: RunConfig) -> tuple[int, str]:
    if q < 1:
        raise ValueError("q must be at least 1")
    chars = enumerate_characters(q)
    if cfg.output_format == "csv":
        units = [n for n in range(1, q + 1) if math.gcd(n, q) == 1]
        rows = [
            [" ".join(map(str, chi.exponents)) or "-"] + [_exact_str(chi(n)) for n in units]
            for chi in chars
        ]
        return EXIT_OK, _emit_csv(["exponents"] + [str(n) for n in units], rows)
    return EXIT_OK, _emit_json([chi.to_json() for chi in chars])


def cmd_lvalue(f: PeriodicFunction, cfg: RunConfig) -> tuple[int, str]:
    try:
        form = log_form(f)
    except DivergentSeries:
        doc = {"divergent": True, "period_sum": period_sum(f).to_json()}
        return EXIT_USAGE, _emit_json(doc) if cfg.output_format == "json" else _emit_csv(
            ["divergent", "period_sum"], [["true", _exact_str(period_sum(f))]]
        )
    closed = eval_log_form(form, cfg.precision_bits)
    partial = eval_partial(f, cfg.term_cutoff, cfg.precision_bits)
    if cfg.output_format == "csv":
        rows = []
        for name, enc in (("log_form", closed), ("partial_sum", partial.value)):
            j = enc.to_json(digits=40)
            rows.append([name, *j["re"], *j["im"], str(cfg.precision_bits), ""])
        rows[1][-1] = _decimal(partial.tail_bound, 10)
        header = ["engine", "re_lo", "re_hi", "im_lo", "im_hi", "precision_bits", "tail_bound"]
        return EXIT_OK, _emit_csv(header, rows)
    doc = {
        "modulus": f.modulus,
        "log_form": closed.to_json(),
        "partial_sum": {
            "value": partial.value.to_json(digits=40),
            "terms": partial.terms_used,
            "tail_bound": _decimal(partial.tail_bound, 10),
        },
        "midpoint": {"re": _decimal(closed.midpoint().real), "im": _decimal(closed.midpoint().imag)},
    }
    return EXIT_OK, _emit_json(doc)


def cmd_decide(f: PeriodicFunction, cfg: RunConfig) -> tuple[int, str]:
    verdict = decide_vanishing(f, cfg.precision_bits)
    return EXIT_OK, _emit_json(verdict.to_json())


def cmd_generators(q: int, family: str, cfg: RunConfig) -> tuple[int, str]:
    if family == "bbw":
        if q < 3:
            raise ValueError("bbw generators need q >= 3")
        gens = bbw_span_generators(q)
    else:
        if q < 2:
            raise ValueError("cmp-even generators need q >= 2")
        gens = cmp_even_generators(q)
    if cfg.output_format == "csv":
        rows = [row for i, g in enumerate(gens) for row in _table_rows(g, cfg.precision_bits, str(i))]
        return EXIT_OK, _emit_csv(["generator", "n", "exact", "re", "im", "precision_bits"], rows)
    return EXIT_OK, _emit_json([g.to_json() for g in gens])


def cmd_demo(name: str, cfg: RunConfig, p: int = 2) -> tuple[int, str]:
    if name == "chowla12":
        chi_a, chi_b, f = chowla12_demo()
        doc = {
            "chi_a": {"pattern": [1, 1, -1, -1], "L1": eval_log_form(log_form(chi_a), cfg.precision_bits).to_json(40)},
            "chi_b": {"pattern": [1, -1, 1, -1], "L1": eval_log_form(log_form(chi_b), cfg.precision_bits).to_json(40)},
            "f = 2 chi_b - sqrt3 chi_a": decide_vanishing(f, cfg.precision_bits).to_json(),
        }
    else:
        f = euler_damped(p)
        doc = {"p": p, "table": f.to_json(), "verdict": decide_vanishing(f, cfg.precision_bits).to_json()}
    return EXIT_OK, _emit_json(doc)


def cmd_verify(suite: str, cfg: RunConfig, q: int | None = None) -> tuple[int, str]:
    if suite == "kernel":
        results = kernel_suite((q or 7,))
    elif suite in ("orthogonality", "roundtrip") or q is None:
        results = SUITES[suite]()
    else:
        results = SUITES[suite](max_q=q)
    lines = [f"{'PASS' if ok else 'FAIL'} {name}{(' ' + detail) if detail else ''}" for name, ok, detail in results]
    passed = all(ok for _, ok, _ in results)
    lines.append(f"{'PASS' if passed else 'FAIL'} suite {suite}: {sum(ok for _, ok, _ in results)}/{len(results)}")
    return (EXIT_OK if passed else EXIT_VERIFY), "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision", type=int, default=DEFAULT_PRECISION, help="working precision in bits")
    common.add_argument("--terms", type=int, default=10**6, help="terms in the truncated series")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--quiet", action="store_true")

    parser = _Parser(prog="chowla", description="Periodic functions and the vanishing of L(1, f).")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("characters", parents=[common], help="character table mod q")
    p.add_argument("q", type=int)
    p = sub.add_parser("lvalue", parents=[common], help="numeric L(1, f) for a function table")
    p.add_argument("input", help="function-table JSON file, or - for stdin")
    p = sub.add_parser("decide", parents=[common], help="exact decision of L(1, f) = 0")
    p.add_argument("input")
    p = sub.add_parser("generators", parents=[common], help="span generators as function tables")
    p.add_argument("q", type=int)
    p.add_argument("--family", choices=("bbw", "cmp-even"), required=True)
    p = sub.add_parser("demo", parents=[common], help="worked examples")
    p.add_argument("name", choices=("chowla12", "euler-damped"))
    p.add_argument("--p", type=int, default=2, help="prime for euler-damped")
    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("suite", choices=sorted(SUITES))
    p.add_argument("--q", type=int, default=None, help="modulus (kernel) or upper bound (other suites)")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.WARNING if args.quiet else logging.INFO, format="%(message)s")
    try:
        cfg = RunConfig(args.precision, args.terms, args.format, getattr(args, "input", None))
        if args.command == "characters":
            code, text = cmd_characters(args.q, cfg)
        elif args.command == "lvalue":
            code, text = cmd_lvalue(_read_table(args.input), cfg)
        elif args.command == "decide":
            code, text = cmd_decide(_read_table(args.input), cfg)
        elif args.command == "generators":
            code, text = cmd_generators(args.q, args.family, cfg)
        elif args.command == "demo":
            code, text = cmd_demo(args.name, cfg, args.p)
        else:
            code, text = cmd_verify(args.suite, cfg, args.q)
    except (ValueError, KeyError, OSError, ChowlaError) as exc:
        print(f"chowla: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
