"""vertexnet command line: generate parameters, verify statements, build reports.

Exit codes: 0 when no pass-gating statement failed, 1 otherwise, 2 for usage
and size-guard errors.  JSON output is byte-identical for identical flags
unless ``--timing`` adds wall-clock fields.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from typing import Sequence

from . import calibration, verify
from .network import NetworkError, StandardNetwork, standard_network
from .sampling import make_rng, random_network, random_resistances

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
GENERATE_BOUND = 100


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=False, separators=(", ", ": "))


def _strip_timing(report: dict, timing: bool) -> dict:
    if not timing:
        report = {k: v for k, v in report.items() if k != "elapsed"}
    return report


def parse_n_range(text: str) -> list[int]:
    """``"5"`` or ``"3..7"`` (inclusive)."""
    m = re.fullmatch(r"\s*(\d+)\s*(?:\.\.\s*(\d+)\s*)?", text)
    if not m:
        raise argparse.ArgumentTypeError(f"expected N or A..B, got {text!r}")
    lo = int(m.group(1))
    hi = int(m.group(2)) if m.group(2) else lo
    if hi < lo:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return list(range(lo, hi + 1))


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def passes(report: dict) -> bool:
    return not report["gating"] or report["verdict"] == verify.PASS


def format_table(reports: list[dict]) -> str:
    header = ("statement", "n", "draws", "verdict", "gating", "witness")
    rows = [header]
    for r in reports:
        witness = "" if r["witness"] is None else _dump(r["witness"])
        rows.append((r["statement"], str(r["n"]), str(r["draws"]), r["verdict"], "yes" if r["gating"] else "no", witness))
    widths = [max(len(row[k]) for row in rows) for k in range(len(header) - 1)]
    lines = []
    for row in rows:
        cells = [c.ljust(w) for c, w in zip(row, widths)] + [row[-1]]
        lines.append("  ".join(cells).rstrip())
    lines.insert(1, "  ".join("-" * w for w in widths) + "  -------")
    return "\n".join(lines)


# -- commands -------------------------------------------------------------------


def cmd_generate(args) -> int:
    if args.n < 2:
        raise UsageError("generate needs --n >= 2")
    rng = make_rng("generate", args.kind, args.n, args.seed)
    if args.kind == "standard-params":
        net = standard_network(args.n, random_resistances(args.n, rng, GENERATE_BOUND))
        print(net.to_json())
    else:
        print(random_network(args.n, rng, GENERATE_BOUND).to_json())
    return EXIT_OK


def _load_params(path: str | None, n: int):
    if path is None:
        return None
    try:
        with open(path) as fh:
            params = StandardNetwork.from_json(fh.read())
    except (OSError, ValueError, KeyError, NetworkError) as exc:
        raise UsageError(f"cannot read parameters from {path}: {exc}") from exc
    if params.n != n:
        raise UsageError(f"parameter file is for n = {params.n}, not {n}")
    return params.resistances


def cmd_verify(args) -> int:
    if args.statement == "all":
        ids = verify.applicable(args.n)
        if args.params is not None:
            ids = [s for s in ids if verify.STATEMENTS[s].draw_kind == verify.RESISTANCES]
        if not ids:
            raise UsageError(f"no statement admits n = {args.n}")
    else:
        ids = [args.statement]
    resistances = _load_params(args.params, args.n)
    reports = []
    for sid in ids:
        try:
            report = verify.run_statement(sid, args.n, args.seed, args.draws, resistances)
        except verify.GuardError as exc:
            raise UsageError(f"size error: {exc}") from exc
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        reports.append(_strip_timing(report, args.timing))
    if args.format == "table":
        print(format_table(reports))
    else:
        for report in reports:
            print(_dump(report))
    return EXIT_OK if all(passes(r) for r in reports) else EXIT_FAIL


def build_report(ns: Sequence[int], seed: int, draws: int | None, timing: bool = False) -> dict:
    rows = []
    for n in ns:
        for sid in verify.applicable(n):
            rows.append(_strip_timing(verify.run_statement(sid, n, seed, draws), timing))
    records = [calibration.calibrate(n).to_dict() for n in ns if n in calibration.CALIBRATED_SIZES]
    failed = [f"{r['statement']}@{r['n']}" for r in rows if not passes(r)]
    return {
        "seed": seed,
        "n": list(ns),
        "rows": rows,
        "calibration": records,
        "summary": {
            "rows": len(rows),
            "gating_rows": sum(r["gating"] for r in rows),
            "failed": failed,
            "ok": not failed,
        },
    }


def cmd_report(args) -> int:
    report = build_report(args.n, args.seed, args.draws, args.timing)
    if args.format == "table":
        print(format_table(report["rows"]))
        for rec in report["calibration"]:
            chosen = rec["chosen"]
            where = "unresolved" if chosen is None else f"{chosen['w1_block']} on {chosen['realization']['name']}"
            print(f"calibration n={rec['n']}: {len(rec['passing'])} passing, chosen {where}")
        print("summary: " + ("ok" if report["summary"]["ok"] else "FAILED " + " ".join(report["summary"]["failed"])))
    else:
        print(_dump(report))
    return EXIT_OK if report["summary"]["ok"] else EXIT_FAIL


def cmd_calibrate(args) -> int:
    if args.n not in calibration.CALIBRATED_SIZES:
        raise UsageError(f"calibration is defined for n in {calibration.CALIBRATED_SIZES}")
    if args.draws < 3:
        raise UsageError("calibration needs --draws >= 3")
    result = calibration.calibrate(args.n, args.seed, args.draws)
    print(_dump(result.to_dict()))
    return EXIT_OK if result.passing else EXIT_FAIL


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="vertexnet", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="print random network parameters as JSON")
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--kind", choices=("standard-params", "network"), default="standard-params")
    gen.set_defaults(func=cmd_generate)

    ver = sub.add_parser("verify", help="run one statement (or all) and print reports")
    ver.add_argument("--statement", choices=verify.STATEMENT_IDS + ("all",), required=True)
    ver.add_argument("--n", type=int, required=True)
    ver.add_argument("--seed", type=int, default=0)
    ver.add_argument("--draws", type=_positive, default=None, help="default: per-statement")
    ver.add_argument("--params", default=None, help="standard-params JSON file used as the only draw")
    ver.add_argument("--format", choices=("json", "table"), default="json")
    ver.add_argument("--timing", action="store_true", help="include elapsed seconds (not reproducible)")
    ver.set_defaults(func=cmd_verify)

    rep = sub.add_parser("report", help="all statements over a range of n, plus calibration records")
    rep.add_argument("--n", type=parse_n_range, default=parse_n_range("3..7"))
    rep.add_argument("--seed", type=int, default=0)
    rep.add_argument("--draws", type=_positive, default=None)
    rep.add_argument("--format", choices=("json", "table"), default="table")
    rep.add_argument("--timing", action="store_true")
    rep.set_defaults(func=cmd_report)

    cal = sub.add_parser("calibrate", help="search the W1/W2 conventions at n = 3 or 4")
    cal.add_argument("--n", type=int, required=True)
    cal.add_argument("--seed", type=int, default=0)
    cal.add_argument("--draws", type=int, default=3)
    cal.set_defaults(func=cmd_calibrate)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"vertexnet: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
