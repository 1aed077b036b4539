"""``paragrass`` command line: coefficient tables, state expansions, verification runs."""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from . import serialize
from .algebra import DEGREE_CAP
from .berezin import GTable, g_recurrence
from .coherent import left_cs, normalization_coeffs, right_cs, solve_weight
from .displacement import displaced_state, solve_weight_displaced
from .fock import LadderSpec
from .report import PASS
from .scalars import DEFAULT_TOLERANCE, get_backend, parse_scalar
from .suite import SCOPES, run

TABLE_KINDS = ("g", "a", "w", "wtilde", "wD", "wDprime")
NEEDS_ALPHA = ("a", "w", "wtilde")
STATES = ("right", "left", "D", "Dprime")
FORMATS = ("json", "csv", "text")

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=FORMATS, default="json")
    p.add_argument("--backend", choices=("exact", "float64", "float"), default=None,
                   help="scalar backend (default: $PARAGRASS_BACKEND or exact)")
    p.add_argument("--tolerance", type=float, default=DEFAULT_TOLERANCE,
                   help="zero threshold for the float backend")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="paragrass",
                                     description="para-Grassmann coherent-state tables and checks")
    sub = parser.add_subparsers(dest="command", required=True)

    t = sub.add_parser("tables", help="emit a coefficient table")
    t.add_argument("kind", choices=TABLE_KINDS)
    t.add_argument("--n", type=int, required=True)
    t.add_argument("--alpha", help="comma-separated alpha_0..alpha_{n-1}")
    t.add_argument("--g-table", help="file with replacement g_0..g_n (JSON table, CSV or comma list)")
    _common(t)

    v = sub.add_parser("verify", help="run verification suites")
    v.add_argument("scope", choices=SCOPES + ("all",))
    v.add_argument("--n-max", type=int, default=8)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--samples", type=int, default=2, help="random alpha vectors per n")
    v.add_argument("--g-table", help="file with replacement g_0..g_n for its n")
    _common(v)

    e = sub.add_parser("expand", help="print a state expansion")
    e.add_argument("state", choices=STATES)
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--alpha", help="comma-separated alpha (right/left; default all ones)")
    e.add_argument("--normalized", action="store_true")
    _common(e)
    return parser


# ---------------------------------------------------------------------------
# argument helpers


def _backend(args):
    if args.tolerance <= 0:
        raise UsageError("--tolerance must be positive")
    try:
        return get_backend(args.backend, args.tolerance)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _check_n(n: int, backend) -> None:
    cap = DEGREE_CAP[backend.name]
    if not 1 <= n <= cap:
        raise UsageError(f"n must be in 1..{cap} for the {backend.name} backend")


def _spec(args, backend, required: bool) -> LadderSpec:
    if args.alpha is None:
        if required:
            raise UsageError(f"--alpha is required for {getattr(args, 'kind', args.command)}")
        return LadderSpec.uniform(args.n, backend)
    try:
        values = [parse_scalar(s.strip(), backend) for s in args.alpha.split(",")]
        return LadderSpec(args.n, tuple(values), backend)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad --alpha: {exc}") from None


def read_g_table(path: str) -> GTable:
    with open(path, encoding="utf-8") as fh:
        text = fh.read().strip()
    try:
        if text.startswith("{"):
            obj = json.loads(text)
            values = [int(serialize.scalar_from_json(v).re) if isinstance(v, dict) else int(v)
                      for v in obj["entries"]]
        elif "\n" in text and text.splitlines()[0].startswith("kind"):
            rows = list(csv.DictReader(io.StringIO(text)))
            values = [int(r["re"]) for r in rows]
        else:
            values = [int(s) for s in text.replace("\n", ",").split(",") if s.strip()]
    except (ValueError, KeyError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read g-table {path}: {exc}") from None
    if len(values) < 2:
        raise UsageError("g-table needs at least two entries")
    return GTable(len(values) - 1, tuple(values))


# ---------------------------------------------------------------------------
# emitters


def _emit_table(kind: str, n: int, entries, alpha, fmt: str) -> str:
    if fmt == "json":
        return serialize.dumps(serialize.table_to_json(kind, n, entries, alpha))
    if fmt == "csv":
        return serialize.table_to_csv(kind, n, entries).rstrip("\n")
    return f"{kind} (n = {n}): [" + ", ".join(serialize.format_scalar(v) for v in entries) + "]"


def _emit_state(state, label: str, args, spec) -> str:
    if args.format == "json":
        return serialize.dumps({
            "n": args.n,
            "kind": label,
            "alpha": None if spec is None else [serialize.scalar_to_json(a) for a in spec.alpha],
            "normalized": bool(args.normalized),
            "terms": serialize.expansion_records(state),
        })
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["ket", "unstarred", "starred", "re", "im"])
        for r in serialize.expansion_records(state):
            v = r["value"]
            re = v["re"] if not isinstance(v["re"], list) else f"{v['re'][0]}/{v['re'][1]}"
            im = v["im"] if not isinstance(v["im"], list) else f"{v['im'][0]}/{v['im'][1]}"
            w.writerow([r["row"], ";".join(map(str, r["unstarred"])), ";".join(map(str, r["starred"])), re, im])
        return buf.getvalue().rstrip("\n")
    return str(state)


def _emit_report(report, args) -> str:
    records = [c.as_record() for c in report]
    if args.format == "json":
        return serialize.dumps({"scope": args.scope, "n_max": args.n_max, "ok": report.ok,
                                "counts": _counts(report), "records": records})
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["scope", "n", "identity", "status", "detail"])
        for c in report:
            w.writerow([c.scope, c.n, c.identity, c.status, c.detail])
        return buf.getvalue().rstrip("\n")
    lines = []
    for c in report:
        line = f"{c.status.upper():<11} {c.scope:<12} n={c.n:<3} {c.identity}"
        if c.detail and c.status != PASS:
            line += f"  [{c.detail}]"
        lines.append(line)
    counts = _counts(report)
    lines.append(", ".join(f"{k}: {v}" for k, v in counts.items()))
    return "\n".join(lines)


def _counts(report) -> dict:
    out: dict = {}
    for c in report:
        out[c.status] = out.get(c.status, 0) + 1
    return dict(sorted(out.items()))


# ---------------------------------------------------------------------------
# commands


def cmd_tables(args) -> int:
    backend = _backend(args)
    _check_n(args.n, backend)
    kind = args.kind
    if kind in ("g", "wD", "wDprime") and args.alpha is not None:
        raise UsageError(f"--alpha does not apply to table {kind}")
    g = read_g_table(args.g_table) if args.g_table else g_recurrence(args.n)
    if g.n != args.n:
        raise UsageError(f"g-table has n = {g.n}, expected {args.n}")
    spec = _spec(args, backend, kind in NEEDS_ALPHA) if kind in NEEDS_ALPHA else None
    if kind == "g":
        entries = list(g.g)
    elif kind == "a":
        entries = list(normalization_coeffs(spec).a)
    elif kind == "w":
        entries = list(solve_weight(spec, "normalized-right", g).w)
    elif kind == "wtilde":
        entries = list(solve_weight(spec, "unnormalized", g).w)
    else:
        entries = list(solve_weight_displaced(args.n, "D" if kind == "wD" else "Dprime", g, backend).w)
    print(_emit_table(kind, args.n, entries, None if spec is None else spec.alpha, args.format))
    return EXIT_OK


def cmd_expand(args) -> int:
    backend = _backend(args)
    _check_n(args.n, backend)
    spec = None
    if args.state in ("right", "left"):
        spec = _spec(args, backend, False)
        build = right_cs if args.state == "right" else left_cs
        state = build(spec, normalized=args.normalized)
    else:
        if args.alpha is not None:
            raise UsageError(f"--alpha does not apply to {args.state}")
        state = displaced_state(args.n, args.state, backend)
    print(_emit_state(state, f"expand-{args.state}", args, spec))
    return EXIT_OK


def cmd_verify(args) -> int:
    backend = _backend(args)
    _check_n(args.n_max, backend)
    if args.samples < 0:
        raise UsageError("--samples must be >= 0")
    overrides = {}
    if args.g_table:
        g = read_g_table(args.g_table)
        overrides[g.n] = g
    report = run(args.scope, args.n_max, backend, args.seed, args.samples, overrides, args.tolerance)
    print(_emit_report(report, args))
    return EXIT_OK if report.ok else EXIT_FAIL


COMMANDS = {"tables": cmd_tables, "verify": cmd_verify, "expand": cmd_expand}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.backend is None and os.environ.get("PARAGRASS_BACKEND"):
        args.backend = os.environ["PARAGRASS_BACKEND"]
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"paragrass: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
