"""Command-line front-end.

Every subcommand writes machine-readable output (JSON by default, CSV with
--output csv) and is deterministic given its flags plus, where sampling is
involved, the seed.  Exact rationals are printed as "p/q" in lowest terms;
--numeric float switches to shortest round-trip decimals.  Exit codes:
0 success, 2 argument or input error, 3 refused resource cap.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction

from . import matrix_model
from .bichromatic import ChiMap, enumerate_bnc, is_bnc
from .cumulants import (
    CumulantSeq,
    MomentSeq,
    format_rational,
    free_cumulants_from_moments,
    moments_from_free_cumulants,
    parse_rational,
)
from .limits import ResourceLimitError, env_cap
from .limit_law import mu_q_moments_recurrence
from .meanders import MeandricSystem, loop_count, loop_distribution
from .partitions import (
    SetPartition,
    enumerate_noncrossing,
    enumerate_pair_noncrossing,
    enumerate_partitions,
)
from .tensor_clt import (
    SqrtQuotient,
    TensorCLTInput,
    convergence_table,
    exact_moment_Sn,
)

PARTITION_CAP = 10
CHI_CAP = 10
MEANDER_CAP = 6
ORDER_CAP = 8


def _fmt_value(value, numeric: str) -> str:
    if numeric == "float":
        return repr(float(value))
    if isinstance(value, SqrtQuotient):
        return f"{format_rational(value.coeff)}/sqrt({format_rational(value.base)})"
    return format_rational(value)


def _emit_rows(rows: list[dict], fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(rows) + "\n")
    else:
        if not rows:
            return
        writer = csv.DictWriter(out, fieldnames=list(rows[0].keys()), lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)


def _emit_array(values: list, fmt: str, out, column: str = "value") -> None:
    if fmt == "json":
        out.write(json.dumps(values) + "\n")
    else:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow([column])
        for v in values:
            writer.writerow([v])


def _read_json(path: str):
    if path == "-":
        return json.load(sys.stdin)
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _load_clt_input(path: str) -> TensorCLTInput:
    """Accepts either a bare JSON array (one moment sequence used for both
    legs) or an object {"ms_a": [...], "ms_b": [...], "lambda": "p/q"} with
    lambda optional (validated against the first moments when present)."""
    data = _read_json(path)
    if isinstance(data, list):
        ms_a = ms_b = MomentSeq.from_json_list(data)
        lam = None
    elif isinstance(data, dict) and "ms_a" in data and "ms_b" in data:
        ms_a = MomentSeq.from_json_list(data["ms_a"])
        ms_b = MomentSeq.from_json_list(data["ms_b"])
        lam = parse_rational(data["lambda"]) if "lambda" in data else None
    else:
        raise ValueError(
            "input must be a JSON array of rationals or an object with ms_a and ms_b"
        )
    inp = TensorCLTInput.from_legs(ms_a, ms_b)
    if lam is not None and lam != inp.lam:
        raise ValueError(f"stated lambda {lam} does not match the first moments")
    return inp


def _int_list(text: str) -> list[int]:
    return [int(tok) for tok in text.split(",") if tok.strip()]


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bifree",
        description="partition lattices, tensor-sum CLT moments, and the matrix Monte Carlo",
    )
    parser.add_argument("--output", choices=("json", "csv"), default="json")
    parser.add_argument("--numeric", choices=("rational", "float"), default="rational")
    groups = parser.add_subparsers(dest="group", required=True)

    p = groups.add_parser("partitions", help="set partition families")
    pa = p.add_subparsers(dest="action", required=True)
    for action in ("count", "list"):
        sp = pa.add_parser(action)
        sp.add_argument("--n", type=int, required=True)
        sp.add_argument("--family", choices=("all", "nc", "nc2"), default="all")

    b = groups.add_parser("bnc", help="bi-non-crossing partitions")
    ba = b.add_subparsers(dest="action", required=True)
    sp = ba.add_parser("list")
    sp.add_argument("--chi", required=True, help="side word over {L,R}, e.g. LRRLLR")
    sp = ba.add_parser("check")
    sp.add_argument("--chi", required=True)
    sp.add_argument("--partition", required=True, help='text form, e.g. "1,4|2,5|3,6"')

    m = groups.add_parser("meander", help="meandric systems")
    ma = m.add_subparsers(dest="action", required=True)
    sp = ma.add_parser("dist")
    sp.add_argument("--size", type=int, required=True)
    sp = ma.add_parser("loops")
    sp.add_argument("--system", required=True, help='"top=1,2|3,4;bottom=1,4|2,3"')

    c = groups.add_parser("cumulants", help="free moment/cumulant transforms")
    ca = c.add_subparsers(dest="action", required=True)
    for action in ("to-moments", "from-moments"):
        sp = ca.add_parser(action)
        sp.add_argument("--input", required=True, help="JSON array of rationals, '-' for stdin")

    t = groups.add_parser("clt", help="exact moments of the normalised tensor sum")
    ta = t.add_subparsers(dest="action", required=True)
    for action in ("moments", "table"):
        sp = ta.add_parser(action)
        sp.add_argument("--m", type=_int_list, required=True, help="comma-separated orders")
        sp.add_argument("--n", type=_int_list, required=True, help="comma-separated sizes")
        sp.add_argument("--input", required=True, help="leg moments file, '-' for stdin")

    lm = groups.add_parser("limit", help="limit-law moments")
    la = lm.add_subparsers(dest="action", required=True)
    sp = la.add_parser("moments")
    sp.add_argument("--q", type=parse_rational, required=True)
    sp.add_argument("--K", type=int, required=True)

    s = groups.add_parser("simulate", help="GUE Monte Carlo vs exact predictions")
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--trials", type=int, required=True)
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--lambda", dest="lam", type=parse_rational, default=Fraction(0))
    s.add_argument("--sigma", type=parse_rational, default=Fraction(1))
    s.add_argument("--max-moment", type=int, default=4)
    s.add_argument("--z-threshold", type=float, default=3.0)
    s.add_argument("--dump-spectrum", metavar="FILE", default=None)
    s.add_argument(
        "--empirical-means",
        action="store_true",
        help="subtract per-sample traces instead of the analytic mean (biased)",
    )
    return parser


def _cmd_partitions(args, out) -> None:
    cap = env_cap(PARTITION_CAP)
    if args.n > cap:
        raise ResourceLimitError(f"n={args.n} exceeds the enumeration cap {cap}")
    family = {
        "all": enumerate_partitions,
        "nc": enumerate_noncrossing,
        "nc2": enumerate_pair_noncrossing,
    }[args.family]
    if args.action == "count":
        count = sum(1 for _ in family(args.n))
        _emit_rows([{"n": args.n, "family": args.family, "count": count}], args.output, out)
    else:
        _emit_array([p.to_text() for p in family(args.n)], args.output, out, column="partition")


def _cmd_bnc(args, out) -> None:
    chi = ChiMap.from_string(args.chi)
    if args.action == "list":
        cap = env_cap(CHI_CAP)
        if chi.n > cap:
            raise ResourceLimitError(f"chi length {chi.n} exceeds the cap {cap}")
        _emit_array(
            [b.partition.to_text() for b in enumerate_bnc(chi)],
            args.output,
            out,
            column="partition",
        )
    else:
        part = SetPartition.from_text(args.partition, n=chi.n)
        _emit_rows(
            [{"chi": chi.to_string(), "partition": part.to_text(), "bnc": is_bnc(part, chi)}],
            args.output,
            out,
        )


def _cmd_meander(args, out) -> None:
    if args.action == "dist":
        hist = loop_distribution(args.size, max_size=env_cap(MEANDER_CAP))
        if args.output == "json":
            out.write(json.dumps({str(k): hist[k] for k in sorted(hist)}) + "\n")
        else:
            rows = [{"loops": k, "count": hist[k]} for k in sorted(hist)]
            _emit_rows(rows, args.output, out)
    else:
        system = MeandricSystem.from_text(args.system)
        _emit_rows(
            [{"system": system.to_text(), "loops": loop_count(system)}], args.output, out
        )


def _cmd_cumulants(args, out) -> None:
    values = [parse_rational(s) for s in _read_json(args.input)]
    if args.action == "to-moments":
        result = moments_from_free_cumulants(CumulantSeq(tuple(values))).values
    else:
        result = free_cumulants_from_moments(MomentSeq(tuple(values))).values
    _emit_array([format_rational(v) for v in result], args.output, out)


def _cmd_clt(args, out) -> None:
    inp = _load_clt_input(args.input)
    cap = env_cap(ORDER_CAP)
    rows = []
    for m in args.m:
        if args.action == "moments":
            for n in args.n:
                value = exact_moment_Sn(m, n, inp, order_cap=cap)
                rows.append({"m": m, "n": n, "value": _fmt_value(value, args.numeric)})
        else:
            for row in convergence_table(m, args.n, inp, order_cap=cap):
                rows.append(
                    {
                        "m": m,
                        "n": row.n,
                        "value": _fmt_value(row.value, args.numeric),
                        "limit": _fmt_value(row.limit, args.numeric),
                        "gap": row.gap,
                    }
                )
    _emit_rows(rows, args.output, out)


def _cmd_limit(args, out) -> None:
    ms = mu_q_moments_recurrence(args.q, args.K)
    if args.numeric == "float":
        _emit_array([float(v) for v in ms.values], args.output, out)
    else:
        _emit_array(ms.to_json_list(), args.output, out)


def _cmd_simulate(args, out) -> None:
    spec = matrix_model.EnsembleSpec(dim=args.n, sigma=float(args.sigma), lam=float(args.lam))
    config = matrix_model.SimConfig(
        d=args.d, n=args.n, trials=args.trials, seed=args.seed, max_moment=args.max_moment
    )
    estimates = matrix_model.empirical_moments(config, spec, args.empirical_means)
    exact = matrix_model.exact_trace_predictions(args.d, args.lam, args.sigma, args.max_moment)
    result = matrix_model.compare_to_prediction(estimates, exact, z_threshold=args.z_threshold)
    if args.dump_spectrum:
        matrix_model.dump_spectrum(config, spec, args.dump_spectrum)
    rows = [
        {
            "m": row.m,
            "mean": row.mean,
            "std_error": row.std_error,
            "exact": row.exact,
            "z": row.z,
        }
        for row in result.rows
    ]
    _emit_rows(rows, args.output, out)


_HANDLERS = {
    "partitions": _cmd_partitions,
    "bnc": _cmd_bnc,
    "meander": _cmd_meander,
    "cumulants": _cmd_cumulants,
    "clt": _cmd_clt,
    "limit": _cmd_limit,
    "simulate": _cmd_simulate,
}


def run(argv: list[str] | None = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        _HANDLERS[args.group](args, out)
    except ResourceLimitError as exc:
        print(f"bifree: refused: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"bifree: error: {exc}", file=sys.stderr)
        return 2
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
