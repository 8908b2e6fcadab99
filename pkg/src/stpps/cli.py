"""Command-line front end.

Every command prints one JSON run report on stdout, except curves and
``--out csv`` which print CSV.  Exit codes: 0 success, 2 infeasible (with a
certificate in the report), 3 invalid input, 4 internal inconsistency.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from fractions import Fraction
from typing import Any, Optional, Sequence

from . import __version__
from .core import BudgetExceeded, Infeasible, InternalInconsistency, InvalidInput, Partition
from .corpus import KINDS, generate
from .instances import Instance, bundled, load_instance, orientation_to_json
from .kpartition import approx_st_k_partition, exact_st_k_partition
from .orientation import (
    check_feasibility,
    find_orientation,
    max_ell_given_k,
    max_k_given_ell,
    reorient_k1_k2,
)
from .pps import (
    compute_pps,
    compute_st_pps,
    curve,
    curve_to_csv,
    curve_to_json,
    sequence_from_json,
    sequence_to_json,
    validate_sequence,
)
from .reference import EnumerationBudget

EXIT_OK, EXIT_INFEASIBLE, EXIT_INVALID, EXIT_INTERNAL = 0, 2, 3, 4


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise InvalidInput(message)


class _Outcome(Exception):
    """Carries a finished payload together with a non-zero exit status."""

    def __init__(self, payload: dict, status: int) -> None:
        super().__init__(status)
        self.payload = payload
        self.status = status


def _jsonable(obj: Any) -> Any:
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def _open(ref: str) -> Instance:
    if ref.startswith("bundled:"):
        return bundled(ref.split(":", 1)[1])
    return load_instance(ref)


def _labels(inst: Instance) -> list[str]:
    return list(inst.ground.labels)


def _part(inst: Instance, p: Optional[Partition]) -> Optional[str]:
    return None if p is None else p.to_text(_labels(inst))


def _terminals(inst: Instance, args: argparse.Namespace) -> tuple[int, int]:
    s_lab, t_lab = getattr(args, "s", None), getattr(args, "t", None)
    if s_lab is None and t_lab is None:
        return inst.require_terminals()
    s = inst.ground.index(s_lab) if s_lab is not None else inst.ground.s_index
    t = inst.ground.index(t_lab) if t_lab is not None else inst.ground.t_index
    if s is None or t is None:
        raise InvalidInput("both terminals are needed")
    return s, t


# -- commands --------------------------------------------------------------------


def cmd_pps(args: argparse.Namespace, inst: Instance) -> dict:
    oracle = inst.require_oracle()
    seq = compute_st_pps(oracle, *_terminals(inst, args)) if args.st else compute_pps(oracle)
    doc = sequence_to_json(seq, _labels(inst))
    if args.out == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["index", "blocks", "value", "critical_value_after", "partition"])
        for j, p in enumerate(seq.partitions):
            crit = seq.critical_values[j] if j < len(seq.critical_values) else ""
            w.writerow([j + 1, len(p), oracle.evaluate_partition(p), crit, p.to_text(_labels(inst))])
        return {"csv": buf.getvalue()}
    return {"sequence": doc, "oracle_calls": oracle.evaluations}


def cmd_curve(args: argparse.Namespace, inst: Instance) -> dict:
    oracle = inst.require_oracle()
    if args.st:
        c = curve(oracle, "st", *_terminals(inst, args))
    else:
        c = curve(oracle, "all")
    if args.out == "csv":
        return {"csv": curve_to_csv(c, _labels(inst))}
    return {"curve": curve_to_json(c, _labels(inst)), "oracle_calls": oracle.evaluations}


def cmd_kpart(args: argparse.Namespace, inst: Instance) -> dict:
    oracle = inst.require_oracle()
    s, t = _terminals(inst, args)
    if args.exact:
        res = exact_st_k_partition(oracle, s, t, args.k, EnumerationBudget(max_n=args.budget_n))
    else:
        res = approx_st_k_partition(oracle, s, t, args.k)
    return {
        "partition": _part(inst, res.partition),
        "value": str(res.value),
        "mode": res.mode,
        "branch": res.branch,
        "candidates": _jsonable(res.candidates),
        "bounds": _jsonable(res.bounds),
        "oracle_calls": oracle.evaluations,
    }


def cmd_orient(args: argparse.Namespace, inst: Instance) -> dict:
    g = inst.require_hypergraph()
    s, t = _terminals(inst, args)
    action = args.action
    if action in ("check", "find"):
        cert = (check_feasibility if action == "check" else find_orientation)(g, s, t, args.k, args.l)
        payload = {
            "verdict": cert.verdict,
            "checked": list(cert.checked),
            "witness": _part(inst, cert.witness),
        }
        if cert.orientation is not None:
            payload["orientation"] = orientation_to_json(cert.orientation)
            payload["indegrees"] = list(cert.indegrees or ())
        if not cert.feasible:
            raise _Outcome(payload, EXIT_INFEASIBLE)
        return payload
    if action == "maxell":
        ell, p = max_ell_given_k(g, s, t, args.k)
        return {"l_star": ell, "certificate": _part(inst, p)}
    if action == "maxk":
        k, info = max_k_given_ell(g, s, t, args.l)
        return {
            "k_star": k,
            "alpha": info["alpha"],
            "beta": info["beta"],
            "alpha_partition": _part(inst, info["alpha_partition"]),  # type: ignore[arg-type]
            "beta_partition": _part(inst, info["beta_partition"]),  # type: ignore[arg-type]
        }
    if args.k1 is None or args.k2 is None:
        raise InvalidInput("reorient needs --k1 and --k2")
    o = reorient_k1_k2(g, s, t, args.k, args.l, args.k1, args.k2)
    return {"orientation": orientation_to_json(o)}


def cmd_validate(args: argparse.Namespace, inst: Instance) -> dict:
    oracle = inst.require_oracle()
    try:
        with open(args.sequence) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InvalidInput(f"cannot read {args.sequence}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if isinstance(data, dict) and "result" in data:
        data = data["result"].get("sequence", data["result"])
    seq = sequence_from_json(data, inst.ground)
    rep = validate_sequence(seq, oracle)
    payload = {"ok": rep.ok, "violations": rep.violations}
    if not rep.ok:
        raise _Outcome(payload, EXIT_INFEASIBLE)
    return payload


def cmd_corpus(args: argparse.Namespace) -> dict:
    return {"instances": generate(args.seed, args.count, args.kind, args.n_min, args.n_max)}


# -- plumbing --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="stpps", description="Principal partition sequences, k-partition and orientations.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("--budget-n", type=int, default=9, help="size bound for exhaustive enumeration")
    p.add_argument("--jobs", type=int, default=1, help="accepted for compatibility; solves run sequentially")
    p.add_argument("--timing", action="store_true", help="add wall-clock seconds to the report")
    sub = p.add_subparsers(dest="command", required=True)

    def instance(q: argparse.ArgumentParser) -> None:
        q.add_argument("instance", help="instance file, or bundled:NAME")
        q.add_argument("--s", help="override the source terminal label")
        q.add_argument("--t", help="override the sink terminal label")

    q = sub.add_parser("pps", help="principal partition sequence")
    instance(q)
    q.add_argument("--st", action="store_true", help="{s,t}-separating sequence")
    q.add_argument("--out", choices=("json", "csv"), default="json")

    q = sub.add_parser("curve", help="breakpoints of the partition envelope")
    instance(q)
    q.add_argument("--st", action="store_true")
    q.add_argument("--out", choices=("json", "csv"), default="csv")

    q = sub.add_parser("kpart", help="{s,t}-separating k-partition")
    instance(q)
    q.add_argument("k", type=int)
    q.add_argument("--exact", action="store_true", help="exhaustive optimum instead of the approximation")

    q = sub.add_parser("orient", help="hypergraph orientation problems")
    q.add_argument("action", choices=("check", "find", "maxell", "maxk", "reorient"))
    instance(q)
    q.add_argument("-k", type=int, default=0)
    q.add_argument("-l", type=int, default=0)
    q.add_argument("--k1", type=int)
    q.add_argument("--k2", type=int)

    q = sub.add_parser("validate", help="check a sequence document against an instance")
    q.add_argument("sequence")
    instance(q)

    q = sub.add_parser("corpus", help="seeded random instances")
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--count", type=int, default=10)
    q.add_argument("--kind", choices=KINDS, default="graph_cut")
    q.add_argument("--n-min", type=int, default=3)
    q.add_argument("--n-max", type=int, default=7)
    return p


COMMANDS = {"pps": cmd_pps, "curve": cmd_curve, "kpart": cmd_kpart, "orient": cmd_orient, "validate": cmd_validate}


def run(argv: Sequence[str]) -> tuple[int, str]:
    """Execute a command line; returns the exit status and the text for stdout."""
    argv = list(argv)
    report: dict[str, Any] = {"command": argv}
    started = time.perf_counter()
    status = EXIT_OK
    try:
        args = build_parser().parse_args(argv)
        if args.budget_n < 1 or args.jobs < 1:
            raise InvalidInput("--budget-n and --jobs must be positive")
        if args.command == "corpus":
            payload = cmd_corpus(args)
        else:
            inst = _open(args.instance)
            report["instance"] = inst.digest
            payload = COMMANDS[args.command](args, inst)
    except _Outcome as out:
        payload, status = out.payload, out.status
    except Infeasible as exc:
        cert = exc.certificate
        payload = {"error": str(exc), "certificate": cert.to_text() if isinstance(cert, Partition) else cert}
        status = EXIT_INFEASIBLE
    except (InvalidInput, BudgetExceeded) as exc:
        payload, status = {"error": str(exc)}, EXIT_INVALID
    except InternalInconsistency as exc:
        payload, status = {"error": str(exc)}, EXIT_INTERNAL
    if status == EXIT_OK and "csv" in payload:
        return status, payload["csv"]
    report["result"] = _jsonable(payload)
    report["status"] = status
    if "--timing" in argv:
        report["seconds"] = round(time.perf_counter() - started, 6)
    return status, json.dumps(report, indent=2, sort_keys=True) + "\n"


def main(argv: Optional[Sequence[str]] = None) -> int:
    status, text = run(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(text)
    return status


if __name__ == "__main__":
    raise SystemExit(main())
