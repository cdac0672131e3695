"""Command line entry point: ``tenclass {check,decompose,scale,solve-tcp,report}``.

Exit codes: 0 on success, 1 when ``--assert`` is given and a requested class
test comes back negative, 2 on any error.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import __version__
from .bnekrasov import check_conditions, decompose, is_b_nekrasov_conditions, is_b_nekrasov_definition
from .errors import NoConvergence, TenclassError, TensorFileError
from .io import parse_tensor, parse_vector, write_tensor
from .nekrasov import is_nekrasov, is_nekrasov_z
from .poracle import p0_falsify, p_falsify
from .scaling import build_w, build_w_b_nekrasov, is_nonsingular_h, is_nonsingular_m
from .tcp import TCPInstance, solve_fixed_point, solve_support_enumeration
from .tensor import (
    DenseTensor,
    is_diag_dominant,
    is_z_tensor,
    offdiag_row_sums,
)
from .verdict import jsonable

ALL_CLASSES = ("z", "dd", "sdd", "nekrasov", "nekrasov_z", "bnekrasov", "nonsingular_m",
               "nonsingular_h", "p", "p0")
ALIASES = {"m": "nonsingular_m", "h": "nonsingular_h", "b-nekrasov": "bnekrasov",
           "nekrasov-z": "nekrasov_z"}
NEGATIVE = {"fails", "falsified"}
DEFAULT_BUDGET = 2000


def _parse_classes(raw: str | None) -> list[str]:
    if not raw:
        return list(ALL_CLASSES)
    out = []
    for name in raw.split(","):
        name = ALIASES.get(name.strip().lower(), name.strip().lower())
        if name not in ALL_CLASSES:
            raise ValueError(f"unknown class {name!r}; choose from {', '.join(ALL_CLASSES)}")
        if name not in out:
            out.append(name)
    return out


def _flag(ok: bool) -> dict:
    return {"verdict": "holds" if ok else "fails"}


def _first_failing_row(mask: np.ndarray) -> int | None:
    bad = np.flatnonzero(~mask)
    return int(bad[0]) + 1 if bad.size else None


def build_report(A: DenseTensor, classes=None, tol: float = 0.0, seed: int = 42,
                 budget: int = DEFAULT_BUDGET) -> dict:
    """Run the requested class tests and collect verdicts and witnesses."""
    classes = list(ALL_CLASSES) if classes is None else classes
    diag = np.abs(A.diagonal())
    R = offdiag_row_sums(A)
    dec = decompose(A)
    out: dict = {}

    for name in classes:
        if name == "z":
            out["z"] = _flag(is_z_tensor(A))
        elif name == "dd":
            out["dd"] = _flag(is_diag_dominant(A, strict=False, tol=tol))
            if out["dd"]["verdict"] == "fails":
                out["dd"]["index"] = _first_failing_row(diag >= R - tol)
        elif name == "sdd":
            out["sdd"] = _flag(is_diag_dominant(A, strict=True, tol=tol))
            if out["sdd"]["verdict"] == "fails":
                out["sdd"]["index"] = _first_failing_row(diag > R + tol)
        elif name == "nekrasov":
            out["nekrasov"] = is_nekrasov(A, tol).to_dict()
        elif name == "nekrasov_z":
            out["nekrasov_z"] = is_nekrasov_z(A, tol, positive_diagonal=True).to_dict()
        elif name == "bnekrasov":
            by_def = is_b_nekrasov_definition(A, tol)
            by_cond = is_b_nekrasov_conditions(A, tol)
            out["bnekrasov"] = {"verdict": by_def.status.value}
            if by_def.index is not None:
                out["bnekrasov"]["index"] = by_def.index
            out["bnekrasov_definition"] = by_def.to_dict()
            out["bnekrasov_conditions"] = by_cond.to_dict()
            if by_def.status != by_cond.status:
                out["bnekrasov"]["consistency_error"] = "definition and conditions disagree"
        elif name in ("nonsingular_m", "nonsingular_h"):
            test = is_nonsingular_m if name == "nonsingular_m" else is_nonsingular_h
            try:
                out[name] = test(A, tol).to_dict()
            except NoConvergence as exc:
                out[name] = {"verdict": "not_applicable", "reason": str(exc)}
        elif name in ("p", "p0"):
            search = p_falsify if name == "p" else p0_falsify
            out[name] = search(A, budget=budget, seed=seed).to_dict()

    witnesses = {
        "row_sums": R,
        "r_plus": dec.rplus,
        "bplus_diagonal": dec.bplus.diagonal(),
    }
    try:
        witnesses["scaling_certificate"] = build_w(A).to_dict()
    except TenclassError as exc:
        witnesses["scaling_certificate"] = {"unavailable": str(exc)}
    return jsonable({
        "tool": "tenclass",
        "version": __version__,
        "order": A.order,
        "dim": A.dim,
        "tolerance": tol,
        "seed": seed,
        "p_budget": budget,
        "classes": out,
        "witnesses": witnesses,
    })


def report_markdown(A: DenseTensor, report: dict) -> str:
    lines = [
        f"# Tensor class report (order {A.order}, dim {A.dim})",
        "",
        f"tenclass {report['version']}, tol = {report['tolerance']}, seed = {report['seed']}",
        "",
        "| class | verdict | detail |",
        "|---|---|---|",
    ]
    for name, entry in report["classes"].items():
        detail = []
        if "index" in entry:
            detail.append(f"row {entry['index']}")
        if "reason" in entry:
            detail.append(entry["reason"])
        if "note" in entry:
            detail.append(entry["note"])
        cell = "; ".join(detail).replace("|", "\\|")
        lines.append(f"| {name} | {entry['verdict']} | {cell} |")
    w = report["witnesses"]
    lines += [
        "",
        "## Witnesses",
        "",
        f"- off-diagonal row sums R_i: {w['row_sums']}",
        f"- r+: {w['r_plus']}",
        f"- B+ diagonal: {w['bplus_diagonal']}",
    ]
    cert = w["scaling_certificate"]
    if "w" in cert:
        lines.append(f"- scaling weights w: {cert['w']} (epsilon {cert['epsilon']})")
    else:
        lines.append(f"- scaling certificate: {cert['unavailable']}")
    return "\n".join(lines) + "\n"


def _emit(payload) -> None:
    print(json.dumps(jsonable(payload), indent=2))


def cmd_check(args) -> int:
    A = parse_tensor(args.path)
    classes = _parse_classes(args.classes)
    report = build_report(A, classes, args.tol, args.seed, args.budget)
    _emit(report)
    if args.assert_:
        if any(entry["verdict"] in NEGATIVE for entry in report["classes"].values()):
            return 1
    return 0


def cmd_decompose(args) -> int:
    A = parse_tensor(args.path)
    dec = decompose(A)
    if args.out_bplus:
        write_tensor(dec.bplus, args.out_bplus, comment="B+ part of the splitting")
    if args.out_c:
        write_tensor(dec.c, args.out_c, comment="constant-row part C of the splitting")
    _emit({
        "r_plus": dec.rplus,
        "bplus_diagonal": dec.bplus.diagonal(),
        "c_is_zero": dec.c_is_zero,
        "conditions": check_conditions(A, args.tol).to_dict(),
        "files": {"bplus": args.out_bplus, "c": args.out_c},
    })
    return 0


def cmd_scale(args) -> int:
    A = parse_tensor(args.path)
    if args.bplus:
        cert = build_w_b_nekrasov(A, args.eps_fraction, tol=args.tol)
    else:
        cert = build_w(A, args.eps_fraction, strict_hypothesis=args.strict_hypothesis, tol=args.tol)
    _emit(cert.to_dict())
    return 0


def cmd_solve_tcp(args) -> int:
    A = parse_tensor(args.path)
    inst = TCPInstance(A, parse_vector(args.q_path))
    label = "even order" if A.order % 2 == 0 else "odd order: no existence guarantee"
    if args.method == "enum":
        found = solve_support_enumeration(inst, tol=args.tol, seed=args.seed, all_solutions=args.all)
        sols = found if isinstance(found, list) else [found]
    else:
        sols = [solve_fixed_point(inst, step=args.step, tol=args.tol)]
    payload = sols[0].to_dict() if len(sols) == 1 and not args.all else {"solutions": [s.to_dict() for s in sols]}
    payload["order_note"] = label
    _emit(payload)
    return 0


def cmd_report(args) -> int:
    A = parse_tensor(args.path)
    report = build_report(A, None, args.tol, args.seed, args.budget)
    if args.json:
        _emit(report)
    else:
        sys.stdout.write(report_markdown(A, report))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tenclass", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"tenclass {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(tol: float = 0.0) -> list[argparse.ArgumentParser]:
        # A fresh parent per subcommand; argparse shares parent actions otherwise.
        parent = argparse.ArgumentParser(add_help=False)
        parent.add_argument("--tol", type=float, default=tol, help=f"tolerance (default {tol:g})")
        parent.add_argument("--seed", type=int, default=42)
        parent.add_argument("--json", action="store_true", help="machine-readable output where optional")
        return [parent]

    p = sub.add_parser("check", parents=common(), help="run class-membership tests, JSON report")
    p.add_argument("path")
    p.add_argument("--classes", help=f"comma-separated subset of {','.join(ALL_CLASSES)}")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="P-search sample budget")
    p.add_argument("--assert", dest="assert_", action="store_true",
                   help="exit 1 if any requested test is negative")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("decompose", parents=common(), help="split into B+ and constant-row C")
    p.add_argument("path")
    p.add_argument("--out-bplus")
    p.add_argument("--out-c")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("scale", parents=common(), help="diagonal scaling certificate")
    p.add_argument("path")
    p.add_argument("--eps-fraction", type=float, default=0.5)
    p.add_argument("--strict-hypothesis", action="store_true",
                   help="require all trailing indices > i, not just one")
    p.add_argument("--bplus", action="store_true", help="scale B+ of a B-Nekrasov input")
    p.set_defaults(func=cmd_scale)

    p = sub.add_parser("solve-tcp", parents=common(1e-8), help="solve TCP(A, q)")
    p.add_argument("path")
    p.add_argument("q_path")
    p.add_argument("--method", choices=("enum", "fixed-point"), default="enum")
    p.add_argument("--step", type=float, default=0.05, help="fixed-point step size")
    p.add_argument("--all", action="store_true", help="report every solution found")
    p.set_defaults(func=cmd_solve_tcp)

    p = sub.add_parser("report", parents=common(), help="full class lattice as markdown")
    p.add_argument("path")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.set_defaults(func=cmd_report)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (TenclassError, ValueError, OSError) as exc:
        error = {"type": type(exc).__name__, "message": str(exc)}
        if isinstance(exc, TensorFileError) and exc.line is not None:
            error["line"] = exc.line
        _emit({"error": error})
        return 2


if __name__ == "__main__":
    sys.exit(main())
