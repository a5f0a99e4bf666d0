"""Command-line front end.

Exit status: 0 on success or a passing check, 1 on a failing check, 2 on
any input error (unreadable or malformed file, dimension mismatch, invalid
state or channel).
"""
from __future__ import annotations

import argparse
import json
import shlex
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import channel as chm
from . import entropy as en
from . import io
from . import verify as vf
from .errors import ParseError, QrevError
from .verify import CheckReport

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2

# command -> (number of inputs or None for "one or more", input kinds)
COMMANDS = {
    "validate": (None, None),
    "choi": (1, ("channel",)),
    "kraus": (1, ("channel",)),
    "complement": (1, ("channel",)),
    "stinespring": (1, ("channel",)),
    "entropy": (1, ("state",)),
    "relent": (2, ("state", "state")),
    "mutinfo": (None, None),
    "coherent": (2, ("channel", "state")),
    "fidelity": (2, ("channel", "state")),
    "petz": (2, ("channel", "state")),
    "check-kl": (2, ("channel", "code")),
    "check-reversible": (2, ("channel", "code")),
    "check-vanishing": (2, ("channel", "code")),
    "tradeoff": (2, ("channel", "code")),
}

LOADERS = {"state": io.load_state, "code": io.load_code, "channel": io.load_channel}


def _report(method, tol, quantities, ok=True) -> CheckReport:
    return CheckReport("pass" if ok else "fail", method, tol, quantities)


def _load_all(paths, kinds):
    # validate every input before computing anything
    return [LOADERS[k](p) for p, k in zip(paths, kinds)]


def _validate(paths, args):
    summary = {}
    for p in paths:
        kind = io.detect_kind(io.load_json(p))
        obj = LOADERS[kind](p)
        summary[p] = (kind, obj)
    quantities = {"files": float(len(paths))}
    for kind in ("state", "code", "channel"):
        quantities[f"{kind}s"] = float(sum(1 for k, _ in summary.values() if k == kind))
    return EXIT_OK, _report("validate", args.tol, quantities)


def _mutinfo(paths, args):
    if len(paths) == 2:
        ch, rho = _load_all(paths, ("channel", "state"))
        value = en.channel_mutual_information(rho, ch)
    elif len(paths) == 1:
        if not args.dims:
            raise ParseError("mutinfo with a single state needs --dims DX DY")
        (rho,) = _load_all(paths, ("state",))
        value = en.mutual_information(rho, args.dims)
    else:
        raise ParseError("mutinfo takes CHANNEL STATE, or STATE --dims DX DY")
    return EXIT_OK, _report("mutinfo", args.tol, {"mutual_information_bits": value})


def _kl_quantities(report, kl):
    q = dict(report.quantities)
    n = kl.entries.shape[0]
    for a in range(n):
        for b in range(n):
            q[f"c[{a},{b}].re"] = float(kl.entries[a, b].real)
            q[f"c[{a},{b}].im"] = float(kl.entries[a, b].imag)
    return q


def run_command(command: str, paths: list[str], args) -> tuple[int, object]:
    """Execute one command; returns (exit status, report or JSON document)."""
    count, kinds = COMMANDS[command]
    if command == "validate":
        if not paths:
            raise ParseError("validate needs at least one file")
        return _validate(paths, args)
    if command == "mutinfo":
        return _mutinfo(paths, args)
    if len(paths) != count:
        raise ParseError(f"{command} expects {count} input file(s) ({', '.join(kinds)}), got {len(paths)}")
    objs = _load_all(paths, kinds)
    tol = args.tol

    if command == "choi":
        return EXIT_OK, io.channel_to_json(objs[0], form="choi")
    if command == "kraus":
        ch = objs[0]
        return EXIT_OK, io.channel_to_json(ch, form="kraus", kraus=chm.to_kraus(ch))
    if command == "complement":
        return EXIT_OK, io.channel_to_json(chm.complement(objs[0]))
    if command == "stinespring":
        ch = objs[0]
        v = chm.to_stinespring(ch)
        return EXIT_OK, {
            "in_dim": ch.in_dim,
            "out_dim": ch.out_dim,
            "env_dim": ch.kraus_rank,
            "isometry": io.encode_matrix(v),
        }
    if command == "petz":
        ch, sigma = objs
        return EXIT_OK, io.channel_to_json(vf.petz_recovery(ch, sigma))
    if command == "entropy":
        return EXIT_OK, _report("entropy", tol, {"entropy_bits": en.vn_entropy(objs[0])})
    if command == "relent":
        d = en.relative_entropy(*objs)
        finite = en.is_finite(d)
        return EXIT_OK, _report(
            "relent", tol, {"relative_entropy_bits": d if finite else None, "finite": float(finite)}
        )
    if command == "coherent":
        ch, rho = objs
        return EXIT_OK, _report(
            "coherent",
            tol,
            {
                "coherent_information_bits": en.coherent_information(rho, ch),
                "entropy_bits": en.vn_entropy(rho),
                "mutual_information_bits": en.channel_mutual_information(rho, ch),
            },
        )
    if command == "fidelity":
        ch, rho = objs
        return EXIT_OK, _report("fidelity", tol, {"entanglement_fidelity": en.entanglement_fidelity(rho, ch)})
    if command == "check-kl":
        report, kl = vf.check_kl(*objs, tol=tol)
        report = CheckReport(report.verdict, report.method, report.tolerance, _kl_quantities(report, kl))
    elif command == "check-reversible":
        report = vf.check_reversible(*objs, tol=tol)
    elif command == "check-vanishing":
        report = vf.check_vanishing(*objs, tol=tol)
    elif command == "tradeoff":
        if not args.dims:
            raise ParseError("tradeoff needs --dims DB DC for the bipartite output")
        ch, code = objs
        report = vf.check_tradeoff(ch, args.dims, code, tol=tol)
    else:  # pragma: no cover
        raise ParseError(f"unknown command {command}")
    return (EXIT_OK if report.passed else EXIT_FAIL), report


def _format(result, as_json: bool) -> str:
    if isinstance(result, CheckReport):
        return result.to_json() if as_json else str(result)
    return json.dumps(result) if as_json else json.dumps(result, indent=1)


def _run_safely(command, paths, args):
    try:
        return run_command(command, paths, args)
    except QrevError as exc:
        return EXIT_INPUT, exc


def _emit(status, result, args, out, err):
    if isinstance(result, Exception):
        kind = type(result).__name__
        if args.json:
            print(json.dumps({"error": kind, "message": str(result)}), file=out)
        print(f"error ({kind}): {result}", file=err)
    else:
        print(_format(result, args.json), file=out)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit one JSON object on stdout")
    common.add_argument("--tol", type=float, default=vf.DEFAULT_TOL, help="verdict tolerance")
    common.add_argument("--batch", metavar="PATH", help="file with one input list per line")
    common.add_argument("--dims", type=int, nargs=2, metavar=("D1", "D2"), help="bipartite factor dimensions")
    common.add_argument("--workers", type=int, default=4, help="threads for --batch")

    parser = argparse.ArgumentParser(prog="qrev", description="Quantum error-correction reversibility checks")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        p.add_argument("inputs", nargs="*", help="input JSON files")
    return parser


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    if args.batch:
        try:
            lines = Path(args.batch).read_text().splitlines()
        except OSError as exc:
            print(f"error (ParseError): {args.batch}: {exc.strerror}", file=err)
            return EXIT_INPUT
        jobs = [shlex.split(line) for line in lines if line.strip() and not line.lstrip().startswith("#")]
        with ThreadPoolExecutor(max_workers=max(1, args.workers)) as pool:
            results = list(pool.map(lambda paths: _run_safely(args.command, paths, args), jobs))
        for status, result in results:
            _emit(status, result, args, out, err)
        return max((s for s, _ in results), default=EXIT_OK)
    status, result = _run_safely(args.command, args.inputs, args)
    _emit(status, result, args, out, err)
    return status


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
