"""Command-line interface: solve, reconstruct, verify, power, transfer, reduce.

Matrices travel as JSON files ({"rows", "cols", "data"}).  Reports print as
plain text, or as a machine-readable JSON document on stdout with --json.
Every command is a thin wrapper over the library; matrices written to disk go
through the standard serializer, so CLI results are byte-identical to library
results.  The verify and transfer --spectrum report paths write delimited
output plus a rendered figure next to it.

Exit codes: 0 ok, 2 parse/input error, 3 dimension mismatch, 4 size guard,
5 not-a-solvent, 6 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
from enum import Enum
from pathlib import Path

import numpy as np

from . import riccati, spectral, symfun, transfer
from .commuting import power_closed
from .core import (
    QmeProblem,
    TolerancePolicy,
    frobenius,
    is_solvent,
    load_matrix,
    matrix_to_json,
    store_matrix,
)
from .errors import (
    DimensionMismatch,
    IoError,
    NotASolvent,
    ParseError,
    QmeError,
    SizeGuard,
)
from .reconstruct import PairKind, classify_pair

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_DIMENSION = 3
EXIT_GUARD = 4
EXIT_NOT_A_SOLVENT = 5
EXIT_NUMERICAL = 6


def _exit_code(err: QmeError) -> int:
    if isinstance(err, (ParseError, IoError)):
        return EXIT_PARSE
    if isinstance(err, DimensionMismatch):
        return EXIT_DIMENSION
    if isinstance(err, SizeGuard):
        return EXIT_GUARD
    if isinstance(err, NotASolvent):
        return EXIT_NOT_A_SOLVENT
    return EXIT_NUMERICAL


def _nonnegative_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return value


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def parse_complex(text: str) -> complex:
    """Parse a command-line complex scalar written as "re,im"."""
    parts = text.split(",")
    if len(parts) != 2:
        raise ParseError(f"expected a complex scalar as re,im - got {text!r}")
    try:
        return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        raise ParseError(f"expected a complex scalar as re,im - got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit the report as JSON on stdout")
    common.add_argument(
        "--tol",
        type=float,
        default=None,
        metavar="REL",
        help="override the relative residual tolerance (default 1e-9)",
    )

    parser = argparse.ArgumentParser(
        prog="qme",
        description="Solvents, symmetric functions and reductions for quadratic matrix equations.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", parents=[common], help="enumerate solvents of X^2 - L1 X - L0 = 0")
    p.add_argument("--l0", required=True, metavar="PATH")
    p.add_argument("--l1", required=True, metavar="PATH")
    p.add_argument("--out", default=".", metavar="DIR", help="directory for solvent_k.json files")

    p = sub.add_parser(
        "reconstruct", parents=[common], help="classify a pair of would-be solvents and build coefficients"
    )
    p.add_argument("--s1", required=True, metavar="PATH")
    p.add_argument("--s2", required=True, metavar="PATH")
    p.add_argument("--out", default=None, metavar="DIR", help="also write the coefficient matrices here")

    p = sub.add_parser(
        "verify", parents=[common], help="residual table for the symmetric-function identities"
    )
    p.add_argument("--l0", required=True, metavar="PATH")
    p.add_argument("--l1", required=True, metavar="PATH")
    p.add_argument("--s1", required=True, metavar="PATH")
    p.add_argument("--s2", required=True, metavar="PATH")
    p.add_argument("--pmax", type=_nonnegative_int, default=8, metavar="K")
    p.add_argument("--out", default=None, metavar="DIR", help="write verify_residuals.csv and .png here")

    p = sub.add_parser("power", parents=[common], help="solvent power through the linearization")
    p.add_argument("--l0", required=True, metavar="PATH")
    p.add_argument("--l1", required=True, metavar="PATH")
    p.add_argument("--s", required=True, metavar="PATH")
    p.add_argument("--p", required=True, type=_nonnegative_int, metavar="K")
    p.add_argument("--closed", action="store_true", help="use the commuting-case Chebyshev closed form")
    p.add_argument("--out", default=None, metavar="DIR", help="write power_K.json here")

    p = sub.add_parser("transfer", parents=[common], help="N-period transfer matrix or transmission spectrum")
    p.add_argument("--t", default=None, metavar="RE,IM", help="transmission coefficient of one cell")
    p.add_argument("--r", default=None, metavar="RE,IM", help="reflection coefficient of one cell")
    p.add_argument("--n", required=True, type=_positive_int, metavar="N", help="number of periods")
    p.add_argument(
        "--spectrum",
        default=None,
        metavar="CSV",
        help="per-sample input with columns t_re,t_im,r_re,r_im",
    )
    p.add_argument("--out", default=None, metavar="DIR", help="output directory (default: current)")

    p = sub.add_parser("reduce", parents=[common], help="reduce a Riccati-type equation to canonical form")
    p.add_argument("--form", required=True, choices=["riccati", "bqme", "lqme", "sbqme"])
    p.add_argument("--a", metavar="PATH", help="quadratic-term coefficient (riccati)")
    p.add_argument("--b", metavar="PATH", help="left linear coefficient (riccati)")
    p.add_argument("--c", metavar="PATH", help="right linear coefficient (riccati)")
    p.add_argument("--d", metavar="PATH", help="constant term (riccati)")
    p.add_argument("--l1t", metavar="PATH", help="left linear coefficient (bqme/sbqme)")
    p.add_argument("--l1pt", metavar="PATH", help="right linear coefficient (bqme/lqme)")
    p.add_argument("--l0t", metavar="PATH", help="constant term (bqme/lqme/sbqme)")
    p.add_argument("--out", default=None, metavar="DIR", help="write canonical/solvent matrices here")

    return parser


def _tolerance(args) -> TolerancePolicy:
    if args.tol is None:
        return TolerancePolicy()
    try:
        return TolerancePolicy(rel_residual=args.tol)
    except ValueError as exc:
        raise ParseError(f"--tol: {exc}") from None


def _out_dir(value) -> Path:
    path = Path(value)
    try:
        path.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise IoError(f"cannot create {path}: {exc}") from None
    return path


def _cmd_solve(args) -> dict:
    problem = QmeProblem(l0=load_matrix(args.l0), l1=load_matrix(args.l1), tol=_tolerance(args))
    result = spectral.enumerate_solvents(problem)
    predicts, value = spectral.eisenfeld_predicts_solvents(problem)
    out_dir = _out_dir(args.out)
    files = []
    residual_norms = []
    for k, s in enumerate(result.solvents):
        path = out_dir / f"solvent_{k}.json"
        store_matrix(s, path)
        files.append(str(path))
        residual_norms.append(is_solvent(problem, s)[1])
    return {
        "command": "solve",
        "inputs": {
            "l0": args.l0,
            "l1": args.l1,
            "n": problem.n,
            "rel_residual": problem.tol.rel_residual,
        },
        "results": {
            "count": len(result.solvents),
            "candidates_tried": result.candidates_tried,
            "haar_satisfied": result.haar_satisfied,
            "infinite_family_flag": result.infinite_family_flag,
            "eisenfeld": {"predicts_solvents": predicts, "value": value},
            "solvent_files": files,
            "residual_norms": residual_norms,
        },
    }


def _cmd_reconstruct(args) -> dict:
    s1 = load_matrix(args.s1)
    s2 = load_matrix(args.s2)
    tol = _tolerance(args)
    outcome = classify_pair(s1, s2, tol)
    results: dict = {"verdict": outcome.kind.value}
    if outcome.kind is not PairKind.IMPOSSIBLE:
        problem = QmeProblem(l0=outcome.l0, l1=outcome.l1, tol=tol)
        results["l1"] = outcome.l1
        results["l0"] = outcome.l0
        results["residual_norms"] = {
            "s1": is_solvent(problem, s1)[1],
            "s2": is_solvent(problem, s2)[1],
        }
    if outcome.kind is PairKind.INFINITE:
        results["freedom_projector"] = outcome.freedom
    if args.out is not None and outcome.kind is not PairKind.IMPOSSIBLE:
        out_dir = _out_dir(args.out)
        files = {}
        for name, m in (("l1", outcome.l1), ("l0", outcome.l0)):
            path = out_dir / f"{name}.json"
            store_matrix(m, path)
            files[name] = str(path)
        if outcome.kind is PairKind.INFINITE:
            path = out_dir / "freedom_projector.json"
            store_matrix(outcome.freedom, path)
            files["freedom_projector"] = str(path)
        results["files"] = files
    return {
        "command": "reconstruct",
        "inputs": {"s1": args.s1, "s2": args.s2, "rel_residual": tol.rel_residual},
        "results": results,
    }


def _cmd_verify(args) -> dict:
    l0 = load_matrix(args.l0)
    l1 = load_matrix(args.l1)
    s1 = load_matrix(args.s1)
    s2 = load_matrix(args.s2)
    tol = _tolerance(args)
    problem = QmeProblem(l0=l0, l1=l1, tol=tol)
    for name, s in (("s1", s1), ("s2", s2)):
        ok, rnorm = is_solvent(problem, s)
        if not ok:
            raise NotASolvent(f"{name}: residual norm {rnorm:.3e} exceeds the gate")

    entries: list[tuple[str, int, float]] = []
    entries.append(("girard_newton", 2, symfun.check_girard_newton(s1, s2, tol)))
    sig1 = s1 + s2
    pi1 = s1 @ s2 + s2 @ s1
    for p in range(args.pmax + 1):
        ab = symfun.alpha_beta(problem, p)
        direct_pi = np.linalg.matrix_power(s1, p) @ s2 + np.linalg.matrix_power(s2, p) @ s1
        entries.append(("waring", p, symfun.check_waring(s1, s2, p, tol)))
        entries.append(("mixed_pair", p, frobenius(direct_pi - (ab.alpha @ sig1 + ab.beta @ pi1))))
        entries.append(("sigma_eq_beta", p, frobenius(symfun.sigma_p(s1, s2, p, tol) - ab.beta)))
        entries.append(("pi_eq_neg_alpha", p, frobenius(symfun.pi_p(s1, s2, p, tol) + ab.alpha)))

    results: dict = {
        "pmax": args.pmax,
        "max_residual": max(value for _, _, value in entries),
        "table": [{"identity": name, "p": p, "residual": value} for name, p, value in entries],
    }
    if args.out is not None:
        out_dir = _out_dir(args.out)
        csv_path = out_dir / "verify_residuals.csv"
        try:
            with open(csv_path, "w", newline="", encoding="utf-8") as fh:
                writer = csv.writer(fh)
                writer.writerow(["identity", "p", "residual"])
                for name, p, value in entries:
                    writer.writerow([name, p, repr(value)])
        except OSError as exc:
            raise IoError(f"cannot write {csv_path}: {exc}") from None
        from .plotting import save_residual_figure

        fig_path = out_dir / "verify_residuals.png"
        save_residual_figure(entries, fig_path)
        results["files"] = {"csv": str(csv_path), "figure": str(fig_path)}
    return {
        "command": "verify",
        "inputs": {
            "l0": args.l0,
            "l1": args.l1,
            "s1": args.s1,
            "s2": args.s2,
            "rel_residual": tol.rel_residual,
        },
        "results": results,
    }


def _cmd_power(args) -> dict:
    problem = QmeProblem(l0=load_matrix(args.l0), l1=load_matrix(args.l1), tol=_tolerance(args))
    s = load_matrix(args.s)
    if args.closed:
        value = power_closed(problem, s, args.p)
        method = "chebyshev_closed"
    else:
        value = symfun.power_linearized(problem, s, args.p)
        method = "linearized"
    direct_gap = frobenius(value - np.linalg.matrix_power(s, args.p))
    results: dict = {"p": args.p, "method": method, "power": value, "direct_gap": direct_gap}
    if args.out is not None:
        out_dir = _out_dir(args.out)
        path = out_dir / f"power_{args.p}.json"
        store_matrix(value, path)
        results["files"] = {"power": str(path)}
    return {
        "command": "power",
        "inputs": {"l0": args.l0, "l1": args.l1, "s": args.s, "p": args.p, "closed": args.closed},
        "results": results,
    }


def _read_spectrum_csv(path) -> list[tuple[complex, complex]]:
    try:
        with open(path, "r", newline="", encoding="utf-8") as fh:
            raw_rows = [row for row in csv.reader(fh) if row and any(cell.strip() for cell in row)]
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc}") from None
    if not raw_rows:
        raise ParseError(f"{path}: no samples")
    start = 0
    try:
        [float(cell) for cell in raw_rows[0]]
    except ValueError:
        start = 1  # header line
    samples: list[tuple[complex, complex]] = []
    for k, row in enumerate(raw_rows[start:]):
        if len(row) != 4:
            raise ParseError(f"{path}: row {k}: expected 4 columns t_re,t_im,r_re,r_im")
        try:
            t_re, t_im, r_re, r_im = (float(cell) for cell in row)
        except ValueError:
            raise ParseError(f"{path}: row {k}: non-numeric entry") from None
        samples.append((complex(t_re, t_im), complex(r_re, r_im)))
    return samples


def _cmd_transfer(args) -> dict:
    if args.spectrum is not None:
        if args.t is not None or args.r is not None:
            raise ParseError("--spectrum cannot be combined with --t/--r")
        samples = _read_spectrum_csv(args.spectrum)
        rows, errors = transfer.transmission_spectrum(samples, args.n)
        out_dir = _out_dir(args.out if args.out is not None else ".")
        csv_path = out_dir / "spectrum.csv"
        try:
            with open(csv_path, "w", newline="", encoding="utf-8") as fh:
                writer = csv.writer(fh)
                writer.writerow(["index", "cos_beta", "transmittance"])
                for row in rows:
                    writer.writerow([row.index, repr(row.cos_beta), repr(row.transmittance)])
        except OSError as exc:
            raise IoError(f"cannot write {csv_path}: {exc}") from None
        from .plotting import save_spectrum_figure

        fig_path = out_dir / "spectrum.png"
        save_spectrum_figure(rows, fig_path)
        return {
            "command": "transfer",
            "inputs": {"spectrum": args.spectrum, "n": args.n},
            "results": {
                "samples": len(samples),
                "rows": len(rows),
                "errors": [{"index": idx, "message": msg} for idx, msg in errors],
                "files": {"csv": str(csv_path), "figure": str(fig_path)},
            },
        }
    if args.t is None or args.r is None:
        raise ParseError("provide either --spectrum or both --t and --r")
    cell = transfer.unit_cell(parse_complex(args.t), parse_complex(args.r))
    power = transfer.n_period(cell, args.n)
    results: dict = {
        "cos_beta": cell.cos_beta,
        "n": args.n,
        "n_period": power,
        "det": complex(np.linalg.det(power)),
        "transmittance": 1.0 / abs(power[0, 0]) ** 2,
    }
    if args.out is not None:
        out_dir = _out_dir(args.out)
        path = out_dir / f"n_period_{args.n}.json"
        store_matrix(power, path)
        results["files"] = {"n_period": str(path)}
    return {
        "command": "transfer",
        "inputs": {"t": parse_complex(args.t), "r": parse_complex(args.r), "n": args.n},
        "results": results,
    }


def _require_paths(args, names: tuple[str, ...]) -> None:
    missing = [f"--{name}" for name in names if getattr(args, name) is None]
    if missing:
        raise ParseError(f"form={args.form} requires {', '.join(missing)}")


def _cmd_reduce(args) -> dict:
    tol = _tolerance(args)
    inputs: dict = {"form": args.form}
    if args.form == "riccati":
        _require_paths(args, ("a", "b", "c", "d"))
        inputs.update({"a": args.a, "b": args.b, "c": args.c, "d": args.d})
        problem = riccati.RiccatiProblem(
            a=load_matrix(args.a), b=load_matrix(args.b), c=load_matrix(args.c), d=load_matrix(args.d)
        )
        trace = riccati.reduce_riccati(problem, tol)
    elif args.form == "bqme":
        _require_paths(args, ("l1t", "l1pt", "l0t"))
        inputs.update({"l1t": args.l1t, "l1pt": args.l1pt, "l0t": args.l0t})
        trace = riccati.reduce_bqme(
            load_matrix(args.l1t), load_matrix(args.l1pt), load_matrix(args.l0t), tol
        )
    elif args.form == "lqme":
        _require_paths(args, ("l1pt", "l0t"))
        inputs.update({"l1pt": args.l1pt, "l0t": args.l0t})
        l1pt = load_matrix(args.l1pt)
        trace = riccati.reduce_bqme(np.zeros_like(l1pt), l1pt, load_matrix(args.l0t), tol)
    else:  # sbqme
        _require_paths(args, ("l1t", "l0t"))
        inputs.update({"l1t": args.l1t, "l0t": args.l0t})
        l1t = load_matrix(args.l1t)
        l0t = load_matrix(args.l0t)
        solution = riccati.solve_sbqme(l1t, l0t, tol)
        results: dict = {
            "count": len(solution.solvents),
            "candidates_tried": solution.candidates_tried,
            "infinite_family_flag": solution.infinite_family_flag,
            "residual_norms": [
                frobenius(riccati.sbqme_residual(l1t, l0t, y)) for y in solution.solvents
            ],
        }
        if args.out is not None:
            out_dir = _out_dir(args.out)
            files = []
            for k, y in enumerate(solution.solvents):
                path = out_dir / f"sbqme_solvent_{k}.json"
                store_matrix(y, path)
                files.append(str(path))
            results["files"] = files
        return {"command": "reduce", "inputs": inputs, "results": results}

    results = {
        "canonical_l1": trace.canonical.l1,
        "canonical_l0": trace.canonical.l0,
        "back_map": trace.description,
    }
    if args.out is not None:
        out_dir = _out_dir(args.out)
        files = {}
        for name, m in (("canonical_l1", trace.canonical.l1), ("canonical_l0", trace.canonical.l0)):
            path = out_dir / f"{name}.json"
            store_matrix(m, path)
            files[name] = str(path)
        results["files"] = files
    return {"command": "reduce", "inputs": inputs, "results": results}


def _jsonify(value):
    if isinstance(value, dict):
        return {str(k): _jsonify(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonify(v) for v in value]
    if isinstance(value, np.ndarray):
        return matrix_to_json(value)
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, complex):
        return [value.real, value.imag]
    if isinstance(value, (np.floating, float)):
        value = float(value)
        return value if math.isfinite(value) else repr(value)
    if isinstance(value, (np.integer, np.bool_)):
        return value.item()
    return value


def _text_lines(key: str, value):
    if isinstance(value, dict):
        for sub, item in value.items():
            yield from _text_lines(f"{key}.{sub}" if key else str(sub), item)
    elif isinstance(value, np.ndarray):
        yield f"{key}:"
        for line in np.array2string(value, precision=12, suppress_small=True).splitlines():
            yield f"  {line}"
    elif isinstance(value, (list, tuple)):
        if all(not isinstance(v, (dict, list, tuple, np.ndarray)) for v in value):
            yield f"{key}: [{', '.join(str(v) for v in value)}]"
        else:
            for i, item in enumerate(value):
                yield from _text_lines(f"{key}[{i}]", item)
    elif isinstance(value, Enum):
        yield f"{key}: {value.value}"
    else:
        yield f"{key}: {value}"


def _emit(report: dict, as_json: bool) -> None:
    if as_json:
        print(json.dumps(_jsonify(report), indent=2, sort_keys=True))
    else:
        for line in _text_lines("", report):
            print(line)


_HANDLERS = {
    "solve": _cmd_solve,
    "reconstruct": _cmd_reconstruct,
    "verify": _cmd_verify,
    "power": _cmd_power,
    "transfer": _cmd_transfer,
    "reduce": _cmd_reduce,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report = _HANDLERS[args.command](args)
        code = EXIT_OK
    except QmeError as err:
        report = {
            "command": args.command,
            "error": {"type": type(err).__name__, "message": str(err)},
        }
        code = _exit_code(err)
    report["exit_code"] = code
    _emit(report, args.json)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
