"""Command-line front end.

Subcommands: coupling, variances, normal-form, state, wigner, verify,
baseline.  Every run emits one document, JSON by default (schema tag
"nmode-squeeze/1") or CSV with --format csv.  Floats are printed with 17
significant digits so a parse on any IEEE-754 platform reproduces the
exact bits.  Exit codes: 0 success, 1 verification failure, 2 usage
error, 3 resource guard.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys
from dataclasses import dataclass, field

import numpy as np

from . import coupling as cp
from . import fockoracle as fo
from . import gaussian as ga
from . import normalform as nf
from .errors import ModeCountError, ParameterRangeError, ResourceLimitError
from .verification import CheckRecord, VerifyReport, resolve_tolerances, run_verification

SCHEMA = "nmode-squeeze/1"
COMMANDS = ("coupling", "variances", "normal-form", "state", "wigner", "verify", "baseline")

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3


class UsageError(ValueError):
    """Malformed configuration; mapped onto exit code 2."""


@dataclass
class RunConfig:
    """Parsed invocation; one per CLI run."""

    command: str
    n: int | None = None
    lam: float = 0.0
    cutoff: int | None = None
    grid: list[tuple[str, float, float, int]] = field(default_factory=list)
    points: list[tuple[list[float], list[float]]] = field(default_factory=list)
    fmt: str = "json"
    out: str | None = None
    seed: int | None = None
    tolerances: dict[str, float] = field(default_factory=dict)


# ---------------------------------------------------------------------------
# serialization: floats at 17 significant digits, deterministic layout

def _fmt_float(value: float) -> str:
    if math.isnan(value):
        return "null"
    return format(float(value), ".17g")


def _render_json(obj, indent: int = 0) -> str:
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        parts = [f'{inner}"{key}": {_render_json(val, indent + 1)}' for key, val in obj.items()]
        return "{\n" + ",\n".join(parts) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        rendered = [_render_json(val, indent + 1) for val in obj]
        if all(len(r) < 24 and "\n" not in r for r in rendered):
            return "[" + ", ".join(rendered) + "]"
        return "[\n" + ",\n".join(inner + r for r in rendered) + "\n" + pad + "]"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if obj is None:
        return "null"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt_float(float(obj))
    if isinstance(obj, str):
        escaped = obj.replace("\\", "\\\\").replace('"', '\\"')
        return f'"{escaped}"'
    raise TypeError(f"cannot serialize {type(obj)!r}")


def _scalar_csv(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return "null"
    if isinstance(value, (float, np.floating)):
        return _fmt_float(float(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (list, tuple)):
        return ";".join(_scalar_csv(v) for v in value)
    if isinstance(value, dict):
        return ";".join(f"{k}={_scalar_csv(v)}" for k, v in value.items())
    return str(value)


def _flatten(obj, prefix: str = ""):
    if isinstance(obj, dict):
        for key, val in obj.items():
            yield from _flatten(val, f"{prefix}{key}.")
    elif isinstance(obj, (list, tuple)):
        for idx, val in enumerate(obj):
            yield from _flatten(val, f"{prefix}{idx}.")
    else:
        yield prefix.rstrip("."), obj


def _render_csv(doc: dict) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    results = doc["results"]
    if doc["command"] == "wigner":
        points = results["points"]
        nmodes = len(points[0]["q"])
        header = [f"q{i+1}" for i in range(nmodes)] + [f"p{i+1}" for i in range(nmodes)]
        header.append("value")
        has_closed = "value_closed" in points[0]
        if has_closed:
            header.append("value_closed")
        writer.writerow(header)
        for pt in points:
            row = [_fmt_float(v) for v in pt["q"]] + [_fmt_float(v) for v in pt["p"]]
            row.append(_fmt_float(pt["value"]))
            if has_closed:
                row.append(_fmt_float(pt["value_closed"]))
            writer.writerow(row)
    elif doc["command"] == "verify":
        header = ["name", "paper_ref", "expected", "actual", "tol", "pass", "tail_mass", "skipped", "note"]
        writer.writerow(header)
        for rec in doc["checks"]:
            writer.writerow([
                rec["name"], rec["paper_ref"], _scalar_csv(rec["expected"]),
                _scalar_csv(rec["actual"]), _scalar_csv(rec["tol"]), _scalar_csv(rec["pass"]),
                _scalar_csv(rec["tail_mass"]), _scalar_csv(rec["skipped"]), rec["note"],
            ])
    else:
        writer.writerow(["name", "value"])
        for name, value in _flatten(results):
            writer.writerow([name, _scalar_csv(value)])
    return buf.getvalue()


def _matrix(mat: np.ndarray) -> list:
    if np.issubdtype(mat.dtype, np.integer):
        return [[int(v) for v in row] for row in mat]
    return [[float(v) for v in row] for row in mat]


def _vector(vec: np.ndarray) -> list[float]:
    return [float(v) for v in vec]


# ---------------------------------------------------------------------------
# command implementations

def _results_coupling(config: RunConfig) -> dict:
    base = cp.build_coupling(_require_n(config))
    kernel = cp.build_kernel(base, config.lam)
    return {
        "A": _matrix(base.entries),
        "eigenvalues": _vector(base.eigenvalues),
        "Lambda": _matrix(kernel.Lambda),
        "gram": _matrix(kernel.gram),
        "det_lambda": kernel.detLambda,
        "det_n": kernel.detN,
    }


def _results_variances(config: RunConfig) -> dict:
    kernel = cp.build_kernel(cp.build_coupling(_require_n(config)), config.lam)
    by_sum = ga.variances_matrix_sum(kernel)
    closed = ga.variances_closed(config.lam)
    return {
        "matrix_sum": {"var_x1": by_sum.varX1, "var_x2": by_sum.varX2},
        "closed": {"var_x1": closed.varX1, "var_x2": closed.varX2},
        "product_matrix_sum": by_sum.varX1 * by_sum.varX2,
        "product_closed": closed.varX1 * closed.varX2,
    }


def _results_normal_form(config: RunConfig) -> dict:
    kernel = cp.build_kernel(cp.build_coupling(_require_n(config)), config.lam)
    form = nf.normal_form(kernel)
    return {
        "prefactor": form.prefactor,
        "cre_mat": _matrix(form.creMat),
        "cross_mat": _matrix(form.crossMat),
        "ann_mat": _matrix(form.annMat),
    }


def _results_state(config: RunConfig) -> dict:
    n = _require_n(config)
    kernel = cp.build_kernel(cp.build_coupling(n), config.lam)
    state = nf.squeezed_vacuum(kernel)
    results = {
        "norm": state.norm,
        "two_photon_matrix": _matrix(state.F),
    }
    if config.cutoff is not None:
        space = fo.build_space(n, config.cutoff)
        psi = fo.two_photon_expand(state, space)
        amplitudes = []
        for idx in np.flatnonzero(psi.amps):
            amp = psi.amps[idx]
            amplitudes.append(
                {
                    "occupation": list(space.occupation(int(idx))),
                    "re": float(amp.real),
                    "im": float(amp.imag),
                }
            )
        results["fock"] = {
            "cutoff": config.cutoff,
            "tail_mass": fo.tail_mass(psi),
            "amplitudes": amplitudes,
        }
    return results


def _results_baseline(config: RunConfig) -> dict:
    state = nf.baseline_two_mode(config.lam)
    return {
        "norm": state.norm,
        "f_offdiag": float(state.F[0, 1]),
        "var_x1": math.exp(-2 * config.lam) / 4,
        "var_x2": math.exp(2 * config.lam) / 4,
        "uncertainty_product": 1.0 / 16.0,
    }


def _wigner_points(config: RunConfig, n: int) -> list[tuple[np.ndarray, np.ndarray]]:
    if config.points and config.grid:
        raise UsageError("give either --point or --grid, not both")
    if config.points:
        pts = []
        for q_vals, p_vals in config.points:
            if len(q_vals) != n or len(p_vals) != n:
                raise UsageError(f"--point needs {n} q values and {n} p values")
            pts.append((np.array(q_vals), np.array(p_vals)))
        return pts
    if config.grid:
        if len(config.grid) > 2:
            raise UsageError("at most 2 grid axes (other coordinates are pinned to 0)")
        axes_values = []
        for axis, lo, hi, steps in config.grid:
            kind, index = _parse_axis(axis, n)
            axes_values.append((kind, index, np.linspace(lo, hi, steps)))
        pts = []
        mesh = np.meshgrid(*[vals for _, _, vals in axes_values], indexing="ij")
        for flat_idx in range(mesh[0].size):
            q = np.zeros(n)
            p = np.zeros(n)
            for (kind, index, _), grid_arr in zip(axes_values, mesh):
                coord = grid_arr.reshape(-1)[flat_idx]
                if kind == "q":
                    q[index] = coord
                else:
                    p[index] = coord
            pts.append((q, p))
        return pts
    return [(np.zeros(n), np.zeros(n))]


def _parse_axis(axis: str, n: int) -> tuple[str, int]:
    kind = axis[:1]
    if kind not in ("q", "p") or not axis[1:].isdigit():
        raise UsageError(f"grid axis must look like q1..q{n} or p1..p{n}, got {axis!r}")
    index = int(axis[1:]) - 1
    if not 0 <= index < n:
        raise UsageError(f"grid axis {axis!r} out of range for n={n}")
    return kind, index


def _results_wigner(config: RunConfig) -> dict:
    n = _require_n(config)
    kernel = cp.build_kernel(cp.build_coupling(n), config.lam)
    wig = ga.wigner_from_kernel(kernel)
    entries = []
    for q, p in _wigner_points(config, n):
        point = ga.PhasePoint(q=q, p=p)
        entry = {
            "q": _vector(q),
            "p": _vector(p),
            "value": ga.wigner_value(wig, point),
        }
        if n in (3, 4):
            alpha = (q + 1j * p) / math.sqrt(2.0)
            closed_fn = nf.wigner3_closed if n == 3 else nf.wigner4_closed
            entry["value_closed"] = closed_fn(config.lam, alpha)
        entries.append(entry)
    results: dict = {"points": entries}
    if config.grid:
        results["grid"] = [
            {"axis": axis, "lo": lo, "hi": hi, "steps": steps}
            for axis, lo, hi, steps in config.grid
        ]
    return results


def _record_doc(rec: CheckRecord) -> dict:
    return {
        "name": rec.name,
        "paper_ref": rec.ref,
        "inputs": rec.inputs,
        "expected": rec.expected,
        "actual": rec.actual,
        "tol": rec.tol,
        "pass": rec.passed,
        "tail_mass": rec.tail_mass,
        "skipped": rec.skipped,
        "note": rec.note,
    }


def verify(config: RunConfig) -> VerifyReport:
    """Run the acceptance suite under this configuration."""
    resolve_tolerances(config.tolerances)  # validate names before the long run
    return run_verification(
        seed=config.seed if config.seed is not None else 0,
        cutoff=config.cutoff,
        tolerances=config.tolerances,
    )


def _require_n(config: RunConfig) -> int:
    if config.n is None:
        raise UsageError(f"command {config.command!r} requires --n")
    return config.n


def run(config: RunConfig) -> tuple[str, int]:
    """Execute one configuration; returns (serialized document, exit code)."""
    checks: list[dict] = []
    exit_code = EXIT_OK
    if config.command == "coupling":
        results = _results_coupling(config)
    elif config.command == "variances":
        results = _results_variances(config)
    elif config.command == "normal-form":
        results = _results_normal_form(config)
    elif config.command == "state":
        results = _results_state(config)
    elif config.command == "wigner":
        results = _results_wigner(config)
    elif config.command == "baseline":
        results = _results_baseline(config)
    elif config.command == "verify":
        report = verify(config)
        checks = [_record_doc(rec) for rec in report.checks]
        executed = [rec for rec in report.checks if not rec.skipped]
        results = {
            "overall": report.overall,
            "seed": report.seed,
            "checks_run": len(executed),
            "checks_skipped": len(report.checks) - len(executed),
        }
        if report.overall == "fail":
            exit_code = EXIT_CHECK_FAILED
        elif report.overall == "partial":
            exit_code = EXIT_RESOURCE
    else:
        raise UsageError(f"unknown command {config.command!r}")

    doc = {
        "schema": SCHEMA,
        "command": config.command,
        "config": {
            "n": config.n,
            "lambda": config.lam,
            "cutoff": config.cutoff,
            "grid": [
                {"axis": a, "lo": lo, "hi": hi, "steps": s} for a, lo, hi, s in config.grid
            ],
            "points": [{"q": q, "p": p} for q, p in config.points],
            "format": config.fmt,
            "seed": config.seed,
            "tolerance": dict(config.tolerances),
        },
        "results": results,
        "checks": checks,
    }
    text = _render_json(doc) + "\n" if config.fmt == "json" else _render_csv(doc)
    return text, exit_code


# ---------------------------------------------------------------------------
# argument parsing

def _parse_point(raw: str) -> tuple[list[float], list[float]]:
    try:
        q_part, p_part = raw.split(":")
        q_vals = [float(v) for v in q_part.split(",")]
        p_vals = [float(v) for v in p_part.split(",")]
    except ValueError as exc:
        raise UsageError(f"--point must look like q1,..,qn:p1,..,pn, got {raw!r}") from exc
    return q_vals, p_vals


def _parse_grid(raw: str) -> tuple[str, float, float, int]:
    try:
        axis, span = raw.split("=")
        lo_s, hi_s, steps_s = span.split(":")
        lo, hi, steps = float(lo_s), float(hi_s), int(steps_s)
    except ValueError as exc:
        raise UsageError(f"--grid must look like AXIS=lo:hi:steps, got {raw!r}") from exc
    if steps < 1:
        raise UsageError("grid steps must be >= 1")
    return axis, lo, hi, steps


def _parse_tolerance(raw: str) -> tuple[str, float]:
    try:
        name, value_s = raw.split("=")
        value = float(value_s)
    except ValueError as exc:
        raise UsageError(f"--tolerance must look like NAME=VALUE, got {raw!r}") from exc
    return name, value


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # exit 2 without killing the calling process
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="nmode-squeeze", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        cmd = sub.add_parser(name)
        cmd.add_argument("--n", type=int, help="mode count")
        cmd.add_argument("--lambda", dest="lam", type=float, default=0.0, help="squeezing parameter")
        cmd.add_argument("--cutoff", type=int, help="per-mode Fock cutoff")
        cmd.add_argument("--grid", action="append", default=[], metavar="AXIS=lo:hi:steps")
        cmd.add_argument("--point", action="append", default=[], metavar="q,..:p,..")
        cmd.add_argument("--format", dest="fmt", choices=("json", "csv"), default="json")
        cmd.add_argument("--out", help="output path (default stdout)")
        cmd.add_argument("--seed", type=int, help="seed for pseudo-random draws")
        cmd.add_argument("--tolerance", action="append", default=[], metavar="NAME=VAL")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    tolerances = dict(_parse_tolerance(raw) for raw in args.tolerance)
    return RunConfig(
        command=args.command,
        n=args.n,
        lam=args.lam,
        cutoff=args.cutoff,
        grid=[_parse_grid(raw) for raw in args.grid],
        points=[_parse_point(raw) for raw in args.point],
        fmt=args.fmt,
        out=args.out,
        seed=args.seed,
        tolerances=tolerances,
    )


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        config = config_from_args(args)
        text, exit_code = run(config)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ModeCountError, ParameterRangeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceLimitError as exc:
        print(f"resource error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    if config.out:
        with open(config.out, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    return exit_code


if __name__ == "__main__":
    raise SystemExit(main())
