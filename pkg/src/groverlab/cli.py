"""Command-line front end: every command writes one CSV or JSON table.

Exit codes: 0 success (or majorization holds), 1 majorization violated
(``verify`` only), 2 usage error or degenerate kernel.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys
from typing import Any, Iterable, Optional, Sequence

from . import asym
from .errors import DegenerateSpectrum, DivergentSteps, GroverLabError
from .evolve import argmax_steps, iterate_trajectory, plan_steps, spectral_trajectory
from .kernel import GGAParams, decompose
from .major import lorenz_series, step_by_step_check

EXIT_OK, EXIT_VIOLATED, EXIT_ERROR = 0, 1, 2
DEFAULT_NONEFFICIENT_STEPS = 30

_PI_RE = re.compile(
    r"^(?P<sign>[+-]?)(?P<num>\d+(?:\.\d*)?|\.\d+)?\s*\*?\s*pi(?:\s*/\s*(?P<den>\d+(?:\.\d*)?))?$"
)
_RANGE_RE = re.compile(r"^(\d+)\.\.(\d+)$")


class UsageError(GroverLabError):
    pass


def parse_angle(text: str) -> float:
    """Parse radians given as a decimal literal or a multiple of pi (``5pi/6``, ``-pi/2``)."""
    token = text.strip().lower()
    match = _PI_RE.match(token)
    if match:
        value = math.pi * float(match["num"] or 1)
        if match["den"]:
            value /= float(match["den"])
        return -value if match["sign"] == "-" else value
    try:
        value = float(token)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an angle: {text!r}") from None
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"angle must be finite: {text!r}")
    return value


def parse_dims(text: str) -> list[int]:
    """``1000``, ``50,100,150`` or an inclusive range ``50..500``."""
    text = text.strip()
    match = _RANGE_RE.match(text)
    try:
        if match:
            return [int(match[1]), int(match[2])]
        return [int(part) for part in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a dimension: {text!r}") from None


# -- output -----------------------------------------------------------------

def _fmt(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        if math.isnan(value):
            return ""
        return f"{value:.17g}"
    return str(value)


def _jsonable(value: Any) -> Any:
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


def render(rows: Sequence[dict], fmt: str, single: bool = False) -> str:
    """Render records; ``single`` emits one record as key,value pairs (CSV) or an object (JSON)."""
    if fmt == "json":
        if single:
            payload: Any = {k: _jsonable(v) for k, v in rows[0].items()}
        else:
            payload = [{k: _jsonable(v) for k, v in row.items()} for row in rows]
        return json.dumps(payload, indent=2) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if single:
        writer.writerow(["key", "value"])
        for key, value in rows[0].items():
            writer.writerow([key, _fmt(value)])
    else:
        writer.writerow(list(rows[0].keys()))
        for row in rows:
            writer.writerow([_fmt(v) for v in row.values()])
    return buf.getvalue()


def _emit(text: str, output: Optional[str]) -> None:
    if output in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


# -- commands ---------------------------------------------------------------

def _single_n(args) -> int:
    if len(args.n) != 1:
        raise UsageError(f"{args.command} takes a single --n value")
    return args.n[0]


def _params(args) -> GGAParams:
    return GGAParams.with_offset(_single_n(args), args.t, args.g_offset)


def _default_steps(params: GGAParams) -> int:
    """``M`` for efficient runs, otherwise a fixed 30-step window."""
    if params.is_efficient:
        try:
            return plan_steps(params).M
        except DegenerateSpectrum:
            pass
    return DEFAULT_NONEFFICIENT_STEPS


def cmd_spectrum(args) -> tuple[list[dict], bool]:
    params = _params(args)
    _, spectral, decomp = decompose(params)
    record = {
        "omega1": spectral.omega1,
        "omega2": spectral.omega2,
        "delta_omega": spectral.delta_omega,
        "abs_a1": abs(decomp.a1),
        "abs_a2": abs(decomp.a2),
        "delta_a": decomp.delta_a,
        "sum_abs": decomp.sum_abs,
        "is_efficient": params.is_efficient,
    }
    return [record], True


def cmd_sweep(args) -> tuple[list[dict], bool]:
    if args.grid_points < 2:
        raise UsageError("--grid-points must be >= 2")
    N = _single_n(args)
    rows = []
    for i in range(args.grid_points):
        t = 2 * math.pi * i / args.grid_points
        row = {"t": t, "delta_omega": None, "delta_a": None, "abs_a1": None, "abs_a2": None}
        try:
            _, spectral, decomp = decompose(GGAParams.with_offset(N, t, args.g_offset))
        except DegenerateSpectrum:
            row["degenerate"] = True
        else:
            row.update(
                delta_omega=spectral.delta_omega,
                delta_a=decomp.delta_a,
                abs_a1=abs(decomp.a1),
                abs_a2=abs(decomp.a2),
                degenerate=False,
            )
        rows.append(row)
    return rows, False


def _trajectory_for(args):
    params = _params(args)
    m_max = _default_steps(params) if args.m_max is None else args.m_max
    if m_max < 0:
        raise UsageError("--m-max must be >= 0")
    return spectral_trajectory(params, m_max)


def cmd_trajectory(args) -> tuple[list[dict], bool]:
    traj = _trajectory_for(args)
    rows = [{"m": m, "p_x0": d.p0, "p_perp_each": d.q} for m, d in traj]
    return rows, False


def cmd_lorenz(args) -> tuple[list[dict], bool]:
    if args.stride < 1:
        raise UsageError("--stride must be >= 1")
    traj = _trajectory_for(args)
    rows = []
    for curve in lorenz_series(traj, args.stride):
        rows.extend(
            {"m": curve.m, "k": k, "cumulant": float(c)}
            for k, c in enumerate(curve.cumulants, start=1)
        )
    return rows, False


def cmd_steps(args) -> tuple[list[dict], bool]:
    params = _params(args)
    plan = plan_steps(params)
    m_argmax, _ = argmax_steps(params)
    try:
        m_approx: Optional[int] = asym.approx_steps(params.t, params.N)
    except DivergentSteps:
        m_approx = None
    record = {"M_exact": plan.M, "M_argmax": m_argmax, "M_approx": m_approx, "p_at_M": plan.p_at_M}
    return [record], True


def cmd_verify(args) -> tuple[list[dict], bool, int]:
    params = _params(args)
    if params.is_efficient:
        target = _default_steps(params)
        m_end = target if args.m_max is None else min(args.m_max, target)
    else:
        m_end = DEFAULT_NONEFFICIENT_STEPS if args.m_max is None else args.m_max
    if m_end < 0:
        raise UsageError("--m-max must be >= 0")
    report = step_by_step_check(iterate_trajectory(params, m_end), m_end)
    record = {
        "holds_overall": report.holds_overall,
        "first_violation": report.first_violation,
        "m_end": m_end,
        "is_efficient": params.is_efficient,
    }
    return [record], True, EXIT_OK if report.holds_overall else EXIT_VIOLATED


def _dims_for_sweep(args) -> list[int]:
    raw = args.n_raw
    if _RANGE_RE.match(raw.strip()):
        lo, hi = args.n
        if args.n_step is None or args.n_step < 1:
            raise UsageError("a range --n LO..HI needs --n-step >= 1")
        return list(range(lo, hi + 1, args.n_step))
    return args.n


def cmd_approx_error(args) -> tuple[list[dict], bool]:
    dims = _dims_for_sweep(args)
    grid = asym.guarded_grid(args.grid_points)
    rows = []
    for N in dims:
        for rep in asym.approximation_error_sweep(N, grid):
            row = {} if len(dims) == 1 else {"n": N}
            row.update(
                t=rep.t,
                exact_dw=rep.exact_dw,
                approx_dw=rep.approx_dw,
                abs_err=rep.abs_err,
                rel_err_percent=rep.rel_err_percent,
            )
            rows.append(row)
    return rows, False


def cmd_exact_t(args) -> tuple[list[dict], bool]:
    if args.target_m is None or args.target_m < 1:
        raise UsageError("--target-m must be a positive integer")
    sol = asym.find_exact_alignment(_single_n(args), args.target_m, tuple(args.bracket))
    return [{"t_star": sol.t, "M": sol.M, "ratio": sol.ratio, "p_success": sol.p_success}], False


COMMANDS = {
    "spectrum": cmd_spectrum,
    "sweep": cmd_sweep,
    "trajectory": cmd_trajectory,
    "lorenz": cmd_lorenz,
    "steps": cmd_steps,
    "verify": cmd_verify,
    "approx-error": cmd_approx_error,
    "exact-t": cmd_exact_t,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", dest="n_raw", required=True,
                        help="dimension N (approx-error also takes 50,100 or 50..500)")
    common.add_argument("--t", type=parse_angle, default=0.0,
                        help="phase of beta in radians; accepts pi, pi/2, 5pi/6, ...")
    common.add_argument("--g-offset", type=parse_angle, default=0.0,
                        help="g - t in radians (0 gives the efficient family)")
    common.add_argument("--grid-points", type=int, default=64)
    common.add_argument("--m-max", type=int, default=None)
    common.add_argument("--stride", type=int, default=1)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--output", default=None, help="file path (default: stdout)")

    parser = argparse.ArgumentParser(
        prog="groverlab",
        description="Generalized Grover kernels, trajectories and majorization checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        if name == "approx-error":
            p.add_argument("--n-step", type=int, default=None, help="step for an --n LO..HI range")
        if name == "exact-t":
            p.add_argument("--target-m", type=int, default=None)
            p.add_argument("--bracket", type=parse_angle, nargs=2, metavar=("LO", "HI"),
                           default=[0.0, math.pi - 1e-3])
    return parser


def main(argv: Optional[Iterable[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(None if argv is None else list(argv))
    try:
        args.n = parse_dims(args.n_raw)
    except argparse.ArgumentTypeError as exc:
        parser.error(str(exc))
    if any(n < 2 for n in args.n):
        parser.error("--n must be >= 2")

    try:
        result = COMMANDS[args.command](args)
    except DegenerateSpectrum as exc:
        print(
            f"groverlab: degenerate spectrum ({exc}); beta = delta = -1 makes the kernel "
            "the identity, so there is no rotation to plan",
            file=sys.stderr,
        )
        return EXIT_ERROR
    except (GroverLabError, ValueError) as exc:
        print(f"groverlab: {exc}", file=sys.stderr)
        return EXIT_ERROR

    rows, single = result[0], result[1]
    code = result[2] if len(result) > 2 else EXIT_OK
    _emit(render(rows, args.format, single=single), args.output)
    return code


if __name__ == "__main__":
    sys.exit(main())
