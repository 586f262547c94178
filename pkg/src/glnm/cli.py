"""Command-line front end.

Exit status: 0 success, 1 invalid input, 2 solver failure.  Errors are
reported on stderr as one JSON object.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import io
from .builtins import BUILTIN_NAMES, builtin_problem
from .derivative import derivatives
from .eigensolve import solve
from .errors import GlnmError, ValidationError
from .grid import GridSpec, build_grid
from .problem import sample_fields
from .propagate import step_recurrence
from .reference import numerov_classic, rk4_integrate
from .scf import ScfConfig, scf_iterate, toy_problem
from .stencil import LocalFields, derivative_coefficients, recurrence_coefficients


def _read(path):
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc.strerror}") from None


def _emit(text, path=None):
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def _threads():
    n = int(os.environ.get("GLNM_THREADS", "0") or 0)
    return n if n > 0 else (os.cpu_count() or 1)


def cmd_coeffs(args):
    lf = LocalFields.from_dict(json.loads(_read(args.fields)))
    st = recurrence_coefficients(lf)
    out = {
        "T0": st.T0,
        "T_plus": st.T_plus,
        "T_minus": st.T_minus,
        "a": st.a,
        "b0": st.b0,
        "b_plus": st.b_plus,
        "b_minus": st.b_minus,
        "c": st.c,
    }
    try:
        ds = derivative_coefficients(lf)
        out.update(S0=ds.S0, S_plus=ds.S_plus, S_minus=ds.S_minus)
    except GlnmError:
        out.update(S0=None, S_plus=None, S_minus=None)
    _emit(io.dumps(out) + "\n", args.output)


def _solution_csv(fields, y, yp=None, log2_scale=0):
    grid = fields.grid
    ok = np.flatnonzero(np.isfinite(y))
    cols = {"node_index": ok, "x": grid.nodes[ok], "y": y[ok]}
    if yp is not None:
        cols["y_prime"] = yp[ok]
    comments = [f"log2_scale={log2_scale}"] if log2_scale else []
    return io.write_csv(cols, comments)


def cmd_propagate(args):
    spec = io.load_ivp(_read(args.problem))
    sol = step_recurrence(spec.fields, spec.y_start, direction=spec.direction)
    yp = derivatives(spec.fields, sol.y) if args.derivative else None
    _emit(_solution_csv(spec.fields, sol.y, yp, sol.log2_scale), args.output)


def cmd_derivative(args):
    spec = io.load_ivp(_read(args.problem))
    cols, comments = io.read_csv(_read(args.solution))
    n = len(spec.fields.grid)
    if len(cols["y"]) != n:
        raise ValidationError(f"solution has {len(cols['y'])} rows; derivative needs all {n} nodes")
    y = cols["y"]
    yp = derivatives(spec.fields, y)
    cols["y_prime"] = yp
    _emit(io.write_csv(cols, comments), args.output)


def cmd_eigensolve(args):
    problem, _ = io.load_eigen(_read(args.problem))
    sol = solve(problem)
    result = {
        "e": sol.e,
        "nodes": sol.nodes,
        "match_residual": sol.match_residual,
        "iterations": sol.iterations,
        "matching_x": float(problem.grid.nodes[sol.matching_index]),
    }
    _emit(io.dumps(result) + "\n", args.output)
    if args.csv:
        fields = problem.fields(sol.e)
        Path(args.csv).write_text(_solution_csv(fields, sol.y.y, sol.y.y_prime))


def _ivp_error(b, spec):
    fields = b.fields(spec)
    sol = step_recurrence(fields, b.y_start(fields.grid))
    exact = np.asarray(b.exact(fields.grid.nodes)[0])
    return float(np.max(np.abs(sol.y - exact)))


def _eigen_error(b, spec, target):
    sol = solve(b.eigen_problem(target, grid_spec=spec))
    return abs(sol.e - b.eigenvalue(target))


def convergence_table(name, levels=4, h0=None, target=0, params=None):
    """``[(h, max_error, observed_order)]`` with the step halved ``levels - 1`` times."""
    b = builtin_problem(name, **(params or {}))
    base = b.grid_spec
    if h0 is not None:
        if len(base.segments) != 1:
            raise ValidationError("--h0 applies to single-segment builtins only")
        s = base.segments[0]
        base = GridSpec.uniform(s.start, s.stop, h0)
    else:
        # start coarser than the builtin default when the grid allows it
        try:
            build_grid(base.scaled(0.25))
            base = base.scaled(0.25)
        except GlnmError:
            pass
    specs = [base.scaled(2**k) for k in range(levels)]
    if b.kind == "ivp":
        def job(sp):
            return _ivp_error(b, sp)
    else:
        if b.eigenvalue is None:
            raise ValidationError(f"{name} has no closed-form eigenvalue to converge against")

        def job(sp):
            return _eigen_error(b, sp, target)

    with ThreadPoolExecutor(max_workers=min(_threads(), levels)) as pool:
        errors = list(pool.map(job, specs))
    rows = []
    for k, (sp, err) in enumerate(zip(specs, errors)):
        order = math.log2(errors[k - 1] / err) if k and err > 0 and errors[k - 1] > 0 else math.nan
        rows.append((min(s.step for s in sp.segments), err, order))
    return rows


def cmd_convergence(args):
    rows = convergence_table(args.builtin, args.levels, args.h0, args.target_nodes)
    cols = {
        "h": [r[0] for r in rows],
        "max_error": [r[1] for r in rows],
        "observed_order": [r[2] for r in rows],
    }
    _emit(io.write_csv(cols), args.output)


def compare_table(name, steps, rk4_refine=10):
    """Max error of GLNM, classic Numerov (``g = 0`` only) and RK4 at each step."""
    b = builtin_problem(name)
    if b.exact is None:
        raise ValidationError(f"{name} has no closed-form solution to compare against")
    rows = []
    for h in steps:
        s0 = b.grid_spec.segments[0]
        stop = b.grid_spec.segments[-1].stop
        spec = GridSpec.uniform(s0.start, stop, h)
        grid = build_grid(spec)
        x = grid.nodes
        if b.kind == "ivp":
            g_fn, f_fn = b.g, b.f
        else:
            e = b.exact_energy
            p = builtin_problem(name)
            g_fn = p.g
            f_fn = lambda t, p=p, e=e: 2.0 * np.asarray(p.mass(t)) * (e - p.potential(t))  # noqa: E731
        fields = sample_fields(grid, g_fn, f_fn)
        exact = np.asarray(b.exact(x)[0], dtype=float)
        y0, y1 = float(exact[0]), float(exact[1])
        sol = step_recurrence(fields, (y0, y1))
        rows.append(("glnm", h, float(np.max(np.abs(sol.y - exact)))))
        if not np.any(fields.g):
            cl = numerov_classic(fields.f, h, (y0, y1))
            rows.append(("numerov_classic", h, float(np.max(np.abs(cl.y - exact)))))
        hr = h / rk4_refine
        yp0 = float(np.asarray(b.exact(x[0])[1]))
        rk = rk4_integrate(g_fn, f_fn, y0, yp0, float(x[0]), float(x[-1]), hr)
        rk_at_nodes = rk.y[::rk4_refine]
        rows.append((f"rk4_h/{rk4_refine}", h, float(np.max(np.abs(rk_at_nodes - exact)))))
    return rows


def cmd_compare(args):
    rows = compare_table(args.builtin, args.steps, args.rk4_refine)
    cols = {"method": [r[0] for r in rows], "h": [r[1] for r in rows], "max_error": [r[2] for r in rows]}
    out = ["method,h,max_error"] + [f"{m},{io.fmt(h)},{io.fmt(e)}" for m, h, e in zip(*cols.values())]
    _emit("\n".join(out) + "\n", args.output)


def cmd_scf_demo(args):
    problems, update = toy_problem(coupling=args.coupling, step=args.step)
    cfg = ScfConfig(
        mixing=args.mixing,
        max_iterations=args.max_iterations,
        tolerance_e=args.tol_e,
        tolerance_field=args.tol_field,
    )

    def show(state):
        h = state.history[-1]
        d_e = None if math.isnan(h["delta_e"]) else h["delta_e"]
        line = {"iter": h["iter"], "e": h["e"][0], "delta_e": d_e, "delta_field": h["delta_field"]}
        sys.stdout.write(io.dumps(line) + "\n")

    state = scf_iterate(problems, update, cfg, callback=show)
    if not state.converged:
        raise _SolverFailure(state.message)


class _SolverFailure(GlnmError):
    pass


def build_parser():
    p = argparse.ArgumentParser(prog="glnm", description="Generalized Numerov solver for y'' + g y' + f y = 0.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("coeffs", help="stencil coefficients for local fields (JSON)")
    c.add_argument("fields", help="JSON file with h, g_minus, g_zero, g_plus, f_minus, f_zero, f_plus ('-' = stdin)")
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_coeffs)

    c = sub.add_parser("propagate", help="step the recurrence over a problem's grid (CSV)")
    c.add_argument("problem")
    c.add_argument("-o", "--output")
    c.add_argument("--derivative", action="store_true", help="add a y_prime column")
    c.set_defaults(func=cmd_propagate)

    c = sub.add_parser("derivative", help="append y_prime to a propagated solution CSV")
    c.add_argument("problem")
    c.add_argument("solution")
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_derivative)

    c = sub.add_parser("eigensolve", help="shoot for an eigenvalue (JSON)")
    c.add_argument("problem")
    c.add_argument("-o", "--output")
    c.add_argument("--csv", help="also write the normalized solution here")
    c.set_defaults(func=cmd_eigensolve)

    c = sub.add_parser("convergence", help="error vs step for a builtin (CSV)")
    c.add_argument("builtin", choices=BUILTIN_NAMES)
    c.add_argument("--levels", type=int, default=4)
    c.add_argument("--h0", type=float, help="coarsest step (single-segment builtins)")
    c.add_argument("--target-nodes", type=int, default=0)
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_convergence)

    c = sub.add_parser("compare", help="GLNM vs classic Numerov vs RK4 (CSV)")
    c.add_argument("builtin", choices=BUILTIN_NAMES)
    c.add_argument("--steps", type=float, nargs="+", default=[0.04, 0.02, 0.01])
    c.add_argument("--rk4-refine", type=int, default=10)
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_compare)

    c = sub.add_parser("scf-demo", help="toy density-feedback SCF loop (JSON lines)")
    c.add_argument("--mixing", type=float, default=0.5)
    c.add_argument("--coupling", type=float, default=0.1)
    c.add_argument("--step", type=float, default=0.01)
    c.add_argument("--max-iterations", type=int, default=200)
    c.add_argument("--tol-e", type=float, default=1e-12)
    c.add_argument("--tol-field", type=float, default=1e-10)
    c.set_defaults(func=cmd_scf_demo)
    return p


def _fail(exc, code):
    sys.stderr.write(json.dumps({"error": type(exc).__name__, "message": str(exc)}) + "\n")
    return code


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except (ValidationError, json.JSONDecodeError, KeyError, TypeError) as exc:
        return _fail(exc, 1)
    except GlnmError as exc:
        return _fail(exc, 2)
    return 0


if __name__ == "__main__":
    sys.exit(main())
