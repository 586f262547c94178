"""Shooting eigensolver: outward and inward ratio sweeps matched at one node.

At the matching node ``m`` the outward sweep gives ``y_m / y_{m+1}`` and
the inward sweep ``y_{m+1} / y_m``; an eigenvalue makes their product one.
The residual ``D(e) = (y_m/y_{m+1})_out * (y_{m+1}/y_m)_in - 1`` has poles
between eigenvalues, so roots are first bracketed by node counting
(Sturm ordering) and only then polished.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .derivative import derivatives
from .errors import EigenError, ValidationError
from .grid import Grid
from .problem import BoundaryModel, FieldSamples, energy_to_f, mass_to_g
from .propagate import RatioSweep, SolutionSamples, reconstruct, sweep_inward, sweep_outward
from .quadrature import exponential_tail, simpson, weight_values
from .stencil import StencilTable

MAX_MATCH_SHIFTS = 5
E_TOL = 1e-12
D_TOL = 1e-11
STAGNATION_D = 1e-8
MAX_EVALS = 400


@dataclass(frozen=True, eq=False)
class EigenProblem:
    """Radial problem ``z'' + (g_extra - m'/m) z' + 2m(e - V) z = 0`` on ``grid``.

    ``weight`` is the normalization weight: an integer power of ``x`` or a
    callable.  ``g_extra`` carries first-derivative terms not produced by
    the mass, such as ``2/x`` when solving for ``R`` instead of ``rR``.
    """

    grid: Grid
    m: np.ndarray
    m_prime: np.ndarray
    V: np.ndarray
    boundary: BoundaryModel = field(default_factory=BoundaryModel)
    target_nodes: int = 0
    energy_window: tuple = (-1.0, 1.0)
    weight: object = 0
    g_extra: np.ndarray | None = None

    def __post_init__(self):
        if not self.target_nodes >= 0:
            raise ValidationError("target_nodes must be >= 0")
        lo, hi = self.energy_window
        if not lo < hi:
            raise ValidationError(f"energy window must satisfy lo < hi, got {self.energy_window}")
        n = len(self.grid)
        for name in ("m", "m_prime", "V"):
            arr = np.asarray(getattr(self, name), dtype=float)
            if arr.shape != (n,):
                raise ValidationError(f"{name} has shape {arr.shape}, grid has {n} nodes")
            object.__setattr__(self, name, arr)
        if np.any(self.m <= 0):
            raise ValidationError("mass must be positive")
        if self.g_extra is not None:
            object.__setattr__(self, "g_extra", np.asarray(self.g_extra, dtype=float))

    @property
    def g(self):
        return mass_to_g(self.m, self.m_prime, self.g_extra)

    def fields(self, e):
        return FieldSamples(self.grid, self.g, energy_to_f(self.m, self.V, e))

    def with_fields(self, m=None, m_prime=None, V=None, energy_window=None):
        return EigenProblem(
            self.grid,
            self.m if m is None else m,
            self.m_prime if m_prime is None else m_prime,
            self.V if V is None else V,
            self.boundary,
            self.target_nodes,
            self.energy_window if energy_window is None else energy_window,
            self.weight,
            self.g_extra,
        )


@dataclass(frozen=True, eq=False)
class EigenSolution:
    e: float
    y: SolutionSamples
    nodes: int
    match_residual: float
    iterations: int
    matching_index: int
    match_continuity: float

    @property
    def y_prime(self):
        return self.y.y_prime


def _valid_match(grid: Grid, m: int) -> int:
    n = len(grid)
    m = min(max(m, 2), n - 4)
    # both stencils at m and m+1 must be ordinary nodes
    while m > 2 and (grid.junction[m] or grid.junction[m + 1] or grid.junction[m + 2]):
        m -= 1
    return m


def choose_matching_point(fields: FieldSamples) -> int:
    """Outermost classical turning point: largest ``i`` with ``f[i] >= 0 > f[i+1]``.

    Falls back to the grid midpoint when ``f < 0`` everywhere and to 3/4 of
    the grid when there is no outward turning point otherwise.
    """
    f = fields.f
    n = len(f)
    if n < 5:
        raise ValidationError("matching needs a grid of at least 5 nodes")
    turn = np.flatnonzero((f[:-1] >= 0) & (f[1:] < 0))
    if turn.size:
        m = int(turn[-1])
    elif np.all(f < 0):
        m = (n - 1) // 2
    else:
        m = (3 * (n - 1)) // 4
    return _valid_match(fields.grid, m)


class _Shooter:
    """Evaluates sweeps for one problem at many trial energies."""

    def __init__(self, problem: EigenProblem):
        self.p = problem
        self.grid = problem.grid
        self.g = problem.g
        self.table = StencilTable(self.grid, self.g)
        self.seed_out = problem.boundary.origin_ratio(self.grid)
        self.evals = 0

    def fields(self, e):
        return FieldSamples(self.grid, self.g, energy_to_f(self.p.m, self.p.V, e))

    def sweeps(self, e, m):
        fs = self.fields(e)
        w = self.table.weights(fs.f)
        out = sweep_outward(fs, self.seed_out, m + 1, weights=w)
        inn = sweep_inward(fs, self.p.boundary.tail_ratio(fs), m, weights=w)
        self.evals += 1
        return fs, out, inn

    def evaluate(self, e, m=None):
        """``(D, nodes, m)``; with ``m=None`` the matching node follows ``e``."""
        if m is None:
            m = choose_matching_point(self.fields(e))
        for _ in range(MAX_MATCH_SHIFTS + 1):
            _, out, inn = self.sweeps(e, m)
            if not (out.pole_flags[m] or inn.pole_flags[m + 1]):
                break
            m = _valid_match(self.grid, m - 1)
        else:
            raise EigenError(f"ratio pole at the matching point persists after {MAX_MATCH_SHIFTS} shifts (e={e!r})")
        return _residual(out, inn, m), _node_count(out, inn, m), m


def _residual(out: RatioSweep, inn: RatioSweep, m):
    return float(out.ratios[m] * inn.ratios[m + 1] - 1.0)


def _node_count(out: RatioSweep, inn: RatioSweep, m):
    return out.count_negative(0, m) + inn.count_negative(m + 1, len(inn.ratios) - 1)


def mismatch(problem: EigenProblem, e: float, matching_index: int | None = None):
    """Matching residual ``D(e)`` and node count at trial energy ``e``.

    Returns ``(D, nodes)``.  The matching node is chosen from ``f`` at ``e``
    unless given.
    """
    lo, hi = problem.energy_window
    if not lo <= e <= hi:
        raise ValidationError(f"trial energy {e!r} outside window {problem.energy_window}")
    D, nodes, _ = _Shooter(problem).evaluate(e, matching_index)
    return D, nodes


def normalization_integral(grid: Grid, y, weight, tail_kappa=0.0, stride=1):
    """``integral w y^2 dx`` by segment-wise Simpson plus the exponential tail past the grid."""
    y = np.asarray(y, dtype=float)
    x = grid.nodes
    body = simpson(grid, weight_values(x, weight) * y * y, stride=stride)
    return body + exponential_tail(float(x[-1]), float(y[-1]), tail_kappa, weight)


def _first_extremum_sign(y):
    a = np.abs(y)
    for i in range(len(y) - 1):
        if a[i] >= a[i + 1] and a[i] > 0:
            return 1.0 if y[i] > 0 else -1.0
    return 1.0 if y[-1] >= 0 else -1.0


def solve(problem: EigenProblem) -> EigenSolution:
    """Eigenvalue with ``problem.target_nodes`` nodes, normalized solution and derivative."""
    sh = _Shooter(problem)
    target = problem.target_nodes
    w_lo, w_hi = problem.energy_window

    # 1. node-count bisection to a point of the right plateau
    lo, hi = w_lo, w_hi
    _, n_lo, _ = sh.evaluate(lo)
    _, n_hi, _ = sh.evaluate(hi)
    if n_lo > target or n_hi < target:
        raise EigenError(
            f"energy window {problem.energy_window} holds node counts {n_lo}..{n_hi}; target {target} not inside"
        )
    if n_lo == target:
        e_star = lo
    elif n_hi == target:
        e_star = hi
    else:
        e_star = None
    while e_star is None:
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi or sh.evals > MAX_EVALS:
            raise EigenError(f"window exhausted without finding {target} nodes")
        _, n_mid, _ = sh.evaluate(mid)
        if n_mid < target:
            lo = mid
        elif n_mid > target:
            hi = mid
        else:
            e_star = mid

    # 2. freeze the matching node; bracket with the combined predicate
    m = choose_matching_point(sh.fields(e_star))
    cache = {}

    def ev(e):
        nonlocal m
        if e not in cache:
            D, nodes, m_used = sh.evaluate(e, m)
            if m_used != m:
                m = m_used
                cache.clear()
            cache[e] = (D, nodes)
        return cache[e]

    def below(e):
        D, nodes = ev(e)
        return nodes < target or (nodes == target and D < 0)

    A, B = lo, hi
    if not below(A):
        A = w_lo
        if not below(A):
            raise EigenError("no energy below the target state inside the window")
    if below(B):
        B = w_hi
        if below(B):
            raise EigenError("no energy above the target state inside the window")

    def in_plateau(e):
        return ev(e)[1] == target

    while not (in_plateau(A) and in_plateau(B)):
        mid = 0.5 * (A + B)
        if not A < mid < B or sh.evals > MAX_EVALS:
            raise EigenError("bracket collapsed before reaching the target plateau")
        if below(mid):
            A = mid
        else:
            B = mid

    # 3. polish with Illinois regula falsi, bisection as safeguard
    DA, DB = ev(A)[0], ev(B)[0]
    best = A if abs(DA) < abs(DB) else B
    side = 0
    while True:
        e_tol = E_TOL * max(1.0, abs(best))
        if B - A <= e_tol or ev(best)[0] == 0.0:
            break
        # |D| alone says little when dD/de is small; require the predicted step to be tiny too
        if DB != DA and abs(ev(best)[0]) <= D_TOL and abs(ev(best)[0] * (B - A) / (DB - DA)) <= e_tol:
            break
        if sh.evals > MAX_EVALS:
            raise EigenError(f"eigenvalue polishing did not converge (bracket [{A!r}, {B!r}])")
        e_new = B - DB * (B - A) / (DB - DA) if DB != DA else 0.5 * (A + B)
        if not (A < e_new < B) or not math.isfinite(e_new):
            e_new = 0.5 * (A + B)
        if e_new in (A, B):
            break
        D_new, n_new = ev(e_new)
        if n_new != target:
            # pole or plateau edge inside the bracket: fall back to bisection
            if below(e_new):
                A = e_new
            else:
                B = e_new
            DA, DB = ev(A)[0], ev(B)[0]
            side = 0
            continue
        if abs(D_new) < abs(ev(best)[0]):
            best = e_new
        if D_new < 0:
            A, DA = e_new, D_new
            if side == -1:
                DB *= 0.5
            side = -1
        else:
            B, DB = e_new, D_new
            if side == 1:
                DA *= 0.5
            side = 1

    e = best
    D, nodes = ev(e)
    if abs(D) > STAGNATION_D:
        raise EigenError(f"residual stagnates at |D| = {abs(D):.3g} (grid too coarse near the matching point?)")
    return _assemble(problem, sh, e, m, nodes)


def _assemble(problem, sh, e, m, nodes):
    fs, out, inn = sh.sweeps(e, m)
    y_out = reconstruct(out, m, 1.0).y
    y_in = reconstruct(inn, m, 1.0).y
    y = np.empty(len(problem.grid))
    y[: m + 1] = y_out[: m + 1]
    y[m + 1 :] = y_in[m + 1 :]
    continuity = max(
        abs(y_out[k] - y_in[k]) / max(abs(y_out[k]), abs(y_in[k])) for k in (m - 1, m + 1) if y_out[k] or y_in[k]
    )
    kappa = problem.boundary.tail_kappa(fs)
    norm = normalization_integral(problem.grid, y, problem.weight, kappa)
    y = y / math.sqrt(norm)
    y = y * _first_extremum_sign(y)
    yp = derivatives(fs, y, table=sh.table)
    return EigenSolution(
        e=float(e),
        y=SolutionSamples(y=y, y_prime=yp, norm=norm, x=problem.grid.nodes),
        nodes=int(nodes),
        match_residual=abs(_residual(out, inn, m)),
        iterations=sh.evals,
        matching_index=m,
        match_continuity=float(continuity),
    )
