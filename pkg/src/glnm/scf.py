"""Self-consistent field loop with linear mixing.

Each pass solves every state with the current (frozen) fields, builds
candidate fields from the solutions with a user map, and mixes:
``new = old + alpha * (candidate - old)``.  ``alpha = 0.5`` averages two
successive iterations.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .eigensolve import EigenProblem, EigenSolution, solve
from .errors import EigenError, ScfError, ValidationError

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class ScfConfig:
    mixing: float = 0.5
    max_iterations: int = 100
    tolerance_e: float = 1e-10
    tolerance_field: float = 1e-8

    def __post_init__(self):
        if not 0.0 < self.mixing <= 1.0:
            raise ValidationError(f"mixing must be in (0, 1], got {self.mixing!r}")
        if not (self.tolerance_e > 0 and self.tolerance_field > 0):
            raise ValidationError("tolerances must be positive")
        if self.max_iterations < 1:
            raise ValidationError("max_iterations must be >= 1")


@dataclass(frozen=True, eq=False)
class ScfFields:
    """Mass, its derivative (shared by all states) and one potential per state."""

    m: np.ndarray
    m_prime: np.ndarray
    V: tuple

    def arrays(self):
        return (self.m, self.m_prime, *self.V)

    def max_change(self, other: "ScfFields") -> float:
        return max(float(np.max(np.abs(a - b))) for a, b in zip(self.arrays(), other.arrays()))

    def mixed(self, candidate: "ScfFields", alpha: float) -> "ScfFields":
        if alpha == 1.0:
            return candidate

        def mix(old, new):
            return old + alpha * (new - old)

        return ScfFields(
            mix(self.m, candidate.m),
            mix(self.m_prime, candidate.m_prime),
            tuple(mix(a, b) for a, b in zip(self.V, candidate.V)),
        )


@dataclass
class ScfState:
    solutions: list[EigenSolution]
    fields: ScfFields
    iteration: int
    history: list[dict] = field(default_factory=list)
    converged: bool = False
    message: str = ""

    @property
    def energies(self):
        return [s.e for s in self.solutions]


def _window(template: EigenProblem, e_prev, width):
    return (e_prev - 0.5 * width, e_prev + 0.5 * width)


def scf_iterate(
    problems: Sequence[EigenProblem],
    update: Callable[[ScfState], ScfFields],
    config: ScfConfig = ScfConfig(),
    fields: ScfFields | None = None,
    callback: Callable[[ScfState], None] | None = None,
) -> ScfState:
    """Iterate to self-consistency.

    ``fields`` defaults to the mass and potentials stored in ``problems``.
    On convergence the returned state holds the fields that produced its
    solutions.  If ``max_iterations`` runs out the last state is returned
    with ``converged=False``.
    """
    if not problems:
        raise ValidationError("need at least one problem")
    if fields is None:
        fields = ScfFields(problems[0].m, problems[0].m_prime, tuple(p.V for p in problems))
    if len(fields.V) != len(problems):
        raise ValidationError(f"{len(fields.V)} potentials for {len(problems)} problems")
    widths = [p.energy_window[1] - p.energy_window[0] for p in problems]
    prev_e = None
    history = []
    state = None
    for it in range(1, config.max_iterations + 1):
        solutions = []
        for lam, p in enumerate(problems):
            base = p.with_fields(m=fields.m, m_prime=fields.m_prime, V=fields.V[lam])
            sol = None
            if prev_e is not None:
                widths[lam] = max(0.5 * widths[lam], 100.0 * config.tolerance_e)
                try:
                    sol = solve(base.with_fields(energy_window=_window(p, prev_e[lam], widths[lam])))
                except EigenError:
                    log.debug("warm window missed state %d at iteration %d; using full window", lam, it)
            if sol is None:
                try:
                    sol = solve(base)
                except EigenError as exc:
                    raise ScfError(f"state {lam} failed at iteration {it}: {exc}", state) from exc
            solutions.append(sol)
        energies = [s.e for s in solutions]
        state = ScfState(solutions=solutions, fields=fields, iteration=it, history=history)
        candidate = update(state)
        d_field = candidate.max_change(fields)
        d_e = math.nan if prev_e is None else max(abs(a - b) for a, b in zip(energies, prev_e))
        history.append({"iter": it, "e": energies, "delta_e": d_e, "delta_field": d_field})
        if callback is not None:
            callback(state)
        # first pass: fields reproducing themselves already are self-consistent
        if d_field < config.tolerance_field and (prev_e is None or d_e < config.tolerance_e):
            state.converged = True
            return state
        fields = fields.mixed(candidate, config.mixing)
        prev_e = energies
    state.message = f"not converged after {config.max_iterations} iterations"
    return state


def toy_problem(coupling=0.1, x_max=8.0, step=0.01):
    """One state in ``V = x^2/2 + coupling * y(x)^2`` with unit mass.

    Returns ``(problems, update)`` ready for :func:`scf_iterate`.  The state
    vanishes at the origin and is normalized with unit weight.
    """
    from .builtins import builtin_problem

    b = builtin_problem("effective_mass_gauss", beta=0.0, x_max=x_max, step=step)
    p = b.eigen_problem(0, energy_window=(0.5, 4.0))
    x = p.grid.nodes
    base_V = 0.5 * x * x

    def update(state: ScfState) -> ScfFields:
        y = state.solutions[0].y.y
        return ScfFields(state.fields.m, state.fields.m_prime, (base_V + coupling * y * y,))

    return [p], update
