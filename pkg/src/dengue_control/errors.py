"""Exception types shared across the package.

The CLI maps these onto exit codes: scenario/config problems -> 2,
numerical failures -> 3, model-regime errors (collapsed mosquito
population, missing equilibria) -> 4.
"""

from __future__ import annotations


class ScenarioError(ValueError):
    """Malformed or inadmissible scenario input (carries line context)."""


class NumericalFailure(RuntimeError):
    """A numerical procedure failed to converge or broke down.

    ``time`` is set by the integrator (day of breakdown); ``residual`` by
    the equilibrium refiner (last residual before giving up).
    """

    def __init__(self, message: str, *, time: float | None = None,
                 residual: float | None = None):
        super().__init__(message)
        self.time = time
        self.residual = residual


class MosquitoCollapseError(RuntimeError):
    """The vector population is not sustainable (viability margin <= 0), so
    there is no mosquito-bearing disease-free equilibrium to work with."""


class NoEndemicEquilibrium(RuntimeError):
    """The endemic-equilibrium hypotheses (viability margin > 0 and
    reproduction number > 1) do not hold."""
