"""Young-Fenchel machinery: v(p) = p ln psi(p), its conjugate, tail bounds,
and the exponential Orlicz function built from the conjugate."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._optimize import grid_golden_max
from .errors import DomainError
from .psi import scan_bound


def v_of(psi, p):
    """v(p) = p ln psi(p); +inf outside the support."""
    if p < 1.0:
        raise DomainError("p must lie in [1, infinity)")
    return float(p * psi.log_eval(np.array([float(p)]))[0])


@dataclass(frozen=True)
class ConjugateInfo:
    value: float
    argmax_p: float
    unbounded_at_cap: bool


def conjugate_info(psi, x, n_grid=2048):
    """sup over p in [1, min(b, P_MAX)] of p x - v(p), with provenance.

    `unbounded_at_cap` flags a sup still increasing at the scan cap (the
    conjugate is then effectively +inf for this x).
    """
    p_cap = scan_bound(psi)

    def objective(p):
        logs = psi.log_eval(p)
        with np.errstate(invalid="ignore"):
            out = p * (x - logs)
        return np.where(np.isinf(logs), -np.inf, out)

    extra = np.linspace(1.0, min(p_cap, 64.0), 256)
    p_best, f_best = grid_golden_max(
        objective, 1.0, p_cap, n=n_grid, extra=extra, refine=True, tol=1e-13
    )
    if f_best == -math.inf:
        raise DomainError("empty effective support: psi is +inf on [1, b)")
    unbounded = False
    if math.isinf(psi.b) and p_best >= p_cap * (1 - 1e-9):
        probe = float(objective(np.array([p_cap * (1 - 1e-6)]))[0])
        unbounded = f_best > probe
    return ConjugateInfo(float(f_best), float(p_best), unbounded)


def conjugate(psi, x, n_grid=2048):
    """Young-Fenchel transform v*(x) as a plain float."""
    return conjugate_info(psi, x, n_grid=n_grid).value


def tail_bound(psi, norm, y):
    """P(|zeta| > y) <= min(1, 2 exp(-v*(ln(y/norm)))), valid for y >= e norm."""
    if norm <= 0:
        raise DomainError("norm must be positive")
    if y < math.e * norm * (1 - 1e-12):
        raise DomainError("below validity threshold: tail bound needs y >= e * norm")
    return min(1.0, 2.0 * math.exp(-conjugate(psi, math.log(y / norm))))


def orlicz_N(psi, u):
    """Exponential Orlicz function: exp(v*(ln|u|)) for |u| >= e, C u^2 below.

    C is fixed by continuity at |u| = e (any positive C gives an equivalent
    Orlicz function).
    """
    a = abs(u)
    if a >= math.e:
        return math.exp(conjugate(psi, math.log(a)))
    c = math.exp(conjugate(psi, 1.0)) / (math.e**2)
    return c * u * u


def empirical_tail(samples, y):
    """max of the two one-sided empirical tail frequencies at level y."""
    x = np.asarray(samples, dtype=float)
    if x.size == 0:
        raise DomainError("empty sample")
    return float(max(np.mean(x >= y), np.mean(x <= -y)))
