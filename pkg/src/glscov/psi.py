"""Generating functions for Grand Lebesgue Spaces and the norms they induce.

A generating function psi lives on [1, b) for a support bound b in (1, inf];
beyond a finite b it is extended by +inf.  All evaluation happens in log
space, vectorized over numpy arrays, so products and suprema never overflow.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from scipy.special import logsumexp

from .errors import DomainError

#: numeric stand-in for p -> infinity when the support is unbounded
P_MAX = 1.0e6

#: positivity floor for tabulated generating functions
PSI_FLOOR = 1e-300
_LOG_FLOOR = math.log(PSI_FLOOR)


def conjugate_exponent(p):
    """p -> p/(p-1), with 1 -> inf and inf -> 1 (vectorized)."""
    p = np.asarray(p, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = p / (p - 1.0)
    out = np.where(p == 1.0, np.inf, out)
    out = np.where(np.isinf(p), 1.0, out)
    return out


@dataclass(frozen=True, eq=False)
class PsiFunction:
    """A generating function: immutable, pure, safe to share across threads.

    kind is one of power / finite_support / extremal / tabulated / empirical
    / product / dual.  `b` is the support bound (math.inf when unbounded);
    `closed_at_b` tells whether psi is finite at p = b itself (extremal and
    tabulated kinds are).
    """

    kind: str
    b: float
    closed_at_b: bool = False
    params: dict = field(default_factory=dict)
    left: "PsiFunction | None" = None
    right: "PsiFunction | None" = None

    @cached_property
    def _table(self):
        pts = sorted(self.params["points"])
        ps = np.array([p for p, _ in pts], dtype=float)
        vals = np.array([v for _, v in pts], dtype=float)
        # interpolate linearly in (1/p, log psi); ascending in u = 1/p
        return 1.0 / ps[::-1], np.log(np.maximum(vals[::-1], PSI_FLOOR))

    def log_eval(self, p):
        """ln psi(p) for p >= 1 (scalar or ndarray); +inf outside support."""
        p = np.asarray(p, dtype=float)
        if np.any(p < 1.0):
            raise DomainError("generating functions are defined for p >= 1 only")
        k = self.kind
        if k == "power":
            return np.log(p) / self.params["m"]
        if k == "finite_support":
            b, beta = self.params["b"], self.params["beta"]
            out = np.full(p.shape, np.inf)
            inside = p < b
            out[inside] = -beta * np.log(b - p[inside])
            return out
        if k == "extremal":
            return np.where(p <= self.params["r"], 0.0, np.inf)
        if k in ("tabulated", "empirical"):
            us, logs = self._table
            out = np.full(p.shape, np.inf)
            inside = p <= self.b
            with np.errstate(divide="ignore"):
                u = 1.0 / p[inside]
            # np.interp clamps at both ends: flat extension on [1, p_min)
            out[inside] = np.interp(u, us, logs)
            return out
        if k == "product":
            return self.left.log_eval(p) + self.right.log_eval(conjugate_exponent(p))
        if k == "dual":
            return self.left.log_eval(conjugate_exponent(p))
        raise ValueError(f"unknown generating-function kind {k!r}")

    def __call__(self, p):
        return eval_psi(self, p)


def power(m):
    """psi(p) = p^(1/m) on [1, inf)."""
    if m <= 0:
        raise DomainError("power family requires m > 0")
    return PsiFunction("power", math.inf, params={"m": float(m)})


def finite_support(b, beta):
    """psi(p) = (b - p)^(-beta) on [1, b), +inf beyond."""
    if b <= 1:
        raise DomainError("finite-support family requires b > 1")
    if beta < 0:
        raise DomainError("finite-support family requires beta >= 0")
    return PsiFunction(
        "finite_support", float(b), params={"b": float(b), "beta": float(beta)}
    )


def extremal(r):
    """psi identically 1 on [1, r], +inf beyond: the plain L_r space."""
    if r <= 1:
        raise DomainError("extremal family requires r > 1")
    return PsiFunction("extremal", float(r), closed_at_b=True, params={"r": float(r)})


def tabulated(points, kind="tabulated"):
    """Piecewise function through (p, psi(p)) knots, linear in (1/p, log psi)."""
    pts = sorted((float(p), float(v)) for p, v in points)
    if not pts:
        raise DomainError("tabulated generating function needs at least one knot")
    if any(p < 1.0 for p, _ in pts):
        raise DomainError("tabulated knots require p >= 1")
    if any(v <= 0 or not math.isfinite(v) for _, v in pts):
        raise DomainError("tabulated knot values must be positive and finite")
    return PsiFunction(kind, pts[-1][0], closed_at_b=True, params={"points": tuple(pts)})


def eval_psi(psi, p):
    """psi(p) as a float; +inf exactly when p is outside the support."""
    if p < 1.0:
        raise DomainError("p must lie in [1, infinity)")
    return float(np.exp(psi.log_eval(np.array([float(p)]))[0]))


def dual_psi(psi):
    """The dual generating function p -> psi(p/(p-1)); needs unbounded support.

    For a finite support bound the dual space collapses to the essentially
    bounded variables and has no generating-function representation.
    """
    if math.isfinite(psi.b):
        raise DomainError(
            "dual of a finite-support generating function degenerates to the "
            "essentially-bounded space and is not representable"
        )
    return PsiFunction("dual", math.inf, left=psi)


def product_zeta(psi, nu):
    """p -> psi(p) * nu(p/(p-1)); +inf wherever either factor is."""
    return PsiFunction("product", psi.b, closed_at_b=psi.closed_at_b, left=psi, right=nu)


def scan_bound(psi):
    """Largest p worth scanning: min(b, P_MAX)."""
    return min(psi.b, P_MAX)


# ---------------------------------------------------------------------------
# moment tables and natural functions


@dataclass(frozen=True, eq=False)
class MomentTable:
    """Finite list of (p, |zeta|_p) values with strictly increasing p.

    Values must be non-decreasing in p (Lyapunov monotonicity on a
    probability space), up to 1e-12 slack.
    """

    entries: tuple
    provenance: str = "analytic"

    def __post_init__(self):
        ents = tuple((float(p), float(v)) for p, v in self.entries)
        object.__setattr__(self, "entries", ents)
        if not ents:
            raise DomainError("moment table must be non-empty")
        ps = [p for p, _ in ents]
        vs = [v for _, v in ents]
        if any(p < 1.0 for p in ps):
            raise DomainError("moment table requires p >= 1")
        if any(b <= a for a, b in zip(ps, ps[1:])):
            raise DomainError("moment table p values must be strictly increasing")
        if any(v < 0 for v in vs):
            raise DomainError("moment table values must be non-negative")
        if any(b < a - 1e-12 for a, b in zip(vs, vs[1:])):
            raise DomainError("moment table violates L_p monotonicity")


def lp_norm_of_samples(samples, p):
    """(mean |x|^p)^(1/p), computed in log space so large p cannot overflow."""
    x = np.abs(np.asarray(samples, dtype=float))
    if x.size == 0:
        raise DomainError("empty sample")
    if p < 1.0:
        raise DomainError("p must lie in [1, infinity)")
    if math.isinf(p):
        return float(x.max())
    nz = x[x > 0]
    if nz.size == 0:
        return 0.0
    lse = logsumexp(p * np.log(nz)) - math.log(x.size)
    return float(math.exp(lse / p))


def moments_from_samples(samples, p_grid, seed=None):
    """Empirical MomentTable of a sample at the given p grid."""
    x = np.asarray(samples, dtype=float)
    entries = [(p, lp_norm_of_samples(x, p)) for p in sorted(p_grid)]
    tag = f"sample({x.size},{seed})" if seed is not None else f"sample({x.size})"
    return MomentTable(tuple(entries), provenance=tag)


def natural_from_moments(table):
    """Generating function interpolating a moment table.

    Requires a finite positive value at some p > 1; knots are clamped below
    by the positivity floor and the support bound is the largest tabulated p.
    """
    ok = any(p > 1.0 and 0.0 < v < math.inf for p, v in table.entries)
    if not ok:
        raise DomainError("natural function trivial: no finite moment at any p > 1")
    pts = [(p, max(v, PSI_FLOOR)) for p, v in table.entries if math.isfinite(v)]
    kind = "empirical" if table.provenance.startswith("sample") else "tabulated"
    return tabulated(pts, kind=kind)


@dataclass(frozen=True)
class GlsNorm:
    value: float
    argmax_p: float


def gls_norm(table, psi):
    """Lower estimate of sup_p |zeta|_p / psi(p) over the table's p grid."""
    ps = np.array([p for p, _ in table.entries])
    vs = np.array([v for _, v in table.entries])
    with np.errstate(divide="ignore"):
        logs = np.where(vs > 0, np.log(np.maximum(vs, PSI_FLOOR)), -np.inf)
    f = logs - psi.log_eval(ps)
    i = int(np.argmax(f))
    val = 0.0 if f[i] == -np.inf else float(np.exp(f[i]))
    return GlsNorm(val, float(ps[i]))


# ---------------------------------------------------------------------------
# JSON serialization


def psi_to_obj(psi):
    k = psi.kind
    if k == "power":
        return {"kind": "power", "m": psi.params["m"]}
    if k == "finite_support":
        return {"kind": "finite_support", "b": psi.params["b"], "beta": psi.params["beta"]}
    if k == "extremal":
        return {"kind": "extremal", "r": psi.params["r"]}
    if k in ("tabulated", "empirical"):
        return {"kind": "tabulated", "points": [[p, v] for p, v in psi.params["points"]]}
    if k == "product":
        return {"kind": "product", "left": psi_to_obj(psi.left), "right": psi_to_obj(psi.right)}
    if k == "dual":
        return {"kind": "dual", "inner": psi_to_obj(psi.left)}
    raise ValueError(f"unknown generating-function kind {k!r}")


def psi_from_obj(obj):
    k = obj["kind"]
    if k == "power":
        return power(obj["m"])
    if k == "finite_support":
        return finite_support(obj["b"], obj["beta"])
    if k == "extremal":
        return extremal(obj["r"])
    if k == "tabulated":
        return tabulated([(p, v) for p, v in obj["points"]])
    if k == "product":
        return product_zeta(psi_from_obj(obj["left"]), psi_from_obj(obj["right"]))
    if k == "dual":
        return dual_psi(psi_from_obj(obj["inner"]))
    raise DomainError(f"unknown generating-function kind {k!r}")


def psi_to_json(psi):
    return json.dumps(psi_to_obj(psi))


def psi_from_json(text):
    return psi_from_obj(json.loads(text))


def moment_table_to_csv(table):
    lines = ["p,norm"]
    lines += [f"{p!r},{v!r}" for p, v in table.entries]
    return "\n".join(lines) + "\n"


def moment_table_from_csv(text, provenance="analytic"):
    rows = [ln for ln in text.strip().splitlines() if ln.strip()]
    if not rows or rows[0].strip().lower() != "p,norm":
        raise DomainError("moment table CSV must start with header 'p,norm'")
    entries = []
    for ln in rows[1:]:
        a, b = ln.split(",")
        entries.append((float(a), float(b)))
    return MomentTable(tuple(entries), provenance=provenance)
