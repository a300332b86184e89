"""Exact ground truth on small finite probability spaces.

Sigma-fields are generated by partitions of the atoms; every event of such a
field is a union of blocks, so mixing coefficients are exact maxima over
bitmask-enumerated block unions.  The randomized campaign replays every
covariance bound against exact covariances and norms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.special import logsumexp

from ._optimize import grid_golden_max
from .errors import DomainError
from .psi import power, scan_bound
from . import bounds as _bounds

#: enumeration is 2^k events per field; above this it is refused
MAX_BLOCKS = 12


@dataclass(frozen=True, eq=False)
class FiniteProbSpace:
    """Atomic probability space: strictly positive masses summing to one."""

    atom_probs: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.atom_probs, dtype=float)
        object.__setattr__(self, "atom_probs", p)
        if p.size == 0 or np.any(p <= 0):
            raise DomainError("atom probabilities must be strictly positive")
        if abs(p.sum() - 1.0) > 1e-12:
            raise DomainError("atom probabilities must sum to 1")

    @property
    def n_atoms(self):
        return self.atom_probs.size


@dataclass(frozen=True, eq=False)
class SigmaField:
    """Sub-sigma-field generated by a partition (block label per atom)."""

    labels: np.ndarray

    def __post_init__(self):
        lab = np.asarray(self.labels, dtype=int)
        # relabel to 0..k-1 preserving first-appearance order, so blocks are
        # guaranteed non-empty
        _, lab = np.unique(lab, return_inverse=True)
        object.__setattr__(self, "labels", lab)

    @property
    def block_count(self):
        return int(self.labels.max()) + 1


@dataclass(frozen=True, eq=False)
class RandomVar:
    """Atom-indexed real function."""

    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "values", np.asarray(self.values, dtype=float))

    def is_measurable(self, sigma_field):
        """True iff constant on every block (exact comparison)."""
        lab = sigma_field.labels
        for block in range(sigma_field.block_count):
            vals = self.values[lab == block]
            if np.any(vals != vals[0]):
                return False
        return True


@lru_cache(maxsize=None)
def _event_indicators(k):
    """2^k x k indicator matrix of all block unions."""
    masks = np.arange(2**k)
    return ((masks[:, None] >> np.arange(k)[None, :]) & 1).astype(float)


def _mixing_pair(space, field_f, field_g):
    k_f, k_g = field_f.block_count, field_g.block_count
    if k_f > MAX_BLOCKS or k_g > MAX_BLOCKS:
        raise DomainError("enumeration too large: more than 12 blocks per field")
    joint = np.zeros((k_f, k_g))
    np.add.at(joint, (field_f.labels, field_g.labels), space.atom_probs)
    p_f, p_g = joint.sum(axis=1), joint.sum(axis=0)
    ind_f, ind_g = _event_indicators(k_f), _event_indicators(k_g)
    pa = ind_f @ p_f
    pb = ind_g @ p_g
    alpha = 0.0
    beta = 0.0
    chunk = 1024
    right = joint @ ind_g.T  # k_f x 2^k_g
    for start in range(0, ind_f.shape[0], chunk):
        rows = ind_f[start : start + chunk]
        pab = rows @ right
        pa_c = pa[start : start + chunk]
        alpha = max(alpha, float(np.abs(pab - pa_c[:, None] * pb[None, :]).max()))
        pos = pa_c > 0
        if np.any(pos):
            cond = pab[pos] / pa_c[pos, None]
            beta = max(beta, float(np.abs(cond - pb[None, :]).max()))
    return alpha, beta


def alpha_coefficient(space, field_f, field_g):
    """Exact sup over event pairs of |P(AB) - P(A) P(B)|."""
    return _mixing_pair(space, field_f, field_g)[0]


def beta_coefficient(space, field_f, field_g):
    """Exact sup over event pairs with P(A) > 0 of |P(B|A) - P(B)|."""
    return _mixing_pair(space, field_f, field_g)[1]


def exact_cov(space, xi, eta):
    w = space.atom_probs
    return float(w @ (xi.values * eta.values) - (w @ xi.values) * (w @ eta.values))


def exact_lp(space, xi, p):
    """Exact L_p norm; p = +inf is the sup over atoms of positive mass."""
    if p < 1.0:
        raise DomainError("p must lie in [1, infinity]")
    x = np.abs(xi.values)
    if math.isinf(p):
        return float(x.max())
    nz = x > 0
    if not np.any(nz):
        return 0.0
    lse = logsumexp(np.log(space.atom_probs[nz]) + p * np.log(x[nz]))
    return float(math.exp(lse / p))


def gls_norm_exact(space, xi, psi, n_grid=512, refine=True):
    """sup over p of |xi|_p / psi(p), using exact moments at every scanned p."""
    x = np.abs(xi.values)
    nz = x > 0
    if not np.any(nz):
        return 0.0
    logw = np.log(space.atom_probs[nz])
    logx = np.log(x[nz])
    u_lo = 1.0 / scan_bound(psi)

    def objective(us):
        ps = 1.0 / np.asarray(us)
        lse = logsumexp(logw[None, :] + ps[:, None] * logx[None, :], axis=1)
        return lse / ps - psi.log_eval(ps)

    _, best = grid_golden_max(objective, u_lo, 1.0, n=n_grid, refine=refine)
    return 0.0 if best == -math.inf else float(math.exp(best))


# ---------------------------------------------------------------------------
# randomized verification campaign


@dataclass(frozen=True)
class CampaignConfig:
    instances: int = 1000
    seed: int = 42
    max_atoms: int = 10
    max_blocks: int = 4
    slack: float = 1e-12
    n_grid: int = 256  # optimizer resolution inside the campaign


@dataclass
class CampaignReport:
    instances: int
    violations: int
    violation_details: list = field(default_factory=list)
    min_slack_ratio: float = math.inf  # min over instances of bound/|Cov|
    tightest: dict | None = None
    checks: int = 0
    rows: list = field(default_factory=list)


def _random_instance(rng, max_atoms, max_blocks):
    n = int(rng.integers(2, max_atoms + 1))
    space = FiniteProbSpace(rng.dirichlet(np.ones(n)))
    fields = []
    for _ in range(2):
        k = int(rng.integers(1, min(n, max_blocks) + 1))
        lab = np.concatenate([np.arange(k), rng.integers(0, k, size=n - k)])
        rng.shuffle(lab)
        fields.append(SigmaField(lab))
    f_field, g_field = fields
    variables = []
    for fld in (f_field, g_field):
        block_vals = rng.uniform(-1.0, 1.0, size=fld.block_count)
        vals = block_vals[fld.labels]
        if rng.random() < 0.5:
            vals = vals - space.atom_probs @ vals
        variables.append(RandomVar(vals))
    return space, f_field, g_field, variables[0], variables[1]


_PQ_GRID = [(2.0, 4.0), (4.0, 4.0), (4.0, 2.0), (8.0, 8.0)]
_IBRAGIMOV_P = [1.5, 2.0, 4.0]


def _instance_checks(space, f_field, g_field, xi, eta, n_grid):
    """Every feasible bound evaluated on one instance, as (name, value) pairs."""
    alpha, beta = _mixing_pair(space, f_field, g_field)
    out = []
    for p, q in _PQ_GRID:
        rep = _bounds.davydov_bound(alpha, p, q, exact_lp(space, xi, p), exact_lp(space, eta, q))
        if rep.feasible:
            out.append((f"davydov({p:g},{q:g})", rep.value))
    for p in _IBRAGIMOV_P:
        q = p / (p - 1.0)
        rep = _bounds.ibragimov_bound(beta, p, exact_lp(space, xi, p), exact_lp(space, eta, q))
        out.append((f"ibragimov({p:g})", rep.value))
    out.append(("holder(2)", _bounds.holder_bound(exact_lp(space, xi, 2.0), exact_lp(space, eta, 2.0)).value))
    psi1, psi2 = power(1.0), power(2.0)
    nx1 = gls_norm_exact(space, xi, psi1, n_grid=n_grid, refine=False)
    ne2 = gls_norm_exact(space, eta, psi2, n_grid=n_grid, refine=False)
    nx2 = gls_norm_exact(space, xi, psi2, n_grid=n_grid, refine=False)
    rep = _bounds.gls_strong_bound(psi1, psi2, beta, nx1, ne2, n_grid=n_grid, refine=False)
    if rep.feasible:
        out.append(("gls_strong", rep.value))
    phi2d = _bounds.phi_uniform(psi1, psi2, alpha, alpha, n_grid=64, refine=True)
    if alpha == 0.0:
        out.append(("gls_uniform", 0.0))
    elif phi2d.value > 0:
        out.append(("gls_uniform", 12.0 * alpha * nx1 * ne2 / phi2d.value))
    rep = _bounds.gls_identical_bound(psi2, alpha, nx2, ne2, n_grid=n_grid, refine=False)
    if rep.feasible:
        out.append(("gls_identical", rep.value))
    return alpha, beta, out


def verify_campaign(config=CampaignConfig(), collect_rows=False):
    """Randomized campaign: every feasible bound must dominate the exact |Cov|.

    A violation beyond the configured slack indicates an implementation bug;
    that is the whole point of this oracle.
    """
    report = CampaignReport(instances=config.instances, violations=0)
    for i in range(config.instances):
        rng = np.random.default_rng((config.seed, i))
        space, ff, gg, xi, eta = _random_instance(rng, config.max_atoms, config.max_blocks)
        cov = exact_cov(space, xi, eta)
        alpha, beta, checks = _instance_checks(space, ff, gg, xi, eta, config.n_grid)
        acov = abs(cov)
        tight_name, tight_val = None, math.inf
        for name, val in checks:
            report.checks += 1
            if acov > val + config.slack:
                report.violations += 1
                report.violation_details.append(
                    {"instance": i, "bound": name, "value": val, "cov": cov}
                )
            if val < tight_val:
                tight_name, tight_val = name, val
        if acov > config.slack and tight_val < math.inf:
            ratio = tight_val / acov
            if ratio < report.min_slack_ratio:
                report.min_slack_ratio = ratio
                report.tightest = {
                    "instance": i,
                    "bound": tight_name,
                    "value": tight_val,
                    "cov": cov,
                    "alpha": alpha,
                    "beta": beta,
                }
        if collect_rows:
            report.rows.append(
                {
                    "instance": i,
                    "alpha": alpha,
                    "beta": beta,
                    "cov": cov,
                    "tightest_bound": tight_name,
                    "slack": (tight_val / acov) if acov > 0 else math.inf,
                }
            )
    return report


# ---------------------------------------------------------------------------
# sharpness probe (F = G construction)


@dataclass(frozen=True)
class SharpnessResult:
    ratio: float
    witness: dict


def rademacher_witness():
    """Fair two-atom space with F = G the full partition and xi = eta = +-1."""
    space = FiniteProbSpace(np.array([0.5, 0.5]))
    fld = SigmaField(np.array([0, 1]))
    var = RandomVar(np.array([1.0, -1.0]))
    return space, fld, var


def sharpness_probe(p, q, search_budget=500, seed=0):
    """Randomized search over F = G instances for |Cov| >= alpha^expo |xi|_p |eta|_q.

    The Rademacher witness is always evaluated first; instances with alpha = 0
    are skipped (the ratio is undefined there).
    """
    if 1.0 / p + 1.0 / q >= 1.0:
        raise DomainError("sharpness probe needs 1/p + 1/q < 1")
    expo = 1.0 - 1.0 / p - 1.0 / q

    def ratio_of(space, fld, var):
        alpha = alpha_coefficient(space, fld, fld)
        if alpha == 0.0:
            return None, alpha
        cov = abs(exact_cov(space, var, var))
        denom = alpha**expo * exact_lp(space, var, p) * exact_lp(space, var, q)
        if denom == 0.0:
            return None, alpha
        return cov / denom, alpha

    space, fld, var = rademacher_witness()
    best_ratio, best_alpha = ratio_of(space, fld, var)
    best = {
        "atom_probs": space.atom_probs.tolist(),
        "labels": fld.labels.tolist(),
        "values": var.values.tolist(),
        "alpha": best_alpha,
        "source": "rademacher",
    }
    for i in range(search_budget):
        rng = np.random.default_rng((seed, i))
        n = int(rng.integers(2, 7))
        space = FiniteProbSpace(rng.dirichlet(np.ones(n)))
        k = int(rng.integers(2, min(n, 4) + 1))
        lab = np.concatenate([np.arange(k), rng.integers(0, k, size=n - k)])
        rng.shuffle(lab)
        fld = SigmaField(lab)
        block_vals = rng.uniform(-1.0, 1.0, size=fld.block_count)
        vals = block_vals[fld.labels] - space.atom_probs @ block_vals[fld.labels]
        var = RandomVar(vals)
        r, a = ratio_of(space, fld, var)
        if r is not None and r > best_ratio:
            best_ratio = r
            best = {
                "atom_probs": space.atom_probs.tolist(),
                "labels": fld.labels.tolist(),
                "values": var.values.tolist(),
                "alpha": a,
                "source": f"random({i})",
            }
    return SharpnessResult(best_ratio, best)
