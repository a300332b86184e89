"""Grand Lebesgue Space norms, fundamental functions, and covariance bounds
for mixing sequences, with an exact finite-space verification oracle and
partial-sum diagnostics."""

from .errors import DomainError
from .psi import (
    GlsNorm,
    MomentTable,
    P_MAX,
    PsiFunction,
    conjugate_exponent,
    dual_psi,
    eval_psi,
    extremal,
    finite_support,
    gls_norm,
    lp_norm_of_samples,
    moment_table_from_csv,
    moment_table_to_csv,
    moments_from_samples,
    natural_from_moments,
    power,
    product_zeta,
    psi_from_json,
    psi_from_obj,
    psi_to_json,
    psi_to_obj,
    tabulated,
)
from .fundamental import (
    FiniteClosedForm,
    FundamentalResult,
    closed_form_finite,
    closed_form_power,
    finite_support_constant,
    fundamental,
    fundamental_truncated,
    g_prime,
    g_transform,
    solve_argmax,
)
from .tails import (
    ConjugateInfo,
    conjugate,
    conjugate_info,
    empirical_tail,
    orlicz_N,
    tail_bound,
    v_of,
)
from .bounds import (
    BoundReport,
    FactorizationResult,
    UniformPhi,
    davydov_bound,
    example_combined,
    example_finite_pair,
    example_mixed_pair,
    example_power_pair,
    factorization_check,
    generic_bound,
    gls_dual_pair_bound,
    gls_identical_bound,
    gls_strong_bound,
    gls_uniform_bound,
    holder_bound,
    ibragimov_bound,
    phi_uniform,
    phi_uniform_theta,
)
from .finite import (
    CampaignConfig,
    CampaignReport,
    FiniteProbSpace,
    RandomVar,
    SharpnessResult,
    SigmaField,
    alpha_coefficient,
    beta_coefficient,
    exact_cov,
    exact_lp,
    gls_norm_exact,
    rademacher_witness,
    sharpness_probe,
    verify_campaign,
)
from .clt import (
    CltProfile,
    FiniteMarkovModel,
    MDependentModel,
    SummabilityReport,
    UserSamplesModel,
    markov_mixing_profile,
    sigma_n_estimate,
    summability_report,
    y_sequence,
    z_sequence,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
