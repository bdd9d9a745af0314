"""Alpha-expansions of reals in (0,1]: codec, dimension spectra and digit-law sampling."""

from ._alphaexp import (
    AlphaParams,
    Arithmetic,
    DigitLaw,
    GibbsParams,
    SubsequencePattern,
    bm_local_dimension,
    check_hypotheses,
    cylinder_length,
    decode,
    digit_of,
    encode,
    k_of_n,
    kappa,
    local_dimension,
    moran_dimension,
    mu_estimate,
    pressure,
    pressure_dq,
    pressure_dt,
    sample_digits,
    solve_tq,
    subseq_dimension_finite,
    subseq_dimension_limit,
    verify,
)

__all__ = [name for name in dir() if not name.startswith("_")]
