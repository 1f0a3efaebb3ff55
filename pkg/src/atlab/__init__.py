"""atlab: numerical laboratory for spectral non-AT criteria on circle measures."""

from .fourier import (
    FourierTable,
    DensityBoundReport,
    InvariantViolation,
    arcsine_fourth_transform,
    arcsine_transform,
    density_sup,
    dirac_table,
    is_positive_definite,
    l1_tail,
    lebesgue_table,
    power_subsample,
    read_measure,
    riesz_product,
    sqrt_template,
    write_measure,
)
from .sbh import (
    SbhReport,
    blum_hanson_average,
    certify,
    epsilon0,
    rajchman_decay,
    sbh_form,
    sbh_sup_exhaustive,
    sbh_sup_heuristic,
)
from .systems import (
    CoinSource,
    ConstantSource,
    DistalSource,
    NameSource,
    NilRotationSource,
    OdometerExtensionSource,
    RotationCocycleSource,
    RudinShapiroSource,
    distal_integral,
    empirical_correlation,
    nil_rotation_correlation,
    nil_rotation_n1_series,
    rotation_ac_cocycle_correlation,
    rudin_shapiro_names,
    square_wave_coeffs,
    two_point_extension_correlation,
)
from .gaussian import (
    GaussianSpec,
    cocycle_correlation_table,
    cocycle_variance,
    gnoat_constant_check,
    product_orthant_mc,
    sample_path,
    sign_orthant_mc,
)
from .funny import (
    FunnyWord,
    LambdaFamily,
    funny_word_search,
    hamming,
    non_at_bound,
    theta_l2_empirical,
    theta_l2_exact,
    theta_of_name,
    theta_symmetry_check,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
