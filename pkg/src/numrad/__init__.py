"""Certified numerical-radius enclosures and Aluthge-transform bounds."""

from .matrixio import (
    ENSEMBLE_KINDS,
    ComplexMatrix,
    EnsembleConfig,
    MatrixFormatError,
    make_ensemble,
    parse_matrix,
    reference_fixtures,
    serialize_matrix,
)
from .decomp import (
    HermitianSpectrum,
    PolarParts,
    adjoint,
    anticommutator_self,
    frac_power,
    hermitian_spectrum,
    polar_decompose,
    spectral_norm,
    spectral_radius,
)
from .aluthge import AluthgeChain, aluthge_iterate, aluthge_t, nilpotent_norm_residual
from .radius import (
    Enclosure,
    ThetaSweep,
    crawford_number,
    hermitian_part,
    numerical_radius,
    range_boundary,
    skew_part,
    theta_sweep,
)
from .bounds import (
    BoundRecord,
    TGrid,
    bound_fourth_power,
    bound_fourth_sandwich,
    bound_iterated_closed,
    bound_iterated_series,
    bound_kittaneh_cartesian,
    bound_kittaneh_norm,
    bound_min_aluthge,
    bound_norm_product,
    bound_square_product,
    bound_t_mean,
    bound_yamazaki,
    composite_spectral_residual,
    evaluate_all,
    heinz_residual,
)
from .frontend import (
    SUMMARY_HEADER,
    BoundsReport,
    ReproCheck,
    compare_all,
    main,
    reproduce,
    run_ensemble,
    summary_csv,
)

__version__ = "0.1.0"

__all__ = [
    "ENSEMBLE_KINDS",
    "ComplexMatrix",
    "EnsembleConfig",
    "MatrixFormatError",
    "make_ensemble",
    "parse_matrix",
    "reference_fixtures",
    "serialize_matrix",
    "HermitianSpectrum",
    "PolarParts",
    "adjoint",
    "anticommutator_self",
    "frac_power",
    "hermitian_spectrum",
    "polar_decompose",
    "spectral_norm",
    "spectral_radius",
    "AluthgeChain",
    "aluthge_iterate",
    "aluthge_t",
    "nilpotent_norm_residual",
    "Enclosure",
    "ThetaSweep",
    "crawford_number",
    "hermitian_part",
    "numerical_radius",
    "range_boundary",
    "skew_part",
    "theta_sweep",
    "BoundRecord",
    "TGrid",
    "bound_fourth_power",
    "bound_fourth_sandwich",
    "bound_iterated_closed",
    "bound_iterated_series",
    "bound_kittaneh_cartesian",
    "bound_kittaneh_norm",
    "bound_min_aluthge",
    "bound_norm_product",
    "bound_square_product",
    "bound_t_mean",
    "bound_yamazaki",
    "composite_spectral_residual",
    "evaluate_all",
    "heinz_residual",
    "SUMMARY_HEADER",
    "BoundsReport",
    "ReproCheck",
    "compare_all",
    "main",
    "reproduce",
    "run_ensemble",
    "summary_csv",
    "__version__",
]
