"""Angular statistics of modular-group orbits on the hyperbolic plane and
their exact correspondence with two-squares lattice circles."""

from .angular import (
    AngularMeasure,
    FourierCoefficient,
    chi2_sum,
    chi2_sum_direct,
    chi2_sum_multiplicative,
    circle_angle_measure,
    convolve,
    discrepancy,
    erdos_turan_bound,
    erdos_turan_bounds_upto,
    fourier_even_x,
    fourier_full,
    fourier_full_multiplicative,
    fourier_magnitudes,
    fourier_primary,
    fourier_primary_multiplicative,
    measure_from_json,
    measure_to_csv,
    measure_to_json,
    orbit_angle_measure,
    reflection_pairing_check,
    symmetry_defect,
)
from .density import (
    density_cdf,
    density_closed,
    density_grid,
    density_series,
    ks_statistic,
    real_parts_mod1,
    real_parts_window,
)
from .directions import angle_cmp, angle_float, angle_sort_key, reduce_direction
from .errors import (
    CapacityError,
    DegenerateRadiusError,
    DomainError,
    ResumeError,
    VerificationError,
)
from .hunt import (
    CensusReport,
    ScanConfig,
    ScanRecord,
    census,
    compose_prime_pairs,
    find_asymmetric,
    find_singular,
    find_small_angle_primes,
    read_scan_file,
    scan_range,
)
from .hyperbolic import (
    CorrespondenceReport,
    ModularMatrix,
    disk_point,
    hyperbolic_distance,
    lattice_points_even_x,
    matrices_with_norm,
    matrices_with_norm_bruteforce,
    norm_occurs,
    orbit_point,
    orbit_points,
    verify_angle_correspondence,
)
from .zint import (
    Factorization,
    GaussInt,
    bigomega_split,
    even_x_count,
    factor,
    is_prime,
    is_primary,
    is_sum_two_squares,
    omega_split,
    primary_normalize,
    prime_above,
    prime_angle,
    prime_angle_folded,
    primes_upto,
    repr_two_squares,
    sqrt_minus_one,
    two_squares_count,
)

__version__ = "0.1.0"

__all__ = [
    "AngularMeasure",
    "CapacityError",
    "CensusReport",
    "CorrespondenceReport",
    "DegenerateRadiusError",
    "DomainError",
    "Factorization",
    "FourierCoefficient",
    "GaussInt",
    "ModularMatrix",
    "ResumeError",
    "ScanConfig",
    "ScanRecord",
    "VerificationError",
    "angle_cmp",
    "angle_float",
    "angle_sort_key",
    "bigomega_split",
    "census",
    "chi2_sum",
    "chi2_sum_direct",
    "chi2_sum_multiplicative",
    "circle_angle_measure",
    "compose_prime_pairs",
    "convolve",
    "density_cdf",
    "density_closed",
    "density_grid",
    "density_series",
    "discrepancy",
    "disk_point",
    "erdos_turan_bound",
    "erdos_turan_bounds_upto",
    "even_x_count",
    "factor",
    "find_asymmetric",
    "find_singular",
    "find_small_angle_primes",
    "fourier_even_x",
    "fourier_full",
    "fourier_full_multiplicative",
    "fourier_magnitudes",
    "fourier_primary",
    "fourier_primary_multiplicative",
    "hyperbolic_distance",
    "is_primary",
    "is_prime",
    "is_sum_two_squares",
    "ks_statistic",
    "lattice_points_even_x",
    "matrices_with_norm",
    "matrices_with_norm_bruteforce",
    "measure_from_json",
    "measure_to_csv",
    "measure_to_json",
    "norm_occurs",
    "omega_split",
    "orbit_angle_measure",
    "orbit_point",
    "orbit_points",
    "primary_normalize",
    "prime_above",
    "prime_angle",
    "prime_angle_folded",
    "primes_upto",
    "read_scan_file",
    "real_parts_mod1",
    "real_parts_window",
    "reflection_pairing_check",
    "repr_two_squares",
    "scan_range",
    "sqrt_minus_one",
    "symmetry_defect",
    "two_squares_count",
    "verify_angle_correspondence",
]
