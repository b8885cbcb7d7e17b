"""Enemy and friendly primes, lambda-stability, Selmer growth criteria and
density computations for elliptic curves over Z/pZ-extensions of Q."""

from .arith import (
    EllipticCurve,
    count_points,
    cubic_splits_completely,
    is_supersingular,
    legendre_symbol,
    trace_of_frobenius,
)
from .classify import PrimeClassification, ScanReport, Verdict, build_p1_p2, build_t_set, classify_prime, scan_proportions
from .densities import (
    chebotarev_set_size,
    cojocaru_scan,
    density_lower_bound,
    enemy_proportion_prediction,
    frobenius_in_s,
    has_cm,
    rank_zero_expression,
    rank_zero_table,
    tame_lower_bound,
)
from .extensions import ExtensionProfile, discriminant, enumerate_conductors, unique_extension_of_conductor_q
from .ingest import CurveRecord, parse_curve_file, write_csv
from .iwasawa import (
    EulerComponents,
    IwasawaAssumptions,
    chi_one_equivalence,
    euler_characteristic,
    kida_lambda,
    lambda_stable,
    lkr_check,
)
from .localdata import (
    LocalReductionData,
    ReductionType,
    base_change_kodaira,
    conductor,
    minimal_model,
    split_vs_nonsplit,
    tate_algorithm,
)
from .matsuno import (
    logarithmic_integral,
    matsuno_plan,
    p_rank_equation,
    pick_split_primes,
    selmer_rank_lower_bound,
    sha_two_rank_lower_bound,
)
from .primes import PrimeEngine, prime_pi, primes_up_to

__version__ = "0.1.0"

__all__ = [
    "EllipticCurve",
    "count_points",
    "cubic_splits_completely",
    "is_supersingular",
    "legendre_symbol",
    "trace_of_frobenius",
    "PrimeClassification",
    "ScanReport",
    "Verdict",
    "build_p1_p2",
    "build_t_set",
    "classify_prime",
    "scan_proportions",
    "chebotarev_set_size",
    "cojocaru_scan",
    "density_lower_bound",
    "enemy_proportion_prediction",
    "frobenius_in_s",
    "has_cm",
    "rank_zero_expression",
    "rank_zero_table",
    "tame_lower_bound",
    "ExtensionProfile",
    "discriminant",
    "enumerate_conductors",
    "unique_extension_of_conductor_q",
    "CurveRecord",
    "parse_curve_file",
    "write_csv",
    "EulerComponents",
    "IwasawaAssumptions",
    "chi_one_equivalence",
    "euler_characteristic",
    "kida_lambda",
    "lambda_stable",
    "lkr_check",
    "LocalReductionData",
    "ReductionType",
    "base_change_kodaira",
    "conductor",
    "minimal_model",
    "split_vs_nonsplit",
    "tate_algorithm",
    "logarithmic_integral",
    "matsuno_plan",
    "p_rank_equation",
    "pick_split_primes",
    "selmer_rank_lower_bound",
    "sha_two_rank_lower_bound",
    "PrimeEngine",
    "prime_pi",
    "primes_up_to",
]
