"""Computational checks of Hasse-principle failures for the quartic
curves p*x^4 - m*y^4 = z^2: class-group and ray-class obstructions,
first 2-descents with Selmer groups and rank bounds, and the historic
case studies at desk scale."""

from .arith import (
    Factorization,
    factorize,
    is_prime,
    is_square_in_qp,
    jacobi_symbol,
    octic_symbol,
    quartic_symbol,
    sqrt_mod_prime,
    squarefree_divisors,
)
from .descent import (
    DescentReport,
    IsogenyPair,
    SelmerGroup,
    TorsionSet,
    full_descent,
    isogenous_pair,
    nagell_lutz_torsion,
    rank_bounds,
    selmer_group,
    torsor_family,
    torsor_point_search,
    torsor_to_curve_point,
)
from .gaussint import (
    GaussianInt,
    QuarticUnit,
    biquadratic_symbol,
    lemma7_check,
    primary_associate,
    split_prime,
)
from .localsolve import (
    LocalReport,
    TorsorPoint,
    TorsorSpec,
    UndecidedError,
    everywhere_locally_solvable,
    hilbert_symbol,
    solvable_in_qp,
    solvable_real,
)
from .pepin import (
    FamilyReport,
    FamilySpec,
    Prop4Row,
    Theorem6Report,
    VerificationError,
    conic_parametrization,
    conic_point,
    family_scan,
    flt7_verify,
    historic_case,
    identity_check,
    prop4_verify,
    theorem6_report,
)
from .quadforms import (
    ClassGroup,
    FundamentalUnitData,
    QuadForm,
    RayClassGroup,
    class_group,
    class_order,
    compose,
    fundamental_unit,
    genus_character_labels,
    genus_characters,
    is_fourth_power_class,
    lemma5_check,
    prime_form_class,
    ray_class_group,
    ray_class_order,
    reduce_form,
    represent_prime,
    two_sylow_structure,
)

__version__ = "0.1.0"
