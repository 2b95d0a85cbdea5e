"""Exact growth and conjugacy-growth computations in Z^s x H_D."""
from .autos import (
    apply_automorphism,
    extension_conjugacy_growth,
    identity_automorphism,
    make_automorphism,
    swap_automorphism,
    twisted_growth_bruteforce,
    twisted_growth_structural,
    verify_automorphism,
)
from .conjugacy import (
    class_key,
    class_modulus,
    conjugacy_growth_bounds,
    conjugacy_growth_exact,
    conjugacy_growth_oracle,
    hd_embeddings,
)
from .errors import BudgetError, NilgrowthError, SpecError, StructuralError
from .gcdsums import LatticeBallSpec, expected_gcd, gcd_sum, gcd_sum_fit, zeta
from .groups import (
    GroupSpec,
    abelianize,
    canonical_lift,
    central_element,
    commutator,
    commutator_form,
    conjugate,
    inverse,
    make_group_spec,
    multiply,
    named_spec,
    omega_form,
    power,
    standard_generators,
)
from .series import (
    detect_quasi_polynomial,
    select_asymptotic_model,
    series_coefficients,
)
from .words import (
    GeneratingSet,
    bass_guivarch_exponent,
    central_growth,
    enumerate_ball,
    standard_generating_set,
    word_length,
)

__version__ = "0.1.0"

__all__ = [
    "BudgetError",
    "GeneratingSet",
    "GroupSpec",
    "LatticeBallSpec",
    "NilgrowthError",
    "SpecError",
    "StructuralError",
    "abelianize",
    "apply_automorphism",
    "bass_guivarch_exponent",
    "canonical_lift",
    "central_element",
    "central_growth",
    "class_key",
    "class_modulus",
    "commutator",
    "commutator_form",
    "conjugacy_growth_bounds",
    "conjugacy_growth_exact",
    "conjugacy_growth_oracle",
    "conjugate",
    "detect_quasi_polynomial",
    "enumerate_ball",
    "expected_gcd",
    "extension_conjugacy_growth",
    "gcd_sum",
    "gcd_sum_fit",
    "hd_embeddings",
    "identity_automorphism",
    "inverse",
    "make_automorphism",
    "make_group_spec",
    "multiply",
    "named_spec",
    "omega_form",
    "power",
    "select_asymptotic_model",
    "series_coefficients",
    "standard_generating_set",
    "standard_generators",
    "swap_automorphism",
    "twisted_growth_bruteforce",
    "twisted_growth_structural",
    "verify_automorphism",
    "word_length",
    "zeta",
]
