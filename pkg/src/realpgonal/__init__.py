"""Real cyclic p-gonal Riemann surfaces: signatures, epimorphisms, species and symmetry classes."""

from .classifier import Budget, ClassifierError, classify_symmetries, pair_type, verify_all, verify_case
from .epimorphisms import (
    EpiError,
    SurfaceKernelEpi,
    check_surface_kernel,
    enumerate_surface_kernel_epis,
    kernel_genus,
    target_group,
    theta1,
    theta2,
    theta3,
)
from .groups import GroupError, SignedGroup
from .kernels import BACKEND
from .recipes import RecipeError, realize
from .signatures import (
    NecSignature,
    SignatureError,
    area,
    cyclic_p_gonal_signature,
    format_signature,
    kernel_surface_genus,
    parse_signature,
    real_cyclic_signatures,
    validate,
)
from .species import SpeciesError, SpeciesResult, allowed_species, schreier_sign_test, species, verify_theorem2

__all__ = [
    "BACKEND",
    "Budget",
    "ClassifierError",
    "EpiError",
    "GroupError",
    "NecSignature",
    "RecipeError",
    "SignatureError",
    "SignedGroup",
    "SpeciesError",
    "SpeciesResult",
    "SurfaceKernelEpi",
    "allowed_species",
    "area",
    "check_surface_kernel",
    "classify_symmetries",
    "cyclic_p_gonal_signature",
    "enumerate_surface_kernel_epis",
    "format_signature",
    "kernel_genus",
    "kernel_surface_genus",
    "pair_type",
    "parse_signature",
    "real_cyclic_signatures",
    "realize",
    "schreier_sign_test",
    "species",
    "target_group",
    "theta1",
    "theta2",
    "theta3",
    "validate",
    "verify_all",
    "verify_case",
    "verify_theorem2",
]
