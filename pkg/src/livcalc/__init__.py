"""livcalc: numerical calculus of contractive and half-plane analytic
functions attached to symmetric operators with a one-dimensional defect,
their dissipative extensions, and the coupling laws between them."""

from .core import (
    AnalyticFn,
    EvaluationGrid,
    FnKind,
    ToleranceConfig,
    constant_fn,
    default_grid,
    evaluate_many,
    evaluate_on_grid,
    max_modulus,
    min_imag,
    require_upper,
    sup_deviation,
)
from .coupling import (
    CouplingAngles,
    TaggedCharacteristic,
    add_weyl,
    couple_livsic,
    coupling_angles,
    general_k_identity_defect,
    multiply_characteristic,
    verify_class_properties,
)
from .errors import (
    DegenerateMap,
    EmptyMeasure,
    LivcalcError,
    NotContractive,
    OutOfRange,
    PoleEncountered,
    QuadratureFailed,
    WindowTooSmall,
)
from .extension import (
    ClassMembershipReport,
    ClassVerdict,
    characteristic_from_livsic,
    class_C_check,
    ensure_kappa,
    extract_kappa,
    reference_change_livsic,
    reference_change_weyl,
)
from .measure import (
    BorelMeasureModel,
    InversionResult,
    SampledDensity,
    livsic_from_weyl,
    normalization_defect,
    realize_herglotz,
    stieltjes_invert,
)
from .model import (
    DeficiencyElement,
    Interval,
    ModelFunctions,
    g_minus,
    g_plus,
    g_z,
    model_closed_forms,
    split_interval_check,
)
from .moebius import MoebiusMap
from .oracle import model_livsic_quadrature

__version__ = "0.1.0"

__all__ = [
    "AnalyticFn",
    "BorelMeasureModel",
    "ClassMembershipReport",
    "ClassVerdict",
    "CouplingAngles",
    "DeficiencyElement",
    "DegenerateMap",
    "EmptyMeasure",
    "EvaluationGrid",
    "FnKind",
    "Interval",
    "InversionResult",
    "LivcalcError",
    "ModelFunctions",
    "MoebiusMap",
    "NotContractive",
    "OutOfRange",
    "PoleEncountered",
    "QuadratureFailed",
    "SampledDensity",
    "TaggedCharacteristic",
    "ToleranceConfig",
    "WindowTooSmall",
    "add_weyl",
    "characteristic_from_livsic",
    "class_C_check",
    "constant_fn",
    "couple_livsic",
    "coupling_angles",
    "default_grid",
    "ensure_kappa",
    "evaluate_many",
    "evaluate_on_grid",
    "extract_kappa",
    "g_minus",
    "g_plus",
    "g_z",
    "general_k_identity_defect",
    "livsic_from_weyl",
    "max_modulus",
    "min_imag",
    "model_closed_forms",
    "model_livsic_quadrature",
    "multiply_characteristic",
    "normalization_defect",
    "realize_herglotz",
    "reference_change_livsic",
    "reference_change_weyl",
    "require_upper",
    "split_interval_check",
    "stieltjes_invert",
    "sup_deviation",
    "verify_class_properties",
]
