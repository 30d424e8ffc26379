"""Hiccup sequences and their equivalent characterizations."""
from .errors import *  # noqa: F401,F403
from .sequences import (
    DegenerateWarning,
    HiccupParams,
    LiftRule,
    characteristic_word,
    generate_hiccup,
    infer_params,
    lift_from_zero_x,
    reduce_j_to_zero,
)
from .quadratic import QuadraticNumber, floor_linear, golden_ratio, parse_linear, sqrt
from .morphisms import (
    Coding,
    MorphicForm,
    Morphism,
    adjacency_matrix,
    apply,
    cyclic_shift,
    drop_special_letter,
    fixed_point,
    hiccup_morphism,
    is_primitive,
    ones_positions,
)
from .sturmian import (
    BeattyParams,
    GeneratorWord,
    MechanicalParams,
    beatty_from_mechanical,
    beatty_term,
    beatty_terms,
    compose,
    format_beatty,
    generator_morphism,
    hiccup_beatty,
    mechanical_word,
    parse_beatty,
    sturmian_decomposition,
    decompose_morphism,
    transformation_fixed_point,
)
from .numeration import (
    DFA,
    NumerationSystem,
    a284753_system,
    accepts,
    binet_check,
    digit_extrema,
    dumont_thomas,
    kimberling_bound,
    kimberling_scan,
    represent,
    value,
    verify_shifted_pair,
)
from .cfrac import (
    CFracSpec,
    HighPrecisionValue,
    asymptotic_intercept,
    check_bds_conjecture,
    check_wythoff_s1,
    metallic_mean,
    remainder_r1,
    remainders,
    shift_iterate,
)
from .catalog import (
    CatalogEntry,
    VerificationReport,
    load_catalog,
    read_bfile,
    verify_all,
    verify_entry,
    write_bfile,
)

__version__ = "0.1.0"
