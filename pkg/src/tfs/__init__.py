"""Typed feature structures: satisfiability by resolution, morph witnesses,
finite models, and a unifier on resolvant-set representations."""

from .errors import (
    InterpretationError,
    MonotonicityError,
    ParseError,
    SignatureError,
    SizeGuardError,
    StructureError,
    TfsError,
    UnknownSymbolError,
)
from .fstruct import (
    FeatureStructure,
    ResolvedFeatureStructure,
    forget,
    format_feature_structure,
    is_resolvant_of,
    isomorphic,
    parse_feature_structure,
    resolved,
    run,
)
from .interp import (
    FiniteInterpretation,
    abstraction,
    format_interpretation,
    parse_interpretation,
    path_eval,
    truth_bounded,
    truth_of,
)
from .morph import MorphAutomaton, approximates, check_morph, morph_to_interpretation, witness
from .resolve import ResolvantSet, gen, res_naive, res_refined, sat, test1, test2
from .signature import Signature, app, check_rational, parse_signature, species_at_least, sub
from .unify import (
    ConstrainedSkeleton,
    merge_skeletons,
    resolve_constrained,
    unify,
    unify_representations,
)

__version__ = "0.1.0"
