"""Combinatorics of the tail loci of genus-1 stable maps to projective space."""

from .branches import (
    BlowupSchedule,
    Stage,
    blowup_schedule,
    branch_lattice_dot,
    enumerate_branches,
    is_admissible,
    join,
    meet,
    separation_stage,
    tail_count,
)
from .dualgraph import (
    ContractedSubcurve,
    DualGraph,
    GraphError,
    ValidationReport,
    Vertex,
    arithmetic_genus,
    maximal_contracted_subcurve,
    validate,
)
from .smoothcheck import (
    ConfigurationError,
    ParamTail,
    TangentConfig,
    Verdict,
    is_smoothable,
    rank,
    shared_attachment_point,
    tangent_vector,
)
from .strata import (
    EmptyMainLocusWarning,
    ModuliContext,
    StratumIndex,
    dimension_obstructed,
    enumerate_strata,
    generically_in_main,
    main_dimension,
    stratum_dimension,
)

__version__ = "0.1.0"
