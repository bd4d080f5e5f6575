"""Exact symbolic machinery for covers of voltage graphs: arborescence
polynomials, voltage Laplacians and their scalar restrictions, cyclotomic
norms, vector-field expansions, and conjecture-scanning harnesses.
"""

from .algebra import (
    Cyclotomic,
    FiniteGroup,
    ReducedGA,
    RingMatrix,
    det_fraction_free,
    det_group_algebra,
    reduced_regular_representation,
)
from .cover import (
    CoverGraph,
    build_cover,
    deck_group,
    gauge_transform,
    is_regular_cover,
)
from .errors import (
    BlockMismatch,
    DivisionByZero,
    GroupMismatch,
    NonAbelianGroup,
    NormNotRational,
    NotDivisible,
    NotEulerian,
    SchemaError,
    SearchSpaceTooLarge,
    VoltageKindMismatch,
    ZeroBaseArborescence,
)
from .experiments import (
    count_euler_circuits,
    euler_ratio,
    expectation_check_exhaustive,
    positivity_scan,
    random_voltage_graph,
    vf_tuple_report,
)
from .graph import (
    Edge,
    VoltageGraph,
    build_graph,
    group_from_spec,
    parse_graph,
    serialize_graph,
)
from .laplacian import (
    laplacian,
    restricted_via_representation,
    restricted_voltage_laplacian,
    triangularize,
    voltage_laplacian,
)
from .poly import FracPoly, IntPoly, VarTable, parse_poly
from .spanning import (
    Arborescence,
    arborescence_polynomial,
    enumerate_arborescences,
    invariance_report,
    ratio_report,
)
from .vecfield import (
    VectorField,
    enumerate_vector_fields,
    negative_vector_field_sum,
    omega,
)

__all__ = [name for name in dir() if not name.startswith("_")]
