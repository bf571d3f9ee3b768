"""Exact quantization of degree-r plane spectral data into differential
operators, geometry of the associated singular curves, the differential
recursion for free energies, and all-order WKB expansions, over exact
rational and radical arithmetic throughout.
"""

from .errors import DomainError, InternalInconsistencyError, QuantumCurvesError
from .exactnum import HPoly, RadicalScalar, normalize_radicand
from .ratfunc import Polynomial, RationalFunction, parse_rational_function
from .puiseux import PuiseuxSeries
from .multipoly import MPoly
from .diffalg import (
    DiffPoly,
    ScalarOperator,
    YPoly,
    parse_operator,
    parse_ypoly,
)
from .tds import (
    HiggsMatrix,
    TdsTriple,
    char_poly,
    higgs_field,
    oper_transition,
    s_values,
    tds_generators,
    xplus_power,
)
from .quantize import (
    EliminationTable,
    extract_omegas,
    flat_section_elimination,
    is_equivariant,
    quantum_curve,
    semiclassical_limit,
)
from .spectral import (
    DivisorData,
    GenusReport,
    SingularityClass,
    discriminant_from_rational,
    genus_report,
    normalization_chart,
    singularity_class,
)
from .toprec import (
    FreeEnergyTable,
    SpectralData,
    airy_curve,
    build_free_energies,
    dvv_oracle,
    initial_F03,
    initial_F11,
    intersection_numbers,
    omega_kernel,
    pde_recursion_step,
    principal_specialization,
)
from .wkb import WkbExpansion, airy_selfconsistency, wkb_expand, wkb_expand_z

__all__ = [name for name in dir() if not name.startswith("_")]
