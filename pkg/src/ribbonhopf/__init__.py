"""Ribbon graphs of the planar quartic matrix model, their Connes-Kreimer
Hopf algebra, the combinatorial Dyson-Schwinger equation and Feynman rules."""

from .perm_core import Permutation, compose, cycles, inverse
from .ribbon import (
    DualMap,
    MultiTraceGraph,
    RibbonGraph,
    Topology,
    canonical_form,
    completion,
    contract_pairs,
    decompletion,
    dual,
    empty_graph,
    is_bridgeless,
    is_connected,
    is_fully_simple,
    is_isomorphic,
    make_graph,
    parse,
    residue,
    serialize,
    skeleton,
    topology,
    vertex_graph,
)
from .enumeration import EnumKey, Filter, ResourceGuardError, counting_series, enumerate_graphs, verify_counts
from .hopf import (
    VERTEX,
    GraphPoly,
    SubgraphSpec,
    TensorPoly,
    admissible_subgraphs,
    antipode,
    coaction,
    contract,
    coproduct,
    counit,
    pi_project,
    reduced_coproduct,
)
from .dse import bivalent_refinements, dse_solve, graft, insert, insertion_isomorphisms, is_primitive, maxf, primitive_family
from .subalgebra import (
    CoeffPolynomial,
    cograph_loop_spectrum,
    hochschild_check,
    p_poly,
    q_e,
    q_v,
    verify_cn_coproduct,
    verify_monomial_coproduct,
)
from .amplitudes import (
    Spectrum,
    amplitude,
    analytic_report,
    anomalous_dimension,
    correlation_series,
    dse2_check,
    hyp_R,
    lin_eq_residual,
    spectral_dimension,
    ward_w4p_check,
)

__version__ = "0.1.0"
