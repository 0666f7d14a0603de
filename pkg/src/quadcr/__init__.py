"""Discrete complex analysis on quad-graphs from genus-zero spectral data.

Public surface re-exported from the submodules:

* :mod:`quadcr.quadgraph`  -- quad-graphs, lattice labelings, fixtures
* :mod:`quadcr.spectral`   -- marked-point data and the discrete exponential
* :mod:`quadcr.weights`    -- face coefficients, weight functions, embeddings
* :mod:`quadcr.operators`  -- Laplacian, Cauchy-Riemann residuals, extension
* :mod:`quadcr.dirichlet`  -- boundary-value problems inside a cycle
* :mod:`quadcr.positivity` -- circle order, consistency criterion, cross-check
"""

from . import errors
from .quadgraph import (
    Part,
    QuadGraph,
    ZdLabeling,
    double_from_planar,
    generate_fixture,
    integrate_labeling,
)
from .spectral import (
    Jet,
    SpectralData,
    WaveValue,
    check_central_symmetry,
    check_reality_condition,
    dual_wave,
    half_circle_order,
    leading_coeff,
    leading_coeff_dual,
    local_parameter,
    local_parameter_dual,
    marked_point_density,
    residue_pairing,
    wave,
    wave_jet,
)
from .weights import (
    FaceCoefficients,
    WeightFunction,
    embed_quasicrystal,
    face_coefficients,
    weight_function,
)
from .operators import apply_laplacian, cr_residual, extend_to_holomorphic
from .dirichlet import (
    DirichletProblem,
    Side,
    check_maximum_principle,
    region_from_cycle,
    solve,
)
from .positivity import (
    AdjacencyCase,
    ConsistencyReport,
    CriterionReport,
    OvalOrder,
    between,
    check_criterion,
    check_positive_consistency,
    classify_adjacent_faces,
    oval_order,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
