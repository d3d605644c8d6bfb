"""Exact-arithmetic toolkit for well-rounded lattices, sphere packings and
deformed root lattices."""

from .errors import (
    DegeneracyError,
    DomainError,
    ResourceError,
    UndecidableError,
    WrlabError,
)
from .matrices import (
    ExactMatrix,
    Lattice,
    dual,
    gram_of,
    hnf,
    index_of,
    lattices_equal,
    recognize_scaled_An,
    recognize_scaled_identity,
    volume,
)
from .scalar import QuadScalar, compare_quad, sqrt_exact
from .svp import SvpReport, enumerate_below, flatness_factor, svp_report, theta_truncated
from .tame import (
    SublatticeSpec,
    TameParams,
    WrClassification,
    classify_wr,
    construct_doubled_e8_integral,
    construct_An_from_Zn,
    construct_An_general,
    construct_dim9_densest,
    phi_image_generator,
    phi_sublattice_gram,
    sublattice_center_density,
    tame_dual,
    tame_gram,
)
from .deform import (
    PellTriple,
    dn_center_density,
    dn_generator,
    dn_volume,
    e8_center_density,
    e8_generator,
    e8_volume,
    hex_center_density,
    hex_generator,
    integral_scaled,
    pell_search,
)

__version__ = "0.1.0"
