"""Exact Segre and Verlinde numbers of sheaf moduli on K3 surfaces.

The package has four layers: an exact truncated-power-series engine over
the rationals (`series`), the Mukai lattice with its pairing and exact
linear algebra (`lattice`), the closed-form Segre and Verlinde series with
the correspondence check (`segre_verlinde`), and the reduction of
moduli-space integral data to Hilbert-scheme data (`reduction`).  A CLI
(`k3mukai` or `python -m k3mukai`) fronts all of it.
"""

from .lattice import (
    FingerprintMatrix,
    MukaiVector,
    QuadraticSpace,
    fingerprint,
    gram_matrix,
    gram_rank,
    hilbert_scheme_vector,
    hyperbolic_plane,
    k3_lattice,
    mukai_pairing,
    mukai_vector_from_chern,
    nondegenerate_reduction,
    point_class,
    span_dim,
    span_isometry,
)
from .reduction import (
    KClassInvariants,
    ModuliData,
    PairingList,
    ReductionTarget,
    dependence_pairings,
    dim2_evaluate,
    hilbert_pairings,
    reduce_to_hilbert,
    segre_cross_check,
)
from .segre_verlinde import (
    CorrespondenceReport,
    SegreParams,
    VerlindeParams,
    build_fg,
    build_vwx,
    check_correspondence,
    segre_number,
    segre_variable_change,
    verlinde_number,
)
from .series import Rational, TruncatedSeries, constant, identity

__version__ = "0.1.0"

__all__ = [
    "CorrespondenceReport",
    "FingerprintMatrix",
    "KClassInvariants",
    "ModuliData",
    "MukaiVector",
    "PairingList",
    "QuadraticSpace",
    "Rational",
    "ReductionTarget",
    "SegreParams",
    "TruncatedSeries",
    "VerlindeParams",
    "build_fg",
    "build_vwx",
    "check_correspondence",
    "constant",
    "dependence_pairings",
    "dim2_evaluate",
    "fingerprint",
    "gram_matrix",
    "gram_rank",
    "hilbert_pairings",
    "hilbert_scheme_vector",
    "hyperbolic_plane",
    "identity",
    "k3_lattice",
    "mukai_pairing",
    "mukai_vector_from_chern",
    "nondegenerate_reduction",
    "point_class",
    "reduce_to_hilbert",
    "segre_cross_check",
    "segre_number",
    "segre_variable_change",
    "span_dim",
    "span_isometry",
    "verlinde_number",
]
