"""patchlab: an exact F2 engine for primitively patchworked real
hypersurfaces.

Build lattice polytopes and primitive triangulations, assemble the
combinatorial T-hypersurface of a sign distribution, and compute its
filtered chain complex, spectral sequence pages, and the numerical
invariants (rank, degeneracy index, iota) — all over F2, with no
floating point anywhere.
"""

from .f2_linalg import COMPILED, F2Matrix, Quotient, Subspace
from .invariants import (InvariantRecord, SpectralData, analyze, iota_omega,
                         page_pairing, rank_ell, verify)
from .patchwork import Patchwork, RealLift, RPRing, THypersurface
from .polytope import LatticePolytope, build_polytope, cube, product, simplex
from .spectral import (FilteredComplexF2, SpectralSequence, compute_pages,
                       degeneracy_index, dualize)
from .triangulation import (SignDistribution, Triangulation,
                            load_triangulation, triangulate_family, viro)
from .tropical import TropicalCoefficients, homology_table

__version__ = "0.1.0"

__all__ = [
    "COMPILED", "F2Matrix", "Quotient", "Subspace",
    "InvariantRecord", "SpectralData", "analyze", "iota_omega",
    "page_pairing", "rank_ell", "verify",
    "Patchwork", "RealLift", "RPRing", "THypersurface",
    "LatticePolytope", "build_polytope", "cube", "product", "simplex",
    "FilteredComplexF2", "SpectralSequence", "compute_pages",
    "degeneracy_index", "dualize",
    "SignDistribution", "Triangulation", "load_triangulation",
    "triangulate_family", "viro",
    "TropicalCoefficients", "homology_table",
    "__version__",
]
