"""Classification, counting, and construction of Lamé equations with finite
monodromy via spherical geometry.

Submodules:
  geom       quaternion/SU(2) utilities, group closure and identification
  solids     Platonic solid data and marked point configurations
  triangles  spherical triangles, balance, hemisphere moves, the atlas
  counting   exact counting formulas with brute-force oracles
  monodromy  monodromy groups and (s, t) parameters
  dessins    ramification passports and permutation-pair dessins
  belyi      numeric Newton solver for genus-0 Belyi maps
  goldens    bundled reference tables
"""

from .geom import (
    ClosureLimitError,
    FiniteMatrixGroup,
    InvalidInputError,
    close_group,
    identify_group,
)
from .solids import SolidSpec, build_n_gon, build_solid
from .triangles import (
    AtlasEntry,
    SphericalTriangle,
    atlas_table,
    attach_hemisphere,
    balance_class,
    decompose_balanced,
    enumerate_basic,
    exists_triangle,
    realize_geometry,
)
from .counting import (
    CountReport,
    CountRow,
    brute_force_family,
    count_family,
    dahmen_ordinary,
    dahmen_projective,
    dihedral_count,
    lattice_oracle,
    region_weight,
    total_for_n,
)
from .monodromy import (
    MonodromyParams,
    MonodromyProfile,
    dihedral_groups_from_params,
    groups_from_triangle,
    params_from_lengths,
    params_from_triangle,
    shift_params,
)
from .dessins import (
    DessinMap,
    Passport,
    check_riemann_hurwitz,
    enumerate_dessins,
    export_graph,
    passport_for,
)
from .belyi import (
    CertificationError,
    Configuration,
    SolveResult,
    certify,
    newton_solve,
    phi_residual,
)

__version__ = "0.1.0"

__all__ = [
    "AtlasEntry",
    "CertificationError",
    "ClosureLimitError",
    "Configuration",
    "CountReport",
    "CountRow",
    "DessinMap",
    "FiniteMatrixGroup",
    "InvalidInputError",
    "MonodromyParams",
    "MonodromyProfile",
    "Passport",
    "SolidSpec",
    "SolveResult",
    "SphericalTriangle",
    "atlas_table",
    "attach_hemisphere",
    "balance_class",
    "brute_force_family",
    "build_n_gon",
    "build_solid",
    "certify",
    "check_riemann_hurwitz",
    "close_group",
    "count_family",
    "dahmen_ordinary",
    "dahmen_projective",
    "decompose_balanced",
    "dihedral_count",
    "dihedral_groups_from_params",
    "enumerate_basic",
    "enumerate_dessins",
    "exists_triangle",
    "export_graph",
    "groups_from_triangle",
    "identify_group",
    "lattice_oracle",
    "newton_solve",
    "params_from_lengths",
    "params_from_triangle",
    "passport_for",
    "phi_residual",
    "realize_geometry",
    "region_weight",
    "shift_params",
    "total_for_n",
]
