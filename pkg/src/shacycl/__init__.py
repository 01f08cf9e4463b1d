"""shacycl: cyclic Tate-Shafarevich groups of integral G-lattices.

Exact integer linear algebra (Smith and Hermite forms), finite groups as
multiplication tables, G-lattices, normalized-cochain group cohomology,
and Sha^2_cycl(G, M) for multinorm character lattices.
"""
from .cohomology import CohomologyGroup, cyclic_hn_via_norm, differential, h0, hn, restriction
from .glattice import GLattice, direct_sum, multinorm_lattice, perm_lattice, restrict, trivial
from .groups import (
    FiniteGroup,
    Subgroup,
    all_cyclic_subgroups,
    all_subgroups,
    cyclic,
    direct_product,
    elementary_abelian,
    maximal_cyclic_subgroups,
    subgroup_from_generators,
)
from .intlin import FinAbGroup, FinAbMap, IntMatrix, cokernel_structure, fin_ab_kernel, hnf, kernel_basis, snf, solve
from .multinorm import MultinormSpec, check_theorems, expected_sha, line_coefficients, prim_of, validate
from .sha import ShaResult, certify, sha2_cycl

__version__ = "0.1.0"
