"""Exact homology of finite group actions on finite chain complexes.

Invariant chains, quotients, fixed sets, the norm map, the long exact
sequence linking them, hypercohomology of cyclic groups with its two
spectral sequences, and checks of the classical fixed-point theorems.
"""

from .abelian import (AbelianGroup, GroupHom, IntMatrix, Presentation, SmithForm, cokernel,
                      hom_on_presentations, kernel_basis, smith_normal_form, subquotient)
from .complexes import (ChainComplex, ChainMap, EquivariantChainComplex, FiniteGroup,
                        SignedAction, make_complex, restrict_action, tensor_product, validate)
from .errors import EquichainError
from .functors import (coinvariant_complex, fixed_complex, invariant_complex, norm_map,
                       orbit_basis, quotient_D)
from .homology import (Coeff, GradedGroup, homology, homology_action, i_star, induced_map,
                       invariant_homology)
from .hyper import (SpectralPage, collapse_check, cyclic_cohomology, e_infinity, page_I,
                    page_II, s_groups)
from .les import build_les, check_exact
from .report import Report
from .simplicial import SimplicialGComplex, barycentric_subdivision, join, to_chain_complex
from .spaces import builtin, fuzz
from .theorems import conner_check, coprime_check, free_action_check, smith_check

__version__ = "0.1.0"
