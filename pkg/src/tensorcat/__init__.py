"""tensorcat: computations in braided unitary fusion categories."""

from .errors import (PreconditionError, StructuralError, TensorcatError,
                     ValidationFailure)
from .fusion_ring import (FPDimData, FusionRing, HypergroupView,
                          deligne_product, fp_dimensions, hypergroup_coeffs,
                          opposite_ring, validate_fusion_ring)
from .category_data import (CategoryData, FSymbolSet, QuadraticForm,
                            RSymbolSet, deligne_product_data, kappa_of,
                            load_category, monoidal_opposite,
                            pointed_from_quadratic_form, reverse_braiding,
                            save_category, validate_category, verify_hexagon,
                            verify_pentagon)
from .catalog import catalog_category, catalog_names
from .diagram_eval import (DiagramExpr, MorphismValue, categorical_trace,
                           evaluate, parse_diagram, typecheck)
from .braided_analysis import (CharacterTable, SMatrix, SubcategoryRestriction,
                               TwistData, find_centralizing_object,
                               gamma_characters, is_nondegenerate,
                               muger_centralizer, restriction_hom, s_matrix,
                               twists, verify_hypergroup_hom)
from .algebra import (AlgebraObject, QSystemReport, algebra_dim,
                      canonical_algebra, group_algebra, is_commutative,
                      is_connected, load_algebra, save_algebra,
                      solve_support_algebra, symmetric_enveloping,
                      trivial_algebra, verify_qsystem)
from .local_modules import (CondensedData, ModuleObject,
                            condensation_identity_check,
                            enumerate_local_modules, is_local, load_module,
                            local_double_braid_trace, local_fusion,
                            regular_module, save_module, verify_module)
from .center_tube import (CenterData, CenterObject, TubeAlgebra,
                          build_tube_algebra, center_global_checks,
                          decompose_center, half_braiding_check,
                          lagrangian_algebra, theorem_c_shadow)

__version__ = "0.1.0"
