"""dswarp: warped-convolution deformations of finite-mode CAR field nets.

Exact quaternionic Spin(1,4) computations, de Sitter wedge geometry, finite
Jordan-Wigner Fock models with U(1) gauge symmetry, the charge-sector
deformation formula with an oscillatory-integral oracle, and theorem-level
verification suites.
"""

__version__ = "0.1.0"

from .car_fock import (FockOperator, OneParticleModel, boost_unitary, charge_projector,
                       cospinor, default_model, field_B, gauge_unitary, grading_Y,
                       quasifree_npoint, spinor, twist_Z, wedge_subalgebra_basis)
from .deformation import (DeformationContext, covariance_transform, rieffel_product,
                          warp, warp_inverse_check, warp_oscillatory)
from .geometry import embed_point, extract_point, gamma, minkowski_form
from .quaternion import Quaternion, QuatMatrix2
from .spin_group import (SpinElement, abelian_flow, boost_base, boost_cover,
                         covering_hom, lie_bracket, reflection_base, reflection_cover,
                         reflection_obstruction_check)
from .verification import (CheckReport, build_net, causal_borchers_axioms,
                           check_twisted_locality, fixed_point_residual,
                           inequivalence_witness)
from .wedges import (Wedge, causal_complement, edge_points, inclusion_rigidity_probe,
                     wedge_contains)

__all__ = [
    "__version__",
    "Quaternion", "QuatMatrix2",
    "minkowski_form", "gamma", "embed_point", "extract_point",
    "SpinElement", "covering_hom", "boost_cover", "boost_base",
    "reflection_base", "reflection_cover", "lie_bracket", "abelian_flow",
    "reflection_obstruction_check",
    "Wedge", "wedge_contains", "causal_complement", "edge_points",
    "inclusion_rigidity_probe",
    "OneParticleModel", "FockOperator", "default_model", "field_B", "spinor",
    "cospinor", "gauge_unitary", "charge_projector", "boost_unitary", "twist_Z",
    "grading_Y", "quasifree_npoint", "wedge_subalgebra_basis",
    "DeformationContext", "warp", "warp_oscillatory", "rieffel_product",
    "warp_inverse_check", "covariance_transform",
    "CheckReport", "build_net", "check_twisted_locality", "fixed_point_residual",
    "inequivalence_witness", "causal_borchers_axioms",
]
