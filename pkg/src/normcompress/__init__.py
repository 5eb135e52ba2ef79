"""Normal compressions of normal matrices and higher-rank numerical ranges."""
from ._backend import BACKEND
from .bset import (
    BDescription, CurveTrace, FiberPolytope, PointCloud, SimplexPoint, Wedge, b_curve, b_of_a_N3,
    b_of_a_N4, b_of_a_t, continuity_probe, fiber_extreme_points, fiber_lipschitz_constant,
    sample_b_of_a, starfish,
)
from .config import TOL, Tolerances, make_rng
from .errors import (
    BoundaryAmbiguous, BudgetExceeded, GenericityError, PreconditionError, VerificationError,
)
from .hrnr import SweepConfig, lambda_k_hermitian, lambda_k_lisze, lambda_k_normal
from .nnc import Ellipse, numerical_range_ellipse, sample_eigenvalue_pinned_compressions, williams_tangency_check
from .normcomp import (
    PartitionWitness, construct_interlacing_compression, construct_partition_compression,
    construct_rank2_witness, fanpall_collinear_alternating, interlacing_check, necessary_condition_check,
)
from .numkit import Frame, compress, haar_random_frame, hermitian_eigenvalues, orthonormal_complement_basis
from .planegeom import Polygon, convex_hull, hausdorff, intersect_polygons

__version__ = "0.1.0"
