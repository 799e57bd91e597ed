"""Prime orthogeodesics, concave cores and gap-measure identities on hyperbolic surfaces."""
from .collars import collar_width, concave_core, core_boundary_length, loop_penetration_distance
from .enumeration import EnumerationCutoff, OrthoClass, describe, enumerate_classes, is_prime
from .hypcore import Geodesic, Horocycle, MoebiusMap, classify_isometry, perpendicular_between
from .identity import basmajian_convergence_report, counting_report, identity_report
from .measures import basmajian_measure, gap_measure_ortholength, gap_measure_traces
from .raysim import RayTracer, gap_intervals, sample_rays
from .surfaces import BoundaryShape, Grading, admissibility_check, build_named, build_pants, parse_surface

__version__ = "0.1.0"

__all__ = [
    "BoundaryShape",
    "EnumerationCutoff",
    "Geodesic",
    "Grading",
    "Horocycle",
    "MoebiusMap",
    "OrthoClass",
    "RayTracer",
    "admissibility_check",
    "basmajian_convergence_report",
    "basmajian_measure",
    "build_named",
    "build_pants",
    "classify_isometry",
    "collar_width",
    "concave_core",
    "core_boundary_length",
    "counting_report",
    "describe",
    "enumerate_classes",
    "gap_intervals",
    "gap_measure_ortholength",
    "gap_measure_traces",
    "identity_report",
    "is_prime",
    "loop_penetration_distance",
    "parse_surface",
    "perpendicular_between",
    "sample_rays",
]
