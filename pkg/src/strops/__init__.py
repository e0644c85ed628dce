"""Exact computer algebra for string-topology structures on manifolds and classifying spaces."""

from .catalog import (
    ManifoldData,
    PontrjaginRing,
    VirtualBundleTwist,
    cpn,
    fiber_monoid,
    grassmannian2,
    parse_fiber,
    parse_space,
    product,
    rpn,
    sphere,
    standard_space,
)
from .errors import StropsError
from .graded_algebra import (
    F2,
    ZZ,
    Coefficients,
    GradedElement,
    RingPresentation,
    make_ring,
    tensor,
)
from .pro_tower import o2_comparison, o2_tower, s1_tower, tower_limit, umkehr
from .qops import browder, q_context, q_op, relation_check
from .steenrod import right_action, sq, twisted_sq, wu_surjectivity_test
from .string_product import (
    cjy_e2_page,
    intersection_ring,
    module_structure,
    string_ring,
    trivial_model,
    verify_structure_homs,
)

__version__ = "0.1.0"

__all__ = [
    "Coefficients", "F2", "ZZ", "GradedElement", "ManifoldData", "PontrjaginRing",
    "RingPresentation", "StropsError", "VirtualBundleTwist", "browder", "cjy_e2_page",
    "cpn", "fiber_monoid", "grassmannian2", "intersection_ring", "make_ring",
    "module_structure", "o2_comparison", "o2_tower", "parse_fiber", "parse_space",
    "product", "q_context", "q_op", "relation_check", "right_action", "rpn",
    "s1_tower", "sphere", "sq", "standard_space", "string_ring", "tensor",
    "tower_limit", "trivial_model", "twisted_sq", "umkehr", "verify_structure_homs",
    "wu_surjectivity_test",
]
