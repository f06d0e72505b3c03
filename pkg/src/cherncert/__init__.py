"""Certificate-producing exact algebra for pair-class vanishing.

The package proves, by explicit machine-checkable certificates, that
high-degree monomials in the per-puncture pair classes rewrite into
combinations of pivot monomials known to vanish, and checks the exact
rational genericity and section-collection combinatorics that ground the
vanishing geometrically. All arithmetic is exact; every certificate is
verified by an independent expansion.
"""

from .kernel import BACKEND as KERNEL_BACKEND
from .polyring import BaseVariable, ExactRational, FreePolynomial, e
from .chernring import (
    ChernMonomial,
    ChernPolynomial,
    PairClass,
    PunctureRangeError,
    RelationReport,
    SlotClass,
    canonicalize_monomial,
    embed_to_free,
    pivot_monomial,
    verify_relations,
)
from .rewriter import (
    RewriteCertificate,
    RewritePreconditionError,
    rewrite,
    verify_rewrite,
)
from .decomposer import (
    DecompositionCertificate,
    DegreeTooSmallError,
    TermCapExceededError,
    VanishingMonomial,
    choose_r,
    decompose,
    degree_bound,
    dimension,
    enumerate_vanishing,
    pivot_sum,
    verify_decomposition,
)
from .geometry import (
    EigvecCoordSection,
    EmptinessCertificate,
    MatrixEntrySection,
    MissingPairError,
    NonGenericTupleError,
    SectionCollection,
    ShapeMismatchError,
    TemplateMismatchError,
    Token,
    TorusElement,
    TorusTuple,
    build_basic_collection,
    check_generic,
    derive_prop_collection,
    match_nozeros,
    search_generic_tuple,
    standard_generic_tuple,
    switch_move,
    transpose_move,
    verify_emptiness,
)

__version__ = "0.1.0"
