"""Renormalization and equidistribution diagnostics for compact-group
extensions of interval exchange transformations."""

from .errors import (
    DegenerateLengths,
    DescriptorMismatch,
    IetextError,
    IndexOutOfRange,
    IterateCapExceeded,
    LengthMismatch,
    MismatchedBase,
    NonPositiveLength,
    OutOfDomain,
    ReduciblePermutation,
    UnsupportedLabel,
)
from .iet import IET, Permutation, make_iet
from .groups import (
    GTuple,
    GroupElement,
    ProductGroup,
    Representation,
    SU2,
    Torus,
    U1,
    character,
    conj_min_distance,
    haar_sample,
    haar_tuple,
    identity_tuple,
    nielsen_alpha,
    nielsen_beta,
    parse_group,
    rep_matrix,
)
from .rauzy import (
    ExtendedState,
    RauzyRule,
    RenormPath,
    Substitution,
    VisitMatrix,
    check_P1,
    check_P2,
    extended_step,
    gamma_apply,
    rauzy_step,
    renormalize,
    return_word,
    zorich_step,
)
from .extension import (
    Observable,
    SimpleFunction,
    SkewPoint,
    WalkRecord,
    birkhoff_average,
    correlation_cesaro,
    skew_apply,
    walk,
)
from .obstruction import (
    ConjReport,
    FixedVectorReport,
    fixed_vector_obstruction,
    track_conjugacy,
    track_fixed_vector,
)

__version__ = "0.1.0"
