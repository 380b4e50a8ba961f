"""Exact flexion calculus on bimoulds, double shuffle checks, and polar lifts.

The package is organised bottom-up:

* :mod:`flexion.exactalg` - rational functions with linear-form denominators
* :mod:`flexion.bimould` - length-graded components, unary operators, mu
* :mod:`flexion.flexops` - binary flexion actions, ari/ila brackets,
  exponentials, the lower-layer action
* :mod:`flexion.dshuffle` - sequence expansions and membership predicates
* :mod:`flexion.constructions` - polar objects, dilators, adjoint series,
  the bracket lifting
* :mod:`flexion.harness` / :mod:`flexion.cli` - named exact checks
"""

from .bimould import (
    Bimould,
    LayerMismatchError,
    NotInvertibleError,
    apply_unary,
    bm_equal,
    first_difference,
    flat,
    invmu,
    linear_combine,
    mu,
    sharp,
    to_lower_layer,
    to_upper_layer,
)
from .constructions import (
    NotGrouplikeConstantError,
    NotLengthHomogeneousError,
    adari_dilator,
    brown_lift,
    brown_lift_closed_form,
    brown_lift_linear,
    darapir_closed_form,
    dilator_of,
    diri_par,
    generalized_lift,
    mould_from_dilator,
    pic,
    polar_unit,
    psi0,
    witt_generator,
    witt_generators,
)
from .dshuffle import (
    FormalSeqSum,
    OverlappingIndicesError,
    TruncationExceededError,
    eval_on_sum,
    harmonic_expand,
    is_ds,
    is_ls,
    is_mantar_invariant,
    shuffle_expand,
)
from .exactalg import (
    LinForm,
    Poly,
    Q,
    RatFun,
    ZeroDenominatorError,
    parse_var,
    uvar,
    var_name,
    vvar,
    xvar,
)
from .flexops import (
    NotLUError,
    amit,
    anit,
    ari,
    arit,
    axit,
    exp_ad_ari,
    expari,
    ihara_action,
    ihara_bracket,
    ila,
    ilat,
    preari,
    preila,
)
from .harness import (
    CheckSpec,
    UnknownCheckError,
    check_names,
    describe_check,
    gen_random_bimould,
    run_check,
    run_many,
)
from .report import CheckReport, Failure

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
