"""Exact quadratic-form theory over finite field models.

A field model is a finite square-class group with a distinguished -1 and a
symmetric bilinear quaternion symbol into a finite GF(2)-space.  From that
data the package decides isotropy, isometry, Witt classes, the torsion
subgroup, supreme torsion forms and the invariants u, p, h.
"""

from .catalog import CATALOG_NAMES, catalog_model
from .extensions import laurent_extend, residue_decompose, springer_check, tower
from .forms import (
    QuadraticForm,
    anisotropic_part,
    canonicalize,
    form,
    is_isotropic,
    isometric,
    rep_set,
    signature,
    subform_test,
    witt_decompose,
)
from .invariants import (
    LowerBound,
    hasse_number,
    height,
    invariant_report,
    pythagoras_number,
    sums_chain,
    u_invariant,
)
from .model import FieldModel, Ordering, enumerate_orderings, positive_cone, validate_model
from .modelfile import load_model, serialize_model
from .pfister import pfister_build, pfister_recognize
from .realmax import is_2_real_maximal, pfister_pure_criterion
from .witt import (
    WittClass,
    consistency_flags,
    is_torsion,
    supreme_search,
    torsion_subgroup,
    verify_supreme_properties,
    witt_class,
    witt_order,
    witt_sum,
)

__all__ = [name for name in dir() if not name.startswith("_")]
