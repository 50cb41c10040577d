# Quadratic forms package
from quadforms.forms import (
    Form,
    SignedForm,
    UniMat,
    apply,
    automorphs,
    disc,
    in_level_set,
    lift_sl2,
    reduce,
    reduced_reps,
    root,
    sl2_equivalent,
)
