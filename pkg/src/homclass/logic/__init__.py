"""First-order formulas: syntax, parsing, model checking and compilers."""

from .compile import (
    REJECT_SENTENCE,
    build_phi_A,
    canonical_conjunction,
    canonical_sentence,
    nesting_forest,
    sentence_to_structure,
    standardize_apart,
    treedepth_of_sentence_bound,
)
from .evaluate import model_check
from .parser import parse
from .syntax import (
    FALSE,
    TRUE,
    And,
    Atom,
    Eq,
    Exists,
    Forall,
    Not,
    Or,
    free_vars,
    is_sentence,
    qr,
    to_text,
)
