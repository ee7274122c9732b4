"""Exact Kauffman bracket skein theory on tangle words.

Tangle words are reduced to Temperley-Lieb normal form, links get their
bracket polynomial, bilinear forms give representations that extend the
bracket, and the unitary-crossing obstruction can be checked directly.
"""

from .errors import (
    ArityError, ArityMismatch, DeltaMismatch, DSLSyntaxError, InvalidBlock, NotALink,
    NotAUnit, NotInvertible, RingError, RingMismatch, SkeinError, TooManyCrossings,
    UnsupportedRing,
)
from .ring import (
    A, COMPLEX, DELTA, GAUSSIAN, I, LAURENT, RATIONAL, Gaussian, LaurentPoly,
    QuadraticNumber, delta_of, evaluate_poly, parse_point,
)
from .matrix import Matrix
from .tangle import (
    Cap, Cup, Generator, Id, TangleExpr, TangleWord, Xm, Xp, compose, tensor, tensor_all,
    validate, word, writhe,
)
from .tl import PlanarMatching, TLElement, matching_word, tl_basis, tl_compose, tl_tensor
from .skein import (
    SYMBOLIC, SkeinContext, bracket, expand_to_tl, framing_normalized, kink_unit,
    quotient_equal, statesum_oracle,
)
from .rep import (
    Representation, asymmetry, check_delta, evaluate_functor, evaluate_word, form_inverse,
    make_representation, rank_n_form,
)
from .forms import (
    BlockSolution, CanonicalBlock, block_matrix, block_stats, forms_equivalent,
    rational_canonical_form, solve_blocks,
)
from .unitary import CrossingData, crossing_matrices, is_unitary, norm_bound_report
from .dsl import parse, parse_word, to_dsl
from .links import BUILTINS, RELATIONS, link_corpus, relation_suite

__version__ = "0.1.0"
