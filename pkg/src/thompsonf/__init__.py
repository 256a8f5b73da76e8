"""Exact computation in Thompson's group F and its relatives.

Elements are reduced spans of binary (or n-ary) forests composed by
pullback; an independent exact piecewise-linear engine over the dyadic
rationals provides the classical model of F and cross-checks the span
arithmetic.  The appendix-side constructions (free operads, the free
monoidal category on a multicategory, FinOrd) live in freecat.
"""

from .dyadic import Dyadic, compare, log2_ratio, pow2
from .errors import (MismatchError, NotAPowerOfTwo, NotASubtree, ParseError,
                     ThompsonError, ValidationError)
from .forests import (Forest, LEAF, Tree, all_forests, caret, cofactors,
                      enumerate_trees, forest_compose, forest_tensor,
                      identity_forest, is_subtree, join, leaf_count, omega,
                      omega_factorization, parse_forest, parse_tree, pullback)
from .group import (Context, GroupElement, from_word, generator, identity,
                    inverse, multiply, random_element)
from .plmaps import (PLMap, evaluate, halving, identity_pl, mu_forest,
                     parse_pl, pl_compose, pl_factorize, pl_inverse, pl_make,
                     pl_tensor, pl_to_span, span_to_pl)
from .spans import (SpanMap, eta, identity_span, parse_span,
                    parse_span_report, span_compose, span_equals,
                    span_inverse, span_make, span_tensor)

__version__ = "0.1.0"
