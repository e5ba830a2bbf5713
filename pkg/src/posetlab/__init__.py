"""Poset dimension, weak coloring numbers and the extremal constructions around them."""

from .bounds import (BoundValue, dim_lower_bound_construction, dim_upper_bound, theorem3_threshold,
                     wcol_bound)
from .errors import (BudgetExceededError, ColorCollisionError, CycleError, DomainError,
                     InternalProofViolation, NotIncomparableError, NotReversibleError, ParseError,
                     PosetlabError, PreconditionError, SizeLimitError)
from .formats import format_dot, format_poset, format_td, parse_poset, parse_td
from .generators import (TreeDecomposition, gen_kelly, gen_pht, gen_standard_example,
                         gen_subdivided_standard, theorem11_instance, verify_tree_decomposition)
from .graph import Graph
from .poset import Poset, antichain, chain, from_cover_relations, random_poset
from .realizer import greedy_coloring, theorem2_partition
from .reversibility import (brute_force_dim_oracle, dim_exact, dimension, find_alternating_cycle,
                            reversing_extension, verify_realizer)
from .support import find_support_element, lemma6_partition
from .wcol import VertexOrder, choose_order, wcol_exact, wcol_heuristic, weak_reach

__version__ = "0.1.0"
