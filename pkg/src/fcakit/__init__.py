"""Formal concept analysis toolkit."""

from .concepts import (Concept, ConceptLattice, DelayStats, canonical_generation,
                       concept_lattice, covering_relation as concept_covering_relation,
                       enumerate_concepts, iter_concepts, lattice_join, lattice_meet,
                       measure_delay, to_dot)
from .contexts import (Context, ManyValuedContext, build_kn, build_kw, clarify,
                       functional_dependency_holds, read_burmeister, read_csv_context,
                       read_csv_many_valued, reduce_attributes, reduce_objects, scale,
                       sort_by_cardinality, write_burmeister, write_csv_context)
from .errors import (ExplorationError, FcaError, FormatError, NotAClosureOperatorError,
                     NotALatticeError, NotAnEquivalenceError, NotAPartialOrderError)
from .implications import (Hypergraph, Implication, ImplicationSet, arrow_down,
                           duquenne_guigues, follows_semantically, format_implication,
                           is_pseudo_intent, is_valid, lectic_closed_sets, lin_closure,
                           make_implication, minimal_generators, minimal_transversals,
                           next_closure, nontrivial_minimal_generators,
                           parse_implications, proper_premises, pseudo_intents,
                           respects, simp_closure)
from .lattices import (ClosureSystem, FiniteLattice, closure_system_to_operator,
                       irreducibles, is_distributive, is_modular, lattice_from_poset,
                       operator_to_system, verify_axioms)
from .relations import (Partition, Poset, Relation, check_properties, compose,
                        complement, covering_relation, equivalence_classes, identity,
                        inverse, kernel, linear_extensions, order_filter, order_ideal,
                        read_relation, topological_sort, transitive_closure, universal,
                        write_relation)

__version__ = "0.1.0"
