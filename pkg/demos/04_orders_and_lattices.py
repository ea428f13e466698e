"""Relations, posets, and finite-lattice analysis: property flags, covering
relations, topological sorting, and the pentagon/diamond tests.
"""
from fcakit import (Poset, Relation, check_properties, covering_relation,
                    is_distributive, is_modular, lattice_from_poset,
                    topological_sort, transitive_closure)

chain = Relation.from_pairs(4, [(0, 1), (1, 2), (2, 3)])
print("Chain 0->1->2->3 before closure:", check_properties(chain).transitive)
closed = transitive_closure(chain, reflexive=True)
print("After reflexive-transitive closure:", check_properties(closed).flags())

poset = Poset(closed)
print("Covers of the chain:", sorted(covering_relation(poset).pairs()))
print("Topological sort:", topological_sort(poset))


def bounded(n, pairs):
    rel = transitive_closure(Relation.from_pairs(n, pairs), reflexive=True)
    return lattice_from_poset(Poset(rel))


pentagon = bounded(5, [(0, 1), (1, 3), (3, 4), (0, 2), (2, 4)])
diamond = bounded(5, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)])

for name, lattice in (("pentagon", pentagon), ("diamond", diamond)):
    dist = is_distributive(lattice)
    mod = is_modular(lattice)
    print(f"{name}: distributive={dist.holds} modular={mod.holds} "
          f"witness={dist.sublattice_witness or mod.sublattice_witness}")
