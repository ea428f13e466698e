"""Compute the two classic implication bases of a context and use them as
closure engines.
"""
from fcakit import (Context, duquenne_guigues, format_implication, lin_closure,
                    proper_premises, simp_closure)

shapes = Context.from_table(
    ("t1", "t2", "r", "s"), ("a", "b", "c", "d"),
    [[1, 0, 0, 1], [1, 0, 1, 0], [0, 1, 1, 0], [0, 1, 1, 1]])

dg = duquenne_guigues(shapes)
print("Duquenne-Guigues basis (minimum number of implications):")
for imp in dg:
    print("  " + format_implication(imp, shapes.attributes))

direct = proper_premises(shapes)
print("\nCanonical direct basis (one deductive pass closes any set):")
for imp in direct:
    print("  " + format_implication(imp, shapes.attributes))

start = shapes.attribute_indices("cd")
print("\nClosing {c, d} under the DG basis:")
print("  simp_closure:", shapes.attribute_names(simp_closure(start, dg)))
print("  lin_closure :", shapes.attribute_names(lin_closure(start, dg)))
print("  (.)''       :", shapes.attribute_names(shapes.close_attributes(start)))
