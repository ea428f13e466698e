"""Walk through the core objects: a formal context, its derivation
operators, and the enumeration of all formal concepts.
"""
from fcakit import Context, canonical_generation, concept_lattice, enumerate_concepts, to_dot

# Four geometric shapes described by four attributes.
shapes = Context.from_table(
    objects=("equilateral triangle", "right triangle", "rectangle", "square"),
    attributes=("3 vertices", "4 vertices", "right angle", "equilateral"),
    table=[
        [1, 0, 0, 1],
        [1, 0, 1, 0],
        [0, 1, 1, 0],
        [0, 1, 1, 1],
    ])

print("Which attributes do the two triangles share?")
common = shapes.derive_objects([0, 1])
print(" ", shapes.attribute_names(common))

print("Closure of {4 vertices}:")
closed = shapes.close_attributes([1])
print(" ", shapes.attribute_names(closed))

print("\nAll formal concepts (maximal filled rectangles of the table):")
for concept in enumerate_concepts(shapes):
    extent, intent = concept.names(shapes)
    print(f"  {{{', '.join(extent) or ''}}}  <->  {{{', '.join(intent)}}}")

print("\nCanonical generator sequence of the extent {rectangle, square}:")
print(" ", canonical_generation(shapes, frozenset({2, 3})))

lattice = concept_lattice(shapes)
print(f"\nConcept lattice: {len(lattice)} concepts, {len(lattice.covers)} covering arcs")
print("DOT source (render with graphviz):\n")
print(to_dot(lattice, labeling="reduced"))
