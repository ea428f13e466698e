"""Attribute exploration with a scripted expert: the machine proposes
implications, the expert answers from a hidden context it knows, and the
accepted set converges to the hidden context's canonical basis.
"""
from fcakit import Context, duquenne_guigues, format_implication, is_valid
from fcakit.bitset import mask_of, to_frozenset
from fcakit.exploration import ExplorationSession

hidden = Context.from_table(
    ("t1", "t2", "r", "s"), ("a", "b", "c", "d"),
    [[1, 0, 0, 1], [1, 0, 1, 0], [0, 1, 1, 0], [0, 1, 1, 1]])

session = ExplorationSession(hidden.attributes)
step = 0
while not session.finished:
    step += 1
    question = session.pending_implication()
    text = format_implication(question, hidden.attributes)
    if is_valid(hidden, question):
        print(f"{step:2d}. {text:<22} expert: accept")
        session.accept()
    else:
        premise = mask_of(question.premise)
        conclusion = mask_of(question.conclusion)
        for g in range(hidden.n_objects):
            row = hidden.rows[g]
            if row & premise == premise and (conclusion & ~premise) & ~row:
                witness = hidden.attribute_names(to_frozenset(row))
                print(f"{step:2d}. {text:<22} expert: reject, counterexample "
                      f"{hidden.objects[g]} with {witness}")
                session.reject(hidden.objects[g], witness)
                break

print("\nAccepted implications:")
for imp in session.accepted_set():
    print("  " + format_implication(imp, hidden.attributes))

print("\nCanonical basis of the hidden context, for comparison:")
for imp in duquenne_guigues(hidden):
    print("  " + format_implication(imp, hidden.attributes))
