"""The three one-parameter families of cyclic quadrilaterals.

Each constructor returns exact vertices, side lengths and angle rotors
(cos, sin).  The invariant checker recomputes everything from the vertices.
"""
from reptiler.exactfield import format_num
from reptiler.quadmodel import check_invariants, classify, lemma1_holds, lemma2_holds, parse_instance

for inst in ["f1:1", "f1:3/2", "f2:19/10", "f3:1/5", "f3:1/2", "f3ab:(2+2√6)/5,(4−√6)/5"]:
    q = parse_instance(inst)
    sides = ", ".join(f"{k}={format_num(v)}" for k, v in q.sides.items())
    print(f"{inst:26s} {classify(q).value:10s} {sides}")
    print(f"{'':26s} invariants ok: {not check_invariants(q)}, lemma1: {lemma1_holds(q)}, lemma2: {lemma2_holds(q)}")

# family (ii) at a = 19/10 needs sqrt 13 for d and sqrt 3 on top for the coordinates
q = parse_instance("f2:19/10")
print("\nf2:19/10  d =", format_num(q.d))
print("          D =", format_num(q.D.x), ",", format_num(q.D.y))
