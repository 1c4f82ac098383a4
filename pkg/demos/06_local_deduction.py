"""Local arguments: what can meet at a vertex, along an edge, on a barrier.

These are the exact finite checks behind the case analysis for family (iii):
which angle multisets close a vertex, which side-length sums fill a segment,
and which first layers of tiles can sit on a straight base.
"""
from reptiler.exactfield import format_num
from reptiler.localdeduce import (
    PatchProblem,
    edge_fill_solutions,
    enumerate_patches,
    enumerate_vertex_fills,
    gamma_combinations,
    named_angle,
    side_length,
)
from reptiler.quadmodel import parse_instance

q = parse_instance("f3:1/5")
for target in ("PI", "TWO_PI"):
    print(target, [f.as_dict() for f in enumerate_vertex_fills(q, target)])

print("f1:1 has gamma = 2*alpha:", gamma_combinations(parse_instance("f1:1")))

# with a = sqrt(7)/2 irrational, k*a can only be covered by k sides of length a
q7 = parse_instance("f3:1/2")
for k in range(1, 4):
    sols = edge_fill_solutions(q7, k * q7.a)
    print(f"L={k}a:", [s.as_tuple() for s in sols])

for base, left, right in [("1", "hpi", "gamma"), ("1", "hpi", "hpi"), ("a", "hpi", "gamma"), ("a+b", "hpi", "hpi")]:
    prob = PatchProblem(side_length(q, base), named_angle(q, left), named_angle(q, right))
    cands = enumerate_patches(q, prob)
    shown = [[format_num(x) for x in c.lengths] for c in cands]
    print(f"base {base:4s} ends {left}/{right}: {len(cands)} candidate(s) {shown}")
