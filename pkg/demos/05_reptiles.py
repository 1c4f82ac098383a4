"""Rep-tile search: can the shape scaled by sqrt(k) be cut into k copies?

EXHAUSTED means the complete search found nothing, which is a proof; BUDGET
would only mean the node limit ran out.
"""
from reptiler.exactfield import qf
from reptiler.geom import polygon, square
from reptiler.quadmodel import parse_instance
from reptiler.tileengine import reptile_search

h = qf(0, "1/2", 3)
shapes = {
    "unit square": square(1),
    "right triangle": polygon((0, 0), (1, 0), (0, 1)),
    "L-tromino": polygon((0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)),
    "sphinx": polygon((0, 0), (3, 0), ("5/2", h), ("3/2", h), (1, 2 * h)),
}
for name, shape in shapes.items():
    r = reptile_search(shape, 4)
    print(f"{name:15s} k=4: {r.status.value:9s} ({r.nodes} nodes)")

for inst in ["f3:1/5", "f3:1/2", "f1:1"]:
    r = reptile_search(parse_instance(inst), 4)
    print(f"{inst:15s} k=4: {r.status.value:9s} ({r.nodes} nodes)")
