"""Exhaustive tiling search at the canonical corner.

The square of side a+b has exactly the pinwheel and its mirror image as
tilings; the 2x1 block of such squares only has tilings that split along the
middle line.
"""
from reptiler.geom import rectangle, region_of, square
from reptiler.quadmodel import parse_instance
from reptiler.tileengine import Mode, SearchConfig, enumerate_corner_placements, tile_region

q = parse_instance("f3:1/5")
h = q.a + q.b
sq = region_of(square(h))

first = enumerate_corner_placements(sq, q.polygon())
print("placements at the first corner:", len(first))

res = tile_region(sq, q.polygon(), SearchConfig(mode=Mode.ALL))
print(f"square: {res.count} tilings, {res.nodes} nodes, exhausted={res.exhausted}")

block = region_of(rectangle(2 * h, h))
res = tile_region(block, q.polygon(), SearchConfig(mode=Mode.ALL))
split = all(
    all(v.x <= h for v in p.polygon.vertices) or all(v.x >= h for v in p.polygon.vertices)
    for t in res.tilings
    for p in t.placements
)
print(f"2x1 block: {res.count} tilings, every tile on one side of x=a+b: {split}")

# the area quotient alone rules out the unit square
print("unit square:", tile_region(region_of(square(1)), q.polygon()).count, "tilings")
