import dataclasses
import json
from pathlib import Path

import pytest
from shapely.geometry import Polygon as ShPolygon

from oracles import fl, isometries_at_corner, tiling_float_check
from reptiler.exactfield import qf, rat
from reptiler.geom import (
    Isometry,
    Point,
    Region,
    compose_isometries,
    polygon,
    polygon_area,
    rectangle,
    region_area,
    region_difference,
    region_of,
    square,
)
from reptiler.quadmodel import parse_instance
from reptiler.serialize import tiling_to_json
from reptiler.tileengine import (
    Mode,
    NodeBudgetExceeded,
    ReptileStatus,
    ScaleOutOfField,
    SearchConfig,
    Tiling,
    WrongFamily,
    canonical_corner,
    enumerate_corner_placements,
    f0_square_tiling,
    make_placement,
    reptile_search,
    tile_region,
    trivial_quadrant_tiling,
    verify_tiling,
)

GOLDEN = Path(__file__).parent / "golden" / "square_f3_1_5.json"
F3 = ["f3:1/5", "f3:1/2", "f3:3/5", "f3ab:(2+2√6)/5,(4−√6)/5"]


@pytest.fixture(scope="module")
def q15():
    return parse_instance("f3:1/5")


def _vertex_sets(tilings):
    return [frozenset(p.polygon.vertex_set() for p in t.placements) for t in tilings]


@pytest.mark.parametrize("inst", F3)
def test_f0_construction_verifies(inst):
    t = f0_square_tiling(parse_instance(inst))
    assert len(t) == 4
    assert verify_tiling(t).ok
    assert tiling_float_check(t) == []


def test_f0_areas(q15):
    t = f0_square_tiling(q15)
    assert all(polygon_area(p.polygon) == rat("16/25") for p in t.placements)
    assert region_area(t.region) == rat("64/25")


def test_f0_wrong_family():
    with pytest.raises(WrongFamily):
        f0_square_tiling(parse_instance("f1:3/2"))


def test_quadrant_tiling(q15):
    assert trivial_quadrant_tiling(q15, 1) == f0_square_tiling(q15)
    t = trivial_quadrant_tiling(q15, 2)
    assert len(t) == 16 and region_area(t.region) == rat("256/25")
    assert verify_tiling(t).ok and tiling_float_check(t) == []


@pytest.mark.parametrize("dx, why", [("1/1000", "outside"), ("-1/1000", "overlap")])
def test_verify_rejects_shifted_tile(q15, dx, why):
    t = f0_square_tiling(q15)
    shift = Isometry(translate=Point(rat(dx), rat(0)))
    moved = make_placement(compose_isometries(shift, t.placements[1].iso), t.prototile)
    bad = dataclasses.replace(t, placements=(t.placements[0], moved) + t.placements[2:])
    rep = verify_tiling(bad)
    assert not rep.ok and any(why in f for f in rep.failures)


def test_verify_rejects_missing_tile(q15):
    t = f0_square_tiling(q15)
    rep = verify_tiling(dataclasses.replace(t, placements=t.placements[:3]))
    assert not rep.ok and any("area" in f for f in rep.failures)


def test_verify_rejects_non_congruent(q15):
    t = f0_square_tiling(q15)
    rep = verify_tiling(Tiling(square(1), t.region, t.placements))
    assert not rep.ok


def test_verify_mirror_images_need_reflection(q15):
    t = f0_square_tiling(q15)
    assert not verify_tiling(t, allow_reflection=False).ok


def test_canonical_corner(q15):
    corner, ray_end, _ = canonical_corner(region_of(square(q15.a + q15.b)))
    assert corner == Point(rat(0), rat(0)) and ray_end.y == 0


def test_corner_placements_match_brute_force(q15):
    side = q15.a + q15.b
    region = region_of(square(side))
    got = enumerate_corner_placements(region, q15.polygon())
    box = ShPolygon([(0, 0), (fl(side), 0), (fl(side), fl(side)), (0, fl(side))])
    ref = set()
    for pts in isometries_at_corner(q15.polygon().vertices, (0, 0), [(1, 0)]):
        poly = ShPolygon(pts)
        if poly.difference(box).area < 1e-9 and abs(poly.area) > 1e-9:
            ref.add(frozenset((round(x, 9) + 0.0, round(y, 9) + 0.0) for x, y in pts))
    mine = {frozenset((round(fl(v.x), 9) + 0.0, round(fl(v.y), 9) + 0.0) for v in p.polygon.vertices) for p in got}
    assert mine == ref and len(got) == 6


def test_corner_placements_on_prototile(q15):
    pls = enumerate_corner_placements(region_of(q15.polygon()), q15.polygon())
    assert any(p.polygon.vertex_set() == q15.polygon().vertex_set() for p in pls)


def test_right_angle_rejected_at_acute_corner():
    tri = polygon((0, 0), (4, 0), (0, 3))  # acute corner at (4, 0) is never canonical
    sq = square(1)
    # corner (0,0) of a region that is a sliver with angle < pi/2
    sliver = region_of(polygon((0, 0), (4, 1), (0, 1)))
    assert enumerate_corner_placements(sliver, sq) == []
    assert enumerate_corner_placements(region_of(tri), sq)


def test_square_search_all(q15):
    res = tile_region(region_of(square(q15.a + q15.b)), q15.polygon(), SearchConfig(mode=Mode.ALL))
    assert res.exhausted and res.count == len(res.tilings) >= 1
    for t in res.tilings:
        assert len(t) == 4 and verify_tiling(t).ok and tiling_float_check(t) == []
    assert _vertex_sets([f0_square_tiling(q15)])[0] in _vertex_sets(res.tilings)


def test_square_search_matches_golden(q15):
    res = tile_region(region_of(square(q15.a + q15.b)), q15.polygon(), SearchConfig(mode=Mode.ALL))
    frozen = json.loads(GOLDEN.read_text())
    assert [tiling_to_json(t) for t in res.tilings] == frozen


def test_area_obstruction(q15):
    res = tile_region(region_of(square(1)), q15.polygon())
    assert res.count == 0 and res.nodes == 0


def test_modes_agree(q15):
    region = region_of(rectangle(2 * (q15.a + q15.b), q15.a + q15.b))
    every = tile_region(region, q15.polygon(), SearchConfig(mode=Mode.ALL))
    count = tile_region(region, q15.polygon(), SearchConfig(mode=Mode.COUNT))
    first = tile_region(region, q15.polygon(), SearchConfig(mode=Mode.FIRST))
    assert count.count == every.count and count.tilings == []
    assert first.tilings[0] == every.tilings[0]


def test_parallel_count_unchanged(q15):
    region = region_of(rectangle(2 * (q15.a + q15.b), q15.a + q15.b))
    serial = tile_region(region, q15.polygon(), SearchConfig(mode=Mode.ALL))
    par = tile_region(region, q15.polygon(), SearchConfig(mode=Mode.ALL, workers=2))
    assert par.count == serial.count
    assert [tiling_to_json(t) for t in par.tilings] == [tiling_to_json(t) for t in serial.tilings]


def test_node_budget(q15):
    with pytest.raises(NodeBudgetExceeded):
        tile_region(region_of(square(q15.a + q15.b)), q15.polygon(), SearchConfig(max_nodes=3))


def test_env_overrides_budget(monkeypatch):
    monkeypatch.setenv("REPTILER_MAX_NODES", "17")
    assert SearchConfig().max_nodes == 17


def test_no_reflection_keeps_one_pinwheel(q15):
    res = tile_region(region_of(square(q15.a + q15.b)), q15.polygon(), SearchConfig(allow_reflection=False))
    # the two pinwheels are mirror images, each built from one handedness only
    assert res.count == 1
    for t in res.tilings:
        assert verify_tiling(t, allow_reflection=False).ok


def test_area_conserved_along_search(q15):
    region = region_of(square(q15.a + q15.b))
    t = f0_square_tiling(q15)
    rest: Region = region
    placed = 0
    for p in t.placements:
        rest = region_difference(rest, p.polygon)
        placed += polygon_area(p.polygon)
        assert region_area(rest) + placed == region_area(region)
    assert rest.is_empty()


def test_reptile_positives():
    r = reptile_search(square(1), 4)
    assert r.status is ReptileStatus.FOUND and len(r.tiling) == 4 and verify_tiling(r.tiling).ok
    r = reptile_search(polygon((0, 0), (1, 0), (0, 1)), 4)
    assert r.status is ReptileStatus.FOUND and verify_tiling(r.tiling).ok


@pytest.mark.parametrize("inst", ["f3:1/5", "f3:1/2", "f1:1"])
def test_reptile_negatives(inst):
    assert reptile_search(parse_instance(inst), 4).status is ReptileStatus.EXHAUSTED


def test_reptile_budget_reported():
    r = reptile_search(parse_instance("f1:1"), 4, SearchConfig(mode=Mode.FIRST, max_nodes=2))
    assert r.status is ReptileStatus.BUDGET


def test_reptile_scale_out_of_field():
    with pytest.raises(ScaleOutOfField):
        reptile_search(square(1), 2)
    # sqrt 7 lives in the field of f3:1/2
    r = reptile_search(parse_instance("f3:1/2"), 7, SearchConfig(mode=Mode.FIRST, max_nodes=50_000))
    assert r.status in (ReptileStatus.EXHAUSTED, ReptileStatus.BUDGET)


@pytest.mark.parametrize("w, h, known", [(2, 8, 34), (3, 4, 11), (4, 4, 36), (2, 5, 8)])
def test_domino_counts_match_combinatorics(w, h, known):
    # classical domino tiling numbers check that the corner enumeration misses nothing
    res = tile_region(region_of(rectangle(w, h)), rectangle(2, 1), SearchConfig(mode=Mode.COUNT))
    assert res.count == known


@pytest.mark.parametrize(
    "shape",
    [
        polygon((0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)),
        polygon((0, 0), (3, 0), ("5/2", qf(0, "1/2", 3)), ("3/2", qf(0, "1/2", 3)), (1, qf(0, 1, 3))),
    ],
    ids=["L-tromino", "sphinx"],
)
def test_known_reptiles(shape):
    r = reptile_search(shape, 4)
    assert r.status is ReptileStatus.FOUND and verify_tiling(r.tiling).ok
    assert tiling_float_check(r.tiling) == []
