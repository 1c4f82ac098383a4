"""Four copies of a family (iii) tile tile the square of side a+b.

The pinwheel is built from one reflected base tile rotated by quarter turns
about the square's centre, then checked by the verifier, saved as exact JSON
and drawn as SVG.
"""
import sys
from pathlib import Path

from reptiler.quadmodel import parse_instance
from reptiler.render import render_svg
from reptiler.serialize import dumps_tiling, load_tiling
from reptiler.tileengine import f0_square_tiling, trivial_quadrant_tiling, verify_tiling

out = Path(sys.argv[1] if len(sys.argv) > 1 else "demo_out")
out.mkdir(exist_ok=True)

for inst in ["f3:1/5", "f3:1/2", "f3:3/5", "f3ab:(2+2√6)/5,(4−√6)/5"]:
    t = f0_square_tiling(parse_instance(inst))
    print(f"{inst:26s} tiles={len(t)} verified={verify_tiling(t).ok}")

t = f0_square_tiling(parse_instance("f3:1/5"))
(out / "f0.json").write_text(dumps_tiling(t))
assert load_tiling(out / "f0.json") == t  # bit-exact round trip
(out / "f0.svg").write_text(render_svg(t, "100"))

block = trivial_quadrant_tiling(parse_instance("f3:1/5"), 3)
print("3x3 block of pinwheels:", len(block), "tiles, verified =", verify_tiling(block).ok)
(out / "block3.svg").write_text(render_svg(block, "60"))
print("wrote", out / "f0.json", out / "f0.svg", out / "block3.svg")
