"""Smoke test for the pyloopcheck extension.

Build and install first:
    pip install maturin
    maturin build --release -m crates/python/Cargo.toml -o dist
    pip install dist/pyloopcheck-*.whl
then run `python python/smoke_test.py` from the repository root.
"""

from pathlib import Path

import pyloopcheck as lc

ROOT = Path(__file__).resolve().parent.parent


def main():
    z4 = lc.Loop([[(i + j) % 4 for j in range(4)] for i in range(4)])
    assert (z4.order, z4.identity, len(z4)) == (4, 0, 4)
    assert z4.mul(3, 2) == 1 and z4.ldiv(3, 1) == 2 and z4.rdiv(1, 2) == 3
    assert z4.is_associative()

    report = z4.check("universal-osborn", method="both")
    assert report["holds"] and report["property"] == "universal-osborn"

    iso = z4.isotope(2, 1)
    assert iso.identity == 3
    assert iso.check("osborn")["holds"]
    assert z4.isotope(v=2).identity == 2

    loops = dict(lc.read_loop_file(ROOT / "corpus" / "l5.loop"))
    l5 = loops["L5"]
    holds, cx = l5.holds("(x*x)*x = x*(x*x)")
    assert not holds and cx == {"x": 2}, cx
    assert not l5.check("3-PAPL")["holds"]

    text = lc.format_loop_file([("Z4", z4), ("L5", l5)])
    assert [n for n, _ in lc.parse_loop_file(text)] == ["Z4", "L5"]
    assert lc.parse_loop_file(text)[1][1] == l5

    assert [lc.count_loops(n) for n in range(1, 6)] == [1, 1, 1, 4, 56]
    hits = lc.search(6, require=["cc"], forbid=["associative"], limit=3)
    assert len(hits) == 3 and not any(h.is_associative() for h in hits)

    reports = lc.verify([("Z4", z4), ("L5", l5)], claims=["Moufang form"])
    assert reports[0]["claim"] == "Moufang form" and reports[0]["tested"] == 2
    assert len(lc.claims()) == len(lc.verify([("Z4", z4)]))

    for bad in (lambda: lc.Loop([[0, 1], [1, 1]]), lambda: z4.check("nonsense"), lambda: l5.holds("x*(y")):
        try:
            bad()
        except ValueError:
            pass
        else:
            raise AssertionError("expected ValueError")

    print("pyloopcheck smoke test passed")


if __name__ == "__main__":
    main()
