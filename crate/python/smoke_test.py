"""Smoke test for the lcvanish_py extension module."""

import json
import pathlib

import lcvanish_py as lv

INSTANCES = pathlib.Path(__file__).resolve().parents[1] / "crates" / "core" / "instances"


def main():
    assert lv.multinomial_mod_p(4, [2, 2], 2) == 0
    assert lv.alpha("x1", "1", [0], 2, 1) == "1"

    doubled = lv.Instance(["x", "x"], 1, 2, 2, variables=["x"])
    verdict = doubled.decide(mode="compare")
    assert verdict.result == "VANISHES", verdict
    assert verdict.witness is None

    axes = lv.Instance(["x1", "x2"], 2, 3, 2)
    verdict = axes.decide()
    assert verdict.result == "NONVANISHING"
    assert axes.recheck(verdict)

    report = json.loads(lv.run_file(str(INSTANCES / "axes.inst"), 3, 2))
    assert report["verdict"]["result"] == "NONVANISHING"
    assert "timings" not in report["verdict"]
    print("smoke test passed")


if __name__ == "__main__":
    main()
