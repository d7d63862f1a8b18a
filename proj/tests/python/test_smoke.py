"""Python binding smoke tests.

Run directly (python3 test_smoke.py) or via ctest, with the built extension
on PYTHONPATH (ctest passes LOOPLINE_EXT_DIR)."""

import fractions
import os
import sys

ext_dir = os.environ.get("LOOPLINE_EXT_DIR")
if ext_dir:
    sys.path.insert(0, ext_dir)

try:
    import loopline
except ImportError:
    import _core as loopline  # bare extension from the build tree


def frac(text):
    return fractions.Fraction(text)


def test_sir_worst_case():
    inst = loopline.gen_adversary("sir-general", cap=3, n=3)
    assert inst.request_count == 12
    result = loopline.run_policy("sir", inst)
    assert result["valid"]
    assert frac(result["ttl"]) == 48
    assert frac(loopline.opt_cost(inst)) == 4


def test_tram_walkthrough_optimum():
    text = """{
      "topology": {"kind": "circuit", "edge_lengths": [1, 1, 1, 1, 1]},
      "fleet": {"k": 1, "cap": 2, "speed": 1},
      "horizon": 6,
      "requests": [
        {"t": 1, "x": 2, "y": 4, "z": 2},
        {"t": 2, "x": 0, "y": 3, "z": 1},
        {"t": 3, "x": 3, "y": 4, "z": 1},
        {"t": 4, "x": 1, "y": 2, "z": 2},
        {"t": 5, "x": 0, "y": 1, "z": 1},
        {"t": 6, "x": 1, "y": 4, "z": 1}
      ]
    }"""
    inst = loopline.Instance.from_json(text)
    assert frac(loopline.opt_cost(inst)) == 10


def test_elevator_loads_fixture():
    text = """{
      "topology": {"kind": "line", "edge_lengths": [1, 1, 1, 1]},
      "fleet": {"k": 1, "cap": 2, "speed": 1},
      "horizon": 8,
      "requests": [
        {"t": 0, "x": 0, "y": 1, "z": 2},
        {"t": 1, "x": 0, "y": 2, "z": 1},
        {"t": 2, "x": 3, "y": 4, "z": 2},
        {"t": 3, "x": 2, "y": 4, "z": 1},
        {"t": 4, "x": 3, "y": 4, "z": 1},
        {"t": 5, "x": 4, "y": 3, "z": 3},
        {"t": 6, "x": 4, "y": 3, "z": 1},
        {"t": 7, "x": 4, "y": 2, "z": 1},
        {"t": 8, "x": 1, "y": 0, "z": 1}
      ]
    }"""
    inst = loopline.Instance.from_json(text)
    loads = loopline.arc_loads(inst)
    assert loads["up_load"] == [3, 1, 1, 4]
    assert loads["down_load"] == [1, 0, 1, 5]
    assert loads["up_mult"] == [2, 1, 1, 2]
    assert loads["down_mult"] == [1, 0, 1, 3]


def test_main_tightness_row():
    inst = loopline.gen_adversary("main-general", cap=3, n=5, ell=1)
    row = loopline.evaluate("main", inst, scenario="general")
    assert frac(row["ttl"]) == 240
    assert frac(row["opt"]) == 12
    assert frac(row["ratio"]) == 20
    assert row["bound_satisfied"]


def test_seeded_scenarios_respect_bounds():
    for seed in range(5):
        inst = loopline.gen_scenario("lunch", kind="circuit", n=4, m=10,
                                     z_max=2, cap=3, seed=seed)
        row = loopline.evaluate("sif-l", inst, scenario="lunch")
        assert row["bound_satisfied"]
        assert frac(row["ratio"]) <= 2
    # byte-identical regeneration
    a = loopline.gen_scenario("morning", n=4, m=8, seed=11).to_json()
    b = loopline.gen_scenario("morning", n=4, m=8, seed=11).to_json()
    assert a == b


if __name__ == "__main__":
    failures = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_") and callable(fn):
            try:
                fn()
                print(f"{name}: ok")
            except AssertionError as exc:
                failures += 1
                print(f"{name}: FAILED {exc}")
    sys.exit(1 if failures else 0)
