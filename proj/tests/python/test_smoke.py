"""End-to-end smoke test for the pyrcf bindings.

Builds the same high-noise relay corridor the C++ suites use, runs the
pipeline pieces through Python, and checks the invariants that do not
depend on solver tie-breaking.
"""

import json
import math
import os
import sys
import tempfile

sys.path.insert(0, os.environ["PYRCF_DIR"])

import pyrcf  # noqa: E402


def write_corridor(directory):
    scenario = {
        "format": "rcf-scenario-v1",
        "seed": 99,
        "beta": 1.0,
        "cell": {
            "width": 50.0,
            "height": 50.0,
            "bs_x": 0.0,
            "bs_y": 0.0,
            "d2d_range": 15.0,
        },
        "wireless": {
            "bandwidth_hz": 100000.0,
            "bs_power_w": 100.0,
            "device_power_w": 10.0,
            "path_loss_exponent": 3.0,
            "noise_dbm_per_hz": 31.0,
            "rayleigh_fading": False,
            "fading_seed": 0,
        },
        "social": {
            "edges": "social_edges.txt",
            "weight_ceiling": 0.8,
            "weight_seed": 3,
        },
        "interconnect": {"p1": 0.7, "p2": 0.4},
        "devices": [
            {"id": 0, "role": "d2d", "x": 20.0, "y": 0.0},
            {"id": 1, "role": "relay", "x": 10.0, "y": 0.0},
            {"id": 2, "role": "relay", "x": 15.0, "y": 0.0},
            {"id": 3, "role": "cellular", "x": 45.0, "y": 0.0},
        ],
    }
    with open(os.path.join(directory, "scenario.json"), "w") as f:
        json.dump(scenario, f, indent=2)
        f.write("\n")
    with open(os.path.join(directory, "social_edges.txt"), "w") as f:
        f.write("# chain of twelve users\n")
        for u in range(11):
            f.write(f"{u} {u + 1}\n")
    with open(os.path.join(directory, "interconnection.csv"), "w") as f:
        f.write("# rcf-interconnection-v1\n")
        f.write("device_id,user_id\n")
        f.write("0,0\n1,1\n2,2\n")


def main():
    tmp = tempfile.mkdtemp(prefix="pyrcf_smoke_")
    corridor = os.path.join(tmp, "corridor")
    os.makedirs(corridor)
    write_corridor(corridor)

    bundle = pyrcf.load_scenario(corridor)
    assert bundle.master_seed == 99
    assert bundle.num_snapshots == 1
    assert bundle.num_devices == 4
    assert bundle.users == list(range(12))
    assert bundle.user_of_device == {0: 0, 1: 1, 2: 2}
    assert bundle.p1 == 0.7 and bundle.p2 == 0.4

    t0 = pyrcf.throughput(bundle)
    assert t0 > 0

    # round trip through the writer keeps the physics identical
    copy_dir = os.path.join(tmp, "copy")
    pyrcf.write_scenario(copy_dir, bundle)
    copy = pyrcf.load_scenario(copy_dir)
    assert pyrcf.throughput(copy) == t0

    # the relay corridor gives the interdiction something to remove:
    # one removal per budget, all of it on the d2d side of the cell
    cr = pyrcf.device_criticality(bundle, [1, 2])
    assert set(cr) == {0, 1, 2}
    assert all(v >= 0 for v in cr.values())
    assert sum(cr.values()) == 2.0

    assert pyrcf.default_budgets(1, 3) == [1, 2, 3]
    ranked = pyrcf.top_critical_devices(cr, 2)
    assert len(ranked) == 2 and ranked[0] in cr

    result = pyrcf.run_rcf(bundle, k=1, budgets=[1, 2], epsilon=0.3, delta=0.1)
    assert result.device_criticality == cr
    assert sum(result.user_criticality.values()) == sum(cr.values())
    assert len(result.seeds.seeds) == 1
    assert result.seeds.seeds[0] in bundle.users
    assert result.seeds.deg >= result.seeds.params.gamma
    again = pyrcf.run_rcf(bundle, k=1, budgets=[1, 2], epsilon=0.3, delta=0.1)
    assert again.seeds.seeds == result.seeds.seeds

    baseline = pyrcf.baseline_im(
        bundle, 1, pyrcf.BaselineKind.Degree, epsilon=0.3, delta=0.1
    )
    assert len(baseline.seeds) == 1
    degree_cr = pyrcf.degree_user_criticality(bundle)
    assert set(degree_cr) == {0, 1, 2}
    random_cr = pyrcf.random_user_criticality(bundle, seed=99)
    assert set(random_cr) == {0, 1, 2}
    assert all(0 <= v <= 1 for v in random_cr.values())

    # a rumor seeded on the relay's user can only lower the throughput
    outcome = pyrcf.evaluate_post_rumor(bundle, [1], trials=3)
    assert outcome.t0 == t0
    assert len(outcome.trials) == 3
    for trial in outcome.trials:
        assert trial.tk <= t0 + 1e-9
        assert 0 <= pyrcf.qk_percent(t0, trial.tk) <= 100
        assert all(d in (0, 1, 2) for d in trial.disabled)
    assert 0 <= outcome.mean_qk <= 100

    # protecting every mapped device keeps the cell at full throughput
    shielded = pyrcf.evaluate_post_rumor(
        bundle, [1], trials=3, protected_devices=[0, 1, 2]
    )
    assert shielded.mean_tk == t0
    assert shielded.mean_qk == 0

    # awareness level 0 replays the unprotected run exactly
    rows = pyrcf.ua_sweep(bundle, [1], levels=[0.0, 1.0], trials=3)
    assert [r.level for r in rows] == [0.0, 1.0]
    assert rows[0].outcome.mean_tk == outcome.mean_tk
    assert rows[1].outcome.mean_tk >= rows[0].outcome.mean_tk

    ret = pyrcf.retention(bundle, [1], cr, l=3, trials=3)
    assert ret.protected_devices == pyrcf.top_critical_devices(cr, 3)
    assert ret.protected_run.mean_tk >= ret.unprotected.mean_tk

    # bandwidth pricing identities
    assert pyrcf.qk_percent(100.0, 50.0) == 50.0
    assert pyrcf.extra_bandwidth(1e5, 100.0, 50.0) == 1e5
    assert math.isinf(pyrcf.extra_bandwidth(1e5, 100.0, 0.0))
    for trial in outcome.trials:
        if trial.tk > 0:
            assert pyrcf.extra_bandwidth_crosscheck(
                bundle, trial.disabled, t0, trial.tk
            )

    # error surfaces come through as typed python exceptions
    try:
        pyrcf.load_scenario(os.path.join(tmp, "missing"))
        raise AssertionError("expected ConfigError for a missing directory")
    except pyrcf.ConfigError:
        pass

    opts = pyrcf.GenerateOptions()
    opts.cellular_requesters = 1
    opts.d2d_requesters = 2
    opts.relays = 2
    opts.synthetic_nodes = 20
    opts.synthetic_edges_per_node = 2
    opts.seed = 4
    flat = pyrcf.generate_scenario(opts)
    assert flat.num_devices == 5
    assert pyrcf.throughput(flat) > 0
    try:
        pyrcf.run_rcf(flat, k=1, budgets=[1, 2], epsilon=0.3, delta=0.1)
        raise AssertionError("expected ConfigError when criticality is flat")
    except pyrcf.ConfigError:
        pass

    print("pyrcf smoke: ok")


if __name__ == "__main__":
    main()
