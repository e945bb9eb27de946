import numpy as np
import pytest

from fairaug.bias import gamma2
from fairaug.errors import InputError
from fairaug.graph import partition
from fairaug.sampling import substream
from fairaug.verify import (PROPERTIES, TRIAL_CAPS, omega_dominant_instance, random_er_instance,
                            replay, run_verification)


def test_report_structure_and_determinism():
    a = run_verification(4, seed=3)
    assert a == run_verification(4, seed=3)
    assert a["all_passed"] and set(a["properties"]) == set(PROPERTIES)
    for name, r in a["properties"].items():
        assert r["trials"] == min(4, TRIAL_CAPS.get(name, 4))
        assert r["passed"] + r["failed"] == r["trials"]


def test_zero_trials_rejected():
    with pytest.raises(InputError):
        run_verification(0)


def test_negative_control_names_the_bound():
    r = run_verification(3, seed=1, c_l1_scale=0.5)
    assert not r["all_passed"]
    bad = [k for k, v in r["properties"].items() if v["failed"]]
    assert bad == ["theorem1_bound"]
    f = r["properties"]["theorem1_bound"]["failures"][0]
    ok, margin = replay("theorem1_bound", f["seed"], f["trial"], c_l1_scale=0.5)
    assert not ok and margin < 0


def test_replay_matches_run():
    ok, margin = replay("edge_deletion_expectation", 0, 2)
    assert ok and margin >= 0


def test_er_generator_ranges():
    for t in range(30):
        g, H, s = random_er_instance(substream(9, t))
        assert 4 <= g.num_nodes <= 50 and H.shape[1] == 8
        assert np.abs(H).max() <= 1 and min(s.sum(), len(s) - s.sum()) >= 2
        gamma2(partition(g, s))     # defined


def test_omega_dominant_generator():
    for t in range(10):
        g, s = omega_dominant_instance(substream(2, t))
        p = partition(g, s)
        assert len(p.s0_omega) >= len(p.s0_chi) >= 1
        assert len(p.s1_omega) >= len(p.s1_chi) >= 1


def test_default_suite_passes_at_200_trials():
    r = run_verification(200, seed=0)
    assert r["all_passed"], {k: v["failures"] for k, v in r["properties"].items() if v["failed"]}
    assert r["properties"]["theorem1_bound"]["trials"] == 200
