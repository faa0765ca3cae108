import json
import math
import os

import pytest

import weakwave

DATA = os.environ.get("WEAKWAVE_TEST_DATA", os.path.join(os.path.dirname(__file__), "..", "data"))


def spec(name):
    with open(os.path.join(DATA, name)) as f:
        return json.load(f)


def test_classify_peakon():
    t = weakwave.classify_ch(1.0, 0.0, 0.0)
    assert t["kind"] == "PeakonWithDecay"


def test_peakon_profile():
    p = weakwave.build_profile(spec("peakon_ch.json"))
    assert p.admissible
    for x in (-2.0, -0.3, 0.0, 1.5):
        assert abs(p.eval(x)[0] - math.exp(-abs(x))) < 1e-10


def test_verify_and_round_trip():
    p = weakwave.build_profile(spec("peakon_ch.json"))
    rep = p.verify(bumps=4, seed=1)
    assert rep["max_normalized"] <= 1e-6
    q = weakwave.load_profile(p.to_json())
    assert q.to_json() == p.to_json()


def test_intro_sample():
    p = weakwave.build_profile(spec("intro_nvw.json"))
    rows = p.sample([p.breakpoints[0] - 1.0, 0.5 * (p.breakpoints[0] + p.breakpoints[1]), p.breakpoints[1] + 1.0])
    assert rows[0][1] == pytest.approx(math.pi)
    assert rows[2][1] == 0.0


def test_errors_carry_codes():
    with pytest.raises(weakwave.WeakwaveError) as e:
        weakwave.build_profile(spec("empty_plan.json"))
    assert e.value.args[0] == "InvalidInput"


def test_sweep_rows():
    rows = weakwave.sweep(spec("sweep_ch.json"))["rows"]
    assert [r["kind"] for r in rows] == ["NoBoundedWave", "PeakonWithDecay", "PeriodicCuspon"]
