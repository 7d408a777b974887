import json
import random
from dataclasses import replace

import pytest

from acccheck.controller import PidGains
from acccheck.harness import (
    BUNDLED_SCENARIOS, GROUND_TRUTH, TRACE_COLUMNS, ScenarioConfig, SchemaError, Trace, check_scenario,
    kmh_to_ms, load_scenario, reproduce_table2, run_batch, run_scenario,
)
from acccheck.ltl import SchemaMismatch
from acccheck.patterns import build_acc_stability, build_ss, build_stability


@pytest.fixture(scope="module")
def traces():
    return {name: run_scenario(load_scenario(name)) for name in BUNDLED_SCENARIOS}


@pytest.mark.parametrize("kmh, ms", [(0, 0.0), (36, 10.0), (40, 11.11111111111111)])
def test_kmh_to_ms(kmh, ms):
    assert kmh_to_ms(kmh) == pytest.approx(ms, abs=1e-12)


def test_negative_speed_rejected():
    with pytest.raises(ValueError):
        kmh_to_ms(-1)


class TestScenarioConfig:
    def test_bundled_files_load(self):
        for name in BUNDLED_SCENARIOS:
            cfg = load_scenario(name)
            assert cfg.id == name and cfg.dt == 0.1 and cfg.horizon == 45.0

    def test_default_set_speed_is_initial_speed(self):
        assert load_scenario("case1").controller.V_set == pytest.approx(kmh_to_ms(10))

    def test_case2_cruises_at_lead_speed(self):
        assert load_scenario("case2").controller.V_set == pytest.approx(kmh_to_ms(25))

    def test_dict_round_trip(self):
        for name in BUNDLED_SCENARIOS:
            cfg = load_scenario(name)
            assert ScenarioConfig.from_dict(cfg.to_dict()) == cfg

    def test_fingerprint_tracks_content(self):
        cfg = load_scenario("case1")
        assert cfg.fingerprint() == load_scenario("case1").fingerprint()
        assert cfg.fingerprint() != replace(cfg, horizon=10.0).fingerprint()

    def test_load_from_path(self, tmp_path):
        data = load_scenario("case1").to_dict()
        data["id"] = "mine"
        path = tmp_path / "mine.json"
        path.write_text(json.dumps(data))
        assert load_scenario(str(path)).id == "mine"

    def test_lead_must_start_ahead(self):
        data = load_scenario("case1").to_dict()
        data["x0_lead"] = data["x0_ego"]
        with pytest.raises(ValueError):
            ScenarioConfig.from_dict(data)


class TestRunScenario:
    def test_deterministic(self, traces):
        for name in BUNDLED_SCENARIOS:
            assert run_scenario(load_scenario(name)).to_csv() == traces[name].to_csv()

    def test_relations_recompute_exactly(self, traces):
        for name, tr in traces.items():
            cfg = load_scenario(name).controller
            for s in tr.samples:
                assert s.d_rel == s.x_lead - s.x_ego
                assert s.d_safe == cfg.D_default + cfg.T_gap * s.v_ego

    def test_time_increases_and_modes_are_signed_units(self, traces):
        for tr in traces.values():
            ts = tr.column("t")
            assert all(a < b for a, b in zip(ts, ts[1:]))
            assert set(tr.column("mode")) <= {1, -1}

    def test_collision_is_final_event(self, traces):
        for tr in traces.values():
            gaps = tr.column("d_rel")
            if tr.collision is None:
                assert min(gaps) > 0
            else:
                assert gaps[-1] <= 0 and min(gaps[:-1]) > 0
                assert tr.collision == tr.samples[-1].t

    def test_case1_stays_beyond_safe_distance(self, traces):
        assert all(s.d_rel > s.d_safe for s in traces["case1"].samples)

    def test_case3_collision_window(self, traces):
        assert 1.44 <= traces["case3"].collision <= 3.47

    def test_case3_collides_for_any_gains(self):
        rng = random.Random(42)
        base = load_scenario("case3")
        for _ in range(100):
            def gains():
                return PidGains(rng.uniform(0, 5), rng.uniform(0, 2), rng.uniform(0, 2))
            ctrl = replace(base.controller, speed_pid=gains(), space_pid=gains())
            tr = run_scenario(replace(base, controller=ctrl))
            assert tr.collision is not None and 1.44 <= tr.collision <= 3.47

    def test_full_horizon_sample_count(self, traces):
        assert len(traces["case1"]) == 451

    def test_batch_matches_serial_and_is_ordered_by_id(self, traces):
        cfgs = [load_scenario(n) for n in reversed(BUNDLED_SCENARIOS)]
        batch = run_batch(cfgs, max_workers=2)
        assert list(batch) == sorted(BUNDLED_SCENARIOS)
        for name, tr in batch.items():
            assert tr.to_csv() == traces[name].to_csv()


class TestTraceCsv:
    def test_header_and_round_trip(self, traces, tmp_path):
        for tr in traces.values():
            text = tr.to_csv()
            assert text.splitlines()[0] == ",".join(TRACE_COLUMNS)
            path = tmp_path / "t.csv"
            tr.write_csv(path)
            back = Trace.read_csv(path)
            assert back.samples == tr.samples and back.collision == tr.collision

    def test_collision_comment(self, traces):
        assert traces["case3"].to_csv().splitlines()[-1] == f"# collision t={traces['case3'].collision!r}"

    def test_bad_header(self):
        with pytest.raises(SchemaError):
            Trace.from_csv("a,b\n1,2\n")


class TestCheckScenario:
    @pytest.mark.parametrize("name", list(GROUND_TRUTH))
    def test_verdicts(self, traces, name):
        assert check_scenario(traces[name], build_acc_stability()).holds is GROUND_TRUTH[name]

    def test_case2_recovers_after_start(self, traces):
        v = check_scenario(traces["case2"], build_acc_stability())
        assert v.witness_index > 0
        d = v.diagnostics
        assert d["convergence_time"] == traces["case2"].samples[v.witness_index].t
        assert d["trailing_hold_duration"] == pytest.approx(45.0 - d["convergence_time"])

    def test_collision_diagnostics(self, traces):
        v = check_scenario(traces["case3"], build_acc_stability())
        assert v.diagnostics["collision"] is True
        assert v.counterexample_index == len(traces["case3"]) - 1

    def test_schema_mismatch(self, traces):
        with pytest.raises(SchemaMismatch):
            check_scenario(traces["case1"], build_stability(build_ss("speed", 1.0, 0.1)))


class TestReport:
    def test_default_reproduces_table(self):
        report = reproduce_table2()
        assert report.all_match and report.mismatches == []
        assert [c.result for c in report.cases] == [True, True, False]
        assert "3/3 verdicts match" in report.format_table()
        assert report.to_csv().splitlines()[0].startswith("id,ground_truth,result,match")

    def test_truncated_horizon_is_reported_for_case2(self):
        cfgs = [replace(load_scenario("case2"), horizon=1.0)]
        report = reproduce_table2(cfgs, ground_truth={"case2": True})
        assert report.mismatches == ["case2"]
        assert "NO" in report.format_table()

    def test_loosened_braking_is_reported_not_hidden(self):
        base = load_scenario("case3")
        cfg = replace(base, controller=replace(base.controller, a_min=-6.0))
        report = reproduce_table2([cfg], ground_truth={"case3": False})
        (case,) = report.cases
        # whatever the outcome, the reported mismatch list follows the verdict
        assert report.mismatches == ([] if case.result is False else ["case3"])
