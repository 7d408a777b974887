from acccheck.harness import load_scenario, reproduce_table2, run_scenario
from acccheck.plotting import plot_report, plot_trace, trace_figure


def test_two_panel_layout_for_speed_and_distance():
    tr = run_scenario(load_scenario("fig1_sine"))
    fig = trace_figure(tr, ["v_ego", "v_lead", "d_rel", "d_safe"])
    assert len(fig.axes) == 2


def test_single_panel_for_one_group():
    tr = run_scenario(load_scenario("case1"))
    assert len(trace_figure(tr, ["d_rel"]).axes) == 1


def test_svg_is_byte_deterministic(tmp_path):
    tr = run_scenario(load_scenario("fig1_sine"))
    a = plot_trace(tr, ["v_ego", "d_rel"], tmp_path / "a.svg")
    b = plot_trace(tr, ["v_ego", "d_rel"], tmp_path / "b.svg")
    assert a.read_bytes() == b.read_bytes()
    assert b"<svg" in a.read_bytes()


def test_report_figures(tmp_path):
    paths = plot_report(reproduce_table2(), tmp_path)
    assert sorted(p.name for p in paths) == ["case1.svg", "case2.svg", "case3.svg"]
