import math
import textwrap

import pytest

from udwharvest.sweep_cli import (ConfigError, ScenarioTemplate, SweepConfig,
                                  compute_row, csv_header, load_config, main,
                                  run_sweep, write_csv)

FAST = dict(rel_tol=1e-6, abs_tol=1e-10)


def quick_cfg(**kw):
    base = dict(axis="dA", grid=(0.5, 2.0), vacua=("boulware",), outputs=("L_AA",))
    base.update(kw)
    return SweepConfig(ScenarioTemplate(**FAST), base["axis"], tuple(base["grid"]),
                       tuple(base["vacua"]), tuple(base["outputs"]))


def write_config(tmp_path, body):
    path = tmp_path / "cfg.ini"
    path.write_text(textwrap.dedent(body))
    return str(path)


def test_config_round_trip(tmp_path):
    path = write_config(tmp_path, """
        [scenario]
        vacuum = unruh
        mass = 0.5
        omega = 2.0
        tau0 = 12.0
        d_a = 0.5
        d_ab = 2.0

        [quadrature]
        rel_tol = 1e-6

        [sweep]
        axis = dA
        grid = 0.1, 0.5
        vacua = boulware, unruh
        outputs = L_AA, concurrence
    """)
    cfg = load_config(path)
    assert cfg.axis == "dA"
    assert cfg.grid == (0.1, 0.5)
    assert cfg.vacua == ("boulware", "unruh")
    assert cfg.template.rel_tol == 1e-6


def test_config_errors(tmp_path):
    with pytest.raises(ConfigError):
        load_config(str(tmp_path / "missing.ini"))
    for body, what in [
        ("[sweep]\ngrid = \nvacua = unruh", "empty grid"),
        ("[sweep]\ngrid = 2, 1\nvacua = unruh", "unsorted grid"),
        ("[sweep]\ngrid = 1, 2\nvacua = unruh\naxis = bogus", "bad axis"),
        ("[sweep]\ngrid = 1, 2\nvacua = nothing", "bad vacuum"),
        ("[sweep]\ngrid = 1, 2\nvacua = unruh\noutputs = bogus", "bad output"),
        ("[sweep]\ngrid = 1, 2\nvacua =", "no vacua"),
    ]:
        with pytest.raises(ConfigError):
            load_config(write_config(tmp_path, body))


def test_header_contract():
    cfg = quick_cfg(outputs=("L_AA", "concurrence"))
    assert csv_header(cfg.outputs) == [
        "axis", "vacuum", "status", "L_AA_re", "L_AA_im", "concurrence",
        "err_L_AA", "err_concurrence"]


def test_rows_ordered_and_deterministic(tmp_path):
    cfg = quick_cfg(grid=(0.5, 2.0), vacua=("boulware", "unruh"))
    rows = run_sweep(cfg)
    assert [(r.axis_value, r.vacuum) for r in rows] == [
        (0.5, "boulware"), (0.5, "unruh"), (2.0, "boulware"), (2.0, "unruh")]
    p1, p2 = tmp_path / "a.csv", tmp_path / "b.csv"
    write_csv(str(p1), cfg, rows)
    write_csv(str(p2), cfg, run_sweep(cfg))
    assert p1.read_bytes() == p2.read_bytes()


def test_parallel_matches_serial():
    cfg = quick_cfg(grid=(0.5, 2.0), vacua=("boulware",))
    serial = run_sweep(cfg, workers=1)
    parallel = run_sweep(cfg, workers=2)
    for a, b in zip(serial, parallel):
        for key in a.values:
            assert abs(a.values[key] - b.values[key]) <= 1e-12


def test_row_failure_is_recorded_not_fatal():
    # collapse vacuum with a shell-crossing switching peak: the row reports the
    # error and the remaining rows still compute
    template = ScenarioTemplate(tau0=2.0, **FAST)
    cfg = SweepConfig(template, "dA", (0.1,), ("boulware", "vaidya"), ("L_AA",))
    rows = run_sweep(cfg)
    assert rows[0].status == "ok"
    assert rows[1].status.startswith("error")
    assert math.isnan(rows[1].values["L_AA_re"])


def test_axis_application():
    t = ScenarioTemplate(**FAST)
    assert t.with_axis("mass", 2.0).mass == 2.0
    assert t.with_axis("omega", 3.0).omega == 3.0
    assert t.with_axis("tau0", 6.0).tau0 == 6.0
    assert t.with_axis("dAB", 3.0).d_ab == 3.0
    s = t.with_axis("sigma", 4.0)
    assert s.mass == t.mass / 4.0 and s.omega == t.omega * 4.0
    with pytest.raises(ConfigError):
        t.with_axis("bogus", 1.0)


def test_flat_vacuum_rows():
    # default tolerances here: loose rel_tol configs legitimately flag rows
    # whose carried inner bounds exceed the requested target
    template = ScenarioTemplate(mass=0.0, d_a=1.0, d_ab=2.0, omega=1.0,
                                switching="appendix", tau0=0.0)
    cfg = SweepConfig(template, "dAB", (2.0,), ("minkowski",), ("L_AA", "estimator"))
    row = run_sweep(cfg)[0]
    assert row.status == "ok"
    assert row.values["L_AA_re"] > 0


def test_cli_exit_codes(tmp_path):
    path = write_config(tmp_path, """
        [scenario]
        d_a = 2.0
        [quadrature]
        rel_tol = 1e-6
        [sweep]
        grid = 2.0
        vacua = boulware
        outputs = L_AA
    """)
    out = tmp_path / "out.csv"
    assert main(["sweep", "--config", path, "--out", str(out)]) == 0
    assert out.exists()
    assert main(["sweep", "--config", str(tmp_path / "nope.ini"), "--out", str(out)]) == 2
    assert main(["single", "--config", path]) == 0
