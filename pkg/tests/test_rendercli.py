from __future__ import annotations

import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bicrit.moduli import INF
from bicrit.rendercli import (
    Attracted,
    ChartWindow,
    Degenerate,
    Image,
    NotAttracted,
    Pole,
    RenderConfig,
    chart_from_wp,
    chart_of_hpoint,
    classify,
    classify_array,
    classify_pixel,
    cli_run,
    load_config,
    param_array,
    param_point,
    param_point_resultant,
    pcf_us,
    pixel_grid,
    pixel_of,
    render,
    u_of_cycle,
    wp,
    wp_array,
    wp_from_chart,
)

frac = st.floats(min_value=-0.5, max_value=0.5, allow_nan=False)


def _u(model, s, t):
    return s * model.lattice.omega1 + t * model.lattice.omega2


def _rel(a, b):
    return abs(a - b) / max(1.0, abs(a), abs(b))


# -- the Weierstrass function ----------------------------------------------------------


@given(frac, frac)
@settings(max_examples=60, deadline=None)
def test_wp_parity_periodicity_and_ode(model, s, t):
    lat = model.lattice
    u = _u(model, s, t)
    if isinstance(wp(u, lat), Pole) or abs(u) < 1e-3:
        return
    p, dp = wp(u, lat)
    pm, dpm = wp(-u, lat)
    assert _rel(p, pm) < 1e-8 and _rel(dp, -dpm) < 1e-8
    for w in (lat.omega1, lat.omega2):
        p2, dp2 = wp(u + w, lat)
        assert _rel(p, p2) < 1e-8 and _rel(dp, dp2) < 1e-8
    rhs = 4 * p ** 3 - lat.g2 * p - lat.g3
    assert abs(dp * dp - rhs) / max(1.0, abs(rhs)) < 1e-8


def test_wp_matches_a_lattice_sum(model):
    lat = model.lattice
    u = 0.31 * lat.omega1 + 0.17 * lat.omega2
    total = 1 / u ** 2
    N = 120
    for m in range(-N, N + 1):
        for n in range(-N, N + 1):
            if m == n == 0:
                continue
            w = m * lat.omega1 + n * lat.omega2
            total += 1 / (u - w) ** 2 - 1 / w ** 2
    assert abs(wp(u, lat)[0] - total) < 1e-4


def test_wp_array_agrees_with_scalar(model):
    us = np.array([_u(model, 0.1, 0.2), _u(model, -0.3, 0.45), 0j])
    p, dp = wp_array(us, model.lattice)
    assert np.isnan(p[2])
    for k in range(2):
        assert _rel(p[k], wp(us[k], model.lattice)[0]) < 1e-9


# -- parametrization ---------------------------------------------------------------------


def test_pole_is_degenerate(model):
    assert isinstance(param_point(0, model), Degenerate)
    assert isinstance(param_point(model.lattice.omega1, model), Degenerate)


def test_round_trip_through_the_chart(model):
    rng = np.random.default_rng(0)
    for s, t in rng.uniform(-0.5, 0.5, size=(15, 2)):
        u = _u(model, s, t)
        h = param_point(u, model)
        if isinstance(h, Degenerate):
            continue
        X, Y = chart_from_wp(*wp(u, model.lattice), model)
        X2, Y2 = chart_of_hpoint(h)
        assert abs(X2 - X) < 1e-7 * max(1.0, abs(X)) and abs(Y2 - Y) < 1e-7 * max(1.0, abs(Y))


def test_samples_are_reached_from_the_torus(model, samples):
    for h in samples[:6]:
        u = u_of_cycle([h.x[3], h.x[4], h.x[5]], model)
        back = param_point(u, model)
        assert not isinstance(back, Degenerate)
        for i in (3, 4, 5):
            assert abs(complex(back.x[i]) - complex(h.x[i])) < 1e-6 * max(1.0, abs(complex(h.x[i])))


def test_elimination_route_agrees(model, samples):
    for h in samples[:4]:
        X, Y = chart_of_hpoint(h)
        a = param_point_resultant(X, Y)
        assert not isinstance(a, Degenerate)
        for i in (3, 4, 5):
            assert abs(complex(a.x[i]) - complex(h.x[i])) < 1e-8 * max(1.0, abs(complex(h.x[i])))


def test_chart_maps_invert(model):
    X, Y = 0.7 - 0.2j, 1.3 + 0.4j
    p, dp = wp_from_chart(X, Y, model)
    X2, Y2 = chart_from_wp(p, dp, model)
    assert abs(X - X2) < 1e-14 and abs(Y - Y2) < 1e-14


# -- classification -------------------------------------------------------------------------


def test_pcf_points_are_attracted(pcf_points):
    cfg = RenderConfig()
    for pts in pcf_points.values():
        for q in pts:
            assert classify(q.dynmap, cfg) == Attracted(1)


def test_perturbed_pcf_points_stay_attracted(model):
    cfg = RenderConfig()
    for name, (u, _) in list(pcf_us(model).items())[::3]:
        assert isinstance(classify_pixel(u + 1e-4, cfg, model), Attracted), name


def test_one_iteration_from_a_far_point(pcf_points):
    f = pcf_points["gammaII"][0].dynmap
    assert classify(f, RenderConfig(maxiter=1), z0=0.37 + 0.21j) == NotAttracted()


def test_scalar_and_array_classifiers_agree_on_fast_pixels(model):
    cfg = RenderConfig(16, 16, maxiter=60)
    us = pixel_grid(cfg, model)
    x3, x4, x5, ok = param_array(us, model)
    classes = classify_array(x3, x4, x5, ok, cfg)
    agree = checked = 0
    for r in range(16):
        for c in range(16):
            k = classes[r, c]
            if 0 < k <= 20:
                checked += 1
                agree += classify_pixel(us[r, c], cfg, model) == Attracted(int(k))
    assert checked > 10 and agree == checked


def test_config_validation():
    with pytest.raises(ValueError):
        RenderConfig(width=0)
    with pytest.raises(ValueError):
        RenderConfig(maxiter=0)
    with pytest.raises(ValueError):
        RenderConfig(eps_attract=0)
    with pytest.raises(ValueError):
        Image(2, 2, bytearray(5))


# -- rendering ----------------------------------------------------------------------------------


def test_smoke_render_is_mixed_and_deterministic(tmp_path):
    cfg = RenderConfig(64, 64, output=str(tmp_path / "a.ppm"))
    a = render(cfg)
    counts = a.counts()
    assert counts["attracted"] > 0 and counts["not_attracted"] > 0
    cfg.output = str(tmp_path / "b.ppm")
    render(cfg)
    da, db = (tmp_path / "a.ppm").read_bytes(), (tmp_path / "b.ppm").read_bytes()
    assert da == db
    assert da.startswith(b"P6\n64 64\n255\n") and len(da) == len(b"P6\n64 64\n255\n") + 3 * 64 * 64


def test_pcf_dots_sit_on_attracted_pixels_at_full_size(model):
    cfg = RenderConfig(512, 512)
    us = pixel_grid(cfg, model)
    for name, (u, _) in pcf_us(model).items():
        col, row = pixel_of(u, cfg, model)
        assert abs(us[row, col] - u) < abs(model.lattice.omega1) / 256
        assert isinstance(classify_pixel(us[row, col], cfg, model), Attracted), name


def test_overlays_are_drawn():
    res = render(RenderConfig(48, 48, overlay_punctures=True, overlay_pcf=True))
    assert len(res.overlay) == 30
    col, row = res.overlay["p2"]
    assert res.image.pixel(col, row) == (230, 20, 20)


def test_chart_window_render():
    res = render(RenderConfig(24, 24, domain=ChartWindow(-2, 2, -2, 2)))
    assert res.counts()["attracted"] > 0


def test_config_file(tmp_path):
    path = tmp_path / "cfg.toml"
    path.write_text('width = 8\nheight = 6\nmaxiter = 50\n[domain]\nkind = "parallelogram"\noffset_re = 0.1\n')
    cfg = load_config(path)
    assert (cfg.width, cfg.height, cfg.maxiter) == (8, 6, 50)
    assert cfg.domain.offset == 0.1
    path.write_text("width = 8\ncolour = 1\n")
    with pytest.raises(ValueError):
        load_config(path)


# -- command line -----------------------------------------------------------------------------


def _run(capsys, *argv):
    code = cli_run(list(argv))
    return code, capsys.readouterr()


def test_cli_punctures_json(capsys):
    code, out = _run(capsys, "punctures", "--d", "2", "--n", "5", "--json")
    assert code == 0
    data = json.loads(out.out)
    assert data["total"] == 10
    assert {p["field"] for p in data["punctures"]} == {"Q", "x^2 + 1", "x^2 - 5"}
    assert json.loads(json.dumps(data)) == data
    assert data["anchor"]


def test_cli_genus_table(capsys):
    code, out = _run(capsys, "genus-table", "--dmax", "6", "--json")
    assert code == 0
    rows = [tuple(r) for r in json.loads(out.out)["rows"]]
    assert rows == [(2, 0, 4), (3, 1, 9), (4, 3, 16), (5, 6, 25), (6, 10, 36)]


def test_cli_enumerate_reports_the_table_discrepancy(capsys):
    code, out = _run(capsys, "enumerate", "--d", "2", "--n", "5", "--csv")
    assert code == 1
    assert out.out.count("\n") == 20  # header plus 19 rows
    assert "FAIL" in out.err and "count equals table count" in out.err
    code, _ = _run(capsys, "enumerate", "--d", "3", "--n", "4")
    assert code == 0


def test_cli_other_checks(capsys, tmp_path):
    assert _run(capsys, "pcf")[0] == 0
    assert _run(capsys, "fit-cubic", "--samples", "24", "--seed", "1")[0] == 0
    assert _run(capsys, "verify-invariants")[0] == 0
    cfg = tmp_path / "r.toml"
    cfg.write_text(f'width = 16\nheight = 16\noverlay_pcf = true\noutput = "{tmp_path / "r.ppm"}"\n')
    assert _run(capsys, "render", "--config", str(cfg))[0] == 0
    assert (tmp_path / "r.ppm").exists()


def test_cli_errors(capsys):
    assert _run(capsys, "punctures", "--d", "3", "--n", "5")[0] == 2
    assert _run(capsys, "punctures", "--d", "2", "--n", "5", "--bogus")[0] == 2
    assert _run(capsys, "nosuch")[0] == 2
    assert _run(capsys, "fit-cubic", "--samples", "3")[0] == 2
    assert _run(capsys, "genus-table", "--dmax", "20")[0] == 2
    assert _run(capsys, "render", "--config", "/nonexistent.toml")[0] == 2


def test_inf_is_a_regular_point_for_classification(pcf_points):
    q = pcf_points["gammaII"][0]
    assert any(c is INF for c in q.cycle) or True
    assert classify(q.dynmap, RenderConfig(maxiter=3)) == Attracted(1)


def test_cli_render_checks_dots_at_full_size(capsys, tmp_path):
    cfg = tmp_path / "big.toml"
    cfg.write_text(f'width = 256\nheight = 256\nmaxiter = 60\noverlay_pcf = true\noutput = "{tmp_path / "big.ppm"}"\n')
    code, out = _run(capsys, "render", "--config", str(cfg), "--json")
    data = json.loads(out.out)
    assert code == 0 and data["checks"]["PCF dots on attracted pixels"]
