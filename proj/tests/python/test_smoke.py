import math

import pytest

import cornercut as cc


def chaikin_schedule():
    return cc.WeightSchedule(cc.WeightPair([0.25], [0.75]))


def test_version():
    assert cc.__version__


def test_chaikin_certificate():
    pair = cc.WeightPair([0.25], [0.75])
    assert cc.contraction_factor(pair) == 0.5
    cert = cc.certify(chaikin_schedule())
    assert cert.mu_sup == 0.5
    assert cert.points_convergent
    assert cert.nets_convergent


def test_invalid_weights_raise():
    with pytest.raises(cc.ClassViolationError):
        cc.WeightPair([0.5], [0.5])
    with pytest.raises(cc.CornercutError):
        cc.WeightPair([0.25, 0.3], [0.75])


def test_corner_cut_square():
    square = cc.make_closed_polyline([[0, 0], [1, 0], [1, 1], [0, 1]])
    cut = cc.corner_cut_step(square, cc.WeightPair([0.25], [0.75]))
    expected = [
        [0.25, 0], [0.75, 0], [1, 0.25], [1, 0.75],
        [0.75, 1], [0.25, 1], [0, 0.75], [0, 0.25],
    ]
    assert len(cut) == 8
    for got, want in zip(cut.points, expected):
        assert got == pytest.approx(want, abs=1e-15)


def test_points_run_bounds():
    square = cc.make_closed_polyline([[0, 0], [1, 0], [1, 1], [0, 1]])
    run = cc.run_points(square, chaikin_schedule(), 4)
    assert len(run.levels) == 5
    assert run.lipschitz == 1.0
    for k in range(4):
        measured = cc.successive_sup_distance(run, k, 16)
        bound = 0.5 * run.lipschitz * cc.mesh_size(run.levels[k + 1])
        assert measured <= bound + 1e-12


def test_not_certified_raises():
    square = cc.make_closed_polyline([[0, 0], [1, 0], [1, 1], [0, 1]])
    bad = cc.WeightSchedule(cc.WeightPair([0.1, 0.45], [0.2, 0.9]))
    with pytest.raises(cc.NotCertifiedError):
        cc.run_points(square, bad, 2)


def test_transfinite_operations():
    assert cc.linear_interp(0, 2, 1, 5, 1.5) == pytest.approx(4.0)
    assert cc.divided_diff2(0, 1, 0.5, 0, 1, 0.25) == pytest.approx(1.0)
    assert cc.msdd(0, 1, 0, 1, 0, 1, 0, 0) == pytest.approx(1.0)
    assert cc.msdd(lambda s, t: s * t, 0.3, 1.7, -0.2, 2.4) == pytest.approx(1.0)

    err = cc.coons_error_exact(lambda s, t: s * s * t * t, cc.Rect(0, 1, 0, 1), 0.5, 0.5)
    assert err == pytest.approx(1 / 16)
    assert cc.coons_error_bound(4.0, cc.Rect(0, 1, 0, 1)) == pytest.approx(1.0)


def test_net_pipeline():
    grid = cc.make_uniform_grid(0, 4, 4, 0, 4, 4)
    net = cc.net_from_function(lambda s, t: s * t, grid)
    assert cc.check_c0(net, 1e-9).compatible

    surface = cc.PiecewiseCoonsSurface(net)
    assert surface(1.3, 2.2) == pytest.approx(1.3 * 2.2)

    schedule = chaikin_schedule()
    run = cc.run_nets(net, schedule, schedule, 3)
    assert run.level_count == 4
    assert run.bmsdd_estimated
    assert run.bmsdd_constant == pytest.approx(1.0)
    for k in range(3):
        assert cc.net_successive_distance(run, k, 9) <= 1e-12

    refined = run.net(1)
    assert len(refined.grid.s) == 8  # two new knots per old cell
    assert cc.estimate_bmsdd(run.net(0), 8) == pytest.approx(1.0)


def test_builtin_registry():
    names = cc.builtin_surface_names()
    assert "sincos" in names and "product" in names
    grid = cc.GridT([0.0, 1.0, 2.0], [0.0, 1.0, 2.0])
    net = cc.net_from_builtin("sincos", grid)
    assert net.crossing(1, 2) == pytest.approx(math.sin(1.0) * math.cos(2.0))


def test_sup_distance_on_traces():
    grid = cc.make_uniform_grid(0, 2, 2, 0, 2, 2)
    net = cc.net_from_function(lambda s, t: math.sin(s) * math.cos(t), grid)
    surface = cc.PiecewiseCoonsSurface(net)
    finer = cc.refine_grid(grid, cc.WeightPair([0.25], [0.75]), cc.WeightPair([0.25], [0.75]))
    restricted = cc.restrict_to_grid(surface, finer)
    assert restricted.level == 1
    assert restricted.phi(0).representation == cc.Representation.surface_trace
