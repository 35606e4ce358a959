import numpy as np
import pytest

from mackey import catalog, lie
from mackey import verify as V
from mackey.errors import DomainError

SC_GAL = catalog.G.group("galilei_ext").dual_scale


def _oscillator(sign=1.0):
    """R^2 with omega = dq^dp, the rotation action and H = (q^2 + p^2)/2."""
    return V.ExampleSpace(
        name="osc", tag="test", chart_dim=2, algebra=lie.abelian(1),
        omega=lambda pt: np.array([[0.0, 1.0], [-1.0, 0.0]]),
        moment=lambda pt: np.array([0.5 * pt @ pt]),
        vector_field=lambda x, pt: sign * x[0] * np.array([-pt[1], pt[0]]),
        sample=lambda rng: rng.uniform(-1, 1, 2),
    )


def _trivial():
    return V.ExampleSpace(
        name="trivial", tag="test", chart_dim=2, algebra=lie.abelian(2),
        omega=lambda pt: np.array([[0.0, 1.0], [-1.0, 0.0]]),
        moment=lambda pt: np.zeros(2), vector_field=lambda x, pt: np.zeros(2),
        sample=lambda rng: rng.uniform(-1, 1, 2), group_action=lambda g, pt: pt,
    )


def test_trivial_space_residuals_vanish():
    sp = _trivial()
    for x in sp.generators:
        assert V.moment_condition_residual(sp, x, [0.3, -0.2]) == 0.0
    assert V.equivariance_residual(sp, None, [0.1, 0.2], np.zeros(2), lambda g, v: v) == 0.0


def test_oscillator_and_wrong_sign():
    assert V.moment_condition_residual(_oscillator(), [1.0], [0.3, 0.8]) < 1e-10
    assert V.moment_condition_residual(_oscillator(-1.0), [1.0], [0.3, 0.8]) > 0.5


def test_convergence_order_is_quadratic():
    X = catalog.entry("solvable_nonsplit").spaces()[0]
    rng = np.random.default_rng(0)
    for _ in range(5):
        r1, r2, order = V.convergence_order(X, np.eye(6)[1], rng.uniform(-1, 1, 4))
        assert r1 < 1e-6 and order is not None and order > 1.9
    # quadratic moment: central differences are exact, no order observable
    assert V.convergence_order(_oscillator(), [1.0], [0.4, 0.1])[2] is None


def test_input_errors():
    sp = _oscillator()
    with pytest.raises(DomainError):
        V.moment_condition_residual(sp, [1.0], [0.0, 0.0], h=0)
    with pytest.raises(DomainError):
        V.moment_condition_residual(sp, [1.0], [0.0, 0.0, 0.0])
    with pytest.raises(DomainError):
        V.kks_coordinate_residual(sp, [0.1, 0.2])
    with pytest.raises(DomainError):
        V.equivariance_residual(sp, None, [0.0, 0.0], [0.0], lambda g, v: v)
    with pytest.raises(DomainError):
        V.fiber_orthogonality_residual(sp, [0.0, 0.0])
    with pytest.raises(DomainError):
        V.koenig_split_residual(sp, [0.0, 0.0], (None, None))
    with pytest.raises(DomainError):
        V.ExampleSpace(name="odd", tag="t", chart_dim=3, algebra=lie.abelian(1), omega=None,
                       moment=None, vector_field=None, sample=None)


def test_kks_on_orbits():
    rng = np.random.default_rng(1)
    X = catalog.entry("solvable_nonsplit").spaces()[0]
    U = catalog.entry("galilei_ext").spaces()[1]
    for sp in (X, U):
        for _ in range(10):
            pt = sp.sample(rng)
            assert V.kks_coordinate_residual(sp, pt) < 1e-9
            assert V.kks_coordinate_residual(sp, pt, [(0, 0), (1, 1)]) < 1e-15


def test_fiber_orthogonality_solvable():
    X = catalog.entry("solvable_nonsplit").spaces()[0]
    z = np.array([0.0, 0.0, 0.4, -0.7])
    res, dim_ok = V.fiber_orthogonality_residual(X, z)
    assert res < 1e-8 and dim_ok
    with pytest.raises(DomainError):
        V.fiber_orthogonality_residual(X, np.array([0.5, 0.0, 0.4, -0.7]))


def test_fiber_orthogonality_galilei():
    X = catalog.entry("galilei_ext").spaces()[0]
    z = np.r_[np.zeros(6), np.random.default_rng(2).uniform(-1, 1, 6)]
    res, dim_ok = V.fiber_orthogonality_residual(X, z)
    assert res < 1e-8 and dim_ok


def test_koenig_split():
    X = catalog.entry("galilei_ext").spaces()[0]
    orbit = lambda pt: catalog.galilei_orbit_part(pt) * SC_GAL
    proper = lambda pt: catalog.galilei_proper_part(pt) * SC_GAL
    pt = np.r_[np.zeros(6), 0.3, -0.1, 0.2, 0.5, 0.4, -0.6]
    # R = V = 0: the orbit part is the constant M(0, 0, 0, 0, 1)
    assert np.allclose(catalog.galilei_orbit_part(pt)[:10], 0)
    assert V.koenig_split_residual(X, pt, (orbit, proper)) < 1e-12
    rng = np.random.default_rng(3)
    for _ in range(10):
        assert V.koenig_split_residual(X, rng.uniform(-1, 1, 12), (orbit, proper)) < 1e-9


def test_koenig_unit_mass():
    X1 = catalog._galilei_spaces(M=1.0)[0]
    parts = (lambda pt: catalog.galilei_orbit_part(pt, 1.0) * SC_GAL, lambda pt: catalog.galilei_proper_part(pt) * SC_GAL)
    pt = np.random.default_rng(4).uniform(-1, 1, 12)
    assert V.koenig_split_residual(X1, pt, parts) < 1e-9


@pytest.mark.parametrize("tag", catalog.tags())
def test_run_verify_passes(tag):
    rows = V.run_verify(tag, seed=7, samples=8)
    bad = [r.line() for r in rows if not r.passed]
    assert not bad, bad


def test_run_verify_deterministic_and_unknown_tag(monkeypatch):
    a = [r.max_residual for r in V.run_verify("kodaira_thurston", seed=3, samples=5)]
    b = [r.max_residual for r in V.run_verify("kodaira_thurston", seed=3, samples=5)]
    assert a == b
    monkeypatch.setenv("MACKEY_SEED", "3")
    assert V.default_seed() == 3
    assert [r.max_residual for r in V.run_verify("kodaira_thurston", samples=5)] == a
    monkeypatch.delenv("MACKEY_SEED")
    assert V.default_seed() == V.DEFAULT_SEED
    with pytest.raises(DomainError):
        V.run_verify("bogus")


def test_residual_report_pass_logic():
    assert V.ResidualReport("f", "t", 1, 0.1, 1.0).passed
    assert not V.ResidualReport("f", "t", 1, 0.1, 1.0, {"extra_ok": False}).passed
    assert V.ResidualReport("f", "t", 1, 2.0, 1.0).line().startswith("FAIL")
