import numpy as np
import pytest

from l2flow.classifier import decision_grid, decision_value, decision_values, predict, sign_labels
from l2flow.dataset import Dataset
from l2flow.dual import TrainedModel, build, extract_model
from l2flow.kernel import KernelSpec

from conftest import POLY3


@pytest.fixture
def toy_model():
    return TrainedModel(
        support_points=np.array([[1.0, 0.0], [0.0, 1.0]]),
        coefficients=np.array([0.5, -0.5]),
        theta=0.0,
        kernel=KernelSpec("linear"),
        support_indices=np.array([0, 1]),
    )


def test_hand_evaluated_decisions(toy_model):
    # 1/2 (1 + 1) - 1/2 (0 + 1)
    assert decision_value(toy_model, [1.0, 0.0]) == 0.5
    assert decision_value(toy_model, [0.0, 1.0]) == -0.5
    for t in (-2.0, 0.0, 0.3, 7.0):
        v = decision_value(toy_model, [t, t])
        assert v == 0.0
        assert sign_labels([v])[0] == 1


def test_dimension_mismatch(toy_model):
    with pytest.raises(ValueError):
        decision_value(toy_model, [1.0, 2.0, 3.0])


def test_separable_pair_is_classified_perfectly():
    ds = Dataset([[1.0, 0.0], [0.0, 1.0]], [1, -1])
    p = build(ds, KernelSpec("linear"), 1.0)
    model = extract_model(p, [0.5, 0.5], tau=0.0)
    labels, acc = predict(model, ds)
    assert acc == 1.0
    np.testing.assert_array_equal(labels, [1, -1])


def test_flipping_coefficients_flips_predictions():
    rng = np.random.default_rng(0)
    X = rng.normal(size=(10, 2))
    y = np.where(X[:, 0] > 0, 1.0, -1.0)
    y[:2] = [1.0, -1.0]
    p = build(Dataset(X, y), POLY3, 10.0)
    model = extract_model(p, rng.dirichlet(np.ones(10)), tau=0.0)
    flipped = TrainedModel(model.support_points, -model.coefficients, -model.theta, model.kernel,
                           model.support_indices)
    Q = rng.normal(size=(200, 2))
    v, vf = decision_values(model, Q), decision_values(flipped, Q)
    nz = v != 0
    np.testing.assert_array_equal(sign_labels(v[nz]), -sign_labels(vf[nz]))


def test_linear_decision_matches_primal_weights():
    rng = np.random.default_rng(1)
    X = rng.normal(size=(12, 2))
    y = np.array([1.0, -1.0] * 6)
    p = build(Dataset(X, y), KernelSpec("linear"), 5.0)
    mu = rng.dirichlet(np.ones(12))
    model = extract_model(p, mu, tau=0.0)
    w = X.T @ (y * mu)
    Q = rng.uniform(-3, 3, size=(300, 2))
    np.testing.assert_allclose(decision_values(model, Q), Q @ w + np.sum(y * mu), rtol=0, atol=1e-12)


def test_zero_model_grid_is_zero(toy_model):
    zero = TrainedModel(toy_model.support_points, np.zeros(2), 0.0, toy_model.kernel, toy_model.support_indices)
    grid = decision_grid(zero, (-1, 1, -1, 1), 5)
    np.testing.assert_array_equal(grid.values, 0.0)


def test_grid_matches_pointwise_calls():
    rng = np.random.default_rng(2)
    X = rng.normal(size=(8, 2))
    p = build(Dataset(X, [1, -1] * 4), POLY3, 10.0)
    model = extract_model(p, rng.dirichlet(np.ones(8)), tau=0.0)
    grid = decision_grid(model, (-1.5, 2.5, -1.5, 1.5), 13)
    assert grid.values.shape == (13, 13)
    for i in range(0, 13, 3):
        for j in range(0, 13, 4):
            assert grid.values[i, j] == decision_value(model, [grid.xs[j], grid.ys[i]])


def test_grid_requires_2d_and_sane_box(toy_model):
    model3 = TrainedModel(np.eye(3), np.ones(3) / 3, -1.0, KernelSpec("linear"), np.arange(3))
    with pytest.raises(ValueError):
        decision_grid(model3, (0, 1, 0, 1), 4)
    with pytest.raises(ValueError):
        decision_grid(toy_model, (1, 1, 0, 1), 4)
    with pytest.raises(ValueError):
        decision_grid(toy_model, (0, 1, 0, 1), 1)


@pytest.mark.slow
def test_two_moons_training_accuracy(moons, moons_poly, flow_default, flow_equilibrium):
    for traj in (flow_default, flow_equilibrium):
        model = extract_model(moons_poly, traj.final)
        assert predict(model, moons)[1] >= 0.99
