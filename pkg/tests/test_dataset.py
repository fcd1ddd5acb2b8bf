import numpy as np
import pytest

from l2flow.dataset import (
    Dataset,
    DatasetError,
    generate_two_moons,
    load_csv,
    load_points,
    save_csv,
)


def test_single_point_per_class_lies_on_noiseless_curves():
    ds = generate_two_moons(1, 0.0, seed=123)
    assert ds.n == 2 and ds.m == 2
    # theta = 0 on both moons
    np.testing.assert_array_equal(ds.points, [[1.0, 0.0], [0.0, 0.5]])
    np.testing.assert_array_equal(ds.labels, [1.0, -1.0])


def test_noiseless_points_are_on_moon_curves():
    ds = generate_two_moons(37, 0.0, seed=0)
    up = ds.points[ds.labels == 1]
    low = ds.points[ds.labels == -1]
    np.testing.assert_allclose(np.hypot(up[:, 0], up[:, 1]), 1.0, atol=1e-12)
    assert np.all(up[:, 1] >= -1e-12)
    np.testing.assert_allclose(np.hypot(low[:, 0] - 1.0, low[:, 1] - 0.5), 1.0, atol=1e-12)
    assert np.all(low[:, 1] <= 0.5 + 1e-12)


def test_generation_is_deterministic_per_seed():
    a = generate_two_moons(50, 0.1, 7)
    b = generate_two_moons(50, 0.1, 7)
    np.testing.assert_array_equal(a.points, b.points)
    assert a == b
    c = generate_two_moons(50, 0.1, 8)
    assert not np.array_equal(a.points, c.points)


@pytest.mark.parametrize("bad", [0, -3, 2.5])
def test_generate_rejects_bad_class_size(bad):
    with pytest.raises(DatasetError):
        generate_two_moons(bad, 0.1, 0)


def test_load_simple_csv(tmp_path):
    f = tmp_path / "d.csv"
    f.write_text("1.0,2.0,1\n3.0,4.0,-1")
    ds = load_csv(f)
    assert (ds.n, ds.m) == (2, 2)
    np.testing.assert_array_equal(ds.labels, [1, -1])
    np.testing.assert_array_equal(ds.points, [[1, 2], [3, 4]])


def test_bad_label_names_row(tmp_path):
    f = tmp_path / "d.csv"
    f.write_text("1.0,2.0,1\n3.0,4.0,0\n")
    with pytest.raises(DatasetError, match="row 2"):
        load_csv(f)


def test_ragged_rows_and_garbage_are_errors(tmp_path):
    f = tmp_path / "d.csv"
    f.write_text("1.0,2.0,1\n3.0,-1\n")
    with pytest.raises(DatasetError, match="row 2"):
        load_csv(f)
    f.write_text("1.0,2.0,1\n3.0,abc,-1\n")
    with pytest.raises(DatasetError, match="row 2"):
        load_csv(f)


def test_csv_round_trip_is_exact(tmp_path):
    ds = generate_two_moons(50, 0.1, 7)
    f = tmp_path / "moons.csv"
    save_csv(ds, f)
    assert load_csv(f) == ds
    assert len(f.read_text().splitlines()) == 100


def test_load_points_with_and_without_labels(tmp_path):
    f = tmp_path / "p.csv"
    f.write_text("0.5,1.5\n2,3\n")
    X, y = load_points(f, 2)
    assert y is None and X.shape == (2, 2)
    f.write_text("0.5,1.5,1\n2,3,-1\n")
    X, y = load_points(f, 2)
    np.testing.assert_array_equal(y, [1, -1])
    with pytest.raises(DatasetError):
        load_points(f, 5)


def test_dataset_invariants():
    with pytest.raises(DatasetError):
        Dataset([[0.0], [1.0]], [1, 1])  # one class only
    with pytest.raises(DatasetError):
        Dataset([[0.0], [1.0]], [1, 2])
    with pytest.raises(DatasetError):
        Dataset([[0.0]], [1])
