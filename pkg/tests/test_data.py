import numpy as np
import pytest

from tramkit import Dataset, SyntheticSpec, gen_synthetic, load_csv, save_csv, split_validation
from tramkit.data import save_mixture_meta


def test_sigma_zero_collapses_to_means():
    spec = SyntheticSpec(n=200, d=3, k_true=4, sigma2=0.0, seed=1)
    res = gen_synthetic(spec)
    means = {tuple(m) for m in res.means}
    for p in res.data.points:
        assert tuple(p) in means


def test_single_component_law_of_large_numbers():
    n = 100_000
    spec = SyntheticSpec(n=n, d=4, k_true=1, sigma2=2.0, seed=2)
    res = gen_synthetic(spec)
    sigma = np.sqrt(spec.sigma2)
    dev = np.abs(res.data.points.mean(axis=0) - res.means[0])
    assert np.all(dev <= 4.0 * sigma / np.sqrt(n))


def test_dirichlet_weights_are_heavy_tailed():
    hits = 0
    for seed in range(50):
        spec = SyntheticSpec(n=2000, d=2, k_true=100, dirichlet_alpha=1 / 20, seed=seed)
        res = gen_synthetic(spec)
        # occupied components: those that actually produced points
        dists = ((res.data.points[:, None, :] - res.means[None, :, :]) ** 2).sum(-1)
        counts = np.bincount(dists.argmin(1), minlength=100)
        occupied = counts[counts > 0]
        if occupied.max() > 10 * occupied.min():
            hits += 1
    assert hits >= 45  # >= 90% of seeds


def test_weights_sum_to_one_and_determinism():
    spec = SyntheticSpec(n=100, d=2, k_true=5, seed=3)
    a, b = gen_synthetic(spec), gen_synthetic(spec)
    assert a.weights.sum() == pytest.approx(1.0, rel=1e-12)
    assert np.array_equal(a.data.points, b.data.points)
    c = gen_synthetic(SyntheticSpec(n=100, d=2, k_true=5, seed=4))
    assert not np.array_equal(a.data.points, c.data.points)


def test_generated_points_pass_dataset_invariants():
    res = gen_synthetic(SyntheticSpec(n=50, d=7, k_true=3, seed=5))
    assert res.data.n == 50 and res.data.d == 7
    assert np.all(np.isfinite(res.data.points))


def test_load_csv_basic(tmp_path):
    f = tmp_path / "pts.csv"
    f.write_text("0,0\n1,1\n")
    data = load_csv(f)
    assert data.n == 2 and data.d == 2


def test_load_csv_reports_bad_row(tmp_path):
    f = tmp_path / "bad.csv"
    f.write_text("1,a\n")
    with pytest.raises(ValueError, match="row 1"):
        load_csv(f)
    g = tmp_path / "ragged.csv"
    g.write_text("1,2\n3\n")
    with pytest.raises(ValueError, match="row 2"):
        load_csv(g)
    h = tmp_path / "nan.csv"
    h.write_text("1,2\nnan,3\n")
    with pytest.raises(ValueError, match="row 2"):
        load_csv(h)


def test_load_csv_empty_file(tmp_path):
    f = tmp_path / "empty.csv"
    f.write_text("")
    with pytest.raises(ValueError):
        load_csv(f)


def test_csv_round_trip(tmp_path):
    rng = np.random.default_rng(6)
    data = Dataset(rng.normal(size=(20, 3)) * 1e3)
    f = tmp_path / "round.csv"
    save_csv(data, f)
    back = load_csv(f, has_header=True)
    assert np.array_equal(back.points, data.points)


def test_mixture_meta_sidecar(tmp_path):
    res = gen_synthetic(SyntheticSpec(n=10, d=2, k_true=3, seed=7))
    f = tmp_path / "meta.csv"
    save_mixture_meta(res, f)
    lines = f.read_text().strip().splitlines()
    assert lines[0] == "weight,mu0,mu1"
    assert len(lines) == 4
    weights = [float(line.split(",")[0]) for line in lines[1:]]
    assert sum(weights) == pytest.approx(1.0, rel=1e-12)


def test_split_sizes_and_disjointness():
    rng = np.random.default_rng(8)
    data = Dataset(rng.normal(size=(10, 2)))
    train, val = split_validation(data, 0.2, seed=1)
    assert val.n == 2 and train.n == 8
    combined = np.vstack([train.points, val.points])
    assert np.array_equal(
        np.sort(combined, axis=0), np.sort(data.points, axis=0)
    )


def test_split_determinism():
    rng = np.random.default_rng(9)
    data = Dataset(rng.normal(size=(30, 2)))
    t1, v1 = split_validation(data, 0.3, seed=5)
    t2, v2 = split_validation(data, 0.3, seed=5)
    assert np.array_equal(t1.points, t2.points)
    assert np.array_equal(v1.points, v2.points)


def test_split_empty_part_rejected():
    data = Dataset([[1.0]])
    with pytest.raises(ValueError):
        split_validation(data, 0.5, seed=0)
    small = Dataset([[1.0], [2.0], [3.0]])
    with pytest.raises(ValueError):
        split_validation(small, 0.1, seed=0)  # floor(0.3) = 0 validation points


def test_spec_validation():
    with pytest.raises(ValueError):
        SyntheticSpec(n=0)
    with pytest.raises(ValueError):
        SyntheticSpec(n=1, dirichlet_alpha=0.0)
    with pytest.raises(ValueError):
        SyntheticSpec(n=1, box=(4.0, 4.0))
