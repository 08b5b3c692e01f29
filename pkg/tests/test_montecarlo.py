"""Monte Carlo harness: sampling correctness, reproducibility and the
statistical comparison path."""

import numpy as np
import pytest

from srbm import montecarlo as mc
from srbm.polyalg import DomainError


def _params(**kw):
    base = dict(N=60, d=2, Z=3.0, samples=3, seed=42)
    base.update(kw)
    return mc.EnsembleParams(**base)


class TestParams:
    def test_validation(self):
        with pytest.raises(DomainError):
            _params(Z=0.0)
        with pytest.raises(DomainError):
            _params(Z=60.0)
        with pytest.raises(DomainError):
            _params(N=0)

    def test_t(self):
        assert _params(d=3, Z=6.0).t == 2.0


class TestUnitVectors:
    def test_norm(self):
        rng = np.random.default_rng(0)
        for d in (1, 2, 5, 40):
            v = mc.sample_unit_vector(d, rng)
            assert abs(np.linalg.norm(v) - 1.0) < 1e-12

    def test_d1_signs(self):
        rng = np.random.default_rng(1)
        vals = [mc.sample_unit_vector(1, rng)[0] for _ in range(200)]
        assert set(np.round(vals, 12)) <= {-1.0, 1.0}
        assert 40 < sum(v > 0 for v in vals) < 160

    def test_second_moment(self):
        # <(a.e1)^2> = 1/d
        rng = np.random.default_rng(2)
        d = 4
        draws = rng.standard_normal((20000, d))
        draws /= np.linalg.norm(draws, axis=1, keepdims=True)
        m = np.mean(draws[:, 0] ** 2)
        se = np.std(draws[:, 0] ** 2) / np.sqrt(draws.shape[0])
        assert abs(m - 0.25) < 4 * se

    def test_fourth_moment(self):
        # <(a.e1)^4> = c2/d = 3/(d(d+2)) -> 3/8 at d=2
        rng = np.random.default_rng(3)
        d = 2
        draws = rng.standard_normal((20000, d))
        draws /= np.linalg.norm(draws, axis=1, keepdims=True)
        x4 = draws[:, 0] ** 4
        se = np.std(x4) / np.sqrt(x4.size)
        assert abs(np.mean(x4) - 3 / 8) < 4 * se


class TestMatrices:
    def test_adjacency_structure(self):
        p = _params()
        rng = mc._stream(p, 0)
        A = mc.sample_adjacency(p, rng).toarray()
        assert np.array_equal(A, A.T)
        d = p.d
        for i in range(p.N):
            blk = A[i * d:(i + 1) * d, i * d:(i + 1) * d]
            assert np.abs(blk).max() == 0.0
        # every nonzero off-diagonal block is a rank-one projector
        found = 0
        for i in range(p.N):
            for j in range(i + 1, p.N):
                blk = A[i * d:(i + 1) * d, j * d:(j + 1) * d]
                if np.abs(blk).max() > 0:
                    found += 1
                    assert np.abs(blk @ blk - blk).max() < 1e-10
                    assert abs(np.trace(blk) - 1.0) < 1e-10
        assert found > 0

    def test_laplacian_structure(self):
        p = _params()
        rng = mc._stream(p, 0)
        L = mc.sample_laplacian(p, rng).toarray()
        assert np.array_equal(L, L.T)
        d = p.d
        for i in range(p.N):
            row_sum = sum(L[i * d:(i + 1) * d, j * d:(j + 1) * d]
                          for j in range(p.N))
            assert np.abs(row_sum).max() < 1e-12
        evs = np.linalg.eigvalsh(L)
        assert evs.min() >= -1e-8 * max(np.abs(evs).max(), 1.0)

    def test_d1_is_graph(self):
        p = _params(d=1, N=80)
        rng = mc._stream(p, 0)
        A = mc.sample_adjacency(p, rng).toarray()
        assert set(np.unique(A)) <= {0.0, 1.0}

    def test_reproducible(self):
        p = _params()
        a1 = mc.sample_adjacency(p, mc._stream(p, 0)).toarray()
        a2 = mc.sample_adjacency(p, mc._stream(p, 0)).toarray()
        assert np.array_equal(a1, a2)
        a3 = mc.sample_adjacency(p, mc._stream(p, 1)).toarray()
        assert not np.array_equal(a1, a3)


class TestMoments:
    def test_k1_adjacency_zero(self):
        p = _params()
        A = mc.sample_adjacency(p, mc._stream(p, 0))
        assert mc.empirical_moment(A, 1) == 0.0

    def test_k2_frobenius_identity(self):
        p = _params()
        A = mc.sample_adjacency(p, mc._stream(p, 0))
        dense = A.toarray()
        want = np.sum(dense * dense) / p.size
        assert abs(mc.empirical_moment(A, 2) - want) < 1e-12

    def test_against_eigenvalues(self):
        p = _params()
        L = mc.sample_laplacian(p, mc._stream(p, 0))
        evs = np.linalg.eigvalsh(L.toarray())
        for k in (1, 2, 3, 4):
            assert abs(mc.empirical_moment(L, k) - np.mean(evs ** k)) < 1e-8

    def test_order_domain(self):
        p = _params()
        A = mc.sample_adjacency(p, mc._stream(p, 0))
        with pytest.raises(DomainError):
            mc.empirical_moment(A, 0)


class TestComparison:
    def test_report_fields(self):
        p = _params(samples=10)
        rep = mc.run_comparison(p, "laplacian", [1, 2])
        recs = [r for r in rep.records if "order" in r]
        assert [r["order"] for r in recs] == [1, 2]
        for r in recs:
            assert r["standard_error"] > 0
            assert np.isfinite(r["z_score"])
        assert rep.wall_time > 0
        import json
        parsed = json.loads(rep.to_json())
        assert parsed["model"] == "laplacian"

    def test_order_cap(self):
        with pytest.raises(DomainError):
            mc.run_comparison(_params(), "laplacian", [9])

    def test_reproducible_report(self):
        p = _params(samples=5)
        r1 = mc.run_comparison(p, "adjacency", [2])
        r2 = mc.run_comparison(p, "adjacency", [2])
        assert r1.records == r2.records

    def test_histogram(self):
        p = _params(samples=2)
        centers, dens = mc.empirical_density(p, "laplacian", bins=30)
        assert len(centers) == 30
        width = centers[1] - centers[0]
        assert abs(np.sum(dens) * width - 1.0) < 1e-6


class TestDump:
    def test_roundtrip(self, tmp_path):
        p = _params()
        A = mc.sample_adjacency(p, mc._stream(p, 0))
        path = tmp_path / "mat.bin"
        mc.dump_matrix(path, A)
        back = mc.load_matrix(path)
        assert np.array_equal(back, A.toarray())
