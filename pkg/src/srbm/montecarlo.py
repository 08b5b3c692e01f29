"""Monte Carlo sampling of the sparse random block ensembles.

Samples the N d x N d adjacency and Laplacian block matrices, computes
empirical spectral moments and eigenvalue histograms, and compares them
against the exact walk-enumeration moments with per-order z-scores.

Randomness is counter-based: each sample owns a Philox stream derived from
(seed, sample index), so results are bit-identical for a given seed no matter
how samples are scheduled.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field

import numpy as np
from scipy import sparse

from .averager import moment
from .polyalg import DomainError, eval_moment

__all__ = [
    "EnsembleParams",
    "SimReport",
    "sample_unit_vector",
    "sample_edges",
    "sample_adjacency",
    "sample_laplacian",
    "empirical_moment",
    "run_comparison",
    "empirical_density",
    "dump_matrix",
    "load_matrix",
]


@dataclass(frozen=True)
class EnsembleParams:
    """Parameters of one sparse block ensemble."""
    N: int
    d: int
    Z: float
    samples: int
    seed: int

    def __post_init__(self):
        if self.N < 1 or self.d < 1 or self.samples < 1:
            raise DomainError("N, d and samples must be positive")
        if not 0 < self.Z < self.N:
            raise DomainError("Z must lie in (0, N)")

    @property
    def t(self):
        return self.Z / self.d

    @property
    def size(self):
        return self.N * self.d


@dataclass
class SimReport:
    """Per-order empirical/exact comparison for one model."""
    model: str
    params: EnsembleParams
    records: list = field(default_factory=list)
    wall_time: float = 0.0

    def add(self, order, mean, stderr, exact):
        z = (mean - exact) / stderr if stderr > 0 else float("inf")
        self.records.append({
            "order": order, "empirical_mean": mean, "standard_error": stderr,
            "exact": exact, "z_score": z,
        })

    def max_abs_z(self):
        return max(abs(r["z_score"]) for r in self.records)

    def to_json(self):
        return json.dumps({
            "model": self.model,
            "params": {"N": self.params.N, "d": self.params.d,
                       "Z": self.params.Z, "samples": self.params.samples,
                       "seed": self.params.seed},
            "records": self.records,
            "wall_time": self.wall_time,
        }, indent=2)


def _stream(params: EnsembleParams, sample_idx: int):
    ss = np.random.SeedSequence([params.seed, sample_idx])
    return np.random.Generator(np.random.Philox(ss))


def sample_unit_vector(d, rng):
    """Uniform point on the (d-1)-sphere: normalized standard normals."""
    while True:
        v = rng.standard_normal(d)
        n = np.linalg.norm(v)
        if n > 1e-12:  # astronomically rare reject; keeps the norm safe
            return v / n


def sample_edges(params: EnsembleParams, rng):
    """Bernoulli(Z/N) edge set with one unit vector per present edge.

    Returns (i_idx, j_idx, vecs) with i_idx < j_idx elementwise and vecs of
    shape (n_edges, d).  The upper triangle is decided in one vectorized
    Bernoulli draw; vectors are drawn in edge order from the same stream."""
    N, d = params.N, params.d
    p = params.Z / N
    iu, ju = np.triu_indices(N, k=1)
    mask = rng.random(iu.size) < p
    i_idx, j_idx = iu[mask], ju[mask]
    vecs = rng.standard_normal((i_idx.size, d))
    norms = np.linalg.norm(vecs, axis=1, keepdims=True)
    norms[norms < 1e-12] = 1.0
    vecs /= norms
    return i_idx, j_idx, vecs


def _edge_blocks(i_idx, j_idx, vecs, d):
    """Sparse COO data for the symmetric off-diagonal projector blocks."""
    n_e = i_idx.size
    outer = vecs[:, :, None] * vecs[:, None, :]        # (n_e, d, d)
    a = np.arange(d)
    row_off, col_off = np.meshgrid(a, a, indexing="ij")
    rows_ij = (i_idx[:, None, None] * d + row_off).ravel()
    cols_ij = (j_idx[:, None, None] * d + col_off).ravel()
    data = outer.ravel()
    rows = np.concatenate([rows_ij, cols_ij])
    cols = np.concatenate([cols_ij, rows_ij])
    vals = np.concatenate([data, data])
    return rows, cols, vals, outer, n_e


def sample_adjacency(params: EnsembleParams, rng):
    """One adjacency block matrix: zero diagonal blocks, block (i, j) a
    rank-one projector on Bernoulli-selected edges, symmetric."""
    i_idx, j_idx, vecs = sample_edges(params, rng)
    rows, cols, vals, _, _ = _edge_blocks(i_idx, j_idx, vecs, params.d)
    n = params.size
    return sparse.csr_matrix((vals, (rows, cols)), shape=(n, n))


def sample_laplacian(params: EnsembleParams, rng):
    """One Laplacian block matrix: off-diagonal blocks -X_ij, diagonal block
    i the sum of the row's projectors.  Block-row sums vanish exactly."""
    i_idx, j_idx, vecs = sample_edges(params, rng)
    d = params.d
    rows, cols, vals, outer, n_e = _edge_blocks(i_idx, j_idx, vecs, d)
    n = params.size
    off = sparse.csr_matrix((-vals, (rows, cols)), shape=(n, n))
    a = np.arange(d)
    row_off, col_off = np.meshgrid(a, a, indexing="ij")
    diag_parts = []
    for idx in (i_idx, j_idx):
        r = (idx[:, None, None] * d + row_off).ravel()
        c = (idx[:, None, None] * d + col_off).ravel()
        diag_parts.append((r, c))
    drows = np.concatenate([diag_parts[0][0], diag_parts[1][0]])
    dcols = np.concatenate([diag_parts[0][1], diag_parts[1][1]])
    ddata = np.concatenate([outer.ravel(), outer.ravel()])
    diag = sparse.csr_matrix((ddata, (drows, dcols)), shape=(n, n))
    return off + diag


_SAMPLERS = {"adjacency": sample_adjacency, "laplacian": sample_laplacian}


def empirical_moment(matrix, k):
    """Tr M^k / (N d) by repeated sparse multiplication."""
    if k < 1:
        raise DomainError("moment order must be >= 1")
    n = matrix.shape[0]
    power = matrix
    for _ in range(k - 1):
        power = power @ matrix
    if sparse.issparse(power):
        tr = power.diagonal().sum()
    else:
        tr = np.trace(power)
    return float(tr) / n


def run_comparison(params: EnsembleParams, model, orders,
                   order_cap=8) -> SimReport:
    """Sample the ensemble and compare empirical moments against the exact
    values at t = Z/d for the given d, with Welford mean/variance."""
    if model not in _SAMPLERS:
        raise DomainError(f"unknown model {model!r}")
    orders = sorted(set(orders))
    if not orders:
        raise DomainError("no orders requested")
    if max(orders) > order_cap:
        raise DomainError(
            f"order {max(orders)} exceeds the cap {order_cap} "
            "(finite-N bias grows with order)")
    t0 = time.perf_counter()
    count = 0
    mean = np.zeros(len(orders))
    m2 = np.zeros(len(orders))
    degenerate = 0
    for s in range(params.samples):
        rng = _stream(params, s)
        mat = _SAMPLERS[model](params, rng)
        if mat.nnz == 0:
            degenerate += 1
        vals = np.array([empirical_moment(mat, k) for k in orders])
        count += 1
        delta = vals - mean
        mean += delta / count
        m2 += delta * (vals - mean)
    report = SimReport(model=model, params=params)
    if degenerate:
        report.records.append(
            {"warning": f"{degenerate} all-zero sample(s) at this Z"})
    var = m2 / (count - 1) if count > 1 else np.full(len(orders), np.inf)
    for pos, k in enumerate(orders):
        exact = float(eval_moment(moment(model, k), params.t, params.d))
        stderr = float(np.sqrt(var[pos] / count))
        report.add(k, float(mean[pos]), stderr, exact)
    report.wall_time = time.perf_counter() - t0
    return report


def empirical_density(params: EnsembleParams, model, bins=100,
                      lo=None, hi=None):
    """Eigenvalue histogram over all samples, normalized as a density.

    Returns (bin_centers, density).  Uses dense eigensolves; intended for
    modest N d."""
    if model not in _SAMPLERS:
        raise DomainError(f"unknown model {model!r}")
    all_eigs = []
    for s in range(params.samples):
        rng = _stream(params, s)
        mat = _SAMPLERS[model](params, rng).toarray()
        all_eigs.append(np.linalg.eigvalsh(mat))
    eigs = np.concatenate(all_eigs)
    rng_lo = eigs.min() if lo is None else lo
    rng_hi = eigs.max() if hi is None else hi
    counts, edges = np.histogram(eigs, bins=bins, range=(rng_lo, rng_hi),
                                 density=True)
    centers = 0.5 * (edges[:-1] + edges[1:])
    return centers, counts


def dump_matrix(path, matrix):
    """Dense row-major float64 dump with a one-line JSON header.

    Layout: ascii line '{"n": <n>, "dtype": "float64"}' + newline, then
    n*n little-endian float64 values."""
    dense = matrix.toarray() if sparse.issparse(matrix) else np.asarray(matrix)
    n = dense.shape[0]
    with open(path, "wb") as fh:
        fh.write(json.dumps({"n": n, "dtype": "float64"}).encode() + b"\n")
        fh.write(dense.astype("<f8").tobytes())


def load_matrix(path):
    with open(path, "rb") as fh:
        header = json.loads(fh.readline().decode())
        n = header["n"]
        data = np.frombuffer(fh.read(), dtype="<f8")
    return data.reshape(n, n)
