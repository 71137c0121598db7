"""Pairwise distances over persistence images and 2D embeddings
(classical MDS, Isomap, exact t-SNE)."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components, csgraph_from_dense, dijkstra
from scipy.spatial.distance import pdist, squareform

from .errors import EigenFailure, PerplexityTooLarge, ResolutionMismatch
from .vectorize import PersistenceImage

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class DistanceMatrix:
    item_ids: tuple[str, ...]
    d: np.ndarray = field(repr=False)  # (n, n) float64, symmetric, zero diagonal

    def __post_init__(self):
        a = np.asarray(self.d, dtype=np.float64)
        object.__setattr__(self, "d", a)
        n = len(self.item_ids)
        if a.shape != (n, n):
            raise ValueError(f"distance matrix shape {a.shape} != ({n}, {n})")
        if not np.all(np.isfinite(a)) or a.min() < 0.0:
            raise ValueError("distances must be finite and nonnegative")
        if np.any(np.diagonal(a) != 0.0) or not np.array_equal(a, a.T):
            raise ValueError("distance matrix must be symmetric with zero diagonal")

    @property
    def n(self) -> int:
        return len(self.item_ids)


@dataclass(frozen=True)
class Embedding:
    method: str
    item_ids: tuple[str, ...]
    coords: np.ndarray = field(repr=False)  # (n, 2) float64
    params: dict = field(default_factory=dict)
    seed: int | None = None
    diagnostics: dict = field(default_factory=dict)


def distance_matrix(images: list[PersistenceImage]) -> DistanceMatrix:
    """Euclidean norm of pixel-wise differences, one evaluation per unordered
    pair, mirrored into a full matrix."""
    res = images[0].resolution
    for im in images[1:]:
        if im.resolution != res:
            raise ResolutionMismatch(res, im.resolution)
    x = np.stack([im.pixels for im in images])
    d = squareform(pdist(x, metric="euclidean"))
    return DistanceMatrix(item_ids=tuple(im.item_id for im in images), d=d)


def _signed(coords: np.ndarray) -> np.ndarray:
    # flip each axis so its largest-magnitude coordinate is positive
    for k in range(coords.shape[1]):
        col = coords[:, k]
        i = int(np.argmax(np.abs(col)))
        if col[i] < 0.0:
            coords[:, k] = -col
    return coords


def classical_mds(D: DistanceMatrix, out_dim: int = 2) -> Embedding:
    """Double-centered squared distances, top eigenpairs, sqrt-scaled axes.

    Negative eigenvalues are clamped to zero, so axes beyond the matrix's
    Euclidean rank come out all-zero.
    """
    n = D.n
    sq = D.d**2
    row_mean = sq.mean(axis=1, keepdims=True)
    col_mean = sq.mean(axis=0, keepdims=True)
    B = -0.5 * (sq - row_mean - col_mean + sq.mean())
    try:
        eigvals, eigvecs = np.linalg.eigh(B)
    except np.linalg.LinAlgError as e:
        raise EigenFailure(f"{e} (n={n}, |B|_max={np.abs(B).max():.3g})") from e
    order = np.argsort(eigvals)[::-1][:out_dim]
    coords = np.zeros((n, out_dim), dtype=np.float64)
    # eigenvalues within solver noise of zero count as zero, so degenerate
    # axes come out exactly all-zero
    floor = 1e-12 * max(float(eigvals.max()), 0.0)
    for k, idx in enumerate(order):
        lam = eigvals[idx] if eigvals[idx] > floor else 0.0
        coords[:, k] = eigvecs[:, idx] * np.sqrt(lam)
    return Embedding(
        method="mds",
        item_ids=D.item_ids,
        coords=_signed(coords),
        params={"out_dim": out_dim},
    )


def _knn_graph(d: np.ndarray, k: int) -> np.ndarray:
    """Symmetric k-NN adjacency mask (edge if either endpoint lists the other)."""
    n = d.shape[0]
    adj = np.zeros((n, n), dtype=bool)
    for i in range(n):
        order = np.argsort(d[i], kind="stable")
        neighbors = [j for j in order if j != i][:k]
        adj[i, neighbors] = True
    return adj | adj.T


def geodesic_matrix(D: DistanceMatrix, k: int) -> tuple[np.ndarray, list[tuple[int, int]]]:
    """Geodesic distances over the symmetric k-NN graph of D.

    A disconnected graph is repaired by repeatedly adding the globally
    shortest edge between components; the repaired edges are returned too.
    Zero-weight edges (coincident items) are kept as real edges.
    """
    n = D.n
    if not 1 <= k < n:
        raise ValueError(f"need n > k >= 1, got n={n}, k={k}")
    adj = _knn_graph(D.d, k)
    repaired: list[tuple[int, int]] = []
    while True:
        ncomp, labels = connected_components(csr_matrix(adj), directed=False)
        if ncomp == 1:
            break
        cross = labels[:, None] != labels[None, :]
        masked = np.where(cross, D.d, np.inf)
        a, b = np.unravel_index(np.argmin(masked), masked.shape)
        adj[a, b] = adj[b, a] = True
        repaired.append((int(a), int(b)))
        log.info("isomap: connected components %d and %d via edge (%d, %d), d=%g",
                 labels[a], labels[b], a, b, D.d[a, b])

    if adj.sum() == n * (n - 1):
        # complete graph over a metric: geodesics are the direct distances
        geo = D.d.copy()
    else:
        dense = np.where(adj, D.d, np.inf)
        np.fill_diagonal(dense, np.inf)
        geo = dijkstra(csgraph_from_dense(dense, null_value=np.inf), directed=False)
        np.fill_diagonal(geo, 0.0)
        # per-source runs accumulate path sums in different orders, so the
        # two directions can disagree by an ulp; the smaller sum wins
        np.minimum(geo, geo.T, out=geo)
        # paths sum over metric edges, so the straight-line distance is a
        # floor; clamping removes sub-ulp rounding below it
        np.maximum(geo, D.d, out=geo)
    return geo, repaired


def isomap(D: DistanceMatrix, k: int = 10, out_dim: int = 2) -> Embedding:
    """Classical MDS on k-NN-graph geodesics (metric input assumed; the
    2-norm construction guarantees it)."""
    geo, repaired = geodesic_matrix(D, k)
    inner = classical_mds(DistanceMatrix(item_ids=D.item_ids, d=geo), out_dim=out_dim)
    return Embedding(
        method="isomap",
        item_ids=D.item_ids,
        coords=inner.coords,
        params={"k": k, "out_dim": out_dim, "repaired_edges": repaired},
    )


def conditional_probabilities(
    d: np.ndarray, perplexity: float, tol: float = 1e-5, max_steps: int = 50
) -> tuple[np.ndarray, np.ndarray]:
    """Per-row Gaussian conditionals calibrated by bisection on the bandwidth.

    Returns (P, achieved) where P[i, j] = p(j|i) and achieved[i] is the
    realized perplexity 2**H(P_i). The search stops once
    |achieved - perplexity| <= tol*perplexity or after max_steps bisections;
    rows with enough duplicate distances may never reach the target, in which
    case the closest achievable distribution is kept.
    """
    n = d.shape[0]
    sq = d.astype(np.float64) ** 2
    P = np.zeros((n, n), dtype=np.float64)
    achieved = np.zeros(n, dtype=np.float64)
    mask = ~np.eye(n, dtype=bool)
    for i in range(n):
        di = sq[i][mask[i]]
        shift = di.min()

        def row_perplexity(beta: float) -> tuple[float, np.ndarray]:
            p = np.exp(-beta * (di - shift))
            s = p.sum()
            p /= s
            # entropy in nats of the normalized row; shift cancels out
            h = np.log(s) + beta * np.dot(di - shift, p)
            return float(np.exp(h)), p

        beta, lo, hi = 1.0, 0.0, np.inf
        perp, p = row_perplexity(beta)
        for _ in range(max_steps):
            if abs(perp - perplexity) <= tol * perplexity:
                break
            if perp > perplexity:  # too spread out: raise beta
                lo = beta
                beta = beta * 2.0 if hi == np.inf else (beta + hi) / 2.0
            else:
                hi = beta
                beta = beta / 2.0 if lo == 0.0 else (beta + lo) / 2.0
            perp, p = row_perplexity(beta)
        P[i][mask[i]] = p
        achieved[i] = perp
    return P, achieved


def _kl_divergence(P: np.ndarray, Q: np.ndarray) -> float:
    eps = np.finfo(np.float64).tiny
    return float(np.sum(P * np.log(np.maximum(P, eps) / np.maximum(Q, eps))))


def tsne(
    D: DistanceMatrix,
    perplexity: float = 30.0,
    iterations: int = 1000,
    learning_rate: float = 200.0,
    seed: int = 0,
    init: np.ndarray | None = None,
    early_exaggeration: float = 12.0,
    exaggeration_iters: int = 250,
) -> Embedding:
    """Exact t-SNE on a precomputed distance matrix.

    Momentum gradient descent (0.5, then 0.8 after the exaggeration phase),
    early exaggeration of the symmetrized similarities, and a seeded Gaussian
    initialization of standard deviation 1e-4. Deterministic given the seed.
    """
    n = D.n
    if n <= 3 * perplexity:
        raise PerplexityTooLarge(perplexity, n)

    cond, achieved = conditional_probabilities(D.d, perplexity)
    P = (cond + cond.T) / (2.0 * n)
    eps = np.finfo(np.float64).tiny
    P = np.maximum(P, eps)
    np.fill_diagonal(P, 0.0)

    if init is not None:
        Y = np.array(init, dtype=np.float64, copy=True)
        if Y.shape != (n, 2):
            raise ValueError(f"init shape {Y.shape} != ({n}, 2)")
    else:
        rng = np.random.default_rng(seed)
        Y = rng.normal(0.0, 1e-4, size=(n, 2))

    def q_matrix(y: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        sq = np.sum(y**2, axis=1)
        num = 1.0 / (1.0 + (sq[:, None] + sq[None, :] - 2.0 * (y @ y.T)))
        np.fill_diagonal(num, 0.0)
        return num / num.sum(), num

    Q0, _ = q_matrix(Y)
    kl_initial = _kl_divergence(P, Q0)

    update = np.zeros_like(Y)
    for it in range(iterations):
        exaggerate = it < exaggeration_iters
        momentum = 0.5 if it < exaggeration_iters else 0.8
        Pe = P * early_exaggeration if exaggerate else P
        Q, num = q_matrix(Y)
        W = (Pe - Q) * num
        grad = 4.0 * ((np.diag(W.sum(axis=1)) - W) @ Y)
        update = momentum * update - learning_rate * grad
        Y = Y + update

    Qf, _ = q_matrix(Y)
    kl_final = _kl_divergence(P, Qf)

    return Embedding(
        method="tsne",
        item_ids=D.item_ids,
        coords=Y,
        params={
            "perplexity": perplexity,
            "iterations": iterations,
            "learning_rate": learning_rate,
            "early_exaggeration": early_exaggeration,
            "exaggeration_iters": exaggeration_iters,
        },
        seed=seed,
        diagnostics={
            "kl_initial": kl_initial,
            "kl_final": kl_final,
            "max_perplexity_error": float(np.abs(achieved - perplexity).max()),
            "achieved_perplexity": achieved,
        },
    )
