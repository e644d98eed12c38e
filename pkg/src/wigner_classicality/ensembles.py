"""Joint eigenvalue densities and samplers for unitary-invariant ensembles.

Three ensembles are supported: Hilbert-Schmidt, and the two monotone-metric
ensembles (Bures and Bogoliubov-Kubo-Mori).  For each degeneracy type the
module provides the unnormalized joint density of the distinct eigenvalues
on the constraint surface ``sum k_i r_i = 1``, and a seeded sampler whose
output follows that density: matrix-model constructions where they exist
(trace-normalized Ginibre for Hilbert-Schmidt, the (I+U) G construction for
Bures), vectorized rejection sampling everywhere else.

Every density is a proportionality only.  Classicality indicators are ratios
of integrals of one fixed density, so normalization constants cancel; when a
normalized density is wanted (distribution tests), the constant comes from
quadrature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Sequence

import numpy as np

from .spectra import SQRT3, POLAR_RADIUS_MAX, DegeneracyType, OrderedSpectrum

#: Relative half-spread below which the BKM mean is evaluated by series.
BKM_SERIES_CUTOFF = 1e-4

#: Constraint sum k_i r_i must equal 1 within this.
CONSTRAINT_TOL = 1e-9

#: Rejection sampling aborts below this acceptance rate.
MIN_ACCEPTANCE = 1e-6

_U64 = 0xFFFFFFFFFFFFFFFF


class EnsembleKind(Enum):
    """The unitary-invariant ensembles handled by this package."""

    HILBERT_SCHMIDT = "hs"
    BURES = "bures"
    BKM = "bkm"

    @property
    def label(self) -> str:
        return self.value

    @classmethod
    def from_name(cls, name: str) -> "EnsembleKind":
        key = name.strip().lower().replace("-", "_")
        aliases = {
            "hs": cls.HILBERT_SCHMIDT,
            "hilbert_schmidt": cls.HILBERT_SCHMIDT,
            "bures": cls.BURES,
            "b": cls.BURES,
            "bkm": cls.BKM,
        }
        if key not in aliases:
            raise ValueError(f"unknown ensemble {name!r}; expected one of hs|bures|bkm")
        return aliases[key]


class SamplerFailureError(RuntimeError):
    """Rejection sampling could not proceed (vanishing acceptance or bad envelope)."""


def mc_function(kind: EnsembleKind, x: float, y: float) -> float:
    """Morozova-Chentsov function of a monotone ensemble at (x, y).

    Bures: ``2 / (x + y)``.  BKM: ``(ln x - ln y) / (x - y)``, with the
    near-coincidence region |x-y| <= 1e-4 (x+y) evaluated through the series
    ``(1 + d^2/3 + d^4/5) / m`` in d = (x-y)/(x+y), m = (x+y)/2, which is
    accurate to below 1e-16 there and removes the 0/0.

    Args:
        kind: BURES or BKM (the Hilbert-Schmidt ensemble is not monotone).
        x, y: positive reals.
    """
    if kind is EnsembleKind.HILBERT_SCHMIDT:
        raise ValueError("mc_function is defined for the monotone ensembles only")
    x = float(x)
    y = float(y)
    if not (x > 0.0 and y > 0.0):
        raise ValueError(f"mc_function needs positive arguments, got ({x}, {y})")
    if kind is EnsembleKind.BURES:
        return 2.0 / (x + y)
    d = (x - y) / (x + y)
    if abs(d) <= BKM_SERIES_CUTOFF:
        m = 0.5 * (x + y)
        return (1.0 + d * d / 3.0 + d ** 4 / 5.0) / m
    return (math.log(x) - math.log(y)) / (x - y)


@dataclass(frozen=True)
class MorozovaChentsovFunction:
    """Callable wrapper for the Morozova-Chentsov function of an ensemble."""

    kind: EnsembleKind

    def __call__(self, x: float, y: float) -> float:
        return mc_function(self.kind, x, y)

    @classmethod
    def for_kind(cls, kind: EnsembleKind) -> "MorozovaChentsovFunction":
        if kind is EnsembleKind.HILBERT_SCHMIDT:
            raise ValueError("no Morozova-Chentsov function for the Hilbert-Schmidt ensemble")
        return cls(kind)


def log_joint_density(
    kind: EnsembleKind,
    deg: DegeneracyType,
    r: Sequence[float],
    *,
    validate: bool = True,
) -> float:
    """Log of the unnormalized joint eigenvalue density.

    For distinct eigenvalues (r_1 > ... > r_s) with multiplicities
    (k_1, ..., k_s) on the constraint ``sum k_i r_i = 1``:

        Hilbert-Schmidt:  prod_{i<j} (r_i - r_j)^(2 k_i k_j)
        monotone:         (r_1 ... r_s)^(-1/2)
                          * prod_{i<j} c_f(r_i, r_j)^(k_i k_j) (r_i - r_j)^(2 k_i k_j)

    Coincident arguments give -inf (the density vanishes there).

    With ``validate=False`` the symmetric-function formula is evaluated as-is
    for any positive distinct arguments, which is useful for checking the
    invariance under simultaneous permutation of (r_i, k_i) pairs.
    """
    vals = tuple(float(v) for v in r)
    mult = deg.multiplicities
    if len(vals) != deg.s:
        raise ValueError(f"expected {deg.s} distinct eigenvalues, got {len(vals)}")
    if validate:
        if any(not 0.0 < v < 1.0 for v in vals) and deg.s > 1:
            raise ValueError(f"distinct eigenvalues must lie in (0, 1): {vals}")
        total = math.fsum(k * v for k, v in zip(mult, vals))
        if abs(total - 1.0) > CONSTRAINT_TOL:
            raise ValueError(f"constraint sum k_i r_i = 1 violated: {total!r}")
        for a, b in zip(vals, vals[1:]):
            if b > a:
                raise ValueError(f"distinct eigenvalues must be descending: {vals}")
    logv = 0.0
    for i in range(len(vals)):
        for j in range(i + 1, len(vals)):
            diff = abs(vals[i] - vals[j])
            if diff == 0.0:
                return -math.inf
            kk = mult[i] * mult[j]
            logv += 2.0 * kk * math.log(diff)
            if kind is not EnsembleKind.HILBERT_SCHMIDT:
                logv += kk * math.log(mc_function(kind, vals[i], vals[j]))
    if kind is not EnsembleKind.HILBERT_SCHMIDT:
        logv -= 0.5 * math.fsum(math.log(v) for v in vals)
    return logv


def joint_density(
    kind: EnsembleKind,
    deg: DegeneracyType,
    r: Sequence[float],
    *,
    validate: bool = True,
) -> float:
    """Unnormalized joint eigenvalue density (see ``log_joint_density``).

    Computed in log space and exponentiated; returns exactly 0.0 when two
    distinct-eigenvalue arguments coincide.
    """
    logv = log_joint_density(kind, deg, r, validate=validate)
    if logv == -math.inf:
        return 0.0
    return math.exp(logv)


def worker_seed(master_seed: int, worker_index: int) -> int:
    """Derive the seed for one worker from a master seed.

    The split is master XOR index, passed through one generator round so
    that adjacent worker indices decorrelate.  Deterministic.
    """
    mixed = (int(master_seed) ^ int(worker_index)) & _U64
    return int(np.random.default_rng(mixed).integers(0, 2 ** 63))


# ---------------------------------------------------------------------------
# vectorized density kernels used by the rejection samplers
# ---------------------------------------------------------------------------

def _mc_vec(kind: EnsembleKind, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    if kind is EnsembleKind.BURES:
        return 2.0 / (x + y)
    s = x + y
    d = (x - y) / s
    with np.errstate(divide="ignore", invalid="ignore"):
        exact = (np.log(x) - np.log(y)) / np.where(x == y, 1.0, x - y)
    series = (1.0 + d * d / 3.0 + d ** 4 / 5.0) / (0.5 * s)
    return np.where(np.abs(d) > BKM_SERIES_CUTOFF, exact, series)


def _density3_vec(kind: EnsembleKind, r1, r2, r3):
    v = ((r1 - r2) * (r1 - r3) * (r2 - r3)) ** 2
    if kind is EnsembleKind.HILBERT_SCHMIDT:
        return v
    with np.errstate(divide="ignore", invalid="ignore"):
        c = _mc_vec(kind, r1, r2) * _mc_vec(kind, r1, r3) * _mc_vec(kind, r2, r3)
        return v * c / np.sqrt(r1 * r2 * r3)


def _density_pair_vec(kind: EnsembleKind, big, small, kk: int):
    v = (big - small) ** (2 * kk)
    if kind is EnsembleKind.HILBERT_SCHMIDT:
        return v
    with np.errstate(divide="ignore", invalid="ignore"):
        return v * _mc_vec(kind, big, small) ** kk / np.sqrt(big * small)


#: Power k in the flattening substitution small = u^k for rejection proposals.
#: The inverse-sqrt edge singularity needs k=2; BKM's extra log factors need k=4.
_SUB_POWER = {
    EnsembleKind.HILBERT_SCHMIDT: 1,
    EnsembleKind.BURES: 2,
    EnsembleKind.BKM: 4,
}


def _trisectrix_vec(phi):
    return 1.0 / (2.0 * SQRT3 * np.cos(phi / 3.0))


def _regular_weight_qutrit(kind: EnsembleKind, t, phi):
    """Rejection weight for the regular qutrit stratum.

    Proposals are uniform in (t, phi) on [0,1] x [0,pi] with the radius
    substitution r = R(phi) (1 - t^4); on that ray the smallest eigenvalue is
    exactly t^4/3, which keeps the weight bounded for all three ensembles and
    avoids the cancellation of evaluating r3 near the boundary.
    """
    R = _trisectrix_vec(phi)
    r = R * (1.0 - t ** 4)
    f = 2.0 * r / SQRT3
    r1 = 1.0 / 3.0 - f * np.cos((phi + 2.0 * np.pi) / 3.0)
    r2 = 1.0 / 3.0 - f * np.cos((phi + 4.0 * np.pi) / 3.0)
    r3 = t ** 4 / 3.0
    bad = (r1 <= r2) | (r2 <= r3) | (t <= 0.0)
    r1s = np.where(bad, 0.5, r1)
    r2s = np.where(bad, 0.3, r2)
    r3s = np.where(bad, 0.2, r3)
    val = _density3_vec(kind, r1s, r2s, r3s) * r * 4.0 * R * t ** 3
    return np.where(bad, 0.0, val)


def _regular_weight_qubit(kind: EnsembleKind, u):
    """Rejection weight for the qubit, radius-measure density in u-space.

    The smaller eigenvalue is u^k with k the flattening power; the Bloch
    radius is then 1 - 2 u^k and the measure picks up 2 k u^(k-1).
    """
    k = _SUB_POWER[kind]
    small = u ** k
    big = 1.0 - small
    bad = (small <= 0.0) | (small >= 0.5)
    smalls = np.where(bad, 0.25, small)
    bigs = np.where(bad, 0.75, big)
    jac = 2.0 * k * u ** (k - 1) if k > 1 else np.ones_like(u) * 2.0
    val = _density_pair_vec(kind, bigs, smalls, 1) * jac
    return np.where(bad, 0.0, val)


def _edge_weight_qutrit(kind: EnsembleKind, comp: tuple[int, int], u):
    """Rejection weight on a degenerate qutrit edge, radius measure.

    The free coordinate is the smallest distinct eigenvalue y = u^k in
    (0, 1/3); composition (2,1) doubles the larger eigenvalue, (1,2) the
    smaller.  The radius measure contributes a constant edge factor
    (sqrt3/2 or sqrt3) times the substitution jacobian.
    """
    k = _SUB_POWER[kind]
    y = u ** k
    if comp == (2, 1):
        big = (1.0 - y) / 2.0
        edge_factor = SQRT3 / 2.0
    else:
        big = 1.0 - 2.0 * y
        edge_factor = SQRT3
    bad = (y <= 0.0) | (y >= 1.0 / 3.0)
    ys = np.where(bad, 0.2, y)
    bigs = np.where(bad, 0.4, big)
    jac = k * u ** (k - 1) if k > 1 else np.ones_like(u)
    val = _density_pair_vec(kind, bigs, ys, 2) * edge_factor * jac
    return np.where(bad, 0.0, val)


def _grid_supremum(weight: Callable[..., np.ndarray], bounds: list[tuple[float, float]],
                   coarse: int, refinements: int = 3) -> float:
    """Locate sup of a smooth weight by grid scan plus local refinement.

    Scans ~coarse^dim points, then repeatedly re-grids a shrinking window
    around the running argmax.  The caller inflates the result (by 1.05)
    to get a safe rejection envelope.
    """
    dim = len(bounds)
    lows = np.array([b[0] for b in bounds])
    highs = np.array([b[1] for b in bounds])
    best = 0.0
    center = None
    span = highs - lows
    for round_idx in range(refinements + 1):
        n = coarse if round_idx == 0 else 41
        axes = []
        for d in range(dim):
            if center is None:
                lo, hi = lows[d], highs[d]
            else:
                half = span[d] / 2.0
                lo = max(lows[d], center[d] - half)
                hi = min(highs[d], center[d] + half)
            axes.append(np.linspace(lo, hi, n + 2)[1:-1])
        grids = np.meshgrid(*axes, indexing="ij")
        vals = weight(*grids)
        idx = np.unravel_index(int(np.argmax(vals)), vals.shape)
        best = max(best, float(vals[idx]))
        center = np.array([axes[d][idx[d]] for d in range(dim)])
        span = span * (4.0 / (n - 1))
    return best


class SpectrumSampler:
    """Seeded sampler of eigenvalue spectra for one (ensemble, degeneracy).

    One instance owns one random generator; create one instance per worker,
    with per-worker seeds derived by ``worker_seed``.  ``method="auto"``
    picks a matrix-model construction when available (Hilbert-Schmidt and
    Bures on simple spectra) and rejection sampling otherwise;
    ``method="rejection"`` forces the rejection route, which is useful for
    cross-validating the constructions.

    Rejection envelopes come from a grid scan of the proposal weight with
    local refinement, inflated by 5 percent; a proposal exceeding the
    envelope or an acceptance rate below ``MIN_ACCEPTANCE`` aborts with
    ``SamplerFailureError``.
    """

    _CHUNK = 1 << 18

    def __init__(
        self,
        kind: EnsembleKind,
        deg: DegeneracyType,
        seed: int | None = None,
        rng: np.random.Generator | None = None,
        method: str = "auto",
    ) -> None:
        if deg.n not in (2, 3):
            raise ValueError(f"samplers support N in {{2, 3}}, got N={deg.n}")
        if method not in ("auto", "construction", "rejection"):
            raise ValueError(f"unknown sampler method {method!r}")
        self.kind = kind
        self.deg = deg
        self.rng = rng if rng is not None else np.random.default_rng(seed)
        self._proposed = 0
        self._accepted = 0

        mult = deg.multiplicities
        constructive = deg.is_regular and kind in (
            EnsembleKind.HILBERT_SCHMIDT,
            EnsembleKind.BURES,
        )
        if method == "construction" and not constructive:
            raise ValueError(f"no matrix-model construction for ({kind.label}, {mult})")
        self._route: str
        self._envelope = 0.0
        if len(mult) == 1:
            self._route = "point"
        elif constructive and method != "rejection":
            self._route = "construction"
        elif deg.is_regular and deg.n == 3:
            self._route = "reject_regular3"
            w = lambda t, phi: _regular_weight_qutrit(kind, t, phi)
            self._envelope = 1.05 * _grid_supremum(w, [(0.0, 1.0), (0.0, math.pi)], coarse=100)
        elif deg.is_regular and deg.n == 2:
            self._route = "reject_qubit"
            k = _SUB_POWER[kind]
            self._umax = 0.5 ** (1.0 / k)
            w = lambda u: _regular_weight_qubit(kind, u)
            self._envelope = 1.05 * _grid_supremum(w, [(0.0, self._umax)], coarse=10_000)
        elif mult in ((2, 1), (1, 2)) and deg.n == 3:
            self._route = "reject_edge"
            k = _SUB_POWER[kind]
            self._umax = (1.0 / 3.0) ** (1.0 / k)
            w = lambda u: _edge_weight_qutrit(kind, mult, u)
            self._envelope = 1.05 * _grid_supremum(w, [(0.0, self._umax)], coarse=10_000)
        else:
            raise ValueError(f"unsupported degeneracy type for sampling: {mult}")

    @property
    def acceptance_rate(self) -> float:
        """Observed rejection-sampling acceptance rate so far (1.0 for constructions)."""
        if self._proposed == 0:
            return 1.0
        return self._accepted / self._proposed

    def sample(self, n: int) -> np.ndarray:
        """Draw n spectra; rows are descending eigenvalues summing to one."""
        if n < 0:
            raise ValueError("sample count must be nonnegative")
        N = self.deg.n
        out = np.empty((n, N))
        done = 0
        while done < n:
            m = min(self._CHUNK, n - done)
            block = self._sample_block(m)
            out[done : done + block.shape[0]] = block[: m]
            done += min(block.shape[0], m)
        return out

    def sample_one(self) -> OrderedSpectrum:
        return OrderedSpectrum(tuple(self.sample(1)[0]))

    # -- internals ---------------------------------------------------------

    def _sample_block(self, m: int) -> np.ndarray:
        if self._route == "point":
            N = self.deg.n
            return np.full((m, N), 1.0 / N)
        if self._route == "construction":
            if self.kind is EnsembleKind.HILBERT_SCHMIDT:
                return self._ginibre_block(m)
            return self._bures_block(m)
        if self._route == "reject_regular3":
            return self._reject_block(m, self._draw_regular3)
        if self._route == "reject_qubit":
            return self._reject_block(m, self._draw_qubit)
        return self._reject_block(m, self._draw_edge)

    def _ginibre_block(self, m: int) -> np.ndarray:
        N = self.deg.n
        G = self.rng.standard_normal((m, N, N)) + 1j * self.rng.standard_normal((m, N, N))
        W = G @ np.conj(np.swapaxes(G, 1, 2))
        ev = np.linalg.eigvalsh(W)
        ev /= ev.sum(axis=1, keepdims=True)
        return ev[:, ::-1]

    def _bures_block(self, m: int) -> np.ndarray:
        N = self.deg.n
        G = self.rng.standard_normal((m, N, N)) + 1j * self.rng.standard_normal((m, N, N))
        Z = (self.rng.standard_normal((m, N, N)) + 1j * self.rng.standard_normal((m, N, N))) / math.sqrt(2.0)
        Q, R = np.linalg.qr(Z)
        diag = np.einsum("nii->ni", R)
        U = Q * (diag / np.abs(diag))[:, None, :]
        A = (np.eye(N) + U) @ G
        W = A @ np.conj(np.swapaxes(A, 1, 2))
        ev = np.linalg.eigvalsh(W)
        ev /= ev.sum(axis=1, keepdims=True)
        return ev[:, ::-1]

    def _reject_block(self, m: int, draw) -> np.ndarray:
        N = self.deg.n
        rows: list[np.ndarray] = []
        got = 0
        while got < m:
            block = draw(self._CHUNK)
            rows.append(block)
            got += block.shape[0]
            if self._proposed >= 1_000_000 and self.acceptance_rate < MIN_ACCEPTANCE:
                raise SamplerFailureError(
                    f"acceptance rate {self.acceptance_rate:.2e} below {MIN_ACCEPTANCE} for "
                    f"({self.kind.label}, {self.deg.multiplicities}) after {self._proposed} proposals"
                )
        return np.concatenate(rows, axis=0)[:m]

    def _check_envelope(self, w: np.ndarray) -> None:
        peak = float(w.max()) if w.size else 0.0
        if peak > self._envelope:
            raise SamplerFailureError(
                f"proposal weight {peak:.3e} exceeded envelope {self._envelope:.3e} for "
                f"({self.kind.label}, {self.deg.multiplicities}); envelope scan too coarse"
            )

    def _draw_regular3(self, m: int) -> np.ndarray:
        t = self.rng.uniform(0.0, 1.0, m)
        phi = self.rng.uniform(0.0, math.pi, m)
        w = _regular_weight_qutrit(self.kind, t, phi)
        self._check_envelope(w)
        keep = self.rng.uniform(0.0, self._envelope, m) < w
        self._proposed += m
        self._accepted += int(keep.sum())
        ta, pa = t[keep], phi[keep]
        R = _trisectrix_vec(pa)
        r = R * (1.0 - ta ** 4)
        f = 2.0 * r / SQRT3
        r1 = 1.0 / 3.0 - f * np.cos((pa + 2.0 * np.pi) / 3.0)
        r2 = 1.0 / 3.0 - f * np.cos((pa + 4.0 * np.pi) / 3.0)
        r3 = ta ** 4 / 3.0
        total = r1 + r2 + r3
        return np.column_stack([r1 / total, r2 / total, r3 / total])

    def _draw_qubit(self, m: int) -> np.ndarray:
        u = self.rng.uniform(0.0, self._umax, m)
        w = _regular_weight_qubit(self.kind, u)
        self._check_envelope(w)
        keep = self.rng.uniform(0.0, self._envelope, m) < w
        self._proposed += m
        self._accepted += int(keep.sum())
        small = u[keep] ** _SUB_POWER[self.kind]
        return np.column_stack([1.0 - small, small])

    def _draw_edge(self, m: int) -> np.ndarray:
        comp = self.deg.multiplicities
        u = self.rng.uniform(0.0, self._umax, m)
        w = _edge_weight_qutrit(self.kind, comp, u)
        self._check_envelope(w)
        keep = self.rng.uniform(0.0, self._envelope, m) < w
        self._proposed += m
        self._accepted += int(keep.sum())
        y = u[keep] ** _SUB_POWER[self.kind]
        if comp == (2, 1):
            big = (1.0 - y) / 2.0
            return np.column_stack([big, big, y])
        big = 1.0 - 2.0 * y
        return np.column_stack([big, y, y])


def sample_spectrum(
    kind: EnsembleKind,
    deg: DegeneracyType,
    seed: int | None = None,
    rng: np.random.Generator | None = None,
) -> OrderedSpectrum:
    """Draw a single spectrum; see ``SpectrumSampler`` for batches."""
    return SpectrumSampler(kind, deg, seed=seed, rng=rng).sample_one()
