"""Classicality indicators: the probability that a random state is classical.

For an ensemble and a stratum, the indicator is the ratio of the ensemble
measure of the classical region to the measure of the whole stratum, both
expressed through the joint eigenvalue density.  Three independent methods
are provided and cross-validated against each other:

* closed forms (qubit, all ensembles; qutrit, Hilbert-Schmidt only),
* adaptive quadrature over the eigenvalue simplex,
* seeded Monte Carlo over the ensemble samplers.

On top of these sit the moduli-space utilities: minimization of the
indicator over the kernel angle, the endpoint asymmetry, and the
degenerate-to-regular ratio.
"""

from __future__ import annotations

import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from enum import Enum
from functools import lru_cache

import numpy as np
from scipy import integrate

from .spectra import SQRT3, DegeneracyType, StratumLabel
from .wigner import (
    ZETA_MAX,
    SWKernelSpectrum,
    classical_edge_bound_qutrit,
    sw_spectrum_qubit,
    sw_spectrum_qutrit,
)
from .ensembles import (
    EnsembleKind,
    SpectrumSampler,
    mc_function,
    worker_seed,
)

QUBIT_STRATUM = StratumLabel.for_partition((1, 1))
REGULAR_QUTRIT = StratumLabel.for_partition((1, 1, 1))
DEGENERATE_QUTRIT = StratumLabel.for_partition((2, 1))

#: Default relative quadrature tolerances; the monotone densities are costlier.
DEFAULT_TOLERANCE = {
    EnsembleKind.HILBERT_SCHMIDT: 1e-8,
    EnsembleKind.BURES: 1e-6,
    EnsembleKind.BKM: 1e-6,
}
DEFAULT_SAMPLES = 1_000_000

#: Integrand-evaluation budget per indicator before declaring non-convergence.
MAX_QUAD_EVALS = 1_000_000

#: Moduli-scan layout: coarse grid then golden-section refinement.
MINIMIZER_GRID_POINTS = 61
MINIMIZER_RESOLUTION = 1e-6

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0

#: The degenerate qutrit stratum decomposes into these two edge pieces.
_EDGE_COMPOSITIONS = ((2, 1), (1, 2))

#: Flattening power for endpoint substitutions, per ensemble (see ensembles).
_SUB_POWER = {
    EnsembleKind.HILBERT_SCHMIDT: 1,
    EnsembleKind.BURES: 2,
    EnsembleKind.BKM: 4,
}


class Method(Enum):
    CLOSED_FORM = "closed"
    QUADRATURE = "quad"
    MONTE_CARLO = "mc"

    @classmethod
    def from_name(cls, name: str) -> "Method":
        key = name.strip().lower()
        for m in cls:
            if key == m.value or key == m.name.lower():
                return m
        raise ValueError(f"unknown method {name!r}; expected closed|quad|mc")


class UnsupportedRequestError(ValueError):
    """The (ensemble, stratum, method) combination has no implementation."""


class ConvergenceError(RuntimeError):
    """Adaptive quadrature failed to reach the requested tolerance in budget."""


@dataclass(frozen=True)
class IndicatorRequest:
    """Full description of one indicator computation.

    ``zeta`` must be given for qutrit strata and omitted for the qubit;
    quadrature requests carry a relative ``tolerance``, Monte Carlo requests
    a ``samples`` count and ``seed`` (``workers`` splits the sampling into
    independently seeded chunks; results are deterministic for a fixed
    (seed, workers) pair).
    """

    ensemble: EnsembleKind
    stratum: StratumLabel
    method: Method
    zeta: float | None = None
    tolerance: float | None = None
    samples: int | None = None
    seed: int | None = None
    workers: int = 1

    def validate(self) -> None:
        n = self.stratum.n
        if n == 2:
            if self.zeta is not None:
                raise UnsupportedRequestError("qubit indicators take no moduli parameter")
        elif n == 3:
            if self.zeta is None:
                raise UnsupportedRequestError("qutrit indicators need a moduli parameter zeta")
            if not 0.0 <= float(self.zeta) <= ZETA_MAX + 1e-15:
                raise UnsupportedRequestError(f"zeta out of range [0, pi/3]: {self.zeta}")
        else:
            raise UnsupportedRequestError(f"unsupported dimension N={n}")
        if self.method is Method.CLOSED_FORM:
            closed_ok = (
                n == 2
                or self.ensemble is EnsembleKind.HILBERT_SCHMIDT
                or len(self.stratum.degeneracy.multiplicities) == 1
            )
            if not closed_ok:
                raise UnsupportedRequestError(
                    f"no closed form for ({self.ensemble.label}, N={n}); use quadrature"
                )
        if self.method is Method.QUADRATURE:
            if self.tolerance is not None and not 0.0 < self.tolerance < 1.0:
                raise UnsupportedRequestError(f"bad quadrature tolerance {self.tolerance}")
        if self.method is Method.MONTE_CARLO:
            if not self.samples or self.samples < 1:
                raise UnsupportedRequestError("Monte Carlo requests need a positive sample count")
            if self.seed is None:
                raise UnsupportedRequestError("Monte Carlo requests need a seed")
            if self.workers < 1:
                raise UnsupportedRequestError("worker count must be positive")


@dataclass(frozen=True)
class IndicatorResult:
    """An indicator value with its method tag, error estimate and provenance."""

    q: float
    method: Method
    error_estimate: float
    request: IndicatorRequest

    def __post_init__(self) -> None:
        if not 0.0 <= self.q <= 1.0:
            raise ValueError(f"indicator out of [0, 1]: {self.q}")
        if self.error_estimate < 0.0:
            raise ValueError(f"negative error estimate: {self.error_estimate}")


def _stratum_kind(stratum: StratumLabel) -> str:
    mult = stratum.degeneracy.partition()
    if all(k == 1 for k in mult):
        return "regular"
    if len(mult) == 1:
        return "point"
    if mult == (2, 1):
        return "degenerate"
    raise UnsupportedRequestError(f"unsupported stratum {mult}")


# ---------------------------------------------------------------------------
# closed forms
# ---------------------------------------------------------------------------

def q_qubit_closed_form(ensemble: EnsembleKind) -> IndicatorResult:
    """Qubit indicator in closed form.

    Hilbert-Schmidt: ``1/(3 sqrt3)``.
    Bures: ``(2/pi) (asin(1/sqrt3) - sqrt2/3)``.
    BKM: ``(2/pi) (asin(1/sqrt3) - sqrt(2/3) acoth(sqrt3))``.
    """
    if ensemble is EnsembleKind.HILBERT_SCHMIDT:
        q = 1.0 / (3.0 * SQRT3)
    elif ensemble is EnsembleKind.BURES:
        q = (2.0 / math.pi) * (math.asin(1.0 / SQRT3) - math.sqrt(2.0) / 3.0)
    else:
        acoth_sqrt3 = math.atanh(1.0 / SQRT3)
        q = (2.0 / math.pi) * (math.asin(1.0 / SQRT3) - math.sqrt(2.0 / 3.0) * acoth_sqrt3)
    req = IndicatorRequest(ensemble=ensemble, stratum=QUBIT_STRATUM, method=Method.CLOSED_FORM)
    return IndicatorResult(q=q, method=Method.CLOSED_FORM, error_estimate=0.0, request=req)


def q_hs_qutrit_regular_closed_form(zeta: float) -> IndicatorResult:
    """Hilbert-Schmidt indicator on the regular qutrit stratum.

    ``(20 cos^2(zeta - pi/6) + 1) / (128 (4 cos^2(zeta - pi/6) - 1)^5)``,
    symmetric about zeta = pi/6 where it attains its minimum 21/31104.
    """
    z = float(zeta)
    if not 0.0 <= z <= ZETA_MAX + 1e-15:
        raise ValueError(f"zeta out of range [0, pi/3]: {zeta}")
    c2 = math.cos(z - math.pi / 6.0) ** 2
    q = (20.0 * c2 + 1.0) / (128.0 * (4.0 * c2 - 1.0) ** 5)
    req = IndicatorRequest(
        ensemble=EnsembleKind.HILBERT_SCHMIDT, stratum=REGULAR_QUTRIT,
        method=Method.CLOSED_FORM, zeta=z,
    )
    return IndicatorResult(q=q, method=Method.CLOSED_FORM, error_estimate=0.0, request=req)


def q_hs_qutrit_degenerate_closed_form(zeta: float) -> IndicatorResult:
    """Hilbert-Schmidt indicator on the degenerate qutrit stratum.

    ``(csc^5(zeta + pi/6) + sec^5(zeta)) / 1056``; the two terms are the two
    edge pieces, and the expression is symmetric under zeta -> pi/3 - zeta.
    """
    z = float(zeta)
    if not 0.0 <= z <= ZETA_MAX + 1e-15:
        raise ValueError(f"zeta out of range [0, pi/3]: {zeta}")
    q = (math.sin(z + math.pi / 6.0) ** -5 + math.cos(z) ** -5) / 1056.0
    req = IndicatorRequest(
        ensemble=EnsembleKind.HILBERT_SCHMIDT, stratum=DEGENERATE_QUTRIT,
        method=Method.CLOSED_FORM, zeta=z,
    )
    return IndicatorResult(q=q, method=Method.CLOSED_FORM, error_estimate=0.0, request=req)


def _closed_form(ensemble: EnsembleKind, stratum: StratumLabel, zeta: float | None) -> IndicatorResult:
    kind = _stratum_kind(stratum)
    if kind == "point":
        req = IndicatorRequest(ensemble=ensemble, stratum=stratum, method=Method.CLOSED_FORM, zeta=zeta)
        return IndicatorResult(q=1.0, method=Method.CLOSED_FORM, error_estimate=0.0, request=req)
    if stratum.n == 2:
        return q_qubit_closed_form(ensemble)
    if ensemble is not EnsembleKind.HILBERT_SCHMIDT:
        raise UnsupportedRequestError(f"no closed form for ({ensemble.label}, N=3)")
    if kind == "regular":
        return q_hs_qutrit_regular_closed_form(zeta)
    return q_hs_qutrit_degenerate_closed_form(zeta)


# ---------------------------------------------------------------------------
# scalar density kernels (fast paths mirroring ensembles.joint_density)
# ---------------------------------------------------------------------------

def _cf(kind: EnsembleKind, x: float, y: float) -> float:
    return mc_function(kind, x, y)


def _density3_triple(kind: EnsembleKind):
    """Scalar regular-qutrit density from the three eigenvalues.

    Taking r3 explicitly lets substituted integrands pass the exact small
    eigenvalue instead of the cancellation-prone 1 - r1 - r2; near the
    simplex face that difference corrupts the adaptive rule's error
    estimates enough to bias the integral at the 1e-6 level.
    """
    if kind is EnsembleKind.HILBERT_SCHMIDT:
        def f3(r1: float, r2: float, r3: float) -> float:
            return ((r1 - r2) * (r1 - r3) * (r2 - r3)) ** 2
        return f3

    def f3(r1: float, r2: float, r3: float) -> float:
        if r3 <= 0.0 or r2 <= 0.0:
            return 0.0
        v = ((r1 - r2) * (r1 - r3) * (r2 - r3)) ** 2
        c = _cf(kind, r1, r2) * _cf(kind, r1, r3) * _cf(kind, r2, r3)
        return v * c / math.sqrt(r1 * r2 * r3)
    return f3


def _density3(kind: EnsembleKind):
    """Scalar regular-qutrit density in simplex coordinates (r1, r2)."""
    f3 = _density3_triple(kind)

    def f(r1: float, r2: float) -> float:
        return f3(r1, r2, 1.0 - r1 - r2)
    return f


def _density_pair(kind: EnsembleKind, big: float, small: float, kk: int) -> float:
    """Scalar two-eigenvalue density factor with pair exponent k_i k_j = kk."""
    v = (big - small) ** (2 * kk)
    if kind is EnsembleKind.HILBERT_SCHMIDT:
        return v
    if small <= 0.0:
        return 0.0
    return v * _cf(kind, big, small) ** kk / math.sqrt(big * small)


# ---------------------------------------------------------------------------
# adaptive quadrature
# ---------------------------------------------------------------------------

class _Budget:
    """Counts integrand evaluations; raises past the convergence budget."""

    __slots__ = ("count", "limit")

    def __init__(self, limit: int | None = None) -> None:
        self.count = 0
        self.limit = limit if limit is not None else MAX_QUAD_EVALS

    def charge(self) -> None:
        self.count += 1
        if self.count > self.limit:
            raise ConvergenceError(
                f"quadrature exceeded {self.limit} integrand evaluations without converging"
            )


def _quad(f, a: float, b: float, rel: float, budget: _Budget, limit: int = 200):
    """1D adaptive quadrature returning (value, error-bound)."""
    if b <= a:
        return 0.0, 0.0

    def counted(x: float) -> float:
        budget.charge()
        return f(x)

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        val, err = integrate.quad(counted, a, b, epsabs=1e-18, epsrel=rel, limit=limit)
    return val, err


def _inner_r2(kind: EnsembleKind, f3, r1: float, lo: float, hi: float,
              singular_top: bool, rel: float, budget: _Budget) -> float:
    """Integral over r2 in [lo, hi] at fixed r1, density given as f3(r1, r2, r3).

    When the upper limit is the face r3 = 0 the monotone densities carry an
    inverse-sqrt (BKM: times log^2) endpoint singularity; the substitution
    r3 = t^k with the ensemble's flattening power restores a smooth
    integrand.  The small eigenvalue is passed to the density directly from
    t; recomputing it as 1 - r1 - r2 cancels catastrophically there.
    """
    if hi <= lo:
        return 0.0
    if singular_top and kind is not EnsembleKind.HILBERT_SCHMIDT:
        k = _SUB_POWER[kind]
        tmax = (hi - lo) ** (1.0 / k)

        def g(t: float) -> float:
            r3 = t ** k
            return f3(r1, hi - r3, r3) * k * t ** (k - 1)  # hi = 1 - r1 here

        return _quad(g, 0.0, tmax, rel, budget)[0]
    return _quad(lambda r2: f3(r1, r2, 1.0 - r1 - r2), lo, hi, rel, budget)[0]


def _regular_denominator_raw(kind: EnsembleKind, tol: float, budget: _Budget):
    f3 = _density3_triple(kind)
    inner_rel = tol / 20.0

    def outer_low(r1: float) -> float:
        return _inner_r2(kind, f3, r1, (1.0 - r1) / 2.0, r1, False, inner_rel, budget)

    def outer_high(r1: float) -> float:
        return _inner_r2(kind, f3, r1, (1.0 - r1) / 2.0, 1.0 - r1, True, inner_rel, budget)

    v1, e1 = _quad(outer_low, 1.0 / 3.0, 0.5, tol, budget)
    v2, e2 = _quad(outer_high, 0.5, 1.0, tol, budget)
    val = v1 + v2
    # the outer error bound cannot see the inner tolerance; add it explicitly
    return val, e1 + e2 + inner_rel * abs(val)


@lru_cache(maxsize=None)
def _regular_denominator(kind: EnsembleKind, tol: float):
    return _regular_denominator_raw(kind, tol, _Budget())


def _regular_numerator(kind: EnsembleKind, kernel: SWKernelSpectrum, tol: float, budget: _Budget):
    """Measure of the classical region of the regular qutrit stratum.

    In (r1, r2) coordinates the classical region is the half-plane
    ``r1 pi3 + r2 pi2 + r3 pi1 >= 0`` intersected with the ordered simplex;
    the half-plane boundary is solved exactly for the inner r2 limit.  The
    outer integral splits where the boundary line crosses the simplex edges
    (r2 = r1 at ``rstar``, r2 = r3 at ``rmax``); for a degenerate kernel
    (pi1 = pi2, zeta = 0) the cut is the vertical line r1 = pi1/(pi1-pi3).
    """
    f3 = _density3_triple(kind)
    p1, p2, p3 = kernel.values
    inner_rel = tol / 20.0

    def strip(r1: float, hi: float) -> float:
        lo = (1.0 - r1) / 2.0
        return _inner_r2(kind, f3, r1, lo, min(hi, 1.0 - r1, r1), False, inner_rel, budget)

    if p1 - p2 < 1e-12:
        r1_cut = p1 / (p1 - p3)
        val, err = _quad(lambda r1: strip(r1, 1.0), 1.0 / 3.0, r1_cut, tol, budget)
        return val, err + inner_rel * abs(val)

    rstar = p1 / (3.0 * p1 - 1.0)
    rmax = (1.0 - p3) / (1.0 - 3.0 * p3)

    def cut(r1: float) -> float:
        return (p1 + r1 * (p3 - p1)) / (p1 - p2)

    v1, e1 = _quad(lambda r1: strip(r1, 1.0), 1.0 / 3.0, rstar, tol, budget)
    v2, e2 = _quad(lambda r1: strip(r1, cut(r1)), rstar, rmax, tol, budget)
    val = v1 + v2
    return val, e1 + e2 + inner_rel * abs(val)


def _edge_small_at_radius(comp: tuple[int, int], radius: float) -> float:
    """Smallest distinct eigenvalue on an edge at the given polar radius."""
    if comp == (2, 1):
        return 1.0 / 3.0 - 2.0 * radius / SQRT3
    return 1.0 / 3.0 - radius / SQRT3


_EDGE_RADIUS_FACTOR = {(2, 1): SQRT3 / 2.0, (1, 2): SQRT3}


def _edge_integral(kind: EnsembleKind, comp: tuple[int, int], radius_upper: float,
                   tol: float, budget: _Budget):
    """Integral of the edge density over radii [0, radius_upper].

    Parameterized by the smallest distinct eigenvalue y (descending in the
    radius), substituted y = u^k to flatten the endpoint singularity of the
    monotone densities at y = 0; classical regions have y above a cutoff, so
    one code path serves numerators and full-edge denominators alike.  The
    radius measure contributes the constant edge factor |dr/dy|.
    """
    y_low = max(0.0, _edge_small_at_radius(comp, radius_upper))
    factor = _EDGE_RADIUS_FACTOR[comp]
    k = _SUB_POWER[kind]

    def big_of(y: float) -> float:
        return (1.0 - y) / 2.0 if comp == (2, 1) else 1.0 - 2.0 * y

    if k == 1:
        def g(y: float) -> float:
            return _density_pair(kind, big_of(y), y, 2) * factor
        val, err = _quad(g, y_low, 1.0 / 3.0, tol, budget)
        return val, err

    def g(u: float) -> float:
        y = u ** k
        return _density_pair(kind, big_of(y), y, 2) * factor * k * u ** (k - 1)

    val, err = _quad(g, y_low ** (1.0 / k), (1.0 / 3.0) ** (1.0 / k), tol, budget)
    return val, err


def _edge_radius_cap(comp: tuple[int, int]) -> float:
    return 1.0 / (2.0 * SQRT3) if comp == (2, 1) else 1.0 / SQRT3


def _edge_classical_radius(comp: tuple[int, int], zeta: float) -> float:
    phi = 0.0 if comp == (2, 1) else math.pi
    return classical_edge_bound_qutrit(zeta, phi)


@lru_cache(maxsize=None)
def _edge_denominators(kind: EnsembleKind, tol: float):
    budget = _Budget()
    out = {}
    for comp in _EDGE_COMPOSITIONS:
        out[comp] = _edge_integral(kind, comp, _edge_radius_cap(comp), tol, budget)
    return out


def _qubit_integral(kind: EnsembleKind, upper: float, tol: float, budget: _Budget):
    """Bloch-radius integral of the qubit density over [0, upper].

    The full-range denominator of the monotone ensembles is singular at
    r = 1 (smallest eigenvalue -> 0) and is evaluated through the same
    substitution as everywhere else, with the small eigenvalue computed
    directly from the substitution variable.
    """
    def f(r: float) -> float:
        return _density_pair(kind, (1.0 + r) / 2.0, (1.0 - r) / 2.0, 1)

    full = upper >= 1.0 - 1e-15
    if not full or kind is EnsembleKind.HILBERT_SCHMIDT:
        return _quad(f, 0.0, upper, tol, budget)

    k = _SUB_POWER[kind]

    def g(u: float) -> float:
        small = u ** k
        return _density_pair(kind, 1.0 - small, small, 1) * 2.0 * k * u ** (k - 1)

    return _quad(g, 0.0, 0.5 ** (1.0 / k), tol, budget)


def q_quadrature(request: IndicatorRequest) -> IndicatorResult:
    """Indicator by adaptive quadrature of the joint eigenvalue density.

    The value is the ratio of the classical-region integral to the full
    stratum integral; denominators are cached per (ensemble, stratum,
    tolerance) since they carry no kernel dependence.  The error estimate is
    the quadrature error bound propagated through the ratio.  Exceeding the
    evaluation budget raises ``ConvergenceError``.
    """
    request.validate()
    if request.method is not Method.QUADRATURE:
        raise UnsupportedRequestError("q_quadrature requires a quadrature request")
    kind = request.ensemble
    tol = request.tolerance if request.tolerance is not None else DEFAULT_TOLERANCE[kind]
    skind = _stratum_kind(request.stratum)
    budget = _Budget()

    if skind == "point":
        return IndicatorResult(q=1.0, method=Method.QUADRATURE, error_estimate=0.0, request=request)

    if request.stratum.n == 2:
        num, num_err = _qubit_integral(kind, 1.0 / SQRT3, tol, budget)
        den, den_err = _qubit_integral(kind, 1.0, tol, budget)
    elif skind == "regular":
        kernel = sw_spectrum_qutrit(request.zeta)
        num, num_err = _regular_numerator(kind, kernel, tol, budget)
        den, den_err = _regular_denominator(kind, tol)
    else:
        num = den = num_err = den_err = 0.0
        for comp in _EDGE_COMPOSITIONS:
            bound = _edge_classical_radius(comp, request.zeta)
            nv, ne = _edge_integral(kind, comp, bound, tol, budget)
            num += nv
            num_err += ne
            dv, de = _edge_denominators(kind, tol)[comp]
            den += dv
            den_err += de

    if den <= 0.0 or not math.isfinite(den):
        raise ConvergenceError(f"degenerate denominator integral: {den!r}")
    q = num / den
    err = abs(q) * (num_err / num if num > 0.0 else 0.0) + abs(q) * den_err / den
    if num > 0.0 and (num_err / num + den_err / den) > max(tol * 50.0, 1e-13):
        raise ConvergenceError(
            f"quadrature error {num_err / num + den_err / den:.2e} above requested tolerance {tol:.1e}"
        )
    q = min(max(q, 0.0), 1.0)
    return IndicatorResult(q=q, method=Method.QUADRATURE, error_estimate=err, request=request)


# ---------------------------------------------------------------------------
# Monte Carlo
# ---------------------------------------------------------------------------

def _kernel_for(request: IndicatorRequest) -> SWKernelSpectrum:
    if request.stratum.n == 2:
        return sw_spectrum_qubit()
    return sw_spectrum_qutrit(request.zeta)


@lru_cache(maxsize=None)
def _edge_mix_weight(kind: EnsembleKind) -> float:
    """Probability that a degenerate-stratum draw lies on the (2,1) edge."""
    dens = _edge_denominators(kind, 1e-10)
    z0 = dens[(2, 1)][0]
    zp = dens[(1, 2)][0]
    return z0 / (z0 + zp)


def _mc_chunk_hits(request: IndicatorRequest, chunk: int, seed: int) -> int:
    """Classical-state count among ``chunk`` seeded draws."""
    kernel = _kernel_for(request)
    pi_asc = kernel.as_array()[::-1]
    rng = np.random.default_rng(seed)
    skind = _stratum_kind(request.stratum)
    if skind == "point":
        return chunk
    if skind == "degenerate":
        w0 = _edge_mix_weight(request.ensemble)
        n0 = int(rng.binomial(chunk, w0))
        hits = 0
        for comp, count in (((2, 1), n0), ((1, 2), chunk - n0)):
            if count == 0:
                continue
            sampler = SpectrumSampler(request.ensemble, DegeneracyType(comp), rng=rng)
            eigs = sampler.sample(count)
            hits += int(np.count_nonzero(eigs @ pi_asc >= 0.0))
        return hits
    deg = DegeneracyType((1,) * request.stratum.n)
    sampler = SpectrumSampler(request.ensemble, deg, rng=rng)
    eigs = sampler.sample(chunk)
    return int(np.count_nonzero(eigs @ pi_asc >= 0.0))


def q_monte_carlo(request: IndicatorRequest) -> IndicatorResult:
    """Indicator as the classical fraction of seeded ensemble draws.

    The sample budget is split into ``workers`` chunks with seeds derived by
    ``worker_seed``; chunk hit counts are integers, so the total is
    deterministic for a fixed (seed, workers) pair regardless of execution
    order.  The error estimate is the binomial standard error
    ``sqrt(q (1 - q) / n)``; when no classical state is seen the estimate
    falls back to the one-sided 95 percent bound 3/n (rule of three).

    Degenerate-stratum draws mix the two edge pieces with weights given by
    the quadrature partition functions of the edges.
    """
    request.validate()
    if request.method is not Method.MONTE_CARLO:
        raise UnsupportedRequestError("q_monte_carlo requires a Monte Carlo request")
    n = int(request.samples)
    workers = int(request.workers)
    base = n // workers
    sizes = [base + (1 if i < n % workers else 0) for i in range(workers)]
    seeds = [worker_seed(request.seed, i) for i in range(workers)]
    tasks = [(sz, sd) for sz, sd in zip(sizes, seeds) if sz > 0]
    if workers > 1 and len(tasks) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            hit_counts = list(pool.map(lambda t: _mc_chunk_hits(request, t[0], t[1]), tasks))
    else:
        hit_counts = [_mc_chunk_hits(request, sz, sd) for sz, sd in tasks]
    hits = sum(hit_counts)
    q = hits / n
    if hits == 0:
        err = 3.0 / n
    else:
        err = math.sqrt(q * (1.0 - q) / n)
    return IndicatorResult(q=q, method=Method.MONTE_CARLO, error_estimate=err, request=request)


# ---------------------------------------------------------------------------
# dispatch and moduli-space utilities
# ---------------------------------------------------------------------------

def compute_indicator(request: IndicatorRequest) -> IndicatorResult:
    """Evaluate an indicator request with its selected method."""
    request.validate()
    if request.method is Method.CLOSED_FORM:
        result = _closed_form(request.ensemble, request.stratum, request.zeta)
        return replace(result, request=request)
    if request.method is Method.QUADRATURE:
        return q_quadrature(request)
    return q_monte_carlo(request)


def _evaluator(ensemble: EnsembleKind, stratum: StratumLabel, method: Method,
               tolerance: float | None, samples: int | None, seed: int | None,
               workers: int = 1):
    def q_of(zeta: float) -> float:
        req = IndicatorRequest(
            ensemble=ensemble, stratum=stratum, method=method,
            zeta=zeta if stratum.n == 3 else None,
            tolerance=tolerance,
            samples=samples if method is Method.MONTE_CARLO else None,
            seed=seed if method is Method.MONTE_CARLO else None,
            workers=workers,
        )
        return compute_indicator(req).q

    return q_of


def minimize_q_over_zeta(
    ensemble: EnsembleKind,
    stratum: StratumLabel,
    method: Method = Method.QUADRATURE,
    tolerance: float | None = None,
    samples: int | None = None,
    seed: int | None = None,
) -> tuple[float, float]:
    """Minimize the indicator over the moduli angle.

    A 61-point scan over [0, pi/3] brackets the grid minimum, then
    golden-section search refines the bracket to a zeta resolution of 1e-6.

    Returns:
        (zeta_min, q_min).
    """
    if stratum.n != 3:
        raise UnsupportedRequestError("moduli minimization applies to qutrit strata")
    q_of = _evaluator(ensemble, stratum, method, tolerance, samples, seed)
    grid = np.linspace(0.0, ZETA_MAX, MINIMIZER_GRID_POINTS)
    values = [q_of(z) for z in grid]
    i = int(np.argmin(values))
    a = grid[max(i - 1, 0)]
    b = grid[min(i + 1, len(grid) - 1)]
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc, fd = q_of(c), q_of(d)
    while (b - a) > MINIMIZER_RESOLUTION:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = q_of(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = q_of(d)
    zeta_min = 0.5 * (a + b)
    return zeta_min, q_of(zeta_min)


def asymmetry(
    ensemble: EnsembleKind,
    stratum: StratumLabel,
    method: Method = Method.QUADRATURE,
    tolerance: float | None = None,
    samples: int | None = None,
    seed: int | None = None,
) -> float:
    """Indicator difference between the moduli endpoints, q(0) - q(pi/3).

    Zero for the Hilbert-Schmidt ensemble (mirror symmetry about pi/6),
    strictly positive for the monotone ensembles.
    """
    if stratum.n != 3:
        raise UnsupportedRequestError("asymmetry applies to qutrit strata")
    q_of = _evaluator(ensemble, stratum, method, tolerance, samples, seed)
    return q_of(0.0) - q_of(ZETA_MAX)


def ratio_degenerate_to_regular(
    ensemble: EnsembleKind,
    zeta: float,
    method: Method = Method.QUADRATURE,
    tolerance: float | None = None,
    samples: int | None = None,
    seed: int | None = None,
) -> float:
    """Ratio of the degenerate-stratum indicator to the regular one.

    Values above 1 mean degenerate (more symmetric) states are more likely
    classical than regular ones at the same kernel angle.
    """
    q_deg = _evaluator(ensemble, DEGENERATE_QUTRIT, method, tolerance, samples, seed)(zeta)
    q_reg = _evaluator(ensemble, REGULAR_QUTRIT, method, tolerance, samples, seed)(zeta)
    if q_reg < 1e-300:
        raise OverflowError(f"regular indicator too small to divide by: {q_reg!r}")
    return q_deg / q_reg
