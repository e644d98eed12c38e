"""Tests for the joint eigenvalue densities and the seeded samplers.

The distributional tests pin the samplers against the quadrature-normalized
densities (chi-square on a 50-bin marginal grid at the 0.001 level) and the
matrix-model constructions against the rejection route (two-sample KS).
"""

import math
import warnings

import numpy as np
import pytest
from scipy.integrate import IntegrationWarning, quad
from scipy.stats import chisquare, ks_2samp

from wigner_classicality.spectra import SQRT3, DegeneracyType
from wigner_classicality.ensembles import (
    EnsembleKind,
    MorozovaChentsovFunction,
    SamplerFailureError,
    SpectrumSampler,
    joint_density,
    log_joint_density,
    mc_function,
    sample_spectrum,
    worker_seed,
)
from wigner_classicality.indicators import _density3, _density3_triple, _density_pair

ALL_KINDS = (EnsembleKind.HILBERT_SCHMIDT, EnsembleKind.BURES, EnsembleKind.BKM)
SUB_POWER = {EnsembleKind.HILBERT_SCHMIDT: 1, EnsembleKind.BURES: 2, EnsembleKind.BKM: 4}


class TestMorozovaChentsov:
    def test_bures_normalization(self):
        assert mc_function(EnsembleKind.BURES, 1.0, 1.0) == pytest.approx(1.0, rel=1e-15)

    def test_bures_value(self):
        assert mc_function(EnsembleKind.BURES, 0.5, 0.25) == pytest.approx(8.0 / 3.0, rel=1e-15)

    def test_bkm_coincidence_limit(self):
        for x in (0.1, 0.37, 0.9):
            assert mc_function(EnsembleKind.BKM, x, x) == pytest.approx(1.0 / x, rel=1e-12)

    def test_bkm_series_matches_exact_at_cutoff(self):
        # both branches agree around the switch point
        x = 0.4
        for offset in (0.99e-4, 1.01e-4):
            y = x * (1 - offset) / (1 + offset)  # d = offset
            exact = (math.log(x) - math.log(y)) / (x - y)
            assert mc_function(EnsembleKind.BKM, x, y) == pytest.approx(exact, rel=1e-10)

    def test_symmetry(self):
        rng = np.random.default_rng(0)
        for kind in (EnsembleKind.BURES, EnsembleKind.BKM):
            for _ in range(200):
                x, y = rng.uniform(1e-6, 1.0, 2)
                assert mc_function(kind, x, y) == pytest.approx(mc_function(kind, y, x), rel=1e-12)

    def test_normalization_property(self):
        rng = np.random.default_rng(1)
        for kind in (EnsembleKind.BURES, EnsembleKind.BKM):
            for x in rng.uniform(1e-6, 1.0, 200):
                assert mc_function(kind, x, x) == pytest.approx(1.0 / x, rel=1e-10)

    def test_domain_errors(self):
        with pytest.raises(ValueError):
            mc_function(EnsembleKind.BURES, -1.0, 0.5)
        with pytest.raises(ValueError):
            mc_function(EnsembleKind.BKM, 0.5, 0.0)
        with pytest.raises(ValueError):
            mc_function(EnsembleKind.HILBERT_SCHMIDT, 0.5, 0.5)

    def test_wrapper(self):
        c = MorozovaChentsovFunction.for_kind(EnsembleKind.BURES)
        assert c(0.5, 0.25) == pytest.approx(8.0 / 3.0, rel=1e-15)
        with pytest.raises(ValueError):
            MorozovaChentsovFunction.for_kind(EnsembleKind.HILBERT_SCHMIDT)


class TestJointDensity:
    def test_hs_regular_value(self):
        deg = DegeneracyType((1, 1, 1))
        val = joint_density(EnsembleKind.HILBERT_SCHMIDT, deg, (1 / 2, 1 / 3, 1 / 6))
        assert val == pytest.approx(1.0 / 11664.0, rel=1e-12)

    def test_coincident_is_exact_zero(self):
        deg = DegeneracyType((1, 1, 1))
        r = 0.4
        assert joint_density(EnsembleKind.HILBERT_SCHMIDT, deg, (r, r, 1 - 2 * r)) == 0.0

    def test_bures_qubit_proportionality(self):
        # the radial qubit density of the Bures ensemble is r^2 / sqrt(1 - r^2)
        deg = DegeneracyType((1, 1))
        ratios = []
        for r in np.linspace(0.05, 0.95, 19):
            val = joint_density(EnsembleKind.BURES, deg, ((1 + r) / 2, (1 - r) / 2))
            ratios.append(val / (r * r / math.sqrt(1 - r * r)))
        assert np.allclose(ratios, ratios[0], rtol=1e-12)

    def test_constraint_enforced(self):
        deg = DegeneracyType((2, 1))
        with pytest.raises(ValueError):
            joint_density(EnsembleKind.HILBERT_SCHMIDT, deg, (0.4, 0.3))

    def test_descending_enforced(self):
        deg = DegeneracyType((1, 1, 1))
        with pytest.raises(ValueError):
            joint_density(EnsembleKind.HILBERT_SCHMIDT, deg, (1 / 6, 1 / 3, 1 / 2))

    def test_permutation_symmetry(self):
        # one symmetric function restricted to relabeled pieces: swapping the
        # (multiplicity, eigenvalue) pairs together leaves the value unchanged
        rng = np.random.default_rng(2)
        for kind in ALL_KINDS:
            for _ in range(100):
                y = rng.uniform(0.01, 0.32)
                x = (1 - y) / 2
                a = log_joint_density(kind, DegeneracyType((2, 1)), (x, y), validate=False)
                b = log_joint_density(kind, DegeneracyType((1, 2)), (y, x), validate=False)
                assert a == pytest.approx(b, rel=1e-12)

    def test_no_overflow_near_boundary(self):
        deg = DegeneracyType((1, 1, 1))
        tiny = 1e-12
        r = (1.0 - 2 * tiny, tiny * 1.5, tiny * 0.5)
        for kind in ALL_KINDS:
            val = joint_density(kind, deg, r)
            assert math.isfinite(val) and val >= 0.0

    def test_matches_indicator_fast_paths(self):
        rng = np.random.default_rng(3)
        reg = DegeneracyType((1, 1, 1))
        for kind in ALL_KINDS:
            f = _density3(kind)
            for _ in range(50):
                r2 = rng.uniform(0.05, 0.32)
                r1 = rng.uniform(max(r2, 1 - r2 - r2) + 1e-3, 1 - r2 - 1e-3)
                r3 = 1 - r1 - r2
                if not r1 > r2 > r3 > 0:
                    continue
                assert f(r1, r2) == pytest.approx(joint_density(kind, reg, (r1, r2, r3)), rel=1e-12)
            for comp in ((2, 1), (1, 2)):
                for _ in range(50):
                    y = rng.uniform(0.01, 0.32)
                    big = (1 - y) / 2 if comp == (2, 1) else 1 - 2 * y
                    assert _density_pair(kind, big, y, 2) == pytest.approx(
                        joint_density(kind, DegeneracyType(comp), (big, y)), rel=1e-12
                    )


class TestSeeding:
    def test_worker_seed_deterministic(self):
        assert worker_seed(123, 4) == worker_seed(123, 4)
        seeds = {worker_seed(123, i) for i in range(64)}
        assert len(seeds) == 64

    def test_sampler_deterministic(self):
        for kind in ALL_KINDS:
            a = SpectrumSampler(kind, DegeneracyType((1, 1, 1)), seed=42).sample(500)
            b = SpectrumSampler(kind, DegeneracyType((1, 1, 1)), seed=42).sample(500)
            assert np.array_equal(a, b)

    def test_sample_spectrum_single(self):
        s = sample_spectrum(EnsembleKind.HILBERT_SCHMIDT, DegeneracyType((1, 1, 1)), seed=7)
        assert s.n == 3


class TestSamplerStructure:
    @pytest.mark.parametrize("kind", ALL_KINDS)
    @pytest.mark.parametrize("mult", [(1, 1), (1, 1, 1), (2, 1), (1, 2)])
    def test_rows_are_valid_spectra(self, kind, mult):
        eigs = SpectrumSampler(kind, DegeneracyType(mult), seed=9).sample(2000)
        assert eigs.shape == (2000, sum(mult))
        assert np.allclose(eigs.sum(axis=1), 1.0, atol=1e-12)
        assert np.all(np.diff(eigs, axis=1) <= 1e-15)
        assert np.all(eigs >= -1e-15)

    def test_degenerate_structure(self):
        eigs = SpectrumSampler(EnsembleKind.BKM, DegeneracyType((2, 1)), seed=10).sample(1000)
        assert np.array_equal(eigs[:, 0], eigs[:, 1])
        assert np.all(eigs[:, 1] > eigs[:, 2])
        eigs = SpectrumSampler(EnsembleKind.BURES, DegeneracyType((1, 2)), seed=10).sample(1000)
        assert np.array_equal(eigs[:, 1], eigs[:, 2])

    def test_point_stratum(self):
        eigs = SpectrumSampler(EnsembleKind.BURES, DegeneracyType((3,)), seed=1).sample(10)
        assert np.allclose(eigs, 1.0 / 3.0)

    def test_unsupported_dimension(self):
        with pytest.raises(ValueError):
            SpectrumSampler(EnsembleKind.BURES, DegeneracyType((1, 1, 1, 1)), seed=1)

    def test_construction_unavailable_for_bkm(self):
        with pytest.raises(ValueError):
            SpectrumSampler(EnsembleKind.BKM, DegeneracyType((1, 1, 1)), seed=1, method="construction")


class TestSamplerFailure:
    def test_vanishing_acceptance_raises(self):
        sampler = SpectrumSampler(EnsembleKind.BKM, DegeneracyType((1, 1, 1)), seed=5)
        sampler._envelope *= 1e12  # force acceptance below the failure threshold
        with pytest.raises(SamplerFailureError, match="acceptance rate"):
            sampler.sample(100)

    def test_envelope_overflow_raises(self):
        sampler = SpectrumSampler(EnsembleKind.BKM, DegeneracyType((1, 1, 1)), seed=5)
        sampler._envelope /= 1e6
        with pytest.raises(SamplerFailureError, match="envelope"):
            sampler.sample(100)


class TestQubitRadialMoment:
    def test_hs_mean_bloch_radius(self):
        # the radial density r^2 on [0, 1] has mean 3/4
        eigs = SpectrumSampler(EnsembleKind.HILBERT_SCHMIDT, DegeneracyType((1, 1)), seed=123).sample(1_000_000)
        r = eigs[:, 0] - eigs[:, 1]
        std = math.sqrt(3.0 / 5.0 - 9.0 / 16.0)
        assert abs(r.mean() - 0.75) <= 3.0 * std / math.sqrt(r.size)


# ---------------------------------------------------------------------------
# distributional agreement: sampler versus quadrature-normalized density
# ---------------------------------------------------------------------------

def _merged_pvalue(counts: np.ndarray, probs: np.ndarray) -> float:
    """Chi-square p-value after merging bins with expectation below 10."""
    n = counts.sum()
    expected = probs / probs.sum() * n
    obs_m, exp_m = [], []
    acc_o = acc_e = 0.0
    for o, e in zip(counts, expected):
        acc_o += o
        acc_e += e
        if acc_e >= 10.0:
            obs_m.append(acc_o)
            exp_m.append(acc_e)
            acc_o = acc_e = 0.0
    if acc_e > 0:
        obs_m[-1] += acc_o
        exp_m[-1] += acc_e
    obs_m = np.asarray(obs_m)
    exp_m = np.asarray(exp_m) * (obs_m.sum() / np.sum(exp_m))
    return chisquare(obs_m, exp_m).pvalue


def _qubit_bin_probs(kind: EnsembleKind, edges: np.ndarray) -> np.ndarray:
    """Bloch-radius bin masses, integrated in the substituted variable."""
    k = SUB_POWER[kind]

    def integrand(u):
        small = u ** k
        jac = 2.0 * k * u ** (k - 1) if k > 1 else 2.0
        return _density_pair(kind, 1.0 - small, small, 1) * jac

    def u_of(r):
        return ((1.0 - r) / 2.0) ** (1.0 / k)

    out = []
    for a, b in zip(edges[:-1], edges[1:]):
        val = quad(integrand, u_of(b), u_of(a), epsabs=1e-14, epsrel=1e-10, limit=200)[0]
        out.append(val)
    return np.asarray(out)


def _regular3_bin_probs(kind: EnsembleKind, edges: np.ndarray) -> np.ndarray:
    """Largest-eigenvalue marginal bin masses for the regular qutrit stratum."""
    f = _density3(kind)
    f3 = _density3_triple(kind)
    k = SUB_POWER[kind]

    def strip(r1):
        lo = (1.0 - r1) / 2.0
        if r1 <= 0.5:
            return quad(lambda r2: f(r1, r2), lo, r1, epsabs=1e-14, epsrel=1e-8, limit=200)[0]
        hi = 1.0 - r1
        if hi <= lo:
            return 0.0
        if kind is EnsembleKind.HILBERT_SCHMIDT:
            return quad(lambda r2: f(r1, r2), lo, hi, epsabs=1e-14, epsrel=1e-8, limit=200)[0]
        tmax = (hi - lo) ** (1.0 / k)
        return quad(lambda t: f3(r1, hi - t ** k, t ** k) * k * t ** (k - 1), 0.0, tmax,
                    epsabs=1e-13, epsrel=1e-8, limit=300)[0]

    out = []
    for a, b in zip(edges[:-1], edges[1:]):
        pieces = []
        if a < 0.5 < b:
            pieces = [(a, 0.5), (0.5, b)]
        else:
            pieces = [(a, b)]
        total = 0.0
        for lo, hi in pieces:
            total += quad(strip, lo, hi, epsabs=1e-14, epsrel=1e-7, limit=200)[0]
        out.append(total)
    return np.asarray(out)


def _edge_bin_probs(kind: EnsembleKind, comp: tuple[int, int], edges: np.ndarray) -> np.ndarray:
    """Small-eigenvalue bin masses on a degenerate edge."""
    k = SUB_POWER[kind]

    def big_of(y):
        return (1.0 - y) / 2.0 if comp == (2, 1) else 1.0 - 2.0 * y

    def integrand(u):
        y = u ** k
        jac = k * u ** (k - 1) if k > 1 else 1.0
        return _density_pair(kind, big_of(y), y, 2) * jac

    out = []
    for a, b in zip(edges[:-1], edges[1:]):
        val = quad(integrand, a ** (1.0 / k), b ** (1.0 / k), epsabs=1e-14, epsrel=1e-10, limit=200)[0]
        out.append(val)
    return np.asarray(out)


N_CHI = 1_000_000
N_BINS = 50
ALPHA = 1e-3


@pytest.mark.parametrize("kind", ALL_KINDS)
def test_chisquare_qubit(kind):
    eigs = SpectrumSampler(kind, DegeneracyType((1, 1)), seed=2024).sample(N_CHI)
    r = eigs[:, 0] - eigs[:, 1]
    edges = np.linspace(0.0, 1.0, N_BINS + 1)
    counts, _ = np.histogram(r, bins=edges)
    probs = _qubit_bin_probs(kind, edges)
    assert _merged_pvalue(counts, probs) >= ALPHA


@pytest.mark.parametrize("kind", ALL_KINDS)
def test_chisquare_regular_qutrit(kind):
    eigs = SpectrumSampler(kind, DegeneracyType((1, 1, 1)), seed=2025).sample(N_CHI)
    edges = np.linspace(1.0 / 3.0, 1.0, N_BINS + 1)
    counts, _ = np.histogram(eigs[:, 0], bins=edges)
    probs = _regular3_bin_probs(kind, edges)
    assert _merged_pvalue(counts, probs) >= ALPHA


@pytest.mark.parametrize("kind", ALL_KINDS)
@pytest.mark.parametrize("comp", [(2, 1), (1, 2)])
def test_chisquare_degenerate_edges(kind, comp):
    eigs = SpectrumSampler(kind, DegeneracyType(comp), seed=2026).sample(N_CHI)
    y = eigs[:, 2]
    edges = np.linspace(0.0, 1.0 / 3.0, N_BINS + 1)
    counts, _ = np.histogram(y, bins=edges)
    probs = _edge_bin_probs(kind, comp, edges)
    assert _merged_pvalue(counts, probs) >= ALPHA


class TestConstructionVersusRejection:
    def test_hs_ginibre_matches_rejection(self):
        n = 100_000
        a = SpectrumSampler(EnsembleKind.HILBERT_SCHMIDT, DegeneracyType((1, 1, 1)), seed=31).sample(n)
        b = SpectrumSampler(
            EnsembleKind.HILBERT_SCHMIDT, DegeneracyType((1, 1, 1)), seed=32, method="rejection"
        ).sample(n)
        assert ks_2samp(a[:, 0], b[:, 0]).pvalue >= ALPHA

    def test_bures_construction_matches_rejection(self):
        n = 100_000
        a = SpectrumSampler(EnsembleKind.BURES, DegeneracyType((1, 1, 1)), seed=33).sample(n)
        b = SpectrumSampler(
            EnsembleKind.BURES, DegeneracyType((1, 1, 1)), seed=34, method="rejection"
        ).sample(n)
        assert ks_2samp(a[:, 0], b[:, 0]).pvalue >= ALPHA


def test_hs_qutrit_classical_fraction_large_sample():
    # classical fraction at the symmetric kernel angle, 1e7 draws
    from wigner_classicality.wigner import sw_spectrum_qutrit

    sampler = SpectrumSampler(EnsembleKind.HILBERT_SCHMIDT, DegeneracyType((1, 1, 1)), seed=77)
    kernel = sw_spectrum_qutrit(math.pi / 6.0).as_array()[::-1]
    n = 10_000_000
    hits = 0
    done = 0
    while done < n:
        m = min(1_000_000, n - done)
        eigs = sampler.sample(m)
        hits += int(np.count_nonzero(eigs @ kernel >= 0.0))
        done += m
    q_ref = 21.0 / 31104.0
    sigma = math.sqrt(q_ref * (1.0 - q_ref) / n)
    assert abs(hits / n - q_ref) <= 3.0 * sigma
