"""Qubit classicality by three routes: closed form, quadrature, Monte Carlo.

A qubit state is classical exactly when its Bloch radius is at most
1/sqrt(3); the indicator is the ensemble mass of that ball.  All three
methods agree to within the Monte Carlo error.
"""

import math

from wigner_classicality import (
    EnsembleKind,
    IndicatorRequest,
    Method,
    QUBIT_STRATUM,
    compute_indicator,
)

print(f"{'ensemble':10s} {'closed form':>14s} {'quadrature':>14s} {'monte carlo':>14s} {'mc sigma':>10s}")
for ensemble in (EnsembleKind.HILBERT_SCHMIDT, EnsembleKind.BURES, EnsembleKind.BKM):
    closed = compute_indicator(IndicatorRequest(
        ensemble=ensemble, stratum=QUBIT_STRATUM, method=Method.CLOSED_FORM))
    quad = compute_indicator(IndicatorRequest(
        ensemble=ensemble, stratum=QUBIT_STRATUM, method=Method.QUADRATURE))
    mc = compute_indicator(IndicatorRequest(
        ensemble=ensemble, stratum=QUBIT_STRATUM, method=Method.MONTE_CARLO,
        samples=400_000, seed=2023))
    print(f"{ensemble.label:10s} {closed.q:14.8f} {quad.q:14.8f} {mc.q:14.8f} {mc.error_estimate:10.1e}")

print()
print("classical Bloch ball radius:", 1 / math.sqrt(3))
