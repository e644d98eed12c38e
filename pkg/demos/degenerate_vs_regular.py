"""How symmetry relates to classicality: degenerate versus regular strata.

For the Hilbert-Schmidt ensemble the degenerate-to-regular indicator ratio
stays above 1 over the whole moduli range (minimum about 5.76 at the
symmetric angle), so the more symmetric states are more often classical.

The same comparison across ensembles holds everywhere on the regular
stratum (hs > bures > bkm) but reverses on the degenerate stratum for small
angles, where the monotone measures pile integrable mass onto the doubly
degenerate corner of the phi = 0 edge and that corner is entirely classical.
"""

import math

import numpy as np

from wigner_classicality import (
    DEGENERATE_QUTRIT,
    REGULAR_QUTRIT,
    EnsembleKind,
    IndicatorRequest,
    Method,
    compute_indicator,
    ratio_degenerate_to_regular,
)

zetas = np.linspace(0.0, math.pi / 3.0, 13)

print("Hilbert-Schmidt degenerate/regular ratio:")
for z in zetas:
    r = ratio_degenerate_to_regular(EnsembleKind.HILBERT_SCHMIDT, float(z), Method.CLOSED_FORM)
    print(f"  zeta = {z:.4f}   R = {r:8.4f}")
print()

print("ensemble comparison on both strata (quadrature):")
print(f"{'zeta':>8s} {'stratum':>12s} {'hs':>12s} {'bures':>12s} {'bkm':>12s} {'ordered':>8s}")
for stratum, tag in ((REGULAR_QUTRIT, "regular"), (DEGENERATE_QUTRIT, "degenerate")):
    for z in (0.0, math.pi / 12, math.pi / 6, math.pi / 3):
        qs = []
        for ensemble in (EnsembleKind.HILBERT_SCHMIDT, EnsembleKind.BURES, EnsembleKind.BKM):
            res = compute_indicator(IndicatorRequest(
                ensemble=ensemble, stratum=stratum, method=Method.QUADRATURE, zeta=float(z)))
            qs.append(res.q)
        ordered = qs[0] > qs[1] > qs[2]
        print(f"{z:8.4f} {tag:>12s} {qs[0]:12.4e} {qs[1]:12.4e} {qs[2]:12.4e} {str(ordered):>8s}")
