"""Command-line front end.

Subcommands
-----------
curve    indicator versus the moduli angle, as CSV and optionally SVG
table1   minima, minimizers and endpoint asymmetries for all ensembles,
         with a side-by-side comparison against the published reference
qubit    the three qubit indicators
ratio    degenerate-to-regular indicator ratio over a moduli grid
sample   draw eigenvalue spectra from an ensemble stratum
verify   cross-method consistency suite with a JSON report

Exit codes: 0 ok, 1 invalid configuration, 2 I/O error, 3 computation
error, 4 verification failure.  All outputs are deterministic for a fixed
configuration (including seed and worker count) and carry a provenance
header line.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass

import numpy as np

from . import __version__
from .spectra import PolarPoint, polar_to_spectrum, trisectrix_boundary
from .wigner import (
    ZETA_MAX,
    classical_cone_regular_qutrit,
    dual_pairing,
    is_classical,
    sw_spectrum_qutrit,
)
from .ensembles import EnsembleKind, SamplerFailureError, SpectrumSampler
from .indicators import (
    DEGENERATE_QUTRIT,
    QUBIT_STRATUM,
    REGULAR_QUTRIT,
    ConvergenceError,
    IndicatorRequest,
    Method,
    UnsupportedRequestError,
    asymmetry,
    compute_indicator,
    minimize_q_over_zeta,
    ratio_degenerate_to_regular,
    _edge_mix_weight,
)
from .spectra import DegeneracyType
from .svgplot import render_line_plot

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_IO = 2
EXIT_COMPUTE = 3
EXIT_VERIFY = 4

TOOL = "wigner-classicality"

#: Published reference values compared against by ``table1`` and tests:
#: ensemble -> (q_min, zeta_min, q(0) - q(pi/3)).
REFERENCE_MINIMA = {
    "hs": (0.0006751, math.pi / 6.0, 0.0),
    "bkm": (0.0000121609, 0.527798, 0.0000216102),
    "bures": (0.0000891011, 0.525096, 0.0000472609),
}

_ENSEMBLE_CHOICES = ("hs", "bures", "bkm", "all")
_STRATUM_CHOICES = ("regular", "degenerate")


class _CliError(Exception):
    """Invalid configuration; maps to exit code 1."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # do not sys.exit(2) like argparse does
        raise _CliError(message)


@dataclass
class RunConfig:
    command: str
    ensembles: list[EnsembleKind]
    stratum: str = "regular"
    zeta_grid: tuple[float, float, int] = (0.0, ZETA_MAX, 61)
    method: Method = Method.CLOSED_FORM
    tol: float | None = None
    samples: int = 1_000_000
    seed: int = 1234
    workers: int = 1
    out: str | None = None
    fmt: str = "csv"
    dimension: int = 3

    def describe(self) -> str:
        names = "+".join(e.label for e in self.ensembles)
        a, b, n = self.zeta_grid
        return (
            f"command={self.command} ensemble={names} stratum={self.stratum} "
            f"zeta_grid={a:.17g}:{b:.17g}:{n} method={self.method.value} "
            f"tol={self.tol} samples={self.samples} seed={self.seed} "
            f"workers={self.workers} format={self.fmt}"
        )


def _num(x: float) -> str:
    """CSV number format: 17 significant digits, lowercase exponent."""
    return f"{float(x):.17g}"


def _parse_zeta_grid(text: str) -> tuple[float, float, int]:
    parts = text.split(":")
    if len(parts) != 3:
        raise _CliError(f"bad zeta grid {text!r}; expected start:stop:count")
    try:
        a, b, n = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise _CliError(f"bad zeta grid {text!r}: {exc}") from None
    if n < 2:
        raise _CliError(f"zeta grid needs at least 2 points, got {n}")
    if not a < b:
        raise _CliError(f"zeta grid must have start < stop, got {a} >= {b}")
    if a < -1e-15 or b > ZETA_MAX + 1e-12:
        raise _CliError(f"zeta grid must lie within [0, pi/3], got [{a}, {b}]")
    return max(a, 0.0), min(b, ZETA_MAX), n


def _build_parser() -> _Parser:
    parser = _Parser(prog=TOOL, description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--version", action="version", version=f"{TOOL} {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: _Parser, *, method_default: str = "closed") -> None:
        p.add_argument("--ensemble", choices=_ENSEMBLE_CHOICES, default="hs")
        p.add_argument("--stratum", choices=_STRATUM_CHOICES, default="regular")
        p.add_argument("--zeta-grid", default=f"0:{ZETA_MAX!r}:61", metavar="A:B:N")
        p.add_argument("--method", choices=[m.value for m in Method], default=method_default)
        p.add_argument("--tol", type=float, default=None, help="quadrature/comparison tolerance")
        p.add_argument("--samples", type=int, default=1_000_000)
        p.add_argument("--seed", type=int, default=1234)
        p.add_argument("--workers", type=int, default=1)
        p.add_argument("--out", default=None, metavar="PATH")
        p.add_argument("--format", dest="fmt", choices=("csv", "svg", "both"), default="csv")

    for name, help_text, default_method in (
        ("curve", "indicator versus the moduli angle", "closed"),
        ("table1", "minima, minimizers and asymmetries for all ensembles", "quad"),
        ("qubit", "the three qubit indicators", "closed"),
        ("ratio", "degenerate-to-regular indicator ratio", "closed"),
        ("sample", "draw eigenvalue spectra", "mc"),
        ("verify", "cross-method consistency suite", "quad"),
    ):
        p = sub.add_parser(name, help=help_text)
        common(p, method_default=default_method)
        if name == "sample":
            p.add_argument("--n", type=int, choices=(2, 3), default=3, help="Hilbert-space dimension")

    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    if args.ensemble == "all":
        ensembles = [EnsembleKind.HILBERT_SCHMIDT, EnsembleKind.BURES, EnsembleKind.BKM]
    else:
        ensembles = [EnsembleKind.from_name(args.ensemble)]
    zeta_grid = _parse_zeta_grid(args.zeta_grid)
    if args.samples < 1:
        raise _CliError(f"sample count must be positive, got {args.samples}")
    if args.workers < 1:
        raise _CliError(f"worker count must be positive, got {args.workers}")
    if args.seed < 0 or args.seed > 2 ** 64 - 1:
        raise _CliError(f"seed must be an unsigned 64-bit integer, got {args.seed}")
    if args.tol is not None and not 0.0 < args.tol < 1.0:
        raise _CliError(f"tolerance must be in (0, 1), got {args.tol}")
    return RunConfig(
        command=args.command,
        ensembles=ensembles,
        stratum=args.stratum,
        zeta_grid=zeta_grid,
        method=Method.from_name(args.method),
        tol=args.tol,
        samples=args.samples,
        seed=args.seed,
        workers=args.workers,
        out=args.out,
        fmt=args.fmt,
        dimension=getattr(args, "n", 3),
    )


def _provenance(cfg: RunConfig) -> str:
    return f"# {TOOL} {__version__} | {cfg.describe()}"


def _out_paths(cfg: RunConfig) -> tuple[str | None, str | None]:
    """Resolve (csv_path, svg_path) from --out and --format."""
    want_csv = cfg.fmt in ("csv", "both")
    want_svg = cfg.fmt in ("svg", "both")
    if cfg.out is None:
        if want_svg:
            raise _CliError("--format svg/both requires --out")
        return None, None
    base = cfg.out
    for suffix in (".csv", ".svg", ".json"):
        if base.endswith(suffix):
            base = base[: -len(suffix)]
            break
    return (base + ".csv" if want_csv else None, base + ".svg" if want_svg else None)


def _write_text(path: str | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _csv_text(cfg: RunConfig, header: list[str], rows: list[list[str]]) -> str:
    lines = [_provenance(cfg), ",".join(header)]
    lines.extend(",".join(row) for row in rows)
    return "\n".join(lines) + "\n"


def _stratum_label(cfg: RunConfig):
    if cfg.stratum == "regular":
        return REGULAR_QUTRIT
    return DEGENERATE_QUTRIT


def _indicator_at(cfg: RunConfig, ensemble: EnsembleKind, zeta: float):
    req = IndicatorRequest(
        ensemble=ensemble,
        stratum=_stratum_label(cfg),
        method=cfg.method,
        zeta=zeta,
        tolerance=cfg.tol,
        samples=cfg.samples if cfg.method is Method.MONTE_CARLO else None,
        seed=cfg.seed if cfg.method is Method.MONTE_CARLO else None,
        workers=cfg.workers,
    )
    return compute_indicator(req)


def _zetas(cfg: RunConfig) -> np.ndarray:
    a, b, n = cfg.zeta_grid
    return np.linspace(a, b, n)


def _run_curve(cfg: RunConfig) -> int:
    csv_path, svg_path = _out_paths(cfg)
    header = ["zeta", "q", "method", "error_estimate", "ensemble", "stratum", "seed"]
    rows = []
    series = []
    for ensemble in cfg.ensembles:
        qs = []
        zetas = _zetas(cfg)
        for z in zetas:
            res = _indicator_at(cfg, ensemble, float(z))
            qs.append(res.q)
            rows.append([
                _num(z), _num(res.q), res.method.value, _num(res.error_estimate),
                ensemble.label, cfg.stratum, str(cfg.seed),
            ])
        series.append((ensemble.label, list(zetas), qs))
    if csv_path is not None or cfg.fmt in ("csv", "both"):
        _write_text(csv_path, _csv_text(cfg, header, rows))
    if svg_path is not None:
        svg = render_line_plot(
            series, title=f"classicality indicator ({cfg.stratum} stratum)",
            xlabel="zeta", ylabel="Q", log_y=True,
        )
        _write_text(svg_path, f"<!-- {_provenance(cfg)[2:]} -->\n" + svg)
    return EXIT_OK


def _run_qubit(cfg: RunConfig) -> int:
    csv_path, _ = _out_paths(cfg)
    header = ["ensemble", "q", "method", "error_estimate", "seed"]
    rows = []
    for ensemble in cfg.ensembles:
        req = IndicatorRequest(
            ensemble=ensemble, stratum=QUBIT_STRATUM, method=cfg.method,
            tolerance=cfg.tol,
            samples=cfg.samples if cfg.method is Method.MONTE_CARLO else None,
            seed=cfg.seed if cfg.method is Method.MONTE_CARLO else None,
            workers=cfg.workers,
        )
        res = compute_indicator(req)
        rows.append([ensemble.label, _num(res.q), res.method.value, _num(res.error_estimate), str(cfg.seed)])
    _write_text(csv_path, _csv_text(cfg, header, rows))
    return EXIT_OK


def _run_ratio(cfg: RunConfig) -> int:
    csv_path, svg_path = _out_paths(cfg)
    header = ["zeta", "ratio", "ensemble", "method", "seed"]
    rows = []
    series = []
    for ensemble in cfg.ensembles:
        zetas = _zetas(cfg)
        ratios = []
        for z in zetas:
            r = ratio_degenerate_to_regular(
                ensemble, float(z), cfg.method, tolerance=cfg.tol,
                samples=cfg.samples if cfg.method is Method.MONTE_CARLO else None,
                seed=cfg.seed if cfg.method is Method.MONTE_CARLO else None,
            )
            ratios.append(r)
            rows.append([_num(z), _num(r), ensemble.label, cfg.method.value, str(cfg.seed)])
        series.append((ensemble.label, list(zetas), ratios))
    _write_text(csv_path, _csv_text(cfg, header, rows))
    if svg_path is not None:
        svg = render_line_plot(series, title="degenerate / regular indicator ratio",
                               xlabel="zeta", ylabel="R", log_y=False)
        _write_text(svg_path, f"<!-- {_provenance(cfg)[2:]} -->\n" + svg)
    return EXIT_OK


def _run_table1(cfg: RunConfig) -> int:
    """Minima over the moduli angle for the three ensembles.

    The Hilbert-Schmidt row uses the closed forms; the monotone ensembles
    use quadrature, whatever --method says (there are no closed forms there).
    """
    csv_path, _ = _out_paths(cfg)
    header = ["ensemble", "q_min", "zeta_min", "asymmetry"]
    rows = []
    lines = []
    for ensemble in (EnsembleKind.HILBERT_SCHMIDT, EnsembleKind.BKM, EnsembleKind.BURES):
        method = Method.CLOSED_FORM if ensemble is EnsembleKind.HILBERT_SCHMIDT else Method.QUADRATURE
        zeta_min, q_min = minimize_q_over_zeta(
            ensemble, REGULAR_QUTRIT, method, tolerance=cfg.tol,
        )
        asym = asymmetry(ensemble, REGULAR_QUTRIT, method, tolerance=cfg.tol)
        rows.append([ensemble.label, _num(q_min), _num(zeta_min), _num(asym)])
        ref_q, ref_z, ref_a = REFERENCE_MINIMA[ensemble.label]
        dq = abs(q_min - ref_q) / ref_q
        dz = abs(zeta_min - ref_z)
        da = abs(asym - ref_a) / ref_a if ref_a else abs(asym)
        lines.append(
            f"{ensemble.label:6s} q_min={q_min:.10e} (ref {ref_q:.10e}, rel dev {dq:.2e})  "
            f"zeta_min={zeta_min:.6f} (ref {ref_z:.6f}, dev {dz:.2e})  "
            f"asymmetry={asym:.10e} (ref {ref_a:.10e}, dev {da:.2e})"
        )
    _write_text(csv_path, _csv_text(cfg, header, rows))
    sys.stdout.write("\n".join(lines) + "\n")
    return EXIT_OK


def _run_sample(cfg: RunConfig) -> int:
    csv_path, _ = _out_paths(cfg)
    n_dim = cfg.dimension
    ensemble = cfg.ensembles[0]
    rng = np.random.default_rng(cfg.seed)
    if cfg.stratum == "regular":
        sampler = SpectrumSampler(ensemble, DegeneracyType((1,) * n_dim), rng=rng)
        eigs = sampler.sample(cfg.samples)
    else:
        if n_dim != 3:
            raise _CliError("degenerate-stratum sampling is defined for the qutrit")
        w0 = _edge_mix_weight(ensemble)
        n0 = int(rng.binomial(cfg.samples, w0))
        parts = []
        for comp, count in (((2, 1), n0), ((1, 2), cfg.samples - n0)):
            if count:
                parts.append(SpectrumSampler(ensemble, DegeneracyType(comp), rng=rng).sample(count))
        eigs = np.concatenate(parts, axis=0)
    header = [f"r{i + 1}" for i in range(n_dim)]
    rows = [[_num(v) for v in row] for row in eigs]
    _write_text(csv_path, _csv_text(cfg, header, rows))
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def _check(name: str, expected: float, actual: float, tolerance: float) -> dict:
    return {
        "check": name,
        "expected": expected,
        "actual": actual,
        "tolerance": tolerance,
        "pass": bool(abs(actual - expected) <= tolerance),
    }


def _quad_q(ensemble: EnsembleKind, stratum, zeta: float | None) -> object:
    req = IndicatorRequest(ensemble=ensemble, stratum=stratum, method=Method.QUADRATURE, zeta=zeta)
    return compute_indicator(req)


def _closed_q(ensemble: EnsembleKind, stratum, zeta: float | None) -> float:
    req = IndicatorRequest(ensemble=ensemble, stratum=stratum, method=Method.CLOSED_FORM, zeta=zeta)
    return compute_indicator(req).q


def _mc_q(ensemble: EnsembleKind, stratum, zeta: float | None, samples: int, seed: int, workers: int) -> float:
    req = IndicatorRequest(
        ensemble=ensemble, stratum=stratum, method=Method.MONTE_CARLO, zeta=zeta,
        samples=samples, seed=seed, workers=workers,
    )
    return compute_indicator(req).q


def _verify_checks(cfg: RunConfig) -> list[dict]:
    tol = cfg.tol if cfg.tol is not None else 1e-6
    samples = min(cfg.samples, 200_000) if cfg.samples else 200_000
    checks: list[dict] = []
    all_kinds = (EnsembleKind.HILBERT_SCHMIDT, EnsembleKind.BURES, EnsembleKind.BKM)
    zeta_probe = [0.0, math.pi / 12.0, math.pi / 6.0, math.pi / 4.0, ZETA_MAX]

    # closed form versus quadrature
    for ensemble in all_kinds:
        closed = _closed_q(ensemble, QUBIT_STRATUM, None)
        quad = _quad_q(ensemble, QUBIT_STRATUM, None).q
        checks.append(_check(f"qubit_quad_vs_closed[{ensemble.label}]", closed, quad, tol * closed))
    for stratum, tag in ((REGULAR_QUTRIT, "regular"), (DEGENERATE_QUTRIT, "degenerate")):
        for z in zeta_probe:
            closed = _closed_q(EnsembleKind.HILBERT_SCHMIDT, stratum, z)
            quad = _quad_q(EnsembleKind.HILBERT_SCHMIDT, stratum, z).q
            checks.append(_check(f"hs_{tag}_quad_vs_closed[zeta={z:.6f}]", closed, quad, tol * closed))

    # Monte Carlo versus quadrature, 4 sigma
    mc_cells = [(e, s, math.pi / 6.0) for e in all_kinds for s in (REGULAR_QUTRIT, DEGENERATE_QUTRIT)]
    mc_cells += [(e, QUBIT_STRATUM, None) for e in all_kinds]
    for idx, (ensemble, stratum, z) in enumerate(mc_cells):
        quad = _quad_q(ensemble, stratum, z).q
        mc = _mc_q(ensemble, stratum, z, samples, cfg.seed + idx, cfg.workers)
        sigma = math.sqrt(quad * (1.0 - quad) / samples)
        tag = "qubit" if stratum.n == 2 else ("regular" if stratum is REGULAR_QUTRIT else "degenerate")
        checks.append(_check(f"mc_vs_quad[{ensemble.label},{tag}]", quad, mc, 4.0 * sigma))

    # Hilbert-Schmidt mirror symmetry of the closed forms
    for stratum, tag in ((REGULAR_QUTRIT, "regular"), (DEGENERATE_QUTRIT, "degenerate")):
        for delta in (0.05, 0.1, 0.15):
            a = _closed_q(EnsembleKind.HILBERT_SCHMIDT, stratum, math.pi / 6.0 + delta)
            b = _closed_q(EnsembleKind.HILBERT_SCHMIDT, stratum, math.pi / 6.0 - delta)
            checks.append(_check(f"hs_symmetry_{tag}[delta={delta}]", a, b, tol * a))

    # monotone ensembles break the mirror symmetry: asymmetry must exceed error
    for ensemble in (EnsembleKind.BURES, EnsembleKind.BKM):
        r0 = _quad_q(ensemble, REGULAR_QUTRIT, 0.0)
        r1 = _quad_q(ensemble, REGULAR_QUTRIT, ZETA_MAX)
        asym = r0.q - r1.q
        noise = 4.0 * (r0.error_estimate + r1.error_estimate)
        checks.append({
            "check": f"asymmetry_positive[{ensemble.label}]",
            "expected": noise,
            "actual": asym,
            "tolerance": 0.0,
            "pass": bool(asym > noise),
        })

    # ensemble ordering hs > bures > bkm (regular stratum: whole moduli range;
    # degenerate stratum: upper range, where the relation holds)
    violations_reg = 0
    for z in np.linspace(0.0, ZETA_MAX, 21):
        q_hs = _closed_q(EnsembleKind.HILBERT_SCHMIDT, REGULAR_QUTRIT, float(z))
        q_b = _quad_q(EnsembleKind.BURES, REGULAR_QUTRIT, float(z)).q
        q_k = _quad_q(EnsembleKind.BKM, REGULAR_QUTRIT, float(z)).q
        if not q_hs > q_b > q_k:
            violations_reg += 1
    checks.append(_check("ensemble_ordering_regular[21pts]", 0, violations_reg, 0))
    violations_deg = 0
    for z in np.linspace(math.pi / 6.0, ZETA_MAX, 11):
        q_hs = _closed_q(EnsembleKind.HILBERT_SCHMIDT, DEGENERATE_QUTRIT, float(z))
        q_b = _quad_q(EnsembleKind.BURES, DEGENERATE_QUTRIT, float(z)).q
        q_k = _quad_q(EnsembleKind.BKM, DEGENERATE_QUTRIT, float(z)).q
        if not q_hs > q_b > q_k:
            violations_deg += 1
    checks.append(_check("ensemble_ordering_degenerate[upper,11pts]", 0, violations_deg, 0))

    # analytic cone versus spectral pairing
    rng = np.random.default_rng(cfg.seed)
    mismatches = 0
    for _ in range(100_000):
        phi = float(rng.uniform(0.0, math.pi))
        r = float(rng.uniform(0.0, trisectrix_boundary(phi)))
        z = float(rng.uniform(0.0, ZETA_MAX))
        point = PolarPoint(r, phi)
        kernel = sw_spectrum_qutrit(z)
        spectrum = polar_to_spectrum(point)
        if abs(dual_pairing(spectrum, kernel)) < 1e-12:
            continue
        if classical_cone_regular_qutrit(z, point) != is_classical(spectrum, kernel):
            mismatches += 1
    checks.append(_check("cone_oracle_equivalence[1e5]", 0, mismatches, 0))
    return checks


def _run_verify(cfg: RunConfig) -> int:
    checks = _verify_checks(cfg)
    ok = all(c["pass"] for c in checks)
    report = {
        "tool": TOOL,
        "version": __version__,
        "config": cfg.describe(),
        "seed": cfg.seed,
        "workers": cfg.workers,
        "checks": checks,
        "pass": ok,
    }
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    path = cfg.out
    if path is not None and not path.endswith(".json"):
        path = path + ".json"
    _write_text(path, text)
    for c in checks:
        status = "PASS" if c["pass"] else "FAIL"
        sys.stderr.write(f"{status} {c['check']}\n")
    return EXIT_OK if ok else EXIT_VERIFY


_HANDLERS = {
    "curve": _run_curve,
    "table1": _run_table1,
    "qubit": _run_qubit,
    "ratio": _run_ratio,
    "sample": _run_sample,
    "verify": _run_verify,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        cfg = _config_from_args(args)
    except _CliError as exc:
        sys.stderr.write(f"{TOOL}: configuration error: {exc}\n")
        return EXIT_CONFIG
    try:
        return _HANDLERS[cfg.command](cfg)
    except _CliError as exc:
        sys.stderr.write(f"{TOOL}: configuration error: {exc}\n")
        return EXIT_CONFIG
    except UnsupportedRequestError as exc:
        sys.stderr.write(f"{TOOL}: configuration error: {exc}\n")
        return EXIT_CONFIG
    except OSError as exc:
        sys.stderr.write(f"{TOOL}: I/O error: {exc}\n")
        return EXIT_IO
    except (ConvergenceError, SamplerFailureError, OverflowError, FloatingPointError) as exc:
        sys.stderr.write(f"{TOOL}: computation error: {exc}\n")
        return EXIT_COMPUTE


if __name__ == "__main__":
    sys.exit(main())
