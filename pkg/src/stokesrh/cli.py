"""Command-line front end.

    stokesrh dispersion --omega1 0.3 --grid-min 0 --grid-max 3 --points 301
    stokesrh figures fig2 --out fig2.csv
    stokesrh verify --omega1 0.3
    stokesrh eta0 --omega1 0.1
    stokesrh critical

Exit codes: 0 success, 1 a verification check failed, 2 invalid
configuration or wrong regime, 3 numerical failure.  Output is assembled in
memory and written only once complete.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass

import numpy as np

from . import factorization as fz
from . import spectrum as sp
from .dispersion import ProblemParams, lambda0_real, lambda_boundary, s
from .errors import ConfigurationError, NumericalFailure
from .riemann import coefficient_g, critical_point, zero_crossing_frequency

EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_NUMERIC = 0, 1, 2, 3

FIGURE_PRESETS = {"fig1": (0.1, 0.3, 0.5), "fig2": (0.1, 0.3, 0.5), "fig3": (0.1, 0.3)}
FIGURE_COLUMNS = {"fig1": "Re V(mu)", "fig2": "|X(mu)|", "fig3": "Re X(mu)"}


@dataclass(frozen=True)
class RunConfig:
    omega1: float | None
    grid_min: float
    grid_max: float
    grid_points: int
    tol: float | None
    output_format: str = "csv"
    output_path: str | None = None

    def __post_init__(self):
        if not self.grid_min < self.grid_max:
            raise ConfigurationError("grid-min must be below grid-max")
        if self.grid_points < 2:
            raise ConfigurationError("points must be at least 2")
        if self.tol is not None and not self.tol > 0:
            raise ConfigurationError("tol must be positive")
        if self.output_format not in ("csv", "json"):
            raise ConfigurationError("format must be csv or json")

    def grid(self, log: bool = False) -> np.ndarray:
        if log:
            return np.geomspace(self.grid_min, self.grid_max, self.grid_points)
        return np.linspace(self.grid_min, self.grid_max, self.grid_points)


def _num(x: float) -> str:
    return f"{float(x):.17e}"


def render_table(columns: list[str], rows: list[list[float]], fmt: str) -> str:
    if fmt == "json":
        body = {"columns": columns, "rows": [[float(v) for v in r] for r in rows]}
        return json.dumps(body, indent=1) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([_num(v) for v in r])
    return buf.getvalue()


def _emit(text: str, path: str | None):
    if path:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _require_omega1(cfg: RunConfig) -> float:
    if cfg.omega1 is None:
        raise ConfigurationError("--omega1 is required for this command")
    return cfg.omega1


# --- commands ---------------------------------------------------------------------

def cmd_dispersion(cfg: RunConfig) -> str:
    p = ProblemParams(_require_omega1(cfg))
    mu = cfg.grid()
    b = lambda_boundary(mu, p)
    cols = ["mu", "lambda0(mu)", "s(mu)", "Re lambda+(mu)", "Im lambda+(mu)",
            "Re lambda-(mu)", "Im lambda-(mu)"]
    data = np.column_stack([mu, lambda0_real(mu), s(mu), b.plus.real, b.plus.imag,
                            b.minus.real, b.minus.imag])
    return render_table(cols, data.tolist(), cfg.output_format)


def figure_series(which: str, omega1: float, mu: np.ndarray) -> np.ndarray:
    """Plotted quantity of a cut figure for one frequency."""
    f = fz.Factorizer.build(omega1)
    v = fz.v_on_cut(mu, f)
    if which == "fig1":
        return v.real
    x = fz.x_on_cut(mu, f)
    return np.abs(x) if which == "fig2" else x.real


def cmd_figures(which: str, cfg: RunConfig) -> str:
    if which == "fig5":
        ws = cfg.grid(log=True)
        rows = []
        for w in ws:
            eta = sp.eta0_explicit(fz.Factorizer.build(float(w)))
            rows.append([w, eta.real, 1 / (2 * math.sqrt(w)), eta.imag])
        cols = ["omega1", "Re eta0(omega1)", "Re eta0 asymptotic", "Im eta0(omega1)"]
        return render_table(cols, rows, cfg.output_format)

    if which not in FIGURE_PRESETS:
        raise ConfigurationError(f"unknown figure {which!r}")
    mu = cfg.grid()
    if mu[0] <= 0:
        raise ConfigurationError("figure grids live on the cut: grid-min must be > 0")
    omegas = FIGURE_PRESETS[which] if cfg.omega1 is None else (cfg.omega1,)
    rows = []
    for w in omegas:
        vals = figure_series(which, w, mu)
        rows.extend([w, m, v] for m, v in zip(mu, vals))
    return render_table(["omega1", "mu", FIGURE_COLUMNS[which]], rows, cfg.output_format)


# Standard test points per identity.
Z_REP = [-1.0 + 0j, 2j, -0.5 + 0.5j]
Z_INV = [-2.0 + 0j, 3j, 1 + 2j]
MU_CUT = [0.3, 0.9, 2.0]
MU_INV = [0.5, 0.8, 2.0]
MU_BDRY = [0.3, -0.3, 0.9, -0.9, 2.0, -2.0]
Z_NONLIN = [-1.0 + 0j, 2j, -0.5 + 0j]
MU_RATIO = list(np.linspace(0.05, 5.0, 25))


def _grid_label(points) -> list[str]:
    out = []
    for z in points:
        if isinstance(z, str):
            out.append(z)
        elif isinstance(z, complex):
            out.append(repr(complex(z)))
        else:
            out.append(repr(float(z)))
    return out


def _checks(f: fz.Factorizer):
    """(identity, grid, callable -> residual, tol, index-one-only)."""
    eta = {}

    def eta0():
        if "v" not in eta:
            eta["v"] = sp.eta0_explicit(f)
        return eta["v"]

    def ratio():
        mu = np.array(MU_RATIO)
        xb = fz.x_boundary(mu, f)
        g = coefficient_g(mu, f.params)
        return float(np.max(np.abs(xb.plus / xb.minus - g) / np.abs(g)))

    z_lim = 1e3 * np.exp(0.75j * math.pi)
    return [
        ("boundary_ratio_equals_G", MU_RATIO, ratio, 1e-9, False),
        ("jump_representation", Z_REP, lambda: fz.verify_jump_representation(Z_REP, f), 1e-6, False),
        ("density_representation", Z_REP, lambda: fz.verify_density_representation(Z_REP, f), 1e-6, False),
        ("normalization", ["(0, inf)"], lambda: abs(fz.normalization_integral(f) + 1), 1e-6, True),
        ("inverse_representation", Z_INV, lambda: fz.verify_inverse_representation(Z_INV, f), 1e-6, False),
        ("inverse_on_cut", MU_INV, lambda: fz.verify_inverse_on_cut(MU_INV, f), 1e-5, False),
        ("on_cut_representation", MU_CUT, lambda: fz.verify_on_cut_representation(MU_CUT, f), 1e-5, False),
        ("limit_at_infinity", [z_lim], lambda: fz.limit_residual(z_lim, f), 1e-3, False),
        ("dispersion_factorization", ["600-point six-ray grid, |z| in [0.5, 20]"],
         lambda: sp.verify_factorization(sp.standard_z_grid(), f, eta0() if f.index else None), 1e-6, False),
        ("boundary_factorization", MU_BDRY,
         lambda: sp.verify_boundary_factorization(MU_BDRY, f, eta0() if f.index else None), 1e-6, False),
        ("nonlinear_representation", Z_NONLIN,
         lambda: sp.verify_nonlinear_representation(Z_NONLIN, f, eta0()), 1e-6, True),
        ("eta0_explicit_vs_newton", ["z = i"],
         lambda: abs(eta0() - sp.eta0_newton_oracle(f.params)), 1e-8, True),
    ]


def cmd_verify(cfg: RunConfig) -> tuple[str, bool]:
    f = fz.Factorizer.build(_require_omega1(cfg))
    results = []
    ok = True
    for name, grid, fn, tol, index_one_only in _checks(f):
        tol = cfg.tol if cfg.tol is not None else tol
        entry = {"identity": name, "grid": _grid_label(grid), "tol": tol}
        if index_one_only and f.index != 1:
            entry.update(max_residual=None, status="skipped (regime)")
        else:
            r = float(fn())
            passed = r < tol
            ok &= passed
            entry.update(max_residual=r, status="pass" if passed else "fail")
        results.append(entry)
    report = {
        "omega1": f.omega1,
        "regime": f.params.regime.name,
        "index": f.index,
        "checks": results,
        "all_passed": ok,
    }
    return json.dumps(report, indent=1) + "\n", ok


def cmd_eta0(cfg: RunConfig) -> str:
    p = ProblemParams(_require_omega1(cfg))
    if p.index != 1:
        raise ConfigurationError(
            f"omega1={p.omega1} is above the critical frequency: the number of zeros is "
            f"N = 2*kappa(G) = 0, so there is no discrete spectrum"
        )
    f = fz.Factorizer.build(p)
    eta = sp.eta0_explicit(f)
    oracle = sp.eta0_newton_oracle(p)
    asym = sp.eta0_asymptotic(p.omega1)
    rec = {
        "omega1": p.omega1,
        "eta0": [eta.real, eta.imag],
        "asymptotic": [asym.real, asym.imag],
        "oracle": [oracle.real, oracle.imag],
        "max_cross_error": abs(eta - oracle),
    }
    return json.dumps(rec, indent=1) + "\n"


def cmd_critical() -> str:
    cp = critical_point()
    rec = {
        "critical_frequency": cp.omega1,
        "argmax_mu": cp.mu,
        "feasible_window": list(cp.window),
        "zero_crossing_frequency": zero_crossing_frequency(),
    }
    return json.dumps(rec, indent=1) + "\n"


# --- argument parsing ---------------------------------------------------------------

_DEFAULT_GRIDS = {
    "dispersion": (0.0, 3.0, 301),
    "figures": (0.01, 3.0, 300),
    "fig5": (0.01, 0.69, 200),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="stokesrh", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, fmt=True):
        p.add_argument("--omega1", type=float, default=None)
        p.add_argument("--grid-min", type=float, default=None)
        p.add_argument("--grid-max", type=float, default=None)
        p.add_argument("--points", type=int, default=None)
        p.add_argument("--tol", type=float, default=None)
        if fmt:
            p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--out", default=None)

    common(sub.add_parser("dispersion", help="lambda0, s and lambda+- on a grid"))
    fig = sub.add_parser("figures", help="figure data series")
    fig.add_argument("which", choices=("fig1", "fig2", "fig3", "fig5"))
    common(fig)
    common(sub.add_parser("verify", help="residuals of every identity (JSON)"), fmt=False)
    common(sub.add_parser("eta0", help="discrete zero of the dispersion function (JSON)"), fmt=False)
    sub.add_parser("critical", help="critical frequency (JSON)").add_argument("--out", default=None)
    return parser


def _run_config(args) -> RunConfig:
    key = "fig5" if getattr(args, "which", None) == "fig5" else args.command
    gmin, gmax, npts = _DEFAULT_GRIDS.get(key, (0.01, 3.0, 300))
    return RunConfig(
        omega1=args.omega1,
        grid_min=gmin if args.grid_min is None else args.grid_min,
        grid_max=gmax if args.grid_max is None else args.grid_max,
        grid_points=npts if args.points is None else args.points,
        tol=args.tol,
        output_format=getattr(args, "format", "csv"),
        output_path=args.out,
    )


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "critical":
            _emit(cmd_critical(), args.out)
            return EXIT_OK
        cfg = _run_config(args)
        if args.command == "dispersion":
            text = cmd_dispersion(cfg)
        elif args.command == "figures":
            text = cmd_figures(args.which, cfg)
        elif args.command == "verify":
            text, ok = cmd_verify(cfg)
            _emit(text, cfg.output_path)
            return EXIT_OK if ok else EXIT_FAIL
        else:
            text = cmd_eta0(cfg)
        _emit(text, cfg.output_path)
        return EXIT_OK
    except ConfigurationError as exc:
        print(f"stokesrh: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NumericalFailure as exc:
        print(f"stokesrh: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
