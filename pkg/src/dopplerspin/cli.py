"""Command-line front end.

Subcommands: rep, dsf, liftnorm, sweep, counterexample, selfcheck.  Every
command writes one JSON report (stdout or --out).  Exit codes: 0 all checks
pass, 1 a numeric check failed, 2 invalid input, 3 internal consistency
failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
import time

import jsonschema
import numpy as np

from . import clifford_rep as cr
from . import doppler as dp
from . import field_analysis as fa
from . import krein_core as kc
from . import spin_lift as sl

SCHEMA_VERSION = "1.0"
DEFAULT_SEED = 20240607
EXIT_OK, EXIT_CHECK, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3

DEFAULT_TOL = {
    "clifford": 1e-12,
    "polar": 1e-8,
    "dsf_symmetry": 1e-10,
    "bound_slack": 1e-8,
    "lorentz_equality": 1e-9,
    "spectral": 1e-9,
    "consistency": 1e-9,
    "eta_norm": 1e-6,
    "n_norm_rel": 1e-2,
    "slope": 1e-3,
}

log = logging.getLogger("dopplerspin")


class InputError(ValueError):
    pass


_matrix = {"type": "array", "items": {"type": "array", "items": {"type": "number"}}}
_grid_axis = {
    "type": "object",
    "properties": {"axis": {"type": "integer", "minimum": 0}, "min": {"type": "number"},
                   "max": {"type": "number"}, "resolution": {"type": "integer", "minimum": 2}},
    "required": ["axis", "min", "max", "resolution"],
    "additionalProperties": False,
}
_field = {
    "type": "object",
    "properties": {
        "type": {"enum": ["constant", "boost", "sampled"]},
        "vector": {"type": "array", "items": {"type": "number"}},
        "coordinate": {"type": "integer", "minimum": 0},
        "points": _matrix,
        "values": _matrix,
    },
    "required": ["type"],
    "additionalProperties": False,
}
CONFIG_SCHEMA = {
    "type": "object",
    "properties": {
        "command": {"enum": ["rep", "dsf", "liftnorm", "sweep", "counterexample", "selfcheck"]},
        "signature": {"type": "object", "properties": {"p": {"type": "integer"}, "q": {"type": "integer"}},
                      "required": ["p", "q"], "additionalProperties": False},
        "metric": {"type": "object",
                   "properties": {"diag": {"type": "array", "items": {"enum": [1, -1]}}, "matrix": _matrix},
                   "additionalProperties": False},
        "basis1": _matrix,
        "basis2": _matrix,
        "qboost": {"type": "object",
                   "properties": {"p": {"type": "integer"}, "q": {"type": "integer"},
                                  "rapidities": {"type": "array", "items": {"type": "number"}}},
                   "required": ["p", "q", "rapidities"], "additionalProperties": False},
        "preset": {"type": "string"},
        "preset_args": {"type": "object"},
        "fields": {"type": "array", "items": _field, "minItems": 2, "maxItems": 2},
        "grid": {"type": "object",
                 "properties": {"axes": {"type": "array", "items": _grid_axis, "minItems": 1},
                                "base_point": {"type": "array", "items": {"type": "number"}}},
                 "required": ["axes"], "additionalProperties": False},
        "y0": {"type": "array", "items": {"type": "number"}},
        "width": {"type": "number", "exclusiveMinimum": 0},
        "x_max": {"type": "number", "exclusiveMinimum": 0},
        "draws": {"type": "integer", "minimum": 1},
        "tolerances": {"type": "object", "propertyNames": {"enum": sorted(DEFAULT_TOL)},
                       "additionalProperties": {"type": "number"}},
        "seed": {"type": "integer"},
        "workers": {"type": "integer", "minimum": 1},
        "output": {"type": "string"},
        "csv": {"type": "string"},
    },
    "additionalProperties": False,
}


def cmatrix(a) -> list:
    """Complex matrix as row-major nested lists of [re, im] pairs."""
    a = np.asarray(a, dtype=complex)
    return [[[float(z.real), float(z.imag)] for z in row] for row in a]


class Report:
    def __init__(self, command: dict, tol: dict):
        self.command = command
        self.tol = tol
        self.results: dict = {}
        self.checks: list = []

    def check(self, name: str, value: float, tolerance: float, passed: bool | None = None):
        value = float(value)
        if passed is None:
            passed = bool(value <= tolerance)
        self.checks.append({"name": name, "value": value, "tolerance": float(tolerance), "pass": bool(passed)})

    @property
    def ok(self) -> bool:
        return all(c["pass"] for c in self.checks)

    def to_dict(self, wall_time: float | None = None) -> dict:
        out = {"schema_version": SCHEMA_VERSION, "command": self.command, "results": self.results,
               "checks": self.checks, "all_pass": self.ok}
        if wall_time is not None:
            out["wall_time_s"] = wall_time
        return out


# --- input helpers ----------------------------------------------------------

def _metric_from(cfg: dict) -> dp.MetricSpace:
    m = cfg.get("metric")
    if m is None:
        raise InputError("metric is required")
    if "diag" in m:
        return dp.MetricSpace.diagonal(m["diag"])
    if "matrix" in m:
        return dp.MetricSpace(np.array(m["matrix"], dtype=float))
    raise InputError("metric needs 'diag' or 'matrix'")


def _pair_from(cfg: dict):
    """(metric, split1, split2) from explicit bases or a q-boost spec."""
    if "qboost" in cfg:
        qb = cfg["qboost"]
        ms, s1, s2, _ = dp.qboost(qb["p"], qb["q"], qb["rapidities"])
        return ms, s1, s2
    ms = _metric_from(cfg)
    if "basis1" not in cfg or "basis2" not in cfg:
        raise InputError("basis1 and basis2 are required (n x k, columns span V)")
    return ms, dp.make_splitting(ms, np.array(cfg["basis1"], float)), \
        dp.make_splitting(ms, np.array(cfg["basis2"], float))


def _grid_from(cfg: dict, n: int) -> fa.GridSpec | None:
    gr = cfg.get("grid")
    if gr is None:
        return None
    axes = gr["axes"]
    base = gr.get("base_point", [0.0] * n)
    return fa.GridSpec(bounds=[(a["min"], a["max"]) for a in axes],
                       resolution=[a["resolution"] for a in axes],
                       axes=[a["axis"] for a in axes], base_point=base)


def _field_from(spec: dict):
    kind = spec["type"]
    if kind == "constant":
        v = np.array(spec["vector"], dtype=float)
        return lambda x: v
    if kind == "boost":
        return fa.boost_field(spec.get("coordinate", 0))
    return fa.SampledVectorField(spec["points"], spec["values"])


def _parse_axis(text: str) -> tuple[float, float, int]:
    try:
        lo, hi, n = text.split(":")
        return float(lo), float(hi), int(n)
    except ValueError as exc:
        raise InputError(f"axis range must look like min:max:count, got {text!r}") from exc


# --- commands ---------------------------------------------------------------

def cmd_rep(cfg: dict, report: Report):
    sig_cfg = cfg.get("signature")
    if sig_cfg is None:
        raise InputError("signature p, q required")
    sig = cr.Signature(sig_cfg["p"], sig_cfg["q"])
    rep = cr.build_gamma_rep(sig)
    H = cr.build_spinor_metric(rep)
    tol = report.tol["clifford"]
    herm, inter = cr.spinor_metric_residual(rep, H.H)
    report.results.update({
        "p": sig.p, "q": sig.q, "dim_spinor": rep.dim_spinor, "metric_signs": list(rep.metric_signs),
        "spinor_metric_candidate": H.candidate, "spinor_metric_phase": H.r_phase,
        "gammas": [cmatrix(g) for g in rep.gammas], "H": cmatrix(H.H),
    })
    report.check("anticommutator", cr.clifford_residual(rep), tol)
    report.check("gamma_hermiticity", cr.hermiticity_residual(rep), tol)
    report.check("H_hermitian", herm, tol)
    report.check("H_intertwines", inter, tol)


def _dsf_results(ms, s1, s2, report: Report):
    r12 = dp.dsf(ms, s1, s2)
    r21 = dp.dsf(ms, s2, s1)
    report.results.update({
        "dsf": r12.dsf, "rapidity": r12.rapidity, "norm_lambda_g2": r12.norm_lambda,
        "spectrum_L": r12.polar.spectrum_L.tolist(), "polar_residuals": r12.polar.residuals,
    })
    report.check("polar_residual_max", max(r12.polar.residuals.values()), report.tol["polar"])
    report.check("dsf_symmetry", abs(r12.dsf - r21.dsf), report.tol["dsf_symmetry"])
    report.check("norm_lambda_equals_rL", abs(r12.norm_lambda - r12.dsf), report.tol["dsf_symmetry"] * max(1, r12.dsf))
    m = min(ms.inertia)
    big = int(np.sum(r12.polar.spectrum_L > 1 + 1e-9))
    report.check("eigs_above_one_le_min_pq", big, m, big <= m)
    if m == 1:
        w = s1.basis_perp[:, 0] if ms.inertia[0] == 1 else s1.basis_V[:, 0]
        u = s2.basis_perp[:, 0] if ms.inertia[0] == 1 else s2.basis_V[:, 0]
        gab = abs(ms.inner(w, u))
        closed = dp.dsf_lorentzian(gab)
        report.results["lorentzian_closed_form"] = closed
        report.check("lorentzian_closed_form", abs(closed - r12.dsf), report.tol["dsf_symmetry"] * max(1, r12.dsf))
    return r12


def cmd_dsf(cfg: dict, report: Report):
    ms, s1, s2 = _pair_from(cfg)
    _dsf_results(ms, s1, s2, report)


def cmd_liftnorm(cfg: dict, report: Report):
    ms, s1, s2 = _pair_from(cfg)
    if not np.allclose(ms.g, np.diag(np.diag(ms.g))) or not np.allclose(np.abs(np.diag(ms.g)), 1):
        raise InputError("liftnorm needs a diagonal +-1 metric (orthonormal frame)")
    r = _dsf_results(ms, s1, s2, report)
    signs = [int(v) for v in np.diag(ms.g)]
    rep = cr.build_gamma_rep(ms.sig, signs)
    space = kc.KreinProductSpace.from_rep(rep)
    lift = sl.lift(rep, r.polar)
    fs2 = kc.fundamental_symmetry(space, s2)
    lr = sl.lift_norm(space, fs2, lift, r.norm_lambda, slack=report.tol["bound_slack"])
    report.results["lift"] = lr.as_dict()
    report.results["lift"]["ad_residual"] = lift.ad_residual
    report.results["fundamental_symmetry"] = {"part": fs2.part, "r_phase": fs2.r_phase}
    report.check("lift_norm_lower_bound", lr.lower_bound - lr.lift_norm, report.tol["bound_slack"], lr.lower_ok)
    report.check("lift_norm_upper_bound", lr.lift_norm - lr.upper_bound, report.tol["bound_slack"], lr.upper_ok)
    report.check("ad_radius_eq_lift_radius_sq", lr.ad_identity_defect, report.tol["spectral"])
    report.check("product_formula", lr.product_formula_defect, report.tol["spectral"])
    report.check("normality", lr.normality_defect, report.tol["bound_slack"])
    if min(ms.inertia) == 1:
        report.check("lorentzian_equality", abs(lr.lift_norm - lr.base_norm ** 0.5), report.tol["lorentz_equality"])


PRESET_ARGS = {
    "minkowski-rest-vs-boostfield": set(),
    "minkowski-shear-vs-e0": set(),
    "covariantly-constant-pair": {"rapidity"},
    "schwarzschild-radial-in-out": {"r_min", "r_max", "r_s", "energies", "resolution"},
}


def _sweep_checks(rep_obj: fa.SweepReport, report: Report, expected: str | None):
    report.results["sweep"] = rep_obj.to_dict()
    if rep_obj.consistency_defect is not None:
        report.check("splitting_path_vs_closed_form", rep_obj.consistency_defect, report.tol["consistency"])
    if expected is not None:
        report.check(f"verdict_is_{expected}", 0.0, 0.0, rep_obj.verdict == expected)


EXPECTED_VERDICT = {
    "minkowski-rest-vs-boostfield": fa.GROWTH,
    "minkowski-shear-vs-e0": fa.GROWTH,
    "covariantly-constant-pair": fa.BOUNDED,
    "schwarzschild-radial-in-out": fa.GROWTH,
}


def cmd_sweep(cfg: dict, report: Report):
    workers = cfg.get("workers", 1)
    preset = cfg.get("preset")
    if preset in ("counterexample-bump", "divergent-field"):
        return cmd_counterexample(cfg, report, only=preset)
    if preset is not None:
        if preset not in fa.SWEEP_PRESETS:
            raise InputError(f"unknown preset {preset!r}")
        kwargs = dict(cfg.get("preset_args", {}))
        unknown = set(kwargs) - PRESET_ARGS[preset]
        if unknown:
            raise InputError(f"unknown preset arguments {sorted(unknown)}")
        grid = _grid_from(cfg, 4)
        if grid is not None:
            kwargs["grid"] = grid
        out = fa.SWEEP_PRESETS[preset](workers=workers, **kwargs)
        _sweep_checks(out, report, EXPECTED_VERDICT[preset])
    else:
        ms = _metric_from(cfg)
        if "fields" not in cfg:
            raise InputError("custom sweeps need 'fields' (two vector field specs)")
        grid = _grid_from(cfg, ms.n)
        if grid is None:
            raise InputError("custom sweeps need a grid")
        mf = fa.MetricField.constant(ms.g, "custom")
        v1, v2 = (_field_from(f) for f in cfg["fields"])
        out = fa.doppler_class_check(mf, v1, v2, grid, workers=workers,
                                     labels={"metric": "custom", "field_1": cfg["fields"][0]["type"],
                                             "field_2": cfg["fields"][1]["type"]})
        _sweep_checks(out, report, None)
    if cfg.get("csv"):
        with open(cfg["csv"], "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow([f"x{i}" for i in range(out.points.shape[1])] + ["dsf", "rapidity"])
            for p, d in zip(out.points, out.dsf):
                w.writerow([repr(float(v)) for v in p] + [repr(float(d)), repr(float(np.log(d)))])


def cmd_counterexample(cfg: dict, report: Report, only: str | None = None):
    tol = report.tol
    if only in (None, "counterexample-bump"):
        width = cfg.get("width", 0.01)
        rows = []
        for y0 in cfg.get("y0", [0.0, 1.0, 2.0, 3.0]):
            eta_sq, n_sq = fa.counterexample_norms(y0, width)
            rows.append({"y0": y0, "eta_norm_sq": eta_sq, "n_norm_sq": n_sq, "cosh_y0": float(np.cosh(y0))})
            report.check(f"eta_norm_sq_y0={y0}", abs(eta_sq - 1.0), tol["eta_norm"])
            report.check(f"n_norm_sq_vs_cosh_y0={y0}", abs(n_sq / np.cosh(y0) - 1.0), tol["n_norm_rel"])
        report.results["bump"] = {"width": width, "rows": rows}
    if only in (None, "divergent-field"):
        demo = fa.divergent_field_demo(cfg.get("x_max", 20.0))
        report.results["divergent_field"] = demo
        if "n" in demo["fits"]:
            report.check("n_norm_growth_slope", abs(demo["fits"]["n"]["slope"] - 1.0), tol["slope"])
        X = np.array(demo["X"])
        closed_eta = 2 * (1 - np.exp(-X))
        closed_n = X + 0.5 * (1 - np.exp(-2 * X))
        report.check("eta_partial_vs_closed_form", np.max(np.abs(demo["eta_norm_sq"] - closed_eta)), 1e-9)
        report.check("n_partial_vs_closed_form", np.max(np.abs(demo["n_norm_sq"] - closed_n)), 1e-9)


def cmd_selfcheck(cfg: dict, report: Report):
    """Randomized property suite over the random splitting generator."""
    rng = np.random.default_rng(cfg.get("seed", DEFAULT_SEED))
    draws = cfg.get("draws", 50)
    tol = report.tol
    sigs = [(1, 1), (1, 3), (2, 2), (2, 4), (3, 3)]
    summary = {}
    for p, q in sigs:
        ms = dp.MetricSpace.diagonal([1] * p + [-1] * q)
        rep = cr.build_gamma_rep(cr.Signature(p, q))
        space = kc.KreinProductSpace.from_rep(rep)
        worst = {"symmetry": 0.0, "stabilizer": 0.0, "lower": 0.0, "upper": 0.0, "ad": 0.0, "max_dsf": 1.0}
        for _ in range(draws):
            a, b = dp.random_splitting(ms, rng), dp.random_splitting(ms, rng)
            r = dp.dsf(ms, a, b)
            worst["symmetry"] = max(worst["symmetry"], abs(r.dsf - dp.dsf(ms, b, a).dsf))
            O = dp.random_stabilizer(b, rng)
            worst["stabilizer"] = max(worst["stabilizer"],
                                      abs(dp.operator_norm_gs(b, O @ r.polar.Lam) - r.norm_lambda))
            lr = sl.lift_norm(space, kc.fundamental_symmetry(space, b), sl.lift(rep, r.polar), r.norm_lambda)
            worst["lower"] = max(worst["lower"], lr.lower_bound - lr.lift_norm)
            worst["upper"] = max(worst["upper"], lr.lift_norm - lr.upper_bound)
            worst["ad"] = max(worst["ad"], lr.ad_identity_defect)
            worst["max_dsf"] = max(worst["max_dsf"], r.dsf)
        summary[f"({p},{q})"] = worst
        report.check(f"dsf_symmetry_{p}_{q}", worst["symmetry"], tol["dsf_symmetry"])
        report.check(f"stabilizer_invariance_{p}_{q}", worst["stabilizer"], tol["dsf_symmetry"])
        report.check(f"lift_norm_lower_bound_{p}_{q}", worst["lower"], tol["bound_slack"])
        report.check(f"lift_norm_upper_bound_{p}_{q}", worst["upper"], tol["bound_slack"])
        report.check(f"ad_identity_{p}_{q}", worst["ad"], tol["spectral"])
    report.results.update({"seed": cfg.get("seed", DEFAULT_SEED), "draws": draws, "worst": summary})


COMMANDS = {
    "rep": cmd_rep, "dsf": cmd_dsf, "liftnorm": cmd_liftnorm, "sweep": cmd_sweep,
    "counterexample": cmd_counterexample, "selfcheck": cmd_selfcheck,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dopplerspin", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON run configuration")
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--seed", type=int, help=f"random seed (default {DEFAULT_SEED})")
    common.add_argument("--timing", action="store_true", help="include wall time in the report")
    common.add_argument("-v", "--verbose", action="store_true")

    p = sub.add_parser("rep", parents=[common], help="gamma matrices and spinor metric")
    p.add_argument("--p", type=int)
    p.add_argument("--q", type=int)

    for name in ("dsf", "liftnorm"):
        p = sub.add_parser(name, parents=[common], help=f"{name} for two splittings")
        p.add_argument("--p", type=int, help="q-boost: positive count")
        p.add_argument("--q", type=int, help="q-boost: negative count")
        p.add_argument("--rapidities", help="q-boost rapidities, comma separated")

    p = sub.add_parser("sweep", parents=[common], help="field sweep over a preset or custom fields")
    p.add_argument("--preset")
    for a in range(4):
        p.add_argument(f"--x{a}", help="grid axis min:max:count")
    p.add_argument("--rmin", type=float, help="Schwarzschild inner radius in units of r_s")
    p.add_argument("--rmax", type=float)
    p.add_argument("--resolution", type=int)
    p.add_argument("--workers", type=int)
    p.add_argument("--csv", help="write (coordinates, dsf, rapidity) rows")

    p = sub.add_parser("counterexample", parents=[common], help="bump and divergent-field integrals")
    p.add_argument("--y0", help="comma separated bump centres")
    p.add_argument("--width", type=float)
    p.add_argument("--xmax", type=float)

    p = sub.add_parser("selfcheck", parents=[common], help="randomized property suite")
    p.add_argument("--draws", type=int)
    return parser


def config_from_args(args: argparse.Namespace) -> dict:
    cfg: dict = {}
    if args.config:
        try:
            with open(args.config) as fh:
                cfg = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError(f"cannot read config: {exc}") from exc
    cmd = args.command
    if cfg.get("command", cmd) != cmd:
        raise InputError(f"config is for command {cfg['command']!r}, not {cmd!r}")
    cfg["command"] = cmd
    if args.seed is not None:
        cfg["seed"] = args.seed
    if cmd == "rep" and (args.p is not None or args.q is not None):
        cfg["signature"] = {"p": args.p, "q": args.q}
    if cmd in ("dsf", "liftnorm") and args.rapidities is not None:
        cfg["qboost"] = {"p": args.p, "q": args.q,
                         "rapidities": [float(v) for v in args.rapidities.split(",")]}
    if cmd == "sweep":
        if args.preset:
            cfg["preset"] = args.preset
        axes = [(a, getattr(args, f"x{a}")) for a in range(4) if getattr(args, f"x{a}")]
        if axes:
            grid = cfg.setdefault("grid", {})
            grid["axes"] = []
            for a, text in axes:
                lo, hi, n = _parse_axis(text)
                grid["axes"].append({"axis": a, "min": lo, "max": hi, "resolution": n})
            if cfg.get("preset") == "schwarzschild-radial-in-out":
                grid.setdefault("base_point", [0.0, 0.0, float(np.pi / 2), 0.0])
        pa = cfg.setdefault("preset_args", {}) if cfg.get("preset") else {}
        for flag, key in (("rmin", "r_min"), ("rmax", "r_max"), ("resolution", "resolution")):
            if getattr(args, flag) is not None:
                pa[key] = getattr(args, flag)
        if not pa and "preset_args" in cfg and not cfg["preset_args"]:
            del cfg["preset_args"]
        if args.workers:
            cfg["workers"] = args.workers
        if args.csv:
            cfg["csv"] = args.csv
    if cmd == "counterexample":
        if args.y0:
            cfg["y0"] = [float(v) for v in args.y0.split(",")]
        if args.width is not None:
            cfg["width"] = args.width
        if args.xmax is not None:
            cfg["x_max"] = args.xmax
    if cmd == "selfcheck" and args.draws is not None:
        cfg["draws"] = args.draws
    if args.out:
        cfg["output"] = args.out
    try:
        jsonschema.validate(cfg, CONFIG_SCHEMA)
    except jsonschema.ValidationError as exc:
        raise InputError(f"invalid config: {exc.message}") from exc
    return cfg


def run(cfg: dict, timing: bool = False) -> tuple[dict, int]:
    """Execute a validated config; returns (report dict, exit code)."""
    tol = dict(DEFAULT_TOL)
    tol.update(cfg.get("tolerances", {}))
    echo = {k: v for k, v in cfg.items() if k not in ("output",)}
    report = Report(echo, tol)
    t0 = time.perf_counter()
    try:
        COMMANDS[cfg["command"]](cfg, report)
    except (ArithmeticError, kc.KreinError) as exc:
        return {"schema_version": SCHEMA_VERSION, "command": echo, "error": str(exc)}, EXIT_INTERNAL
    except ValueError as exc:
        return {"schema_version": SCHEMA_VERSION, "command": echo, "error": str(exc)}, EXIT_INPUT
    wall = time.perf_counter() - t0
    log.info("%s finished in %.3f s", cfg["command"], wall)
    return report.to_dict(wall if timing else None), EXIT_OK if report.ok else EXIT_CHECK


def _join_axis_values(argv: list[str]) -> list[str]:
    """Allow ``--x3 -5:5:201``; argparse would read the range as an option."""
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in ("--x0", "--x1", "--x2", "--x3") and i + 1 < len(argv):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(_join_axis_values(sys.argv[1:] if argv is None else list(argv)))
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = config_from_args(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    out, code = run(cfg, timing=args.timing)
    text = json.dumps(out, indent=2) + "\n"
    if cfg.get("output"):
        with open(cfg["output"], "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if "error" in out:
        print(f"error: {out['error']}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
