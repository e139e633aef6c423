"""Batch verification: sweeps, oracle comparisons, slope fits, property scans.

Everything here is about checking the asymptotic formulas against the direct
quadrature oracle and against each other.  Output is deterministic: grids are
fixed by the config, randomness is seeded, rows keep submission order even
when computed on a worker pool, and CSV serialization zeroes the wall-clock
column by default so identical configs give identical bytes.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import asymptotics, phase as phase_mod, substitution
from .errors import DegenerateData, EndpointUniformError
from .fresnel import fresnel_tail, fresnel_tail_asymptotic
from .params import (
    ProblemParams,
    admissible_lambda_range,
    choose_split,
    critical_lambda,
    derive,
    from_omega,
    select_phi,
)
from .quadrature import jb1_oracle, jb2_oracle, jb_oracle

CSV_HEADER = (
    "t,delta,sigma,lambda,Lambda,omega,method,m,a,approx_re,approx_im,"
    "oracle_re,oracle_im,abs_err,rel_err,budget,runtime_ms,error"
)

SUITES = (
    "ImFNonneg",
    "PhaseLowerBound",
    "SplitConsistency",
    "FresnelAsym",
    "CovDecomposition",
    "ExponentIdentity",
)

DEFAULT_T_GRID = (1e4, 1e5, 1e6, 1e7, 1e8)


def _worker_count() -> int:
    env = os.environ.get("ENDPOINT_UNIFORM_THREADS")
    if env:
        try:
            n = int(env)
            if n >= 1:
                return n
        except ValueError:
            pass
    return min(8, os.cpu_count() or 1)


@dataclass
class SweepConfig:
    t_grid: list
    delta: float = 0.5
    sigma: float = 0.5
    # ("critical", None) | ("lambda", [values]) | ("omega", [values])
    lambda_spec: tuple = ("critical", None)
    methods: list = field(default_factory=lambda: ["leading"])
    tol: float = 1e-10
    seed: int = 0
    m_order: int = 4

    def lambda_values(self, t: float) -> list:
        kind, values = self.lambda_spec
        if kind == "critical":
            return [critical_lambda(t, self.delta)]
        if kind == "lambda":
            return list(values)
        if kind == "omega":
            return [
                from_omega(t, self.delta, self.sigma, w).lam for w in values
            ]
        raise ValueError(f"unknown lambda_spec kind {kind!r}")


def sweep_config_from_dict(d: dict) -> SweepConfig:
    spec = d.get("lambda_spec", {"kind": "critical"})
    kind = spec.get("kind", "critical")
    values = spec.get("values")
    return SweepConfig(
        t_grid=list(d["t_grid"]),
        delta=float(d.get("delta", 0.5)),
        sigma=float(d.get("sigma", 0.5)),
        lambda_spec=(kind, values),
        methods=list(d.get("methods", ["leading"])),
        tol=float(d.get("tol", 1e-10)),
        seed=int(d.get("seed", 0)),
        m_order=int(d.get("m_order", 4)),
    )


@dataclass
class ComparisonRow:
    t: float
    delta: float
    sigma: float
    lam: float
    Lambda: float
    omega: float
    method: str
    m: object = ""
    a: object = ""
    approx: complex = complex("nan")
    oracle: complex = complex("nan")
    abs_err: float = float("nan")
    rel_err: float = float("nan")
    budget: float = float("nan")
    runtime_ms: float = 0.0
    error: str = ""


def _fmt(x) -> str:
    if isinstance(x, str):
        return x
    if isinstance(x, float) and math.isnan(x):
        return "nan"
    return format(x, ".17g")


def _expected_method_error(method: str, approx: complex, budget: float,
                           p: ProblemParams) -> float:
    """Scale used only to tighten the oracle tolerance, not reported."""
    mag = abs(approx)
    if not math.isfinite(mag) or mag == 0.0:
        mag = p.t**-0.5
    guess = mag * p.t ** (-p.delta / 2.0)
    if math.isfinite(budget) and budget > 0.0:
        guess = min(guess, budget)
    return guess


def _eval_method(method: str, p: ProblemParams, cfg: SweepConfig):
    """Returns (value, budget_total, m, a) for one method at one point."""
    if method == "leading":
        ap = asymptotics.leading_order(p)
        return ap.value, float("nan"), "", ""
    if method == "large-omega":
        ap = asymptotics.leading_order_large_omega(p)
        return ap.value, sum(v for _k, v in ap.error_budget), "", ""
    if method == "all-orders":
        ap = asymptotics.all_orders(p, cfg.m_order)
        dd = choose_split(derive(p), cfg.m_order)
        return ap.value, sum(v for _k, v in ap.error_budget), cfg.m_order, dd.a
    if method == "corollary":
        ap = asymptotics.corollary_leading(p)
        a = p.t ** (-7.0 * p.delta / 16.0)
        return ap.value, sum(v for _k, v in ap.error_budget), "", a
    raise ValueError(f"unknown method {method!r}")


def _run_point(args):
    cfg, t, lam, method = args
    start = time.perf_counter()
    row = ComparisonRow(
        t=t, delta=cfg.delta, sigma=cfg.sigma, lam=lam,
        Lambda=float("nan"), omega=float("nan"), method=method,
    )
    try:
        p = ProblemParams(t=t, delta=cfg.delta, sigma=cfg.sigma, lam=lam)
        d = derive(p)
        row.Lambda = d.Lambda
        row.omega = d.omega
        if method == "oracle":
            res = jb_oracle(p, tol=cfg.tol)
            row.approx = res.value
            row.oracle = res.value
            row.abs_err = 0.0
            row.rel_err = 0.0
            row.budget = res.abs_error_estimate + res.truncation_bound
        else:
            value, budget, m, a = _eval_method(method, p, cfg)
            row.approx = value
            row.budget = budget
            row.m = m
            row.a = a
            expected = _expected_method_error(method, value, budget, p)
            oracle_tol = max(1e-13, min(cfg.tol, 1e-3 * expected))
            res = jb_oracle(p, tol=oracle_tol)
            row.oracle = res.value
            row.abs_err = abs(value - res.value)
            if abs(res.value) > 0.0:
                row.rel_err = row.abs_err / abs(res.value)
    except EndpointUniformError as exc:
        row.error = f"{type(exc).__name__}: {exc}"
    row.runtime_ms = 1000.0 * (time.perf_counter() - start)
    return row


def run_sweep(cfg: SweepConfig) -> list:
    """Cross product of (t grid) x (lambda spec) x (methods), one row each.

    Per-row failures land in the error column; the sweep itself never aborts.
    """
    tasks = []
    for t in cfg.t_grid:
        for lam in cfg.lambda_values(t):
            for method in cfg.methods:
                tasks.append((cfg, t, lam, method))
    if not tasks:
        return []
    workers = _worker_count()
    if workers == 1 or len(tasks) == 1:
        return [_run_point(task) for task in tasks]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run_point, tasks))


def rows_to_csv(rows, deterministic: bool = True) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER.split(","))
    for r in rows:
        writer.writerow(
            [
                _fmt(r.t), _fmt(r.delta), _fmt(r.sigma), _fmt(r.lam),
                _fmt(r.Lambda), _fmt(r.omega), r.method, _fmt(r.m), _fmt(r.a),
                _fmt(r.approx.real), _fmt(r.approx.imag),
                _fmt(r.oracle.real), _fmt(r.oracle.imag),
                _fmt(r.abs_err), _fmt(r.rel_err), _fmt(r.budget),
                _fmt(0.0 if deterministic else r.runtime_ms),
                r.error,
            ]
        )
    return buf.getvalue()


def write_csv(rows, path, deterministic: bool = True):
    with open(path, "w", newline="") as fh:
        fh.write(rows_to_csv(rows, deterministic=deterministic))


def fit_error_slope(rows, x: str = "t"):
    """Least-squares slope of log(abs_err) against log(x in {t, omega, a})."""
    xs, ys = [], []
    for r in rows:
        if r.error:
            continue
        if x == "t":
            xv = r.t
        elif x == "omega":
            xv = r.omega
        elif x == "a":
            xv = r.a if isinstance(r.a, float) else float("nan")
        else:
            raise ValueError(f"unknown fit axis {x!r}")
        if (
            isinstance(xv, float)
            and math.isfinite(xv)
            and xv > 0.0
            and math.isfinite(r.abs_err)
            and r.abs_err > 0.0
        ):
            xs.append(math.log(xv))
            ys.append(math.log(r.abs_err))
    if len(xs) < 3:
        raise DegenerateData(
            f"need >= 3 usable rows for a slope fit, have {len(xs)}"
        )
    xs = np.array(xs)
    ys = np.array(ys)
    slope, intercept = np.polyfit(xs, ys, 1)
    resid = ys - (slope * xs + intercept)
    ss_res = float(np.sum(resid**2))
    ss_tot = float(np.sum((ys - ys.mean()) ** 2))
    r2 = 1.0 if ss_tot == 0.0 else 1.0 - ss_res / ss_tot
    return float(slope), float(r2)


# ---------------------------------------------------------------------------
# Property scans
# ---------------------------------------------------------------------------


def _contour_samples(cfg: SweepConfig, n_lam=17, n_k=17, n_r=12):
    """Sampled (t, lambda, k, R, phi) tuples on the ray-piece contour."""
    rng = np.random.default_rng(cfg.seed)
    out = []
    for t in cfg.t_grid[:3] if len(cfg.t_grid) > 3 else cfg.t_grid:
        p_end = t ** (cfg.delta - 1.0)
        lo, hi = admissible_lambda_range(t, cfg.delta)
        lams = np.exp(np.linspace(math.log(lo), math.log(hi), n_lam))
        ks = p_end * np.linspace(0.02, 0.98, n_k)
        for lam in lams:
            phi = select_phi(float(lam))
            for k in ks:
                r = np.exp(
                    np.linspace(math.log(1e-6), math.log(50.0), n_r)
                    + rng.uniform(-0.05, 0.05, n_r)
                )
                out.append((t, float(lam), float(k), r, phi))
    return out


def _scan_im_f(cfg: SweepConfig):
    worst = math.inf
    worst_point = None
    count = 0
    for t, lam, k, r, phi in _contour_samples(cfg):
        z = (1.0 - k) + r * np.exp(1j * phi)
        imf = np.asarray(phase_mod.big_f(z, lam)).imag
        count += len(r)
        i = int(np.argmin(imf))
        if imf[i] < worst:
            worst = float(imf[i])
            worst_point = {"t": t, "lambda": lam, "k": k, "R": float(r[i])}
    return worst, worst_point, count


def _scan_phase_bound(cfg: SweepConfig):
    worst = math.inf
    worst_point = None
    count = 0
    for t, lam, k, r, phi in _contour_samples(cfg):
        z = (1.0 - k) + r * np.exp(1j * phi)
        mod = np.abs(np.asarray(phase_mod.d_f(z, lam)))
        bound = min(math.pi / 2.0 - phi, math.log(t ** (cfg.delta - 1.0) / k))
        margin = mod - bound
        count += len(r)
        i = int(np.argmin(margin))
        if margin[i] < worst:
            worst = float(margin[i])
            worst_point = {"t": t, "lambda": lam, "k": k, "R": float(r[i])}
    return worst, worst_point, count


def _scan_split_consistency(cfg: SweepConfig):
    """|segment piece + ray piece - whole| against 3x the quadrature estimates."""
    worst = math.inf
    worst_point = None
    count = 0
    for t in cfg.t_grid:
        for Lam in (0.0, 1.0):
            lam = critical_lambda(t, cfg.delta) * (1.0 + Lam)
            p = ProblemParams(t=t, delta=cfg.delta, sigma=0.5, lam=lam)
            a = t ** (-7.0 * cfg.delta / 16.0)
            k = t ** (cfg.delta - 1.0) * (1.0 - a)
            whole = jb_oracle(p, tol=cfg.tol)
            part1 = jb1_oracle(p, k, tol=cfg.tol)
            part2 = jb2_oracle(p, k, tol=cfg.tol)
            gap = abs(part1.value + part2.value - whole.value)
            est = (
                whole.abs_error_estimate
                + whole.truncation_bound
                + part1.abs_error_estimate
                + part2.abs_error_estimate
                + part2.truncation_bound
            )
            margin = 3.0 * est - gap
            count += 1
            if margin < worst:
                worst = margin
                worst_point = {"t": t, "Lambda": Lam, "gap": gap, "est": est}
    return worst, worst_point, count


def _scan_fresnel_asym(cfg: SweepConfig):
    ws = np.array([5.0, 10.0, 20.0, 40.0])
    errs = np.array(
        [abs(fresnel_tail(w) - fresnel_tail_asymptotic(w)) for w in ws]
    )
    slope, _r2 = np.polyfit(np.log(ws), np.log(errs), 1)
    margin = 0.15 - abs(slope + 3.0)
    point = {"slope": float(slope), "targets": list(ws)}
    return float(margin), point, len(ws)


def _scan_cov_decomposition(cfg: SweepConfig):
    worst = math.inf
    worst_point = None
    count = 0
    for Lam in (0.0, 1.0):
        res = substitution.decomposition_residual(200.0, cfg.delta, Lam, tol=1e-7)
        margin = 1e-6 - res
        count += 1
        if margin < worst:
            worst = margin
            worst_point = {"t": 200.0, "Lambda": Lam, "residual": res}
    return worst, worst_point, count


def _scan_exponent_identity(cfg: SweepConfig):
    worst = math.inf
    worst_point = None
    count = 0
    for t in cfg.t_grid:
        for Lam in (0.0, 0.5, 1.0, 5.0):
            lam = critical_lambda(t, cfg.delta) * (1.0 + Lam)
            p = ProblemParams(t=t, delta=cfg.delta, sigma=cfg.sigma, lam=lam)
            res1 = asymptotics.exponent_identity_residual(p)
            m1 = 1e-9 * (1.0 + t) - res1
            a = t ** (-7.0 * cfg.delta / 16.0)
            res2 = asymptotics.phase_difference_residual(p, a)
            m2 = 10.0 * a**3 * t**cfg.delta - res2
            margin = min(m1, m2)
            count += 1
            if margin < worst:
                worst = margin
                worst_point = {
                    "t": t, "Lambda": Lam,
                    "exponent_residual": res1, "split_residual": res2,
                }
    return worst, worst_point, count


_SCANS = {
    "ImFNonneg": (_scan_im_f, -1e-12),
    "PhaseLowerBound": (_scan_phase_bound, 0.0),
    "SplitConsistency": (_scan_split_consistency, 0.0),
    "FresnelAsym": (_scan_fresnel_asym, 0.0),
    "CovDecomposition": (_scan_cov_decomposition, 0.0),
    "ExponentIdentity": (_scan_exponent_identity, 0.0),
}


def property_scan(suite: str, cfg: SweepConfig | None = None) -> dict:
    """Run one invariant scan; failures are data, not exceptions."""
    if suite not in _SCANS:
        raise ValueError(f"unknown suite {suite!r}; choose from {SUITES}")
    if cfg is None:
        cfg = SweepConfig(t_grid=list(DEFAULT_T_GRID))
    fn, threshold = _SCANS[suite]
    worst, worst_point, count = fn(cfg)
    return {
        "suite": suite,
        "grid": {"points": count, "t_grid": list(cfg.t_grid), "delta": cfg.delta,
                 "seed": cfg.seed},
        "pass": bool(worst >= threshold),
        "worst_margin": worst,
        "worst_point": worst_point,
    }


def run_all_scans(cfg: SweepConfig | None = None) -> dict:
    reports = [property_scan(s, cfg) for s in SUITES]
    return {"reports": reports, "pass": all(r["pass"] for r in reports)}


def report_to_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True, default=float)
