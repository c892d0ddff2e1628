"""Named check suites: each one turns a module's identities into CheckReports.

Every check follows the same discipline: compute a residual by two genuinely
different routes (closed form vs numeric, package rule vs independent rule,
graded vs uniform), normalize it, and record it against the configured
tolerance.  Seeds fix all randomness, so one configuration yields one byte
stream of results.
"""

from __future__ import annotations

import math
import time

import numpy as np

from .calculus import (FunctionHandle, WeightedQuadrature, conf_derivative,
                       conf_derivative_iterated, conf_derivative_limit,
                       conf_integral, pow_arr)
from .clock import Clock, Order, pow_pos
from .config import RunConfig
from .drift_diffusion import (DriftDiffusionParams, EigenfunctionFamily,
                              GridPair, build_classical_operator,
                              conjugacy_residual, derivative_identity_residuals,
                              discrete_unitary, empirical_orders,
                              mild_solution_residuals, parameter_transfer)
from .dynamics import (LambdaRectangle, clock_invariance_check,
                       dsw_condition_check, dsw_hypotheses_probe,
                       periodic_orbit_check, x0_probe, xinf_probe)
from .reports import CheckReport
from .semigroup import (ClassicalSemigroup, ConformableSemigroup,
                        GeneratorMatrix, classical_generator_quotient,
                        contraction_check, delta_law_residual,
                        dirichlet_second_difference, dissipativity_margin,
                        evolve_classical, generator_delta_quotient,
                        resolvent_bound_check, solve_conformable_ode,
                        strong_continuity_fit, taylor_matrix_exp)
from .spaces import (SpaceSpec, SpatialUnitary, TimeIsometry, WeightSpec,
                     inner_product_2delta, lp_delta_norm, sobolev_norm,
                     spatial_unitary_apply, time_isometry_apply)
from .transport import (TransportModel, apply_S_alpha,
                        transport_conjugacy_residual, transport_pde_residual,
                        weight_criterion_probe)

__all__ = ["run_suite", "run_sweep", "SUITE_ORDER", "make_weight"]

SUITE_ORDER = ("calculus", "spaces", "clock", "semigroup", "drift-diffusion",
               "transport", "dynamics")


def _report(check_id: str, params: dict, residual: float, tolerance: float,
            start: float, seed: int) -> CheckReport:
    return CheckReport.from_residual(
        check_id=check_id, params=params, residual=residual,
        tolerance=tolerance, wall_time=time.perf_counter() - start, seed=seed)


# ---------------------------------------------------------------- fixtures

def _nilpotent2() -> GeneratorMatrix:
    return GeneratorMatrix(entries=np.array([[0.0, 1.0], [0.0, 0.0]]),
                           ip_weights=np.ones(2), label="nilpotent2")


def _diag_decay() -> GeneratorMatrix:
    return GeneratorMatrix(entries=np.diag([-1.0, -2.0]),
                           ip_weights=np.ones(2), label="diag_decay")


def _diag_complex() -> GeneratorMatrix:
    return GeneratorMatrix(entries=np.diag([-0.3 + 2.0j, -1.0 + 0.0j]),
                           ip_weights=np.ones(2), label="diag_complex")


def _cascade3() -> GeneratorMatrix:
    entries = np.array([[-1.0, 2.0, 0.0], [0.0, -0.5, 1.0], [0.0, 0.0, -2.0]])
    return GeneratorMatrix(entries=entries, ip_weights=np.ones(3),
                           label="cascade3")


def _nonnormal4() -> GeneratorMatrix:
    entries = np.array([[-1.0, 2.0, 0.0, 1.0],
                        [0.0, -0.5, 3.0, 0.0],
                        [0.0, 0.0, -2.0, 1.0],
                        [0.0, 0.0, 0.0, 0.3]])
    return GeneratorMatrix(entries=entries, ip_weights=np.ones(4),
                           label="nonnormal4")


def make_weight(weight_id: str, alpha: Order) -> WeightSpec:
    """Named weight profiles usable in the transport model."""
    if weight_id == "unit":
        rho = FunctionHandle(evaluator=lambda t: np.ones_like(
            np.asarray(t, dtype=float)))
    elif weight_id == "exp_decay":
        rho = FunctionHandle(evaluator=lambda t: np.exp(-np.asarray(t, dtype=float)))
    elif weight_id == "gaussian":
        rho = FunctionHandle(evaluator=lambda t: np.exp(
            -np.asarray(t, dtype=float) ** 2))
    else:
        raise ValueError(f"unknown weight id {weight_id!r}")
    return WeightSpec(alpha=alpha, rho=rho, label=weight_id)


# ------------------------------------------------------------- clock suite

def suite_clock(cfg: RunConfig) -> list:
    reports = []
    t_grid = np.linspace(1e-6, 10.0, 400)
    for d in cfg.delta_list:
        start = time.perf_counter()
        clock = Clock(Order(d))
        worst = 0.0
        for t in t_grid:
            worst = max(worst, abs(clock.psi_inv(clock.psi(t)) - t) / (1.0 + t))
        for s in np.linspace(1e-6, clock.psi(10.0), 400):
            worst = max(worst, abs(clock.psi(clock.psi_inv(s)) - s) / (1.0 + s))
        reports.append(_report(
            f"clock.roundtrip[delta={d}]", {"delta": d},
            worst, cfg.tol("clock_roundtrip"), start, cfg.seed))

        start = time.perf_counter()
        vals = [clock.psi(t) for t in t_grid]
        min_gap = min(b - a for a, b in zip(vals, vals[1:]))
        zero_gap = abs(clock.psi(0.0))
        reports.append(_report(
            f"clock.monotone[delta={d}]",
            {"delta": d, "min_gap": min_gap},
            max(zero_gap, -min(min_gap, 0.0)), 0.0, start, cfg.seed))

        start = time.perf_counter()
        rng = np.random.default_rng([cfg.seed, 11, int(round(1000 * d))])
        worst = 0.0
        for t1, t2 in rng.uniform(0.05, 3.0, size=(200, 2)):
            merged = pow_pos(pow_pos(t1, d) + pow_pos(t2, d), 1.0 / d)
            lhs = clock.psi(merged)
            rhs = clock.psi(t1) + clock.psi(t2)
            worst = max(worst, abs(lhs - rhs) / (1.0 + abs(rhs)))
        reports.append(_report(
            f"clock.additivity[delta={d}]", {"delta": d, "pairs": 200},
            worst, cfg.tol("clock_additivity"), start, cfg.seed))

    start = time.perf_counter()
    unit = Clock(Order(1.0))
    worst = max(abs(unit.psi(t) - t) for t in t_grid)
    worst = max(worst, max(abs(unit.psi_inv(t) - t) for t in t_grid))
    reports.append(_report(
        "clock.linear_reduction[delta=1.0]", {"delta": 1.0},
        worst, cfg.tol("clock_roundtrip"), start, cfg.seed))
    return reports


# ---------------------------------------------------------- calculus suite

def _calc_corpus() -> list:
    return [
        ("sin", FunctionHandle(evaluator=np.sin, classical_derivative=np.cos,
                               second_derivative=lambda t: -np.sin(t))),
        ("exp_decay", FunctionHandle(
            evaluator=lambda t: np.exp(-np.asarray(t, dtype=float)),
            classical_derivative=lambda t: -np.exp(-np.asarray(t, dtype=float)),
            second_derivative=lambda t: np.exp(-np.asarray(t, dtype=float)))),
        ("rational", FunctionHandle(
            evaluator=lambda t: 1.0 / (1.0 + np.asarray(t, dtype=float) ** 2),
            classical_derivative=lambda t: -2.0 * np.asarray(t, dtype=float)
            / (1.0 + np.asarray(t, dtype=float) ** 2) ** 2)),
    ]


def _integral_profile(f: FunctionHandle, order: Order) -> FunctionHandle:
    """t -> integral of f over (0, t) against the stretch weight, as a
    handle that is cheap enough to difference."""
    def ev(t):
        arr = np.asarray(t, dtype=float)
        if arr.ndim == 0:
            quad = WeightedQuadrature.build(order, 0.0, float(arr),
                                            panels=8, points_per_panel=12)
            return complex(conf_integral(f, order, 0.0, float(arr), quad)).real
        return np.array([ev(float(v)) for v in arr.flat]).reshape(arr.shape)

    return FunctionHandle(evaluator=ev)


def suite_calculus(cfg: RunConfig) -> list:
    reports = []
    t_pts = np.linspace(0.2, 3.0, 20)

    for d in cfg.delta_list:
        order = Order(d)
        start = time.perf_counter()
        worst = 0.0
        for m in (1, 2, 3):
            f = FunctionHandle(
                evaluator=lambda t, m=m: np.asarray(t, dtype=float) ** m,
                classical_derivative=lambda t, m=m: m * np.asarray(
                    t, dtype=float) ** (m - 1))
            for t in t_pts:
                got = conf_derivative(f, order, float(t))
                want = m * pow_pos(float(t), m - d)
                worst = max(worst, abs(got - want) / max(1.0, abs(want)))
        reports.append(_report(
            f"calculus.power_rule[delta={d}]", {"delta": d, "degrees": [1, 2, 3]},
            worst, cfg.tol("power_rule"), start, cfg.seed))

        start = time.perf_counter()
        worst = 0.0
        for name, f in _calc_corpus():
            for t in (0.3, 0.7, 1.5):
                direct = conf_derivative(f, order, t)
                limit = conf_derivative_limit(f, order, t)
                worst = max(worst, abs(limit - direct) / max(1.0, abs(direct)))
        reports.append(_report(
            f"calculus.limit_quotient[delta={d}]", {"delta": d},
            worst, cfg.tol("fundamental_identity"), start, cfg.seed))

        start = time.perf_counter()
        worst = 0.0
        for name, f in _calc_corpus():
            profile = _integral_profile(f, order)
            for t in (0.25, 0.5, 1.0, 2.0):
                recovered = conf_derivative_limit(profile, order, t)
                target = float(np.asarray(f.evaluator(t)))
                worst = max(worst, abs(recovered - target) / max(1.0, abs(target)))
        reports.append(_report(
            f"calculus.derivative_of_integral[delta={d}]", {"delta": d},
            worst, cfg.tol("fundamental_identity"), start, cfg.seed))

        start = time.perf_counter()
        worst = 0.0
        t_lo = 0.25  # away from 0: the substituted integrand stays smooth
        for name, f in _calc_corpus():
            stretched = FunctionHandle(
                evaluator=lambda t, f=f, d=d: pow_arr(np.asarray(t, dtype=float),
                                                      1.0 - d)
                * np.asarray(f.classical_derivative(t)))
            for t_end in (0.5, 1.0, 2.0):
                quad = WeightedQuadrature.build(order, t_lo, t_end)
                got = complex(conf_integral(stretched, order, t_lo, t_end,
                                            quad)).real
                want = float(np.asarray(f.evaluator(t_end))
                             - np.asarray(f.evaluator(t_lo)))
                worst = max(worst, abs(got - want) / max(1.0, abs(want)))
        reports.append(_report(
            f"calculus.integral_of_derivative[delta={d}]", {"delta": d},
            worst, cfg.tol("fundamental_identity"), start, cfg.seed))

        start = time.perf_counter()
        worst = 0.0
        cubic = FunctionHandle(
            evaluator=lambda t: np.asarray(t, dtype=float) ** 3,
            classical_derivative=lambda t: 3.0 * np.asarray(t, dtype=float) ** 2,
            second_derivative=lambda t: 6.0 * np.asarray(t, dtype=float))
        for t in t_pts:
            got = conf_derivative_iterated(cubic, order, 2, float(t))
            want = 3.0 * (3.0 - d) * pow_pos(float(t), 3.0 - 2.0 * d)
            worst = max(worst, abs(got - want) / max(1.0, abs(want)))
        reports.append(_report(
            f"calculus.iterated_second[delta={d}]", {"delta": d},
            worst, cfg.tol("power_rule"), start, cfg.seed))

    start = time.perf_counter()
    unit = Order(1.0)
    worst = 0.0
    for name, f in _calc_corpus():
        for t in (0.3, 0.7, 1.5):
            worst = max(worst, abs(conf_derivative(f, unit, t)
                                   - float(np.asarray(f.classical_derivative(t)))))
    quad = WeightedQuadrature.build(unit, 0.0, 1.0)
    plain = complex(conf_integral(
        FunctionHandle(evaluator=np.cos), unit, 0.0, 1.0, quad)).real
    worst = max(worst, abs(plain - math.sin(1.0)))
    reports.append(_report(
        "calculus.classical_reduction[delta=1.0]", {"delta": 1.0},
        worst, cfg.tol("classical_reduction"), start, cfg.seed))

    start = time.perf_counter()
    order = Order(0.5)
    osc = FunctionHandle(
        evaluator=lambda t: np.exp(np.sin(pow_arr(np.asarray(t, dtype=float),
                                                  0.5) / 0.5)))
    fine = WeightedQuadrature.build(order, 0.0, 2.0, panels=64,
                                    points_per_panel=16)
    exact = complex(conf_integral(osc, order, 0.0, 2.0, fine)).real
    errors = []
    for panels in (4, 8, 16):
        quad = WeightedQuadrature.build(order, 0.0, 2.0, panels=panels,
                                        points_per_panel=4)
        approx = complex(conf_integral(osc, order, 0.0, 2.0, quad)).real
        errors.append(abs(approx - exact))
    factors = [e1 / e2 for e1, e2 in zip(errors, errors[1:])]
    min_factor = min(factors)
    reports.append(_report(
        "calculus.quadrature_refinement[delta=0.5]",
        {"delta": 0.5, "errors": errors, "factors": factors},
        cfg.tol("quadrature_factor") / min_factor, 1.0, start, cfg.seed))
    return reports


# ------------------------------------------------------------ spaces suite

def _graded_gl(end: float) -> tuple:
    # independent plain rule with geometric refinement toward 0, where the
    # substituted profile has a fractional-power cusp
    xs, ws = np.polynomial.legendre.leggauss(24)
    cuts = np.concatenate(([0.0], end * 2.0 ** (-np.arange(13, -1, -1.0))))
    nodes, weights = [], []
    for lo, hi in zip(cuts, cuts[1:]):
        nodes.append(0.5 * (xs + 1.0) * (hi - lo) + lo)
        weights.append(0.5 * ws * (hi - lo))
    return np.concatenate(nodes), np.concatenate(weights)


def _space_corpus() -> list:
    # fixed five-profile corpus: polynomial plus transcendental behavior,
    # all with closed-form weighted integrals
    return [
        ("one", FunctionHandle(
            evaluator=lambda t: np.ones_like(np.asarray(t, dtype=float)))),
        ("linear", FunctionHandle(
            evaluator=lambda t: np.asarray(t, dtype=float))),
        ("square", FunctionHandle(
            evaluator=lambda t: np.asarray(t, dtype=float) ** 2)),
        ("sin", FunctionHandle(evaluator=np.sin)),
        ("exp_decay", FunctionHandle(
            evaluator=lambda t: np.exp(-np.asarray(t, dtype=float)))),
    ]


def suite_spaces(cfg: RunConfig) -> list:
    reports = []
    horizon = 1.0
    for d in cfg.delta_list:
        order = Order(d)
        quad2 = WeightedQuadrature.build(order, 0.0, horizon)

        start = time.perf_counter()
        worst = 0.0
        for p in (1.0, 2.0):
            spec = SpaceSpec(delta=order, p=p, horizon=horizon)
            iso = TimeIsometry(source=spec)
            s_nodes, s_weights = _graded_gl(iso.target_end())
            for name, f in _space_corpus():
                left = lp_delta_norm(f, spec, quad2)
                g = time_isometry_apply(iso, f)
                right = float(np.sum(
                    s_weights * np.abs(np.asarray(g.evaluator(s_nodes))) ** p)
                ) ** (1.0 / p)
                worst = max(worst, abs(left - right) / max(left, 1e-30))
        reports.append(_report(
            f"spaces.time_isometry[delta={d}]",
            {"delta": d, "horizon": horizon, "exponents": [1.0, 2.0]},
            worst, cfg.tol("isometry"), start, cfg.seed))

        start = time.perf_counter()
        unitary = SpatialUnitary(delta=order)
        xi_nodes, xi_weights = _graded_gl(1.0)
        spec2 = SpaceSpec(delta=order, p=2.0, horizon=1.0)
        stretch_profile = FunctionHandle(
            evaluator=lambda x, d=d: pow_arr(np.asarray(x, dtype=float), d))
        corpus = [("stretch_power", stretch_profile)] + _space_corpus()[1:]
        worst = 0.0
        for name, f in corpus:
            left_sq = lp_delta_norm(f, spec2, quad2) ** 2
            g = spatial_unitary_apply(unitary, f, "forward")
            right_sq = float(np.sum(
                xi_weights * np.abs(np.asarray(g.evaluator(xi_nodes))) ** 2))
            worst = max(worst, abs(left_sq - right_sq) / left_sq)
            if name == "stretch_power":  # closed form: both sides 1/(3 delta)
                worst = max(worst, abs(left_sq - 1.0 / (3.0 * d)) * 3.0 * d)
            back = spatial_unitary_apply(unitary, g, "inverse")
            probe = np.linspace(0.05, 0.95, 19)
            worst = max(worst, float(np.max(np.abs(
                np.asarray(back.evaluator(probe))
                - np.asarray(f.evaluator(probe))))))
        reports.append(_report(
            f"spaces.spatial_unitarity[delta={d}]",
            {"delta": d, "corpus": [name for name, _ in corpus]},
            worst, cfg.tol("unitarity"), start, cfg.seed))

        start = time.perf_counter()
        spec = SpaceSpec(delta=order, p=2.0, horizon=horizon)
        rng = np.random.default_rng([cfg.seed, 23, int(round(1000 * d))])
        worst = 0.0
        for _ in range(40):
            cf, cg = rng.uniform(-1.0, 1.0, size=(2, 4))
            f = FunctionHandle(evaluator=lambda t, c=cf: np.polyval(
                c, np.asarray(t, dtype=float)))
            g = FunctionHandle(evaluator=lambda t, c=cg: np.polyval(
                c, np.asarray(t, dtype=float)))
            ip = abs(inner_product_2delta(f, g, spec, quad2))
            nf = lp_delta_norm(f, spec, quad2)
            ng = lp_delta_norm(g, spec, quad2)
            worst = max(worst, max(0.0, ip / (nf * ng) - 1.0))
        reports.append(_report(
            f"spaces.cauchy_schwarz[delta={d}]", {"delta": d, "pairs": 40},
            worst, cfg.tol("cauchy_schwarz"), start, cfg.seed))

        start = time.perf_counter()
        end = Clock(order).psi(horizon)

        def leg(k, t, d=d, end=end):
            s = pow_arr(np.asarray(t, dtype=float), d) / d
            u = 2.0 * s / end - 1.0
            return u if k == 1 else 1.5 * u ** 2 - 0.5

        f1 = FunctionHandle(evaluator=lambda t: leg(1, t))
        f2 = FunctionHandle(evaluator=lambda t: leg(2, t))
        ip = abs(inner_product_2delta(f1, f2, spec, quad2))
        n1 = lp_delta_norm(f1, spec, quad2)
        n2 = lp_delta_norm(f2, spec, quad2)
        reports.append(_report(
            f"spaces.orthogonal_pair[delta={d}]", {"delta": d},
            ip / (n1 * n2), cfg.tol("isometry"), start, cfg.seed))

        start = time.perf_counter()
        smooth = FunctionHandle(
            evaluator=lambda t: 2.0 + np.sin(np.asarray(t, dtype=float)),
            classical_derivative=np.cos,
            second_derivative=lambda t: -np.sin(np.asarray(t, dtype=float)))
        norms = [sobolev_norm(smooth, m, spec, quad2) for m in (0, 1, 2)]
        base = lp_delta_norm(smooth, spec, quad2)
        residual = max(0.0, norms[0] - norms[1], norms[1] - norms[2])
        residual = max(residual, abs(norms[0] - base) / base)
        reports.append(_report(
            f"spaces.sobolev_layers[delta={d}]",
            {"delta": d, "norms": norms},
            residual, cfg.tol("unitarity"), start, cfg.seed))
    return reports


# --------------------------------------------------------- semigroup suite

def suite_semigroup(cfg: RunConfig) -> list:
    reports = []
    gens = [_nilpotent2(), _diag_decay(), _diag_complex(), _cascade3(),
            _nonnormal4()]

    start = time.perf_counter()
    worst = 0.0
    for g in gens:
        eye = np.eye(g.dim, dtype=complex)
        for s in (0.3, 1.0, 2.0):
            series = taylor_matrix_exp(s * g.entries)
            dense = np.column_stack(
                [evolve_classical(g, s, eye[:, j]) for j in range(g.dim)])
            scale = max(1.0, float(np.max(np.abs(series))))
            worst = max(worst, float(np.max(np.abs(series - dense))) / scale)
    reports.append(_report(
        "semigroup.exp_oracle", {"generators": [g.label for g in gens]},
        worst, cfg.tol("exp_oracle"), start, cfg.seed))

    law_gens = [_nilpotent2(), _diag_decay(), _diag_complex()]
    for gi, g in enumerate(law_gens):
        x = np.ones(g.dim, dtype=complex)
        for d in cfg.delta_list:
            start = time.perf_counter()
            cs = ConformableSemigroup(ClassicalSemigroup(g), Clock(Order(d)))
            rng = np.random.default_rng([cfg.seed, 31, gi,
                                         int(round(1000 * d))])
            worst = 0.0
            for r, q in rng.uniform(0.0, 2.0, size=(50, 2)):
                worst = max(worst, delta_law_residual(cs, float(r), float(q), x)
                            / g.w_norm(x))
            reports.append(_report(
                f"semigroup.delta_law[{g.label}][delta={d}]",
                {"generator": g.label, "delta": d, "pairs": 50},
                worst, cfg.tol("law"), start, cfg.seed))

    quotient_cases = [(_diag_decay(), np.array([1.0, -1.0])),
                      (_cascade3(), np.array([1.0, -1.0, 0.5])),
                      (_nilpotent2(), np.array([1.0, 1.0]))]
    for g, x in quotient_cases:
        start = time.perf_counter()
        ax = g.entries @ x.astype(complex)
        scale = g.w_norm(ax)
        per_delta = {}
        worst = 0.0
        for d in cfg.delta_list:
            clock = Clock(Order(d))
            cs = ConformableSemigroup(ClassicalSemigroup(g), clock)
            t_seq = [clock.psi_inv(0.5 * 2.0 ** (-k)) for k in range(8)]
            quot = generator_delta_quotient(cs, x.astype(complex), t_seq)
            err = g.w_norm(quot - ax) / scale
            per_delta[str(d)] = err
            worst = max(worst, err)
        reports.append(_report(
            f"semigroup.generator_quotient[{g.label}]",
            {"generator": g.label, "per_delta": per_delta},
            worst, cfg.tol("generator_match"), start, cfg.seed))

    start = time.perf_counter()
    worst = 0.0
    for g, x in quotient_cases:
        ax = g.entries @ x.astype(complex)
        s_seq = [0.5 * 2.0 ** (-k) for k in range(8)]
        quot = classical_generator_quotient(ClassicalSemigroup(g),
                                            x.astype(complex), s_seq)
        worst = max(worst, g.w_norm(quot - ax) / g.w_norm(ax))
    reports.append(_report(
        "semigroup.classical_quotient",
        {"generators": [g.label for g, _ in quotient_cases]},
        worst, cfg.tol("generator_match"), start, cfg.seed))

    probe = _nonnormal4()
    x0 = np.array([1.0, -1.0, 0.5, 1.0])
    for d in (0.4, 0.7):
        start = time.perf_counter()
        clock = Clock(Order(d))
        orbit = solve_conformable_ode(probe, Order(d), x0, 2.0)
        worst = 0.0
        for t, state in zip(orbit.times, orbit.states):
            if t == 0.0:
                continue
            exact = evolve_classical(probe, clock.psi(float(t)),
                                     x0.astype(complex))
            worst = max(worst, probe.w_norm(state - exact)
                        / max(probe.w_norm(exact), 1e-30))
        reports.append(_report(
            f"semigroup.orbit_oracle[delta={d}]",
            {"generator": probe.label, "delta": d, "t_end": 2.0},
            worst, cfg.tol("orbit_oracle"), start, cfg.seed))

    start = time.perf_counter()
    orbit = solve_conformable_ode(probe, Order(1.0), x0, 2.0,
                                  rtol=1e-10, atol=1e-13)
    worst = 0.0
    for t, state in zip(orbit.times, orbit.states):
        if t == 0.0:
            continue
        exact = evolve_classical(probe, float(t), x0.astype(complex))
        worst = max(worst, probe.w_norm(state - exact)
                    / max(probe.w_norm(exact), 1e-30))
    reports.append(_report(
        "semigroup.orbit_reduction[delta=1.0]",
        {"generator": probe.label, "delta": 1.0},
        worst, cfg.tol("orbit_reduction"), start, cfg.seed))

    start = time.perf_counter()
    norm_drift = 0.0
    sample = solve_conformable_ode(_diag_decay(), Order(0.6),
                                   np.array([1.0, 1.0]), 1.5, n_out=9)
    for state, recorded in zip(sample.states, sample.norms):
        norm_drift = max(norm_drift,
                         abs(_diag_decay().w_norm(state) - recorded))
    reports.append(_report(
        "semigroup.orbit_norm_consistency",
        {"generator": "diag_decay", "delta": 0.6},
        norm_drift, cfg.tol("invariance"), start, cfg.seed))

    continuity_cases = [(_diag_decay(), np.array([1.0, 1.0])),
                        (_cascade3(), np.array([1.0, -1.0, 1.0]))]
    for g, y in continuity_cases:
        x = g.entries @ y.astype(complex)  # x in the generator's range
        for d in (0.4, 0.8):
            start = time.perf_counter()
            cs = ConformableSemigroup(ClassicalSemigroup(g), Clock(Order(d)))
            fit = strong_continuity_fit(cs, x)
            residual = fit["rel_dev"] + (0.0 if fit["decreasing"] else 1.0)
            reports.append(_report(
                f"semigroup.strong_continuity[{g.label}][delta={d}]",
                {"generator": g.label, "delta": d,
                 "slope": fit["slope"], "generator_norm": fit["generator_norm"],
                 "decreasing": fit["decreasing"]},
                residual, cfg.tol("strong_continuity"), start, cfg.seed))

    lap = dirichlet_second_difference(cfg.n_resolvent)
    start = time.perf_counter()
    margin = dissipativity_margin(lap)
    reports.append(_report(
        f"semigroup.dissipativity[{lap.label}]",
        {"generator": lap.label, "margin": margin},
        margin, cfg.tol("dissipativity"), start, cfg.seed))
    for lam in (0.1, 0.5, 1.0, 2.0):
        reports.append(resolvent_bound_check(lap, lam, seed=cfg.seed,
                                             slack=cfg.tol("resolvent_slack")))
    for d in (0.5, 1.0):
        cs = ConformableSemigroup(ClassicalSemigroup(lap), Clock(Order(d)))
        reports.append(contraction_check(cs, (0.1, 1.0, 5.0), seed=cfg.seed,
                                         slack=cfg.tol("contraction_slack")))
    return reports


# --------------------------------------------------- drift-diffusion suite

def suite_drift_diffusion(cfg: RunConfig) -> list:
    reports = []

    start = time.perf_counter()
    rng = np.random.default_rng([cfg.seed, 41])
    worst = 0.0
    for _ in range(100):
        a, b, c = rng.uniform(0.1, 3.0, size=3)
        d = rng.uniform(0.05, 1.0)
        p = DriftDiffusionParams(a=float(a), b=float(b), c=float(c),
                                 delta=Order(float(d)))
        a_t, b_t, c_t = parameter_transfer(p)
        lhs = b_t ** 2 / (2.0 * a_t)
        rhs = b ** 2 / (2.0 * a)
        worst = max(worst, abs(lhs - rhs) / rhs)
        worst = max(worst, abs(a_t - a * d * d) / (a * d * d))
        worst = max(worst, abs(b_t - b * d) / (b * d))
        worst = max(worst, abs(c_t - c) / c)
    reports.append(_report(
        "drift_diffusion.transfer_invariant", {"samples": 100},
        worst, cfg.tol("transfer"), start, cfg.seed))

    for d in cfg.delta_list:
        p = DriftDiffusionParams(a=cfg.dd_a, b=cfg.dd_b, c=cfg.dd_c,
                                 delta=Order(d))
        if d == 1.0:
            start = time.perf_counter()
            pairs = conjugacy_residual(p, cfg.n_list)
            worst = max(res for _, res in pairs)
            reports.append(_report(
                "drift_diffusion.conjugacy_exact[delta=1.0]",
                {"a": cfg.dd_a, "b": cfg.dd_b, "c": cfg.dd_c, "delta": 1.0,
                 "n_list": list(cfg.n_list)},
                worst, cfg.tol("delta_one_exact"), start, cfg.seed))
        else:
            start = time.perf_counter()
            pairs = conjugacy_residual(p, cfg.n_list)
            orders = empirical_orders(pairs)
            min_order = min(orders)
            reports.append(_report(
                f"drift_diffusion.conjugacy_order[delta={d}]",
                {"a": cfg.dd_a, "b": cfg.dd_b, "c": cfg.dd_c, "delta": d,
                 "n_list": list(cfg.n_list),
                 "residuals": [res for _, res in pairs], "orders": orders},
                cfg.tol("conjugacy_order") / min_order, 1.0, start, cfg.seed))

    start = time.perf_counter()
    worst = 0.0
    for d in cfg.delta_list:
        order = Order(d)
        grid = GridPair.build(64, order)
        forward, inverse = discrete_unitary(grid, order)
        rng = np.random.default_rng([cfg.seed, 43, int(round(1000 * d))])
        v = rng.standard_normal(64)
        w = rng.standard_normal(64)
        graded_ip = (grid.h / d) * float(np.sum(v * w))
        mapped_ip = grid.h * float(np.sum((forward @ v) * (forward @ w)))
        worst = max(worst, abs(graded_ip - mapped_ip) / abs(graded_ip))
        worst = max(worst, float(np.max(np.abs(inverse @ (forward @ v) - v))))
    reports.append(_report(
        "drift_diffusion.unitary_pairing", {"n": 64},
        worst, cfg.tol("transfer"), start, cfg.seed))

    base = DriftDiffusionParams(a=cfg.dd_a, b=cfg.dd_b, c=cfg.dd_c,
                                delta=Order(cfg.dd_delta))
    fam = EigenfunctionFamily.from_params(base)

    start = time.perf_counter()
    lam_star = fam.confluent_point()
    xi = np.linspace(0.0, 1.0, 257)
    center_vals = fam.evaluate(lam_star, xi)
    worst = 0.0
    for off in (1e-6, -1e-6):
        near = fam.evaluate(lam_star + off * (1.0 + abs(lam_star)), xi)
        worst = max(worst, float(np.max(np.abs(near - center_vals))))
    reports.append(_report(
        "drift_diffusion.confluent_continuity",
        {"a": cfg.dd_a, "b": cfg.dd_b, "c": cfg.dd_c, "delta": cfg.dd_delta,
         "lam_star": lam_star},
        worst, cfg.tol("confluent_match"), start, cfg.seed))

    for n in cfg.n_list:
        start = time.perf_counter()
        result = mild_solution_residuals(base, n, (0.25, 0.5, 1.0))
        worst = max(rec["error"] / rec["bound"] for rec in result["records"])
        reports.append(_report(
            f"drift_diffusion.mild_bound[n={n}]",
            {"a": cfg.dd_a, "b": cfg.dd_b, "c": cfg.dd_c,
             "delta": cfg.dd_delta, "n": n,
             "stencil_residual": result["stencil_residual"],
             "times": [0.25, 0.5, 1.0]},
            worst, 1.0, start, cfg.seed))

    start = time.perf_counter()
    u = FunctionHandle(evaluator=np.sin, classical_derivative=np.cos,
                       second_derivative=lambda x: -np.sin(x))
    worst = 0.0
    for d in cfg.delta_list:
        w1, w2 = derivative_identity_residuals(u, Order(d),
                                               np.linspace(0.1, 0.95, 30))
        worst = max(worst, w1, w2)
    reports.append(_report(
        "drift_diffusion.derivative_identities", {"profile": "sin"},
        worst, cfg.tol("derivative_identity"), start, cfg.seed))
    return reports


# --------------------------------------------------------- transport suite

def _transport_corpus() -> list:
    return [
        ("sin", FunctionHandle(evaluator=np.sin, classical_derivative=np.cos)),
        ("exp_decay", FunctionHandle(
            evaluator=lambda t: np.exp(-np.asarray(t, dtype=float)),
            classical_derivative=lambda t: -np.exp(-np.asarray(t, dtype=float)))),
        ("rational", FunctionHandle(
            evaluator=lambda t: 1.0 / (1.0 + np.asarray(t, dtype=float) ** 2),
            classical_derivative=lambda t: -2.0 * np.asarray(t, dtype=float)
            / (1.0 + np.asarray(t, dtype=float) ** 2) ** 2)),
    ]


def suite_transport(cfg: RunConfig) -> list:
    reports = []
    alphas = sorted({0.3, 0.5, 1.0, cfg.transport_alpha})
    for a in alphas:
        order = Order(a)
        model = TransportModel(alpha=order,
                               weight=make_weight(cfg.transport_weight, order))
        rng = np.random.default_rng([cfg.seed, 53, int(round(1000 * a))])
        xi_samples = rng.uniform(0.05, 3.0, size=100)

        start = time.perf_counter()
        worst = 0.0
        for name, f in _transport_corpus():
            scale = 1.0 + float(np.max(np.abs(
                np.asarray(f.evaluator(np.linspace(0.0, 6.0, 200))))))
            for t in (0.3, 1.0):
                res = transport_conjugacy_residual(model, f, t, xi_samples)
                worst = max(worst, res / scale)
        reports.append(_report(
            f"transport.conjugacy[alpha={a}]",
            {"alpha": a, "times": [0.3, 1.0], "samples": 100},
            worst, cfg.tol("transport_pointwise"), start, cfg.seed))

        start = time.perf_counter()
        x_samples = np.linspace(0.2, 2.0, 40)
        worst = 0.0
        for name, f in _transport_corpus():
            worst = max(worst, transport_pde_residual(model, f, 0.7, x_samples))
        reports.append(_report(
            f"transport.pde_residual[alpha={a}]",
            {"alpha": a, "t": 0.7},
            worst, cfg.tol("transport_pde"), start, cfg.seed))

        start = time.perf_counter()
        worst = 0.0
        x_grid = np.linspace(0.1, 2.5, 60)
        for name, f in _transport_corpus():
            scale = 1.0 + float(np.max(np.abs(
                np.asarray(f.evaluator(np.linspace(0.0, 6.0, 200))))))
            for r, q in ((0.4, 0.9), (0.7, 0.7)):
                once = apply_S_alpha(model, apply_S_alpha(model, f, q), r)
                joint = apply_S_alpha(model, f, r + q)
                gap = float(np.max(np.abs(
                    np.asarray(once.evaluator(x_grid))
                    - np.asarray(joint.evaluator(x_grid)))))
                worst = max(worst, gap / scale)
        reports.append(_report(
            f"transport.flow_law[alpha={a}]", {"alpha": a},
            worst, cfg.tol("transport_pointwise"), start, cfg.seed))

    start = time.perf_counter()
    unit_order = Order(1.0)
    unit_model = TransportModel(alpha=unit_order,
                                weight=make_weight("unit", unit_order))
    worst = 0.0
    x_grid = np.linspace(0.1, 2.5, 60)
    for name, f in _transport_corpus():
        flowed = apply_S_alpha(unit_model, f, 0.8)
        shifted = np.asarray(f.evaluator(x_grid + 0.8))
        worst = max(worst, float(np.max(np.abs(
            np.asarray(flowed.evaluator(x_grid)) - shifted))))
    reports.append(_report(
        "transport.shift_reduction[alpha=1.0]", {"alpha": 1.0, "t": 0.8},
        worst, cfg.tol("transport_pointwise"), start, cfg.seed))

    order = Order(cfg.transport_alpha)
    windows = (0.5, 1.0, 2.0, 4.0, 8.0)
    model = TransportModel(alpha=order,
                           weight=make_weight(cfg.transport_weight, order))
    reports.append(weight_criterion_probe(model, windows, seed=cfg.seed))
    contrast = "unit" if cfg.transport_weight != "unit" else "exp_decay"
    model = TransportModel(alpha=order, weight=make_weight(contrast, order))
    reports.append(weight_criterion_probe(model, windows, seed=cfg.seed))
    return reports


# ---------------------------------------------------------- dynamics suite

def suite_dynamics(cfg: RunConfig) -> list:
    reports = []

    condition_triples = ((1.0, 1.0, 0.4), (1.0, 1.0, 0.6), (1.0, 2.0, 0.5))
    for a, b, c in condition_triples:
        start = time.perf_counter()
        verdict = dsw_condition_check(
            DriftDiffusionParams(a=a, b=b, c=c, delta=Order(1.0)))
        reports.append(_report(
            f"dynamics.condition[a={a}][b={b}][c={c}]",
            {"a": a, "b": b, "c": c,
             "status": "condition_met" if verdict["holds"]
             else "condition_not_met",
             "ratio": verdict["ratio"],
             "lower_margin": verdict["lower_margin"],
             "upper_margin": verdict["upper_margin"]},
            0.0, 0.0, start, cfg.seed))

    fam = EigenfunctionFamily.from_params(DriftDiffusionParams(
        a=cfg.dd_a, b=cfg.dd_b, c=cfg.dd_c, delta=Order(1.0)))
    rect = LambdaRectangle(center=0.0 + 0.0j, re_half=2.0, im_half=12.0)

    start = time.perf_counter()
    probe = dsw_hypotheses_probe(fam, rect, n=cfg.n_eigen,
                                 gram_threshold=cfg.tol("gram_min"),
                                 residual_factor=cfg.tol("eigen_factor"))
    shared = {"a": cfg.dd_a, "b": cfg.dd_b, "c": cfg.dd_c, "n": cfg.n_eigen}
    reports.append(_report(
        "dynamics.eigen_residual", dict(
            shared, points=len(probe.eigen_records),
            worst_ratio=probe.worst_eigen_ratio()),
        probe.worst_eigen_ratio(), 1.0, start, cfg.seed))

    start = time.perf_counter()
    axis_worst = max(rec["ratio"] for rec in probe.imag_axis_records)
    reports.append(_report(
        "dynamics.eigen_residual_imag_axis", dict(
            shared, points=len(probe.imag_axis_records)),
        axis_worst, 1.0, start, cfg.seed))

    start = time.perf_counter()
    reports.append(_report(
        "dynamics.analyticity", dict(shared, radius=0.1),
        probe.worst_analyticity(), cfg.tol("analyticity"), start, cfg.seed))

    start = time.perf_counter()
    shrink = max(rec["shrink_change"] for rec in probe.analyticity_records)
    reports.append(_report(
        "dynamics.analyticity_shrink", dict(shared, radii=[0.1, 0.05]),
        shrink, cfg.tol("analyticity"), start, cfg.seed))

    start = time.perf_counter()
    det = probe.gram["det"]
    reports.append(_report(
        "dynamics.gram_separation", dict(
            shared, det=det, threshold=probe.gram["threshold"],
            duplicate_values=probe.gram["duplicate_values"]),
        probe.gram["threshold"] / det if det > 0.0 else float("inf"),
        1.0, start, cfg.seed))

    for d in (0.4, 0.8):
        g = _diag_decay()
        cs = ConformableSemigroup(ClassicalSemigroup(g), Clock(Order(d)))
        reports.append(clock_invariance_check(
            cs, np.array([1.0, -1.0]), (0.3, 0.9, 1.7),
            tolerance=cfg.tol("invariance"), seed=cfg.seed))

    start = time.perf_counter()
    decay = x0_probe(fam, -1.0 + 0.0j, np.linspace(0.0, 4.0, 9))
    residual = decay["worst_error"] + (0.0 if decay["monotone_decay"] else 1.0)
    reports.append(_report(
        "dynamics.x0_decay[lam=-1]", dict(
            shared, lam=-1.0 + 0.0j, monotone=decay["monotone_decay"]),
        residual, cfg.tol("decay"), start, cfg.seed))

    start = time.perf_counter()
    spiral = x0_probe(fam, -0.5 + 3.0j, np.linspace(0.0, 4.0, 9))
    residual = spiral["worst_error"] + (0.0 if spiral["monotone_decay"] else 1.0)
    reports.append(_report(
        "dynamics.x0_decay[lam=-0.5+3j]", dict(
            shared, lam=-0.5 + 3.0j, monotone=spiral["monotone_decay"]),
        residual, cfg.tol("decay"), start, cfg.seed))

    for lam, eps in ((1.0 + 0.0j, 1e-3), (2.0 + 0.0j, 1e-5)):
        start = time.perf_counter()
        rec = xinf_probe(fam, lam, eps, n=cfg.n_eigen)
        residual = rec["terminal_error"] + (
            0.0 if rec["seed_norm"] < eps else 1.0)
        reports.append(_report(
            f"dynamics.xinf_landing[lam={lam.real}][eps={eps}]", dict(
                shared, lam=lam, eps=eps, t_star=rec["t_star"],
                seed_norm=rec["seed_norm"]),
            residual, cfg.tol("decay"), start, cfg.seed))

    for omega in (2.0 * math.pi, 1.0):
        start = time.perf_counter()
        rec = periodic_orbit_check(fam, omega)
        residual = max(rec["coefficient_error_full"],
                       rec["coefficient_error_half"],
                       rec["return_gap"], rec["transfer_residual"])
        reports.append(_report(
            f"dynamics.periodic_return[omega={omega}]", dict(
                shared, omega=omega, tau=rec["tau"],
                t_return=rec["t_return"]),
            residual, cfg.tol("periodic"), start, cfg.seed))
    return reports


# ------------------------------------------------------------ entry points

_SUITES = {
    "calculus": suite_calculus,
    "spaces": suite_spaces,
    "clock": suite_clock,
    "semigroup": suite_semigroup,
    "drift-diffusion": suite_drift_diffusion,
    "transport": suite_transport,
    "dynamics": suite_dynamics,
}


def run_suite(cfg: RunConfig) -> list:
    """All CheckReports for the configured suite, in execution order."""
    names = SUITE_ORDER if cfg.suite == "all" else (cfg.suite,)
    reports = []
    for name in names:
        reports.extend(_SUITES[name](cfg))
    return reports


def run_sweep(cfg: RunConfig) -> list:
    """Cross-parameter residual table: one row per (delta, n) cell."""
    rows = []
    probe = _nonnormal4()
    x0 = np.array([1.0, -1.0, 0.5, 1.0])
    correspondence = {}
    for d in sorted(cfg.sweep_delta_list):
        clock = Clock(Order(d))
        orbit = solve_conformable_ode(probe, Order(d), x0, 2.0)
        worst = 0.0
        for t, state in zip(orbit.times, orbit.states):
            if t == 0.0:
                continue
            exact = evolve_classical(probe, clock.psi(float(t)),
                                     x0.astype(complex))
            worst = max(worst, probe.w_norm(state - exact)
                        / max(probe.w_norm(exact), 1e-30))
        correspondence[d] = worst

    for d in sorted(cfg.sweep_delta_list):
        p = DriftDiffusionParams(a=cfg.dd_a, b=cfg.dd_b, c=cfg.dd_c,
                                 delta=Order(d))
        for n in sorted(cfg.sweep_n_list):
            conjugacy = conjugacy_residual(p, (n,))[0][1]
            grid = GridPair.build(n, Order(d))
            # uniform-grid twin, both ends clamped: the graded-mesh matrix
            # has spurious fast-growing boundary modes whose exponential
            # overflows at sweep horizons, and the law holds for any generator
            g = build_classical_operator(p, grid, clamp_right=True)
            cs = ConformableSemigroup(ClassicalSemigroup(g), Clock(Order(d)))
            x = grid.xi_nodes * (1.0 - grid.xi_nodes)
            law = max(delta_law_residual(cs, r, q, x.astype(complex))
                      for r, q in ((0.5, 1.2), (0.3, 0.7), (1.0, 1.0)))
            law /= g.w_norm(x)
            rows.append({
                "delta": d, "n": n,
                "a": cfg.dd_a, "b": cfg.dd_b, "c": cfg.dd_c,
                "conjugacy_residual": conjugacy,
                "law_residual": law,
                "correspondence_residual": correspondence[d],
            })
    return rows
