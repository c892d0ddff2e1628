"""Finite-dimensional evolution backends and their verification battery.

A generator matrix A, together with a diagonal discrete inner product,
defines the classical flow exp(sA).  Pairing that flow with a clock of order
delta gives the rescaled family S(t) = exp(psi(t) A).  This module evaluates
both, the composition law in the rescaled time, difference-quotient
reconstructions of the generator, an independent adaptive Runge-Kutta orbit
for the singular ODE x'(t) = t**(delta-1) A x(t), and the dissipativity /
resolvent / contraction battery for negative generators.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from .clock import Clock, Order
from .reports import CheckReport

__all__ = [
    "GeneratorMatrix",
    "ClassicalSemigroup",
    "ConformableSemigroup",
    "OrbitSample",
    "taylor_matrix_exp",
    "evolve_classical",
    "evolve_conformable",
    "delta_law_residual",
    "generator_delta_quotient",
    "classical_generator_quotient",
    "solve_conformable_ode",
    "dissipativity_margin",
    "resolvent_bound_check",
    "contraction_check",
    "dirichlet_second_difference",
    "strong_continuity_fit",
    "neville_extrapolate",
]


@dataclass(frozen=True)
class GeneratorMatrix:
    """Square generator with a diagonal weighted inner product.

    ip_weights w define <x, y> = sum_i w_i x_i conj(y_i); every norm in this
    module is taken in that inner product.
    """

    entries: np.ndarray
    ip_weights: np.ndarray
    label: str = ""

    def __post_init__(self) -> None:
        entries = np.asarray(self.entries, dtype=complex)
        weights = np.asarray(self.ip_weights, dtype=float)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise ValueError(f"entries must be square, got shape {entries.shape}")
        if entries.shape[0] < 1:
            raise ValueError("need at least one state dimension")
        if weights.shape != (entries.shape[0],):
            raise ValueError("ip_weights length must match the matrix size")
        if np.any(weights <= 0.0):
            raise ValueError("ip_weights must all be positive")
        if not np.all(np.isfinite(entries)):
            raise FloatingPointError("generator has non-finite entries")
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "ip_weights", weights)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def w_norm(self, x: np.ndarray) -> float:
        x = np.asarray(x)
        return float(np.sqrt(np.sum(self.ip_weights * np.abs(x) ** 2).real))

    def w_operator_norm(self, matrix: np.ndarray) -> float:
        # similarity by sqrt(W) turns the weighted norm into the Euclidean one
        root = np.sqrt(self.ip_weights)
        scaled = (root[:, None] * matrix) / root[None, :]
        return float(np.linalg.norm(scaled, 2))


def taylor_matrix_exp(matrix: np.ndarray, terms: int = 30) -> np.ndarray:
    """Series-plus-squaring exponential, the in-repo oracle for expm.

    The argument is scaled by a power of two until its norm is at most 1/2,
    the series is summed to `terms`, and the result is squared back up.
    """
    matrix = np.asarray(matrix, dtype=complex)
    norm = np.linalg.norm(matrix, np.inf)
    squarings = 0
    if norm > 0.5:
        squarings = int(np.ceil(np.log2(norm / 0.5)))
    scaled = matrix / (2.0 ** squarings)
    n = matrix.shape[0]
    result = np.eye(n, dtype=complex)
    term = np.eye(n, dtype=complex)
    for k in range(1, terms + 1):
        term = term @ scaled / k
        result = result + term
    for _ in range(squarings):
        result = result @ result
    return result


def evolve_classical(g: GeneratorMatrix, s: float, x: np.ndarray) -> np.ndarray:
    """exp(sA) x by scaling-and-squaring (dense, any square A)."""
    if s < 0.0:
        raise ValueError(f"classical time must be nonnegative, got {s}")
    x = np.asarray(x, dtype=complex)
    if s == 0.0:
        return x.copy()
    out = expm(s * g.entries) @ x
    if not np.all(np.isfinite(out)):
        raise FloatingPointError(f"evolution produced non-finite state at s={s}")
    return out


@dataclass(frozen=True)
class ClassicalSemigroup:
    generator: GeneratorMatrix

    def evolve(self, s: float, x: np.ndarray) -> np.ndarray:
        return evolve_classical(self.generator, s, x)


@dataclass(frozen=True)
class ConformableSemigroup:
    """The rescaled family: evolve(t, x) = classical evolve at psi(t)."""

    base: ClassicalSemigroup
    clock: Clock

    @property
    def generator(self) -> GeneratorMatrix:
        return self.base.generator

    def evolve(self, t: float, x: np.ndarray) -> np.ndarray:
        return self.base.evolve(self.clock.psi(t), x)


def evolve_conformable(cs: ConformableSemigroup, t: float, x: np.ndarray) -> np.ndarray:
    return cs.evolve(t, x)


def delta_law_residual(cs: ConformableSemigroup, r: float, q: float,
                       x: np.ndarray) -> float:
    """Composition-law defect in the rescaled time variable.

    Compares the one-shot evolution at (r+q)**(1/delta) with the two-step
    evolution at r**(1/delta) then q**(1/delta), in the weighted norm.
    """
    if r < 0.0 or q < 0.0:
        raise ValueError("law arguments must be nonnegative")
    d = cs.clock.delta
    one_shot = cs.evolve((r + q) ** (1.0 / d), x)
    two_step = cs.evolve(r ** (1.0 / d), cs.evolve(q ** (1.0 / d), x))
    return cs.generator.w_norm(one_shot - two_step)


def neville_extrapolate(nodes: np.ndarray, values: list) -> np.ndarray:
    """Polynomial extrapolation to node -> 0 through (nodes[i], values[i])."""
    nodes = np.asarray(nodes, dtype=float)
    if len(nodes) != len(values) or len(nodes) < 2:
        raise ValueError("need matching node/value lists of length >= 2")
    table = [np.asarray(v, dtype=complex) for v in values]
    m = len(table)
    for stride in range(1, m):
        nxt = []
        for i in range(m - stride):
            hi, lo = nodes[i], nodes[i + stride]
            nxt.append((hi * table[i + 1] - lo * table[i]) / (hi - lo))
        table = nxt
    return table[0]


def generator_delta_quotient(cs: ConformableSemigroup, x: np.ndarray,
                             t_seq) -> np.ndarray:
    """Extrapolated stretched difference quotient (S(t)x - x) / psi(t).

    The quotient is a smooth function of u = psi(t), so extrapolation runs in
    u; the limit must reproduce A x.
    """
    t_seq = np.asarray(t_seq, dtype=float)
    if len(t_seq) < 4:
        raise ValueError("need at least 4 quotient times")
    if np.any(t_seq <= 0.0) or np.any(np.diff(t_seq) >= 0.0):
        raise ValueError("t_seq must be positive and strictly decreasing")
    x = np.asarray(x, dtype=complex)
    us = np.array([cs.clock.psi(t) for t in t_seq])
    quotients = [(cs.base.evolve(u, x) - x) / u for u in us]
    limit = neville_extrapolate(us, quotients)
    if not np.all(np.isfinite(limit)):
        raise FloatingPointError("quotient extrapolation diverged")
    return limit


def classical_generator_quotient(sg: ClassicalSemigroup, x: np.ndarray,
                                 s_seq) -> np.ndarray:
    """Plain difference quotient (T(s)x - x)/s extrapolated to s -> 0."""
    s_seq = np.asarray(s_seq, dtype=float)
    if len(s_seq) < 4:
        raise ValueError("need at least 4 quotient times")
    x = np.asarray(x, dtype=complex)
    quotients = [(sg.evolve(s, x) - x) / s for s in s_seq]
    return neville_extrapolate(s_seq, quotients)


@dataclass(frozen=True)
class OrbitSample:
    """States along an orbit with their weighted norms."""

    times: np.ndarray
    states: list
    norms: np.ndarray


# Dormand-Prince 5(4) tableau
_DP_C = np.array([0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0])
_DP_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
    (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84),
)
_DP_B5 = np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0])
_DP_B4 = np.array([5179 / 57600, 0.0, 7571 / 16695, 393 / 640, -92097 / 339200,
                   187 / 2100, 1 / 40])


def _rk45_advance(rhs, t: float, x: np.ndarray, t_target: float,
                  rtol: float, atol: float, max_steps: int = 500_000):
    """Integrate rhs from (t, x) to t_target with embedded 5(4) steps."""
    h = max((t_target - t) / 100.0, 1e-12)
    steps = 0
    while t < t_target:
        if h < 1e-14 * max(1.0, abs(t)):
            raise FloatingPointError(f"step size underflow at t={t}")
        h = min(h, t_target - t)
        stages = []
        for i in range(7):
            xi = x
            for j, a in enumerate(_DP_A[i]):
                if a != 0.0:
                    xi = xi + (h * a) * stages[j]
            stages.append(rhs(t + _DP_C[i] * h, xi))
        hi = x + h * sum(b * k for b, k in zip(_DP_B5, stages) if b != 0.0)
        lo = x + h * sum(b * k for b, k in zip(_DP_B4, stages) if b != 0.0)
        scale = atol + rtol * np.maximum(np.abs(x), np.abs(hi))
        err = float(np.sqrt(np.mean((np.abs(hi - lo) / scale) ** 2)))
        if err <= 1.0:
            t, x = t + h, hi
        factor = 0.9 * err ** -0.2 if err > 0.0 else 5.0
        h *= min(5.0, max(0.2, factor))
        steps += 1
        if steps > max_steps:
            raise FloatingPointError(f"step budget exhausted at t={t}")
    return x


def solve_conformable_ode(g: GeneratorMatrix, delta: Order, x0: np.ndarray,
                          t_end: float, rtol: float = 1e-9, atol: float = 1e-12,
                          n_out: int = 21) -> OrbitSample:
    """Independent orbit of x'(t) = t**(delta-1) A x(t) on a fixed grid.

    The right-hand side is singular at t=0 for delta < 1, so the segment
    [0, t0] is advanced exactly via exp(psi(t0) A); from t0 on, integration
    is a hand-rolled adaptive embedded Runge-Kutta that never consults the
    clock.  t0 = min(1e-3, (1e-3 * delta)**(1/delta)).
    """
    if t_end <= 0.0:
        raise ValueError(f"t_end must be positive, got {t_end}")
    d = delta.delta
    clock = Clock(delta)
    x0 = np.asarray(x0, dtype=complex)
    matrix = g.entries
    t0 = min(1e-3, (1e-3 * d) ** (1.0 / d))

    def rhs(t: float, x: np.ndarray) -> np.ndarray:
        return t ** (d - 1.0) * (matrix @ x)

    times = np.linspace(0.0, t_end, n_out)
    states = []
    t_cur = t0
    x_cur = expm(clock.psi(t0) * matrix) @ x0
    for t in times:
        if t == 0.0:
            states.append(x0.copy())
        elif t <= t0:
            states.append(expm(clock.psi(t) * matrix) @ x0)
        else:
            x_cur = _rk45_advance(rhs, t_cur, x_cur, t, rtol, atol)
            t_cur = t
            states.append(x_cur.copy())
    norms = np.array([g.w_norm(s) for s in states])
    return OrbitSample(times=times, states=states, norms=norms)


def dissipativity_margin(g: GeneratorMatrix) -> float:
    """Largest Rayleigh quotient Re<Ax, x> over unit weighted-norm x.

    Computed as the top eigenvalue of the weighted-symmetrized matrix; a
    nonpositive value certifies discrete dissipativity.
    """
    root = np.sqrt(g.ip_weights)
    similar = (root[:, None] * g.entries) / root[None, :]
    sym = 0.5 * (similar + similar.conj().T)
    return float(np.max(np.linalg.eigvalsh(sym)))


def resolvent_bound_check(g: GeneratorMatrix, lam: float, seed: int = 0,
                          n_random: int = 100,
                          slack: float = 1e-10) -> CheckReport:
    """Shifted-inverse norm bound for a dissipative generator.

    Asserts the weighted operator norm of (lam I - A)^-1 is at most
    (1/lam)(1+slack), and the pointwise lower bound
    ||(lam I - A) x|| >= lam ||x|| on seeded random vectors.
    """
    start = time.perf_counter()
    if lam <= 0.0:
        raise ValueError(f"shift must be positive, got {lam}")
    margin = dissipativity_margin(g)
    if margin > 1e-12:
        raise ValueError(
            f"generator is not dissipative (margin {margin:.3e}); bound is void")
    n = g.dim
    shifted = lam * np.eye(n) - g.entries
    inverse = np.linalg.inv(shifted)
    norm_excess = lam * g.w_operator_norm(inverse) - 1.0
    rng = np.random.default_rng(seed)
    lower_excess = -np.inf
    for _ in range(n_random):
        x = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        lhs = g.w_norm(shifted @ x)
        rhs_val = lam * g.w_norm(x)
        lower_excess = max(lower_excess, (rhs_val - lhs) / rhs_val)
    residual = max(norm_excess, lower_excess)
    return CheckReport.from_residual(
        check_id=f"resolvent_bound[{g.label}][lam={lam}]",
        params={"lambda": lam, "n": n, "norm_excess": norm_excess,
                "lower_excess": lower_excess, "margin": margin},
        residual=residual, tolerance=slack,
        wall_time=time.perf_counter() - start, seed=seed)


def contraction_check(cs: ConformableSemigroup, t_grid, seed: int = 0,
                      slack: float = 1e-10) -> CheckReport:
    """Operator norms of the rescaled flow stay at or below one."""
    start = time.perf_counter()
    g = cs.generator
    margin = dissipativity_margin(g)
    if margin > 1e-12:
        raise ValueError(
            f"generator is not dissipative (margin {margin:.3e}); "
            "contraction is not implied")
    worst = -np.inf
    norms = {}
    for t in t_grid:
        flow = expm(cs.clock.psi(t) * g.entries)
        norm = g.w_operator_norm(flow)
        norms[f"t={t}"] = norm
        worst = max(worst, norm - 1.0)
    return CheckReport.from_residual(
        check_id=f"contraction[{g.label}][delta={cs.clock.delta}]",
        params={"delta": cs.clock.delta, "margin": margin, **norms},
        residual=worst, tolerance=slack,
        wall_time=time.perf_counter() - start, seed=seed)


def dirichlet_second_difference(n: int) -> GeneratorMatrix:
    """Second-difference matrix on n interior nodes, both ends clamped,
    with the uniform-mesh inner product (weight h per node)."""
    if n < 2:
        raise ValueError("need n >= 2 interior nodes")
    h = 1.0 / (n + 1)
    main = -2.0 * np.ones(n)
    off = np.ones(n - 1)
    entries = (np.diag(main) + np.diag(off, 1) + np.diag(off, -1)) / h ** 2
    return GeneratorMatrix(entries=entries, ip_weights=h * np.ones(n),
                           label=f"dirichlet_laplacian[n={n}]")


def strong_continuity_fit(cs: ConformableSemigroup, x: np.ndarray,
                          k_lo: int = 4, k_hi: int = 20) -> dict:
    """Small-time behaviour of ||S(t)x - x|| on the dyadic grid t = 2**-k.

    Returns the decrease flag, the fitted slope C = max of gap/psi(t), the
    weighted norm of A x, and their relative deviation (first-order bound).
    """
    g = cs.generator
    x = np.asarray(x, dtype=complex)
    ts = [2.0 ** -k for k in range(k_lo, k_hi + 1)]
    gaps = np.array([g.w_norm(cs.evolve(t, x) - x) for t in ts])
    psis = np.array([cs.clock.psi(t) for t in ts])
    ratios = gaps / psis
    slope = float(np.max(ratios))
    generator_norm = g.w_norm(g.entries @ x)
    decreasing = bool(np.all(np.diff(gaps) < 0.0))
    return {
        "decreasing": decreasing,
        "slope": slope,
        "generator_norm": generator_norm,
        "rel_dev": abs(slope - generator_norm) / generator_norm,
        "times": ts,
        "gaps": gaps,
    }
