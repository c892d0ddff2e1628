"""Closed-form transport model on the half-line.

The spatial stretch psi(x) = x**alpha / alpha turns the flow
x -> f(psi_inv(psi(x) + t)) into a plain shift in the stretched variable:
substituting xi = psi(x) conjugates the stretched flow to translation.  All
operators here are symbolic compositions of closed forms; nothing is
discretized, so identities hold to rounding.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .calculus import FunctionHandle, pow_arr
from .clock import Clock, Order
from .reports import CheckReport
from .spaces import WeightSpec, transported_weight

__all__ = [
    "TransportModel",
    "apply_S_alpha",
    "apply_Q",
    "apply_W",
    "transport_conjugacy_residual",
    "transport_pde_residual",
    "weight_criterion_probe",
]


@dataclass(frozen=True)
class TransportModel:
    alpha: Order
    weight: WeightSpec

    def __post_init__(self) -> None:
        if self.weight.alpha != self.alpha:
            raise ValueError("weight stretch order differs from the model order")

    @property
    def clock(self) -> Clock:
        return Clock(self.alpha)


def apply_S_alpha(m: TransportModel, f: FunctionHandle, t: float) -> FunctionHandle:
    """Flow along the stretched shift: x -> f(psi_inv(psi(x) + t))."""
    if t < 0.0:
        raise ValueError(f"flow time must be nonnegative, got {t}")
    a = m.alpha.delta

    def pulled(x):
        arr = np.asarray(x, dtype=float)
        xi = pow_arr(arr, a) / a + t
        return pow_arr(a * xi, 1.0 / a)

    def ev(x):
        return f.evaluator(pulled(x))

    deriv = None
    if f.classical_derivative is not None:
        def deriv(x):  # chain rule through psi_inv(psi(x) + t)
            arr = np.asarray(x, dtype=float)
            xi = pow_arr(arr, a) / a + t
            inner = pow_arr(a * xi, 1.0 / a - 1.0) * pow_arr(arr, a - 1.0)
            return f.classical_derivative(pow_arr(a * xi, 1.0 / a)) * inner

    return FunctionHandle(evaluator=ev, classical_derivative=deriv)


def apply_Q(m: TransportModel, f: FunctionHandle, direction: str) -> FunctionHandle:
    """Forward: xi -> f(psi_inv(xi)); inverse: x -> g(psi(x))."""
    a = m.alpha.delta
    if direction == "forward":
        def ev(xi):
            arr = np.asarray(xi, dtype=float)
            return f.evaluator(pow_arr(a * arr, 1.0 / a))
    elif direction == "inverse":
        def ev(x):
            arr = np.asarray(x, dtype=float)
            return f.evaluator(pow_arr(arr, a) / a)
    else:
        raise ValueError(f"direction must be forward or inverse, got {direction}")
    return FunctionHandle(evaluator=ev)


def apply_W(g: FunctionHandle, t: float) -> FunctionHandle:
    """Plain shift xi -> g(xi + t)."""
    if t < 0.0:
        raise ValueError(f"shift must be nonnegative, got {t}")

    def ev(xi):
        return g.evaluator(np.asarray(xi, dtype=float) + t)

    return FunctionHandle(evaluator=ev)


def transport_conjugacy_residual(m: TransportModel, f: FunctionHandle, t: float,
                                 xi_samples) -> float:
    """Pointwise defect of (stretch then flow) versus (shift then stretch).

    Both sides are the same composition through different parenthesizations,
    so the residual is pure rounding.
    """
    xi = np.asarray(xi_samples, dtype=float)
    left = apply_Q(m, apply_S_alpha(m, f, t), "forward").evaluator(xi)
    right = apply_W(apply_Q(m, f, "forward"), t).evaluator(xi)
    return float(np.max(np.abs(np.asarray(left) - np.asarray(right))))


def transport_pde_residual(m: TransportModel, f: FunctionHandle, t: float,
                           x_samples, dt: float = 1e-5) -> float:
    """Defect of the evolution equation along the closed-form flow.

    Time derivative by central difference, space side by the order-alpha
    derivative of the flowed profile with its analytic chain-rule
    derivative.
    """
    if f.classical_derivative is None:
        raise ValueError("residual check needs the analytic derivative")
    if t <= dt:
        raise ValueError(f"need t > dt, got t={t}")
    a = m.alpha.delta
    x = np.asarray(x_samples, dtype=float)
    ahead = apply_S_alpha(m, f, t + dt).evaluator(x)
    behind = apply_S_alpha(m, f, t - dt).evaluator(x)
    time_side = (np.asarray(ahead) - np.asarray(behind)) / (2.0 * dt)
    flowed = apply_S_alpha(m, f, t)
    space_side = pow_arr(x, 1.0 - a) * np.asarray(flowed.classical_derivative(x))
    return float(np.max(np.abs(time_side - space_side)))


def weight_criterion_probe(m: TransportModel, window_ends,
                           decay_threshold: float = 1e-2,
                           samples_per_window: int = 200,
                           seed: int = 0) -> CheckReport:
    """Window-infimum probe of the transported weight (HEURISTIC).

    Samples the stretched weight over dyadic windows [E, 2E] and reports
    whether the infima decrease toward zero.  This exposes the decay
    mechanism that admissible shift weights need; it certifies nothing and
    is recorded informationally.
    """
    start = time.perf_counter()
    ends = list(window_ends)
    if len(ends) < 3:
        raise ValueError("need at least 3 windows")
    if any(e2 <= e1 for e1, e2 in zip(ends, ends[1:])):
        raise ValueError("window ends must be increasing")
    rho_t = transported_weight(m.weight)
    infima = []
    for end in ends:
        grid = np.linspace(end, 2.0 * end, samples_per_window)
        infima.append(float(np.min(np.asarray(rho_t.evaluator(grid)).real)))
    decreasing = all(b < a for a, b in zip(infima, infima[1:]))
    satisfied = decreasing and infima[-1] <= decay_threshold
    name = m.weight.label or "weight"
    params = {
        "label": "HEURISTIC",
        "status": "criterion_satisfied" if satisfied else "criterion_not_satisfied",
        "weight": name,
        "alpha": m.alpha.delta,
        "window_ends": [float(e) for e in ends],
        "infima": infima,
        "decay_threshold": decay_threshold,
    }
    return CheckReport.from_residual(
        check_id=f"weight_window_probe[{name}][alpha={m.alpha.delta}]",
        params=params, residual=0.0, tolerance=0.0,
        wall_time=time.perf_counter() - start, seed=seed)
