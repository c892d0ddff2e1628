#!/usr/bin/env python3
"""The degenerate drift-diffusion operator and its constant-coefficient twin.

A grid graded like x = xi^(1/delta) straightens the degenerate operator into
a constant-coefficient one.  This script shows the coefficient transfer, the
discrete conjugacy converging under refinement, and the evolution of the
clamped pair staying within its first-order bound.

Run directly: python3 demos/operator_pair.py
"""

import numpy as np

from confsemi import (DriftDiffusionParams, Order, conjugacy_residual,
                      empirical_orders, mild_solution_residuals,
                      parameter_transfer)


def banner(text):
    print()
    print(text)
    print("-" * len(text))


def main():
    p = DriftDiffusionParams(a=1.0, b=1.0, c=0.4, delta=Order(0.5))

    banner("Coefficient transfer")
    ta, tb, tc = parameter_transfer(p)
    print(f"original   (a, b, c) = ({p.a}, {p.b}, {p.c})  at delta={p.delta.delta}")
    print(f"straightened twin    = ({ta}, {tb}, {tc})")
    print(f"the ratio b^2/(2a) is preserved: "
          f"{p.b**2 / (2 * p.a):.6f} -> {tb**2 / (2 * ta):.6f}")

    banner("Interior conjugacy residual under refinement")
    pairs = conjugacy_residual(p, (64, 128, 256))
    orders = empirical_orders(pairs)
    print(f"{'n':>6} {'residual':>14} {'order':>8}")
    for (n, res), order in zip(pairs, [float('nan')] + orders):
        tag = "" if order != order else f"{order:8.2f}"
        print(f"{n:>6} {res:>14.3e} {tag:>8}")
    print("the two routes agree faster than first order, as the grading")
    print("analysis predicts (target order 1.5).")

    banner("Exact collapse at order one")
    p1 = DriftDiffusionParams(1.0, 1.0, 0.4, Order(1.0))
    res = conjugacy_residual(p1, (64,))[0][1]
    print(f"at delta = 1 both constructions coincide: residual {res:.3e}")

    banner("Evolution of the clamped pair")
    out = mild_solution_residuals(p, 128, (0.25, 0.5, 1.0))
    print(f"stencil residual feeding the bound: {out['stencil_residual']:.3e}")
    print(f"{'t':>6} {'error':>12} {'bound':>12}")
    for rec in out["records"]:
        print(f"{rec['t']:>6} {rec['error']:>12.3e} {rec['bound']:>12.3e}")
    print("each evolution error sits inside 5 * residual * t.")


if __name__ == "__main__":
    main()
