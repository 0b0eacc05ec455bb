"""Simulate the asymptotic Johansen trace distribution and fit gamma moments.

Discretised Brownian functionals with T steps; prints the mean, variance and
the 90/95/99% quantiles per (case, n).  Output feeds the response surfaces in
``spurion.johansen._tables``.

    python tools/simulate_trace_moments.py --reps 60000 --steps 1000
"""
import argparse
import json

import numpy as np


def trace_draws(n, case, reps, steps, rng, batch=400):
    out = []
    t = np.arange(steps, dtype=float)
    while sum(len(o) for o in out) < reps:
        e = rng.standard_normal((batch, steps, n))
        w = np.cumsum(e, axis=1)
        f = np.concatenate([np.zeros((batch, 1, n)), w[:, :-1, :]], axis=1)
        if case == "uc":
            f[:, :, n - 1] = t
            f = f - f.mean(axis=1, keepdims=True)
        m = np.einsum("bti,btj->bij", f, f)
        c = np.einsum("bti,btj->bij", f, e)
        sol = np.linalg.solve(m, c)
        out.append(np.einsum("bij,bij->b", c, sol))
    return np.concatenate(out)[:reps]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--reps", type=int, default=60000)
    ap.add_argument("--steps", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=20240601)
    ap.add_argument("--nmax", type=int, default=12)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)
    res = {}
    for case in ("none", "uc"):
        for n in range(1, args.nmax + 1):
            d = trace_draws(n, case, args.reps, args.steps, rng)
            q = np.quantile(d, [0.90, 0.95, 0.99])
            res[f"{case}:{n}"] = [float(d.mean()), float(d.var()), *map(float, q)]
            print(case, n, " ".join(f"{v:.4f}" for v in res[f"{case}:{n}"]), flush=True)
    print(json.dumps(res))


if __name__ == "__main__":
    main()
