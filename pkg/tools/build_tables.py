"""Write src/spurion/_tables.py from trace-simulation JSON output.

    python tools/build_tables.py FINE.json [COARSE.json]

With two runs (steps T and T/2) moments are Richardson-extrapolated,
``m_inf = 2 m_T - m_{T/2}``, removing the O(1/T) discretisation bias.
"""
import json
import sys
from pathlib import Path

from statsmodels.tsa.vector_ar.vecm import c_sjt

HEADER = '''"""Trace-test tables for the two deterministic cases.

TRACE_MOMENTS: mean and variance of the limiting trace distribution with
n = k - r common trends (n = 1..12), from simulation of the Brownian
functionals (tools/simulate_trace_moments.py, 100k replications, Richardson
extrapolation over 500 and 1000 steps); the p-value is the upper tail of the
gamma distribution with these two moments.

TRACE_CRIT: published 90/95/99% trace critical values, used to cross-check
the gamma approximation.
"""

'''

# critical values come from statsmodels' copy of the published tables
# (case -1: no deterministic terms, case 0: unrestricted constant)
CRIT = {
    "no_intercept": [tuple(float(x) for x in c_sjt(n, -1)) for n in range(1, 13)],
    "unrestricted_constant": [tuple(float(x) for x in c_sjt(n, 0)) for n in range(1, 13)],
}
CASES = {"none": "no_intercept", "uc": "unrestricted_constant"}


def load(path):
    text = Path(path).read_text().strip().splitlines()
    return json.loads(text[-1])


def main():
    fine = load(sys.argv[1])
    coarse = load(sys.argv[2]) if len(sys.argv) > 2 else None
    moments = {}
    for short, name in CASES.items():
        rows = []
        for n in range(1, 13):
            m, v = fine[f"{short}:{n}"][:2]
            if coarse is not None:
                mc, vc = coarse[f"{short}:{n}"][:2]
                m, v = 2 * m - mc, 2 * v - vc
            rows.append((round(m, 4), round(v, 4)))
        moments[name] = rows
    if "unrestricted_constant" in moments:
        # n = 1 with an unrestricted constant is exactly chi-square(1)
        moments["unrestricted_constant"][0] = (1.0, 2.0)
    out = [HEADER, "TRACE_MOMENTS = {\n"]
    for name, rows in moments.items():
        out.append(f'    "{name}": (\n')
        out += [f"        ({m!r}, {v!r}),\n" for m, v in rows]
        out.append("    ),\n")
    out.append("}\n\nTRACE_CRIT = {\n")
    for name, rows in CRIT.items():
        out.append(f'    "{name}": (\n')
        out += [f"        {r!r},\n" for r in rows]
        out.append("    ),\n")
    out.append("}\n")
    Path(__file__).resolve().parents[1].joinpath("src/spurion/_tables.py").write_text("".join(out))


if __name__ == "__main__":
    main()
