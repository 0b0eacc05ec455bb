"""Trace-test tables for the two deterministic cases.

TRACE_MOMENTS: mean and variance of the limiting trace distribution with
n = k - r common trends (n = 1..12), from simulation of the Brownian
functionals (tools/simulate_trace_moments.py, 100k replications, Richardson
extrapolation over 500 and 1000 steps); the p-value is the upper tail of the
gamma distribution with these two moments.

TRACE_CRIT: published 90/95/99% trace critical values, used to cross-check
the gamma approximation.
"""

TRACE_MOMENTS = {
    "no_intercept": (
        (1.1373, 2.2304),
        (6.0857, 10.6479),
        (15.0798, 24.9905),
        (28.0923, 45.5037),
        (45.0332, 73.6636),
        (66.0505, 105.8295),
        (91.1576, 146.8105),
        (119.9382, 189.9171),
        (152.8865, 242.9397),
        (189.808, 304.7264),
        (230.8969, 352.493),
        (275.8928, 430.031),
    ),
    "unrestricted_constant": (
        (1.0, 2.0),
        (8.343, 14.5843),
        (19.5427, 32.4351),
        (34.6311, 54.8741),
        (53.585, 82.8383),
        (76.8726, 117.2171),
        (103.7281, 157.3096),
        (134.6822, 209.6868),
        (169.7127, 255.5774),
        (208.906, 317.287),
        (251.8066, 384.3597),
        (298.859, 450.0686),
    ),
}

TRACE_CRIT = {
    "no_intercept": (
        (2.9762, 4.1296, 6.9406),
        (10.4741, 12.3212, 16.364),
        (21.7781, 24.2761, 29.5147),
        (37.0339, 40.1749, 46.5716),
        (56.2839, 60.0627, 67.6367),
        (79.5329, 83.9383, 92.7136),
        (106.7351, 111.7797, 121.7375),
        (137.9954, 143.6691, 154.7977),
        (173.2292, 179.5199, 191.8122),
        (212.4721, 219.4051, 232.8291),
        (255.6732, 263.2603, 277.9962),
        (302.9054, 311.1288, 326.9716),
    ),
    "unrestricted_constant": (
        (2.7055, 3.8415, 6.6349),
        (13.4294, 15.4943, 19.9349),
        (27.0669, 29.7961, 35.4628),
        (44.4929, 47.8545, 54.6815),
        (65.8202, 69.8189, 77.8202),
        (91.109, 95.7542, 104.9637),
        (120.3673, 125.6185, 135.9825),
        (153.6341, 159.529, 171.0905),
        (190.8714, 197.3772, 210.0366),
        (232.103, 239.2468, 253.2526),
        (277.374, 285.1402, 300.2821),
        (326.5354, 334.9795, 351.215),
    ),
}
