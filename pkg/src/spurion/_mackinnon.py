"""Dickey-Fuller tau tables, single-series case.

Asymptotic p-value response surfaces from MacKinnon (1994), "Approximate
asymptotic distribution functions for unit-root and cointegration tests",
JBES 12(2); finite-sample critical-value surfaces from MacKinnon (2010),
"Critical values for cointegration tests", QED working paper 1227.
Keys: ``n`` zero mean, ``c`` single mean, ``ct`` trend.
"""
import numpy as np

# p = Phi(sum_i coef[i] * tau**i); "small" applies for tau <= TAU_STAR.
TAU_STAR = {"n": -1.04, "c": -1.61, "ct": -2.89}
TAU_MIN = {"n": -19.04, "c": -18.83, "ct": -16.18}
TAU_MAX = {"n": np.inf, "c": 2.74, "ct": 0.7}

SMALL_P = {
    "n": (0.6344, 1.2378, 3.2496e-2),
    "c": (2.1659, 1.4412, 3.8269e-2),
    "ct": (3.2512, 1.6047, 4.9588e-2),
}
LARGE_P = {
    "n": (0.4797, 9.3557e-1, -0.6999e-1, 3.3066e-2),
    "c": (1.7339, 9.3202e-1, -1.2745e-1, -1.0368e-2),
    "ct": (2.5261, 6.1654e-1, -3.7956e-1, -6.0285e-2),
}

# cv(T) = b0 + b1/T + b2/T^2 + b3/T^3 at the 1%, 5%, 10% levels.
CRIT_2010 = {
    "n": ((-2.56574, -2.2358, -3.627, 0.0),
          (-1.94100, -0.2686, -3.365, 31.223),
          (-1.61682, 0.2656, -2.714, 25.364)),
    "c": ((-3.43035, -6.5393, -16.786, -79.433),
          (-2.86154, -2.8903, -4.234, -40.040),
          (-2.56677, -1.5384, -2.809, 0.0)),
    "ct": ((-3.95877, -9.0531, -28.428, -134.155),
           (-3.41049, -4.3904, -9.036, -45.374),
           (-3.12705, -2.5856, -3.925, -22.380)),
}
CRIT_LEVELS = (0.01, 0.05, 0.10)
