"""Target values for the acceptance suite.

Polynomials are stored as {(deg_X, deg_z, deg_t): coefficient}; the CLT table
as {(tau, gamma): (mu, sigma^2)} at six printed decimals.
"""

from __future__ import annotations

I1_COEFFS = (1, 2, 1)  # z^2 .. z^4
I2_COEFFS = (17, 160, 566, 1004, 961, 476, 96)  # z^4 .. z^10

P1_TERMS = {
    (0, 0, 0): -1, (1, 0, 0): 1, (2, 1, 0): 3, (3, 1, 0): -4,
    (4, 2, 0): -2, (4, 2, 1): -1, (5, 2, 0): 6, (6, 3, 0): -2,
    (7, 3, 0): -4, (8, 4, 0): 3, (9, 4, 0): 1, (10, 5, 0): -1,
}

P2_TERMS = {
    (0, 0, 0): -1, (1, 0, 0): 1, (2, 1, 0): 9, (3, 1, 0): -10,
    (4, 2, 0): -35, (4, 2, 1): -1, (5, 2, 0): 45,
    (6, 3, 0): 75, (6, 3, 1): 6, (7, 3, 0): -120,
    (8, 4, 0): -90, (8, 4, 1): -15, (8, 4, 2): -17, (9, 4, 0): 210,
    (10, 5, 0): 42, (10, 5, 1): 20, (10, 5, 2): -58, (11, 5, 0): -252,
    (12, 6, 0): 42, (12, 6, 1): -15, (12, 6, 2): -21, (13, 6, 0): 210,
    (14, 7, 0): -90, (14, 7, 1): 6, (15, 7, 0): -120,
    (16, 8, 0): 75, (16, 8, 1): -1, (17, 8, 0): 45,
    (18, 9, 0): -35, (19, 9, 0): -10, (20, 10, 0): 9, (21, 10, 0): 1, (22, 11, 0): -1,
}

CLT_TABLE = {
    (1, 1): (0.091240, 0.021067), (2, 1): (0.041235, 0.009358), (3, 1): (0.026632, 0.006043),
    (4, 1): (0.019706, 0.004481), (5, 1): (0.015666, 0.003571), (6, 1): (0.013017, 0.002974),
    (1, 2): (0.112037, 0.022088), (2, 2): (0.050436, 0.009768), (3, 2): (0.032564, 0.006288),
    (4, 2): (0.024104, 0.004657), (5, 2): (0.019170, 0.003709), (6, 2): (0.015935, 0.003087),
}

# expected genus at n = 100 for gamma = 1, keyed by tau
MEAN_AT_100 = {2: 4.12, 3: 2.66, 4: 1.97}
