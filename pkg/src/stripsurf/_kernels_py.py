"""Pure-Python evaluator kernels (reference implementation).

`stripsurf._kernels` is the compiled twin; both must perform the same
float64 operations in the same order so results agree bit for bit.

The squashing diffeomorphism here is sigma(t) = t / sqrt(t^2 + 1), an
odd, strictly increasing C-infinity bijection of R onto (-1, 1).  The
merge map acts on a strip R x (-1,1): on the line y = 0 it is sigma; on
other horizontal lines it is sigma between the knots x = +-1/|y| and
continues with the tangent lines beyond them, so each line maps onto R
by an increasing C^1 bijection.  The banded variant blends the raw map
with the identity so that it is exactly the identity for |y| >= 1/2, and
the chain variant repeats the banded map around every line y = 2n.
"""

import math
from array import array

BACKEND = "python"

RAW, BANDED, CHAIN = 0, 1, 2


def sigma(t):
    return t / math.sqrt(t * t + 1.0)


def sigma_prime(t):
    u = t * t + 1.0
    return 1.0 / (u * math.sqrt(u))


def merge_raw_x(x, y):
    ay = abs(y)
    if ay == 0.0:
        return sigma(x)
    k = 1.0 / ay
    if x <= -k:
        return sigma_prime(k) * (x + k) - sigma(k)
    if x >= k:
        return sigma_prime(k) * (x - k) + sigma(k)
    return sigma(x)


def merge_banded_x(x, y):
    ay = abs(y)
    if ay >= 0.5:
        return x
    rho = 2.0 * ay
    return rho * x + (1.0 - rho) * merge_raw_x(x, y)


def chain_x(x, y):
    # round-half-to-even picks a deterministic band at y = 2n +- 1/2
    n = 2.0 * round(y * 0.5)
    if abs(y - n) >= 0.5:
        return x
    return merge_banded_x(x, y - n)


def sample_rows(kind, xs, ys):
    """Row-major x' values of the selected map over the xs/ys grid."""
    fn = (merge_raw_x, merge_banded_x, chain_x)[kind]
    out = array("d", bytes(8 * len(xs) * len(ys)))
    i = 0
    for y in ys:
        for x in xs:
            out[i] = fn(x, y)
            i += 1
    return out
