"""Exact closed forms for polylogarithms of negative integer order.

For n >= 1 the series sum_{k>=1} k^n t^k is a rational function of t whose
only pole sits at t = 1, and every t-derivative stays in that family with
the pole order raised by one:

    (d/dt)^m sum_{k>=1} k^n t^k  =  A(t) / (1 - t)^(n+m+1),

where A is a degree-n polynomial with integer coefficients,

    A(t) = m! sum_{j=0..n} (-1)^(n+j) (m+1)_j S(n+1, j+1) (1-t)^(n-j),

S(.,.) the Stirling numbers of the second kind and (x)_j the rising
factorial.  All coefficient arithmetic here is exact (Python integers);
conversion to floating point happens once, at evaluation time.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import PoleProximity

# Evaluation guard around the t = 1 singularity.
EPS_POLE = 1e-12

# Supported range for the series order n and derivative order m.  Exact
# arithmetic removes correctness risk beyond this, but the cap keeps
# coefficient sizes bounded in practice.
MAX_ORDER = 64


def _check_orders(n: int, m: int) -> None:
    if not 1 <= n <= MAX_ORDER:
        raise ValueError(f"series order n must be in 1..{MAX_ORDER}, got {n}")
    if not 0 <= m <= MAX_ORDER:
        raise ValueError(f"derivative order m must be in 0..{MAX_ORDER}, got {m}")


def stirling2(n: int, k: int) -> int:
    """Stirling number of the second kind S(n, k), exact.

    Computed bottom-up from S(n, k) = k S(n-1, k) + S(n-1, k-1).  Returns 0
    outside 0 <= k <= n, so the function is total.
    """
    if n < 0 or k < 0 or k > n:
        return 0
    # Row-by-row so every call is pure; no module-level cache to guard.
    row = [1]  # S(0, .)
    for i in range(1, n + 1):
        new = [0] * (i + 1)
        for j in range(1, i + 1):
            new[j] = j * (row[j] if j < i else 0) + row[j - 1]
        row = new
    return row[k]


def pochhammer(x: int, j: int) -> int:
    """Rising factorial x (x+1) ... (x+j-1); the empty product is 1."""
    if j < 0:
        raise ValueError("pochhammer needs j >= 0")
    out = 1
    for i in range(j):
        out *= x + i
    return out


@dataclass(frozen=True)
class PolyExact:
    """Dense polynomial with exact integer coefficients, lowest degree first.

    Trailing (highest-degree) zero coefficients are stripped on
    construction; the zero polynomial has an empty coefficient tuple.
    """

    coeffs: tuple

    def __post_init__(self):
        c = tuple(int(v) for v in self.coeffs)
        while c and c[-1] == 0:
            c = c[:-1]
        object.__setattr__(self, "coeffs", c)

    @property
    def degree(self) -> int:
        """Degree, or -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def __add__(self, other: "PolyExact") -> "PolyExact":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, v in enumerate(b):
            out[i] += v
        return PolyExact(tuple(out))

    def __mul__(self, other: "PolyExact") -> "PolyExact":
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return PolyExact(())
        out = [0] * (len(a) + len(b) - 1)
        for i, u in enumerate(a):
            for j, v in enumerate(b):
                out[i + j] += u * v
        return PolyExact(tuple(out))

    def scale(self, k: int) -> "PolyExact":
        return PolyExact(tuple(k * v for v in self.coeffs))

    def derivative(self) -> "PolyExact":
        c = self.coeffs
        return PolyExact(tuple(i * c[i] for i in range(1, len(c))))

    def eval(self, t):
        """Horner evaluation in complex floating point; t may be an array."""
        acc = np.asarray(t, dtype=complex) * 0.0
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc


@dataclass(frozen=True)
class RationalForm:
    """numerator(t) / (1 - t)**pole_order with an exact integer numerator."""

    numerator: PolyExact
    pole_order: int


def _one_minus_t_power(k: int) -> PolyExact:
    """(1 - t)^k expanded with exact binomials."""
    return PolyExact(tuple((-1) ** i * math.comb(k, i) for i in range(k + 1)))


def a_poly(n: int, m: int) -> PolyExact:
    """Exact numerator of the m-th derivative of sum_{k>=1} k^n t^k.

    The result has degree exactly n, and a_poly(n, m) / (1-t)^(n+m+1) equals
    that derivative everywhere off t = 1.  For m >= 1 every coefficient is a
    positive integer; for m = 0 the constant term is 0 and the rest are
    positive.
    """
    _check_orders(n, m)
    total = PolyExact(())
    fact_m = math.factorial(m)
    for j in range(n + 1):
        w = (-1) ** (n + j) * fact_m * pochhammer(m + 1, j) * stirling2(n + 1, j + 1)
        total = total + _one_minus_t_power(n - j).scale(w)
    return total


def li_neg_rational(n: int) -> RationalForm:
    """Closed form of the order -n polylogarithm as numerator / (1-t)^(n+1)."""
    _check_orders(n, 0)
    return RationalForm(numerator=a_poly(n, 0), pole_order=n + 1)


def polylog_deriv(n: int, m: int, t):
    """m-th derivative of the order -n polylogarithm at t.

    Accepts a complex scalar or a numpy array of evaluation points.  Raises
    PoleProximity when any point lies within EPS_POLE of the pole at t = 1.
    """
    _check_orders(n, m)
    tt = np.asarray(t, dtype=complex)
    if np.any(np.abs(1.0 - tt) < EPS_POLE):
        raise PoleProximity(f"|1 - t| < {EPS_POLE} at the pole of the order -{n} polylogarithm")
    val = a_poly(n, m).eval(tt) / (1.0 - tt) ** (n + m + 1)
    if np.ndim(t) == 0:
        return complex(val)
    return val
