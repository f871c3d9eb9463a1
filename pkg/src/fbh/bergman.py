"""Bergman kernel of the domain, its log-derivatives and metric.

The kernel in the (z, zeta) coordinates is

    K(p, q) = mu^n exp(m mu <z, z'>) / pi^(n+m) * F_m(t),
    t = exp(mu <z, z'>) <zeta, zeta'>,

where <u, w> = sum_i u_i conj(w_i) (linear in the first slot) and F_m is the
m-th derivative of the order -n polylogarithm, so F_m' = F_{m+1}.  All
derivative code below is analytic through that recursion; finite differences
appear only in the test-suite as an independent oracle.

Wirtinger convention: d/dz treats conj(z) as constant.  The metric entry
(i, k) is d^2 log K / (d conj(w_i) d z_k), rows indexed by the conjugated
second argument and columns by the first argument.
"""

import math
from dataclasses import dataclass

import numpy as np

from .autgroup import Automorphism, jacobian
from .domain import DomainParams, Point, check_point
from .errors import (
    DimensionMismatch,
    DoesNotFixOrigin,
    KernelZero,
    NotHermitian,
    NotPositiveDefinite,
)
from .polylog import polylog_deriv

# |K| below this counts as a kernel zero: the transformation law for the
# metric is only asserted where the kernel does not vanish.
KERNEL_FLOOR = 1e-300

HERMITIAN_TOL = 1e-10
EIGEN_FLOOR = 1e-10


def inner(u, w) -> complex:
    """Hermitian product sum_i u_i conj(w_i), linear in the first slot."""
    u = np.asarray(u, dtype=complex)
    w = np.asarray(w, dtype=complex)
    if u.shape != w.shape:
        raise DimensionMismatch(f"inner product shapes {u.shape} != {w.shape}")
    return complex(np.sum(u * np.conj(w)))


@dataclass(frozen=True)
class KernelValue:
    """Kernel value together with the intermediate argument t.

    On the diagonal p = q the value is real positive and t lies in [0, 1).
    """

    value: complex
    t_arg: complex


def _prefactor(params: DomainParams) -> float:
    return params.mu ** params.n / math.pi ** params.dim


def kernel(params: DomainParams, p: Point, q: Point) -> KernelValue:
    """Evaluate K(p, q); Hermitian in its arguments.

    Raises PoleProximity when t falls inside the guard band around 1, which
    on the diagonal only happens in the boundary limit.
    """
    check_point(params, p)
    check_point(params, q)
    s = inner(p.z, q.z)
    t = np.exp(params.mu * s) * inner(p.zeta, q.zeta)
    value = _prefactor(params) * np.exp(params.m * params.mu * s) * polylog_deriv(
        params.n, params.m, t
    )
    return KernelValue(value=complex(value), t_arg=complex(t))


def kernel_batch(params: DomainParams, p: Point, Z: np.ndarray, Zeta: np.ndarray):
    """Kernel values K(p, q_i) against a batch of second arguments.

    Z has shape (count, n) and Zeta (count, m); returns (values, t_args) as
    complex arrays of length count.  Same formula as kernel(), broadcast.
    """
    check_point(params, p)
    Z = np.asarray(Z, dtype=complex)
    Zeta = np.asarray(Zeta, dtype=complex)
    if Z.ndim != 2 or Z.shape[1] != params.n or Zeta.shape != (Z.shape[0], params.m):
        raise DimensionMismatch("batch shapes must be (count, n) and (count, m)")
    s = Z.conj() @ p.z
    t = np.exp(params.mu * s) * (Zeta.conj() @ p.zeta)
    values = _prefactor(params) * np.exp(params.m * params.mu * s) * polylog_deriv(
        params.n, params.m, t
    )
    return values, t


def _log_kernel_pieces(params: DomainParams, p: Point, q: Point):
    """Shared intermediates (s, t) plus the F_m chain with a zero guard."""
    s = inner(p.z, q.z)
    t = np.exp(params.mu * s) * inner(p.zeta, q.zeta)
    fm = polylog_deriv(params.n, params.m, t)
    value = _prefactor(params) * np.exp(params.m * params.mu * s) * fm
    if abs(value) < KERNEL_FLOOR:
        raise KernelZero(f"|K| = {abs(value):.3e} below {KERNEL_FLOOR}")
    return s, t, fm


def log_kernel_grad_wbar(params: DomainParams, p: Point, q: Point) -> np.ndarray:
    """Conjugate-Wirtinger gradient of log K(p, w) in w at w = q.

    From log K = n log mu - (n+m) log pi + m mu <z, z'> + log F_m(t):

        d/d conj(z'_i)    = mu z_i (m + t F_{m+1}(t)/F_m(t)),
        d/d conj(zeta'_i) = exp(mu s) zeta_i F_{m+1}(t)/F_m(t).
    """
    check_point(params, p)
    check_point(params, q)
    s, t, fm = _log_kernel_pieces(params, p, q)
    g = polylog_deriv(params.n, params.m + 1, t) / fm
    grad_z = params.mu * p.z * (params.m + t * g)
    grad_zeta = np.exp(params.mu * s) * p.zeta * g
    return np.concatenate([grad_z, grad_zeta])


def metric(params: DomainParams, p: Point, q: Point) -> np.ndarray:
    """Mixed Wirtinger Hessian of log K: entry (i, k) is
    d^2 log K / (d conj(w_i) d z_k) evaluated at (p, q).

    Analytic blocks, with E = exp(mu s), G = F_{m+1}/F_m,
    H = F_{m+2}/F_m - G^2 and W = G + t H:

        [ mu (m + t G) I_n + mu^2 t W z zbar'      mu E W z zetabar'        ]
        [ mu E W zeta zbar'                        E G I_m + E^2 H zeta zetabar' ]

    Hermitian positive definite on the diagonal; at q = origin it collapses
    to the constant diag(m mu I_n, (F_{m+1}(0)/F_m(0)) I_m).
    """
    check_point(params, p)
    check_point(params, q)
    s, t, fm = _log_kernel_pieces(params, p, q)
    E = np.exp(params.mu * s)
    G = polylog_deriv(params.n, params.m + 1, t) / fm
    H = polylog_deriv(params.n, params.m + 2, t) / fm - G * G
    W = G + t * H
    mu = params.mu
    zbar = q.z.conj()
    zetabar = q.zeta.conj()
    zz = mu * (params.m + t * G) * np.eye(params.n) + mu * mu * t * W * np.outer(p.z, zbar)
    z_zeta = mu * E * W * np.outer(p.z, zetabar)
    zeta_z = mu * E * W * np.outer(p.zeta, zbar)
    zeta_zeta = E * G * np.eye(params.m) + E * E * H * np.outer(p.zeta, zetabar)
    return np.block([[zz, z_zeta], [zeta_z, zeta_zeta]])


def _checked_hermitian(M) -> np.ndarray:
    M = np.asarray(M, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise NotHermitian(f"expected a square matrix, got shape {M.shape}")
    dev = np.max(np.abs(M - M.conj().T))
    if dev > HERMITIAN_TOL:
        raise NotHermitian(f"Hermitian deviation {dev:.3e} exceeds {HERMITIAN_TOL}")
    return (M + M.conj().T) / 2.0


def _eig_power(M, power: float) -> np.ndarray:
    Mh = _checked_hermitian(M)
    w, V = np.linalg.eigh(Mh)
    if w.min() <= EIGEN_FLOOR:
        raise NotPositiveDefinite(
            f"minimum eigenvalue {w.min():.3e} at or below floor {EIGEN_FLOOR}"
        )
    R = (V * w ** power) @ V.conj().T
    return (R + R.conj().T) / 2.0


def sqrt_pd(M) -> np.ndarray:
    """Hermitian positive-definite square root via eigendecomposition."""
    return _eig_power(M, 0.5)


def inv_sqrt_pd(M) -> np.ndarray:
    """Hermitian positive-definite inverse square root."""
    return _eig_power(M, -0.5)


def representative_map(params: DomainParams, p: Point) -> np.ndarray:
    """Origin-normalized representative of p:

        T(0,0)^(-1/2) grad_wbar log [K(p, w) / K(0, w)] at w = 0.

    Both gradients are evaluated; their difference is what gets normalized.
    On this domain the result coincides with T(0,0)^(1/2) p, which the
    test-suite verifies rather than assumes.
    """
    check_point(params, p)
    o = Point.origin(params)
    t0 = metric(params, o, o)
    g = log_kernel_grad_wbar(params, p, o) - log_kernel_grad_wbar(params, o, o)
    return inv_sqrt_pd(t0) @ g


def l_matrix(params: DomainParams, phi: Automorphism) -> np.ndarray:
    """The unitary T(0,0)^(-1/2) (J(phi, 0)^H)^(-1) T(0,0)^(1/2).

    Requires phi to fix the origin (||v|| <= 1e-12); this matrix conjugates
    the representative map of phi into a linear action.
    """
    if float(np.linalg.norm(phi.v)) > 1e-12:
        raise DoesNotFixOrigin(f"translation part has norm {np.linalg.norm(phi.v):.3e}")
    o = Point.origin(params)
    J0 = jacobian(params, phi, o)
    t0 = metric(params, o, o)
    middle = np.linalg.inv(J0.conj().T)
    return inv_sqrt_pd(t0) @ middle @ sqrt_pd(t0)
