"""Numerical verification suites.

Each check samples deterministically from a seed, measures a residual and
reports pass/fail against its tolerance.  Residuals are relative wherever
the reference magnitude is nonzero and absolute otherwise; every report
records which convention it used.  Default tolerances reflect double
precision error accumulation across determinants and matrix products.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .autgroup import Automorphism, apply, jacobian, random_automorphism
from .bergman import (
    KERNEL_FLOOR,
    inv_sqrt_pd,
    kernel,
    kernel_batch,
    l_matrix,
    metric,
    representative_map,
    sqrt_pd,
)
from .domain import (
    DomainParams,
    Point,
    defect,
    sample_boundary,
    sample_density_arrays,
    sample_interior,
    sample_interior_arrays,
)
from .errors import KernelZero

SUITE_NAMES = ("kernel-law", "metric-law", "cartan", "gram", "mc", "boundary")

DEFAULT_TOLERANCES = {
    "kernel-law": 1e-8,
    "metric-law": 1e-7,
    "cartan": 1e-7,
    "gram": 1e-10,
    "boundary": 1e-12,
}

# Pair sampling for the law checks stays this far from the kernel pole;
# a conditioning choice, not a correctness one.
PAIR_POLE_DISTANCE = 1e-6


@dataclass
class CheckReport:
    """Machine-readable outcome of one check."""

    name: str
    max_residual: float
    tolerance: float
    samples: int
    passed: bool
    seed: int
    residual_kind: str = "relative"
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "max_residual": self.max_residual,
            "tolerance": self.tolerance,
            "samples": self.samples,
            "passed": self.passed,
            "seed": self.seed,
            "residual_kind": self.residual_kind,
            "details": dict(self.details),
        }


def _report(name, max_residual, tolerance, samples, seed, residual_kind, **details):
    max_residual = float(max_residual)
    tolerance = float(tolerance)
    return CheckReport(
        name=name,
        max_residual=max_residual,
        tolerance=tolerance,
        samples=int(samples),
        passed=bool(max_residual <= tolerance),
        seed=int(seed),
        residual_kind=residual_kind,
        details={k: float(v) for k, v in details.items()},
    )


def sample_pairs(params: DomainParams, seed: int, count: int) -> list:
    """Interior point pairs with |1 - t| above the pole guard."""
    pairs = []
    chunk_seed = seed
    while len(pairs) < count:
        pts = sample_interior(params, chunk_seed, 2 * (count - len(pairs)) + 8)
        for i in range(0, len(pts) - 1, 2):
            p, q = pts[i], pts[i + 1]
            t = kernel(params, p, q).t_arg
            if abs(1.0 - t) > PAIR_POLE_DISTANCE:
                pairs.append((p, q))
                if len(pairs) == count:
                    break
        chunk_seed += 1
    return pairs


# ------------------------------ law checks ---------------------------------

def check_kernel_law(params, a: Automorphism, pairs, tolerance=None, seed=0) -> CheckReport:
    """Residual of K(p,q) = conj(det J(a,q)) K(a p, a q) det J(a,p), relative
    to |K(p,q)| per pair."""
    tolerance = DEFAULT_TOLERANCES["kernel-law"] if tolerance is None else tolerance
    worst = 0.0
    for p, q in pairs:
        kv = kernel(params, p, q).value
        det_p = np.linalg.det(jacobian(params, a, p))
        det_q = np.linalg.det(jacobian(params, a, q))
        image = kernel(params, apply(params, a, p), apply(params, a, q)).value
        rhs = np.conj(det_q) * image * det_p
        worst = max(worst, abs(kv - rhs) / max(abs(kv), KERNEL_FLOOR))
    return _report("kernel-law", worst, tolerance, len(pairs), seed, "relative")


def check_metric_law(params, a: Automorphism, pairs, tolerance=None, seed=0) -> CheckReport:
    """Max-norm residual of T(p,q) = conj(J(a,q)^T) T(a p, a q) J(a,p),
    relative to the max-norm of T(p,q).  Pairs where the kernel vanishes are
    skipped and counted."""
    tolerance = DEFAULT_TOLERANCES["metric-law"] if tolerance is None else tolerance
    worst = 0.0
    skipped = 0
    for p, q in pairs:
        try:
            lhs = metric(params, p, q)
            rhs = (
                jacobian(params, a, q).conj().T
                @ metric(params, apply(params, a, p), apply(params, a, q))
                @ jacobian(params, a, p)
            )
        except KernelZero:
            skipped += 1
            continue
        scale = np.max(np.abs(lhs))
        worst = max(worst, np.max(np.abs(lhs - rhs)) / max(scale, KERNEL_FLOOR))
    return _report(
        "metric-law", worst, tolerance, len(pairs), seed, "relative", skipped=skipped
    )


def check_cartan(params, a: Automorphism, points, tolerance=None, seed=0) -> CheckReport:
    """Origin-fixing automorphisms act linearly.

    Verifies, over the given interior points, that the representative map
    intertwines the action with the unitary L = l_matrix(a), that the
    reconstructed linear map T^(-1/2) L T^(1/2) reproduces the action, and
    that this matrix is exactly the block-diagonal (U, U'); the block
    deviation is reported in the details.
    """
    tolerance = DEFAULT_TOLERANCES["cartan"] if tolerance is None else tolerance
    L = l_matrix(params, a)
    o = Point.origin(params)
    t0 = metric(params, o, o)
    linear_map = inv_sqrt_pd(t0) @ L @ sqrt_pd(t0)
    block = np.zeros((params.dim, params.dim), dtype=complex)
    block[: params.n, : params.n] = a.U
    block[params.n :, params.n :] = a.Uprime
    block_residual = float(np.max(np.abs(linear_map - block)))
    worst_comm = 0.0
    worst_lin = 0.0
    for p in points:
        image = apply(params, a, p)
        sig_p = representative_map(params, p)
        sig_image = representative_map(params, image)
        denom_c = max(np.max(np.abs(sig_image)), KERNEL_FLOOR)
        worst_comm = max(worst_comm, np.max(np.abs(sig_image - L @ sig_p)) / denom_c)
        denom_l = max(np.max(np.abs(image.coords())), KERNEL_FLOOR)
        worst_lin = max(
            worst_lin, np.max(np.abs(image.coords() - linear_map @ p.coords())) / denom_l
        )
    return _report(
        "cartan",
        max(worst_comm, worst_lin),
        tolerance,
        len(points),
        seed,
        "relative",
        commutation_residual=worst_comm,
        linearity_residual=worst_lin,
        block_residual=block_residual,
    )


def check_gram_psd(params, points, tol=None, seed=0) -> CheckReport:
    """The kernel Gram matrix [K(p_i, p_j)] must be positive semidefinite.

    The eigenvalue floor is applied to the diagonally normalized Gram
    D^(-1/2) G D^(-1/2), which shares positivity with G but keeps the
    eigensolver's backward error scale-free; near-boundary points can push
    raw diagonal entries to 1e10, where an absolute floor on the raw
    spectrum would only measure rounding.  The raw minimum eigenvalue is
    reported in the details.
    """
    tol = DEFAULT_TOLERANCES["gram"] if tol is None else tol
    npts = len(points)
    G = np.empty((npts, npts), dtype=complex)
    for i in range(npts):
        for j in range(i, npts):
            G[i, j] = kernel(params, points[i], points[j]).value
            G[j, i] = np.conj(G[i, j])
    G = (G + G.conj().T) / 2.0
    d = np.sqrt(np.abs(np.diagonal(G).real))
    normalized = G / np.outer(d, d)
    min_norm = float(np.linalg.eigvalsh(normalized).min())
    min_raw = float(np.linalg.eigvalsh(G).min())
    return _report(
        "gram",
        max(0.0, -min_norm),
        tol,
        npts,
        seed,
        "absolute (diagonal-normalized Gram)",
        min_eigenvalue_normalized=min_norm,
        min_eigenvalue_raw=min_raw,
    )


def mc_reproduce_constant(params: DomainParams, seed: int, samples: int = 1_000_000) -> CheckReport:
    """Importance-sampling check that the kernel integrates the constant
    function 1 back to 1 at the origin (n = m = 1 only).

    Draws from the interior sampler, whose density is known in closed form,
    and averages K((0,0), q) / density(q).  The integrand decays exactly
    like the proposal here, so the weights are constant up to rounding and
    the standard error sits at float-noise level.  Passes when
    |estimate - 1| <= max(0.02, 4 stderr).
    """
    if params.n != 1 or params.m != 1:
        raise ValueError("the reproducing check is defined for n = m = 1")
    if samples < 100_000:
        raise ValueError("samples must be >= 1e5")
    Z, Zeta = sample_interior_arrays(params, seed, samples)
    values, _ = kernel_batch(params, Point.origin(params), Z, Zeta)
    weights = values.real / sample_density_arrays(params, Z)
    estimate = float(weights.mean())
    stderr = float(weights.std(ddof=1) / math.sqrt(samples))
    tolerance = max(0.02, 4.0 * stderr)
    return _report(
        "mc",
        abs(estimate - 1.0),
        tolerance,
        samples,
        seed,
        "absolute",
        estimate=estimate,
        stderr=stderr,
    )


def check_boundary_invariance(params, a: Automorphism, boundary_points, tolerance=None, seed=0) -> CheckReport:
    """Boundary points must stay on the boundary: max |defect(a p)|."""
    tolerance = DEFAULT_TOLERANCES["boundary"] if tolerance is None else tolerance
    worst = max(abs(defect(params, apply(params, a, p))) for p in boundary_points)
    return _report("boundary", worst, tolerance, len(boundary_points), seed, "absolute")


# ------------------------------ suite runner --------------------------------

def _merge(reports) -> CheckReport:
    """Merge same-named reports by max residual (checks are seed-split);
    sample and skip counts accumulate."""
    first = reports[0]
    worst = max(r.max_residual for r in reports)
    details = {}
    for r in reports:
        for k, v in r.details.items():
            if k == "skipped":
                details[k] = details.get(k, 0.0) + v
            else:
                details[k] = max(details.get(k, v), v)
    return _report(
        first.name,
        worst,
        first.tolerance,
        sum(r.samples for r in reports),
        first.seed,
        first.residual_kind,
        **details,
    )


def run_suite(params: DomainParams, seed: int, suites=("all",), samples=None, tolerances=None):
    """Run the selected verification suites and return their reports.

    `suites` is an iterable of names from SUITE_NAMES, or ("all",), in which
    case the Monte-Carlo check is included only where it is defined
    (n = m = 1).  `samples` overrides the Monte-Carlo sample count and
    `tolerances` maps suite names to tolerance overrides.
    """
    tolerances = dict(tolerances or {})
    wanted = list(SUITE_NAMES) if "all" in suites else list(suites)
    if "all" in suites and not (params.n == 1 and params.m == 1):
        wanted.remove("mc")
    unknown = set(wanted) - set(SUITE_NAMES)
    if unknown:
        raise ValueError(f"unknown suites: {sorted(unknown)}")

    reports = []
    for name in wanted:
        tol = tolerances.get(name)
        if name == "kernel-law":
            parts = [
                check_kernel_law(
                    params,
                    random_automorphism(params, seed + 101 + j),
                    sample_pairs(params, seed + 301 + j, 10),
                    tolerance=tol,
                    seed=seed,
                )
                for j in range(10)
            ]
            reports.append(_merge(parts))
        elif name == "metric-law":
            parts = [
                check_metric_law(
                    params,
                    random_automorphism(params, seed + 501 + j),
                    sample_pairs(params, seed + 701 + j, 5),
                    tolerance=tol,
                    seed=seed,
                )
                for j in range(10)
            ]
            reports.append(_merge(parts))
        elif name == "cartan":
            parts = []
            for j in range(10):
                rot = random_automorphism(params, seed + 901 + j)
                fixing = Automorphism(rot.U, rot.Uprime, np.zeros(params.n))
                pts = sample_interior(params, seed + 1101 + j, 10)
                parts.append(check_cartan(params, fixing, pts, tolerance=tol, seed=seed))
            reports.append(_merge(parts))
        elif name == "gram":
            pts = sample_interior(params, seed + 1301, 40)
            reports.append(check_gram_psd(params, pts, tol=tol, seed=seed))
        elif name == "mc":
            rep = mc_reproduce_constant(params, seed + 1501, samples or 1_000_000)
            rep.seed = seed  # report the suite's root seed like the other checks
            reports.append(rep)
        elif name == "boundary":
            parts = [
                check_boundary_invariance(
                    params,
                    random_automorphism(params, seed + 1701 + j),
                    sample_boundary(params, seed + 1901 + j, 50),
                    tolerance=tol,
                    seed=seed,
                )
                for j in range(4)
            ]
            reports.append(_merge(parts))
    return reports
