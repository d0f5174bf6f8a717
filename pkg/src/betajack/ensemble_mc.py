"""Dense and tridiagonal samplers, quaternion matrix algebra, and Monte Carlo
cross-checks of the matrix-level duality identities.

A Hermitian beta-matrix (beta in {1, 2, 4}) is stored as its real component
matrices: X = X^0 + sum_k X^k e_k with X^0 symmetric and the X^k
antisymmetric.  The matrix weight exp(-tr X^2), written out in independent
elements, fixes the componentwise variances: 1/2 on the diagonal and 1/4
for every independent off-diagonal component.  Quaternion traces and
determinants go through the 2N x 2N complex representation, whose spectrum
is doubly degenerate; the determinant is the product over one eigenvalue of
each pair.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Sequence, Tuple

import numpy as np
from scipy import integrate

from .report import CheckReport

PAIR_TOL = 1e-9


@dataclass
class BetaHermitian:
    """Hermitian beta-matrix: symmetric X^0 plus antisymmetric X^1..X^{beta-1}."""

    beta: int
    components: np.ndarray  # shape (beta, N, N)

    def __post_init__(self):
        if self.beta not in (1, 2, 4):
            raise ValueError("matrix models exist for beta in {1, 2, 4}")
        if self.components.shape[0] != self.beta:
            raise ValueError("component count must equal beta")
        if not np.allclose(self.components[0], self.components[0].T):
            raise ValueError("X^0 must be symmetric")
        for k in range(1, self.beta):
            if not np.allclose(self.components[k], -self.components[k].T):
                raise ValueError("X^k must be antisymmetric for k >= 1")

    @property
    def n(self) -> int:
        return self.components.shape[1]

    @staticmethod
    def identity(beta: int, n: int) -> "BetaHermitian":
        comps = np.zeros((beta, n, n))
        comps[0] = np.eye(n)
        return BetaHermitian(beta, comps)


def pauli_rep(x: BetaHermitian) -> np.ndarray:
    """Complex representation: N x N (beta <= 2) or 2N x 2N (beta = 4)."""
    comps = x.components
    if x.beta == 1:
        return comps[0].astype(complex)
    if x.beta == 2:
        return comps[0] + 1j * comps[1]
    n = x.n
    out = np.zeros((2 * n, 2 * n), dtype=complex)
    a = comps[0] + 1j * comps[1]
    b = comps[2] + 1j * comps[3]
    out[0::2, 0::2] = a
    out[0::2, 1::2] = b
    out[1::2, 0::2] = -b.conj()
    out[1::2, 1::2] = a.conj()
    return out


def quat_matmul(x: BetaHermitian, y: BetaHermitian) -> np.ndarray:
    """Product in the complex representation (result need not be Hermitian)."""
    return pauli_rep(x) @ pauli_rep(y)


def re_trace(x: BetaHermitian) -> float:
    """Real trace; for beta = 4 this is half the trace of the representation."""
    if x.beta == 4:
        return float(np.trace(pauli_rep(x)).real) / 2.0
    return float(np.trace(x.components[0]))


def eigenvalues(x: BetaHermitian) -> np.ndarray:
    """The N real eigenvalues; the beta = 4 doublets are deduplicated."""
    if x.beta == 4:
        spectrum = np.linalg.eigvalsh(pauli_rep(x))
        return _halve_paired_spectrum(spectrum)
    return np.linalg.eigvalsh(pauli_rep(x))


def _halve_paired_spectrum(spectrum: np.ndarray) -> np.ndarray:
    scale = max(1.0, float(np.max(np.abs(spectrum))))
    pairs = spectrum.reshape(-1, 2)
    gaps = np.abs(pairs[:, 0] - pairs[:, 1])
    if np.any(gaps > PAIR_TOL * scale):
        raise ArithmeticError(
            f"spectrum not doubly degenerate: max pair gap {gaps.max():.3e}"
        )
    return pairs.mean(axis=1)


def qdet(x: BetaHermitian) -> float:
    """Determinant; for beta = 4 the square root of the representation's determinant,
    taken as the product over one eigenvalue of each Kramers pair."""
    return float(np.prod(eigenvalues(x)))


def sample_dense(beta: int, n: int, rng: np.random.Generator) -> BetaHermitian:
    """Draw from the matrix weight exp(-tr X^2)."""
    comps = np.zeros((beta, n, n))
    diag = rng.standard_normal(n) / math.sqrt(2.0)
    upper = rng.standard_normal((n, n)) / 2.0
    sym = np.triu(upper, 1)
    comps[0] = sym + sym.T + np.diag(diag)
    for k in range(1, beta):
        upper = rng.standard_normal((n, n)) / 2.0
        anti = np.triu(upper, 1)
        comps[k] = anti - anti.T
    return BetaHermitian(beta, comps)


def tr_x2(x: BetaHermitian) -> float:
    comps = x.components
    total = float(np.sum(comps[0] ** 2))
    for k in range(1, x.beta):
        total += float(np.sum(comps[k] ** 2))
    return total


@dataclass(frozen=True)
class MCEstimate:
    """Monte Carlo mean with its standard error; reproducible from the seed."""

    mean: complex
    stderr: float
    samples: int
    seed: int

    @property
    def real_mean(self) -> float:
        return float(np.real(self.mean))

    def to_json_dict(self) -> dict:
        out = {
            "mean": self.real_mean if abs(np.imag(self.mean)) == 0 else
            {"re": float(np.real(self.mean)), "im": float(np.imag(self.mean))},
            "stderr": self.stderr,
            "samples": self.samples,
            "seed": self.seed,
        }
        return out


def merge_estimates(parts: Sequence[MCEstimate]) -> MCEstimate:
    """Pool independent chains (associative mean/variance pooling)."""
    total = sum(p.samples for p in parts)
    mean = sum(p.mean * p.samples for p in parts) / total
    # variances add as (stderr^2 * n) per chain plus between-chain spread
    second = 0.0
    for p in parts:
        second += (p.stderr**2 * p.samples + abs(p.mean) ** 2) * p.samples
    var = second / total - abs(mean) ** 2
    return MCEstimate(mean, math.sqrt(max(var, 0.0) / total), total, parts[0].seed)


def _estimate(values: np.ndarray, seed: int) -> MCEstimate:
    n = len(values)
    mean = complex(np.mean(values))
    if np.iscomplexobj(values):
        var = float(np.var(values.real) + np.var(values.imag))
    else:
        var = float(np.var(values))
    return MCEstimate(mean, math.sqrt(var / n), n, seed)


def rng_for(seed: int, stream: int = 0) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(stream,)))


# ---------------------------------------------------------------------------
# eigenvalue samplers (any beta > 0)
# ---------------------------------------------------------------------------


def sample_gaussian_eigs(beta: float, n: int, samples: int,
                         rng: np.random.Generator) -> np.ndarray:
    """Eigenvalues with density |Delta|^beta exp(-sum x^2), via symmetric
    tridiagonal matrices (Gaussian diagonal, chi off-diagonal), scaled by 1/sqrt(2).

    The scale is pinned by the exact second moment: E[p2] = N/2 + beta N(N-1)/4.
    """
    beta = float(beta)
    mats = np.zeros((samples, n, n))
    diag = rng.standard_normal((samples, n))
    mats[:, np.arange(n), np.arange(n)] = diag
    for k in range(1, n):
        dof = beta * (n - k)
        chi = np.sqrt(2.0 * rng.standard_gamma(dof / 2.0, size=samples))
        off = chi / math.sqrt(2.0)
        mats[:, k - 1, k] = off
        mats[:, k, k - 1] = off
    eigs = np.linalg.eigvalsh(mats)
    return eigs / math.sqrt(2.0)


def sample_chiral_eigs(beta: float, n: int, gamma: float, samples: int,
                       rng: np.random.Generator) -> np.ndarray:
    """Eigenvalues with density |Delta|^beta prod x^gamma exp(-x), via
    bidiagonal chi factors: eigenvalues of B B^T / 2 with shape parameter
    a = gamma + 1 + beta (N-1)/2."""
    beta = float(beta)
    a = gamma + 1.0 + beta * (n - 1) / 2.0
    mats = np.zeros((samples, n, n))
    for i in range(n):
        dof = 2.0 * a - i * beta
        mats[:, i, i] = np.sqrt(2.0 * rng.standard_gamma(dof / 2.0, size=samples))
    for i in range(1, n):
        dof = beta * (n - i)
        mats[:, i, i - 1] = np.sqrt(2.0 * rng.standard_gamma(dof / 2.0, size=samples))
    w = mats @ np.transpose(mats, (0, 2, 1))
    return np.linalg.eigvalsh(w) / 2.0


def eig_statistic(eigs: np.ndarray, stat: str) -> np.ndarray:
    """Evaluate p1, p2, p4 or e2 on an array of eigenvalue samples."""
    if stat == "p1":
        return eigs.sum(axis=1)
    if stat == "p2":
        return (eigs**2).sum(axis=1)
    if stat == "p4":
        return (eigs**4).sum(axis=1)
    if stat == "e2":
        s1 = eigs.sum(axis=1)
        s2 = (eigs**2).sum(axis=1)
        return (s1**2 - s2) / 2.0
    raise ValueError(f"unknown statistic {stat!r}")


def mc_statistic(kind: str, beta: float, n: int, stat: str, samples: int, seed: int,
                 gamma: float | None = None, threads: int = 1) -> MCEstimate:
    """Reproducible Monte Carlo estimate of an eigenvalue statistic.

    Chains are seeded per chunk index, so the pooled result is identical for
    any thread count; threads = 1 is the single-chain reference.
    """
    chunks = max(1, threads)
    per = [samples // chunks] * chunks
    per[0] += samples - sum(per)

    def run(idx: int) -> MCEstimate:
        rng = rng_for(seed, idx)
        if kind == "gaussian":
            eigs = sample_gaussian_eigs(beta, n, per[idx], rng)
        elif kind == "chiral":
            eigs = sample_chiral_eigs(beta, n, float(gamma), per[idx], rng)
        else:
            raise ValueError(f"unknown ensemble {kind!r}")
        return _estimate(eig_statistic(eigs, stat), seed)

    if chunks == 1:
        return run(0)
    from concurrent.futures import ThreadPoolExecutor

    with ThreadPoolExecutor(max_workers=chunks) as pool:
        parts = list(pool.map(run, range(chunks)))
    return merge_estimates(parts)


def dense_eig_samples(beta: int, n: int, samples: int,
                      rng: np.random.Generator) -> Tuple[np.ndarray, np.ndarray]:
    """Eigenvalues and diagonal entries of X^0 for a batch of dense draws."""
    eigs = np.empty((samples, n))
    diags = np.empty((samples, n))
    for s in range(samples):
        x = sample_dense(beta, n, rng)
        eigs[s] = eigenvalues(x)
        diags[s] = np.diag(x.components[0])
    return eigs, diags


# ---------------------------------------------------------------------------
# matrix-level Monte Carlo checks
# ---------------------------------------------------------------------------


def eqgauss_check(beta: int, n: int, y_diag: Sequence[float], samples: int,
                  seed: int) -> CheckReport:
    """E[exp(tr X Y)] must equal exp(tr Y^2 / 4) for a fixed real diagonal Y."""
    rng = rng_for(seed)
    y = np.asarray(y_diag, dtype=float)
    values = np.empty(samples)
    for s in range(samples):
        x = sample_dense(beta, n, rng)
        values[s] = math.exp(float(np.sum(np.diag(x.components[0]) * y)))
    est = _estimate(values, seed)
    expected = math.exp(float(np.sum(y**2)) / 4.0)
    dev = abs(est.real_mean - expected)
    ok = dev <= 5 * est.stderr
    return CheckReport(ok, "gaussian-integral",
                       f"beta={beta}, N={n}: {est.real_mean:.6f} vs {expected:.6f} "
                       f"({dev / est.stderr if est.stderr else 0:.2f} sigma)")


def _charpoly_products(eigs: np.ndarray, s_values: Sequence[float],
                       coupling: complex) -> np.ndarray:
    """prod_j det(s_j + coupling * X) over the sample axis."""
    out = np.ones(eigs.shape[0], dtype=complex)
    for s in s_values:
        out *= np.prod(s + coupling * eigs, axis=1)
    return out


def _charpoly_products_shifted(eigs: np.ndarray, shifts: Sequence[float],
                               coupling: complex) -> np.ndarray:
    """prod_j det(Y + coupling * shift_j) over the sample axis."""
    out = np.ones(eigs.shape[0], dtype=complex)
    for shift in shifts:
        out *= np.prod(eigs + coupling * shift, axis=1)
    return out


def mc_check_prop1(n_source: int, n_matrix: int, beta: int,
                   s_values: Sequence[float], f_values: Sequence[float],
                   samples: int, seed: int) -> CheckReport:
    """Duality of external-field characteristic-polynomial averages.

    Both sides are estimated with dense matrices; the coupling carries the
    factor i sqrt(2/beta).  Agreement is required within 5 combined standard
    errors; a low-power comparison is reported inconclusive, never masking a
    failure.
    """
    if len(s_values) != n_source or len(f_values) != n_matrix:
        raise ValueError("source/field value counts must match the sizes")
    beta_dual = {1: 4, 2: 2, 4: 1}[beta]
    coupling = 1j * math.sqrt(2.0 / beta)
    coupling_dual = 1j * math.sqrt(2.0 / beta)

    rng = rng_for(seed, 0)
    eigs, diags = dense_eig_samples(beta, n_matrix, samples, rng)
    field = np.exp(2.0 * (diags @ np.asarray(f_values)))
    lhs_values = _charpoly_products(eigs, s_values, coupling) * field
    lhs = _estimate(lhs_values, seed)
    lhs_scale = math.exp(-float(np.sum(np.asarray(f_values) ** 2)))

    rng = rng_for(seed, 1)
    eigs_d, diags_d = dense_eig_samples(beta_dual, n_source, samples, rng)
    field_d = np.exp(2.0 * (diags_d @ np.asarray(s_values)))
    rhs_values = _charpoly_products_shifted(eigs_d, f_values, coupling_dual) * field_d
    rhs = _estimate(rhs_values, seed)
    rhs_scale = math.exp(-float(np.sum(np.asarray(s_values) ** 2)))

    left = lhs.mean * lhs_scale
    right = rhs.mean * rhs_scale
    sigma = math.hypot(lhs.stderr * lhs_scale, rhs.stderr * rhs_scale)
    dev = abs(left - right)
    scale = max(abs(left), abs(right), 1e-3)
    if dev > 5 * sigma:
        return CheckReport(False, "charpoly-duality-mc",
                           f"beta={beta}, n={n_source}, N={n_matrix}: "
                           f"{left:.5f} vs {right:.5f} ({dev / sigma:.1f} sigma)")
    if 5 * sigma > 0.5 * scale:
        return CheckReport(True, "charpoly-duality-mc",
                           f"inconclusive: sigma too large ({sigma:.2e} vs scale {scale:.2e})",
                           data={"inconclusive": True})
    return CheckReport(True, "charpoly-duality-mc",
                       f"beta={beta}, n={n_source}, N={n_matrix}: "
                       f"{left:.5f} vs {right:.5f} within {dev / sigma:.2f} sigma",
                       data={"lhs": left, "rhs": right, "sigma": sigma})


def mc_charpoly_vs_exact(n_source: int, n_matrix: int, beta: int,
                         s_values: Sequence[float], exact_value: float,
                         samples: int, seed: int,
                         imaginary_coupling: bool = False) -> CheckReport:
    """Monte Carlo estimate of <prod det(s_j + c X)> against an exact anchor.

    c = sqrt(2/beta) reproduces the rectangular Hermite polynomial; the
    imaginary coupling i sqrt(2/beta) reproduces its raised companion.
    """
    coupling = math.sqrt(2.0 / beta) * (1j if imaginary_coupling else 1.0)
    rng = rng_for(seed, 2)
    eigs, _ = dense_eig_samples(beta, n_matrix, samples, rng)
    values = _charpoly_products(eigs, s_values, coupling)
    est = _estimate(values, seed)
    dev = abs(est.mean - exact_value)
    ok = dev <= 5 * est.stderr
    return CheckReport(ok, "charpoly-exact-anchor",
                       f"beta={beta}: {est.mean:.5f} vs exact {exact_value:.5f} "
                       f"({dev / est.stderr if est.stderr else 0:.2f} sigma)")


def quad_check_prop2(s: complex, f: complex, tol: float = 1e-6) -> CheckReport:
    """Inverse-characteristic-polynomial exchange at beta = 2, n = N = 1.

    exp(-f^2) <(s + x)^{-1} exp(2xf)> equals the same expression with s and f
    exchanged whenever Im(s) and Im(f) have the same sign; when they differ,
    the real-line contours sit on opposite sides of the pole and the two
    sides differ by the residue term -2 sqrt(pi) i exp(-(s+f)^2) sgn(Im s - Im f),
    which the check adds back.  Both sides are adaptive quadratures.
    """
    if abs(s.imag) < 1e-12 or abs(f.imag) < 1e-12:
        raise ValueError("source and field need nonzero imaginary parts")

    def side(a: complex, b: complex) -> complex:
        # exp(-b^2) / sqrt(pi) * int (a + x)^(-1) exp(2xb - x^2) dx
        shift = b.real
        lim = 10.0 + abs(shift)

        def integrand(x: float) -> complex:
            return np.exp(2.0 * x * b - x * x) / (a + x)

        re, re_err = integrate.quad(lambda x: integrand(x).real, -lim + shift,
                                    lim + shift, limit=300, epsabs=1e-12, epsrel=1e-12)
        im, im_err = integrate.quad(lambda x: integrand(x).imag, -lim + shift,
                                    lim + shift, limit=300, epsabs=1e-12, epsrel=1e-12)
        if max(re_err, im_err) > 1e-7:
            raise ArithmeticError("quadrature failed to converge")
        return np.exp(-b * b) * complex(re, im) / math.sqrt(math.pi)

    left = side(s, f)
    right = side(f, s)
    same_side = s.imag * f.imag > 0
    if same_side:
        dev = abs(left - right)
        ok = dev <= tol
        return CheckReport(ok, "inverse-charpoly-exchange",
                           f"s={s}, f={f}: |L-R| = {dev:.2e} (tol {tol})")
    correction = -2.0 * math.sqrt(math.pi) * 1j * np.exp(-(s + f) ** 2)
    correction *= 1.0 if s.imag > f.imag else -1.0
    dev = abs(left - right - correction)
    ok = dev <= tol
    return CheckReport(ok, "inverse-charpoly-exchange",
                       f"s={s}, f={f}: mixed imaginary signs, residue-corrected "
                       f"|L-R-res| = {dev:.2e} (tol {tol})")
