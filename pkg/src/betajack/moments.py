"""Closed-form beta-ensemble averages of Jack polynomials and their dualities.

The Gaussian weight is prod exp(-x_i^2) times |Delta(x)|^beta, the chiral
weight is prod x_i^gamma exp(-x_i) times |Delta(x)|^beta.  The Gaussian Jack
average is implemented with the calibration factor (2*alpha)^(-|lam|/2),
which is what the 1- and 2-variable integral oracles force; the duality
ratio that follows is (-1/alpha)^(|lam|/2).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from .exactnum import MPoly
from .oracles import scaled_monic_hermite
from .partitions import Partition, b_coeff, gen_factorial, monomial_count, partitions_of
from .report import CheckReport, DualityReport
from .symfunc import (
    Basis,
    SymFunc,
    default_cache,
    jack_specialization_formula,
    to_basis,
)


class EnsembleKind(enum.Enum):
    GAUSSIAN = "gaussian"
    CHIRAL = "chiral"


@dataclass(frozen=True)
class EnsembleSpec:
    """Gaussian {beta, N} or chiral {beta, N, gamma} eigenvalue ensemble."""

    kind: EnsembleKind
    beta: Fraction
    n_vars: int
    gamma: Fraction | None = None

    def __post_init__(self):
        if Fraction(self.beta) <= 0:
            raise ValueError("beta must be positive")
        if self.n_vars < 1:
            raise ValueError("need at least one variable")
        if self.kind is EnsembleKind.CHIRAL:
            if self.gamma is None or Fraction(self.gamma) <= -1:
                raise ValueError("chiral ensembles need gamma > -1")
        elif self.gamma is not None:
            raise ValueError("gamma is a chiral-only parameter")

    @property
    def alpha(self) -> Fraction:
        return Fraction(2) / Fraction(self.beta)

    @property
    def q(self) -> Fraction:
        return 1 + Fraction(self.beta) * (self.n_vars - 1) / 2

    @staticmethod
    def gaussian(beta, n_vars: int) -> "EnsembleSpec":
        return EnsembleSpec(EnsembleKind.GAUSSIAN, Fraction(beta), n_vars)

    @staticmethod
    def chiral(beta, n_vars: int, gamma) -> "EnsembleSpec":
        return EnsembleSpec(EnsembleKind.CHIRAL, Fraction(beta), n_vars, Fraction(gamma))


def jack_average_gaussian(lam: Partition, ens: EnsembleSpec) -> Fraction:
    """<P_lam> over the Gaussian ensemble, oracle-calibrated normalisation.

    Zero for odd weight; otherwise b_lam * (2 alpha)^(-|lam|/2) times the
    power-sum coefficient of p_(2^k) in P_lam.
    """
    if ens.kind is not EnsembleKind.GAUSSIAN:
        raise ValueError("gaussian average called on a non-gaussian ensemble")
    if lam.weight % 2:
        return Fraction(0)
    if len(lam) > ens.n_vars:
        return Fraction(0)
    alpha = ens.alpha
    k = lam.weight // 2
    entry = default_cache().entry(lam, alpha)
    coeff = entry.p_coeffs.get(Partition((2,) * k), Fraction(0))
    return b_coeff(lam, alpha, ens.n_vars) * coeff / (2 * alpha) ** k


def jack_average_chiral(lam: Partition, ens: EnsembleSpec) -> Fraction:
    """<P_lam> over the chiral ensemble: [gamma+q]_lam * b_lam * coeff of p_(1^n)."""
    if ens.kind is not EnsembleKind.CHIRAL:
        raise ValueError("chiral average called on a non-chiral ensemble")
    if len(lam) > ens.n_vars:
        return Fraction(0)
    alpha = ens.alpha
    entry = default_cache().entry(lam, alpha)
    coeff = entry.p_coeffs.get(Partition((1,) * lam.weight), Fraction(0))
    gf = gen_factorial(Fraction(ens.gamma) + ens.q, lam, alpha)
    return gf * b_coeff(lam, alpha, ens.n_vars) * coeff


def jack_average(lam: Partition, ens: EnsembleSpec) -> Fraction:
    if ens.kind is EnsembleKind.GAUSSIAN:
        return jack_average_gaussian(lam, ens)
    return jack_average_chiral(lam, ens)


def average(f: SymFunc, ens: EnsembleSpec) -> Fraction:
    """Average of a homogeneous symmetric function: expand in Jacks and sum."""
    fj = to_basis(f, Basis.JACK, alpha=ens.alpha)
    return sum((c * jack_average(lam, ens) for lam, c in fj.coeffs.items()), Fraction(0))


_M_AVG_CACHE: Dict[Tuple[EnsembleSpec, Partition], Fraction] = {}


def average_monomial(mu: Partition, ens: EnsembleSpec) -> Fraction:
    """Cached average of the monomial symmetric function m_mu."""
    key = (ens, mu)
    if key not in _M_AVG_CACHE:
        _M_AVG_CACHE[key] = average(SymFunc.unit(Basis.M, mu), ens)
    return _M_AVG_CACHE[key]


def average_mpoly(poly: MPoly, ens: EnsembleSpec):
    """Average of an explicit polynomial in the ensemble's n_vars variables.

    The measure is symmetric, so <x^e> = <m_sort(e)> / m_sort(e)(1^N); works
    coefficient ring by coefficient ring (Fraction, GaussRat or QuadExt).
    """
    if poly.nvars != ens.n_vars:
        raise ValueError("polynomial has wrong number of variables")
    total = None
    for exp, coeff in poly.terms.items():
        mu = Partition(sorted((e for e in exp if e), reverse=True))
        count = monomial_count(mu, ens.n_vars)
        value = average_monomial(mu, ens) / count
        term = coeff * value
        total = term if total is None else total + term
    return Fraction(0) if total is None else total


def normalized_average(lam: Partition, ens: EnsembleSpec) -> Fraction:
    """<P_lam> / P_lam(1^N); requires N >= len(lam)."""
    if ens.n_vars < len(lam):
        raise ValueError("support condition N >= len(lam) violated")
    return jack_average(lam, ens) / jack_specialization_formula(lam, ens.alpha, ens.n_vars)


def gaussian_duality_check(
    lam: Partition, alpha: Fraction, n_vars: int, n_vars_dual: int
) -> DualityReport:
    """Duality of normalised Gaussian Jack averages under (lam, alpha) -> (lam', 1/alpha).

    The calibrated constant is (-1/alpha)^(|lam|/2); the printed scaling
    x -> i x sqrt(2/beta) would give (-alpha)^(|lam|/2) instead, which the
    oracles refute (see the erratum checks in the test suite).
    """
    alpha = Fraction(alpha)
    if lam.weight % 2:
        raise ValueError("duality check needs even weight")
    k = lam.weight // 2
    lhs = normalized_average(lam, EnsembleSpec.gaussian(2 / alpha, n_vars))
    alpha_dual = 1 / alpha
    rhs = normalized_average(
        lam.conjugate(), EnsembleSpec.gaussian(2 / alpha_dual, n_vars_dual)
    )
    predicted = (Fraction(-1) / alpha) ** k
    if rhs == 0:
        return DualityReport(lhs, rhs, None, predicted, lhs == 0, "degenerate: rhs = 0")
    ratio = lhs / rhs
    return DualityReport(lhs, rhs, ratio, predicted, ratio == predicted)


def gaussian_duality_printed_ratio(lam: Partition, alpha: Fraction) -> Fraction:
    """The constant the non-calibrated scaling would predict, for erratum logging."""
    return (-Fraction(alpha)) ** (lam.weight // 2)


def chiral_duality_check(
    lam: Partition,
    alpha: Fraction,
    gamma: Fraction,
    gamma_dual: Fraction,
    n_vars: int,
    n_vars_dual: int,
) -> DualityReport:
    """Chiral duality: ratio of normalised averages equals
    [gamma+q]_lam^(alpha) / [gamma'+q']_lam'^(1/alpha), exactly as printed."""
    alpha = Fraction(alpha)
    gamma = Fraction(gamma)
    gamma_dual = Fraction(gamma_dual)
    ens = EnsembleSpec.chiral(2 / alpha, n_vars, gamma)
    lhs = normalized_average(lam, ens)
    alpha_dual = 1 / alpha
    ens_dual = EnsembleSpec.chiral(2 / alpha_dual, n_vars_dual, gamma_dual)
    rhs = normalized_average(lam.conjugate(), ens_dual)
    predicted = gen_factorial(gamma + ens.q, lam, alpha) / gen_factorial(
        gamma_dual + ens_dual.q, lam.conjugate(), alpha_dual
    )
    if rhs == 0:
        return DualityReport(lhs, rhs, None, predicted, lhs == 0, "degenerate: rhs = 0")
    ratio = lhs / rhs
    return DualityReport(lhs, rhs, ratio, predicted, ratio == predicted)


def det_moment_duality(n: int, ens: EnsembleSpec) -> DualityReport:
    """Moments of the determinant: <(x_1...x_N)^n> against the dual ensemble.

    (x_1...x_N)^n is the Jack polynomial of the full rectangle (n^N), whose
    specialisations at 1^N are trivially one, so the normalisations drop out.
    Gaussian ratio: (-1/alpha)^(nN/2); chiral ratio (beta/2)^(nN) at
    gamma' = 2(gamma+1)/beta - 1.
    """
    n_vars = ens.n_vars
    rect = Partition((n,) * n_vars)
    beta_dual = 4 / Fraction(ens.beta)
    if ens.kind is EnsembleKind.GAUSSIAN:
        if (n * n_vars) % 2:
            raise ValueError("gaussian determinant moments need nN even")
        lhs = jack_average_gaussian(rect, ens)
        dual = EnsembleSpec.gaussian(beta_dual, n)
        rhs = jack_average_gaussian(rect.conjugate(), dual)
        predicted = (-1 / ens.alpha) ** ((n * n_vars) // 2)
    else:
        gamma_dual = 2 * (Fraction(ens.gamma) + 1) / Fraction(ens.beta) - 1
        lhs = jack_average_chiral(rect, ens)
        dual = EnsembleSpec.chiral(beta_dual, n, gamma_dual)
        rhs = jack_average_chiral(rect.conjugate(), dual)
        predicted = (Fraction(ens.beta) / 2) ** (n * n_vars)
    if rhs == 0:
        return DualityReport(lhs, rhs, None, predicted, lhs == 0, "degenerate: rhs = 0")
    ratio = lhs / rhs
    return DualityReport(lhs, rhs, ratio, predicted, ratio == predicted)


def charpoly_average_coeffs(n_vars: int, alpha: Fraction) -> List[Fraction]:
    """Coefficients, ascending in t, of <prod_i (t - x_i)> over the Gaussian ensemble."""
    alpha = Fraction(alpha)
    ens = EnsembleSpec.gaussian(2 / alpha, n_vars)
    coeffs = [Fraction(0)] * (n_vars + 1)
    for k in range(n_vars + 1):
        ek_avg = jack_average_gaussian(Partition((1,) * k), ens)
        coeffs[n_vars - k] = (-1) ** k * ek_avg
    return coeffs


def hermite_onevar_check(n_vars: int, alpha: Fraction) -> CheckReport:
    """<prod (t - x_i)> equals the rescaled classical monic Hermite polynomial.

    The right side comes from the three-term recurrence, an independent
    oracle; equality is asserted coefficientwise over the rationals.
    """
    alpha = Fraction(alpha)
    engine = charpoly_average_coeffs(n_vars, alpha)
    oracle = scaled_monic_hermite(n_vars, alpha)
    if engine == oracle:
        return CheckReport(True, "hermite-onevar", f"N={n_vars}, alpha={alpha}")
    for k, (a, b) in enumerate(zip(engine, oracle)):
        if a != b:
            return CheckReport(
                False,
                "hermite-onevar",
                f"first bad coefficient at t^{k}: engine {a} vs oracle {b}",
            )
    return CheckReport(False, "hermite-onevar", "length mismatch")


def gaussian_n_independence_check(
    lam: Partition, alpha: Fraction, extra: int = 3
) -> CheckReport:
    """<P_lam>/P_lam(1^N) must not depend on N once N >= len(lam)."""
    base = max(len(lam), 1)
    values = [
        normalized_average(lam, EnsembleSpec.gaussian(2 / Fraction(alpha), n))
        for n in range(base, base + extra + 1)
    ]
    ok = all(v == values[0] for v in values)
    return CheckReport(ok, "n-independence", f"lam={tuple(lam)}, alpha={alpha}: {values[0]}")


def chiral_to_gaussian_limit_check(
    f: SymFunc, beta: Fraction, n_vars: int, gammas: Sequence[Fraction]
) -> CheckReport:
    """Floating-point check that recentred chiral averages approach Gaussian ones.

    Substituting x -> (y - gamma)/sqrt(2 gamma) inside the average must
    converge at rate O(gamma^(-1/2)); even integrands converge faster, so the
    criterion is: differences decrease and the fitted slope is at most
    -1/2 + 0.15.
    """
    from .symfunc import to_mpoly

    beta = Fraction(beta)
    gauss = EnsembleSpec.gaussian(beta, n_vars)
    target = float(average(f, gauss))
    poly = to_mpoly(f, n_vars)
    diffs = []
    for gamma in gammas:
        gamma = Fraction(gamma)
        chi = EnsembleSpec.chiral(beta, n_vars, gamma)
        scale = 1.0 / math.sqrt(2.0 * float(gamma))
        shift = float(gamma)
        total = 0.0
        for exp, coeff in poly.terms.items():
            # expand prod (y_i - gamma)^{e_i} monomial by monomial
            expanded: Dict[Tuple[int, ...], float] = {(0,) * n_vars: 1.0}
            for idx, e in enumerate(exp):
                if e == 0:
                    continue
                nxt: Dict[Tuple[int, ...], float] = {}
                for sub in range(e + 1):
                    w = math.comb(e, sub) * (-shift) ** (e - sub)
                    for key, val in expanded.items():
                        new = list(key)
                        new[idx] += sub
                        k2 = tuple(new)
                        nxt[k2] = nxt.get(k2, 0.0) + val * w
                expanded = nxt
            for key, val in expanded.items():
                mu = Partition(sorted((e for e in key if e), reverse=True))
                mono = float(average_monomial(mu, chi)) / monomial_count(mu, n_vars)
                total += float(coeff) * val * mono * scale ** sum(exp)
        diffs.append(abs(total - target))
    if all(d < 1e-12 for d in diffs):
        return CheckReport(True, "chiral-gaussian-limit", "identical for all gamma")
    import numpy as np

    xs = np.log([float(g) for g in gammas])
    ys = np.log([max(d, 1e-300) for d in diffs])
    slope = float(np.polyfit(xs, ys, 1)[0])
    decreasing = all(b < a * (1 + 1e-9) for a, b in zip(diffs, diffs[1:]))
    ok = decreasing and slope <= -0.5 + 0.15
    return CheckReport(ok, "chiral-gaussian-limit", f"slope {slope:.3f}, diffs {diffs}")
