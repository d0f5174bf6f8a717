"""Truncated multivariate hypergeometric series of two sets of variables.

The series are graded sums over partitions,

    sum_lam  alpha^|lam| / upper_hook(lam)
             * prod [a_i]_lam / prod [b_j]_lam
             * P_lam(x) P_lam(y) / P_lam(1^N),

stored as N-free coefficient functionals c_lam and expanded into explicit
variables on demand.  They generate the multivariate Hermite and Laguerre
polynomials, which is verified coefficientwise against the operator
constructions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from .dunkl import hermite_norm, hermite_poly, laguerre_norm, laguerre_poly
from .exactnum import MPoly
from .moments import EnsembleSpec, jack_average
from .partitions import Partition, gen_factorial, partitions_of
from .report import CheckReport
from .symfunc import jack_mpoly, jack_specialization_formula, upper_hook

DEFAULT_CUTOFF = 8


class ParameterPoleError(ValueError):
    """A lower parameter hits a pole inside the truncation range."""


@dataclass(frozen=True)
class HyperSeries:
    """Graded coefficient map for a (p, q) hypergeometric series."""

    p: int
    q: int
    a: Tuple[Fraction, ...]
    b: Tuple[Fraction, ...]
    alpha: Fraction
    cutoff: int
    coeff: Dict[Partition, Fraction]

    def term(self, lam: Partition) -> Fraction:
        return self.coeff[lam]


def series(p: int, q: int, a: Sequence[Fraction], b: Sequence[Fraction],
           alpha: Fraction, cutoff: int = DEFAULT_CUTOFF,
           max_len: int | None = None) -> HyperSeries:
    """Exact graded coefficients through the cutoff; poles are rejected by name.

    max_len bounds the partition lengths kept (set it to the variable count:
    longer partitions never contribute to an N-variable expansion, so their
    parameter poles are benign).
    """
    alpha = Fraction(alpha)
    a = tuple(Fraction(v) for v in a)
    b = tuple(Fraction(v) for v in b)
    if len(a) != p or len(b) != q:
        raise ValueError("parameter counts do not match (p, q)")
    coeff: Dict[Partition, Fraction] = {}
    for d in range(cutoff + 1):
        for lam in partitions_of(d):
            if max_len is not None and len(lam) > max_len:
                continue
            num = alpha**d
            for av in a:
                num *= gen_factorial(av, lam, alpha)
            den = upper_hook(lam, alpha)
            for bv in b:
                factor = gen_factorial(bv, lam, alpha)
                if factor == 0:
                    raise ParameterPoleError(
                        f"lower parameter {bv} vanishes at partition {tuple(lam)}"
                    )
                den *= factor
            coeff[lam] = num / den
    return HyperSeries(p, q, a, b, alpha, cutoff, coeff)


def expand_two_sets(hs: HyperSeries, n_vars: int, x_scale: Fraction = Fraction(1)) -> MPoly:
    """Explicit expansion in x_1..x_N, y_1..y_N through the cutoff."""
    total = 2 * n_vars
    out = MPoly(total)
    x_scale = Fraction(x_scale)
    for lam, c in hs.coeff.items():
        if len(lam) > n_vars:
            continue
        weight = c * x_scale ** lam.weight / jack_specialization_formula(lam, hs.alpha, n_vars)
        px = jack_mpoly(lam, hs.alpha, n_vars)
        py = jack_mpoly(lam, hs.alpha, n_vars)
        for ex, cx in px.terms.items():
            for ey, cy in py.terms.items():
                key = ex + ey
                acc = out.terms.get(key, Fraction(0)) + weight * cx * cy
                if acc == 0:
                    out.terms.pop(key, None)
                else:
                    out.terms[key] = acc
    return out


def expand_at_scalar_y(hs: HyperSeries, n_vars: int, t: Fraction,
                       x_scale: Fraction = Fraction(1)) -> MPoly:
    """Expansion with y = (t, ..., t); the specialisation P_lam(1^N) cancels."""
    t = Fraction(t)
    x_scale = Fraction(x_scale)
    out = MPoly(n_vars)
    for lam, c in hs.coeff.items():
        if len(lam) > n_vars:
            continue
        weight = c * (t * x_scale) ** lam.weight
        if weight == 0:
            continue
        out = out + jack_mpoly(lam, hs.alpha, n_vars).scale(weight)
    return out


def _exp_p1(n_vars: int, scale: Fraction, degree: int) -> MPoly:
    arg = MPoly(n_vars)
    for i in range(n_vars):
        exp = [0] * n_vars
        exp[i] = 1
        arg.terms[tuple(exp)] = Fraction(scale)
    out = MPoly.const(n_vars, 1)
    term = out
    k = 0
    while True:
        k += 1
        term = term.mul_truncated(arg, degree).scale(Fraction(1, k))
        if not term.terms:
            break
        out = out + term
    return out


def zero_f_zero_special_check(alpha: Fraction, n_vars: int, cutoff: int) -> CheckReport:
    """0F0 with one set of variables set to a common scalar is prod exp(t x_i)."""
    hs = series(0, 0, [], [], alpha, cutoff)
    lhs = expand_at_scalar_y(hs, n_vars, Fraction(1))
    rhs = _exp_p1(n_vars, Fraction(1), cutoff)
    diff = (lhs - rhs).truncate(cutoff)
    if diff.terms:
        return CheckReport(False, "exp-special",
                           f"mismatch at exponent {sorted(diff.terms)[0]}")
    return CheckReport(True, "exp-special", f"alpha={alpha}, N={n_vars}, degree {cutoff}")


def one_f_zero_special_check(a: Fraction, alpha: Fraction, n_vars: int, cutoff: int) -> CheckReport:
    """1F0 with scalar second set is prod (1 - t x_i)^(-a)."""
    a = Fraction(a)
    hs = series(1, 0, [a], [], alpha, cutoff)
    lhs = expand_at_scalar_y(hs, n_vars, Fraction(1))
    rhs = MPoly.const(n_vars, 1)
    for i in range(n_vars):
        factor = MPoly(n_vars)
        for k in range(cutoff + 1):
            exp = [0] * n_vars
            exp[i] = k
            num = Fraction(1)
            for m in range(k):
                num *= a + m
            factor.terms[tuple(exp)] = num / math.factorial(k)
        rhs = rhs.mul_truncated(factor, cutoff)
    diff = (lhs - rhs).truncate(cutoff)
    if diff.terms:
        return CheckReport(False, "binomial-special",
                           f"mismatch at exponent {sorted(diff.terms)[0]}")
    return CheckReport(True, "binomial-special",
                       f"a={a}, alpha={alpha}, N={n_vars}, degree {cutoff}")


def graded_consistency_check(alpha: Fraction, cutoff: int) -> CheckReport:
    """Recomputing with a larger cutoff never changes lower-degree coefficients."""
    # denominator 7 keeps the lower parameter off every pole of the alpha grid
    small = series(0, 1, [], [Fraction(22, 7)], alpha, cutoff)
    large = series(0, 1, [], [Fraction(22, 7)], alpha, cutoff + 3)
    for lam, c in small.coeff.items():
        if large.coeff[lam] != c:
            return CheckReport(False, "graded-consistency", f"changed at {tuple(lam)}")
    return CheckReport(True, "graded-consistency", f"alpha={alpha}, cutoff {cutoff}")


def _multiply_y_exp(base: MPoly, n_vars: int, power_sum_k: int, scale: Fraction,
                    y_cutoff: int) -> MPoly:
    """Multiply by exp(scale * p_k(y)) keeping total y-degree <= y_cutoff."""
    total = 2 * n_vars
    arg = MPoly(total)
    for i in range(n_vars):
        exp = [0] * total
        exp[n_vars + i] = power_sum_k
        arg.terms[tuple(exp)] = Fraction(scale)
    out = MPoly(total)
    # exp series in the y block only; prune via y-degree
    series_terms = [MPoly.const(total, 1)]
    term = series_terms[0]
    k = 0
    while True:
        k += 1
        term = term * arg
        term = MPoly(total, {e: c for e, c in term.terms.items() if sum(e[n_vars:]) <= y_cutoff})
        term = term.scale(Fraction(1, k))
        if not term.terms:
            break
        series_terms.append(term)
    exp_poly = MPoly(total)
    for t in series_terms:
        exp_poly = exp_poly + t
    prod = base * exp_poly
    return MPoly(total, {e: c for e, c in prod.terms.items() if sum(e[n_vars:]) <= y_cutoff})


def genfunc_hermite_check(alpha: Fraction, n_vars: int, cutoff: int) -> CheckReport:
    """exp(-p2(y)) 0F0(2x; y) = sum H_lam(x) P_lam(y) / A_lam, coefficientwise."""
    alpha = Fraction(alpha)
    hs = series(0, 0, [], [], alpha, cutoff)
    base = expand_two_sets(hs, n_vars, x_scale=Fraction(2))
    lhs = _multiply_y_exp(base, n_vars, 2, Fraction(-1), cutoff)
    total = 2 * n_vars
    rhs = MPoly(total)
    for d in range(cutoff + 1):
        for lam in partitions_of(d):
            if len(lam) > n_vars:
                continue
            h = hermite_poly(lam, alpha, n_vars).poly
            py = jack_mpoly(lam, alpha, n_vars)
            norm = hermite_norm(lam, alpha, n_vars)
            for ex, cx in h.terms.items():
                for ey, cy in py.terms.items():
                    key = tuple(ex) + tuple(ey)
                    acc = rhs.terms.get(key, Fraction(0)) + cx * cy / norm
                    if acc == 0:
                        rhs.terms.pop(key, None)
                    else:
                        rhs.terms[key] = acc
    diff = lhs - rhs
    bad = {e: c for e, c in diff.terms.items() if sum(e[n_vars:]) <= cutoff}
    if bad:
        return CheckReport(False, "hermite-generating-function",
                           f"mismatch at exponent {sorted(bad)[0]}")
    return CheckReport(True, "hermite-generating-function",
                       f"alpha={alpha}, N={n_vars}, y-degree {cutoff}")


def genfunc_laguerre_check(alpha: Fraction, gamma: Fraction, n_vars: int,
                           cutoff: int) -> CheckReport:
    """exp(-p1(y)) 0F1(gamma+q; x; y) = sum L_lam(x) P_lam(y) / B_lam."""
    alpha = Fraction(alpha)
    gamma = Fraction(gamma)
    q = 1 + Fraction(n_vars - 1) / alpha
    hs = series(0, 1, [], [gamma + q], alpha, cutoff, max_len=n_vars)
    base = expand_two_sets(hs, n_vars)
    lhs = _multiply_y_exp(base, n_vars, 1, Fraction(-1), cutoff)
    total = 2 * n_vars
    rhs = MPoly(total)
    for d in range(cutoff + 1):
        for lam in partitions_of(d):
            if len(lam) > n_vars:
                continue
            lp = laguerre_poly(lam, alpha, gamma, n_vars).poly
            py = jack_mpoly(lam, alpha, n_vars)
            norm = laguerre_norm(lam, alpha, gamma, n_vars)
            for ex, cx in lp.terms.items():
                for ey, cy in py.terms.items():
                    key = tuple(ex) + tuple(ey)
                    acc = rhs.terms.get(key, Fraction(0)) + cx * cy / norm
                    if acc == 0:
                        rhs.terms.pop(key, None)
                    else:
                        rhs.terms[key] = acc
    diff = lhs - rhs
    bad = {e: c for e, c in diff.terms.items() if sum(e[n_vars:]) <= cutoff}
    if bad:
        return CheckReport(False, "laguerre-generating-function",
                           f"mismatch at exponent {sorted(bad)[0]}")
    return CheckReport(True, "laguerre-generating-function",
                       f"alpha={alpha}, gamma={gamma}, N={n_vars}, y-degree {cutoff}")


def kernel_average_check(alpha: Fraction, n_vars: int, cutoff: int) -> CheckReport:
    """Ensemble average of the doubled exponential kernel is exp(p2(y)).

    Ties the series, the Jack-average engine and the generating function
    together: sum_lam c_lam 2^|lam| <P_lam> P_lam(y) / P_lam(1^N) must match
    the expansion of exp(p2(y)) through the cutoff.
    """
    alpha = Fraction(alpha)
    ens = EnsembleSpec.gaussian(2 / alpha, n_vars)
    hs = series(0, 0, [], [], alpha, cutoff)
    lhs = MPoly(n_vars)
    for lam, c in hs.coeff.items():
        if len(lam) > n_vars:
            continue
        avg = jack_average(lam, ens)
        if avg == 0:
            continue
        weight = c * Fraction(2) ** lam.weight * avg / jack_specialization_formula(
            lam, alpha, n_vars
        )
        lhs = lhs + jack_mpoly(lam, alpha, n_vars).scale(weight)
    arg = MPoly(n_vars)
    for i in range(n_vars):
        exp = [0] * n_vars
        exp[i] = 2
        arg.terms[tuple(exp)] = Fraction(1)
    rhs = MPoly.const(n_vars, 1)
    term = rhs
    k = 0
    while True:
        k += 1
        term = term.mul_truncated(arg, cutoff).scale(Fraction(1, k))
        if not term.terms:
            break
        rhs = rhs + term
    diff = (lhs - rhs).truncate(cutoff)
    if diff.terms:
        return CheckReport(False, "kernel-average",
                           f"mismatch at exponent {sorted(diff.terms)[0]}")
    return CheckReport(True, "kernel-average", f"alpha={alpha}, N={n_vars}, degree {cutoff}")
