"""Brute-force oracles shipped with the package.

These are deliberately independent of the main computational paths: closed
1- and 2-variable ensemble integrals reduced to Gamma-function moments, the
classical monic Hermite three-term recurrence, the determinantal Schur
construction, and a naive polynomial long division.  Tests pit the fast
engines against these.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Dict, List, Sequence

from .exactnum import MPoly, NonExactDivisionError
from .partitions import Partition, partitions_of, z_lambda
from .symfunc import Basis, SymFunc, jack, to_basis, to_mpoly


def double_factorial(n: int) -> int:
    """(n)!! with (-1)!! = 1."""
    result = 1
    while n > 1:
        result *= n
        n -= 2
    return result


def gauss_moment_1var(k: int) -> Fraction:
    """<x^k> for weight exp(-x^2): (k-1)!!/2^(k/2) for even k, else 0."""
    if k % 2:
        return Fraction(0)
    return Fraction(double_factorial(k - 1), 2 ** (k // 2))


def _halfint_gamma_ratio(base: Fraction, k: int) -> Fraction:
    """Gamma(base + k)/Gamma(base) as a rising product, exact for rational base."""
    result = Fraction(1)
    for m in range(k):
        result *= base + m
    return result


def gauss_moment_2var(a: int, b: int, beta: Fraction) -> Fraction:
    """<x1^a x2^b> for weight |x1-x2|^beta exp(-x1^2-x2^2).

    Reduced through x1 = (s+u)/sqrt2, x2 = (s-u)/sqrt2; the s and u moments
    factorise into half-integer Gamma ratios that stay rational.
    """
    beta = Fraction(beta)
    if (a + b) % 2:
        return Fraction(0)
    total = Fraction(0)
    half = Fraction(beta + 1, 2)
    for i in range(a + 1):
        for j in range(b + 1):
            s_deg = i + j
            u_deg = (a - i) + (b - j)
            if s_deg % 2 or u_deg % 2:
                continue
            sign = (-1) ** (b - j)
            s_mom = gauss_moment_1var(s_deg)
            u_mom = _halfint_gamma_ratio(half, u_deg // 2)
            total += (
                Fraction(math.comb(a, i) * math.comb(b, j) * sign) * s_mom * u_mom
            )
    return total / Fraction(2 ** ((a + b) // 2))


def gauss_average_smallN(f: SymFunc, beta: Fraction, n_vars: int) -> Fraction:
    """Brute-force Gaussian beta-ensemble average for n_vars in {1, 2}."""
    if n_vars not in (1, 2):
        raise ValueError("oracle supports 1 or 2 variables only")
    poly = to_mpoly(f, n_vars)
    total = Fraction(0)
    for exp, coeff in poly.terms.items():
        if n_vars == 1:
            total += coeff * gauss_moment_1var(exp[0])
        else:
            total += coeff * gauss_moment_2var(exp[0], exp[1], beta)
    return total


def chiral_moment_1var(k: int, gamma: Fraction) -> Fraction:
    """<x^k> for weight x^gamma exp(-x): (gamma+1)(gamma+2)...(gamma+k)."""
    gamma = Fraction(gamma)
    result = Fraction(1)
    for m in range(1, k + 1):
        result *= gamma + m
    return result


def chiral_average_1var(f: SymFunc, gamma: Fraction) -> Fraction:
    poly = to_mpoly(f, 1)
    return sum(
        (coeff * chiral_moment_1var(exp[0], gamma) for exp, coeff in poly.terms.items()),
        Fraction(0),
    )


def monic_hermite(n: int) -> List[Fraction]:
    """Coefficients (ascending powers) of the monic orthogonal polynomial for
    weight exp(-x^2), from the three-term recurrence pi_{k+1} = t pi_k - (k/2) pi_{k-1}."""
    prev = [Fraction(1)]
    if n == 0:
        return prev
    curr = [Fraction(0), Fraction(1)]
    for k in range(1, n):
        nxt = [Fraction(0)] + curr
        for idx, c in enumerate(prev):
            nxt[idx] -= Fraction(k, 2) * c
        prev, curr = curr, nxt
    return curr


def scaled_monic_hermite(n: int, alpha: Fraction) -> List[Fraction]:
    """Coefficients of alpha^(-n/2) pi_n(sqrt(alpha) t) in ascending powers of t.

    Only even powers of sqrt(alpha) survive, so the result is rational.
    """
    alpha = Fraction(alpha)
    base = monic_hermite(n)
    out = []
    for k, c in enumerate(base):
        # t^k picks up alpha^(k/2) / alpha^(n/2); n - k is even wherever c != 0
        if c == 0:
            out.append(Fraction(0))
            continue
        drop = n - k
        if drop % 2:
            raise AssertionError("parity violation in Hermite recurrence")
        out.append(c / alpha ** (drop // 2))
    return out


def complete_homogeneous_p(n: int) -> SymFunc:
    """h_n in the power-sum basis: sum over partitions of p_lam / z_lam."""
    coeffs: Dict[Partition, Fraction] = {
        lam: Fraction(1) / z_lambda(lam) for lam in partitions_of(n)
    }
    return SymFunc(Basis.P, n, coeffs)


def schur_jacobi_trudi(lam: Partition) -> SymFunc:
    """Schur function via the determinant of complete homogeneous functions."""
    ell = len(lam)
    if ell == 0:
        return SymFunc(Basis.P, 0, {Partition(): Fraction(1)})
    from itertools import permutations

    total: Dict[Partition, Fraction] = {}
    for sigma in permutations(range(ell)):
        sign = _perm_sign(sigma)
        degrees = [lam[i] - (i + 1) + (sigma[i] + 1) for i in range(ell)]
        if any(d < 0 for d in degrees):
            continue
        prod: Dict[Partition, Fraction] = {Partition(): Fraction(1)}
        for d in degrees:
            if d == 0:
                continue
            h = complete_homogeneous_p(d)
            nxt: Dict[Partition, Fraction] = {}
            for mu, c in prod.items():
                for nu, e in h.coeffs.items():
                    key = Partition(sorted(tuple(mu) + tuple(nu), reverse=True))
                    acc = nxt.get(key, Fraction(0)) + c * e
                    if acc == 0:
                        nxt.pop(key, None)
                    else:
                        nxt[key] = acc
            prod = nxt
        for mu, c in prod.items():
            acc = total.get(mu, Fraction(0)) + sign * c
            if acc == 0:
                total.pop(mu, None)
            else:
                total[mu] = acc
    return SymFunc(Basis.P, lam.weight, total)


def _perm_sign(sigma: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(sigma)
    for start in range(len(sigma)):
        if seen[start]:
            continue
        length = 0
        k = start
        while not seen[k]:
            seen[k] = True
            k = sigma[k]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def poly_divide_bruteforce(num: MPoly, i: int, j: int) -> MPoly:
    """Naive long division of num by (x_i - x_j), term by term.

    Independent of MPoly.div_linear_difference: repeatedly cancel the term
    with the highest x_i exponent.
    """
    remainder = num.copy()
    quotient = MPoly(num.nvars)
    while remainder.terms:
        exp = max(remainder.terms, key=lambda e: (e[i], e))
        if exp[i] == 0:
            raise NonExactDivisionError("brute-force division has a remainder")
        coeff = remainder.terms[exp]
        qexp = list(exp)
        qexp[i] -= 1
        qterm = MPoly(num.nvars, {tuple(qexp): coeff})
        quotient = quotient + qterm
        xi = MPoly.var(num.nvars, i)
        xj = MPoly.var(num.nvars, j)
        remainder = remainder - qterm * (xi - xj)
    return quotient
