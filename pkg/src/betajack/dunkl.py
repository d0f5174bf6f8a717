"""Explicit-variable lowering operators and the polynomial families they build.

The Gaussian operator acts on symmetric polynomials as

    D_g f = sum_i d_i^2 f + (2/alpha) sum_{i<j} (d_i f - d_j f)/(x_i - x_j)

and its chiral companion as

    D_c f = sum_i [x_i d_i^2 f + (gamma+1) d_i f]
            + (2/alpha) sum_{i<j} (x_i d_i f - x_j d_j f)/(x_i - x_j).

Both lower the degree (by 2 and 1), so their exponentials terminate on
polynomials.  exp(-D_g/4) applied to a Jack polynomial gives the monic
multivariate Hermite polynomial; exp(-D_c) gives the multivariate Laguerre
polynomial.  The same operators drive the source/external-field exchange
identities for products of linear factors, the one-variable multiple Hermite
polynomials, and the formal one-matrix model expansion, all verified here in
exact arithmetic (radicals live in a quadratic extension ring and must
cancel before any result is extracted).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from .exactnum import GaussRat, MPoly, QuadExt, rat_sqrt
from .moments import EnsembleKind, EnsembleSpec, average_monomial, average_mpoly
from .oracles import double_factorial
from .partitions import Partition, b_coeff, gen_factorial, monomial_count
from .report import CheckReport
from .symfunc import jack, to_mpoly, upper_hook
from .symfunc import jack_specialization_formula


class NotSymmetricError(ValueError):
    """Operator input must be symmetric in the variables it acts on."""


def _check_symmetric(poly: MPoly, idxs: Sequence[int]):
    groups: Dict[Tuple, object] = {}
    counts: Dict[Tuple, int] = {}
    for exp, coeff in poly.terms.items():
        sub = tuple(sorted((exp[i] for i in idxs), reverse=True))
        rest = tuple(e for k, e in enumerate(exp) if k not in idxs)
        key = (rest, sub)
        if key in groups:
            if groups[key] != coeff:
                raise NotSymmetricError("polynomial is not symmetric in the operator variables")
            counts[key] += 1
        else:
            groups[key] = coeff
            counts[key] = 1
    for (rest, sub), n_seen in counts.items():
        padded = sub + (0,) * (len(idxs) - len(sub))
        expected = _distinct_count(padded)
        if n_seen != expected:
            raise NotSymmetricError("polynomial is not symmetric in the operator variables")


def _distinct_count(padded: Tuple[int, ...]) -> int:
    total = math.factorial(len(padded))
    for v in set(padded):
        total //= math.factorial(padded.count(v))
    return total


def delta_gaussian(poly: MPoly, alpha: Fraction, idxs: Sequence[int] | None = None,
                   check: bool = True) -> MPoly:
    """Gaussian lowering operator on the variables idxs (all by default)."""
    alpha = Fraction(alpha)
    if idxs is None:
        idxs = range(poly.nvars)
    idxs = list(idxs)
    if check:
        _check_symmetric(poly, idxs)
    out = MPoly(poly.nvars)
    partials = {i: poly.partial(i) for i in idxs}
    for i in idxs:
        out = out + partials[i].partial(i)
    two_over_alpha = Fraction(2) / alpha
    for a_pos in range(len(idxs)):
        for b_pos in range(a_pos + 1, len(idxs)):
            i, j = idxs[a_pos], idxs[b_pos]
            num = partials[i] - partials[j]
            out = out + num.div_linear_difference(i, j).scale(two_over_alpha)
    return out


def delta_chiral(poly: MPoly, alpha: Fraction, gamma: Fraction,
                 idxs: Sequence[int] | None = None, check: bool = True) -> MPoly:
    """Chiral lowering operator on the variables idxs (all by default)."""
    alpha = Fraction(alpha)
    gamma = Fraction(gamma)
    if idxs is None:
        idxs = range(poly.nvars)
    idxs = list(idxs)
    if check:
        _check_symmetric(poly, idxs)
    out = MPoly(poly.nvars)
    partials = {i: poly.partial(i) for i in idxs}
    gp1 = gamma + 1
    for i in idxs:
        xi = MPoly.var(poly.nvars, i)
        out = out + xi * partials[i].partial(i) + partials[i].scale(gp1)
    two_over_alpha = Fraction(2) / alpha
    for a_pos in range(len(idxs)):
        for b_pos in range(a_pos + 1, len(idxs)):
            i, j = idxs[a_pos], idxs[b_pos]
            xi = MPoly.var(poly.nvars, i)
            xj = MPoly.var(poly.nvars, j)
            num = xi * partials[i] - xj * partials[j]
            out = out + num.div_linear_difference(i, j).scale(two_over_alpha)
    return out


def exp_delta_gaussian(poly: MPoly, alpha: Fraction, factor: Fraction,
                       idxs: Sequence[int] | None = None) -> MPoly:
    """exp(factor * D_g) applied to a polynomial; the series terminates."""
    factor = Fraction(factor)
    out = poly
    term = poly
    k = 0
    while term.terms:
        k += 1
        term = delta_gaussian(term, alpha, idxs, check=(k == 1)).scale(factor / k)
        out = out + term
    return out


def exp_delta_chiral(poly: MPoly, alpha: Fraction, gamma: Fraction, factor: Fraction,
                     idxs: Sequence[int] | None = None) -> MPoly:
    out = poly
    term = poly
    k = 0
    factor = Fraction(factor)
    while term.terms:
        k += 1
        term = delta_chiral(term, alpha, gamma, idxs, check=(k == 1)).scale(factor / k)
        out = out + term
    return out


# ---------------------------------------------------------------------------
# multivariate Hermite and Laguerre polynomials
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HermitePoly:
    lam: Partition
    alpha: Fraction
    n_vars: int
    poly: MPoly


@dataclass(frozen=True)
class LaguerrePoly:
    lam: Partition
    alpha: Fraction
    gamma: Fraction
    n_vars: int
    poly: MPoly


def hermite_poly(lam: Partition, alpha: Fraction, n_vars: int) -> HermitePoly:
    """Monic multivariate Hermite polynomial exp(-D_g/4) P_lam."""
    if n_vars < len(lam):
        raise ValueError("need n_vars >= len(lam)")
    alpha = Fraction(alpha)
    base = to_mpoly(jack(lam, alpha), n_vars)
    return HermitePoly(lam, alpha, n_vars, exp_delta_gaussian(base, alpha, Fraction(-1, 4)))


def laguerre_poly(lam: Partition, alpha: Fraction, gamma: Fraction, n_vars: int) -> LaguerrePoly:
    """Monic multivariate Laguerre polynomial exp(-D_c) P_lam."""
    if n_vars < len(lam):
        raise ValueError("need n_vars >= len(lam)")
    alpha = Fraction(alpha)
    gamma = Fraction(gamma)
    base = to_mpoly(jack(lam, alpha), n_vars)
    return LaguerrePoly(lam, alpha, gamma, n_vars,
                        exp_delta_chiral(base, alpha, gamma, Fraction(-1)))


def hermite_norm(lam: Partition, alpha: Fraction, n_vars: int) -> Fraction:
    """A_lam = (2 alpha)^(-|lam|) * upper_hook * P_lam(1^N)."""
    alpha = Fraction(alpha)
    return (
        upper_hook(lam, alpha)
        * jack_specialization_formula(lam, alpha, n_vars)
        / (2 * alpha) ** lam.weight
    )


def laguerre_norm(lam: Partition, alpha: Fraction, gamma: Fraction, n_vars: int) -> Fraction:
    """B_lam = 2^|lam| * [gamma+q]_lam * A_lam with q = 1 + (N-1)/alpha."""
    alpha = Fraction(alpha)
    gamma = Fraction(gamma)
    q = 1 + Fraction(n_vars - 1) / alpha
    return (
        Fraction(2) ** lam.weight
        * gen_factorial(gamma + q, lam, alpha)
        * hermite_norm(lam, alpha, n_vars)
    )


def orthogonality_check(kind: EnsembleKind, lam: Partition, mu: Partition,
                        alpha: Fraction, gamma: Fraction | None, n_vars: int) -> CheckReport:
    """<H_lam H_mu> = A_lam delta (Gaussian) or <L_lam L_mu> = B_lam delta (chiral)."""
    alpha = Fraction(alpha)
    beta = 2 / alpha
    if kind is EnsembleKind.GAUSSIAN:
        ens = EnsembleSpec.gaussian(beta, n_vars)
        pa = hermite_poly(lam, alpha, n_vars).poly
        pb = pa if mu == lam else hermite_poly(mu, alpha, n_vars).poly
        expected = hermite_norm(lam, alpha, n_vars) if lam == mu else Fraction(0)
    else:
        ens = EnsembleSpec.chiral(beta, n_vars, gamma)
        pa = laguerre_poly(lam, alpha, gamma, n_vars).poly
        pb = pa if mu == lam else laguerre_poly(mu, alpha, gamma, n_vars).poly
        expected = laguerre_norm(lam, alpha, gamma, n_vars) if lam == mu else Fraction(0)
    got = average_mpoly(pa * pb, ens)
    ok = got == expected
    return CheckReport(ok, "orthogonality",
                       f"{kind.value} lam={tuple(lam)} mu={tuple(mu)}: got {got}, expected {expected}")


@dataclass(frozen=True)
class ExtFieldAverage:
    """The operator side exp(D_g/4) F of the external-field transform."""

    alpha: Fraction
    result: MPoly


def external_field_average(poly: MPoly, alpha: Fraction) -> ExtFieldAverage:
    """exp(+D_g/4) F; with the e^{p2} bookkeeping left to the caller this is
    the exact value of the Gaussian average against the two-set exponential kernel."""
    return ExtFieldAverage(Fraction(alpha), exp_delta_gaussian(poly, alpha, Fraction(1, 4)))


# ---------------------------------------------------------------------------
# source / external-field exchange for products of linear factors
# ---------------------------------------------------------------------------


def _product_grid(n_s: int, n_f: int, coupling) -> MPoly:
    """prod_{j<n_s} prod_{k<n_f} (s_j + coupling * f_k) in n_s+n_f variables."""
    total = n_s + n_f
    prod = MPoly.const(total, 1)
    if isinstance(coupling, QuadExt):
        prod = prod.map_coeffs(lambda c: QuadExt.const(c, coupling.d))
    for j in range(n_s):
        for k in range(n_f):
            factor = MPoly(total)
            es = [0] * total
            es[j] = 1
            ef = [0] * total
            ef[n_s + k] = 1
            one = QuadExt.const(1, coupling.d) if isinstance(coupling, QuadExt) else Fraction(1)
            factor.terms[tuple(es)] = one
            factor.terms[tuple(ef)] = coupling
            prod = prod * factor
    return prod


def prop3_poly_check(n_s: int, n_f: int, alpha: Fraction, sign: int = 1) -> CheckReport:
    """Exchange identity for G = prod (s_j + t f_k) with t^2 = -alpha.

    Asserts D_f^(alpha) G = D_s^(1/alpha) G and equality of the exponentials
    exp(D_f/4) G = exp(D_s/4) G, exactly over the quadratic extension.
    """
    alpha = Fraction(alpha)
    t = QuadExt.radical(-alpha)
    coupling = t if sign >= 0 else -t
    g = _product_grid(n_s, n_f, coupling)
    s_idx = list(range(n_s))
    f_idx = list(range(n_s, n_s + n_f))
    lhs = delta_gaussian(g, alpha, f_idx)
    rhs = delta_gaussian(g, 1 / alpha, s_idx)
    if lhs != rhs:
        diff = lhs - rhs
        exp = sorted(diff.terms)[0]
        return CheckReport(False, "charpoly-exchange",
                           f"lowering images differ at exponent {exp}")
    lhs_e = exp_delta_gaussian(g, alpha, Fraction(1, 4), f_idx)
    rhs_e = exp_delta_gaussian(g, 1 / alpha, Fraction(1, 4), s_idx)
    if lhs_e != rhs_e:
        diff = lhs_e - rhs_e
        exp = sorted(diff.terms)[0]
        return CheckReport(False, "charpoly-exchange",
                           f"exponential images differ at exponent {exp}")
    return CheckReport(True, "charpoly-exchange",
                       f"n={n_s}, N={n_f}, alpha={alpha}, sign={'+' if sign >= 0 else '-'}")


def prop4_poly_check(n_s: int, n_f: int, alpha: Fraction, gamma: Fraction) -> CheckReport:
    """Chiral exchange identity for G = prod (s_j + alpha f_k), entirely rational.

    Asserts D_f^(alpha,gamma) G = D_s^(1/alpha,gamma') G with
    gamma' = alpha (gamma+1) - 1.
    """
    alpha = Fraction(alpha)
    gamma = Fraction(gamma)
    gamma_dual = alpha * (gamma + 1) - 1
    g = _product_grid(n_s, n_f, alpha)
    s_idx = list(range(n_s))
    f_idx = list(range(n_s, n_s + n_f))
    lhs = delta_chiral(g, alpha, gamma, f_idx)
    rhs = delta_chiral(g, 1 / alpha, gamma_dual, s_idx)
    if lhs != rhs:
        diff = lhs - rhs
        exp = sorted(diff.terms)[0]
        return CheckReport(False, "chiral-exchange",
                           f"lowering images differ at exponent {exp}")
    return CheckReport(True, "chiral-exchange",
                       f"n={n_s}, N={n_f}, alpha={alpha}, gamma={gamma}")


# ---------------------------------------------------------------------------
# inverse-power parameter solutions, checked at rational points
# ---------------------------------------------------------------------------


def _pole_free(s_pts: Sequence[Fraction], f_pts: Sequence[Fraction], a: Fraction) -> bool:
    if len(set(s_pts)) != len(s_pts) or len(set(f_pts)) != len(f_pts):
        return False
    return all(s - a * f != 0 for s in s_pts for f in f_pts)


def inverse_power_delta_check(case: str, alpha: Fraction, gamma: Fraction | None,
                              s_pts: Sequence[Fraction], f_pts: Sequence[Fraction],
                              a_sign: int = 1) -> CheckReport:
    """Evaluate both lowering images of prod (s_i - a f_k)^b, divided by the
    common power, at a rational point and assert exact equality.

    Gaussian case: a = +-1, b = -1/alpha, alpha' = alpha.  Chiral case:
    a = 1, b = -1/alpha, alpha' = alpha, gamma' = 1/alpha - gamma - 1.
    The Gaussian brackets are evaluated in two algebraically equivalent
    arrangements as a cross-check on the partial-fraction reduction.
    """
    alpha = Fraction(alpha)
    a = Fraction(a_sign)
    b = -1 / alpha
    s_pts = [Fraction(v) for v in s_pts]
    f_pts = [Fraction(v) for v in f_pts]
    if not _pole_free(s_pts, f_pts, a):
        return CheckReport(False, "inverse-power", "point hits a pole; resample")
    inv = {
        (i, k): 1 / (s_pts[i] - a * f_pts[k])
        for i in range(len(s_pts))
        for k in range(len(f_pts))
    }
    n, m = len(s_pts), len(f_pts)
    L = [sum(inv[(i, k)] for i in range(n)) for k in range(m)]
    M = [sum(inv[(i, k)] ** 2 for i in range(n)) for k in range(m)]
    K = [sum(inv[(i, k)] for k in range(m)) for i in range(n)]
    Mp = [sum(inv[(i, k)] ** 2 for k in range(m)) for i in range(n)]

    if case == "gaussian":
        alpha_dual = alpha
        # chain-rule form
        lhs = sum(-a * a * b * M[k] + a * a * b * b * L[k] ** 2 for k in range(m))
        for k in range(m):
            for l in range(m):
                if l == k:
                    continue
                lhs -= a * b * (Fraction(2) / alpha) * L[k] / (f_pts[k] - f_pts[l])
        rhs = sum(-b * Mp[i] + b * b * K[i] ** 2 for i in range(n))
        for i in range(n):
            for j in range(n):
                if j == i:
                    continue
                rhs += b * (Fraction(2) / alpha_dual) * K[i] / (s_pts[i] - s_pts[j])
        # the fully reduced bracket arrangement
        lhs2 = Fraction(0)
        rhs2 = Fraction(0)
        for i in range(n):
            for k in range(m):
                inner_l = a * a * b * (b - 1) * inv[(i, k)]
                inner_l += a * a * b * b * sum(inv[(j, k)] for j in range(n) if j != i)
                inner_l -= (a * a * b / alpha) * sum(inv[(i, l)] for l in range(m) if l != k)
                lhs2 += inv[(i, k)] * inner_l
                inner_r = b * (b - 1) * inv[(i, k)]
                inner_r -= (b / alpha_dual) * sum(inv[(j, k)] for j in range(n) if j != i)
                inner_r += b * b * sum(inv[(i, l)] for l in range(m) if l != k)
                rhs2 += inv[(i, k)] * inner_r
        ok = lhs == rhs == lhs2 == rhs2
        return CheckReport(ok, "inverse-power-gaussian",
                           f"a={a}: {lhs} vs {rhs} (brackets {lhs2} vs {rhs2})")

    if case == "chiral":
        gamma = Fraction(gamma)
        gamma_dual = 1 / alpha - gamma - 1
        lhs = Fraction(0)
        for k in range(m):
            lhs += f_pts[k] * (-a * a * b * M[k] + a * a * b * b * L[k] ** 2)
            lhs -= a * b * (gamma + 1) * L[k]
            for l in range(m):
                if l != k:
                    lhs -= a * b * (Fraction(2) / alpha) * f_pts[k] * L[k] / (f_pts[k] - f_pts[l])
        rhs = Fraction(0)
        for i in range(n):
            rhs += s_pts[i] * (-b * Mp[i] + b * b * K[i] ** 2)
            rhs += b * (gamma_dual + 1) * K[i]
            for j in range(n):
                if j != i:
                    rhs += b * (Fraction(2) / alpha) * s_pts[i] * K[i] / (s_pts[i] - s_pts[j])
        ok = lhs == rhs
        return CheckReport(ok, "inverse-power-chiral", f"{lhs} vs {rhs}")
    raise ValueError(f"unknown case {case!r}")


def delta_logderiv_gaussian(alpha: Fraction, a: Fraction, b: Fraction,
                            s_pts: Sequence[Fraction], f_pts: Sequence[Fraction],
                            side: str) -> Fraction:
    """(D G)/G at a point for G = prod (s_i - a f_k)^b, by the chain rule.

    side "f" applies the Gaussian operator in the f variables at parameter
    alpha; side "s" applies it in the s variables.  Used to validate the
    bracket evaluations against the polynomial operator at integer b.
    """
    alpha = Fraction(alpha)
    s_pts = [Fraction(v) for v in s_pts]
    f_pts = [Fraction(v) for v in f_pts]
    inv = {
        (i, k): 1 / (s_pts[i] - a * f_pts[k])
        for i in range(len(s_pts))
        for k in range(len(f_pts))
    }
    n, m = len(s_pts), len(f_pts)
    if side == "f":
        L = [sum(inv[(i, k)] for i in range(n)) for k in range(m)]
        M = [sum(inv[(i, k)] ** 2 for i in range(n)) for k in range(m)]
        out = sum(-a * a * b * M[k] + a * a * b * b * L[k] ** 2 for k in range(m))
        for k in range(m):
            for l in range(m):
                if l != k:
                    out -= a * b * (Fraction(2) / alpha) * L[k] / (f_pts[k] - f_pts[l])
        return out
    K = [sum(inv[(i, k)] for k in range(m)) for i in range(n)]
    Mp = [sum(inv[(i, k)] ** 2 for k in range(m)) for i in range(n)]
    out = sum(-b * Mp[i] + b * b * K[i] ** 2 for i in range(n))
    for i in range(n):
        for j in range(n):
            if j != i:
                out += b * (Fraction(2) / alpha) * K[i] / (s_pts[i] - s_pts[j])
    return out


# ---------------------------------------------------------------------------
# characteristic-polynomial products as Hermite / Laguerre polynomials
# ---------------------------------------------------------------------------


def charpoly_product_average(n_s: int, n_f: int, alpha: Fraction,
                             radical_square: Fraction) -> MPoly:
    """<prod_{j,k} (s_j + r x_k)> over the Gaussian ensemble, with r^2 fixed.

    r^2 = alpha gives the real-coupling average (a multivariate Hermite
    polynomial in s); r^2 = -alpha the imaginary-coupling one.  Only even
    powers of r survive the average, so the result is rational either way.
    """
    alpha = Fraction(alpha)
    radical_square = Fraction(radical_square)
    root = rat_sqrt(radical_square) if radical_square >= 0 else None
    coupling = root if root is not None else QuadExt.radical(radical_square)
    grid = _product_grid(n_s, n_f, coupling)
    ens = EnsembleSpec.gaussian(2 / alpha, n_f)
    out = MPoly(n_s)
    for exp, coeff in grid.terms.items():
        s_exp = exp[:n_s]
        x_exp = exp[n_s:]
        mu = Partition(sorted((e for e in x_exp if e), reverse=True))
        if mu.weight % 2:
            continue
        value = average_monomial(mu, ens) / monomial_count(mu, n_f)
        term = coeff * value
        acc = out.terms.get(s_exp)
        acc = term if acc is None else acc + term
        if acc == 0:
            out.terms.pop(s_exp, None)
        else:
            out.terms[s_exp] = acc
    if root is None:
        out = out.map_coeffs(lambda c: c.to_rat() if isinstance(c, QuadExt) else c)
    return out


def rectangle_power(n_vars: int, power: int) -> MPoly:
    """(s_1 ... s_n)^power, the rectangular Jack polynomial in its own variables."""
    poly = MPoly(n_vars)
    poly.terms[(power,) * n_vars] = Fraction(1)
    return poly


def hermite_rect_identity(n_s: int, n_f: int, alpha: Fraction) -> CheckReport:
    """Moment path vs operator path for the rectangular Hermite polynomial.

    <prod (s_j + sqrt(alpha) x_k)>_{GbetaE_{n_f}} must equal
    exp(-D_s^(1/alpha)/4) (s_1...s_{n_s})^{n_f}, exactly.
    """
    alpha = Fraction(alpha)
    moment_side = charpoly_product_average(n_s, n_f, alpha, alpha)
    lassalle = exp_delta_gaussian(rectangle_power(n_s, n_f), 1 / alpha, Fraction(-1, 4))
    ok = moment_side == lassalle
    detail = f"n={n_s}, N={n_f}, alpha={alpha}"
    if not ok:
        diff = moment_side - lassalle
        detail += f"; first divergent term {sorted(diff.terms)[0]}"
    return CheckReport(ok, "hermite-rectangular", detail,
                       data={"moment": moment_side, "operator": lassalle})


def charpoly_imaginary_identity(n_s: int, n_f: int, alpha: Fraction) -> CheckReport:
    """Imaginary-coupling companion: <prod (s_j + i sqrt(alpha) x_k)> equals
    exp(+D_s^(1/alpha)/4) (s_1...s_n)^N."""
    alpha = Fraction(alpha)
    moment_side = charpoly_product_average(n_s, n_f, alpha, -alpha)
    raised = exp_delta_gaussian(rectangle_power(n_s, n_f), 1 / alpha, Fraction(1, 4))
    ok = moment_side == raised
    return CheckReport(ok, "charpoly-imaginary", f"n={n_s}, N={n_f}, alpha={alpha}",
                       data={"moment": moment_side, "operator": raised})


def laguerre_rect_identity(n_s: int, n_f: int, alpha: Fraction, gamma: Fraction) -> CheckReport:
    """Chiral moment path vs operator path for the rectangular Laguerre polynomial.

    <prod (s_j - alpha x_k)>_{chiral} = exp(-D_c^(1/alpha,gamma')) (s_1...s_n)^N
    with gamma' = alpha (gamma+1) - 1.
    """
    alpha = Fraction(alpha)
    gamma = Fraction(gamma)
    gamma_dual = alpha * (gamma + 1) - 1
    grid = _product_grid(n_s, n_f, -alpha)
    ens = EnsembleSpec.chiral(2 / alpha, n_f, gamma)
    moment_side = MPoly(n_s)
    for exp, coeff in grid.terms.items():
        s_exp = exp[:n_s]
        mu = Partition(sorted((e for e in exp[n_s:] if e), reverse=True))
        value = average_monomial(mu, ens) / monomial_count(mu, n_f)
        acc = moment_side.terms.get(s_exp, Fraction(0)) + coeff * value
        if acc == 0:
            moment_side.terms.pop(s_exp, None)
        else:
            moment_side.terms[s_exp] = acc
    lassalle = exp_delta_chiral(rectangle_power(n_s, n_f), 1 / alpha, gamma_dual, Fraction(-1))
    ok = moment_side == lassalle
    detail = f"n={n_s}, N={n_f}, alpha={alpha}, gamma={gamma}"
    if not ok:
        diff = moment_side - lassalle
        detail += f"; first divergent term {sorted(diff.terms)[0]}"
    return CheckReport(ok, "laguerre-rectangular", detail,
                       data={"moment": moment_side, "operator": lassalle})


# ---------------------------------------------------------------------------
# multiple Hermite polynomials (one variable, several Gaussian shifts)
# ---------------------------------------------------------------------------


def multiple_hermite(g_values: Sequence[Fraction], multiplicities: Sequence[int]) -> List[Fraction]:
    """Monic multiple Hermite polynomial of the shifts, ascending z coefficients.

    Expands (-i)^N/sqrt(pi) int exp(-(y-iz)^2) prod (y - i g_j/2)^{n_j} dy by
    the shift u = y - iz and even Gaussian moments; the imaginary parts must
    cancel identically.
    """
    if len(g_values) != len(multiplicities):
        raise ValueError("one multiplicity per shift")
    n_total = sum(multiplicities)
    # variables: u (index 0) and z (index 1), coefficients Gaussian rationals
    prod = MPoly.const(2, GaussRat.of(1))
    i_unit = GaussRat.i()
    for g, mult in zip(g_values, multiplicities):
        g = Fraction(g)
        factor = MPoly(2)
        factor.terms[(1, 0)] = GaussRat.of(1)
        factor.terms[(0, 1)] = i_unit
        const = i_unit * GaussRat.of(-g / 2)
        if const:
            factor.terms[(0, 0)] = const
        prod = prod * factor**mult if mult > 1 else prod * factor
    coeffs: Dict[int, GaussRat] = {}
    for (u_pow, z_pow), coeff in prod.terms.items():
        if u_pow % 2:
            continue
        moment = Fraction(double_factorial(u_pow - 1), 2 ** (u_pow // 2))
        acc = coeffs.get(z_pow, GaussRat.of(0)) + coeff * moment
        coeffs[z_pow] = acc
    front = (-GaussRat.i()) ** n_total
    out: List[Fraction] = []
    for k in range(n_total + 1):
        value = front * coeffs.get(k, GaussRat.of(0))
        if value.im != 0:
            raise AssertionError("imaginary part failed to cancel in multiple Hermite")
        out.append(value.re)
    return out


def mhermite_matrix_consistency(g_values: Sequence[Fraction],
                                multiplicities: Sequence[int]) -> CheckReport:
    """Single-integral route vs unitary-ensemble external-field route.

    The field route computes exp(+D_y^(1)/4) prod (z - y_k) and evaluates at
    y_k = g_j/2 with the prescribed multiplicities; the half-shift pins the
    kernel-doubling convention and is locked by the z - g/2 anchor.
    """
    n_total = sum(multiplicities)
    nv = 1 + n_total
    prod = MPoly.const(nv, 1)
    for k in range(n_total):
        factor = MPoly(nv)
        ez = [0] * nv
        ez[0] = 1
        ey = [0] * nv
        ey[1 + k] = 1
        factor.terms[tuple(ez)] = Fraction(1)
        factor.terms[tuple(ey)] = Fraction(-1)
        prod = prod * factor
    raised = exp_delta_gaussian(prod, Fraction(1), Fraction(1, 4), idxs=range(1, nv))
    point = []
    for g, mult in zip(g_values, multiplicities):
        point.extend([Fraction(g) / 2] * mult)
    for idx, value in enumerate(point, start=1):
        raised = raised.subs(idx, value)
    field_route = [Fraction(0)] * (n_total + 1)
    for exp, coeff in raised.terms.items():
        field_route[exp[0]] += coeff
    integral_route = multiple_hermite(g_values, multiplicities)
    ok = field_route == integral_route
    return CheckReport(ok, "multiple-hermite",
                       f"g={tuple(map(str, g_values))}, mult={tuple(multiplicities)}; "
                       f"{'match' if ok else f'{field_route} vs {integral_route}'}")


# ---------------------------------------------------------------------------
# formal one-matrix model
# ---------------------------------------------------------------------------


def _exp_series(arg: MPoly, degree: int) -> MPoly:
    """exp(arg) truncated at total degree; arg must have no constant term."""
    if (0,) * arg.nvars in arg.terms:
        raise ValueError("exponential series needs a vanishing constant term")
    out = MPoly.const(arg.nvars, 1)
    if isinstance(next(iter(arg.terms.values()), None), QuadExt):
        d = next(iter(arg.terms.values())).d
        out = out.map_coeffs(lambda c: QuadExt.const(c, d))
    term = out
    k = 0
    while True:
        k += 1
        term = term.mul_truncated(arg, degree).scale(Fraction(1, k))
        if not term.terms:
            break
        out = out + term
    return out


def _power_sum_point(values: Sequence[Fraction], k: int) -> Fraction:
    return sum((Fraction(v) ** k for v in values), Fraction(0))


def formal_model_check(n_s: int, n_f: int, alpha: Fraction, u: Fraction,
                       s_pts: Sequence[Fraction], degree: int) -> CheckReport:
    """Trace-potential expansion of the formal one-matrix model.

    (a) With couplings t_1 = -2u + v p_1(1/s), t_2 = 2 + v^2 p_2(1/s),
        t_k = v^k p_k(1/s) and v^2 = -alpha, the exponential of the potential
        equals det(S)^{-N} prod (s_j - v x_k) exp(-p_2 + 2 u p_1) as a formal
        series in x, verified through the given total degree.
    (b) At u = 0 the same identity with the real coupling v = sqrt(alpha)
        terminates: the series is exactly the polynomial, whose ensemble
        average reproduces the rectangular Hermite polynomial of (s).
    """
    alpha = Fraction(alpha)
    u = Fraction(u)
    s_pts = [Fraction(v) for v in s_pts]
    if any(v == 0 for v in s_pts):
        raise ValueError("source eigenvalues must be nonzero")

    def run_side(radical_square: Fraction, deg: int, u_val: Fraction):
        root = rat_sqrt(radical_square) if radical_square >= 0 else None
        if root is None:
            v_coup = QuadExt.radical(radical_square)
            embed = lambda c: QuadExt.const(c, radical_square)
        else:
            v_coup = root
            embed = lambda c: Fraction(c)
        arg = MPoly(n_f)
        for k in range(1, deg + 1):
            pk_inv = _power_sum_point([1 / v for v in s_pts], k)
            tk = v_coup**k * embed(pk_inv)
            if k == 1:
                tk = tk + embed(-2 * u_val)
            if k == 2:
                tk = tk + embed(2)
            if tk == 0:
                continue
            for i in range(n_f):
                exp = [0] * n_f
                exp[i] = k
                key = tuple(exp)
                acc = arg.terms.get(key)
                val = -tk * Fraction(1, k)
                acc = val if acc is None else acc + val
                if acc == 0:
                    arg.terms.pop(key, None)
                else:
                    arg.terms[key] = acc
        lhs = _exp_series(arg, deg)
        # right side: det(S)^{-N} prod_j prod_k (s_j - v x_k) exp(-p2 + 2u p1)
        det_s = Fraction(1)
        for v in s_pts:
            det_s *= v
        prod = MPoly.const(n_f, embed(1) if root is None else Fraction(1))
        for s_val in s_pts:
            for k in range(n_f):
                factor = MPoly(n_f)
                exp = [0] * n_f
                factor.terms[tuple(exp)] = embed(s_val)
                exp[k] = 1
                factor.terms[tuple(exp)] = -v_coup
                prod = prod * factor
        gauss_arg = MPoly(n_f)
        for i in range(n_f):
            exp = [0] * n_f
            exp[i] = 2
            gauss_arg.terms[tuple(exp)] = embed(-1)
            exp2 = [0] * n_f
            exp2[i] = 1
            key = tuple(exp2)
            if u_val:
                gauss_arg.terms[key] = embed(2 * u_val)
        rhs = prod.mul_truncated(_exp_series(gauss_arg, deg), deg).scale(
            embed(Fraction(1) / det_s**n_f)
        )
        return lhs, rhs

    lhs, rhs = run_side(-alpha, degree, u)
    if lhs != rhs:
        diff = lhs - rhs
        return CheckReport(False, "formal-model",
                           f"series mismatch at exponent {sorted(diff.terms)[0]}")

    # (b) u = 0, real coupling: multiplying the series back by exp(p_2) must
    # close it onto the bare polynomial det(S)^{-N} prod (s_j - v x_k), whose
    # ensemble average is the rectangular Hermite value at the point.
    deg_b = max(degree, n_s * n_f + 2)
    lhs_b, rhs_b = run_side(alpha, deg_b, Fraction(0))
    if lhs_b != rhs_b:
        return CheckReport(False, "formal-model", "real-coupling series mismatch")
    root = rat_sqrt(alpha)
    is_quad = root is None
    embed_b = (lambda c: QuadExt.const(c, alpha)) if is_quad else (lambda c: Fraction(c))
    v_coup = QuadExt.radical(alpha) if is_quad else root
    p2_arg = MPoly(n_f)
    for i in range(n_f):
        exp = [0] * n_f
        exp[i] = 2
        p2_arg.terms[tuple(exp)] = embed_b(1)
    closed = lhs_b.mul_truncated(_exp_series(p2_arg, deg_b), deg_b)
    det_s = Fraction(1)
    for v in s_pts:
        det_s *= v
    bare = MPoly.const(n_f, embed_b(1))
    for s_val in s_pts:
        for k in range(n_f):
            factor = MPoly(n_f)
            exp = [0] * n_f
            factor.terms[tuple(exp)] = embed_b(s_val)
            exp[k] = 1
            factor.terms[tuple(exp)] = -v_coup
            bare = bare * factor
    bare = bare.scale(embed_b(Fraction(1) / det_s**n_f))
    if closed != bare:
        return CheckReport(False, "formal-model",
                           "series did not close onto the characteristic-polynomial product")
    avg = average_mpoly_mixed(bare, EnsembleSpec.gaussian(2 / alpha, n_f))
    hermite = exp_delta_gaussian(rectangle_power(n_s, n_f), 1 / alpha, Fraction(-1, 4))
    expected = hermite.eval(s_pts) / det_s**n_f
    ok = avg == expected
    detail = f"n={n_s}, N={n_f}, alpha={alpha}, u={u}, degree {degree}"
    if not ok:
        detail += f"; partition-function value {avg} vs Hermite {expected}"
    return CheckReport(ok, "formal-model", detail)


def average_mpoly_mixed(poly: MPoly, ens: EnsembleSpec) -> Fraction:
    """Ensemble average of a polynomial whose coefficients may carry a radical;
    the radical must cancel in the result."""
    total = average_mpoly(poly, ens)
    if isinstance(total, QuadExt):
        return total.to_rat()
    return total
