"""Symmetric-function bases, the combinatorial scalar product and Jack polynomials.

Symmetric functions are stored abstractly as graded coefficient maps
Partition -> Fraction in one of three bases: monomial (m), power sum (p) or
Jack (alpha-dependent).  The scalar product is the alpha-deformed Fock-space
pairing <<p_lam | p_mu>> = alpha^len(lam) * z_lam * delta, under which the
Jack polynomials are the unique monic dominance-triangular orthogonal family;
they are built here by Gram-Schmidt over the dominance-lower monomials.  An
independent characterisation through a degenerate Calogero-type operator D is
provided as a validator.
"""

from __future__ import annotations

import enum
import json
import os
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Dict, Iterable, List, Sequence, Tuple

from .exactnum import MPoly, NonExactDivisionError, divided_difference
from .partitions import (
    Partition,
    b_coeff,
    dominance_sort_key,
    dominates,
    fmt_partition,
    hook_data,
    lower_hook,
    monomial_count,
    parse_partition,
    partitions_of,
    upper_hook,
    z_lambda,
)
from .report import CheckReport

DEGREE_CAP = 12


class DegreeCapError(ValueError):
    """Requested degree exceeds the configured cap."""


class Basis(enum.Enum):
    M = "m"
    P = "p"
    JACK = "jack"


Coeffs = Dict[Partition, Fraction]


@dataclass(frozen=True)
class SymFunc:
    """Homogeneous symmetric function as a coefficient map in a tagged basis."""

    basis: Basis
    degree: int
    coeffs: Coeffs
    alpha: Fraction | None = None

    def __post_init__(self):
        for lam, c in list(self.coeffs.items()):
            if lam.weight != self.degree:
                raise ValueError(f"partition {lam} has weight != degree {self.degree}")
            if c == 0:
                del self.coeffs[lam]
        if self.basis is Basis.JACK and self.alpha is None:
            raise ValueError("Jack-basis functions need alpha")

    @staticmethod
    def unit(basis: Basis, lam: Partition, alpha: Fraction | None = None) -> "SymFunc":
        return SymFunc(basis, lam.weight, {lam: Fraction(1)}, alpha)

    @staticmethod
    def zero(basis: Basis, degree: int, alpha: Fraction | None = None) -> "SymFunc":
        return SymFunc(basis, degree, {}, alpha)

    def __add__(self, other: "SymFunc") -> "SymFunc":
        if self.basis is not other.basis or self.degree != other.degree:
            raise ValueError("can only add same-basis, same-degree functions")
        out = dict(self.coeffs)
        for lam, c in other.coeffs.items():
            acc = out.get(lam, Fraction(0)) + c
            if acc == 0:
                out.pop(lam, None)
            else:
                out[lam] = acc
        return SymFunc(self.basis, self.degree, out, self.alpha)

    def scale(self, scalar: Fraction) -> "SymFunc":
        scalar = Fraction(scalar)
        if scalar == 0:
            return SymFunc(self.basis, self.degree, {}, self.alpha)
        return SymFunc(
            self.basis, self.degree, {k: v * scalar for k, v in self.coeffs.items()}, self.alpha
        )

    def __sub__(self, other: "SymFunc") -> "SymFunc":
        return self + other.scale(Fraction(-1))


# ---------------------------------------------------------------------------
# power-sum <-> monomial conversion matrices, cached per degree
# ---------------------------------------------------------------------------


def _pr_times_m(r: int, mu: Partition, coeff: Fraction, out: Dict[Partition, Fraction]):
    """Accumulate coeff * p_r * m_mu into out (monomial expansion rule).

    Adding r to one part k of mu (k = 0 appends a new part) produces nu with
    multiplicity weight n_{k+r}(nu).
    """
    choices = set(mu)
    choices.add(0)
    for k in sorted(choices):
        if k == 0:
            nu = Partition(sorted(tuple(mu) + (r,), reverse=True))
        else:
            parts = list(mu)
            parts.remove(k)
            parts.append(k + r)
            nu = Partition(sorted(parts, reverse=True))
        mult = nu.multiplicity(k + r)
        acc = out.get(nu, Fraction(0)) + coeff * mult
        if acc == 0:
            out.pop(nu, None)
        else:
            out[nu] = acc


def _p_to_m_single(lam: Partition) -> Dict[Partition, Fraction]:
    current: Dict[Partition, Fraction] = {Partition(): Fraction(1)}
    for r in lam:
        nxt: Dict[Partition, Fraction] = {}
        for mu, c in current.items():
            _pr_times_m(r, mu, c, nxt)
        current = nxt
    return current


_P2M_CACHE: Dict[int, Dict[Partition, Dict[Partition, Fraction]]] = {}
_M2P_CACHE: Dict[int, Dict[Partition, Dict[Partition, Fraction]]] = {}


def ordered_partitions(degree: int) -> List[Partition]:
    """Partitions of the degree in a linear extension of dominance, lowest first."""
    return sorted(partitions_of(degree), key=dominance_sort_key)


def p_to_m_matrix(degree: int) -> Dict[Partition, Dict[Partition, Fraction]]:
    if degree not in _P2M_CACHE:
        _P2M_CACHE[degree] = {lam: _p_to_m_single(lam) for lam in partitions_of(degree)}
    return _P2M_CACHE[degree]


def m_to_p_matrix(degree: int) -> Dict[Partition, Dict[Partition, Fraction]]:
    """Inverse of the triangular p->m matrix, by back-substitution."""
    if degree in _M2P_CACHE:
        return _M2P_CACHE[degree]
    order = ordered_partitions(degree)
    a = p_to_m_matrix(degree)
    inv: Dict[Partition, Dict[Partition, Fraction]] = {}
    for mu in order:
        # solve sum_lam x[lam] * p2m[lam][nu] = delta_{nu,mu} column by column,
        # ascending in the dominance extension (the matrix is upper triangular)
        x: Dict[Partition, Fraction] = {}
        for nu in order:
            acc = Fraction(1) if nu == mu else Fraction(0)
            for lam, val in x.items():
                c = a[lam].get(nu)
                if c:
                    acc -= val * c
            if acc != 0:
                x[nu] = acc / a[nu][nu]
        inv[mu] = x
    _M2P_CACHE[degree] = inv
    return inv


# ---------------------------------------------------------------------------
# Jack polynomials by Gram-Schmidt in the power-sum metric
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class JackEntry:
    m_coeffs: Coeffs
    p_coeffs: Coeffs
    norm2: Fraction


def _p_weight(nu: Partition, alpha: Fraction) -> Fraction:
    return alpha ** len(nu) * z_lambda(nu)


class JackCache:
    """Cache of computed Jack polynomials keyed by (partition, alpha).

    Values are reproducible from scratch, so concurrent last-write-wins
    insertion is safe.  When the environment variable BETAJACK_CACHE_DIR is
    set, entries persist as one JSON object per line in jack_cache.jsonl
    under that directory.
    """

    def __init__(self, cache_dir: str | None = None):
        self._entries: Dict[Tuple[Partition, Fraction], JackEntry] = {}
        self._done_degrees: set[Tuple[int, Fraction]] = set()
        if cache_dir is None:
            cache_dir = os.environ.get("BETAJACK_CACHE_DIR") or None
        self._path = None
        if cache_dir:
            os.makedirs(cache_dir, exist_ok=True)
            self._path = os.path.join(cache_dir, "jack_cache.jsonl")
            self._load()

    def _load(self):
        if not self._path or not os.path.exists(self._path):
            return
        with open(self._path, "r", encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                obj = json.loads(line)
                lam = parse_partition(obj["lambda"])
                alpha = Fraction(obj["alpha"])
                entry = JackEntry(
                    m_coeffs={parse_partition(k): Fraction(v) for k, v in obj["m"].items()},
                    p_coeffs={parse_partition(k): Fraction(v) for k, v in obj["p"].items()},
                    norm2=Fraction(obj["norm2"]),
                )
                self._entries[(lam, alpha)] = entry

    def _persist(self, lam: Partition, alpha: Fraction, entry: JackEntry):
        if not self._path:
            return
        obj = {
            "lambda": fmt_partition(lam),
            "alpha": str(alpha),
            "m": {fmt_partition(k): str(v) for k, v in entry.m_coeffs.items()},
            "p": {fmt_partition(k): str(v) for k, v in entry.p_coeffs.items()},
            "norm2": str(entry.norm2),
        }
        with open(self._path, "a", encoding="utf-8") as fh:
            fh.write(json.dumps(obj, sort_keys=True) + "\n")

    def entry(self, lam: Partition, alpha: Fraction) -> JackEntry:
        alpha = Fraction(alpha)
        key = (lam, alpha)
        if key not in self._entries:
            self._compute_degree(lam.weight, alpha)
        return self._entries[key]

    def _compute_degree(self, degree: int, alpha: Fraction):
        if degree > DEGREE_CAP:
            raise DegreeCapError(f"degree {degree} exceeds cap {DEGREE_CAP}")
        if (degree, alpha) in self._done_degrees:
            return
        order = ordered_partitions(degree)
        m2p = m_to_p_matrix(degree)
        weights = {nu: _p_weight(nu, alpha) for nu in order}
        built: List[Tuple[Partition, Dict[Partition, Fraction], Dict[Partition, Fraction], Fraction]] = []
        for lam in order:
            v_p = dict(m2p[lam])
            v_m: Dict[Partition, Fraction] = {lam: Fraction(1)}
            for mu, mu_p, mu_m, mu_norm2 in built:
                if not dominates(lam, mu):
                    continue
                inner = Fraction(0)
                for nu, c in v_p.items():
                    d = mu_p.get(nu)
                    if d:
                        inner += c * d * weights[nu]
                if inner == 0:
                    continue
                factor = inner / mu_norm2
                for nu, c in mu_p.items():
                    acc = v_p.get(nu, Fraction(0)) - factor * c
                    if acc == 0:
                        v_p.pop(nu, None)
                    else:
                        v_p[nu] = acc
                for nu, c in mu_m.items():
                    acc = v_m.get(nu, Fraction(0)) - factor * c
                    if acc == 0:
                        v_m.pop(nu, None)
                    else:
                        v_m[nu] = acc
            norm2 = sum((c * c * weights[nu] for nu, c in v_p.items()), Fraction(0))
            built.append((lam, v_p, v_m, norm2))
            entry = JackEntry(m_coeffs=v_m, p_coeffs=v_p, norm2=norm2)
            if (lam, alpha) not in self._entries:
                self._entries[(lam, alpha)] = entry
                self._persist(lam, alpha, entry)
        self._done_degrees.add((degree, alpha))


_default_cache = JackCache()


def default_cache() -> JackCache:
    return _default_cache


def jack(lam: Partition, alpha: Fraction, basis: Basis = Basis.M, cache: JackCache | None = None) -> SymFunc:
    """The monic Jack polynomial P_lam at parameter alpha, in m or p basis."""
    alpha = Fraction(alpha)
    if alpha <= 0:
        raise ValueError("alpha must be a positive rational")
    entry = (cache or _default_cache).entry(lam, alpha)
    if basis is Basis.M:
        return SymFunc(Basis.M, lam.weight, dict(entry.m_coeffs), alpha)
    if basis is Basis.P:
        return SymFunc(Basis.P, lam.weight, dict(entry.p_coeffs), alpha)
    return SymFunc(Basis.JACK, lam.weight, {lam: Fraction(1)}, alpha)


def jack_norm2(lam: Partition, alpha: Fraction, cache: JackCache | None = None) -> Fraction:
    return (cache or _default_cache).entry(lam, Fraction(alpha)).norm2


# ---------------------------------------------------------------------------
# basis conversion and the scalar product
# ---------------------------------------------------------------------------


def to_basis(f: SymFunc, target: Basis, alpha: Fraction | None = None) -> SymFunc:
    """Exact change of basis; round trips are the identity."""
    if f.degree > DEGREE_CAP:
        raise DegreeCapError(f"degree {f.degree} exceeds cap {DEGREE_CAP}")
    if alpha is None:
        alpha = f.alpha
    if target is f.basis:
        return f
    if f.basis is Basis.JACK:
        acc: Coeffs = {}
        for lam, c in f.coeffs.items():
            entry = _default_cache.entry(lam, f.alpha)
            src = entry.m_coeffs if target is not Basis.P else entry.p_coeffs
            if target is Basis.M or target is Basis.P:
                for mu, d in src.items():
                    val = acc.get(mu, Fraction(0)) + c * d
                    if val == 0:
                        acc.pop(mu, None)
                    else:
                        acc[mu] = val
        return SymFunc(target, f.degree, acc, alpha)
    if target is Basis.JACK:
        if alpha is None:
            raise ValueError("conversion to the Jack basis needs alpha")
        fm = to_basis(f, Basis.M)
        residual = dict(fm.coeffs)
        out: Coeffs = {}
        for lam in reversed(ordered_partitions(f.degree)):
            c = residual.get(lam)
            if not c:
                continue
            out[lam] = c
            entry = _default_cache.entry(lam, Fraction(alpha))
            for mu, d in entry.m_coeffs.items():
                acc2 = residual.get(mu, Fraction(0)) - c * d
                if acc2 == 0:
                    residual.pop(mu, None)
                else:
                    residual[mu] = acc2
        if residual:
            raise AssertionError("Jack-basis conversion left a residual")
        return SymFunc(Basis.JACK, f.degree, out, Fraction(alpha))
    matrix = p_to_m_matrix(f.degree) if f.basis is Basis.P else m_to_p_matrix(f.degree)
    acc = {}
    for lam, c in f.coeffs.items():
        for mu, d in matrix[lam].items():
            val = acc.get(mu, Fraction(0)) + c * d
            if val == 0:
                acc.pop(mu, None)
            else:
                acc[mu] = val
    return SymFunc(target, f.degree, acc, alpha)


def scalar_product(f: SymFunc, g: SymFunc, alpha: Fraction) -> Fraction:
    """Bilinear extension of <<p_lam|p_mu>> = alpha^len * z_lam * delta."""
    if f.degree != g.degree:
        raise ValueError("scalar product needs equal degrees")
    alpha = Fraction(alpha)
    fp = to_basis(f, Basis.P)
    gp = to_basis(g, Basis.P)
    total = Fraction(0)
    small, big = (fp, gp) if len(fp.coeffs) <= len(gp.coeffs) else (gp, fp)
    for nu, c in small.coeffs.items():
        d = big.coeffs.get(nu)
        if d:
            total += c * d * _p_weight(nu, alpha)
    return total


def omega(f: SymFunc, k: Fraction) -> SymFunc:
    """Macdonald automorphism p_n -> (-1)^(n-1) * k * p_n, extended multiplicatively."""
    k = Fraction(k)
    fp = to_basis(f, Basis.P)
    out: Coeffs = {}
    for nu, c in fp.coeffs.items():
        sign = -1 if (nu.weight - len(nu)) % 2 else 1
        val = c * sign * k ** len(nu)
        if val != 0:
            out[nu] = val
    return SymFunc(Basis.P, f.degree, out, f.alpha)


def multiply(f: SymFunc, g: SymFunc) -> SymFunc:
    """Exact product, returned in the monomial basis."""
    if f.degree + g.degree > DEGREE_CAP:
        raise DegreeCapError("product degree exceeds cap")
    fp = to_basis(f, Basis.P)
    gp = to_basis(g, Basis.P)
    out: Coeffs = {}
    for lam, a in fp.coeffs.items():
        for mu, b in gp.coeffs.items():
            nu = Partition(sorted(tuple(lam) + tuple(mu), reverse=True))
            acc = out.get(nu, Fraction(0)) + a * b
            if acc == 0:
                out.pop(nu, None)
            else:
                out[nu] = acc
    prod_p = SymFunc(Basis.P, f.degree + g.degree, out)
    return to_basis(prod_p, Basis.M)


def specialize(f: SymFunc, n_vars: int) -> Fraction:
    """Value at x = (1, 1, ..., 1) with n_vars ones."""
    if n_vars < 0:
        raise ValueError("n_vars must be >= 0")
    fm = to_basis(f, Basis.M)
    return sum(
        (c * monomial_count(mu, n_vars) for mu, c in fm.coeffs.items()), Fraction(0)
    )


def _distinct_permutations(items: Tuple[int, ...]) -> Iterable[Tuple[int, ...]]:
    seen = set()
    for perm in permutations(items):
        if perm not in seen:
            seen.add(perm)
            yield perm


def monomial_value(mu: Partition, points: Sequence[Fraction]) -> Fraction:
    """m_mu evaluated at an explicit point."""
    n = len(points)
    if len(mu) > n:
        return Fraction(0)
    padded = tuple(mu) + (0,) * (n - len(mu))
    total = Fraction(0)
    for perm in _distinct_permutations(padded):
        term = Fraction(1)
        for e, x in zip(perm, points):
            if e:
                term *= Fraction(x) ** e
        total += term
    return total


def evaluate(f: SymFunc, points: Sequence[Fraction]) -> Fraction:
    """Exact evaluation at a rational point; the empty point gives the constant term."""
    fm = to_basis(f, Basis.M)
    if not points:
        return fm.coeffs.get(Partition(), Fraction(0))
    return sum((c * monomial_value(mu, points) for mu, c in fm.coeffs.items()), Fraction(0))


# ---------------------------------------------------------------------------
# explicit-variable bridge
# ---------------------------------------------------------------------------


def monomial_mpoly(mu: Partition, n_vars: int) -> MPoly:
    poly = MPoly(n_vars)
    if len(mu) > n_vars:
        return poly
    padded = tuple(mu) + (0,) * (n_vars - len(mu))
    for perm in _distinct_permutations(padded):
        poly.terms[perm] = Fraction(1)
    return poly


def to_mpoly(f: SymFunc, n_vars: int) -> MPoly:
    fm = to_basis(f, Basis.M)
    poly = MPoly(n_vars)
    for mu, c in fm.coeffs.items():
        if len(mu) > n_vars:
            continue
        padded = tuple(mu) + (0,) * (n_vars - len(mu))
        for perm in _distinct_permutations(padded):
            poly.terms[perm] = c
    return poly


def mpoly_to_symfunc(poly: MPoly, check_symmetric: bool = True) -> List[SymFunc]:
    """Split a symmetric polynomial into homogeneous m-basis components."""
    graded: Dict[int, Coeffs] = {}
    for exp, coeff in poly.terms.items():
        mu = Partition(sorted((e for e in exp if e), reverse=True))
        layer = graded.setdefault(mu.weight, {})
        rep = layer.get(mu)
        if rep is None:
            layer[mu] = coeff
        elif check_symmetric and rep != coeff:
            raise ValueError("polynomial is not symmetric")
    if check_symmetric:
        for exp, coeff in poly.terms.items():
            mu = Partition(sorted((e for e in exp if e), reverse=True))
            if graded[mu.weight][mu] != coeff:
                raise ValueError("polynomial is not symmetric")
    return [SymFunc(Basis.M, d, coeffs) for d, coeffs in sorted(graded.items())]


def power_sum_mpoly(k: int, n_vars: int) -> MPoly:
    poly = MPoly(n_vars)
    for i in range(n_vars):
        exp = [0] * n_vars
        exp[i] = k
        poly.terms[tuple(exp)] = Fraction(1)
    return poly


# ---------------------------------------------------------------------------
# the eigenoperator characterisation (validator for the Gram-Schmidt route)
# ---------------------------------------------------------------------------


def apply_D(poly: MPoly, alpha: Fraction, n_vars: int) -> MPoly:
    """D = sum_i alpha x_i^2 d_i^2 + 2 sum_{i<j} x_i x_j (d_i - d_j)/(x_i - x_j)."""
    alpha = Fraction(alpha)
    out = MPoly(n_vars)
    for i in range(n_vars):
        xi2 = MPoly.var(n_vars, i) ** 2
        out = out + xi2.scale(alpha) * poly.partial(i).partial(i)
    for i in range(n_vars):
        for j in range(i + 1, n_vars):
            num = poly.partial(i) - poly.partial(j)
            quot = num.div_linear_difference(i, j)
            out = out + (MPoly.var(n_vars, i) * MPoly.var(n_vars, j) * quot).scale(2)
    return out


def apply_D_symfunc(f: SymFunc, alpha: Fraction, n_vars: int) -> SymFunc:
    poly = to_mpoly(f, n_vars)
    image = apply_D(poly, alpha, n_vars)
    parts = mpoly_to_symfunc(image)
    if not parts:
        return SymFunc(Basis.M, f.degree, {})
    if len(parts) != 1:
        raise AssertionError("D image is not homogeneous")
    return parts[0]


def jack_eigen_check(lam: Partition, alpha: Fraction, n_vars: int) -> Tuple[bool, Fraction]:
    """Assert D P_lam is proportional to P_lam; return the measured eigenvalue.

    The check asserts proportionality only; the eigenvalue is reported, not
    assumed from any closed formula.
    """
    if n_vars < len(lam):
        raise ValueError("need at least len(lam) variables")
    p = to_mpoly(jack(lam, alpha), n_vars)
    image = apply_D(p, Fraction(alpha), n_vars)
    if not p.terms:
        raise ValueError("Jack polynomial vanished; too few variables")
    lead = next(iter(p.terms))
    e = image.terms.get(lead, Fraction(0)) / p.terms[lead]
    ok = image == p.scale(e)
    return ok, e


# ---------------------------------------------------------------------------
# Cauchy identities
# ---------------------------------------------------------------------------


def _rising_binomial(a: Fraction, k: int) -> Fraction:
    """(a)_k / k!, the coefficient of u^k in (1-u)^(-a)."""
    num = Fraction(1)
    for m in range(k):
        num *= a + m
    import math

    return num / math.factorial(k)


def jack_mpoly(lam: Partition, alpha: Fraction, n_vars: int) -> MPoly:
    return to_mpoly(jack(lam, alpha), n_vars)


def _embed(poly: MPoly, total: int, offset: int) -> MPoly:
    out = MPoly(total)
    for exp, coeff in poly.terms.items():
        new = [0] * total
        new[offset : offset + len(exp)] = list(exp)
        out.terms[tuple(new)] = coeff
    return out


def cauchy_check(alpha: Fraction, n_x: int, n_y: int, degree: int) -> CheckReport:
    """Truncated product formula prod (1 - x_i y_j)^(-1/alpha) vs Jack expansion."""
    alpha = Fraction(alpha)
    if degree > DEGREE_CAP:
        raise DegreeCapError("cauchy_check degree exceeds cap")
    total = n_x + n_y
    lhs = MPoly.const(total, 1)
    a = Fraction(1) / alpha
    for i in range(n_x):
        for j in range(n_y):
            factor = MPoly(total)
            for k in range(degree + 1):
                exp = [0] * total
                exp[i] = k
                exp[n_x + j] = k
                factor.terms[tuple(exp)] = _rising_binomial(a, k)
            lhs = lhs.mul_truncated(factor, 2 * degree)
    rhs = MPoly(total)
    for d in range(degree + 1):
        for lam in partitions_of(d):
            if len(lam) > min(n_x, n_y):
                continue
            px = _embed(jack_mpoly(lam, alpha, n_x), total, 0)
            py = _embed(jack_mpoly(lam, alpha, n_y), total, n_x)
            rhs = rhs + (px * py).scale(Fraction(1) / jack_norm2(lam, alpha))
    diff = lhs - rhs
    # only bidegrees (d, d) with d <= degree are fully resummed on the left
    bad = {
        exp: c
        for exp, c in diff.terms.items()
        if sum(exp[:n_x]) <= degree and sum(exp[n_x:]) <= degree
    }
    if bad:
        exp = sorted(bad)[0]
        return CheckReport(
            False,
            "cauchy",
            f"first differing coefficient at exponent {exp}: {bad[exp]}",
        )
    return CheckReport(True, "cauchy", f"agrees through degree {degree} at alpha={alpha}")


def dual_cauchy_check(alpha: Fraction, n_x: int, n_y: int) -> CheckReport:
    """Exact polynomial identity prod (1 + x_i y_j) = sum P_lam(x) P_lam'(y)."""
    alpha = Fraction(alpha)
    total = n_x + n_y
    lhs = MPoly.const(total, 1)
    for i in range(n_x):
        for j in range(n_y):
            exp = [0] * total
            exp[i] = 1
            exp[n_x + j] = 1
            factor = MPoly.const(total, 1)
            factor.terms[tuple(exp)] = Fraction(1)
            lhs = lhs * factor
    rhs = MPoly(total)
    inv_alpha = Fraction(1) / alpha
    for d in range(n_x * n_y + 1):
        for lam in partitions_of(d):
            if len(lam) > n_x or (lam and lam[0] > n_y):
                continue
            px = _embed(jack_mpoly(lam, alpha, n_x), total, 0)
            py = _embed(jack_mpoly(lam.conjugate(), inv_alpha, n_y), total, n_x)
            rhs = rhs + px * py
    diff = lhs - rhs
    if diff.terms:
        exp = sorted(diff.terms)[0]
        return CheckReport(
            False, "dual-cauchy", f"first differing coefficient at exponent {exp}"
        )
    return CheckReport(True, "dual-cauchy", f"exact at sizes ({n_x},{n_y}), alpha={alpha}")


# ---------------------------------------------------------------------------
# closed-form specialisation and norm (for cross-checks)
# ---------------------------------------------------------------------------


def jack_specialization_formula(lam: Partition, alpha: Fraction, n_vars: int) -> Fraction:
    """b_lam / lower_hook, the closed form for P_lam(1^N)."""
    return b_coeff(lam, alpha, n_vars) / lower_hook(lam, alpha)


def jack_norm_formula(lam: Partition, alpha: Fraction) -> Fraction:
    """upper_hook / lower_hook, the closed form for ||P_lam||^2."""
    data = hook_data(lam, alpha)
    return data.upper / data.lower
