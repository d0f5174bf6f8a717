"""Exact scalar and sparse-polynomial arithmetic.

Every symbolic computation in the package runs over one of four coefficient
rings, all exact:

  Rat      -- arbitrary-precision rationals (fractions.Fraction)
  GaussRat -- a + b*i with rational a, b
  QuadExt  -- a + b*t with t**2 = d for a fixed rational discriminant d;
              used to carry radicals like sqrt(alpha) without ever
              floating them
  MPoly    -- sparse multivariate polynomials over any of the above

A polynomial is a dict mapping exponent tuples (one int per variable) to
coefficients; zero coefficients are never stored, so dict equality is
polynomial identity.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Sequence, Tuple

Rat = Fraction

Exponent = Tuple[int, ...]


class RingMismatchError(ValueError):
    """Operands live in incompatible ring instances (nvars or discriminant)."""


class NonExactDivisionError(ArithmeticError):
    """A division that must be exact left a remainder."""


def parse_rat(text: str) -> Fraction:
    """Parse a rational literal of the form "p/q" or "p"."""
    return Fraction(text.strip())


def fmt_rat(value: Fraction) -> str:
    """Format a rational as "p/q" (or "p" when the denominator is 1)."""
    return str(value)


def rat_sqrt(value: Fraction) -> Fraction | None:
    """Exact square root of a non-negative rational, or None if irrational."""
    if value < 0:
        return None
    num = _isqrt_exact(value.numerator)
    den = _isqrt_exact(value.denominator)
    if num is None or den is None:
        return None
    return Fraction(num, den)


def _isqrt_exact(n: int) -> int | None:
    import math

    r = math.isqrt(n)
    return r if r * r == n else None


@dataclass(frozen=True)
class GaussRat:
    """Gaussian rational a + b*i with exact components."""

    re: Fraction
    im: Fraction = Fraction(0)

    @staticmethod
    def of(re, im=0) -> "GaussRat":
        return GaussRat(Fraction(re), Fraction(im))

    @staticmethod
    def i() -> "GaussRat":
        return GaussRat(Fraction(0), Fraction(1))

    def conj(self) -> "GaussRat":
        return GaussRat(self.re, -self.im)

    def __bool__(self) -> bool:
        return bool(self.re or self.im)

    def __add__(self, other):
        other = _as_gauss(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussRat(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussRat(-self.re, -self.im)

    def __sub__(self, other):
        other = _as_gauss(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussRat(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _as_gauss(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussRat(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = GaussRat.of(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        other = _as_gauss(other)
        if other is NotImplemented:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GaussRat({self.re}, {self.im})"


def _as_gauss(value):
    if isinstance(value, GaussRat):
        return value
    if isinstance(value, (int, Fraction)):
        return GaussRat(Fraction(value))
    return NotImplemented


@dataclass(frozen=True)
class QuadExt:
    """Element a + b*t of the quadratic extension with t**2 = d.

    The discriminant d is part of the value; mixing two discriminants is a
    usage error.  Radicals must cancel (b == 0) before extraction to Rat.
    """

    a: Fraction
    b: Fraction
    d: Fraction

    @staticmethod
    def of(a, b, d) -> "QuadExt":
        return QuadExt(Fraction(a), Fraction(b), Fraction(d))

    @staticmethod
    def radical(d) -> "QuadExt":
        """The generator t itself, with t**2 = d."""
        return QuadExt(Fraction(0), Fraction(1), Fraction(d))

    @staticmethod
    def const(value, d) -> "QuadExt":
        return QuadExt(Fraction(value), Fraction(0), Fraction(d))

    def _coerce(self, other):
        if isinstance(other, QuadExt):
            if other.d != self.d:
                raise RingMismatchError(
                    f"quadratic extensions differ: t^2={self.d} vs t^2={other.d}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return QuadExt(Fraction(other), Fraction(0), self.d)
        return NotImplemented

    def conj_radical(self) -> "QuadExt":
        return QuadExt(self.a, -self.b, self.d)

    def to_rat(self) -> Fraction:
        if self.b != 0:
            raise NonExactDivisionError(
                f"nonzero radical part {self.b}*sqrt({self.d}) in extraction to Rat"
            )
        return self.a

    def __bool__(self) -> bool:
        return bool(self.a or self.b)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return QuadExt(self.a + other.a, self.b + other.b, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(-self.a, -self.b, self.d)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return QuadExt(self.a - other.a, self.b - other.b, self.d)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return QuadExt(
            self.a * other.a + self.d * self.b * other.b,
            self.a * other.b + self.b * other.a,
            self.d,
        )

    __rmul__ = __mul__

    def inverse(self) -> "QuadExt":
        norm = self.a * self.a - self.d * self.b * self.b
        if norm == 0:
            raise ZeroDivisionError("non-invertible quadratic extension element")
        return QuadExt(self.a / norm, -self.b / norm, self.d)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __pow__(self, k: int):
        result = QuadExt.const(1, self.d)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, QuadExt):
            return self.d == other.d and self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b, self.d))

    def __repr__(self):
        return f"QuadExt({self.a} + {self.b}*sqrt({self.d}))"


class MPoly:
    """Sparse multivariate polynomial over an exact coefficient ring.

    terms maps exponent tuples of length nvars to nonzero coefficients.
    The coefficient ring is whatever the stored values are (Fraction,
    GaussRat or QuadExt); operations never mix polynomial instances with
    different nvars.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Dict[Exponent, object] | None = None):
        self.nvars = nvars
        self.terms: Dict[Exponent, object] = {}
        if terms:
            for exp, coeff in terms.items():
                if len(exp) != nvars:
                    raise RingMismatchError(
                        f"exponent {exp} has length {len(exp)}, expected {nvars}"
                    )
                if coeff != 0:
                    self.terms[tuple(exp)] = coeff

    # -- constructors ---------------------------------------------------

    @staticmethod
    def zero(nvars: int) -> "MPoly":
        return MPoly(nvars)

    @staticmethod
    def const(nvars: int, value) -> "MPoly":
        p = MPoly(nvars)
        if not isinstance(value, (GaussRat, QuadExt)):
            value = Fraction(value)
        if value != 0:
            p.terms[(0,) * nvars] = value
        return p

    @staticmethod
    def var(nvars: int, index: int) -> "MPoly":
        if not 0 <= index < nvars:
            raise IndexError(f"variable index {index} out of range for nvars={nvars}")
        exp = [0] * nvars
        exp[index] = 1
        p = MPoly(nvars)
        p.terms[tuple(exp)] = Fraction(1)
        return p

    def copy(self) -> "MPoly":
        p = MPoly(self.nvars)
        p.terms = dict(self.terms)
        return p

    # -- basic ring operations -------------------------------------------

    def _check(self, other: "MPoly"):
        if self.nvars != other.nvars:
            raise RingMismatchError(
                f"polynomials in {self.nvars} and {other.nvars} variables"
            )

    def __add__(self, other):
        if not isinstance(other, MPoly):
            other = MPoly.const(self.nvars, other)
        self._check(other)
        out = dict(self.terms)
        for exp, coeff in other.terms.items():
            acc = out.get(exp)
            acc = coeff if acc is None else acc + coeff
            if acc == 0:
                out.pop(exp, None)
            else:
                out[exp] = acc
        p = MPoly(self.nvars)
        p.terms = out
        return p

    __radd__ = __add__

    def __neg__(self):
        p = MPoly(self.nvars)
        p.terms = {exp: -coeff for exp, coeff in self.terms.items()}
        return p

    def __sub__(self, other):
        if not isinstance(other, MPoly):
            other = MPoly.const(self.nvars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, MPoly):
            return self.scale(other)
        self._check(other)
        return self.mul_truncated(other, None)

    __rmul__ = __mul__

    def scale(self, scalar) -> "MPoly":
        if scalar == 0:
            return MPoly(self.nvars)
        p = MPoly(self.nvars)
        p.terms = {exp: coeff * scalar for exp, coeff in self.terms.items()}
        p.terms = {e: c for e, c in p.terms.items() if c != 0}
        return p

    def mul_truncated(self, other: "MPoly", max_degree: int | None) -> "MPoly":
        """Product, dropping monomials of total degree above max_degree."""
        self._check(other)
        out: Dict[Exponent, object] = {}
        small, big = (self, other) if len(self.terms) <= len(other.terms) else (other, self)
        for exp_a, coeff_a in small.terms.items():
            deg_a = sum(exp_a)
            for exp_b, coeff_b in big.terms.items():
                if max_degree is not None and deg_a + sum(exp_b) > max_degree:
                    continue
                exp = tuple(x + y for x, y in zip(exp_a, exp_b))
                prod = coeff_a * coeff_b
                acc = out.get(exp)
                acc = prod if acc is None else acc + prod
                if acc == 0:
                    out.pop(exp, None)
                else:
                    out[exp] = acc
        p = MPoly(self.nvars)
        p.terms = out
        return p

    def __pow__(self, k: int) -> "MPoly":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = MPoly.const(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, MPoly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction, GaussRat, QuadExt)):
            return self == MPoly.const(self.nvars, other)
        return NotImplemented

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    # -- structure -------------------------------------------------------

    def total_degree(self) -> int:
        return max((sum(exp) for exp in self.terms), default=0)

    def truncate(self, max_degree: int) -> "MPoly":
        p = MPoly(self.nvars)
        p.terms = {e: c for e, c in self.terms.items() if sum(e) <= max_degree}
        return p

    def graded_part(self, degree: int) -> "MPoly":
        p = MPoly(self.nvars)
        p.terms = {e: c for e, c in self.terms.items() if sum(e) == degree}
        return p

    def map_coeffs(self, fn) -> "MPoly":
        p = MPoly(self.nvars)
        for exp, coeff in self.terms.items():
            val = fn(coeff)
            if val != 0:
                p.terms[exp] = val
        return p

    def __repr__(self):
        if not self.terms:
            return "MPoly(0)"
        bits = []
        for exp in sorted(self.terms, reverse=True):
            mono = "*".join(
                f"x{i}^{e}" if e > 1 else f"x{i}" for i, e in enumerate(exp) if e
            )
            coeff = self.terms[exp]
            bits.append(f"({coeff})" + (f"*{mono}" if mono else ""))
        return " + ".join(bits)

    # -- calculus ----------------------------------------------------------

    def partial(self, index: int) -> "MPoly":
        """Partial derivative with respect to variable index."""
        out: Dict[Exponent, object] = {}
        for exp, coeff in self.terms.items():
            e = exp[index]
            if e == 0:
                continue
            new = list(exp)
            new[index] = e - 1
            out[tuple(new)] = coeff * e
        p = MPoly(self.nvars)
        p.terms = {e: c for e, c in out.items() if c != 0}
        return p

    def eval(self, point: Sequence) -> object:
        """Exact evaluation; point entries may be Fraction, GaussRat or QuadExt."""
        if len(point) != self.nvars:
            raise RingMismatchError("point dimension does not match nvars")
        total = None
        for exp, coeff in self.terms.items():
            term = coeff
            for e, v in zip(exp, point):
                if e:
                    term = term * v**e
            total = term if total is None else total + term
        return Fraction(0) if total is None else total

    def subs(self, index: int, value) -> "MPoly":
        """Substitute a scalar for one variable (the variable slot remains)."""
        out = MPoly(self.nvars)
        for exp, coeff in self.terms.items():
            e = exp[index]
            new = list(exp)
            new[index] = 0
            c = coeff * value**e if e else coeff
            key = tuple(new)
            acc = out.terms.get(key)
            acc = c if acc is None else acc + c
            if acc == 0:
                out.terms.pop(key, None)
            else:
                out.terms[key] = acc
        return out

    def div_linear_difference(self, i: int, j: int) -> "MPoly":
        """Exact quotient self / (x_i - x_j) by synthetic division in x_i.

        Raises NonExactDivisionError when the remainder self|_{x_i=x_j}
        is nonzero.
        """
        if i == j:
            raise RingMismatchError("divided difference needs distinct variables")
        by_deg: Dict[int, MPoly] = {}
        for exp, coeff in self.terms.items():
            e = exp[i]
            new = list(exp)
            new[i] = 0
            layer = by_deg.setdefault(e, MPoly(self.nvars))
            key = tuple(new)
            acc = layer.terms.get(key)
            acc = coeff if acc is None else acc + coeff
            if acc == 0:
                layer.terms.pop(key, None)
            else:
                layer.terms[key] = acc
        if not by_deg:
            return MPoly(self.nvars)
        top = max(by_deg)
        xj = MPoly.var(self.nvars, j)
        quotient = MPoly(self.nvars)
        carry = MPoly(self.nvars)
        # synthetic division: b_k = c_{k+1} + x_j * b_{k+1}
        for k in range(top, 0, -1):
            carry = by_deg.get(k, MPoly(self.nvars)) + xj * carry
            shifted = MPoly(self.nvars)
            for exp, coeff in carry.terms.items():
                new = list(exp)
                new[i] += k - 1
                shifted.terms[tuple(new)] = coeff
            quotient = quotient + shifted
        remainder = by_deg.get(0, MPoly(self.nvars)) + xj * carry
        if remainder:
            raise NonExactDivisionError(
                "polynomial is not divisible by the variable difference; "
                "input was likely not symmetric where symmetry is required"
            )
        return quotient


def divided_difference(f: MPoly, i: int, j: int) -> MPoly:
    """The pairwise combination (d_i f - d_j f) / (x_i - x_j), exactly.

    Always a polynomial when f is symmetric in x_i, x_j.
    """
    return (f.partial(i) - f.partial(j)).div_linear_difference(i, j)


@dataclass
class RatFunc:
    """Quotient of two sparse polynomials; den must not be zero."""

    num: MPoly
    den: MPoly

    def __post_init__(self):
        if not self.den:
            raise ZeroDivisionError("zero denominator in RatFunc")

    def eval(self, point: Sequence):
        d = self.den.eval(point)
        if d == 0:
            raise ZeroDivisionError("RatFunc evaluated at a pole")
        n = self.num.eval(point)
        if isinstance(n, QuadExt) or isinstance(d, QuadExt):
            n = n if isinstance(n, QuadExt) else QuadExt.const(n, d.d)
            return n / d
        return Fraction(n, 1) / d if not isinstance(n, GaussRat) else n * _gauss_inv(d)

    def __add__(self, other: "RatFunc") -> "RatFunc":
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    def __mul__(self, other: "RatFunc") -> "RatFunc":
        return RatFunc(self.num * other.num, self.den * other.den)


def _gauss_inv(value):
    if isinstance(value, GaussRat):
        norm = value.re * value.re + value.im * value.im
        return GaussRat(value.re / norm, -value.im / norm)
    return Fraction(1) / value


def fmt_exponent(exp: Exponent) -> str:
    return "[" + ",".join(str(e) for e in exp) + "]"


def parse_exponent(text: str) -> Exponent:
    inner = text.strip().strip("[]")
    if not inner:
        return ()
    return tuple(int(tok) for tok in inner.split(","))
