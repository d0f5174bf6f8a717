"""Partition combinatorics and per-partition scalar data.

A partition is a weakly decreasing tuple of positive integers; the empty
partition is allowed.  All hook products, generalised factorials and
specialisation coefficients are computed as finite exact products, never
through Gamma-function evaluation.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence, Tuple


class Partition(tuple):
    """Weakly decreasing tuple of positive integers (trailing zeros stripped)."""

    def __new__(cls, parts: Sequence[int] = ()):
        cleaned = [int(p) for p in parts if int(p) != 0]
        if any(p < 0 for p in cleaned):
            raise ValueError(f"negative part in {parts!r}")
        if any(cleaned[k] < cleaned[k + 1] for k in range(len(cleaned) - 1)):
            raise ValueError(f"parts not weakly decreasing: {parts!r}")
        return super().__new__(cls, cleaned)

    @property
    def weight(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def multiplicity(self, k: int) -> int:
        return sum(1 for p in self if p == k)

    def conjugate(self) -> "Partition":
        if not self:
            return Partition()
        return Partition(tuple(sum(1 for p in self if p >= k) for k in range(1, self[0] + 1)))

    def boxes(self) -> Iterator[Tuple[int, int]]:
        """Yield 1-based (row, column) coordinates of the diagram."""
        for i, part in enumerate(self, start=1):
            for j in range(1, part + 1):
                yield (i, j)

    def arm(self, i: int, j: int) -> int:
        return self[i - 1] - j

    def leg(self, i: int, j: int) -> int:
        conj = self.conjugate()
        return conj[j - 1] - i

    def coarm(self, i: int, j: int) -> int:
        return j - 1

    def coleg(self, i: int, j: int) -> int:
        return i - 1

    def __repr__(self):
        return f"Partition({tuple(self)})"


def parse_partition(text: str) -> Partition:
    """Parse a literal like "[3,1,1]" (also accepts bare "3,1,1" or "[]")."""
    inner = text.strip().strip("[]")
    if not inner:
        return Partition()
    return Partition([int(tok) for tok in inner.split(",")])


def fmt_partition(lam: Partition) -> str:
    return "[" + ",".join(str(p) for p in lam) + "]"


class Dominance(enum.Enum):
    LEQ = "leq"
    GEQ_ONLY = "geq-only"
    INCOMPARABLE = "incomparable"


def dominance_leq(mu: Partition, lam: Partition) -> Dominance:
    """Tri-state dominance comparison of two partitions of equal weight.

    Returns LEQ when mu <= lam (including equality), GEQ_ONLY when mu
    strictly dominates lam, INCOMPARABLE otherwise.
    """
    if mu.weight != lam.weight:
        raise ValueError(f"partitions of different weight: {mu} vs {lam}")
    le = ge = True
    acc = 0
    for k in range(max(len(mu), len(lam))):
        acc += (lam[k] if k < len(lam) else 0) - (mu[k] if k < len(mu) else 0)
        if acc > 0:
            ge = False
        elif acc < 0:
            le = False
    if le:
        return Dominance.LEQ
    if ge:
        return Dominance.GEQ_ONLY
    return Dominance.INCOMPARABLE


def dominates(lam: Partition, mu: Partition) -> bool:
    """True when lam >= mu in dominance order (equal weights required)."""
    return dominance_leq(mu, lam) is Dominance.LEQ


def dominance_sort_key(lam: Partition) -> Tuple[int, ...]:
    """Prefix-sum key; sorting ascending gives a linear extension of dominance."""
    acc = 0
    key = []
    for p in lam:
        acc += p
        key.append(acc)
    # pad so shorter prefixes compare correctly against longer ones
    key.extend([acc] * (lam.weight - len(key)))
    return tuple(key)


@dataclass(frozen=True)
class HookData:
    """The two alpha-deformed hook products of a diagram."""

    lower: Fraction
    upper: Fraction


def hook_data(lam: Partition, alpha: Fraction) -> HookData:
    """Lower hook prod(l+1+alpha*a) and upper hook prod(l+alpha+alpha*a)."""
    alpha = Fraction(alpha)
    lower = Fraction(1)
    upper = Fraction(1)
    conj = lam.conjugate()
    for i, part in enumerate(lam, start=1):
        for j in range(1, part + 1):
            a = part - j
            l = conj[j - 1] - i
            lower *= l + 1 + alpha * a
            upper *= l + alpha + alpha * a
    return HookData(lower=lower, upper=upper)


def lower_hook(lam: Partition, alpha: Fraction) -> Fraction:
    return hook_data(lam, alpha).lower


def upper_hook(lam: Partition, alpha: Fraction) -> Fraction:
    return hook_data(lam, alpha).upper


def gen_factorial(u: Fraction, lam: Partition, alpha: Fraction) -> Fraction:
    """Generalised factorial [u]_lam as a finite rising product over rows."""
    u = Fraction(u)
    alpha = Fraction(alpha)
    result = Fraction(1)
    for j, part in enumerate(lam, start=1):
        base = u - Fraction(j - 1) / alpha
        for m in range(part):
            result *= base + m
    return result


def b_coeff(lam: Partition, alpha: Fraction, n_vars: int) -> Fraction:
    """Specialisation coefficient prod over boxes of (N - coleg + alpha*coarm)."""
    alpha = Fraction(alpha)
    result = Fraction(1)
    for i, part in enumerate(lam, start=1):
        for j in range(1, part + 1):
            result *= n_vars - (i - 1) + alpha * (j - 1)
    return result


def z_lambda(lam: Partition) -> Fraction:
    """The centraliser order z_lam = prod_k k^{n_k} n_k!."""
    result = Fraction(1)
    k = None
    count = 0
    for part in list(lam) + [None]:
        if part == k:
            count += 1
            continue
        if k is not None:
            result *= Fraction(k) ** count * _factorial(count)
        k = part
        count = 1
    return result


def aut_count(lam: Partition) -> int:
    """n(lam)! = n_1! n_2! ... , the part-multiplicity factorial."""
    result = 1
    k = None
    count = 0
    for part in list(lam) + [None]:
        if part == k:
            count += 1
            continue
        if k is not None:
            result *= _factorial(count)
        k = part
        count = 1
    return result


def _factorial(n: int) -> int:
    import math

    return math.factorial(n)


@lru_cache(maxsize=None)
def partitions_of(n: int, max_part: int | None = None) -> Tuple[Partition, ...]:
    """All partitions of n, largest part first, in reverse lexicographic order."""
    if n == 0:
        return (Partition(),)
    cap = n if max_part is None else min(max_part, n)
    out = []
    for first in range(cap, 0, -1):
        for rest in partitions_of(n - first, first):
            out.append(Partition((first,) + tuple(rest)))
    return tuple(out)


def partitions_upto(n: int) -> Iterator[Partition]:
    for d in range(n + 1):
        yield from partitions_of(d)


def monomial_count(lam: Partition, n_vars: int) -> int:
    """Number of distinct monomials of m_lam in n_vars variables, i.e. m_lam(1^N)."""
    ell = len(lam)
    if ell > n_vars:
        return 0
    mults = [lam.multiplicity(k) for k in sorted(set(lam))]
    count = _factorial(n_vars)
    for m in mults:
        count //= _factorial(m)
    count //= _factorial(n_vars - ell)
    return count
