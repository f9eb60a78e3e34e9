"""The abstract ring F_p[c1, ..., cn] of unitary characteristic classes.

The generator cj carries weighted degree j (cohomological degree 2j). Two
ring maps are implemented:

* ``iota_star`` injects into the torus ring by sending cj to the j-th
  elementary symmetric polynomial;
* ``phi_star`` restricts to the scalar circle, sending cj to binom(n, j) u^j.

``phi_star`` is computed directly from the binomial formula; the composite
route through ``iota_star`` and the diagonal evaluation is kept as the
independent oracle in the tests.

Power sums are lifted to this ring through the classical Newton identities
below the variable count and through the companion recurrence above it.
Lifts are cached per ring, filled once and never rewritten.
"""

from __future__ import annotations

from typing import Mapping

from .fp import Prime, _lucas
from .polyring import MultiPoly, UniPoly, elementary_sym, power_sum

__all__ = [
    "ChernPoly",
    "iota_star",
    "phi_star",
    "lift_power_sum",
    "phi_power_sum",
    "verify_newton",
]

Exponents = tuple[int, ...]


def _grlex_key(mono: Exponents) -> tuple[int, tuple[int, ...]]:
    return (sum((j + 1) * e for j, e in enumerate(mono)), tuple(-e for e in mono))


class ChernPoly:
    """Polynomial in c1..cn over F_p, canonical sparse form, weighted grading."""

    __slots__ = ("n", "p", "terms")

    def __init__(self, n: int, p: Prime, terms: Mapping[Exponents, int] | None = None):
        if n < 1:
            raise ValueError(f"need at least one generator, got n={n}")
        self.n = n
        self.p = p
        q = p.value
        clean: dict[Exponents, int] = {}
        if terms:
            for mono, coeff in terms.items():
                if len(mono) != n:
                    raise ValueError(f"exponent vector {mono} has length {len(mono)}, expected {n}")
                if any(e < 0 for e in mono):
                    raise ValueError(f"negative exponent in {mono}")
                c = coeff % q
                if c:
                    clean[tuple(mono)] = c
        self.terms = clean

    @classmethod
    def zero(cls, n: int, p: Prime) -> "ChernPoly":
        return cls(n, p)

    @classmethod
    def constant(cls, n: int, p: Prime, c: int) -> "ChernPoly":
        return cls(n, p, {(0,) * n: c})

    @classmethod
    def one(cls, n: int, p: Prime) -> "ChernPoly":
        return cls.constant(n, p, 1)

    @classmethod
    def generator(cls, n: int, p: Prime, j: int) -> "ChernPoly":
        """The class cj, 1-based, of weighted degree j."""
        if not 1 <= j <= n:
            raise ValueError(f"generator index {j} out of range 1..{n}")
        mono = tuple(1 if m == j - 1 else 0 for m in range(n))
        return cls(n, p, {mono: 1})

    def _match(self, other: "ChernPoly") -> None:
        if not isinstance(other, ChernPoly):
            raise TypeError(f"expected ChernPoly, got {type(other).__name__}")
        if self.n != other.n or self.p != other.p:
            raise ValueError(
                f"ring mismatch: {self.n} generators mod {self.p} vs {other.n} mod {other.p}"
            )

    def __add__(self, other: "ChernPoly") -> "ChernPoly":
        self._match(other)
        acc = dict(self.terms)
        for mono, c in other.terms.items():
            acc[mono] = acc.get(mono, 0) + c
        return ChernPoly(self.n, self.p, acc)

    def __neg__(self) -> "ChernPoly":
        return ChernPoly(self.n, self.p, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "ChernPoly") -> "ChernPoly":
        return self + (-other)

    def __mul__(self, other: "ChernPoly") -> "ChernPoly":
        self._match(other)
        acc: dict[Exponents, int] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                acc[m] = acc.get(m, 0) + c1 * c2
        return ChernPoly(self.n, self.p, acc)

    def scale(self, c: int) -> "ChernPoly":
        return ChernPoly(self.n, self.p, {m: k * c for m, k in self.terms.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ChernPoly):
            return NotImplemented
        return self.n == other.n and self.p == other.p and self.terms == other.terms

    __hash__ = None  # type: ignore[assignment]

    def is_zero(self) -> bool:
        return not self.terms

    def weighted_degree(self) -> int:
        """Largest weighted degree among terms, -1 for zero."""
        return max(
            (sum((j + 1) * e for j, e in enumerate(m)) for m in self.terms),
            default=-1,
        )

    def partial(self, j: int) -> "ChernPoly":
        """Formal partial derivative with respect to cj, 1-based."""
        if not 1 <= j <= self.n:
            raise ValueError(f"generator index {j} out of range 1..{self.n}")
        acc: dict[Exponents, int] = {}
        for mono, c in self.terms.items():
            e = mono[j - 1]
            if e == 0:
                continue
            target = tuple(ek - 1 if k == j - 1 else ek for k, ek in enumerate(mono))
            acc[target] = acc.get(target, 0) + c * e
        return ChernPoly(self.n, self.p, acc)

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mono, c in sorted(self.terms.items(), key=lambda kv: _grlex_key(kv[0])):
            factors = []
            for i, e in enumerate(mono):
                if e == 1:
                    factors.append(f"c{i + 1}")
                elif e > 1:
                    factors.append(f"c{i + 1}^{e}")
            if not factors:
                parts.append(str(c))
            elif c == 1:
                parts.append("*".join(factors))
            else:
                parts.append(f"{c}*" + "*".join(factors))
        return " + ".join(parts)

    __str__ = render

    def __repr__(self) -> str:
        return f"ChernPoly(n={self.n}, p={self.p}, {self.render()})"


def iota_star(poly: ChernPoly) -> MultiPoly:
    """Substitute cj -> elementary_sym(n, j) and expand in the torus ring."""
    n, p = poly.n, poly.p
    out = MultiPoly.zero(n, p)
    for mono, c in poly.terms.items():
        term = MultiPoly.constant(n, p, c)
        for j, e in enumerate(mono, start=1):
            if e:
                term = term * elementary_sym(n, j, p) ** e
        out = out + term
    return out


def phi_star(poly: ChernPoly) -> UniPoly:
    """Restriction to F_p[u]: cj -> binom(n, j) u^j, extended multiplicatively."""
    n, q = poly.n, poly.p.value
    acc: dict[int, int] = {}
    for mono, c in poly.terms.items():
        coeff = c
        degree = 0
        for j, e in enumerate(mono, start=1):
            if e:
                coeff = coeff * pow(_lucas(n, j, q), e, q) % q
                degree += j * e
                if not coeff:
                    break
        if coeff:
            acc[degree] = acc.get(degree, 0) + coeff
    return UniPoly(poly.p, acc)


_LIFT_CACHE: dict[tuple[int, int], list[ChernPoly]] = {}


def lift_power_sum(m: int, n: int, p: Prime) -> ChernPoly:
    """The class S_m with iota_star(S_m) equal to the m-th power sum.

    Newton's identities drive the construction: below the generator count the
    classical form with the trailing m*cm term, above it the pure recurrence
    S_m = sum_j (-1)^(j+1) cj S_(m-j). Index 0 is rejected rather than given
    a convention.
    """
    if m < 1:
        raise ValueError(f"power sums start at index 1, got {m}")
    key = (n, p.value)
    cache = _LIFT_CACHE.setdefault(key, [])
    while len(cache) < m:
        m_next = len(cache) + 1
        acc = ChernPoly.zero(n, p)
        top = min(m_next - 1, n)
        for j in range(1, top + 1):
            sign = 1 if j % 2 == 1 else -1
            acc = acc + ChernPoly.generator(n, p, j).scale(sign) * cache[m_next - j - 1]
        if m_next <= n:
            sign = 1 if m_next % 2 == 1 else -1
            acc = acc + ChernPoly.generator(n, p, m_next).scale(sign * m_next)
        cache.append(acc)
    return cache[m - 1]


_PHI_PS_CACHE: dict[tuple[int, int], list[int]] = {}


def phi_power_sum(m: int, n: int, p: Prime) -> UniPoly:
    """Restriction of the m-th power sum to F_p[u], as a scalar recurrence.

    Runs the same Newton recurrence as ``lift_power_sum`` but directly on the
    u^m coefficients, so it stays linear-time in m even where the full lift
    would have a huge term count. Agrees with phi_star(lift_power_sum(m))
    everywhere, and equals (n mod p) u^m.
    """
    if m < 1:
        raise ValueError(f"power sums start at index 1, got {m}")
    q = p.value
    key = (n, q)
    cache = _PHI_PS_CACHE.setdefault(key, [])
    while len(cache) < m:
        m_next = len(cache) + 1
        val = 0
        top = min(m_next - 1, n)
        for j in range(1, top + 1):
            sign = 1 if j % 2 == 1 else -1
            val += sign * _lucas(n, j, q) * cache[m_next - j - 1]
        if m_next <= n:
            sign = 1 if m_next % 2 == 1 else -1
            val += sign * m_next * _lucas(n, m_next, q)
        cache.append(val % q)
    return UniPoly(p, {m: cache[m - 1]})


def verify_newton(n: int, i: int, p: Prime) -> tuple[bool, MultiPoly]:
    """Check the power-sum relation of degree n+i+1 directly in the torus ring.

    Expands s_(n+i+1) + sum_j (-1)^j e_j s_(n+i+1-j) with elementary symmetric
    polynomials and power sums, no lifting involved, and reports whether the
    residual is exactly zero.
    """
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    if i < 0:
        raise ValueError(f"need i >= 0, got {i}")
    residual = power_sum(n, n + i + 1, p)
    for j in range(1, n + 1):
        sign = -1 if j % 2 == 1 else 1
        residual = residual + (
            elementary_sym(n, j, p) * power_sum(n, n + i + 1 - j, p)
        ).scale(sign)
    return residual.is_zero(), residual
