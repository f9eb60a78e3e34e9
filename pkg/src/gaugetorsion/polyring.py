"""Sparse multivariate polynomials over a prime field.

The ambient ring is F_p[t1, ..., tn], the cohomology of an n-fold product of
circle classifying spaces. Each generator ti has internal degree 1 here; its
cohomological degree is 2, and the doubling is applied only when degrees are
reported, never in stored exponents. The univariate ring F_p[u] is the target
of the diagonal restriction, which sends every ti to u.

Polynomials are immutable by convention: operations always build new objects
and no method mutates ``terms`` after construction. Term order everywhere is
graded lexicographic (total degree first, then exponents, largest first
within a degree), which makes text rendering and iteration deterministic.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from typing import Mapping

from .fp import Prime

__all__ = [
    "Monomial",
    "MultiPoly",
    "UniPoly",
    "elementary_sym",
    "power_sum",
    "is_symmetric",
    "diagonal_eval",
]

Monomial = tuple[int, ...]


def _grlex_key(mono: Monomial) -> tuple[int, tuple[int, ...]]:
    return (sum(mono), tuple(-e for e in mono))


class MultiPoly:
    """Element of F_p[t1, ..., tn] in canonical sparse form (no zero coefficients)."""

    __slots__ = ("n", "p", "terms")

    def __init__(self, n: int, p: Prime, terms: Mapping[Monomial, int] | None = None):
        if n < 1:
            raise ValueError(f"need at least one variable, got n={n}")
        self.n = n
        self.p = p
        q = p.value
        clean: dict[Monomial, int] = {}
        if terms:
            for mono, coeff in terms.items():
                if len(mono) != n:
                    raise ValueError(f"monomial {mono} has length {len(mono)}, expected {n}")
                if any(e < 0 for e in mono):
                    raise ValueError(f"negative exponent in {mono}")
                c = coeff % q
                if c:
                    clean[tuple(mono)] = c
        self.terms = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, n: int, p: Prime) -> "MultiPoly":
        return cls(n, p)

    @classmethod
    def constant(cls, n: int, p: Prime, c: int) -> "MultiPoly":
        return cls(n, p, {(0,) * n: c})

    @classmethod
    def one(cls, n: int, p: Prime) -> "MultiPoly":
        return cls.constant(n, p, 1)

    @classmethod
    def variable(cls, n: int, p: Prime, i: int) -> "MultiPoly":
        """The generator t_i, 1-based."""
        if not 1 <= i <= n:
            raise ValueError(f"variable index {i} out of range 1..{n}")
        mono = tuple(1 if j == i - 1 else 0 for j in range(n))
        return cls(n, p, {mono: 1})

    # -- ring structure ----------------------------------------------------

    def _match(self, other: "MultiPoly") -> None:
        if not isinstance(other, MultiPoly):
            raise TypeError(f"expected MultiPoly, got {type(other).__name__}")
        if self.n != other.n or self.p != other.p:
            raise ValueError(
                f"ring mismatch: {self.n} vars mod {self.p} vs {other.n} vars mod {other.p}"
            )

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        self._match(other)
        acc = dict(self.terms)
        for mono, c in other.terms.items():
            acc[mono] = acc.get(mono, 0) + c
        return MultiPoly(self.n, self.p, acc)

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.n, self.p, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        return self + (-other)

    def __mul__(self, other: "MultiPoly") -> "MultiPoly":
        self._match(other)
        acc: dict[Monomial, int] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                acc[m] = acc.get(m, 0) + c1 * c2
        return MultiPoly(self.n, self.p, acc)

    def scale(self, c: int) -> "MultiPoly":
        return MultiPoly(self.n, self.p, {m: k * c for m, k in self.terms.items()})

    def __pow__(self, e: int) -> "MultiPoly":
        if e < 0:
            raise ValueError("negative power of a polynomial")
        out = MultiPoly.one(self.n, self.p)
        base = self
        while e:
            if e & 1:
                out = out * base
            e >>= 1
            if e:
                base = base * base
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.n == other.n and self.p == other.p and self.terms == other.terms

    __hash__ = None  # type: ignore[assignment]

    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        """Largest internal degree among terms, -1 for the zero polynomial."""
        return max((sum(m) for m in self.terms), default=-1)

    def sorted_terms(self) -> list[tuple[Monomial, int]]:
        return sorted(self.terms.items(), key=lambda kv: _grlex_key(kv[0]))

    # -- rendering ---------------------------------------------------------

    def render(self) -> str:
        """Canonical text form, e.g. ``t1^2*t2 + t1*t2^2``."""
        if not self.terms:
            return "0"
        parts = []
        for mono, c in self.sorted_terms():
            factors = []
            for i, e in enumerate(mono):
                if e == 1:
                    factors.append(f"t{i + 1}")
                elif e > 1:
                    factors.append(f"t{i + 1}^{e}")
            if not factors:
                parts.append(str(c))
            elif c == 1:
                parts.append("*".join(factors))
            else:
                parts.append(f"{c}*" + "*".join(factors))
        return " + ".join(parts)

    __str__ = render

    def __repr__(self) -> str:
        return f"MultiPoly(n={self.n}, p={self.p}, {self.render()})"


class UniPoly:
    """Element of F_p[u], sparse by exponent of u."""

    __slots__ = ("p", "coeffs")

    def __init__(self, p: Prime, coeffs: Mapping[int, int] | None = None):
        self.p = p
        q = p.value
        clean: dict[int, int] = {}
        if coeffs:
            for e, c in coeffs.items():
                if e < 0:
                    raise ValueError(f"negative exponent {e}")
                r = c % q
                if r:
                    clean[e] = r
        self.coeffs = clean

    @classmethod
    def zero(cls, p: Prime) -> "UniPoly":
        return cls(p)

    @classmethod
    def one(cls, p: Prime) -> "UniPoly":
        return cls(p, {0: 1})

    @classmethod
    def monomial(cls, p: Prime, e: int, c: int = 1) -> "UniPoly":
        return cls(p, {e: c})

    def _match(self, other: "UniPoly") -> None:
        if not isinstance(other, UniPoly):
            raise TypeError(f"expected UniPoly, got {type(other).__name__}")
        if self.p != other.p:
            raise ValueError(f"ring mismatch: mod {self.p} vs mod {other.p}")

    def __add__(self, other: "UniPoly") -> "UniPoly":
        self._match(other)
        acc = dict(self.coeffs)
        for e, c in other.coeffs.items():
            acc[e] = acc.get(e, 0) + c
        return UniPoly(self.p, acc)

    def __neg__(self) -> "UniPoly":
        return UniPoly(self.p, {e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        return self + (-other)

    def __mul__(self, other: "UniPoly") -> "UniPoly":
        self._match(other)
        acc: dict[int, int] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                acc[e1 + e2] = acc.get(e1 + e2, 0) + c1 * c2
        return UniPoly(self.p, acc)

    def scale(self, c: int) -> "UniPoly":
        return UniPoly(self.p, {e: k * c for e, k in self.coeffs.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.p == other.p and self.coeffs == other.coeffs

    __hash__ = None  # type: ignore[assignment]

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, e: int) -> int:
        return self.coeffs.get(e, 0)

    def render(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for e in sorted(self.coeffs):
            c = self.coeffs[e]
            if e == 0:
                parts.append(str(c))
            else:
                u = "u" if e == 1 else f"u^{e}"
                parts.append(u if c == 1 else f"{c}*{u}")
        return " + ".join(parts)

    __str__ = render

    def __repr__(self) -> str:
        return f"UniPoly(p={self.p}, {self.render()})"


@lru_cache(maxsize=None)
def elementary_sym(n: int, i: int, p: Prime) -> MultiPoly:
    """The i-th elementary symmetric polynomial in n variables; e_0 = 1, e_i = 0 past n."""
    if i < 0:
        raise ValueError(f"need i >= 0, got {i}")
    if i == 0:
        return MultiPoly.one(n, p)
    if i > n:
        return MultiPoly.zero(n, p)
    terms: dict[Monomial, int] = {}
    for subset in combinations(range(n), i):
        mono = tuple(1 if j in subset else 0 for j in range(n))
        terms[mono] = 1
    return MultiPoly(n, p, terms)


def power_sum(n: int, i: int, p: Prime) -> MultiPoly:
    """t1^i + ... + tn^i for i >= 1. The index 0 case is deliberately undefined."""
    if i < 1:
        raise ValueError(f"power sums start at index 1, got {i}")
    terms: dict[Monomial, int] = {}
    for j in range(n):
        mono = tuple(i if m == j else 0 for m in range(n))
        terms[mono] = terms.get(mono, 0) + 1
    return MultiPoly(n, p, terms)


def is_symmetric(f: MultiPoly) -> bool:
    """True iff f is fixed by every adjacent transposition of variables."""
    for k in range(f.n - 1):
        swapped: dict[Monomial, int] = {}
        for mono, c in f.terms.items():
            m = list(mono)
            m[k], m[k + 1] = m[k + 1], m[k]
            swapped[tuple(m)] = c
        if swapped != f.terms:
            return False
    return True


def diagonal_eval(f: MultiPoly) -> UniPoly:
    """Image of f under the diagonal substitution ti -> u for every i."""
    acc: dict[int, int] = {}
    for mono, c in f.terms.items():
        d = sum(mono)
        acc[d] = acc.get(d, 0) + c
    return UniPoly(f.p, acc)


