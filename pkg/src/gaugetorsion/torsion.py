"""Per-prime and global torsion decisions with machine-checkable certificates.

For a bundle class k over the 2-sphere with structure group PU(n), the
mapping-space component has p-torsion exactly when p divides both n and k.
``decide_p`` settles one prime and returns a Certificate carrying every
mechanized quantity behind the verdict; ``decide_global`` covers all prime
divisors of n and reduces to the gcd criterion.

Two independent routes to each verdict are computed and compared on every
call: the divisibility table, and the cohomological chain through the
restriction of c1 and the resolved alpha_p. A disagreement raises rather
than returning a wrong certificate.

The certificate annotations record, in plain language, the homotopy-theoretic
equivalences that justify reading the algebra as a torsion statement. They
are not checkable by this library and are carried as context only.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from math import gcd

from .chern import ChernPoly, phi_star
from .fp import Prime, p_power_ceil, padic_val
from .matrices import companion_matrix, order_mod_p
from .suspension import MechanizationError, derive_recurrence, solve_alpha_p

__all__ = [
    "TorsionKind",
    "Verdict",
    "Certificate",
    "GlobalResult",
    "decide_p",
    "decide_global",
    "ANNOTATIONS",
]

ANNOTATIONS: tuple[str, ...] = (
    "p-torsion in the mapping-space component is equivalent to a nonzero "
    "odd-degree class in its mod-p cohomology, and to the vanishing of the "
    "fiber restriction on second cohomology",
    "the second cohomology of the unitary mapping space is spanned by the "
    "basepoint pullback of c1 and the double suspension of c2",
    "no p-torsion iff phi_c1 != 0 or alpha_p != 0; both vanish exactly when "
    "p divides n and k",
)


class TorsionKind(Enum):
    NO_TORSION_CASE1 = "NoTorsionCase1"  # n not divisible by p
    NO_TORSION_CASE2 = "NoTorsionCase2"  # p | n but p does not divide k
    TORSION = "Torsion"  # p | n and p | k


@dataclass(frozen=True)
class Verdict:
    kind: TorsionKind
    n: int
    k: int
    p: int


@dataclass(frozen=True)
class Certificate:
    """Verdict plus every mechanized quantity that supports it.

    When p does not divide n, only phi_c1 is defined and it is nonzero; the
    alpha and matrix fields are absent. When p divides n, alpha_p equals
    k mod p, recurrence_check records that the derived alpha recurrence
    matches the companion matrix, and matrix_order is the p-power order of
    that matrix mod p.
    """

    verdict: Verdict
    phi_c1: int
    alpha_p: int | None
    matrix_order: int | None
    recurrence_check: bool | None
    annotations: tuple[str, ...] = ANNOTATIONS

    def to_dict(self) -> dict:
        return {
            "n": self.verdict.n,
            "k": self.verdict.k,
            "p": self.verdict.p,
            "verdict": self.verdict.kind.value,
            "phi_c1": self.phi_c1,
            "alpha_p": self.alpha_p,
            "matrix_order": self.matrix_order,
            "recurrence_check": self.recurrence_check,
            "annotations": list(self.annotations),
        }

    def to_json(self, indent: int | None = None) -> str:
        return json.dumps(self.to_dict(), indent=indent)


@dataclass(frozen=True)
class GlobalResult:
    n: int
    k: int
    torsion_free: bool
    primes: tuple[Certificate, ...]

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "torsion_free": self.torsion_free,
            "certificates": [c.to_dict() for c in self.primes],
        }

    def to_json(self, indent: int | None = None) -> str:
        return json.dumps(self.to_dict(), indent=indent)


@lru_cache(maxsize=None)
def _divisible_case_data(n: int, p: Prime) -> tuple[bool, int]:
    """k-independent matrix facts for the p | n branch, one pass per ring."""
    q = p.value
    reduced_companion = companion_matrix(n).reduce(p)
    recurrence_check = derive_recurrence(n, p) == reduced_companion
    if not recurrence_check:
        raise MechanizationError(
            f"derived recurrence disagrees with the companion matrix at n={n}, p={p}"
        )
    matrix_order = order_mod_p(reduced_companion, bound=p_power_ceil(n, p) * q)
    if q ** padic_val(matrix_order, p) != matrix_order:
        raise MechanizationError(
            f"matrix order {matrix_order} is not a p-power at n={n}, p={p}"
        )
    return recurrence_check, matrix_order


def decide_p(n: int, k: int, p: Prime) -> Certificate:
    """Decide p-torsion for the class k bundle component; k reduces mod n."""
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    k = k % n
    q = p.value
    phi_c1 = phi_star(ChernPoly.generator(n, p, 1)).coefficient(1)

    alpha_p: int | None = None
    matrix_order: int | None = None
    recurrence_check: bool | None = None
    if n % q == 0:
        recurrence_check, matrix_order = _divisible_case_data(n, p)
        alpha_p = solve_alpha_p(n, p, k).value.residue

    table_torsion = n % q == 0 and k % q == 0
    mech_torsion = phi_c1 == 0 and alpha_p == 0
    if table_torsion != mech_torsion:
        raise MechanizationError(
            f"divisibility and cohomological routes disagree at n={n}, k={k}, p={p}"
        )

    if n % q != 0:
        kind = TorsionKind.NO_TORSION_CASE1
    elif k % q != 0:
        kind = TorsionKind.NO_TORSION_CASE2
    else:
        kind = TorsionKind.TORSION
    return Certificate(
        verdict=Verdict(kind=kind, n=n, k=k, p=q),
        phi_c1=phi_c1,
        alpha_p=alpha_p,
        matrix_order=matrix_order,
        recurrence_check=recurrence_check,
    )


def _prime_divisors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


def decide_global(n: int, k: int) -> GlobalResult:
    """Torsion across all primes: free iff k is relatively prime to n.

    k is reduced mod n first; k = 0 is the trivial class, with gcd(n, 0) = n.
    The per-prime certificates must agree with the gcd criterion, and a
    disagreement raises instead of returning a broken result.
    """
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    k = k % n
    certificates = tuple(decide_p(n, k, Prime(q)) for q in _prime_divisors(n))
    torsion_free = gcd(n, k) == 1
    any_torsion = any(c.verdict.kind is TorsionKind.TORSION for c in certificates)
    if torsion_free == any_torsion:
        raise MechanizationError(
            f"gcd criterion and per-prime certificates disagree at n={n}, k={k}"
        )
    return GlobalResult(n=n, k=k, torsion_free=torsion_free, primes=certificates)
