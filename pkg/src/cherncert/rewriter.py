"""Rewrite a single-puncture monomial against the three rooted pivots.

Input is the monomial (c^q_12)^a (c^q_23)^b (c^q_31)^c with
a + b + c >= 3d - 1. The construction picks a generator with exponent
>= d, replaces its excess power by minus the sum of the other two
generators (the telescoping relation c_12 + c_23 + c_31 = 0), expands the
binomial, and pairs the retained power d with a companion power d into one
of the rooted pivots

    pivot_1 = c_12 c_13,   pivot_2 = c_23 c_21,   pivot_3 = c_31 c_32.

Every binomial term has such a companion: if both companion exponents were
< d the total degree would be <= 3d - 2. The leftovers accumulate into the
cofactors phi_1, phi_2, phi_3, and the resulting certificate states

    input = phi_1 pivot_1^d + phi_2 pivot_2^d + phi_3 pivot_3^d,

checked by an independent expansion into the e-variables.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from .chernring import (
    CYCLE,
    ChernMonomial,
    ChernPolynomial,
    PairClass,
    canonicalize_monomial,
    embed_to_free,
    pivot_monomial,
)
from .polyring import FreePolynomial


class RewritePreconditionError(ValueError):
    """Total degree too small for the requested pivot depth."""


# Pairing a retained generator with a companion determines the pivot root:
# generator indices 0, 1, 2 stand for c_12, c_23, c_31.
_ROOT_OF_PAIRING = {
    frozenset((0, 1)): 2,
    frozenset((0, 2)): 1,
    frozenset((1, 2)): 3,
}


@dataclass(frozen=True)
class RewriteCertificate:
    q: int
    abc: Tuple[int, int, int]
    d: int
    phis: Tuple[ChernPolynomial, ChernPolynomial, ChernPolynomial]

    def input_monomial(self) -> ChernMonomial:
        a, b, c = self.abc
        return canonicalize_monomial(
            [(self.q, 1, 2, a), (self.q, 2, 3, b), (self.q, 3, 1, c)]
        )


@dataclass(frozen=True)
class RewriteCheck:
    ok: bool
    reason: Optional[str] = None
    difference: Optional[FreePolynomial] = None  # embed(input) - embed(sum), when computed

    def __bool__(self) -> bool:
        return self.ok


def _check_precondition(a: int, b: int, c: int, d: int) -> Optional[str]:
    if d < 1:
        return f"pivot depth must be >= 1, got {d}"
    if min(a, b, c) < 0:
        return f"exponents must be nonnegative, got {(a, b, c)}"
    if a + b + c <= 3 * d - 2:
        return (
            f"a+b+c = {a + b + c} <= 3d-2 = {3 * d - 2}; "
            f"need a+b+c >= 3d-1 = {3 * d - 1}"
        )
    return None


def rewrite(q: int, a: int, b: int, c: int, d: int) -> RewriteCertificate:
    """Produce the pivot decomposition certificate for (a, b, c) at depth d.

    Deterministic choices: the retained generator is the first of
    (c_12, c_23, c_31) in cyclic order with exponent >= d, and a binomial
    term whose two companions both qualify goes to the lower-numbered root.
    """
    if q < 1:
        raise ValueError(f"puncture index must be >= 1, got {q}")
    problem = _check_precondition(a, b, c, d)
    if problem is not None:
        raise RewritePreconditionError(problem)

    exps = (a, b, c)
    sel = next(idx for idx in (0, 1, 2) if exps[idx] >= d)
    u, v = [idx for idx in (0, 1, 2) if idx != sel]
    excess = exps[sel] - d

    phi_terms: dict = {1: [], 2: [], 3: []}
    base_sign = (-1) ** (excess + d)
    for r in range(excess + 1):
        eu = exps[u] + r
        ev = exps[v] + (excess - r)
        candidates = []
        if eu >= d:
            candidates.append((_ROOT_OF_PAIRING[frozenset((sel, u))], u, eu))
        if ev >= d:
            candidates.append((_ROOT_OF_PAIRING[frozenset((sel, v))], v, ev))
        root, comp, _ = min(candidates)
        leftover = {u: eu, v: ev}
        leftover[comp] -= d
        mono = ChernMonomial.make(
            [(PairClass(q, *CYCLE[idx]), exp) for idx, exp in leftover.items() if exp]
        )
        coeff = Fraction(base_sign * math.comb(excess, r))
        phi_terms[root].append((coeff, mono))

    phis = tuple(
        ChernPolynomial(tuple(phi_terms[root])).combined() for root in (1, 2, 3)
    )
    return RewriteCertificate(q, (a, b, c), d, phis)


def verify_rewrite(cert: RewriteCertificate) -> RewriteCheck:
    """Check a certificate by exact expansion, independent of its producer.

    Rebuilds the input monomial and the pivot powers from the certificate
    fields alone, embeds everything into the e-variables, and compares
    canonical forms. Malformed certificates yield ok=False with a reason
    and, where applicable, the difference polynomial.
    """
    a, b, c = cert.abc
    problem = _check_precondition(a, b, c, cert.d)
    if problem is not None:
        return RewriteCheck(False, reason=f"precondition fails: {problem}")
    if cert.q < 1:
        return RewriteCheck(False, reason=f"bad puncture index {cert.q}")
    if len(cert.phis) != 3:
        return RewriteCheck(False, reason="certificate must carry exactly three cofactors")
    for phi in cert.phis:
        for _, mono in phi.terms:
            for gen, _ in mono.factors:
                if not isinstance(gen, PairClass) or gen.q != cert.q:
                    return RewriteCheck(
                        False,
                        reason=f"cofactor generator {gen} outside the puncture-{cert.q} pair ring",
                    )

    n = cert.q
    lhs = embed_to_free(cert.input_monomial(), n)
    rhs = FreePolynomial.zero()
    for root, phi in zip((1, 2, 3), cert.phis):
        pivot = ChernPolynomial.monomial(pivot_monomial(cert.q, root, cert.d))
        rhs = rhs + embed_to_free(phi * pivot, n)
    difference = lhs - rhs
    if difference.is_zero():
        return RewriteCheck(True, difference=difference)
    return RewriteCheck(False, reason="expansion mismatch", difference=difference)
