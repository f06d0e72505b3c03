"""Decompose high-degree global monomials into vanishing pivot monomials.

A global monomial is given by exponents d^q_{ij} over all punctures q and
ordered pairs of distinct slots. Whenever the total degree is at least
6g + 4n - 5 it decomposes, over the relations, into a combination of
monomials

    zeta = prod_q (c^q_{root_q, j} c^q_{root_q, k})^{r_q},   sum_q r_q = 2g + n - 1,

each of which vanishes on the moduli space. The procedure factors the
input by puncture, canonicalizes each factor onto the three cyclic
generators with a global sign, picks r_q as the largest integer with
D_q >= 3 r_q - 1 (i.e. floor((D_q + 1) / 3)), rewrites each factor with
r_q >= 1 against the rooted pivots, distributes the product, and then
trims surplus pivot powers so every zeta meets the exact sum. The emitted
certificate is checked by independent expansion.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, Iterator, Mapping, Optional, Tuple

from .chernring import (
    ChernMonomial,
    ChernPolynomial,
    canonicalize_monomial,
    embed_to_free,
    pivot_monomial,
)
from .polyring import FreePolynomial
from .rewriter import rewrite

DEFAULT_TERM_CAP = 3 ** 12


class DegreeTooSmallError(ValueError):
    """Total degree below the vanishing bound 6g + 4n - 5."""


class TermCapExceededError(RuntimeError):
    """Distribution would exceed the configured certificate term cap."""


def degree_bound(g: int, n: int) -> int:
    return 6 * g + 4 * n - 5


def pivot_sum(g: int, n: int) -> int:
    return 2 * g + n - 1


def _check_gn(g: int, n: int) -> None:
    if g < 2:
        raise ValueError(f"genus must be >= 2, got {g}")
    if n < 1:
        raise ValueError(f"puncture count must be >= 1, got {n}")


@dataclass(frozen=True)
class VanishingMonomial:
    """Per-puncture pivot powers and roots; vanishing requires sum(r) = 2g+n-1."""

    g: int
    n: int
    r: Tuple[int, ...]
    roots: Tuple[int, ...]

    def __post_init__(self):
        _check_gn(self.g, self.n)
        if len(self.r) != self.n or len(self.roots) != self.n:
            raise ValueError(
                f"need one (r, root) pair per puncture: n={self.n}, "
                f"got {len(self.r)} powers and {len(self.roots)} roots"
            )
        if any(rq < 0 for rq in self.r):
            raise ValueError(f"pivot powers must be nonnegative, got {self.r}")
        if any(root not in (1, 2, 3) for root in self.roots):
            raise ValueError(f"roots must lie in 1..3, got {self.roots}")

    @property
    def satisfies_sum(self) -> bool:
        return sum(self.r) == pivot_sum(self.g, self.n)

    @property
    def degree(self) -> int:
        return 2 * sum(self.r)

    def chern_monomial(self) -> ChernMonomial:
        out = ChernMonomial.unit()
        for q, (rq, root) in enumerate(zip(self.r, self.roots), start=1):
            if rq:
                out = out * pivot_monomial(q, root, rq)
        return out


@dataclass(frozen=True)
class DecompositionCertificate:
    g: int
    n: int
    exponents: Tuple[Tuple[int, int, int, int], ...]  # (q, i, j, d), d > 0, sorted
    terms: Tuple[Tuple[ChernPolynomial, VanishingMonomial], ...]

    def input_monomial(self) -> ChernMonomial:
        return canonicalize_monomial(self.exponents)

    @property
    def total_degree(self) -> int:
        return sum(d for _, _, _, d in self.exponents)


@dataclass(frozen=True)
class DecompositionCheck:
    ok: bool
    reason: Optional[str] = None
    difference: Optional[FreePolynomial] = None
    bad_term_index: Optional[int] = None

    def __bool__(self) -> bool:
        return self.ok


def normalize_exponents(
    n: int, exponents: Mapping[Tuple[int, int, int], int]
) -> Tuple[Tuple[int, int, int, int], ...]:
    """Validate and sort an exponent mapping, dropping zero entries."""
    out = []
    for (q, i, j), d in exponents.items():
        if not 1 <= q <= n:
            raise ValueError(f"puncture {q} outside [1..{n}]")
        if i == j or i not in (1, 2, 3) or j not in (1, 2, 3):
            raise ValueError(f"bad slot pair ({i},{j}) at puncture {q}")
        if d < 0:
            raise ValueError(f"negative exponent {d} on c^{q}_{i}{j}")
        if d:
            out.append((q, i, j, d))
    out.sort()
    return tuple(out)


def choose_r(degree: int) -> int:
    """Largest r >= 0 with degree >= 3r - 1, i.e. floor((degree + 1) / 3)."""
    if degree < 0:
        raise ValueError(f"degree must be nonnegative, got {degree}")
    return (degree + 1) // 3


def enumerate_vanishing(g: int, n: int, limit: Optional[int] = None) -> Iterator[VanishingMonomial]:
    """All vanishing monomials for (g, n) in lexicographic order.

    Compositions of 2g + n - 1 into n nonnegative parts, ascending
    lexicographically, crossed with the 3^n root vectors (roots innermost).
    """
    _check_gn(g, n)
    if limit is not None and limit <= 0:
        return
    total = pivot_sum(g, n)
    emitted = 0
    for composition in _compositions(total, n):
        for roots in itertools.product((1, 2, 3), repeat=n):
            yield VanishingMonomial(g, n, composition, roots)
            emitted += 1
            if limit is not None and emitted >= limit:
                return


def _compositions(total: int, parts: int) -> Iterator[Tuple[int, ...]]:
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for tail in _compositions(total - head, parts - 1):
            yield (head,) + tail


def _puncture_profile(
    exponents: Tuple[Tuple[int, int, int, int], ...], q: int
) -> Tuple[int, int, int, int]:
    """Collapse puncture q's exponents onto (a, b, c) over the cyclic generators.

    Reversed pairs flip orientation, so a = d_12 + d_21, b = d_23 + d_32,
    c = d_31 + d_13 and the sign is (-1)^(d_21 + d_32 + d_13).
    """
    d: Dict[Tuple[int, int], int] = {}
    for (qq, i, j, exp) in exponents:
        if qq == q:
            d[(i, j)] = d.get((i, j), 0) + exp
    a = d.get((1, 2), 0) + d.get((2, 1), 0)
    b = d.get((2, 3), 0) + d.get((3, 2), 0)
    c = d.get((3, 1), 0) + d.get((1, 3), 0)
    flips = d.get((2, 1), 0) + d.get((3, 2), 0) + d.get((1, 3), 0)
    return a, b, c, -1 if flips % 2 else 1


def _trim_to_sum(r_by_q: Dict[int, int], target: int) -> Dict[int, int]:
    """Greedily lower the largest entries until the values sum to target."""
    trimmed = dict(r_by_q)
    surplus = sum(trimmed.values()) - target
    while surplus > 0:
        q = min(trimmed, key=lambda qq: (-trimmed[qq], qq))
        trimmed[q] -= 1
        surplus -= 1
    return trimmed


def decompose(
    g: int,
    n: int,
    exponents: Mapping[Tuple[int, int, int], int],
    cap: int = DEFAULT_TERM_CAP,
) -> DecompositionCertificate:
    """Decompose a global monomial into vanishing pivot monomials.

    Raises DegreeTooSmallError below the bound and TermCapExceededError if
    the distribution would exceed `cap` terms. The emitted certificate is
    deterministic: terms are indexed by the lexicographic root choices.
    """
    _check_gn(g, n)
    if cap < 1:
        raise ValueError(f"term cap must be positive, got {cap}")
    normalized = normalize_exponents(n, exponents)
    total = sum(d for _, _, _, d in normalized)
    bound = degree_bound(g, n)
    if total < bound:
        raise DegreeTooSmallError(
            f"total degree {total} < 6g+4n-5 = {bound}; no vanishing certificate below the bound"
        )

    profiles = {q: _puncture_profile(normalized, q) for q in range(1, n + 1)}
    global_sign = 1
    for _, _, _, sign in profiles.values():
        global_sign *= sign
    degrees = {q: a + b + c for q, (a, b, c, _) in profiles.items()}
    r_by_q = {q: choose_r(deg) for q, deg in degrees.items()}
    support = [q for q in range(1, n + 1) if r_by_q[q] >= 1]

    # counting guarantee from the degree bound: sum(D_q) <= sum(3 r_q + 1)
    assert total <= sum(3 * r_by_q[q] + 1 for q in range(1, n + 1))
    target = pivot_sum(g, n)
    assert sum(r_by_q.values()) >= target, "degree bound must force enough pivot powers"

    if 3 ** len(support) > cap:
        raise TermCapExceededError(
            f"distribution needs 3^{len(support)} = {3 ** len(support)} terms, cap is {cap}"
        )

    cofactors = {}
    passive = ChernPolynomial.constant(global_sign)
    for q in range(1, n + 1):
        a, b, c, _ = profiles[q]
        if q in support:
            cofactors[q] = rewrite(q, a, b, c, r_by_q[q]).phis
        elif degrees[q]:
            mono = canonicalize_monomial([(q, 1, 2, a), (q, 2, 3, b), (q, 3, 1, c)])
            passive = passive * ChernPolynomial.monomial(mono)

    trimmed = _trim_to_sum({q: r_by_q[q] for q in support}, target)

    terms = []
    for root_choice in itertools.product((1, 2, 3), repeat=len(support)):
        coeff = passive
        for q, root in zip(support, root_choice):
            phi = cofactors[q][root - 1]
            if not phi.terms:
                coeff = ChernPolynomial.zero()
                break
            coeff = coeff * phi
            surplus_power = r_by_q[q] - trimmed[q]
            if surplus_power:
                coeff = coeff * ChernPolynomial.monomial(
                    pivot_monomial(q, root, surplus_power)
                )
        if not coeff.terms:
            continue
        r_vec = tuple(trimmed.get(q, 0) for q in range(1, n + 1))
        root_vec = tuple(
            root_choice[support.index(q)] if q in support else 1
            for q in range(1, n + 1)
        )
        zeta = VanishingMonomial(g, n, r_vec, root_vec)
        terms.append((coeff.combined(), zeta))

    return DecompositionCertificate(g, n, normalized, tuple(terms))


def verify_decomposition(cert: DecompositionCertificate) -> DecompositionCheck:
    """Re-derive the certificate identity by fresh exact expansion.

    Checks that every zeta carries the exact pivot sum 2g + n - 1 and that
    the input monomial equals the sum of coefficient * zeta, embedding both
    sides into the e-variables from the certificate data alone.
    """
    try:
        _check_gn(cert.g, cert.n)
    except ValueError as exc:
        return DecompositionCheck(False, reason=str(exc))

    target = pivot_sum(cert.g, cert.n)
    for idx, (_, zeta) in enumerate(cert.terms):
        if zeta.g != cert.g or zeta.n != cert.n:
            return DecompositionCheck(
                False, reason="zeta context disagrees with certificate", bad_term_index=idx
            )
        if not zeta.satisfies_sum:
            return DecompositionCheck(
                False,
                reason=f"zeta pivot powers sum to {sum(zeta.r)}, need {target}",
                bad_term_index=idx,
            )

    n = cert.n
    try:
        lhs = embed_to_free(cert.input_monomial(), n)
    except ValueError as exc:
        return DecompositionCheck(False, reason=f"bad input exponents: {exc}")
    rhs = FreePolynomial.zero()
    for coeff, zeta in cert.terms:
        part = coeff * ChernPolynomial.monomial(zeta.chern_monomial())
        rhs = rhs + embed_to_free(part, n)
    difference = lhs - rhs
    if difference.is_zero():
        return DecompositionCheck(True, difference=difference)
    return DecompositionCheck(False, reason="expansion mismatch", difference=difference)


def dimension(g: int, n: int) -> Tuple[int, bool]:
    """Moduli dimension 16g + 6n - 16 and whether the bound sits below it.

    The second component reports whether monomials at the vanishing bound
    (cohomological degree 2(6g + 4n - 5)) still lie below the top class,
    which happens exactly when n < 2g - 3.
    """
    _check_gn(g, n)
    dim = 16 * g + 6 * n - 16
    return dim, 2 * degree_bound(g, n) < dim
