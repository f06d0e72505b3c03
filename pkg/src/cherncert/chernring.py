"""Formal layer of pair and slot generators with canonical orientation.

Generators come in two kinds per puncture q: pair classes c^q_{ij} for
ordered pairs of distinct slots, and slot classes e^q_j. Pair classes are
stored with orientation in the cycle (1,2), (2,3), (3,1); a reversed pair
is the canonical one with a sign flip carried by the containing monomial.

The layer is deliberately non-canonical as a ring: its generators satisfy
relations, so semantic equality is decided by embedding into the free
polynomial ring (c^q_{ij} -> e^q_i - e^q_j, with e^q_3 eliminated) and
comparing canonical forms there.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Tuple, Union

from .polyring import FreePolynomial, e

# Canonical orientation cycle for pair classes, indexed by root slot - 1.
CYCLE = ((1, 2), (2, 3), (3, 1))


class PunctureRangeError(ValueError):
    """A generator's puncture index is outside the ambient configuration."""


@dataclass(frozen=True)
class PairClass:
    """Canonical pair generator c^q_{ij} with (i, j) in the cycle."""

    q: int
    i: int
    j: int

    def __post_init__(self):
        if (self.i, self.j) not in CYCLE:
            raise ValueError(f"pair ({self.i},{self.j}) is not canonically oriented")
        if self.q < 1:
            raise ValueError(f"puncture index must be >= 1, got {self.q}")


@dataclass(frozen=True)
class SlotClass:
    """Slot generator e^q_j, j in {1, 2, 3}."""

    q: int
    j: int

    def __post_init__(self):
        if self.j not in (1, 2, 3):
            raise ValueError(f"slot must be 1, 2 or 3, got {self.j}")
        if self.q < 1:
            raise ValueError(f"puncture index must be >= 1, got {self.q}")


ChernGenerator = Union[PairClass, SlotClass]


def generator_key(gen: ChernGenerator) -> Tuple[int, int, int, int]:
    if isinstance(gen, PairClass):
        return (gen.q, 0, gen.i, gen.j)
    return (gen.q, 1, gen.j, 0)


def oriented_pair(q: int, i: int, j: int) -> Tuple[PairClass, int]:
    """Canonical generator and orientation sign for the ordered pair (i, j)."""
    if i == j:
        raise ValueError(f"pair indices must differ (the diagonal class is trivial), got ({i},{j})")
    if i not in (1, 2, 3) or j not in (1, 2, 3):
        raise ValueError(f"slot indices must lie in 1..3, got ({i},{j})")
    if (i, j) in CYCLE:
        return PairClass(q, i, j), 1
    return PairClass(q, j, i), -1


@dataclass(frozen=True)
class ChernMonomial:
    """Signed product of generators with positive exponents.

    factors is a tuple of (generator, exponent) pairs sorted by
    generator_key with no duplicates; sign is +1 or -1.
    """

    sign: int
    factors: Tuple[Tuple[ChernGenerator, int], ...]

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign}")

    @classmethod
    def make(cls, factors: Iterable[Tuple[ChernGenerator, int]], sign: int = 1) -> "ChernMonomial":
        merged: dict = {}
        for gen, exp in factors:
            if exp < 0:
                raise ValueError(f"negative exponent {exp} on {gen}")
            if exp:
                merged[gen] = merged.get(gen, 0) + exp
        ordered = tuple(sorted(merged.items(), key=lambda ge: generator_key(ge[0])))
        return cls(sign, ordered)

    @classmethod
    def unit(cls) -> "ChernMonomial":
        return cls(1, ())

    @property
    def degree(self) -> int:
        return sum(exp for _, exp in self.factors)

    def __mul__(self, other: "ChernMonomial") -> "ChernMonomial":
        return ChernMonomial.make(
            list(self.factors) + list(other.factors), self.sign * other.sign
        )

    def __pow__(self, k: int) -> "ChernMonomial":
        if k < 0:
            raise ValueError("negative power of a monomial")
        return ChernMonomial.make(
            [(gen, exp * k) for gen, exp in self.factors],
            self.sign if k % 2 else 1,
        )

    def negated(self) -> "ChernMonomial":
        return ChernMonomial(-self.sign, self.factors)

    def sort_key(self):
        return (
            tuple((generator_key(gen), exp) for gen, exp in self.factors),
            self.sign,
        )

    def __repr__(self) -> str:
        if not self.factors:
            body = "1"
        else:
            parts = []
            for gen, exp in self.factors:
                if isinstance(gen, PairClass):
                    s = f"c{gen.q}_{gen.i}{gen.j}"
                else:
                    s = f"e{gen.q}_{gen.j}"
                parts.append(s + (f"^{exp}" if exp > 1 else ""))
            body = "*".join(parts)
        return body if self.sign == 1 else f"-{body}"


def canonicalize_monomial(raw: Iterable[Tuple[int, int, int, int]]) -> ChernMonomial:
    """Build a canonical monomial from (q, i, j, exponent) pair-class data.

    Reversed pairs are flipped into the cycle orientation; each flipped
    power contributes a factor -1 to the sign. Zero exponents are dropped.
    """
    sign = 1
    factors = []
    for q, i, j, exp in raw:
        if exp < 0:
            raise ValueError(f"negative exponent {exp} on c^{q}_{i}{j}")
        gen, orient = oriented_pair(q, i, j)
        if exp == 0:
            continue
        if orient < 0 and exp % 2:
            sign = -sign
        factors.append((gen, exp))
    return ChernMonomial.make(factors, sign)


class ChernPolynomial:
    """Formal rational combination of monomials; no structural canonicity."""

    __slots__ = ("terms",)

    def __init__(self, terms: Sequence[Tuple[Fraction, ChernMonomial]] = ()):
        self.terms = tuple(terms)

    @classmethod
    def zero(cls) -> "ChernPolynomial":
        return cls(())

    @classmethod
    def one(cls) -> "ChernPolynomial":
        return cls(((Fraction(1), ChernMonomial.unit()),))

    @classmethod
    def constant(cls, c) -> "ChernPolynomial":
        c = Fraction(c)
        return cls(((c, ChernMonomial.unit()),) if c else ())

    @classmethod
    def monomial(cls, m: ChernMonomial, coeff=1) -> "ChernPolynomial":
        coeff = Fraction(coeff)
        return cls(((coeff, m),) if coeff else ())

    @classmethod
    def pair(cls, q: int, i: int, j: int) -> "ChernPolynomial":
        gen, orient = oriented_pair(q, i, j)
        return cls(((Fraction(orient), ChernMonomial.make([(gen, 1)])),))

    @classmethod
    def slot(cls, q: int, j: int) -> "ChernPolynomial":
        return cls(((Fraction(1), ChernMonomial.make([(SlotClass(q, j), 1)])),))

    def __add__(self, other: "ChernPolynomial") -> "ChernPolynomial":
        return ChernPolynomial(self.terms + other.terms)

    def __sub__(self, other: "ChernPolynomial") -> "ChernPolynomial":
        return self + (-other)

    def __neg__(self) -> "ChernPolynomial":
        return ChernPolynomial(tuple((-c, m) for c, m in self.terms))

    def __mul__(self, other):
        if isinstance(other, ChernPolynomial):
            return ChernPolynomial(
                tuple(
                    (c1 * c2, m1 * m2)
                    for c1, m1 in self.terms
                    for c2, m2 in other.terms
                )
            )
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c) -> "ChernPolynomial":
        c = Fraction(c)
        if not c:
            return ChernPolynomial.zero()
        return ChernPolynomial(tuple((c * c1, m) for c1, m in self.terms))

    def __pow__(self, k: int) -> "ChernPolynomial":
        if k < 0:
            raise ValueError("negative power of a formal polynomial")
        result = ChernPolynomial.one()
        for _ in range(k):
            result = result * self
        return result

    def combined(self) -> "ChernPolynomial":
        """Merge equal monomials, fold signs into coefficients, sort terms.

        This is a representation cleanup only; semantic equality is still
        decided by embedding.
        """
        acc: dict = {}
        for coeff, mono in self.terms:
            plus = ChernMonomial(1, mono.factors)
            acc[plus] = acc.get(plus, Fraction(0)) + coeff * mono.sign
        cleaned = [(c, m) for m, c in acc.items() if c]
        cleaned.sort(key=lambda cm: cm[1].sort_key())
        return ChernPolynomial(tuple(cleaned))

    def is_structurally_zero(self) -> bool:
        return not self.combined().terms

    def __eq__(self, other) -> bool:
        if isinstance(other, ChernPolynomial):
            return self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash(self.terms)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*{m!r}" for c, m in self.terms).replace("+ -", "- ")


def embed_generator(gen: ChernGenerator, n: int) -> FreePolynomial:
    if not 1 <= gen.q <= n:
        raise PunctureRangeError(
            f"generator puncture {gen.q} outside ambient configuration [1..{n}]"
        )
    if isinstance(gen, PairClass):
        return e(gen.q, gen.i) - e(gen.q, gen.j)
    return e(gen.q, gen.j)


def embed_monomial(m: ChernMonomial, n: int) -> FreePolynomial:
    out = FreePolynomial.constant(m.sign)
    for gen, exp in m.factors:
        out = out * embed_generator(gen, n) ** exp
    return out


def embed_to_free(p: Union[ChernPolynomial, ChernMonomial], n: int) -> FreePolynomial:
    """Expand into the free polynomial ring and canonicalize.

    Substitutes c^q_{ij} -> e^q_i - e^q_j and e^q_3 -> -e^q_1 - e^q_2.
    Raises PunctureRangeError when a generator's puncture exceeds n.
    """
    if isinstance(p, ChernMonomial):
        return embed_monomial(p, n)
    out = FreePolynomial.zero()
    for coeff, mono in p.terms:
        out = out + coeff * embed_monomial(mono, n)
    return out


def pivot_monomial(q: int, root: int, power: int) -> ChernMonomial:
    """(c^q_{root,j} c^q_{root,k})^power as a canonical monomial, {j,k} the other slots.

    Root 1 pairs the generators (1,2) and (3,1), root 2 pairs (1,2) and
    (2,3), root 3 pairs (2,3) and (3,1); each power of the reversed factor
    contributes a sign flip, so the canonical sign is (-1)^power.
    """
    if root not in (1, 2, 3):
        raise ValueError(f"root slot must be 1, 2 or 3, got {root}")
    if power < 0:
        raise ValueError(f"pivot power must be nonnegative, got {power}")
    j, k = [s for s in (1, 2, 3) if s != root]
    first, orient1 = oriented_pair(q, root, j)
    second, orient2 = oriented_pair(q, root, k)
    sign = (orient1 * orient2) ** power if power % 2 else 1
    # exactly one of the two pairs rooted at `root` is reversed in the cycle
    assert orient1 * orient2 == -1
    return ChernMonomial.make([(first, power), (second, power)], sign)


# -- relation verification --------------------------------------------------

@dataclass(frozen=True)
class RelationCheck:
    family: str
    q: int
    indices: Tuple[int, ...]
    ok: bool
    witness: FreePolynomial  # embed(lhs - rhs); zero exactly when ok


@dataclass(frozen=True)
class RelationReport:
    n: int
    checks: Tuple[RelationCheck, ...]

    @property
    def all_ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def failures(self) -> Tuple[RelationCheck, ...]:
        return tuple(c for c in self.checks if not c.ok)


def verify_relations(n: int, mutate: bool = False) -> RelationReport:
    """Check the five relation families for every puncture q <= n.

    Families, for distinct i, j, k:
      pair-additivity   c_ij + c_jk = c_ik
      antisymmetry      c_ij = -c_ji
      slot-difference   c_ij = e_i - e_j
      pair-to-slot      c_ij + c_ik = 3 e_i
      slot-trace        e_1 + e_2 + e_3 = 0

    With mutate=True one deliberately false instance is appended (a test
    hook for failure-path plumbing).
    """
    if n < 1:
        raise ValueError(f"puncture count must be >= 1, got {n}")
    checks = []

    def record(family, q, indices, lhs_minus_rhs):
        witness = embed_to_free(lhs_minus_rhs, n)
        checks.append(RelationCheck(family, q, indices, witness.is_zero(), witness))

    for q in range(1, n + 1):
        for i, j, k in itertools.permutations((1, 2, 3)):
            record(
                "pair-additivity", q, (i, j, k),
                ChernPolynomial.pair(q, i, j) + ChernPolynomial.pair(q, j, k)
                - ChernPolynomial.pair(q, i, k),
            )
        for i, j in itertools.permutations((1, 2, 3), 2):
            record(
                "antisymmetry", q, (i, j),
                ChernPolynomial.pair(q, i, j) + ChernPolynomial.pair(q, j, i),
            )
            record(
                "slot-difference", q, (i, j),
                ChernPolynomial.pair(q, i, j)
                - (ChernPolynomial.slot(q, i) - ChernPolynomial.slot(q, j)),
            )
        for i in (1, 2, 3):
            j, k = [s for s in (1, 2, 3) if s != i]
            record(
                "pair-to-slot", q, (i, j, k),
                ChernPolynomial.pair(q, i, j) + ChernPolynomial.pair(q, i, k)
                - 3 * ChernPolynomial.slot(q, i),
            )
        record(
            "slot-trace", q, (1, 2, 3),
            ChernPolynomial.slot(q, 1) + ChernPolynomial.slot(q, 2)
            + ChernPolynomial.slot(q, 3),
        )

    if mutate:
        record(
            "mutated", n, (1, 2, 3),
            ChernPolynomial.pair(n, 1, 2) + ChernPolynomial.pair(n, 2, 3)
            - ChernPolynomial.pair(n, 1, 2),
        )

    return RelationReport(n, tuple(checks))
