"""Exact sparse polynomials over Q in the puncture slot variables.

Each puncture q >= 1 carries slot variables e^q_1, e^q_2, e^q_3 subject to
the trace relation e^q_1 + e^q_2 + e^q_3 = 0. The third slot is eliminated
at construction time (e^q_3 = -e^q_1 - e^q_2), so stored polynomials live
in the free commutative ring on the surviving variables and equality of
values is equality of representations. Coefficients are exact rationals;
nothing in this ring is ever floating point.

Monomials are packed flat tuples (v0, e0, v1, e1, ...) where the variable
id v = 2*(q-1) + (slot-1) orders variables by (puncture, slot). The term
dicts are manipulated by the kernel backend (compiled when available).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterator, Mapping, NamedTuple, Tuple

from . import kernel

ExactRational = Fraction

# Enabled by the test suite: every constructed polynomial is re-checked for
# canonical form (sorted packed monomials, positive exponents, no zero
# coefficients, reduced positive-denominator rationals).
STRICT_CHECKS = False


class BaseVariable(NamedTuple):
    """A surviving slot variable e^q_j with j in {1, 2}."""

    puncture: int
    slot: int


def pack_variable(puncture: int, slot: int) -> int:
    if puncture < 1:
        raise ValueError(f"puncture index must be >= 1, got {puncture}")
    if slot not in (1, 2):
        raise ValueError(f"stored slots are 1 and 2 (slot 3 is eliminated), got {slot}")
    return 2 * (puncture - 1) + (slot - 1)


def unpack_variable(v: int) -> BaseVariable:
    return BaseVariable(v // 2 + 1, v % 2 + 1)


def _as_rational(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"coefficients must be exact rationals, got {type(c).__name__}")


def _validate_terms(terms: dict) -> None:
    for mono, coef in terms.items():
        if not isinstance(mono, tuple) or len(mono) % 2:
            raise AssertionError(f"malformed packed monomial {mono!r}")
        prev = -1
        for k in range(0, len(mono), 2):
            v, e = mono[k], mono[k + 1]
            if v <= prev:
                raise AssertionError(f"unsorted/duplicate variable ids in {mono!r}")
            if e <= 0:
                raise AssertionError(f"non-positive exponent in {mono!r}")
            prev = v
        if not isinstance(coef, Fraction):
            raise AssertionError(f"coefficient {coef!r} is not a Fraction")
        if coef == 0:
            raise AssertionError("zero coefficient stored")
        if coef.denominator <= 0:
            raise AssertionError(f"non-positive denominator in {coef!r}")


class FreePolynomial:
    """Canonical sparse polynomial; treat instances as immutable."""

    __slots__ = ("_terms",)

    def __init__(self, terms: dict | None = None):
        self._terms = terms if terms is not None else {}
        if STRICT_CHECKS:
            _validate_terms(self._terms)

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "FreePolynomial":
        return cls({})

    @classmethod
    def one(cls) -> "FreePolynomial":
        return cls({(): Fraction(1)})

    @classmethod
    def constant(cls, c) -> "FreePolynomial":
        c = _as_rational(c)
        return cls({(): c} if c else {})

    @classmethod
    def variable(cls, puncture: int, slot: int) -> "FreePolynomial":
        return cls({(pack_variable(puncture, slot), 1): Fraction(1)})

    @classmethod
    def from_exponents(cls, exponents: Mapping[Tuple[int, int], int], coeff=1) -> "FreePolynomial":
        """Single-term polynomial from {(puncture, slot): exponent}; slots 1/2 only."""
        coeff = _as_rational(coeff)
        if not coeff:
            return cls.zero()
        pairs = []
        for (q, j), e in exponents.items():
            if e < 0:
                raise ValueError(f"negative exponent {e} for e^{q}_{j}")
            if e:
                pairs.append((pack_variable(q, j), e))
        pairs.sort()
        mono = tuple(x for vp in pairs for x in vp)
        return cls({mono: coeff})

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: "FreePolynomial") -> "FreePolynomial":
        return FreePolynomial(kernel.add_terms(self._terms, other._terms))

    def __sub__(self, other: "FreePolynomial") -> "FreePolynomial":
        return self + (-other)

    def __neg__(self) -> "FreePolynomial":
        return FreePolynomial(kernel.scale_terms(self._terms, Fraction(-1)))

    def __mul__(self, other):
        if isinstance(other, FreePolynomial):
            return FreePolynomial(kernel.mul_terms(self._terms, other._terms))
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c) -> "FreePolynomial":
        return FreePolynomial(kernel.scale_terms(self._terms, _as_rational(c)))

    def __pow__(self, k: int) -> "FreePolynomial":
        if not isinstance(k, int) or k < 0:
            raise ValueError(f"exponent must be a nonnegative integer, got {k!r}")
        result = FreePolynomial.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- predicates and views ----------------------------------------------

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, FreePolynomial):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == FreePolynomial.constant(other)._terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def degree(self):
        """Total degree; None for the zero polynomial."""
        if not self._terms:
            return None
        return max(_mono_degree(m) for m in self._terms)

    def is_homogeneous(self) -> bool:
        degrees = {_mono_degree(m) for m in self._terms}
        return len(degrees) <= 1

    def term_count(self) -> int:
        return len(self._terms)

    def coefficient(self, exponents: Mapping[Tuple[int, int], int]) -> Fraction:
        pairs = sorted((pack_variable(q, j), e) for (q, j), e in exponents.items() if e)
        mono = tuple(x for vp in pairs for x in vp)
        return self._terms.get(mono, Fraction(0))

    def iter_sorted(self) -> Iterator[Tuple[Tuple[Tuple[int, int, int], ...], Fraction]]:
        """Yield ((q, slot, exp), ...) triples with coefficient, in canonical order.

        Canonical order is lexicographic over the packed monomials, i.e.
        over the (puncture, slot, exponent) triple sequences.
        """
        for mono in sorted(self._terms):
            triples = tuple(
                (*unpack_variable(mono[k]), mono[k + 1]) for k in range(0, len(mono), 2)
            )
            yield triples, self._terms[mono]

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        chunks = []
        for triples, coef in self.iter_sorted():
            factors = [
                f"e{q}_{j}" + (f"^{e}" if e > 1 else "") for q, j, e in triples
            ]
            body = "*".join(factors)
            if not body:
                chunks.append(str(coef))
            elif coef == 1:
                chunks.append(body)
            elif coef == -1:
                chunks.append(f"-{body}")
            else:
                chunks.append(f"{coef}*{body}")
        out = " + ".join(chunks)
        return out.replace("+ -", "- ")


def _mono_degree(mono: tuple) -> int:
    return sum(mono[k] for k in range(1, len(mono), 2))


def e(puncture: int, slot: int) -> FreePolynomial:
    """Slot class e^q_j as a polynomial; slot 3 expands to -e^q_1 - e^q_2."""
    if slot in (1, 2):
        return FreePolynomial.variable(puncture, slot)
    if slot == 3:
        return -(FreePolynomial.variable(puncture, 1) + FreePolynomial.variable(puncture, 2))
    raise ValueError(f"slot must be 1, 2 or 3, got {slot}")


def poly_add(p: FreePolynomial, q: FreePolynomial) -> FreePolynomial:
    return p + q


def poly_mul(p: FreePolynomial, q: FreePolynomial) -> FreePolynomial:
    return p * q


def poly_pow(p: FreePolynomial, k: int) -> FreePolynomial:
    return p ** k
