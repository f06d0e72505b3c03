"""Exact torus genericity and the symbolic section-collection calculus.

Torus elements are triples of rational rotation numbers theta_j mod 1
(eigenvalues e^{2 pi i theta_j}) whose sum is an integer. A tuple is
generic when every element has three distinct rotations and no choice of
one eigenvalue per puncture multiplies to 1; both conditions are decided
exactly over the rationals.

Sections are opaque symbols: a matrix-entry section records which entry of
which generator's image must vanish, an eigenvector-coordinate section
records which coordinate of which eigenvector must vanish. The moves below
replace collections by collections with the same vanishing locus; that
equivalence is analytic input and is axiomatized here, while the shape
preconditions and the bookkeeping are checked exactly. The endpoint of the
calculus is a collection matching the no-common-zeros template, certified
empty by exhausting the admissible eigenvalue selections.
"""

from __future__ import annotations

import cmath
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .decomposer import VanishingMonomial


class NonGenericTupleError(ValueError):
    def __init__(self, report: "GenericityReport"):
        self.report = report
        detail = ""
        if report.zero_product_selections:
            sel, total = report.zero_product_selections[0]
            detail = f"; eigenvalue selection {sel} has rotation sum {total}"
        elif not all(report.distinct_ok):
            bad = report.distinct_ok.index(False) + 1
            detail = f"; element {bad} has a repeated rotation"
        super().__init__("torus tuple is not generic" + detail)


class TemplateMismatchError(ValueError):
    def __init__(self, message: str, section=None):
        self.section = section
        if section is not None:
            message = f"{message}: {section!r}"
        super().__init__(message)


class MissingPairError(ValueError):
    """The eigenvector pair a move should act on is absent."""


class ShapeMismatchError(ValueError):
    def __init__(self, message: str, section=None):
        self.section = section
        if section is not None:
            message = f"{message}: {section!r}"
        super().__init__(message)


def mod1(x: Fraction) -> Fraction:
    return x % 1


# -- torus data --------------------------------------------------------------

@dataclass(frozen=True)
class TorusElement:
    """Diagonal special-unitary element given by rotations (theta_1, theta_2, theta_3)."""

    rotations: Tuple[Fraction, Fraction, Fraction]

    def __post_init__(self):
        if len(self.rotations) != 3:
            raise ValueError("a torus element carries exactly three rotations")
        for theta in self.rotations:
            if not isinstance(theta, Fraction):
                raise ValueError(f"rotations must be exact rationals, got {theta!r}")
            if not 0 <= theta < 1:
                raise ValueError(f"rotation {theta} is not reduced mod 1")
        if mod1(sum(self.rotations, Fraction(0))) != 0:
            raise ValueError(
                f"rotations {self.rotations} do not sum to an integer (determinant != 1)"
            )

    @classmethod
    def of(cls, t1, t2, t3) -> "TorusElement":
        return cls(tuple(mod1(Fraction(t)) for t in (t1, t2, t3)))

    @property
    def has_distinct_rotations(self) -> bool:
        return len(set(self.rotations)) == 3


@dataclass(frozen=True)
class TorusTuple:
    elements: Tuple[TorusElement, ...]

    def __post_init__(self):
        if not self.elements:
            raise ValueError("a torus tuple needs at least one element")

    @classmethod
    def of(cls, rows: Iterable[Sequence]) -> "TorusTuple":
        return cls(tuple(TorusElement.of(*row) for row in rows))

    @property
    def n(self) -> int:
        return len(self.elements)

    def rotation(self, puncture: int, slot: int) -> Fraction:
        return self.elements[puncture - 1].rotations[slot - 1]


@dataclass(frozen=True)
class GenericityReport:
    distinct_ok: Tuple[bool, ...]
    zero_product_selections: Tuple[Tuple[Tuple[int, ...], Fraction], ...]

    @property
    def is_generic(self) -> bool:
        return all(self.distinct_ok) and not self.zero_product_selections


def check_generic(tup: TorusTuple) -> GenericityReport:
    """Decide genericity exactly.

    Condition 1 (full torus stabilizer) holds iff each element has three
    pairwise distinct rotations mod 1. Condition 2 is checked by exhausting
    all 3^n eigenvalue selections; each failure is reported as a witness
    (selection vector, integral rotation sum).
    """
    distinct = tuple(el.has_distinct_rotations for el in tup.elements)
    witnesses = []
    for sel in itertools.product((1, 2, 3), repeat=tup.n):
        total = sum((tup.rotation(q, s) for q, s in enumerate(sel, start=1)), Fraction(0))
        if mod1(total) == 0:
            witnesses.append((sel, total))
    return GenericityReport(distinct, tuple(witnesses))


def float_zero_product_selections(
    tup: TorusTuple, tol: float = 1e-9
) -> Tuple[Tuple[int, ...], ...]:
    """Selections whose floating eigenvalue product lies within tol of 1."""
    hits = []
    for sel in itertools.product((1, 2, 3), repeat=tup.n):
        product = complex(1.0)
        for q, s in enumerate(sel, start=1):
            product *= cmath.exp(2j * cmath.pi * float(tup.rotation(q, s)))
        if abs(product - 1.0) < tol:
            hits.append(sel)
    return tuple(hits)


def search_generic_tuple(denominators: Sequence[int], candidates_per_puncture: int = 12) -> TorusTuple:
    """Deterministic generic tuple whose rotations have the given denominators.

    For each puncture the candidate triples (k1/m, k2/m, k3/m) with
    0 < k1 < k2 < k3 < m and k1 + k2 + k3 = m or 2m are enumerated in
    lexicographic order; the first combination passing check_generic wins.
    """
    per_puncture: List[List[TorusElement]] = []
    for m in denominators:
        if m < 4:
            raise ValueError(f"denominator {m} too small to carry distinct rotations")
        found = []
        for k1 in range(1, m):
            for k2 in range(k1 + 1, m):
                for total in (m, 2 * m):
                    k3 = total - k1 - k2
                    if k3 <= k2 or k3 >= m:
                        continue
                    found.append(TorusElement.of(Fraction(k1, m), Fraction(k2, m), Fraction(k3, m)))
                if len(found) >= candidates_per_puncture:
                    break
            if len(found) >= candidates_per_puncture:
                break
        if not found:
            raise ValueError(f"no admissible rotation triple with denominator {m}")
        per_puncture.append(found)
    for combo in itertools.product(*per_puncture):
        tup = TorusTuple(tuple(combo))
        if check_generic(tup).is_generic:
            return tup
    raise ValueError(
        f"no generic tuple found with denominators {tuple(denominators)}; "
        f"raise candidates_per_puncture"
    )


def standard_generic_tuple(n: int) -> TorusTuple:
    """Generic tuple with rotation denominators 7*(q+1) for puncture q."""
    return search_generic_tuple([7 * (q + 1) for q in range(1, n + 1)])


# -- sections and collections -------------------------------------------------

@dataclass(frozen=True, order=True)
class Token:
    """Opaque fundamental-group generator symbol: a_i, b_i or c_m."""

    family: str
    index: int

    def __post_init__(self):
        if self.family not in ("a", "b", "c"):
            raise ValueError(f"token family must be a, b or c, got {self.family!r}")
        if self.index < 1:
            raise ValueError(f"token index must be >= 1, got {self.index}")

    def __repr__(self) -> str:
        return f"{self.family}{self.index}"


def token(text: str) -> Token:
    return Token(text[0], int(text[1:]))


@dataclass(frozen=True)
class MatrixEntrySection:
    """Vanishes where the (row, col) entry of the image of `token` is zero."""

    bundle: int
    row: int
    col: int
    token: Token

    def __post_init__(self):
        if self.row == self.col:
            raise ValueError("matrix-entry sections live off the diagonal")
        if self.row not in (1, 2, 3) or self.col not in (1, 2, 3):
            raise ValueError(f"entry indices must lie in 1..3, got ({self.row},{self.col})")
        if self.token.family == "c" and self.token.index == self.bundle:
            raise ValueError(
                f"token c{self.bundle} is pinned on bundle {self.bundle} and induces no section"
            )

    def __repr__(self) -> str:
        return f"s^{self.bundle}_{self.row}{self.col}({self.token!r})"


@dataclass(frozen=True)
class EigvecCoordSection:
    """Vanishes where coordinate `coord` of the slot-`slot` eigenvector of the
    image of the boundary token is zero."""

    bundle: int
    slot: int
    coord: int
    token: Token

    def __post_init__(self):
        if self.token.family != "c":
            raise ValueError("eigenvector sections are indexed by boundary tokens c_m")
        if self.token.index == self.bundle:
            raise ValueError(f"eigenvector section needs a boundary token other than c{self.bundle}")
        if self.slot not in (1, 2, 3) or self.coord not in (1, 2, 3):
            raise ValueError(f"slot/coordinate must lie in 1..3, got ({self.slot},{self.coord})")

    def __repr__(self) -> str:
        return f"s^{self.bundle}_{self.slot},{self.coord}({self.token!r})"


Section = Union[MatrixEntrySection, EigvecCoordSection]


def section_key(s: Section):
    if isinstance(s, MatrixEntrySection):
        return (s.bundle, 0, s.token, s.row, s.col)
    return (s.bundle, 1, s.token, s.slot, s.coord)


@dataclass(frozen=True)
class SectionCollection:
    """Multiset of sections over a fixed (g, n) with a distinguished base puncture."""

    g: int
    n: int
    base: int
    sections: Tuple[Section, ...]

    def __post_init__(self):
        if self.g < 2 or self.n < 1:
            raise ValueError(f"need g >= 2 and n >= 1, got ({self.g},{self.n})")
        if not 1 <= self.base <= self.n:
            raise ValueError(f"base puncture {self.base} outside [1..{self.n}]")
        for s in self.sections:
            if not 1 <= s.bundle <= self.n:
                raise ValueError(f"section bundle {s.bundle} outside [1..{self.n}]: {s!r}")
            limit = self.g if s.token.family in ("a", "b") else self.n
            if s.token.index > limit:
                raise ValueError(f"token {s.token!r} out of range for (g,n)=({self.g},{self.n})")
        object.__setattr__(self, "sections", tuple(sorted(self.sections, key=section_key)))

    @property
    def size(self) -> int:
        return len(self.sections)

    def counter(self) -> Dict[Section, int]:
        out: Dict[Section, int] = {}
        for s in self.sections:
            out[s] = out.get(s, 0) + 1
        return out

    def replace(
        self,
        remove: Sequence[Section],
        add: Sequence[Section],
        base: Optional[int] = None,
    ) -> "SectionCollection":
        pool = list(self.sections)
        for s in remove:
            try:
                pool.remove(s)
            except ValueError:
                raise MissingPairError(f"section {s!r} not present in the collection")
        pool.extend(add)
        return SectionCollection(self.g, self.n, self.base if base is None else base, tuple(pool))


def ab_tokens(g: int) -> Tuple[Token, ...]:
    return tuple(Token("a", i) for i in range(1, g + 1)) + tuple(
        Token("b", i) for i in range(1, g + 1)
    )


def build_basic_collection(g: int, n: int) -> SectionCollection:
    """Entry rows (1,2) and (1,3) on bundle 1 over every token except c_1.

    Size is 2(2g + n - 1) = 4g + 2n - 2.
    """
    tokens = list(ab_tokens(g)) + [Token("c", m) for m in range(2, n + 1)]
    sections: List[Section] = []
    for x in tokens:
        sections.append(MatrixEntrySection(1, 1, 2, x))
        sections.append(MatrixEntrySection(1, 1, 3, x))
    return SectionCollection(g, n, 1, tuple(sections))


# -- moves --------------------------------------------------------------------

@dataclass(frozen=True)
class TransposeMove:
    bundle: int
    boundary: int
    perm: Tuple[int, int, int]


@dataclass(frozen=True)
class SwitchMove:
    src: int
    dst: int
    perm_src: Tuple[int, int, int]
    perm_dst: Tuple[int, int, int]


def _check_perm(perm) -> Tuple[int, int, int]:
    if sorted(perm) != [1, 2, 3]:
        raise ValueError(f"{perm} is not a permutation of (1, 2, 3)")
    return tuple(perm)


def transpose_move(
    coll: SectionCollection, l: int, q: int, perm: Tuple[int, int, int]
) -> SectionCollection:
    """Swap an eigenvector pair between its two zero-locus-equivalent forms.

    For perm = (i, j, k), the pair {s^l_{i,j}(c_q), s^l_{i,k}(c_q)} and the
    pair {s^l_{j,i}(c_q), s^l_{k,i}(c_q)} cut the same locus; whichever is
    present is replaced by the other, making the move an involution.
    """
    i, j, k = _check_perm(perm)
    if l == q:
        raise ValueError("transpose move needs a boundary token distinct from the bundle")
    c_q = Token("c", q)
    side_a = [EigvecCoordSection(l, i, j, c_q), EigvecCoordSection(l, i, k, c_q)]
    side_b = [EigvecCoordSection(l, j, i, c_q), EigvecCoordSection(l, k, i, c_q)]
    have = coll.counter()
    if all(have.get(s, 0) for s in side_a):
        return coll.replace(side_a, side_b)
    if all(have.get(s, 0) for s in side_b):
        return coll.replace(side_b, side_a)
    raise MissingPairError(
        f"neither eigenvector pair for bundle {l}, boundary c{q}, permutation {perm} is present"
    )


def switch_move(
    coll: SectionCollection,
    l: int,
    m: int,
    perm_ijk: Tuple[int, int, int],
    perm_uvw: Tuple[int, int, int],
) -> SectionCollection:
    """Rebase a one-bundle collection from puncture l to puncture m.

    The input must consist exactly of entry sections {s^l_{ij}(x),
    s^l_{ik}(x)} over a token set A avoiding c_l and c_m, plus the
    eigenvector pair {s^l_{u,j}(c_m), s^l_{u,k}(c_m)}. The output is
    {s^m_{uv}(x), s^m_{uw}(x) : x in A} plus {s^m_{i,v}(c_l), s^m_{i,w}(c_l)},
    which cuts the same locus.
    """
    i, j, k = _check_perm(perm_ijk)
    u, v, w = _check_perm(perm_uvw)
    if l == m:
        raise ValueError("switch move needs two distinct punctures")

    c_m = Token("c", m)
    want_eig = {EigvecCoordSection(l, u, j, c_m), EigvecCoordSection(l, u, k, c_m)}
    entry_cols: Dict[Token, List[int]] = {}
    seen_eig: List[EigvecCoordSection] = []
    for s in coll.sections:
        if s.bundle != l:
            raise ShapeMismatchError("section lives on the wrong bundle", s)
        if isinstance(s, MatrixEntrySection):
            if s.row != i or s.col not in (j, k):
                raise ShapeMismatchError(
                    f"entry section outside rows ({i},{j})/({i},{k})", s
                )
            if s.token.family == "c" and s.token.index in (l, m):
                raise ShapeMismatchError("entry token collides with the moving punctures", s)
            entry_cols.setdefault(s.token, []).append(s.col)
        else:
            if s not in want_eig:
                raise ShapeMismatchError(
                    f"eigenvector section is not s^{l}_{u},{j}(c{m}) or s^{l}_{u},{k}(c{m})", s
                )
            seen_eig.append(s)
    for x, cols in entry_cols.items():
        if sorted(cols) != sorted((j, k)):
            raise ShapeMismatchError(
                f"token {x!r} must carry exactly one ({i},{j}) and one ({i},{k}) section"
            )
    if len(seen_eig) != 2 or len(set(seen_eig)) != 2:
        raise ShapeMismatchError(
            f"need exactly the eigenvector pair s^{l}_{u},{j}(c{m}), s^{l}_{u},{k}(c{m})"
        )

    c_l = Token("c", l)
    out: List[Section] = []
    for x in entry_cols:
        out.append(MatrixEntrySection(m, u, v, x))
        out.append(MatrixEntrySection(m, u, w, x))
    out.append(EigvecCoordSection(m, i, v, c_l))
    out.append(EigvecCoordSection(m, i, w, c_l))
    return SectionCollection(coll.g, coll.n, m, tuple(out))


# -- the no-common-zeros template --------------------------------------------

@dataclass(frozen=True)
class SelectionRecord:
    selection: Tuple[int, ...]
    total: Fraction  # rotation sum reduced mod 1; nonzero certifies the selection


@dataclass(frozen=True)
class EmptinessCertificate:
    """Record that a template-shaped collection has empty common zero locus.

    The admissible eigenvalue selections force slot perm[0] at the base
    puncture and slot f(q) at every puncture q in Y, leaving the punctures
    in X free; emptiness holds because every admissible selection has a
    nonintegral rotation sum.
    """

    collection: SectionCollection
    torus: TorusTuple
    base: int
    perm: Tuple[int, int, int]
    x_punctures: Tuple[int, ...]
    y_punctures: Tuple[int, ...]
    forced_slots: Tuple[Tuple[int, int], ...]  # (puncture in Y, slot f(puncture))
    selections: Tuple[SelectionRecord, ...]

    @property
    def block_root(self) -> int:
        return self.perm[0]

    @property
    def forced_selection(self) -> Dict[int, int]:
        forced = {self.base: self.perm[0]}
        forced.update(dict(self.forced_slots))
        return forced

    @property
    def worst(self) -> SelectionRecord:
        def distance(rec: SelectionRecord) -> Fraction:
            return min(rec.total, 1 - rec.total)

        return min(self.selections, key=lambda rec: (distance(rec), rec.selection))


@dataclass(frozen=True)
class _Template:
    base: int
    perm: Tuple[int, int, int]
    x_punctures: Tuple[int, ...]
    y_punctures: Tuple[int, ...]
    forced: Dict[int, int]


def _match_template(coll: SectionCollection) -> _Template:
    l = coll.base
    entries: List[MatrixEntrySection] = []
    eigs: List[EigvecCoordSection] = []
    for s in coll.sections:
        if s.bundle != l:
            raise TemplateMismatchError(f"section lives off the base bundle {l}", s)
        (entries if isinstance(s, MatrixEntrySection) else eigs).append(s)

    if not entries:
        raise TemplateMismatchError("no matrix-entry sections; the handle tokens are uncovered")
    i = entries[0].row
    cols = sorted({s.col for s in entries})
    if len(cols) != 2:
        raise TemplateMismatchError(
            f"matrix-entry sections must use exactly two columns, found {cols}"
        )
    j, k = cols
    for s in entries:
        if s.row != i:
            raise TemplateMismatchError(f"matrix-entry rows disagree ({i} vs {s.row})", s)

    per_token: Dict[Token, List[int]] = {}
    for s in entries:
        per_token.setdefault(s.token, []).append(s.col)
    for x, seen in per_token.items():
        if sorted(seen) != [j, k]:
            raise TemplateMismatchError(
                f"token {x!r} must carry exactly one column-{j} and one column-{k} section"
            )
    missing = [x for x in ab_tokens(coll.g) if x not in per_token]
    if missing:
        raise TemplateMismatchError(f"handle tokens {missing} are uncovered")
    x_punctures = sorted(x.index for x in per_token if x.family == "c")

    per_boundary: Dict[int, List[EigvecCoordSection]] = {}
    for s in eigs:
        per_boundary.setdefault(s.token.index, []).append(s)
    forced: Dict[int, int] = {}
    for q, pair in sorted(per_boundary.items()):
        slots = {s.slot for s in pair}
        coords = sorted(s.coord for s in pair)
        if len(pair) != 2 or len(slots) != 1 or coords != [j, k]:
            raise TemplateMismatchError(
                f"boundary c{q} needs one forced slot with coordinates {{{j},{k}}}",
                pair[0],
            )
        forced[q] = slots.pop()
    y_punctures = sorted(per_boundary)

    expected = set(range(1, coll.n + 1)) - {l}
    if set(x_punctures) | set(y_punctures) != expected or set(x_punctures) & set(y_punctures):
        raise TemplateMismatchError(
            f"boundary tokens must split c_q (q != {l}) between entry and eigenvector "
            f"sections; got X={x_punctures}, Y={y_punctures}"
        )
    return _Template(l, (i, j, k), tuple(x_punctures), tuple(y_punctures), forced)


def _admissible_selections(tmpl: _Template, n: int) -> List[Tuple[int, ...]]:
    fixed = {tmpl.base: tmpl.perm[0], **tmpl.forced}
    free = [q for q in range(1, n + 1) if q not in fixed]
    out = []
    for choice in itertools.product((1, 2, 3), repeat=len(free)):
        sel = dict(fixed)
        sel.update(dict(zip(free, choice)))
        out.append(tuple(sel[q] for q in range(1, n + 1)))
    return out


def match_nozeros(coll: SectionCollection, tup: TorusTuple) -> EmptinessCertificate:
    """Match the no-common-zeros template and certify emptiness.

    The collection must consist of entry sections {s^l_{ij}(x), s^l_{ik}(x)}
    over all handle tokens plus the boundary tokens in X, together with one
    forced-slot eigenvector pair per boundary token in Y. Emptiness then
    follows by enumerating every admissible eigenvalue selection (slot i at
    l, slot f(q) on Y, free on X) and checking its rotation sum is never
    integral, which the generic tuple guarantees.
    """
    if tup.n != coll.n:
        raise ValueError(f"torus tuple has {tup.n} elements, collection expects {coll.n}")
    report = check_generic(tup)
    if not report.is_generic:
        raise NonGenericTupleError(report)
    tmpl = _match_template(coll)
    records = []
    for sel in _admissible_selections(tmpl, coll.n):
        total = mod1(
            sum((tup.rotation(q, s) for q, s in enumerate(sel, start=1)), Fraction(0))
        )
        assert total != 0, "generic tuple cannot produce an integral selection sum"
        records.append(SelectionRecord(sel, total))
    return EmptinessCertificate(
        collection=coll,
        torus=tup,
        base=tmpl.base,
        perm=tmpl.perm,
        x_punctures=tmpl.x_punctures,
        y_punctures=tmpl.y_punctures,
        forced_slots=tuple(sorted(tmpl.forced.items())),
        selections=tuple(records),
    )


@dataclass(frozen=True)
class EmptinessCheck:
    ok: bool
    reason: Optional[str] = None

    def __bool__(self) -> bool:
        return self.ok


def verify_emptiness(cert: EmptinessCertificate) -> EmptinessCheck:
    """Recheck an emptiness certificate from its own data."""
    report = check_generic(cert.torus)
    if not report.is_generic:
        return EmptinessCheck(False, "stored torus tuple is not generic")
    try:
        tmpl = _match_template(cert.collection)
    except TemplateMismatchError as exc:
        return EmptinessCheck(False, f"stored collection no longer matches: {exc}")
    if (
        tmpl.base != cert.base
        or tmpl.perm != cert.perm
        or tmpl.x_punctures != cert.x_punctures
        or tmpl.y_punctures != cert.y_punctures
        or tuple(sorted(tmpl.forced.items())) != cert.forced_slots
    ):
        return EmptinessCheck(False, "stored template parameters disagree with the collection")
    expected = {}
    for sel in _admissible_selections(tmpl, cert.collection.n):
        total = mod1(
            sum((cert.torus.rotation(q, s) for q, s in enumerate(sel, start=1)), Fraction(0))
        )
        expected[sel] = total
    stored = {rec.selection: rec.total for rec in cert.selections}
    if stored != expected:
        return EmptinessCheck(False, "stored selection sums disagree with recomputation")
    if any(total == 0 for total in stored.values()):
        return EmptinessCheck(False, "an admissible selection has integral rotation sum")
    return EmptinessCheck(True)


# -- from vanishing monomials to the template ---------------------------------

def _perm_for_root(root: int) -> Tuple[int, int, int]:
    rest = [s for s in (1, 2, 3) if s != root]
    return (root, rest[0], rest[1])


def derive_prop_collection(
    zeta: VanishingMonomial, l: int
) -> Tuple[List[SwitchMove], SectionCollection]:
    """Build the witness collection for a vanishing monomial, based at l.

    Starts from the collection that covers each puncture's pivot powers on
    its own bundle (entry sections over assigned tokens plus one
    eigenvector pair per other supported puncture, indexed by c_l), then
    rebases every other supported puncture onto l with switch moves. The
    result has exactly 4g + 2n - 2 sections and matches the
    no-common-zeros template for any generic tuple.
    """
    g, n = zeta.g, zeta.n
    support = [q for q in range(1, n + 1) if zeta.r[q - 1] >= 1]
    if l not in support:
        raise ValueError(f"base puncture {l} carries no pivot power (support {support})")
    if not zeta.satisfies_sum:
        raise ValueError(
            f"pivot powers sum to {sum(zeta.r)}, need 2g+n-1 = {2 * g + n - 1}"
        )

    perms = {q: _perm_for_root(zeta.roots[q - 1]) for q in support}
    tokens = list(ab_tokens(g)) + [
        Token("c", m) for m in range(1, n + 1) if m not in support
    ]

    assigned: Dict[int, List[Token]] = {}
    idx = 0
    for q in support:
        if q == l:
            continue
        count = zeta.r[q - 1] - 1
        assigned[q] = tokens[idx:idx + count]
        idx += count
    assigned[l] = tokens[idx:]
    assert len(assigned[l]) == zeta.r[l - 1], "token tiling must leave r_l tokens for the base"

    c_l = Token("c", l)
    sections: List[Section] = []
    for q in support:
        i, j, k = perms[q]
        for x in assigned[q]:
            sections.append(MatrixEntrySection(q, i, j, x))
            sections.append(MatrixEntrySection(q, i, k, x))
        if q != l:
            u = perms[l][0]
            sections.append(EigvecCoordSection(q, u, j, c_l))
            sections.append(EigvecCoordSection(q, u, k, c_l))
    working = SectionCollection(g, n, l, tuple(sections))

    moves: List[SwitchMove] = []
    for q in support:
        if q == l:
            continue
        sub = [s for s in working.sections if s.bundle == q]
        rest = [s for s in working.sections if s.bundle != q]
        switched = switch_move(
            SectionCollection(g, n, q, tuple(sub)), q, l, perms[q], perms[l]
        )
        moves.append(SwitchMove(q, l, perms[q], perms[l]))
        working = SectionCollection(g, n, l, tuple(rest) + switched.sections)

    expected_size = 4 * g + 2 * n - 2
    assert working.size == expected_size, (
        f"final collection has {working.size} sections, expected {expected_size}"
    )
    return moves, working
