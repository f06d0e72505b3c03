"""Deterministic JSON encoding for every certificate and data file.

All writers produce canonical bytes: compact separators, sorted object
keys, UTF-8, one trailing LF. Readers validate aggressively and raise
ValueError on malformed input, so callers can map any parse problem to a
usage error. Every emitted file re-parses to a value whose
re-serialization is byte-identical.

Rationals travel as strings "numerator/denominator" in lowest terms with a
positive denominator.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Tuple

from .chernring import (
    ChernMonomial,
    ChernPolynomial,
    PairClass,
    canonicalize_monomial,
)
from .decomposer import DecompositionCertificate, VanishingMonomial
from .geometry import (
    EigvecCoordSection,
    EmptinessCertificate,
    MatrixEntrySection,
    SectionCollection,
    SelectionRecord,
    Token,
    TorusTuple,
)
from .polyring import FreePolynomial
from .rewriter import RewriteCertificate


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False) + "\n"


def write_file(path, obj) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps(obj))


def read_file(path):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _expect(condition: bool, message: str) -> None:
    if not condition:
        raise ValueError(message)


def frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def parse_frac(text) -> Fraction:
    _expect(isinstance(text, str), f"rational must be a string, got {text!r}")
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"bad rational {text!r}: {exc}") from None


def _expect_int(value, what: str) -> int:
    _expect(isinstance(value, int) and not isinstance(value, bool), f"{what} must be an integer, got {value!r}")
    return value


# -- free polynomials ---------------------------------------------------------

def free_poly_to_obj(p: FreePolynomial) -> dict:
    terms = []
    for triples, coeff in p.iter_sorted():
        terms.append(
            {"coeff": frac_str(coeff), "monomial": [[q, j, e] for q, j, e in triples]}
        )
    return {"terms": terms}


def free_poly_from_obj(obj) -> FreePolynomial:
    _expect(isinstance(obj, dict) and set(obj) == {"terms"}, "polynomial object needs a 'terms' list")
    _expect(isinstance(obj["terms"], list), "'terms' must be a list")
    out = FreePolynomial.zero()
    for entry in obj["terms"]:
        _expect(
            isinstance(entry, dict) and set(entry) == {"coeff", "monomial"},
            f"polynomial term needs 'coeff' and 'monomial', got {entry!r}",
        )
        coeff = parse_frac(entry["coeff"])
        exps = {}
        _expect(isinstance(entry["monomial"], list), "'monomial' must be a list of triples")
        for triple in entry["monomial"]:
            _expect(
                isinstance(triple, list) and len(triple) == 3,
                f"monomial entries are [puncture, slot, exponent], got {triple!r}",
            )
            q, j, e = (_expect_int(x, "monomial entry") for x in triple)
            _expect((q, j) not in exps, f"duplicate variable ({q},{j}) in monomial")
            exps[(q, j)] = e
        out = out + FreePolynomial.from_exponents(exps, coeff)
    return out


# -- formal layer -------------------------------------------------------------

def chern_monomial_to_obj(m: ChernMonomial) -> dict:
    factors = []
    for gen, exp in m.factors:
        _expect(
            isinstance(gen, PairClass),
            f"only pair generators serialize; got {gen!r}",
        )
        factors.append([gen.q, gen.i, gen.j, exp])
    return {"sign": m.sign, "factors": factors}


def chern_monomial_from_obj(obj) -> ChernMonomial:
    _expect(
        isinstance(obj, dict) and set(obj) == {"sign", "factors"},
        "monomial object needs 'sign' and 'factors'",
    )
    sign = obj["sign"]
    _expect(sign in (1, -1), f"sign must be 1 or -1, got {sign!r}")
    _expect(isinstance(obj["factors"], list), "'factors' must be a list")
    raw = []
    for quad in obj["factors"]:
        _expect(
            isinstance(quad, list) and len(quad) == 4,
            f"factors are [puncture, i, j, exponent], got {quad!r}",
        )
        q, i, j, e = (_expect_int(x, "factor entry") for x in quad)
        _expect(e > 0, f"serialized factor exponents must be positive, got {e}")
        raw.append((q, i, j, e))
    mono = canonicalize_monomial(raw)
    _expect(
        mono.sign == 1 and len(mono.factors) == len(raw),
        "factors must be canonical pairs with no duplicates",
    )
    return ChernMonomial(sign, mono.factors)


def chern_poly_to_obj(p: ChernPolynomial) -> dict:
    return {
        "terms": [
            {"coeff": frac_str(c), "monomial": chern_monomial_to_obj(m)}
            for c, m in p.terms
        ]
    }


def chern_poly_from_obj(obj) -> ChernPolynomial:
    _expect(isinstance(obj, dict) and set(obj) == {"terms"}, "polynomial object needs a 'terms' list")
    _expect(isinstance(obj["terms"], list), "'terms' must be a list")
    terms = []
    for entry in obj["terms"]:
        _expect(
            isinstance(entry, dict) and set(entry) == {"coeff", "monomial"},
            f"term needs 'coeff' and 'monomial', got {entry!r}",
        )
        terms.append((parse_frac(entry["coeff"]), chern_monomial_from_obj(entry["monomial"])))
    return ChernPolynomial(tuple(terms))


# -- rewrite certificates ------------------------------------------------------

def rewrite_cert_to_obj(cert: RewriteCertificate) -> dict:
    return {
        "q": cert.q,
        "abc": list(cert.abc),
        "d": cert.d,
        "phis": [chern_poly_to_obj(phi) for phi in cert.phis],
    }


def rewrite_cert_from_obj(obj) -> RewriteCertificate:
    _expect(
        isinstance(obj, dict) and set(obj) == {"q", "abc", "d", "phis"},
        "rewrite certificate needs keys q, abc, d, phis",
    )
    q = _expect_int(obj["q"], "q")
    _expect(
        isinstance(obj["abc"], list) and len(obj["abc"]) == 3,
        "'abc' must be a list of three exponents",
    )
    abc = tuple(_expect_int(x, "abc entry") for x in obj["abc"])
    d = _expect_int(obj["d"], "d")
    _expect(isinstance(obj["phis"], list) and len(obj["phis"]) == 3, "'phis' must hold three polynomials")
    phis = tuple(chern_poly_from_obj(item) for item in obj["phis"])
    return RewriteCertificate(q, abc, d, phis)


# -- decomposition certificates ------------------------------------------------

def vanishing_to_obj(zeta: VanishingMonomial, with_context: bool = True) -> dict:
    obj = {"r": list(zeta.r), "roots": list(zeta.roots)}
    if with_context:
        obj["g"] = zeta.g
        obj["n"] = zeta.n
    return obj


def vanishing_from_obj(obj, g: int = None, n: int = None) -> VanishingMonomial:
    _expect(isinstance(obj, dict), "vanishing monomial must be an object")
    keys = set(obj)
    _expect(
        keys in ({"r", "roots"}, {"r", "roots", "g", "n"}),
        "vanishing monomial needs keys r, roots (optionally g, n)",
    )
    if "g" in keys:
        g, n = _expect_int(obj["g"], "g"), _expect_int(obj["n"], "n")
    _expect(g is not None and n is not None, "vanishing monomial lacks (g, n) context")
    _expect(isinstance(obj["r"], list) and isinstance(obj["roots"], list), "'r' and 'roots' must be lists")
    r = tuple(_expect_int(x, "pivot power") for x in obj["r"])
    roots = tuple(_expect_int(x, "root") for x in obj["roots"])
    return VanishingMonomial(g, n, r, roots)


def decomposition_cert_to_obj(cert: DecompositionCertificate) -> dict:
    return {
        "g": cert.g,
        "n": cert.n,
        "exponents": [list(entry) for entry in cert.exponents],
        "terms": [
            {
                "coeff": chern_poly_to_obj(coeff),
                "zeta": vanishing_to_obj(zeta, with_context=False),
            }
            for coeff, zeta in cert.terms
        ],
    }


def decomposition_cert_from_obj(obj) -> DecompositionCertificate:
    _expect(
        isinstance(obj, dict) and set(obj) == {"g", "n", "exponents", "terms"},
        "decomposition certificate needs keys g, n, exponents, terms",
    )
    g = _expect_int(obj["g"], "g")
    n = _expect_int(obj["n"], "n")
    _expect(isinstance(obj["exponents"], list), "'exponents' must be a list")
    exponents = []
    for quad in obj["exponents"]:
        _expect(
            isinstance(quad, list) and len(quad) == 4,
            f"exponent entries are [puncture, i, j, degree], got {quad!r}",
        )
        exponents.append(tuple(_expect_int(x, "exponent entry") for x in quad))
    _expect(isinstance(obj["terms"], list), "'terms' must be a list")
    terms = []
    for entry in obj["terms"]:
        _expect(
            isinstance(entry, dict) and set(entry) == {"coeff", "zeta"},
            "certificate terms need 'coeff' and 'zeta'",
        )
        coeff = chern_poly_from_obj(entry["coeff"])
        zeta = vanishing_from_obj(entry["zeta"], g=g, n=n)
        terms.append((coeff, zeta))
    return DecompositionCertificate(g, n, tuple(exponents), tuple(terms))


def exponent_map_to_obj(n: int, exponents) -> dict:
    from .decomposer import normalize_exponents

    return {"exponents": [list(entry) for entry in normalize_exponents(n, exponents)]}


def exponent_map_from_obj(obj) -> dict:
    _expect(
        isinstance(obj, dict) and set(obj) == {"exponents"},
        "exponent file needs a single 'exponents' list",
    )
    out = {}
    for quad in obj["exponents"]:
        _expect(
            isinstance(quad, list) and len(quad) == 4,
            f"exponent entries are [puncture, i, j, degree], got {quad!r}",
        )
        q, i, j, d = (_expect_int(x, "exponent entry") for x in quad)
        key = (q, i, j)
        _expect(key not in out, f"duplicate exponent entry for c^{q}_{i}{j}")
        out[key] = d
    return out


# -- torus data ----------------------------------------------------------------

def torus_tuple_to_obj(tup: TorusTuple) -> dict:
    return {
        "n": tup.n,
        "elements": [[frac_str(theta) for theta in el.rotations] for el in tup.elements],
    }


def torus_tuple_from_obj(obj) -> TorusTuple:
    _expect(
        isinstance(obj, dict) and set(obj) == {"n", "elements"},
        "torus tuple needs keys n and elements",
    )
    n = _expect_int(obj["n"], "n")
    _expect(isinstance(obj["elements"], list), "'elements' must be a list")
    _expect(len(obj["elements"]) == n, f"expected {n} elements, got {len(obj['elements'])}")
    rows = []
    for row in obj["elements"]:
        _expect(
            isinstance(row, list) and len(row) == 3,
            f"each element is a list of three rotations, got {row!r}",
        )
        rows.append([parse_frac(x) for x in row])
    return TorusTuple.of(rows)


# -- sections and emptiness ------------------------------------------------------

def _section_to_obj(s) -> dict:
    if isinstance(s, MatrixEntrySection):
        return {
            "kind": "matrix_entry",
            "bundle": s.bundle,
            "pair": [s.row, s.col],
            "token": repr(s.token),
        }
    return {
        "kind": "eigvec_coord",
        "bundle": s.bundle,
        "slot": s.slot,
        "coord": s.coord,
        "token": repr(s.token),
    }


def _parse_token(text) -> Token:
    _expect(
        isinstance(text, str) and len(text) >= 2 and text[0] in "abc" and text[1:].isdigit(),
        f"tokens look like a1/b2/c3, got {text!r}",
    )
    return Token(text[0], int(text[1:]))


def _section_from_obj(obj):
    _expect(isinstance(obj, dict) and "kind" in obj, f"section needs a 'kind', got {obj!r}")
    kind = obj["kind"]
    if kind == "matrix_entry":
        _expect(
            set(obj) == {"kind", "bundle", "pair", "token"},
            "matrix-entry sections need bundle, pair, token",
        )
        _expect(
            isinstance(obj["pair"], list) and len(obj["pair"]) == 2,
            "'pair' must be [row, col]",
        )
        return MatrixEntrySection(
            _expect_int(obj["bundle"], "bundle"),
            _expect_int(obj["pair"][0], "row"),
            _expect_int(obj["pair"][1], "col"),
            _parse_token(obj["token"]),
        )
    if kind == "eigvec_coord":
        _expect(
            set(obj) == {"kind", "bundle", "slot", "coord", "token"},
            "eigenvector sections need bundle, slot, coord, token",
        )
        return EigvecCoordSection(
            _expect_int(obj["bundle"], "bundle"),
            _expect_int(obj["slot"], "slot"),
            _expect_int(obj["coord"], "coord"),
            _parse_token(obj["token"]),
        )
    raise ValueError(f"unknown section kind {kind!r}")


def collection_to_obj(coll: SectionCollection) -> dict:
    return {
        "g": coll.g,
        "n": coll.n,
        "base": coll.base,
        "sections": [_section_to_obj(s) for s in coll.sections],
    }


def collection_from_obj(obj) -> SectionCollection:
    _expect(
        isinstance(obj, dict) and set(obj) == {"g", "n", "base", "sections"},
        "collection needs keys g, n, base, sections",
    )
    _expect(isinstance(obj["sections"], list), "'sections' must be a list")
    return SectionCollection(
        _expect_int(obj["g"], "g"),
        _expect_int(obj["n"], "n"),
        _expect_int(obj["base"], "base"),
        tuple(_section_from_obj(s) for s in obj["sections"]),
    )


def emptiness_cert_to_obj(cert: EmptinessCertificate) -> dict:
    worst = cert.worst
    return {
        "collection": collection_to_obj(cert.collection),
        "torus": torus_tuple_to_obj(cert.torus),
        "l": cert.base,
        "perm": list(cert.perm),
        "x": list(cert.x_punctures),
        "y": list(cert.y_punctures),
        "f": [list(pair) for pair in cert.forced_slots],
        "selections": [
            {"selection": list(rec.selection), "sum": frac_str(rec.total)}
            for rec in cert.selections
        ],
        "worst": {"selection": list(worst.selection), "sum": frac_str(worst.total)},
    }


def emptiness_cert_from_obj(obj) -> EmptinessCertificate:
    _expect(
        isinstance(obj, dict)
        and set(obj) == {"collection", "torus", "l", "perm", "x", "y", "f", "selections", "worst"},
        "emptiness certificate needs collection, torus, l, perm, x, y, f, selections, worst",
    )
    collection = collection_from_obj(obj["collection"])
    torus = torus_tuple_from_obj(obj["torus"])
    perm = tuple(_expect_int(x, "perm entry") for x in obj["perm"])
    _expect(len(perm) == 3, "'perm' must have three entries")
    records = []
    for entry in obj["selections"]:
        _expect(
            isinstance(entry, dict) and set(entry) == {"selection", "sum"},
            "selection records need 'selection' and 'sum'",
        )
        sel = tuple(_expect_int(x, "selection entry") for x in entry["selection"])
        records.append(SelectionRecord(sel, parse_frac(entry["sum"])))
    forced = []
    for pair in obj["f"]:
        _expect(isinstance(pair, list) and len(pair) == 2, "'f' entries are [puncture, slot]")
        forced.append((_expect_int(pair[0], "f puncture"), _expect_int(pair[1], "f slot")))
    cert = EmptinessCertificate(
        collection=collection,
        torus=torus,
        base=_expect_int(obj["l"], "l"),
        perm=perm,
        x_punctures=tuple(_expect_int(x, "x entry") for x in obj["x"]),
        y_punctures=tuple(_expect_int(x, "y entry") for x in obj["y"]),
        forced_slots=tuple(forced),
        selections=tuple(records),
    )
    worst = cert.worst
    _expect(
        list(worst.selection) == obj["worst"]["selection"]
        and frac_str(worst.total) == obj["worst"]["sum"],
        "stored worst-case selection disagrees with the selection table",
    )
    return cert
