import json
from fractions import Fraction

import pytest

from cherncert import jsonio
from cherncert.chernring import ChernPolynomial
from cherncert.decomposer import VanishingMonomial, decompose
from cherncert.geometry import (
    build_basic_collection,
    derive_prop_collection,
    match_nozeros,
    standard_generic_tuple,
)
from cherncert.polyring import FreePolynomial
from cherncert.rewriter import rewrite


def round_trip(obj, writer, reader):
    text = jsonio.dumps(writer(obj))
    value = reader(json.loads(text))
    again = jsonio.dumps(writer(value))
    assert again == text
    return value


class TestFractions:
    def test_always_carries_denominator(self):
        assert jsonio.frac_str(Fraction(3)) == "3/1"
        assert jsonio.frac_str(Fraction(-2, 4)) == "-1/2"

    def test_parse_validates(self):
        assert jsonio.parse_frac("7/3") == Fraction(7, 3)
        with pytest.raises(ValueError):
            jsonio.parse_frac("1/0")
        with pytest.raises(ValueError):
            jsonio.parse_frac("pi")
        with pytest.raises(ValueError):
            jsonio.parse_frac(3)


class TestFreePolynomial:
    def test_round_trip(self):
        p = (
            FreePolynomial.from_exponents({(1, 1): 2}, Fraction(2, 3))
            - FreePolynomial.from_exponents({(1, 1): 1, (2, 2): 1})
            + FreePolynomial.one()
        )
        value = round_trip(p, jsonio.free_poly_to_obj, jsonio.free_poly_from_obj)
        assert value == p

    def test_zero(self):
        assert jsonio.dumps(jsonio.free_poly_to_obj(FreePolynomial.zero())) == '{"terms":[]}\n'

    def test_terms_emitted_in_canonical_order(self):
        p = FreePolynomial.from_exponents({(2, 1): 1}) + FreePolynomial.from_exponents({(1, 2): 1})
        obj = jsonio.free_poly_to_obj(p)
        assert obj["terms"][0]["monomial"] == [[1, 2, 1]]
        assert obj["terms"][1]["monomial"] == [[2, 1, 1]]

    def test_duplicate_variable_rejected(self):
        with pytest.raises(ValueError):
            jsonio.free_poly_from_obj(
                {"terms": [{"coeff": "1/1", "monomial": [[1, 1, 1], [1, 1, 2]]}]}
            )


class TestRewriteCertificate:
    def test_round_trip(self):
        cert = rewrite(1, 3, 2, 1, 2)
        value = round_trip(cert, jsonio.rewrite_cert_to_obj, jsonio.rewrite_cert_from_obj)
        assert value == cert

    def test_zero_cofactor_round_trips(self):
        cert = rewrite(1, 2, 0, 0, 1)
        assert cert.phis[2] == ChernPolynomial.zero()
        value = round_trip(cert, jsonio.rewrite_cert_to_obj, jsonio.rewrite_cert_from_obj)
        assert value.phis[2] == ChernPolynomial.zero()

    def test_non_canonical_factors_rejected(self):
        obj = jsonio.rewrite_cert_to_obj(rewrite(1, 2, 0, 0, 1))
        obj["phis"][0]["terms"][0]["monomial"]["factors"] = [[1, 2, 1, 1]]
        with pytest.raises(ValueError):
            jsonio.rewrite_cert_from_obj(obj)


class TestDecompositionCertificate:
    def test_round_trip(self):
        cert = decompose(2, 2, {(1, 1, 2): 8, (2, 2, 3): 8})
        value = round_trip(
            cert, jsonio.decomposition_cert_to_obj, jsonio.decomposition_cert_from_obj
        )
        assert value == cert

    def test_exponent_file_round_trip(self):
        exponents = {(1, 1, 2): 8, (2, 2, 3): 8}
        obj = jsonio.exponent_map_to_obj(2, exponents)
        assert jsonio.exponent_map_from_obj(json.loads(jsonio.dumps(obj))) == exponents

    def test_duplicate_exponent_entry_rejected(self):
        with pytest.raises(ValueError):
            jsonio.exponent_map_from_obj(
                {"exponents": [[1, 1, 2, 3], [1, 1, 2, 4]]}
            )


class TestVanishingMonomial:
    def test_round_trip_with_context(self):
        zeta = VanishingMonomial(2, 2, (2, 3), (1, 2))
        value = round_trip(zeta, jsonio.vanishing_to_obj, jsonio.vanishing_from_obj)
        assert value == zeta

    def test_context_free_form_needs_explicit_gn(self):
        obj = {"r": [2, 3], "roots": [1, 2]}
        with pytest.raises(ValueError):
            jsonio.vanishing_from_obj(obj)
        assert jsonio.vanishing_from_obj(obj, g=2, n=2) == VanishingMonomial(2, 2, (2, 3), (1, 2))


class TestTorusTuple:
    def test_round_trip(self):
        tup = standard_generic_tuple(2)
        value = round_trip(tup, jsonio.torus_tuple_to_obj, jsonio.torus_tuple_from_obj)
        assert value == tup

    def test_element_count_must_match(self):
        with pytest.raises(ValueError):
            jsonio.torus_tuple_from_obj(
                {"n": 2, "elements": [["1/7", "2/7", "4/7"]]}
            )


class TestCollectionsAndEmptiness:
    def test_collection_round_trip(self):
        coll = build_basic_collection(2, 2)
        value = round_trip(coll, jsonio.collection_to_obj, jsonio.collection_from_obj)
        assert value == coll

    def test_emptiness_round_trip(self):
        zeta = VanishingMonomial(2, 2, (2, 3), (1, 2))
        _, final = derive_prop_collection(zeta, 2)
        cert = match_nozeros(final, standard_generic_tuple(2))
        value = round_trip(cert, jsonio.emptiness_cert_to_obj, jsonio.emptiness_cert_from_obj)
        assert value == cert

    def test_tampered_worst_case_rejected(self):
        cert = match_nozeros(build_basic_collection(2, 1), standard_generic_tuple(1))
        obj = json.loads(jsonio.dumps(jsonio.emptiness_cert_to_obj(cert)))
        obj["worst"]["sum"] = "1/2"
        with pytest.raises(ValueError):
            jsonio.emptiness_cert_from_obj(obj)

    def test_unknown_section_kind_rejected(self):
        obj = jsonio.collection_to_obj(build_basic_collection(2, 1))
        obj["sections"][0] = {"kind": "mystery"}
        with pytest.raises(ValueError):
            jsonio.collection_from_obj(obj)
