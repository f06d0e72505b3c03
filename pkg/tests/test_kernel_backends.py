import random
from fractions import Fraction

import pytest

from cherncert import _kernel_py

try:
    from cherncert import _kernel_cy
except ImportError:
    _kernel_cy = None

needs_compiled = pytest.mark.skipif(_kernel_cy is None, reason="compiled kernel not built")


def random_monomial(rng, nvars=6, max_exp=5):
    ids = sorted(rng.sample(range(nvars), rng.randint(0, 3)))
    return tuple(x for v in ids for x in (v, rng.randint(1, max_exp)))


def random_terms(rng, size):
    out = {}
    while len(out) < size:
        num = rng.randint(-40, 40)
        if num == 0:
            continue
        out[random_monomial(rng)] = Fraction(num, rng.randint(1, 9))
    return out


class TestPureKernel:
    def test_monomial_mul_merges_sorted(self):
        assert _kernel_py.monomial_mul((0, 1, 2, 3), (0, 2, 1, 1)) == (0, 3, 1, 1, 2, 3)
        assert _kernel_py.monomial_mul((), (4, 2)) == (4, 2)

    def test_add_cancels_to_empty(self):
        t = {(0, 1): Fraction(2)}
        assert _kernel_py.add_terms(t, {(0, 1): Fraction(-2)}) == {}

    def test_scale_by_zero(self):
        assert _kernel_py.scale_terms({(0, 1): Fraction(1)}, Fraction(0)) == {}

    def test_mul_cross_terms(self):
        x = {(0, 1): Fraction(1)}
        y = {(1, 1): Fraction(1)}
        assert _kernel_py.mul_terms(x, y) == {(0, 1, 1, 1): Fraction(1)}


@needs_compiled
class TestBackendAgreement:
    def test_randomized_equivalence(self):
        rng = random.Random(99)
        for _ in range(200):
            t1 = random_terms(rng, rng.randint(0, 12))
            t2 = random_terms(rng, rng.randint(0, 12))
            c = Fraction(rng.randint(-5, 5), rng.randint(1, 7))
            assert _kernel_py.add_terms(t1, t2) == _kernel_cy.add_terms(t1, t2)
            assert _kernel_py.mul_terms(t1, t2) == _kernel_cy.mul_terms(t1, t2)
            assert _kernel_py.scale_terms(t1, c) == _kernel_cy.scale_terms(t1, c)

    def test_monomial_merge_equivalence(self):
        rng = random.Random(7)
        for _ in range(300):
            m1 = random_monomial(rng)
            m2 = random_monomial(rng)
            assert _kernel_py.monomial_mul(m1, m2) == _kernel_cy.monomial_mul(m1, m2)

    def test_compiled_backend_is_active_by_default(self):
        import os

        if os.environ.get("CHERNCERT_BACKEND") in (None, "cython"):
            from cherncert.kernel import BACKEND

            assert BACKEND == "cython"
