"""Pure-Python backend for the sparse term kernel.

Term dicts map a packed monomial to a nonzero coefficient. A packed
monomial is a flat tuple (v0, e0, v1, e1, ...) with strictly increasing
variable ids and positive exponents; () is the unit monomial. Coefficients
are arbitrary exact scalars (Fraction in practice) supporting +, * and
truth testing. Callers own canonicality of their inputs; outputs never
contain zero coefficients.

The compiled backend in _kernel_cy.pyx implements the same four functions
with the same semantics.
"""

BACKEND = "python"


def monomial_mul(m1, m2):
    """Merge two packed monomials, adding exponents of shared variables."""
    if not m1:
        return m2
    if not m2:
        return m1
    n1 = len(m1)
    n2 = len(m2)
    i = 0
    j = 0
    out = []
    while i < n1 and j < n2:
        v1 = m1[i]
        v2 = m2[j]
        if v1 == v2:
            out.append(v1)
            out.append(m1[i + 1] + m2[j + 1])
            i += 2
            j += 2
        elif v1 < v2:
            out.append(v1)
            out.append(m1[i + 1])
            i += 2
        else:
            out.append(v2)
            out.append(m2[j + 1])
            j += 2
    if i < n1:
        out.extend(m1[i:])
    if j < n2:
        out.extend(m2[j:])
    return tuple(out)


def add_terms(t1, t2):
    out = dict(t1)
    for m, c in t2.items():
        acc = out.get(m)
        if acc is None:
            out[m] = c
        else:
            acc = acc + c
            if acc:
                out[m] = acc
            else:
                del out[m]
    return out


def scale_terms(t, c):
    if not c:
        return {}
    return {m: coef * c for m, coef in t.items()}


def mul_terms(t1, t2):
    # iterate the smaller operand on the outside
    if len(t1) > len(t2):
        t1, t2 = t2, t1
    out = {}
    for m1, c1 in t1.items():
        for m2, c2 in t2.items():
            m = monomial_mul(m1, m2)
            acc = out.get(m)
            if acc is None:
                out[m] = c1 * c2
            else:
                acc = acc + c1 * c2
                if acc:
                    out[m] = acc
                else:
                    del out[m]
    return out
