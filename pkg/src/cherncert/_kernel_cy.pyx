# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled backend for the sparse term kernel.

Same contract as _kernel_py. Coefficients stay Python objects so exact
rationals keep arbitrary precision; the win is C-level control flow in the
monomial merge and the multiplication loops.
"""

BACKEND = "cython"


cpdef tuple monomial_mul(tuple m1, tuple m2):
    cdef Py_ssize_t n1 = len(m1)
    cdef Py_ssize_t n2 = len(m2)
    if n1 == 0:
        return m2
    if n2 == 0:
        return m1
    cdef Py_ssize_t i = 0
    cdef Py_ssize_t j = 0
    cdef long v1, v2
    cdef list out = []
    while i < n1 and j < n2:
        v1 = m1[i]
        v2 = m2[j]
        if v1 == v2:
            out.append(m1[i])
            out.append(m1[i + 1] + m2[j + 1])
            i += 2
            j += 2
        elif v1 < v2:
            out.append(m1[i])
            out.append(m1[i + 1])
            i += 2
        else:
            out.append(m2[j])
            out.append(m2[j + 1])
            j += 2
    while i < n1:
        out.append(m1[i])
        i += 1
    while j < n2:
        out.append(m2[j])
        j += 1
    return tuple(out)


cpdef dict add_terms(dict t1, dict t2):
    cdef dict out = dict(t1)
    cdef object m, c, acc
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


cpdef dict scale_terms(dict t, object c):
    cdef dict out = {}
    cdef object m, coef
    if not c:
        return out
    for m, coef in t.items():
        out[m] = coef * c
    return out


cpdef dict mul_terms(dict t1, dict t2):
    if len(t1) > len(t2):
        t1, t2 = t2, t1
    cdef dict out = {}
    cdef object m1, c1, m2, c2, m, acc
    for m1, c1 in t1.items():
        for m2, c2 in t2.items():
            m = monomial_mul(<tuple> m1, <tuple> m2)
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
