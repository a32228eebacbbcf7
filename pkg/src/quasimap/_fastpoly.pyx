# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled term-dict kernels for sparse multivariate polynomials.

Same contract as _slowpoly; coefficients are opaque exact rationals
(gmpy2.mpq or Fraction), exponent keys are tuples of ints.
"""

BACKEND_NAME = "cython"


def add_terms(dict a, dict b):
    if len(a) < len(b):
        a, b = b, a
    cdef dict out = dict(a)
    for e, c in b.items():
        s = out.get(e)
        if s is None:
            out[e] = c
        else:
            s = s + c
            if s:
                out[e] = s
            else:
                del out[e]
    return out


def scale_terms(dict a, c):
    if not c:
        return {}
    cdef dict out = {}
    for e, v in a.items():
        out[e] = c * v
    return out


def mul_terms(dict a, dict b):
    if not a or not b:
        return {}
    if len(a) < len(b):
        a, b = b, a
    cdef dict out = {}
    cdef Py_ssize_t n, i
    cdef tuple ea, eb, e
    for eb, cb in b.items():
        n = len(eb)
        for ea, ca in a.items():
            e = tuple([<object>ea[i] + <object>eb[i] for i in range(n)])
            c = ca * cb
            s = out.get(e)
            if s is None:
                out[e] = c
            else:
                s = s + c
                if s:
                    out[e] = s
                else:
                    del out[e]
    return out
