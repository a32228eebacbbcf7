"""Pure-Python term-dict kernels for sparse multivariate polynomials.

Terms are dicts mapping exponent tuples to nonzero rational coefficients.
The compiled module _fastpoly provides the same functions; the active
implementation is chosen in backend.py.
"""

BACKEND_NAME = "python"


def add_terms(a, b):
    """Sum of two term dicts; zero coefficients are dropped."""
    if len(a) < len(b):
        a, b = b, a
    out = dict(a)
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


def scale_terms(a, c):
    """Multiply every coefficient by the scalar c."""
    if not c:
        return {}
    return {e: c * v for e, v in a.items()}


def mul_terms(a, b):
    """Product of two term dicts."""
    if not a or not b:
        return {}
    if len(a) < len(b):
        a, b = b, a
    out = {}
    for eb, cb in b.items():
        for ea, ca in a.items():
            e = tuple(x + y for x, y in zip(ea, eb))
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
