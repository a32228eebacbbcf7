"""Exact rational scalars.

Uses gmpy2.mpq when available (much faster for the large numerators and
denominators that show up in high-degree residues), falling back to
fractions.Fraction otherwise.  Both types share the "p/q" text form used
for serialization.
"""

try:
    from gmpy2 import mpq as _ratclass

    HAVE_GMPY2 = True
except ImportError:  # pragma: no cover - exercised only without gmpy2
    from fractions import Fraction as _ratclass

    HAVE_GMPY2 = False

Rat = _ratclass

R0 = Rat(0)
R1 = Rat(1)


def rat(p, q=1):
    """Build an exact rational from integers or a 'p/q' string."""
    if isinstance(p, str):
        return parse_rat(p)
    return Rat(p) * R1 / Rat(q) if q != 1 else Rat(p)


def parse_rat(text):
    text = text.strip()
    if "/" in text:
        num, den = text.split("/")
        return Rat(int(num)) / Rat(int(den))
    return Rat(int(text))


def rat_str(r):
    """Canonical 'p/q' (or 'p' for integers) text form."""
    return str(r)


def rat_binomial(top, k):
    """Generalized binomial coefficient with a rational or integer top."""
    out = R1
    for i in range(k):
        out = out * (Rat(top) - i) / (i + 1)
    return out
