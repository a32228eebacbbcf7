"""Numerical contour integration over polycircles.

A floating-point oracle for the exact residue engine: the iterated
residue equals the mean of f(z) * prod_j z_j over a uniform grid on the
product of circles, up to the (exponentially small) trapezoid error.
The grid is doubled once and the difference of the two values is
reported as the error estimate.
"""

import mpmath

from .rational import Rat


def _to_mpf(r):
    r = Rat(r)
    return mpmath.mpf(int(r.numerator)) / int(r.denominator)


def _eval_rational(fr, values):
    """Evaluate a factored rational at mpmath complex values (a sequence
    indexed like the variable space)."""
    total = mpmath.mpc(0)
    for expo, c in fr.num.terms.items():
        v = _to_mpf(c)
        for x, e in zip(values, expo):
            if e:
                v = v * x**e
        total += v
    total *= _to_mpf(fr.scalar)
    for form, e in fr.den.items():
        lin = mpmath.mpc(0)
        for x, c in zip(values, form.coeffs):
            if c:
                lin += _to_mpf(c) * x
        total /= lin**e
    return total


def _grid_value(fr, names, radii, n, offset):
    space = fr.space
    total = mpmath.mpc(0)
    idx = [0] * len(names)
    two_pi_i = 2j * mpmath.pi
    while True:
        values = [mpmath.mpc(0)] * len(space)
        prod = mpmath.mpc(1)
        for name, i in zip(names, idx):
            z = _to_mpf(radii[name]) * mpmath.exp(two_pi_i * (i + offset) / n)
            values[space.index(name)] = z
            prod *= z
        total += _eval_rational(fr, values) * prod
        for pos in range(len(idx)):
            idx[pos] += 1
            if idx[pos] < n:
                break
            idx[pos] = 0
        else:
            return total / mpmath.mpf(n) ** len(names)


def contour_quadrature(fr, radii, n=16, precision=60, offset=Rat(1, 3)):
    """Approximate the iterated residue of the factored rational fr over
    the polycircle with the given radii ({name: radius}).

    The grid offset keeps sample points away from real-axis poles.
    Returns a dict with the complex value, a doubling error estimate,
    the finer point count per circle, and the working precision.
    """
    names = [name for name in fr.space.names if name in radii]
    with mpmath.workdps(precision):
        off = _to_mpf(offset)
        coarse = _grid_value(fr, names, radii, n, off)
        fine = _grid_value(fr, names, radii, 2 * n, off)
        return {
            "value": fine,
            "error": abs(fine - coarse),
            "points": 2 * n,
            "precision": precision,
        }


def quadrature_agreement(fr, radii, exact, n=16, precision=60):
    """Absolute difference between the quadrature value and an exact Rat,
    together with the quadrature report."""
    report = contour_quadrature(fr, radii, n=n, precision=precision)
    with mpmath.workdps(precision):
        target = _to_mpf(exact)
        report["difference"] = abs(report["value"] - target)
    return report
