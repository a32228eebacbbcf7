"""Disk invariants from a stable-map fixed-point sum.

An independent oracle for low boundary degree: the invariant is a sum
over fixed-point graphs of iterated residues, one variable per vertex
of the graph, taken over circles of increasing radius so that each
stage keeps the origin plus any midpoint pole of a balanced interior
vertex.  The boundary vertex carries a disk factor; interior edges
carry the hypersurface kernel and a one-sided moving factor.  CP^2 is
covered as the degree-1 hypersurface in CP^3 (N = 4, k = 1).

Supported boundary degrees: 1, 3 and 5 (one, two and four graphs).
"""

from .correlators import canonical_insertions, kernel_e, kernel_f, kernel_w, _times_power
from .polys import FactoredRational, MultiPoly, VarSpace
from .rational import R1, Rat
from .residues import iterated_residue_retry, profile_ascending


def _start(nvars, N):
    """Fresh integrand with the measure prod dz_i / z_i^N."""
    space = VarSpace(tuple("z%d" % i for i in range(nvars)))
    fr = FactoredRational.from_poly(MultiPoly.one(space))
    for i in range(nvars):
        coeffs = [Rat(0)] * nvars
        coeffs[i] = R1
        fr = fr.div_form(coeffs, N)
    return space, fr


def _div(fr, space, mapping, power=1):
    coeffs = [Rat(0)] * len(space)
    for name, c in mapping.items():
        coeffs[space.index(name)] = Rat(c)
    return fr.div_form(coeffs, power)


def _mul_form(fr, space, mapping):
    terms = {}
    for name, c in mapping.items():
        e = [0] * len(space)
        e[space.index(name)] = 1
        terms[tuple(e)] = Rat(c)
    return fr.mul_poly(MultiPoly(space, terms))


def _insertions(fr, space, ins, boundary_degree, edges):
    """Insertion factors: each class m contributes the boundary-vertex
    piece (2d_v - 1) z0^{m-1} / 2 plus an edge kernel per edge."""
    for m, mult in ins:
        vertex = _times_power(
            FactoredRational.from_poly(
                MultiPoly.one(space), Rat(boundary_degree, 2)
            ),
            space,
            "z0",
            m - 1,
        )
        s = MultiPoly.zero(space)
        for za, zb in edges:
            s = s + kernel_w(m, 1, space, za, zb)
        factor = FactoredRational.from_poly(s).add(vertex)
        for _ in range(mult):
            fr = fr.mul(factor)
    return fr


def _disk_factor(fr, space, N, k, dv):
    """Boundary disk of degree 2 dv - 1 with its 2 z0 / (2 dv - 1)
    automorphism factor."""
    fr = fr.mul(kernel_f(N, k, dv, space, "z0"))
    fr = fr.mul_scalar(Rat(2, 2 * dv - 1))
    return fr.mul_poly(MultiPoly.var(space, "z0", 1))


def _evaluate(space, fr):
    radii = dict(zip(space.names, profile_ascending(len(space))))
    return iterated_residue_retry(fr, space.names, radii)


def _graphs_degree1(N, k, ins):
    space, fr = _start(1, N)
    fr = _disk_factor(fr, space, N, k, 1)
    fr = _insertions(fr, space, ins, 1, [])
    yield space, fr


def _graphs_degree3(N, k, ins):
    # single degree-3 disk
    space, fr = _start(1, N)
    fr = _disk_factor(fr, space, N, k, 2)
    fr = _insertions(fr, space, ins, 3, [])
    yield space, fr
    # degree-1 disk with a degree-1 sphere attached
    space, fr = _start(2, N)
    fr = fr.mul(kernel_f(N, k, 1, space, "z0"))
    fr = fr.mul_poly(kernel_e(k, space, "z0", "z1"))
    fr = _mul_form(fr, space, {"z1": 1, "z0": -1})
    fr = _div(fr, space, {"z0": 1}).mul_scalar(R1 / Rat(k))
    fr = _div(fr, space, {"z0": 3, "z1": -1})
    fr = _insertions(fr, space, ins, 1, [("z0", "z1")])
    yield space, fr


def _graphs_degree5(N, k, ins):
    # single degree-5 disk
    space, fr = _start(1, N)
    fr = _disk_factor(fr, space, N, k, 3)
    fr = _insertions(fr, space, ins, 5, [])
    yield space, fr
    # degree-3 disk with a degree-1 sphere attached
    space, fr = _start(2, N)
    fr = fr.mul(kernel_f(N, k, 2, space, "z0"))
    fr = fr.mul_poly(kernel_e(k, space, "z0", "z1"))
    fr = _mul_form(fr, space, {"z1": 1, "z0": -1})
    fr = _div(fr, space, {"z0": 1}).mul_scalar(R1 / Rat(k))
    fr = _div(fr, space, {"z0": Rat(5, 3), "z1": -1})
    fr = _insertions(fr, space, ins, 3, [("z0", "z1")])
    yield space, fr
    # degree-1 disk with a chain of two degree-1 spheres
    space, fr = _start(3, N)
    fr = fr.mul(kernel_f(N, k, 1, space, "z0"))
    fr = fr.mul_poly(kernel_e(k, space, "z0", "z1"))
    fr = fr.mul_poly(kernel_e(k, space, "z1", "z2"))
    fr = _mul_form(fr, space, {"z2": 1, "z1": -1})
    fr = _div(fr, space, {"z0": 1}).mul_scalar(R1 / Rat(k))
    fr = _div(fr, space, {"z0": 3, "z1": -1})
    fr = _div(fr, space, {"z1": 1}).mul_scalar(R1 / Rat(k))
    fr = _div(fr, space, {"z1": 2, "z0": -1, "z2": -1})
    fr = _insertions(fr, space, ins, 1, [("z0", "z1"), ("z1", "z2")])
    yield space, fr
    # degree-1 disk with two degree-1 spheres at the same vertex
    space, fr = _start(3, N)
    fr = fr.mul_scalar(Rat(1, 2))
    fr = fr.mul(kernel_f(N, k, 1, space, "z0"))
    fr = fr.mul_poly(kernel_e(k, space, "z0", "z1"))
    fr = fr.mul_poly(kernel_e(k, space, "z0", "z2"))
    fr = _div(fr, space, {"z0": 1}, 2).mul_scalar(R1 / Rat(k) ** 2)
    fr = _div(fr, space, {"z0": 2})
    fr = _insertions(fr, space, ins, 1, [("z0", "z1"), ("z0", "z2")])
    yield space, fr


_GRAPHS = {1: _graphs_degree1, 3: _graphs_degree3, 5: _graphs_degree5}


def disk_localization(N, k, degree, insertions):
    """<prod_m O_{h^m}>_{disk, degree} for the degree-k hypersurface in
    CP^{N-1} (odd k), as a fixed-point sum; degree must be 1, 3 or 5.
    insertions maps the class exponent m (0 for the identity) to its
    multiplicity."""
    if degree not in _GRAPHS:
        raise ValueError("boundary degree %r not supported" % (degree,))
    ins = canonical_insertions(insertions)
    total = Rat(0)
    for space, fr in _GRAPHS[degree](N, k, ins):
        total += _evaluate(space, fr)
    return total


def disk_localization_cp2(degree, insertions):
    """CP^2 disk invariants via the hyperplane-in-CP^3 presentation."""
    return disk_localization(4, 1, degree, insertions)
