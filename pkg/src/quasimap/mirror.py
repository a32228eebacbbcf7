"""Mirror maps, their inversion, and Gromov-Witten generating functions.

The mirror map components t^j are themselves correlator generating
functions; composing a generating function with the inverse map turns
virtual structure constants into Gromov-Witten invariants.  The
generalized mirror transformation identities relating the two sides
degree by degree are evaluated here as exact cross-checks.
"""

from .correlators import (
    Model,
    OpenTruncationPolicy,
    deformation_space,
    factorial,
    gf_closed,
    gf_open,
    vsc_closed,
    vsc_open,
)
from .rational import R0, R1, Rat, rat_binomial
from .series import FormalMap, GradedSeries, HalfInt, deg2_of

# A Gromov-Witten generating function is the same kind of object as a
# correlator generating function, written in the flat coordinates.
GwSeries = GradedSeries


def _component_indices(jmax):
    return [0] + list(range(2, jmax + 1))


def mirror_map_closed(model, dmax, jmax=None):
    """t^j = (1/pairing) * gf_closed(model, top-j, 0) as a FormalMap."""
    if jmax is None:
        jmax = model.top_class
    space = deformation_space(jmax)
    dmax2 = 2 * dmax
    norm = R1 / model.pairing_factor
    corr = {}
    for j in _component_indices(jmax):
        a = model.top_class - j
        s = gf_closed(model, a, 0, dmax, jmax).scale(norm)
        s = s.sub(GradedSeries.monomial(space, dmax2, 1, 0, {"x%d" % j: 1}))
        corr["x%d" % j] = s
    grading = gf_closed(model, model.top_class - 1, 0, dmax, jmax).scale(norm)
    return FormalMap(space, dmax2, corr, grading)


def mirror_map_open_cp2(dmax2, jmax):
    """Extended CP^2 mirror map t^j = w(O_{h^{2-j}} O_1 | x)_0 over
    j = 0..jmax, with formally negative front exponents for j >= 3;
    truncated at half-integral grade dmax2/2 for disk compositions."""
    space = deformation_space(jmax)
    cp2 = Model.cp(3)
    dmax = (dmax2 + 1) // 2
    corr = {}
    for j in _component_indices(jmax):
        s = gf_closed(cp2, 2 - j, 0, dmax, jmax).truncate(dmax2)
        s = s.sub(GradedSeries.monomial(space, dmax2, 1, 0, {"x%d" % j: 1}))
        corr["x%d" % j] = s
    grading = gf_closed(cp2, 1, 0, dmax, jmax).truncate(dmax2)
    return FormalMap(space, dmax2, corr, grading)


def gw_closed_gf(model, a, b, dmax, jmax=None):
    """Sphere Gromov-Witten generating function <O_{h^a} O_{h^b}(t)>."""
    if jmax is None:
        jmax = model.top_class
    inverse = mirror_map_closed(model, dmax, jmax).invert()
    return inverse.compose(gf_closed(model, a, b, dmax, jmax))


def gw_open_gf(model, a, policy):
    """Disk Gromov-Witten generating function <O_{h^a}(t)>_disk."""
    dmax2 = 2 * policy.target_d - 1
    if model.kind == "cp":
        fmap = mirror_map_open_cp2(dmax2, policy.jmax)
    else:
        fmap = mirror_map_closed(model, policy.target_d, policy.jmax)
        fmap = FormalMap(
            fmap.space,
            dmax2,
            {n: s.truncate(dmax2) for n, s in fmap.corr.items()},
            fmap.grading_corr.truncate(dmax2),
        )
    return fmap.invert().compose(gf_open(model, a, policy))


def extract_gw(series, degree, insertions=None):
    """Invariant <... prod_j O_{h^j}^{m_j}> at the given q-degree: the
    series coefficient times prod m_j!.  degree may be an int, HalfInt
    or Rat; requesting beyond the truncation raises ValueError."""
    deg2 = deg2_of(degree)
    if deg2 > series.dmax2:
        raise ValueError("degree %s beyond series truncation" % degree)
    ins = dict(insertions or {})
    expos = {"x%d" % j: m for j, m in ins.items() if m}
    value = series.coefficient(deg2, expos)
    for m in ins.values():
        value *= factorial(m)
    return value


def disk_degree(d):
    """Grading exponent of a degree-(2d-1) disk: d - 1/2."""
    return HalfInt(2 * d - 1, 2)


def disk_invariant_cp2(d):
    """<(O_{h^2})^{3d-2}>_{disk,2d-1} for CP^2 via the open mirror map."""
    policy = OpenTruncationPolicy(d, jmax=max(d, 2))
    series = gw_open_gf(Model.cp(3), 2, policy)
    return extract_gw(series, disk_degree(d), {2: 3 * d - 3})


def cp2_nd_from_gw(dmax):
    """Degree-d instanton numbers N_d of CP^2 read off <O_h O_h(t)>."""
    series = gw_closed_gf(Model.cp(3), 1, 1, dmax, 2)
    out = []
    for d in range(1, dmax + 1):
        value = extract_gw(series, d, {2: 3 * d - 1})
        out.append(value / Rat(d * d))
    return out


def _binom(n, k):
    if k < 0 or k > n:
        return R0
    return rat_binomial(n, k)


def kontsevich_nd(dmax):
    """Instanton numbers of CP^2 from the degree recursion implied by
    associativity; an oracle independent of the residue pipeline."""
    nd = {1: R1}
    for d in range(2, dmax + 1):
        total = R0
        for d1 in range(1, d):
            d2 = d - d1
            total += (
                nd[d1]
                * nd[d2]
                * Rat(d1) ** 2
                * d2
                * (Rat(d2) * _binom(3 * d - 4, 3 * d1 - 2) - Rat(d1) * _binom(3 * d - 4, 3 * d1 - 1))
            )
        nd[d] = total
    return [nd[d] for d in range(1, dmax + 1)]


def partitions_with_symmetry(f):
    """All partitions of f (as sorted tuples) with symmetry factor
    prod_i 1/mult(i)!."""
    def gen(remaining, minimum):
        if remaining == 0:
            yield ()
            return
        for first in range(minimum, remaining + 1):
            for rest in gen(remaining - first, first):
                yield (first,) + rest

    out = []
    for parts in gen(f, 1):
        sym = R1
        for v in set(parts):
            sym /= factorial(parts.count(v))
        out.append((parts, sym))
    return out


def _gmt_corrections(model, f_parts):
    """prod_j w(O_{h^{N-3-(k-N)f_j}} O_1)_{0,f_j} / k for a partition."""
    N, k = model.N, model.k
    value = R1
    for fj in f_parts:
        a = N - 3 - (k - N) * fj
        value *= vsc_closed(model, fj, a, 0, {}) / Rat(k)
    return value


def gmt_check_closed(model, d, a, b, jmax=None):
    """Both sides of the sphere generalized-mirror-transformation identity
    for w(O_{h^a} O_{h^b})_{0,d}; returns (lhs, rhs)."""
    if jmax is None:
        jmax = model.top_class
    lhs = vsc_closed(model, d, a, b, {})
    series = gw_closed_gf(model, a, b, d, jmax)
    rhs = extract_gw(series, d, {})
    # the f = d boundary of the sum picks up the degree-0 invariants,
    # i.e. the classical piece of the generating function
    for f in range(1, d + 1):
        for parts, sym in partitions_with_symmetry(f):
            ins = {}
            for fj in parts:
                c = 1 + (model.k - model.N) * fj
                ins[c] = ins.get(c, 0) + 1
            gw = extract_gw(series, d - f, ins)
            rhs += sym * gw * _gmt_corrections(model, parts)
    return lhs, rhs


def gmt_check_open(model, d, a, jmax=None):
    """Both sides of the disk generalized-mirror-transformation identity
    for w(O_{h^a})_{disk,2d-1}; returns (lhs, rhs)."""
    if jmax is None:
        jmax = max(2, d)
    lhs = vsc_open(model, d, a, {})
    policy = OpenTruncationPolicy(d, jmax=jmax)
    series = gw_open_gf(model, a, policy)
    rhs = extract_gw(series, disk_degree(d), {})
    for f in range(1, d):
        for parts, sym in partitions_with_symmetry(f):
            ins = {}
            for fj in parts:
                c = 1 + (model.k - model.N) * fj
                ins[c] = ins.get(c, 0) + 1
            gw = extract_gw(series, disk_degree(d - f), ins)
            rhs += sym * gw * _gmt_corrections(model, parts)
    return lhs, rhs
