"""Standard mirror computation for CP^2 from the extended I-function.

The I-function is expanded over bidegrees (n, m) in (e^{y1}, y2) with
coefficients that are Laurent polynomials in z and polynomials in the
nilpotent hyperplane class h (h^3 = 0).  From it we build the 3x3
S-matrix, strip the explicit-y1 prefactor, Birkhoff-factorize the
remainder into negative/non-negative z-parts order by order, and read
the z-free connection matrix off the negative part.  Integrating its
entries gives an alternative mirror map and candidate Gromov-Witten
potentials to compare against the residue pipeline.
"""

from .polys import VarSpace
from .correlators import factorial
from .rational import R0, R1, Rat
from .series import FormalMap, GradedSeries

# ---------------------------------------------------------------------------
# Laurent polynomials in z (dict zpow -> Rat) and h-nilpotent vectors


def laur_add(a, b):
    out = dict(a)
    for p, c in b.items():
        s = out.get(p, R0) + c
        if s:
            out[p] = s
        elif p in out:
            del out[p]
    return out


def laur_mul(a, b):
    out = {}
    for pa, ca in a.items():
        for pb, cb in b.items():
            p = pa + pb
            s = out.get(p, R0) + ca * cb
            if s:
                out[p] = s
            elif p in out:
                del out[p]
    return out


def laur_scale(a, c):
    if not c:
        return {}
    return {p: c * v for p, v in a.items()}


def laur_shift(a, k):
    return {p + k: v for p, v in a.items()}


def nil_one():
    return [{0: R1}, {}, {}]


def nil_mul(a, b):
    out = [{}, {}, {}]
    for i in range(3):
        for j in range(3 - i):
            if a[i] and b[j]:
                out[i + j] = laur_add(out[i + j], laur_mul(a[i], b[j]))
    return out


def nil_factor(j):
    """h + j*z as an h-vector of Laurent polynomials."""
    lead = {1: Rat(j)} if j else {}
    return [lead, {0: R1}, {}]


def nil_inv_factor(j):
    """1/(h + j*z) for j != 0, expanded through h^2."""
    jr = Rat(j)
    return [{-1: 1 / jr}, {-2: -1 / jr**2}, {-3: 1 / jr**3}]


def sector_coefficient(n, m):
    """I-function coefficient at bidegree (n, m), without the
    exp(y1 h / z) prefactor."""
    out = nil_one()
    K = n - m
    if K >= 0:
        for j in range(1, K + 1):
            inv = nil_inv_factor(j)
            out = nil_mul(out, nil_mul(inv, inv))
    else:
        for j in range(K + 1, 1):
            fac = nil_factor(j)
            out = nil_mul(out, nil_mul(fac, fac))
    for j in range(1, n + 1):
        out = nil_mul(out, nil_inv_factor(j))
    scale = R1 / factorial(m)
    return [laur_shift(laur_scale(c, scale), -m) for c in out]


# ---------------------------------------------------------------------------
# Loop-group matrices: dict (n, m) -> 3x3 matrix of Laurent polynomials


def mat_zero():
    return [[{} for _ in range(3)] for _ in range(3)]


def mat_identity():
    m = mat_zero()
    for i in range(3):
        m[i][i] = {0: R1}
    return m


def mat_mul3(a, b):
    out = mat_zero()
    for i in range(3):
        for j in range(3):
            acc = {}
            for l in range(3):
                if a[i][l] and b[l][j]:
                    acc = laur_add(acc, laur_mul(a[i][l], b[l][j]))
            out[i][j] = acc
    return out


def mat_add(a, b):
    return [[laur_add(a[i][j], b[i][j]) for j in range(3)] for i in range(3)]


def mat_scale(a, c):
    return [[laur_scale(a[i][j], c) for j in range(3)] for i in range(3)]


def mat_is_zero(a):
    return all(not a[i][j] for i in range(3) for j in range(3))


def build_m_matrix(nmax, mmax):
    """M_{nm}(z): the S-matrix with the lower-triangular explicit-y1
    prefactor stripped; column c holds the h-components of
    (h + n z)^c times the (n, m) I-function coefficient."""
    out = {}
    for n in range(nmax + 1):
        for m in range(mmax + 1):
            base = sector_coefficient(n, m)
            mat = mat_zero()
            vec = base
            for c in range(3):
                for i in range(3):
                    mat[i][c] = dict(vec[i])
                if c < 2:
                    vec = nil_mul(vec, nil_factor(n))
            if not mat_is_zero(mat):
                out[(n, m)] = mat
    return out


def lm_mul(x, y, nmax, mmax):
    out = {}
    for (n1, m1), a in x.items():
        for (n2, m2), b in y.items():
            n, m = n1 + n2, m1 + m2
            if n > nmax or m > mmax:
                continue
            prod = mat_mul3(a, b)
            key = (n, m)
            out[key] = mat_add(out[key], prod) if key in out else prod
    return {k: v for k, v in out.items() if not mat_is_zero(v)}


def lm_inverse(x, nmax, mmax):
    """Inverse of a loop matrix with identity leading term, by the
    geometric series in its higher-bidegree part."""
    rest = {k: v for k, v in x.items() if k != (0, 0)}
    rest = {k: mat_scale(v, Rat(-1)) for k, v in rest.items()}
    out = {(0, 0): mat_identity()}
    power = {(0, 0): mat_identity()}
    for _ in range(nmax + mmax + 1):
        power = lm_mul(power, rest, nmax, mmax)
        if not power:
            break
        for k, v in power.items():
            out[k] = mat_add(out[k], v) if k in out else v
    return {k: v for k, v in out.items() if not mat_is_zero(v)}


def _split_mat(a):
    neg = mat_zero()
    pos = mat_zero()
    for i in range(3):
        for j in range(3):
            for p, c in a[i][j].items():
                (neg if p < 0 else pos)[i][j][p] = c
    return neg, pos


def birkhoff(m_matrix, nmax, mmax):
    """Factor M = M_- M_+ with M_- = I + (strictly negative z-powers)
    and M_+ holding the non-negative ones, order by order in bidegree."""
    minus = {(0, 0): mat_identity()}
    plus = {(0, 0): m_matrix.get((0, 0), mat_identity())}
    keys = sorted(
        (k for k in ((n, m) for n in range(nmax + 1) for m in range(mmax + 1))),
        key=lambda k: (k[0] + k[1], k),
    )
    for key in keys:
        n, m = key
        if key == (0, 0):
            continue
        residual = m_matrix.get(key, mat_zero())
        for (n1, m1), b in minus.items():
            if (n1, m1) == (0, 0) or n1 > n or m1 > m:
                continue
            c = plus.get((n - n1, m - m1))
            if c is None or (n - n1, m - m1) == (0, 0):
                continue
            residual = mat_add(residual, mat_scale(mat_mul3(b, c), Rat(-1)))
        neg, pos = _split_mat(residual)
        if not mat_is_zero(neg):
            minus[key] = neg
        if not mat_is_zero(pos):
            plus[key] = pos
    return minus, plus


def connection_matrix(minus, nmax, mmax):
    """C1 = M_-^{-1} (E M_- + z * d/dy1 M_-), with E the h-multiplication
    matrix; equals S_-^{-1} z d/dy1 S_- because E commutes with the
    explicit-y1 prefactor."""
    e_mat = mat_zero()
    e_mat[1][0] = {0: R1}
    e_mat[2][1] = {0: R1}
    rhs = {}
    for (n, m), a in minus.items():
        term = mat_mul3(e_mat, a)
        if n:
            deriv = [[laur_shift(laur_scale(a[i][j], Rat(n)), 1) for j in range(3)] for i in range(3)]
            term = mat_add(term, deriv)
        if not mat_is_zero(term):
            rhs[(n, m)] = term
    return lm_mul(lm_inverse(minus, nmax, mmax), rhs, nmax, mmax)


def c1_z_free(c1):
    """True when every connection-matrix entry is a pure z^0 scalar."""
    for mat in c1.values():
        for i in range(3):
            for j in range(3):
                if any(p != 0 for p in mat[i][j]):
                    return False
    return True


# ---------------------------------------------------------------------------
# Series extraction and the comparison pipeline


def _entry_series(c1, i, j, space, dmax2):
    """(C1)_{i+1, j+1} as a GradedSeries in the grading q~ = e^{y1}
    (degree n) and the deformation variable x2 = y2."""
    terms = {}
    for (n, m), mat in c1.items():
        coeff = mat[i][j].get(0, R0)
        if coeff and 2 * n <= dmax2:
            e = [0] * len(space)
            if m:
                e[space.index("x2")] = m
            terms[(2 * n, tuple(e))] = coeff
    return GradedSeries(space, dmax2, terms)


def _integrate_q(series, drop_constant=None):
    """Integrate in y1: q~^n -> q~^n / n.  Bidegree-(0, *) terms must be
    absent, or equal the stated constant which integrates to the
    implicit linear term and is dropped."""
    out = {}
    for (d2, e), c in series.terms.items():
        if d2 == 0:
            if drop_constant is not None and c == drop_constant and not any(e):
                continue
            raise ValueError("unexpected q-degree-0 term in connection entry")
        out[(d2, e)] = c / (Rat(d2) / 2)
    return GradedSeries(series.space, series.dmax2, out)


def iritani_pipeline(dmax=5, mmax=16):
    """Run the whole comparison: returns a dict with the connection
    matrix entries, the alternative mirror map, the integrated
    potentials f1, f2, f3, and their composition with the inverse
    mirror map (flat-coordinate series)."""
    nmax = dmax
    m_matrix = build_m_matrix(nmax, mmax)
    minus, plus = birkhoff(m_matrix, nmax, mmax)
    c1 = connection_matrix(minus, nmax, mmax)
    z_free = c1_z_free(c1)
    space = VarSpace(("x0", "x2"))
    dmax2 = 2 * dmax

    jac = {
        (i + 1, j + 1): _entry_series(c1, i, j, space, dmax2)
        for i in range(3)
        for j in range(3)
    }
    # mirror map: t^0, t^1 (grading), t^2 from the first column
    corr0 = _integrate_q(jac[(1, 1)])
    grading = _integrate_q(jac[(2, 1)], drop_constant=R1)
    corr2 = _integrate_q(jac[(3, 1)])
    fmap = FormalMap(space, dmax2, {"x0": corr0, "x2": corr2}, grading)

    f1 = _integrate_q(jac[(1, 2)])
    f2 = _integrate_q(jac[(1, 3)])
    f3 = _integrate_q(jac[(2, 2)]).add(
        GradedSeries.monomial(space, dmax2, 1, 0, {"x0": 1})
    )

    inverse = fmap.invert()
    return {
        "z_free": z_free,
        "jacobian": jac,
        "mirror_map": fmap,
        "f1": f1,
        "f2": f2,
        "f3": f3,
        "flat_f1": inverse.compose(f1),
        "flat_f2": inverse.compose(f2),
        "flat_f3": inverse.compose(f3),
    }


def mirror_map_mismatch(pipeline_result, quasimap_map):
    """Leading discrepancy between the I-function mirror map component
    t^2 and the residue-pipeline mirror map: the coefficients of
    q (x2)^4; they disagree (-5/12 against 1/4)."""
    iritani_c = pipeline_result["mirror_map"].corr["x2"].coefficient(2, {"x2": 4})
    quasimap_c = quasimap_map.corr["x2"].coefficient(2, {"x2": 4})
    return iritani_c, quasimap_c
