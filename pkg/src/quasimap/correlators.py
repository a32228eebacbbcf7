"""Virtual structure constants and their generating functions.

Closed-string (sphere) and open-string (disk) correlators of projective
space CP^{N-1} and of degree-k hypersurfaces inside it are computed as
iterated residues of explicit factored rational integrands.  Generating
functions collect them, weighted by deformation parameters x^j for the
cohomology classes h^j, into GradedSeries graded by the quasimap degree.
"""

from . import cache
from .polys import FactoredRational, MultiPoly, VarSpace
from .rational import R0, R1, Rat
from .residues import iterated_residue_retry, profile_closed, profile_open
from .series import GradedSeries


class Model:
    """Target space: CP^{N-1} or the degree-k hypersurface M_N^k."""

    __slots__ = ("kind", "N", "k")

    def __init__(self, kind, N, k=None):
        if kind not in ("cp", "hyp"):
            raise ValueError("kind must be 'cp' or 'hyp'")
        if kind == "hyp" and (k is None or k < 1):
            raise ValueError("hypersurface degree k must be >= 1")
        self.kind = kind
        self.N = N
        self.k = k

    @classmethod
    def cp(cls, N):
        return cls("cp", N)

    @classmethod
    def hypersurface(cls, N, k):
        return cls("hyp", N, k)

    @property
    def key(self):
        if self.kind == "cp":
            return "cp%d" % self.N
        return "hyp%d.%d" % (self.N, self.k)

    @property
    def top_class(self):
        """Largest cohomology class h^j with a deformation parameter."""
        return self.N - 1 if self.kind == "cp" else self.N - 2

    @property
    def pairing_factor(self):
        """Integral of the top class over the ambient cycle."""
        return R1 if self.kind == "cp" else Rat(self.k)

    def __eq__(self, other):
        return isinstance(other, Model) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return self.key


def kernel_w(m, d, space, za, zb):
    """d * (z^m - w^m)/(z - w) = d * sum z^i w^(m-1-i); zero for m = 0."""
    terms = {}
    ia, ib = space.index(za), space.index(zb)
    for i in range(m):
        e = [0] * len(space)
        e[ia] += i
        e[ib] += m - 1 - i
        key = tuple(e)
        terms[key] = terms.get(key, R0) + Rat(d)
    return MultiPoly(space, {k: v for k, v in terms.items() if v})


def kernel_e(k, space, za, zb):
    """prod_{j=0}^{k} (j*z + (k-j)*w)."""
    out = MultiPoly.one(space)
    ia, ib = space.index(za), space.index(zb)
    coeffs_a = [R0] * len(space)
    coeffs_b = [R0] * len(space)
    for j in range(k + 1):
        coeffs_a[ia], coeffs_b[ib] = Rat(j), Rat(k - j)
        out = out * MultiPoly.from_coeffs(
            space, [a + b for a, b in zip(coeffs_a, coeffs_b)]
        )
    return out


def kernel_f_monomial(N, k, d):
    """The weight-space factor of the degree-(2d-1) disk fixed point:
    a monomial (coefficient, z-exponent) with possibly negative exponent."""
    two_d1 = 2 * d - 1
    coeff = Rat(2, two_d1)
    expo = 0
    for j in range(k * d - (k + 1) // 2 + 1):
        coeff *= Rat(k * two_d1 - 2 * j, two_d1)
        expo += 1
    for j in range(1, d):
        coeff /= Rat(two_d1 - 2 * j, two_d1) ** N
        expo -= N
    return coeff, expo


def kernel_f(N, k, d, space, z):
    """kernel_f_monomial as a FactoredRational in the variable z."""
    coeff, expo = kernel_f_monomial(N, k, d)
    fr = FactoredRational.from_poly(MultiPoly.one(space), coeff)
    return _times_power(fr, space, z, expo)


def _times_power(fr, space, name, expo):
    """Multiply by var^expo, sending negative powers to the denominator."""
    if expo > 0:
        return fr.mul_poly(MultiPoly.var(space, name, expo))
    if expo < 0:
        coeffs = [R0] * len(space)
        coeffs[space.index(name)] = R1
        return fr.div_form(coeffs, -expo)
    return fr


def canonical_insertions(insertions):
    """Normalize {class: multiplicity} to a sorted tuple of pairs."""
    items = []
    for m, mult in sorted(dict(insertions or {}).items()):
        if mult < 0 or m < 0:
            raise ValueError("insertion classes and multiplicities must be >= 0")
        if mult:
            items.append((int(m), int(mult)))
    return tuple(items)


def insertion_weight(insertions):
    return sum(mult * (m - 1) for m, mult in insertions)


def selection_closed(model, d, a, b, insertions):
    """Degree selection rule for sphere correlators."""
    s = insertion_weight(canonical_insertions(insertions))
    if model.kind == "cp":
        return a + b + s == model.N * (d + 1) - 2
    return a + b + s == d * (model.N - model.k) + model.N - 3


def selection_open(model, d, a, insertions):
    """Degree selection rule for disk correlators (degree 2d-1)."""
    s = insertion_weight(canonical_insertions(insertions))
    if model.kind == "cp":
        if model.N != 3:
            raise ValueError("direct disk correlators are defined for CP^2")
        return a + s == 3 * d - 1
    k = model.k
    return a + s == (model.N - 1) * d + 2 * (d - 1) - (k + 1) * (2 * d - 1) // 2


def _closed_integrand(model, d, a, b, insertions):
    space = VarSpace(tuple("z%d" % j for j in range(d + 1)))
    N = len(space)
    fr = FactoredRational.from_poly(MultiPoly.one(space))
    for j in range(d + 1):
        coeffs = [R0] * N
        coeffs[j] = R1
        fr = fr.div_form(coeffs, model.N)
    fr = _times_power(fr, space, "z0", a)
    fr = _times_power(fr, space, "z%d" % d, b)
    for j in range(1, d):
        coeffs = [R0] * N
        coeffs[j - 1], coeffs[j], coeffs[j + 1] = Rat(-1), Rat(2), Rat(-1)
        fr = fr.div_form(coeffs)
    if model.kind == "hyp":
        for j in range(1, d + 1):
            fr = fr.mul_poly(kernel_e(model.k, space, "z%d" % (j - 1), "z%d" % j))
        for j in range(1, d):
            coeffs = [R0] * N
            coeffs[j] = Rat(model.k)
            fr = fr.div_form(coeffs)
    for m, mult in insertions:
        s = MultiPoly.zero(space)
        for j in range(1, d + 1):
            s = s + kernel_w(m, 1, space, "z%d" % (j - 1), "z%d" % j)
        fr = fr.mul(FactoredRational.from_poly(s**mult))
    return space, fr


def _open_integrand(model, d, a, insertions):
    space = VarSpace(tuple("z%d" % j for j in range(d)))
    V = len(space)
    fr = FactoredRational.from_poly(MultiPoly.one(space), 2)
    for j in range(d):
        coeffs = [R0] * V
        coeffs[j] = R1
        fr = fr.div_form(coeffs, model.N if model.kind == "hyp" else 3)
    fr = _times_power(fr, space, "z0", a)
    # moving factors with the image point reflected: z_d := -z_{d-1}
    for j in range(1, d):
        coeffs = [R0] * V
        coeffs[j - 1] += Rat(-1)
        coeffs[j] += Rat(2)
        if j + 1 <= d - 1:
            coeffs[j + 1] += Rat(-1)
        else:
            coeffs[d - 1] += Rat(1)
        fr = fr.div_form(coeffs)
    if model.kind == "hyp":
        k = model.k
        if k % 2 == 0:
            raise ValueError("disk correlators need odd hypersurface degree")
        dfact = 1
        for v in range(k, 0, -2):
            dfact *= v
        fr = fr.mul_scalar(dfact)
        fr = _times_power(fr, space, "z%d" % (d - 1), (k + 1) // 2)
        for j in range(1, d):
            fr = fr.mul_poly(kernel_e(k, space, "z%d" % (j - 1), "z%d" % j))
            coeffs = [R0] * V
            coeffs[j] = Rat(k)
            fr = fr.div_form(coeffs)
    for m, mult in insertions:
        s = MultiPoly.zero(space)
        for j in range(1, d):
            s = s + kernel_w(m, 1, space, "z%d" % (j - 1), "z%d" % j)
        boundary = FactoredRational.from_poly(s).add(
            _times_power(
                FactoredRational.from_poly(MultiPoly.one(space), Rat(1, 2)),
                space,
                "z%d" % (d - 1),
                m - 1,
            )
        )
        for _ in range(mult):
            fr = fr.mul(boundary)
    return space, fr


def vsc_closed(model, d, a, b, insertions=None):
    """Sphere virtual structure constant w(O_{h^a} O_{h^b} | prod O)_{0,d}."""
    if d < 1:
        raise ValueError("degree must be >= 1")
    ins = canonical_insertions(insertions)
    if any(m == 0 for m, _ in ins):
        return R0
    if not selection_closed(model, d, a, b, ins):
        return R0
    key = "closed|d=%d|a=%d|b=%d|ins=%s" % (
        d,
        a,
        b,
        ",".join("%d:%d" % p for p in ins),
    )
    hit = cache.get(model.key, key)
    if hit is not None:
        return hit
    space, fr = _closed_integrand(model, d, a, b, ins)
    radii = dict(zip(space.names, profile_closed(d)))
    value = iterated_residue_retry(fr, space.names, radii)
    cache.put(model.key, key, value)
    return value


def vsc_open(model, d, a, insertions=None):
    """Disk virtual structure constant w(O_{h^a} | prod O)_{disk,2d-1}."""
    if d < 1:
        raise ValueError("degree must be >= 1")
    ins = canonical_insertions(insertions)
    if not selection_open(model, d, a, ins):
        return R0
    key = "open|d=%d|a=%d|ins=%s" % (d, a, ",".join("%d:%d" % p for p in ins))
    hit = cache.get(model.key, key)
    if hit is not None:
        return hit
    space, fr = _open_integrand(model, d, a, ins)
    radii = dict(zip(space.names, profile_open(d)))
    value = iterated_residue_retry(fr, space.names, radii)
    cache.put(model.key, key, value)
    return value


def deformation_space(jmax):
    """Variables x0, x2, ..., x{jmax} (x1 is the grading direction)."""
    return VarSpace(("x0",) + tuple("x%d" % j for j in range(2, jmax + 1)))


def _weighted_partitions(total, parts):
    """Yield multiplicity dicts {name: mult} with sum mult*weight == total;
    parts is a list of (name, weight) with positive weights."""
    if total == 0:
        yield {}
        return
    if total < 0 or not parts:
        return
    name, weight = parts[0]
    rest = parts[1:]
    for mult in range(total // weight + 1):
        for tail in _weighted_partitions(total - mult * weight, rest):
            if mult:
                tail = dict(tail)
                tail[name] = mult
            yield tail


def factorial(n):
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


def gf_closed(model, a, b, dmax, jmax=None, include_classical=True):
    """Generating function of sphere correlators with fixed front classes
    h^a, h^b, graded by quasimap degree, as a GradedSeries in x^j.

    The classical piece contributes x^c with c = top_class - a - b; when
    c = 1 it is the implicit linear grading term and is omitted here.
    """
    if jmax is None:
        jmax = model.top_class
    space = deformation_space(jmax)
    dmax2 = 2 * dmax
    out = GradedSeries.zero(space, dmax2)
    if include_classical:
        c = model.top_class - a - b
        if 0 <= c <= jmax and c != 1:
            out = out.add(
                GradedSeries.monomial(
                    space, dmax2, model.pairing_factor, 0, {"x%d" % c: 1}
                )
            )
    classes = [("x%d" % j, j - 1) for j in range(2, jmax + 1)]
    if model.kind == "cp":
        target = lambda d: model.N * (d + 1) - 2 - a - b
    else:
        target = lambda d: d * (model.N - model.k) + model.N - 3 - a - b
    for d in range(1, dmax + 1):
        for mults in _weighted_partitions(target(d), classes):
            ins = {int(name[1:]): mult for name, mult in mults.items()}
            value = vsc_closed(model, d, a, b, ins)
            if not value:
                continue
            for mult in mults.values():
                value /= factorial(mult)
            out = out.add(GradedSeries.monomial(space, dmax2, value, 2 * d, mults))
    return out


class OpenTruncationPolicy:
    """Controls the disk generating function truncation: the largest
    deformation class jmax and the cap on the number of O_1 insertions
    allowed at disk degree 2f-1 when targeting top degree 2d-1."""

    def __init__(self, target_d, jmax=None, unit_cap=None):
        self.target_d = target_d
        self.jmax = jmax if jmax is not None else target_d
        self._unit_cap = unit_cap

    def unit_cap(self, f):
        if self._unit_cap is not None:
            return self._unit_cap(f)
        return max(self.target_d - f, 0)

    @classmethod
    def flat(cls, target_d, jmax=None, cap=1):
        """Same O_1 cap at every degree; under this choice the
        deformation-dependent hypersurface disk series terms are stable
        once cap >= 1, while the CP^2 series needs the graded default."""
        return cls(target_d, jmax=jmax, unit_cap=lambda f: cap)


def gf_open(model, a, policy):
    """Generating function of disk correlators with front class h^a,
    graded by half-integral degrees d-1/2, d = 1..policy.target_d."""
    jmax = policy.jmax
    space = deformation_space(jmax)
    dmax2 = 2 * policy.target_d - 1
    out = GradedSeries.zero(space, dmax2)
    classes = [("x%d" % j, j - 1) for j in range(2, jmax + 1)]
    if model.kind == "cp":
        target = lambda f: 3 * f - 1 - a
    else:
        k = model.k
        target = lambda f: (model.N - 1) * f + 2 * (f - 1) - (k + 1) * (2 * f - 1) // 2 - a
    for f in range(1, policy.target_d + 1):
        for m0 in range(policy.unit_cap(f) + 1):
            for mults in _weighted_partitions(target(f) + m0, classes):
                ins = {int(name[1:]): mult for name, mult in mults.items()}
                if m0:
                    ins[0] = m0
                value = vsc_open(model, f, a, ins)
                if not value:
                    continue
                for mult in ins.values():
                    value /= factorial(mult)
                expos = dict(mults)
                if m0:
                    expos["x0"] = m0
                out = out.add(
                    GradedSeries.monomial(space, dmax2, value, 2 * f - 1, expos)
                )
    return out
