"""Iterated residues of factored rational functions on polycircles.

Variables are integrated out one at a time.  For each variable, every
denominator form involving it defines a candidate pole; exact interval
bounds on the remaining polycircle radii decide whether the pole lies
inside or outside the current circle.  When neither bound is conclusive
an IndecisivePole is raised and the driver retries with jittered radii.
"""

import random

from .polys import FactoredRational, LinearForm, MultiPoly
from .rational import R0, R1, Rat, rat_binomial


class IndecisivePole(Exception):
    """The interval bounds could not separate a pole from the contour."""

    def __init__(self, form, var, radius, outer, inner):
        self.form = form
        self.var = var
        self.radius = radius
        self.outer = outer
        self.inner = inner
        super().__init__(
            "pole of %s in %s not separated from radius %s (outer bound %s, "
            "inner bound %s)" % (form, var, radius, outer, inner)
        )


def classify_pole(form, vi, radii):
    """Return True if the root of form (in variable vi) lies inside the
    circle of radius radii[vi], False if outside; raise IndecisivePole
    otherwise.

    radii maps active variable indices to positive rational radii; the
    root is evaluated over the product of the other active circles.
    """
    c = abs(form.coeffs[vi])
    rest = [
        (abs(form.coeffs[j]) * r, j)
        for j, r in radii.items()
        if j != vi and form.coeffs[j]
    ]
    r_var = radii[vi]
    if not rest:
        return True
    total = sum(v for v, _ in rest)
    outer = total / c
    if outer < r_var:
        return True
    peak = max(v for v, _ in rest)
    inner = (peak - (total - peak)) / c
    if inner > r_var:
        return False
    raise IndecisivePole(form, vi, r_var, outer, inner)


def _origin_residue(f, vi, order):
    """Residue at var_vi = 0 of a pole of the given order.

    Extracts the var^(order-1) Taylor coefficient of f with the origin
    factor removed, expanding each remaining vi-dependent denominator
    form as a geometric series in vi.
    """
    space = f.space
    origin = LinearForm.variable(space, space.names[vi])
    num_by_deg = {}
    for expo, c in f.num.terms.items():
        d = expo[vi]
        if d >= order:
            continue
        stripped = list(expo)
        stripped[vi] = 0
        bucket = num_by_deg.setdefault(d, {})
        key = tuple(stripped)
        prev = bucket.get(key)
        bucket[key] = c if prev is None else prev + c
    if not num_by_deg:
        return FactoredRational.zero(space)

    pieces = {0: FactoredRational.from_poly(MultiPoly.one(space), f.scalar)}
    base_den = {}
    for form, e in f.den.items():
        if form == origin:
            continue
        if not form.depends_on(vi):
            base_den[form] = base_den.get(form, 0) + e
            continue
        c = form.coeffs[vi]
        rest = list(form.coeffs)
        rest[vi] = R0
        new_pieces = {}
        for t1, fr in pieces.items():
            for t2 in range(order - t1):
                coef = rat_binomial(-e, t2) * c**t2
                piece = fr.mul_scalar(coef).div_form(rest, e + t2)
                t = t1 + t2
                new_pieces[t] = piece if t not in new_pieces else new_pieces[t].add(piece)
        pieces = new_pieces

    result = FactoredRational.zero(space)
    for d, bucket in num_by_deg.items():
        piece = pieces.get(order - 1 - d)
        if piece is None:
            continue
        bucket = {k: v for k, v in bucket.items() if v}
        if not bucket:
            continue
        result = result.add(piece.mul_poly(MultiPoly(space, bucket)))
    if result.is_zero():
        return result
    den = dict(result.den)
    for form, e in base_den.items():
        den[form] = den.get(form, 0) + e
    return FactoredRational(space, result.scalar, result.num, den)


def _moving_residue(f, vi, form, order):
    """Residue at the root of a non-origin form via the derivative rule."""
    c = form.coeffs[vi]
    den = dict(f.den)
    del den[form]
    g = FactoredRational(f.space, f.scalar / c**order, f.num, den)
    fact = R1
    for i in range(1, order):
        g = g.diff(vi)
        fact *= i
    g = g.mul_scalar(R1 / fact)
    return g.subs_linear(vi, form.root_for(vi))


def residue_stage(f, vi, radii):
    """Sum of residues of f in variable vi over the poles enclosed by the
    circle radii[vi]; the result no longer involves var_vi."""
    if f.is_zero():
        return f
    origin = LinearForm.variable(f.space, f.space.names[vi])
    total = FactoredRational.zero(f.space)
    for form, e in list(f.den.items()):
        if not form.depends_on(vi):
            continue
        if not classify_pole(form, vi, radii):
            continue
        if form == origin:
            res = _origin_residue(f, vi, e)
        else:
            res = _moving_residue(f, vi, form, e)
        total = total.add(res)
    return total


def iterated_residue(f, var_order, radii):
    """Iterated residue eliminating variables in var_order; radii maps
    variable names to positive rational radii.  Returns an exact Rat."""
    space = f.space
    active = {space.index(name): Rat(r) for name, r in radii.items()}
    g = f
    for name in var_order:
        vi = space.index(name)
        g = residue_stage(g, vi, active)
        del active[vi]
        if g.is_zero():
            return R0
    return g.as_scalar()


def jitter_radii(radii, attempt, seed=20):
    """Deterministically perturb radii; used after an IndecisivePole."""
    rng = random.Random(seed * 1000003 + attempt)
    out = {}
    for name, r in radii.items():
        out[name] = Rat(r) * (1 + Rat(rng.randint(-40, 40), 997))
    return out


# default retry budget after an IndecisivePole; configurable via the CLI
DEFAULT_MAX_RETRIES = 5


def iterated_residue_retry(f, var_order, radii, max_retries=None):
    """iterated_residue with deterministic radius jitter on indecision."""
    if max_retries is None:
        max_retries = DEFAULT_MAX_RETRIES
    attempt = 0
    current = dict(radii)
    while True:
        try:
            return iterated_residue(f, var_order, current)
        except IndecisivePole:
            attempt += 1
            if attempt > max_retries:
                raise
            current = jitter_radii(radii, attempt)


def profile_closed(d):
    """Concave radius profile for the (d+1)-variable closed-string contour."""
    return [Rat(2 * (d + 1) ** 2 - (2 * j - d) ** 2) for j in range(d + 1)]


def profile_open(d):
    """Radius profile for the d-variable disk contour: concave across the
    interior with the last radius large enough to keep the boundary pole
    inside (3*r[d-1] > r[d-2])."""
    if d == 1:
        return [Rat(7)]
    return [Rat(2 * d * d - (2 * j - d + 1) ** 2) for j in range(d)]


def profile_ascending(d):
    """Increasing radii (1, 20, 30, ...) used by the stable-map residue
    sums: the first circle is tiny, so stage 0 keeps only the origin,
    while each later radius stays within twice the next one so that
    half-point poles remain enclosed."""
    return [Rat(r) for r in (1, 20, 30, 40, 52, 64)[:d]]
