"""Truncated graded series and invertible formal coordinate changes.

A GradedSeries is a finite sum of terms  coeff * q^(deg2/2) * monomial
where q is the grading parameter (its exponent may be half-integral, so
twice the degree is stored as an int) and the monomial ranges over a
VarSpace of deformation parameters.  The linear grading variable itself
is never stored: a FormalMap records, for every deformation parameter
and for the grading exponent, the correction to the identity, which is
how the mirror map t(x) = x + (higher order) and its inverse are kept.
"""

from .polys import VarSpace
from .rational import R0, R1, Rat, parse_rat, rat_str


class HalfInt:
    """An element of (1/2)Z, stored as twice its value."""

    __slots__ = ("twice",)

    def __init__(self, num, den=1):
        if den == 1:
            self.twice = 2 * num
        elif den == 2:
            self.twice = num
        else:
            raise ValueError("denominator must be 1 or 2")

    @classmethod
    def from_twice(cls, twice):
        return cls(twice, 2)

    def __add__(self, other):
        return HalfInt.from_twice(self.twice + other.twice)

    def __sub__(self, other):
        return HalfInt.from_twice(self.twice - other.twice)

    def __le__(self, other):
        return self.twice <= other.twice

    def __lt__(self, other):
        return self.twice < other.twice

    def __eq__(self, other):
        return isinstance(other, HalfInt) and self.twice == other.twice

    def __hash__(self):
        return hash(("HalfInt", self.twice))

    def as_rat(self):
        return Rat(self.twice) / 2

    def __str__(self):
        if self.twice % 2 == 0:
            return str(self.twice // 2)
        return "%d/2" % self.twice

    __repr__ = __str__


def deg2_of(value):
    """Twice the q-degree of an int, HalfInt or Rat degree."""
    if isinstance(value, HalfInt):
        return value.twice
    r = Rat(value) * 2
    if r.denominator != 1:
        raise ValueError("degree must lie in (1/2)Z")
    return int(r)


class GradedSeries:
    """Sparse truncated series; terms map (deg2, exponent tuple) -> Rat."""

    __slots__ = ("space", "dmax2", "terms")

    def __init__(self, space, dmax2, terms=None):
        self.space = space
        self.dmax2 = dmax2
        self.terms = terms if terms is not None else {}

    @classmethod
    def zero(cls, space, dmax2):
        return cls(space, dmax2)

    @classmethod
    def constant(cls, space, dmax2, c):
        c = Rat(c)
        if not c:
            return cls(space, dmax2)
        return cls(space, dmax2, {(0, (0,) * len(space)): c})

    @classmethod
    def monomial(cls, space, dmax2, coeff, deg2=0, expos=None):
        """Single term; expos maps variable names to exponents."""
        coeff = Rat(coeff)
        if not coeff or deg2 > dmax2:
            return cls(space, dmax2)
        e = [0] * len(space)
        for name, p in (expos or {}).items():
            e[space.index(name)] += p
        return cls(space, dmax2, {(deg2, tuple(e)): coeff})

    def is_zero(self):
        return not self.terms

    def coefficient(self, deg2, expos=None):
        e = [0] * len(self.space)
        for name, p in (expos or {}).items():
            e[self.space.index(name)] += p
        return self.terms.get((deg2, tuple(e)), R0)

    def _put(self, terms, key, c):
        prev = terms.get(key)
        if prev is None:
            terms[key] = c
        else:
            s = prev + c
            if s:
                terms[key] = s
            else:
                del terms[key]

    def add(self, other):
        out = dict(self.terms)
        for key, c in other.terms.items():
            self._put(out, key, c)
        return GradedSeries(self.space, self.dmax2, out)

    def sub(self, other):
        return self.add(other.scale(-1))

    def scale(self, c):
        c = Rat(c)
        if not c:
            return GradedSeries(self.space, self.dmax2)
        return GradedSeries(
            self.space, self.dmax2, {k: c * v for k, v in self.terms.items()}
        )

    def mul(self, other):
        out = {}
        for (d1, e1), c1 in self.terms.items():
            for (d2, e2), c2 in other.terms.items():
                d = d1 + d2
                if d > self.dmax2:
                    continue
                key = (d, tuple(a + b for a, b in zip(e1, e2)))
                self._put(out, key, c1 * c2)
        return GradedSeries(self.space, self.dmax2, out)

    def pow(self, n):
        result = GradedSeries.constant(self.space, self.dmax2, 1)
        base = self
        while n:
            if n & 1:
                result = result.mul(base)
            n >>= 1
            if n:
                base = base.mul(base)
        return result

    def min_deg2(self):
        return min((d for d, _ in self.terms), default=None)

    def exp(self):
        """exp of a series with strictly positive q-degree."""
        m = self.min_deg2()
        out = GradedSeries.constant(self.space, self.dmax2, 1)
        if m is None:
            return out
        if m <= 0:
            raise ValueError("exp needs strictly positive grading")
        power = GradedSeries.constant(self.space, self.dmax2, 1)
        fact = R1
        r = 1
        while r * m <= self.dmax2:
            power = power.mul(self)
            fact *= r
            out = out.add(power.scale(R1 / fact))
            r += 1
        return out

    def shift_q(self, deg2):
        out = {}
        for (d, e), c in self.terms.items():
            if d + deg2 <= self.dmax2:
                out[(d + deg2, e)] = c
        return GradedSeries(self.space, self.dmax2, out)

    def diff_var(self, name):
        vi = self.space.index(name)
        out = {}
        for (d, e), c in self.terms.items():
            if e[vi]:
                ne = list(e)
                ne[vi] -= 1
                self._put(out, (d, tuple(ne)), c * e[vi])
        return GradedSeries(self.space, self.dmax2, out)

    def diff_grading(self):
        """Derivative along the grading direction: each term is scaled by
        its q-degree (the divisor-variable derivative)."""
        out = {}
        for (d, e), c in self.terms.items():
            if d:
                out[(d, e)] = c * Rat(d) / 2
        return GradedSeries(self.space, self.dmax2, out)

    def set_var_zero(self, name):
        vi = self.space.index(name)
        out = {k: v for k, v in self.terms.items() if not k[1][vi]}
        return GradedSeries(self.space, self.dmax2, out)

    def truncate(self, dmax2):
        out = {k: v for k, v in self.terms.items() if k[0] <= dmax2}
        return GradedSeries(self.space, dmax2, out)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0])

    def __eq__(self, other):
        return (
            isinstance(other, GradedSeries)
            and self.space == other.space
            and self.terms == other.terms
        )

    def term_strings(self):
        out = []
        for (d, e), c in self.sorted_terms():
            parts = [rat_str(c)]
            if d:
                parts.append("q^%s" % HalfInt.from_twice(d))
            for name, p in zip(self.space.names, e):
                if p:
                    parts.append(name if p == 1 else "%s^%d" % (name, p))
            out.append(" * ".join(parts))
        return out

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(self.term_strings())

    __repr__ = __str__


def parse_series(space, dmax2, text):
    """Inverse of GradedSeries.__str__ for the canonical term format."""
    series = GradedSeries(space, dmax2)
    text = text.strip()
    if text == "0":
        return series
    terms = {}
    for chunk in text.split(" + "):
        coeff = R1
        deg2 = 0
        e = [0] * len(space)
        for factor in chunk.split(" * "):
            factor = factor.strip()
            if factor.startswith("q^"):
                val = factor[2:]
                if "/" in val:
                    num, den = val.split("/")
                    deg2 = int(num) * (2 // int(den))
                else:
                    deg2 = 2 * int(val)
            elif factor and (factor[0].isdigit() or factor[0] == "-"):
                coeff = parse_rat(factor)
            else:
                if "^" in factor:
                    name, p = factor.split("^")
                    e[space.index(name)] += int(p)
                else:
                    e[space.index(factor)] += 1
        series._put(terms, (deg2, tuple(e)), coeff)
    series.terms = terms
    return series


class FormalMap:
    """A coordinate change  t_name = x_name + corr[name](x),
    q_t = q_x * exp(grading_corr(x)),  with all corrections of strictly
    positive q-degree.  compose() rewrites a series in the t-variables
    as a series in the x-variables; invert() produces the inverse map.
    """

    __slots__ = ("space", "dmax2", "corr", "grading_corr")

    def __init__(self, space, dmax2, corr=None, grading_corr=None):
        self.space = space
        self.dmax2 = dmax2
        self.corr = dict(corr or {})
        for name in space.names:
            self.corr.setdefault(name, GradedSeries.zero(space, dmax2))
        self.grading_corr = (
            grading_corr if grading_corr is not None else GradedSeries.zero(space, dmax2)
        )
        for s in list(self.corr.values()) + [self.grading_corr]:
            m = s.min_deg2()
            if m is not None and m <= 0:
                raise ValueError("map corrections must have positive q-degree")

    def is_identity(self):
        return self.grading_corr.is_zero() and all(
            s.is_zero() for s in self.corr.values()
        )

    def compose(self, series):
        """Evaluate series (written in this map's target coordinates) in
        the source coordinates."""
        space, dmax2 = self.space, self.dmax2
        images = {}
        for name in space.names:
            base = GradedSeries.monomial(space, dmax2, 1, 0, {name: 1})
            images[name] = base.add(self.corr[name])
        gexp_half = None
        if not self.grading_corr.is_zero():
            gexp_half = self.grading_corr.scale(Rat(1, 2)).exp()
        power_cache = {name: [GradedSeries.constant(space, dmax2, 1)] for name in space.names}
        gpow_cache = {0: GradedSeries.constant(space, dmax2, 1)}

        def var_power(name, n):
            cache = power_cache[name]
            while len(cache) <= n:
                cache.append(cache[-1].mul(images[name]))
            return cache[n]

        def grading_power(d):
            if gexp_half is None:
                return None
            if d not in gpow_cache:
                gpow_cache[d] = grading_power(d - 1).mul(gexp_half)
            return gpow_cache[d]

        out = GradedSeries.zero(space, dmax2)
        for (d, e), c in series.terms.items():
            term = GradedSeries.monomial(space, dmax2, c, d)
            if gexp_half is not None and d:
                term = term.mul(grading_power(d))
            for name, p in zip(space.names, e):
                if p:
                    term = term.mul(var_power(name, p))
            out = out.add(term)
        return out

    def invert(self):
        """Inverse map, found by fixed-point iteration; each pass is exact
        one half-step of q-degree further."""
        space, dmax2 = self.space, self.dmax2
        inv = FormalMap(space, dmax2)
        for _ in range(dmax2 + 1):
            new_corr = {
                name: inv.compose(self.corr[name]).scale(-1) for name in space.names
            }
            new_grading = inv.compose(self.grading_corr).scale(-1)
            new = FormalMap(space, dmax2, new_corr, new_grading)
            if all(new.corr[n] == inv.corr[n] for n in space.names) and (
                new.grading_corr == inv.grading_corr
            ):
                return new
            inv = new
        return inv


def make_space(names):
    return VarSpace(names)
