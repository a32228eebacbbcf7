"""Sparse exact multivariate polynomials and factored rational functions.

A MultiPoly stores nonzero terms as a dict from exponent tuples to
rationals.  A FactoredRational keeps its denominator as a multiset of
normalized linear forms with exponents; denominators are never expanded,
which keeps residue extraction (differentiate, then substitute the root
of a linear form) closed and cheap.
"""

from .backend import add_terms, mul_terms, scale_terms
from .rational import R0, R1, Rat, rat_str


class VarSpace:
    """An ordered tuple of variable names shared by all polynomials in a
    computation."""

    __slots__ = ("names", "_index")

    def __init__(self, names):
        self.names = tuple(names)
        self._index = {n: i for i, n in enumerate(self.names)}

    def __len__(self):
        return len(self.names)

    def index(self, name):
        return self._index[name]

    def __eq__(self, other):
        return isinstance(other, VarSpace) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return "VarSpace%r" % (self.names,)


def _monomial_str(space, expo):
    parts = []
    for name, e in zip(space.names, expo):
        if e == 0:
            continue
        parts.append(name if e == 1 else "%s^%d" % (name, e))
    return "*".join(parts)


class MultiPoly:
    """Sparse polynomial over a VarSpace with exact rational coefficients."""

    __slots__ = ("space", "terms")

    def __init__(self, space, terms=None):
        self.space = space
        self.terms = terms if terms is not None else {}

    @classmethod
    def zero(cls, space):
        return cls(space, {})

    @classmethod
    def constant(cls, space, c):
        c = Rat(c)
        if not c:
            return cls(space, {})
        return cls(space, {(0,) * len(space): c})

    @classmethod
    def one(cls, space):
        return cls.constant(space, 1)

    @classmethod
    def var(cls, space, name, power=1, coeff=1):
        e = [0] * len(space)
        e[space.index(name)] = power
        return cls(space, {tuple(e): Rat(coeff)})

    @classmethod
    def from_coeffs(cls, space, linear_coeffs):
        """Linear polynomial sum(c_i * var_i) from a coefficient sequence."""
        terms = {}
        for i, c in enumerate(linear_coeffs):
            if c:
                e = [0] * len(space)
                e[i] = 1
                terms[tuple(e)] = Rat(c)
        return cls(space, terms)

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        if not self.terms:
            return True
        zero = (0,) * len(self.space)
        return len(self.terms) == 1 and zero in self.terms

    def constant_value(self):
        return self.terms.get((0,) * len(self.space), R0)

    def __add__(self, other):
        return MultiPoly(self.space, add_terms(self.terms, other.terms))

    def __sub__(self, other):
        return self + other.scale(-1)

    def __mul__(self, other):
        return MultiPoly(self.space, mul_terms(self.terms, other.terms))

    def scale(self, c):
        return MultiPoly(self.space, scale_terms(self.terms, Rat(c)))

    def __neg__(self):
        return self.scale(-1)

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = MultiPoly.one(self.space)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def diff(self, vi):
        """Partial derivative with respect to variable index vi."""
        out = {}
        for expo, c in self.terms.items():
            e = expo[vi]
            if e == 0:
                continue
            new = list(expo)
            new[vi] = e - 1
            out[tuple(new)] = c * e
        return MultiPoly(self.space, out)

    def subs_linear(self, vi, root):
        """Substitute var_vi := sum(root[j] * var_j); root[vi] must be 0."""
        by_power = {}
        for expo, c in self.terms.items():
            e = expo[vi]
            new = list(expo)
            new[vi] = 0
            key = tuple(new)
            bucket = by_power.setdefault(e, {})
            prev = bucket.get(key)
            bucket[key] = c if prev is None else prev + c
        rho = MultiPoly.from_coeffs(self.space, root).terms
        out = {}
        power = {(0,) * len(self.space): R1}
        maxe = max(by_power) if by_power else 0
        for e in range(maxe + 1):
            bucket = by_power.get(e)
            if bucket:
                bucket = {k: v for k, v in bucket.items() if v}
                out = add_terms(out, mul_terms(bucket, power))
            if e < maxe:
                power = mul_terms(power, rho)
        return MultiPoly(self.space, out)

    def degrees(self):
        """Set of total degrees occurring among the terms."""
        return {sum(e) for e in self.terms}

    def eval_complex(self, values):
        """Numeric evaluation; values is a sequence indexed like the space."""
        total = 0
        for expo, c in self.terms.items():
            v = complex(1)
            for x, e in zip(values, expo):
                if e:
                    v *= x**e
            total += float(c.numerator) / float(c.denominator) * v
        return total

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0])

    def __eq__(self, other):
        return (
            isinstance(other, MultiPoly)
            and self.space == other.space
            and self.terms == other.terms
        )

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for expo, c in self.sorted_terms():
            mono = _monomial_str(self.space, expo)
            if mono:
                parts.append("%s*%s" % (rat_str(c), mono))
            else:
                parts.append(rat_str(c))
        return " + ".join(parts)

    __repr__ = __str__


class LinearForm:
    """A homogeneous linear form, normalized so that its first nonzero
    coefficient is 1 (the overall scalar is tracked by the caller).

    Normalization makes proportional forms compare equal, so they merge
    in a FactoredRational's denominator multiset.
    """

    __slots__ = ("space", "coeffs", "_hash")

    def __init__(self, space, coeffs):
        self.space = space
        self.coeffs = tuple(coeffs)
        self._hash = hash(self.coeffs)

    @classmethod
    def normalize(cls, space, raw):
        """Split raw coefficients into (scalar, normalized form).

        Returns (0, None) when every coefficient vanishes.
        """
        raw = [Rat(c) for c in raw]
        lead = None
        for c in raw:
            if c:
                lead = c
                break
        if lead is None:
            return R0, None
        return lead, cls(space, [c / lead for c in raw])

    @classmethod
    def variable(cls, space, name):
        coeffs = [R0] * len(space)
        coeffs[space.index(name)] = R1
        return cls(space, coeffs)

    def depends_on(self, vi):
        return bool(self.coeffs[vi])

    def root_for(self, vi):
        """Coefficients of the root var_vi = sum(r_j var_j) of this form."""
        c = self.coeffs[vi]
        if not c:
            raise ValueError("form does not involve the variable")
        root = [-x / c for x in self.coeffs]
        root[vi] = R0
        return tuple(root)

    def subs_linear(self, vi, root):
        """Raw coefficients after var_vi := sum(root[j] var_j)."""
        c = self.coeffs[vi]
        out = list(self.coeffs)
        out[vi] = R0
        if c:
            for j, r in enumerate(root):
                if r:
                    out[j] = out[j] + c * r
        return out

    def to_poly(self):
        return MultiPoly.from_coeffs(self.space, self.coeffs)

    def eval_complex(self, values):
        total = 0
        for c, x in zip(self.coeffs, values):
            if c:
                total += float(c.numerator) / float(c.denominator) * x
        return total

    def __eq__(self, other):
        return isinstance(other, LinearForm) and self.coeffs == other.coeffs

    def __hash__(self):
        return self._hash

    def __str__(self):
        parts = []
        for name, c in zip(self.space.names, self.coeffs):
            if not c:
                continue
            if c == 1:
                parts.append(name)
            else:
                parts.append("%s*%s" % (rat_str(c), name))
        return " + ".join(parts) if parts else "0"

    __repr__ = __str__


class FactoredRational:
    """scalar * num / prod(form ** exponent) with linear denominator forms.

    The canonical zero has scalar 1, zero numerator and empty denominator.
    """

    __slots__ = ("space", "scalar", "num", "den")

    def __init__(self, space, scalar, num, den):
        if num.is_zero() or not scalar:
            scalar, num, den = R1, MultiPoly.zero(space), {}
        self.space = space
        self.scalar = Rat(scalar)
        self.num = num
        self.den = den

    @classmethod
    def zero(cls, space):
        return cls(space, R1, MultiPoly.zero(space), {})

    @classmethod
    def from_poly(cls, poly, scalar=1):
        return cls(poly.space, scalar, poly, {})

    def is_zero(self):
        return self.num.is_zero()

    def mul_scalar(self, c):
        c = Rat(c)
        if not c:
            return FactoredRational.zero(self.space)
        return FactoredRational(self.space, self.scalar * c, self.num, self.den)

    def mul_poly(self, poly):
        return FactoredRational(self.space, self.scalar, self.num * poly, self.den)

    def mul(self, other):
        if self.is_zero() or other.is_zero():
            return FactoredRational.zero(self.space)
        den = dict(self.den)
        for form, e in other.den.items():
            den[form] = den.get(form, 0) + e
        return FactoredRational(
            self.space, self.scalar * other.scalar, self.num * other.num, den
        )

    def div_form(self, raw_coeffs, power=1):
        """Divide by a linear form given by raw coefficients."""
        s, form = LinearForm.normalize(self.space, raw_coeffs)
        if form is None:
            raise ZeroDivisionError("division by the zero form")
        den = dict(self.den)
        den[form] = den.get(form, 0) + power
        return FactoredRational(self.space, self.scalar / s**power, self.num, den)

    def add(self, other):
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        den = {}
        for form, e in self.den.items():
            den[form] = e
        for form, e in other.den.items():
            den[form] = max(den.get(form, 0), e)
        na = self.num.scale(self.scalar)
        nb = other.num.scale(other.scalar)
        for form, e in den.items():
            da = e - self.den.get(form, 0)
            db = e - other.den.get(form, 0)
            if da:
                na = na * form.to_poly() ** da
            if db:
                nb = nb * form.to_poly() ** db
        return FactoredRational(self.space, R1, na + nb, den)

    def __neg__(self):
        return self.mul_scalar(-1)

    def diff(self, vi):
        """Partial derivative; stays factored (dependent exponents grow)."""
        if self.is_zero():
            return self
        dep = [(form, e) for form, e in self.den.items() if form.depends_on(vi)]
        if not dep:
            return FactoredRational(self.space, self.scalar, self.num.diff(vi), self.den)
        prod_all = MultiPoly.one(self.space)
        for form, _ in dep:
            prod_all = prod_all * form.to_poly()
        total = self.num.diff(vi) * prod_all
        for i, (form, e) in enumerate(dep):
            prod_others = MultiPoly.one(self.space)
            for j, (other, _) in enumerate(dep):
                if j != i:
                    prod_others = prod_others * other.to_poly()
            total = total + (self.num * prod_others).scale(-Rat(e) * form.coeffs[vi])
        den = dict(self.den)
        for form, e in dep:
            den[form] = e + 1
        return FactoredRational(self.space, self.scalar, total, den)

    def subs_linear(self, vi, root):
        """Substitute var_vi := sum(root[j] var_j) everywhere.

        Raises ZeroDivisionError if a denominator form vanishes at the
        substitution (the caller must remove pole factors first).
        """
        if self.is_zero():
            return self
        num = self.num.subs_linear(vi, root)
        scalar = self.scalar
        den = {}
        for form, e in self.den.items():
            s, new = LinearForm.normalize(self.space, form.subs_linear(vi, root))
            if new is None:
                raise ZeroDivisionError(
                    "denominator form %s vanishes under substitution" % (form,)
                )
            scalar = scalar / s**e
            den[new] = den.get(new, 0) + e
        return FactoredRational(self.space, scalar, num, den)

    def as_scalar(self):
        """The value of a constant FactoredRational (empty denominator)."""
        if self.is_zero():
            return R0
        if self.den or not self.num.is_constant():
            raise ValueError("not a constant: %s" % self)
        return self.scalar * self.num.constant_value()

    def homogeneity_degrees(self):
        """Total degrees of this function; a set with one element when
        homogeneous (denominator forms each count as degree -1)."""
        dshift = sum(self.den.values())
        return {d - dshift for d in self.num.degrees()}

    def eval_complex(self, values):
        v = float(self.scalar.numerator) / float(self.scalar.denominator)
        total = v * self.num.eval_complex(values)
        for form, e in self.den.items():
            total /= form.eval_complex(values) ** e
        return total

    def dump(self):
        """Stable text dump used in golden tests and debug output."""
        return {
            "scalar": rat_str(self.scalar),
            "num": str(self.num),
            "den": sorted("(%s)^%d" % (form, e) for form, e in self.den.items()),
        }

    def __str__(self):
        d = self.dump()
        den = "*".join(d["den"]) if d["den"] else "1"
        return "%s * (%s) / (%s)" % (d["scalar"], d["num"], den)

    __repr__ = __str__
