"""Exact arithmetic kernel: scalars, Laurent polynomials, rational functions.

Everything downstream (signed permutations acting on variables, skew group
rings, R/K-matrices) is built on three layers:

  * a coefficient field: Q, or the cyclotomic field Q(zeta_m) when the
    quantum parameter has finite order m (elements reduced mod the m-th
    cyclotomic polynomial);
  * ``MPoly``: multivariate *Laurent* polynomials over that field, stored
    as {exponent tuple: coefficient} with integer (possibly negative)
    exponents;
  * ``MRat``: quotients num/den of such polynomials.  Equality is decided
    by cross-multiplication, never by multivariate gcd; normalization is
    limited to monomial-content and leading-coefficient scaling.

Scalars (elements of the base field) are represented uniformly as MRat
values over the "scalar ring" -- the ring in the single variable q for
generic q, or the constant ring with cyclotomic coefficients for q of
finite order.
"""

from fractions import Fraction

__all__ = [
    "BaseField",
    "PolyRing",
    "MPoly",
    "MRat",
    "TruncSeries",
    "ratfun_eq",
    "laurent_order_at",
    "series_comp_inverse",
    "regular_at_point",
]


# ---------------------------------------------------------------------------
# coefficient fields
# ---------------------------------------------------------------------------

def _poly_div_exact(num, den):
    """Exact division of integer-coefficient polynomial lists (ascending)."""
    num = list(num)
    dden = len(den) - 1
    while len(den) > 1 and den[-1] == 0:
        den = den[:-1]
        dden -= 1
    quot = [0] * (max(len(num) - dden, 0))
    for k in range(len(num) - 1, dden - 1, -1):
        c = num[k]
        if c == 0:
            continue
        assert c % den[-1] == 0
        q = c // den[-1]
        quot[k - dden] = q
        for j, d in enumerate(den):
            num[k - dden + j] -= q * d
    assert all(c == 0 for c in num), "inexact polynomial division"
    return quot


def cyclotomic_coeffs(m):
    """Integer coefficient list (ascending) of the m-th cyclotomic polynomial."""
    if m == 1:
        return [-1, 1]
    poly = [-1] + [0] * (m - 1) + [1]          # x^m - 1
    for d in range(1, m):
        if m % d == 0:
            poly = _poly_div_exact(poly, cyclotomic_coeffs(d))
    return poly


class CycElem:
    """Element of Q(zeta_m), stored reduced mod the cyclotomic polynomial."""

    __slots__ = ("field", "c")

    def __init__(self, field, c):
        self.field = field
        self.c = c                              # tuple of Fraction, len = deg

    def __add__(self, other):
        other = self.field.coerce(other)
        return CycElem(self.field, tuple(a + b for a, b in zip(self.c, other.c)))

    __radd__ = __add__

    def __neg__(self):
        return CycElem(self.field, tuple(-a for a in self.c))

    def __sub__(self, other):
        return self + (-self.field.coerce(other))

    def __rsub__(self, other):
        return self.field.coerce(other) - self

    def __mul__(self, other):
        other = self.field.coerce(other)
        return self.field._mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self.field.coerce(other)
        return self * self.field.inverse(other)

    def __rtruediv__(self, other):
        return self.field.coerce(other) / self

    def __eq__(self, other):
        try:
            other = self.field.coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.c == other.c

    def __hash__(self):
        return hash(self.c)

    def __bool__(self):
        return any(self.c)

    def __repr__(self):
        parts = []
        for k, a in enumerate(self.c):
            if a == 0:
                continue
            if k == 0:
                parts.append(str(a))
            elif k == 1:
                parts.append("%s*q" % a if a != 1 else "q")
            else:
                parts.append("%s*q^%d" % (a, k) if a != 1 else "q^%d" % k)
        return " + ".join(parts) if parts else "0"


class CyclotomicField:
    """Q(zeta_m) with zeta_m a primitive m-th root of unity (named q)."""

    def __init__(self, m):
        if m < 3:
            raise ValueError("order of q must be at least 3")
        self.m = m
        coeffs = cyclotomic_coeffs(m)
        self.deg = len(coeffs) - 1
        self.phi = [Fraction(c) for c in coeffs]
        # reduction table: q^k for deg <= k <= 2 deg - 2, as reduced tuples
        self._red = {}
        cur = [Fraction(0)] * self.deg
        # q^deg = -(phi[0] + ... + phi[deg-1] q^{deg-1})
        top = [-c for c in self.phi[: self.deg]]
        cur = list(top)
        self._red[self.deg] = tuple(cur)
        for k in range(self.deg + 1, 2 * self.deg - 1):
            nxt = [Fraction(0)] + cur[:-1]
            lead = cur[-1]
            if lead:
                nxt = [a + lead * b for a, b in zip(nxt, top)]
            cur = nxt
            self._red[k] = tuple(cur)
        self.zero = CycElem(self, (Fraction(0),) * self.deg)
        self.one = self.from_fraction(Fraction(1))

    def from_fraction(self, fr):
        c = [Fraction(0)] * self.deg
        c[0] = Fraction(fr)
        return CycElem(self, tuple(c))

    def gen(self):
        c = [Fraction(0)] * self.deg
        if self.deg == 1:
            # m <= 2 excluded, unreachable
            raise ValueError("degenerate cyclotomic field")
        c[1] = Fraction(1)
        return CycElem(self, tuple(c))

    def coerce(self, x):
        if isinstance(x, CycElem):
            if x.field is not self:
                raise ValueError("mixed cyclotomic fields")
            return x
        if isinstance(x, (int, Fraction)):
            return self.from_fraction(Fraction(x))
        raise TypeError("cannot coerce %r" % (x,))

    def _mul(self, a, b):
        deg = self.deg
        out = [Fraction(0)] * (2 * deg - 1)
        for i, ai in enumerate(a.c):
            if not ai:
                continue
            for j, bj in enumerate(b.c):
                if bj:
                    out[i + j] += ai * bj
        res = out[:deg]
        for k in range(deg, 2 * deg - 1):
            ck = out[k]
            if ck:
                red = self._red[k]
                for i in range(deg):
                    res[i] += ck * red[i]
        return CycElem(self, tuple(res))

    def inverse(self, a):
        """Inverse via extended Euclid in Q[x] mod the cyclotomic polynomial."""
        if not a:
            raise ZeroDivisionError("inverse of zero cyclotomic element")

        def degree(p):
            for i in range(len(p) - 1, -1, -1):
                if p[i]:
                    return i
            return -1

        r0, r1 = list(self.phi), list(a.c) + [Fraction(0)]
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while degree(r1) > 0:
            d0, d1 = degree(r0), degree(r1)
            if d0 < d1:
                r0, r1, s0, s1 = r1, r0, s1, s0
                continue
            q = r0[d0] / r1[d1]
            shift = d0 - d1
            for i in range(d1 + 1):
                r0[i + shift] -= q * r1[i]
            while len(s0) < len(s1) + shift:
                s0.append(Fraction(0))
            for i in range(len(s1)):
                s0[i + shift] -= q * s1[i]
            if degree(r0) < degree(r1):
                r0, r1, s0, s1 = r1, r0, s1, s0
        c = r1[degree(r1)]
        inv = [x / c for x in s1]
        inv = (inv + [Fraction(0)] * self.deg)[: self.deg]
        return CycElem(self, tuple(inv))


class RationalCoeffs:
    """Plain rational coefficients."""

    zero = Fraction(0)
    one = Fraction(1)
    m = None

    @staticmethod
    def from_fraction(fr):
        return Fraction(fr)

    @staticmethod
    def coerce(x):
        if isinstance(x, (int, Fraction)):
            return Fraction(x)
        raise TypeError("cannot coerce %r" % (x,))


# ---------------------------------------------------------------------------
# Laurent polynomials
# ---------------------------------------------------------------------------

class PolyRing:
    """A Laurent polynomial ring over Q or Q(zeta_m), with named variables."""

    def __init__(self, variables, base=None):
        self.vars = tuple(variables)
        self.index = {v: i for i, v in enumerate(self.vars)}
        if len(self.index) != len(self.vars):
            raise ValueError("duplicate variable names")
        self.base = base                       # owning BaseField, may be None
        coeffs = base.coeffs if base is not None else RationalCoeffs
        self.coeffs = coeffs
        self._zero_exp = (0,) * len(self.vars)
        self.zero_poly = MPoly(self, {})
        self.one_poly = MPoly(self, {self._zero_exp: coeffs.one})
        self.zero = MRat(self.zero_poly, self.one_poly)
        self.one = MRat(self.one_poly, self.one_poly)

    def __repr__(self):
        tag = "Q" if self.coeffs.m is None else "Q(zeta_%d)" % self.coeffs.m
        return "PolyRing(%s; %s)" % (", ".join(self.vars) or "-", tag)

    def mpoly(self, terms):
        out = {}
        for e, c in terms.items():
            c = self.coeffs.coerce(c) if not isinstance(c, CycElem) else c
            if c == self.coeffs.zero:
                continue
            out[tuple(e)] = c
        return MPoly(self, out)

    def const(self, c):
        if isinstance(c, MRat):
            return c.cast(self)
        p = self.mpoly({self._zero_exp: c})
        return MRat(p, self.one_poly)

    def var(self, name, power=1):
        e = [0] * len(self.vars)
        e[self.index[name]] = power
        return MRat(MPoly(self, {tuple(e): self.coeffs.one}), self.one_poly)

    def extend(self, extra):
        """Ring with additional variables appended, same coefficients."""
        return PolyRing(self.vars + tuple(v for v in extra if v not in self.index),
                        self.base)


class MPoly:
    """Multivariate Laurent polynomial; immutable once built."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, MPoly):
            return NotImplemented
        return self.ring.vars == other.ring.vars and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring.vars, frozenset(self.terms.items())))

    def __add__(self, other):
        out = dict(self.terms)
        zero = self.ring.coeffs.zero
        for e, c in other.terms.items():
            s = out.get(e, zero) + c
            if s == zero:
                out.pop(e, None)
            else:
                out[e] = s
        return MPoly(self.ring, out)

    def __neg__(self):
        return MPoly(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not self.terms or not other.terms:
            return self.ring.zero_poly
        zero = self.ring.coeffs.zero
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, zero) + c1 * c2
                if s == zero:
                    out.pop(e, None)
                else:
                    out[e] = s
        return MPoly(self.ring, out)

    def scale(self, c):
        if c == self.ring.coeffs.zero:
            return self.ring.zero_poly
        return MPoly(self.ring, {e: v * c for e, v in self.terms.items()})

    def shift(self, delta):
        """Multiply by the monomial with exponent vector delta."""
        return MPoly(self.ring, {tuple(a + b for a, b in zip(e, delta)): c
                                 for e, c in self.terms.items()})

    def min_exponents(self):
        mins = None
        for e in self.terms:
            if mins is None:
                mins = list(e)
            else:
                mins = [min(a, b) for a, b in zip(mins, e)]
        return mins

    def lead_key(self):
        return max(self.terms)

    def degree_in(self, name):
        i = self.ring.index[name]
        return max(e[i] for e in self.terms) if self.terms else None

    def total_degree(self):
        return max(sum(e) for e in self.terms) if self.terms else None

    def coeff_of(self, name, k):
        """Coefficient of name^k, an MPoly with that variable's slot zeroed."""
        i = self.ring.index[name]
        out = {}
        for e, c in self.terms.items():
            if e[i] == k:
                e2 = list(e)
                e2[i] = 0
                out[tuple(e2)] = c
        return MPoly(self.ring, out)

    def exact_div(self, divisor):
        """Quotient self/divisor in the Laurent ring, or None when the
        division is inexact.  Lead-term division in lex order after both
        operands are shifted free of monomial content (monomials are units
        here, so divisibility is up to a monomial shift)."""
        if self.is_zero():
            return self
        if divisor.is_zero():
            raise ZeroDivisionError("exact_div by zero")
        smins = self.min_exponents()
        dmins = divisor.min_exponents()
        a = self.shift([-m for m in smins]) if any(smins) else self
        f = divisor.shift([-m for m in dmins]) if any(dmins) else divisor
        dlead = max(f.terms)
        dlc = f.terms[dlead]
        if isinstance(dlc, CycElem):
            dlc_inv = dlc.field.inverse(dlc)
        else:
            dlc_inv = Fraction(1) / dlc
        rem = dict(a.terms)
        quot = {}
        zero = self.ring.coeffs.zero
        while rem:
            rlead = max(rem)
            e = tuple(x - y for x, y in zip(rlead, dlead))
            if any(x < 0 for x in e):
                return None
            c = rem[rlead] * dlc_inv
            quot[e] = c
            for fe, fc in f.terms.items():
                key = tuple(x + y for x, y in zip(e, fe))
                s = rem.get(key, zero) - c * fc
                if s == zero:
                    rem.pop(key, None)
                else:
                    rem[key] = s
        delta = [x - y for x, y in zip(smins, dmins)]
        out = MPoly(self.ring, quot)
        return out.shift(delta) if any(delta) else out

    def remap(self, var_map):
        """Monomial substitution: position -> (position', multiplier, sign_flip).

        Sends variable i to (var at position p)^(m) with the coefficient
        multiplied by (-1)^exponent when sign_flip is set.  Used for the
        hyperoctahedral action on variables; exact and allocation-light.
        """
        nvars = len(self.ring.vars)
        out = {}
        zero = self.ring.coeffs.zero
        for e, c in self.terms.items():
            e2 = [0] * nvars
            neg = False
            for i, k in enumerate(e):
                if k == 0:
                    continue
                p, mlt, flip = var_map[i]
                e2[p] += k * mlt
                if flip and (k % 2):
                    neg = not neg
            key = tuple(e2)
            v = -c if neg else c
            s = out.get(key, zero) + v
            if s == zero:
                out.pop(key, None)
            else:
                out[key] = s
        return MPoly(self.ring, out)

    def substitute(self, assignment, target_ring):
        """General substitution; values are MRat over target_ring.

        Variables absent from ``assignment`` must exist in the target ring
        and map to themselves.
        """
        values = []
        for v in self.ring.vars:
            if v in assignment:
                values.append(assignment[v].cast(target_ring))
            else:
                values.append(target_ring.var(v))
        out = target_ring.zero
        for e, c in self.terms.items():
            term = target_ring.const(_coerce_coeff(target_ring, c))
            for val, k in zip(values, e):
                if k:
                    term = term * val.pow(k)
            out = out + term
        return out

    def cast(self, ring):
        if ring.vars == self.ring.vars:
            return MPoly(ring, dict(self.terms))
        pos = []
        for i, v in enumerate(self.ring.vars):
            if v not in ring.index:
                if any(e[i] for e in self.terms):
                    raise ValueError("variable %s missing in target ring" % v)
                pos.append(None)
            else:
                pos.append(ring.index[v])
        n = len(ring.vars)
        out = {}
        for e, c in self.terms.items():
            e2 = [0] * n
            for i, k in enumerate(e):
                if k:
                    e2[pos[i]] = k
            out[tuple(e2)] = c
        return MPoly(ring, out)

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                "%s^%d" % (v, k) if k != 1 else v
                for v, k in zip(self.ring.vars, e) if k
            )
            cs = str(c)
            if isinstance(c, CycElem) and ("+" in cs or "-" in cs[1:]):
                cs = "(%s)" % cs
            bits.append(cs if not mono else ("%s*%s" % (cs, mono) if cs != "1" else mono))
        return " + ".join(bits)


def _coerce_coeff(ring, c):
    if isinstance(c, CycElem):
        return c
    return ring.coeffs.coerce(c)


class MRat:
    """Rational function num/den over a PolyRing.

    The denominator is kept as a multiset of normalized factors (monic in
    lex order, free of monomial content); products and sums merge factor
    multisets, and the numerator is opportunistically reduced by exact
    division against single factors.  No multivariate gcd is ever
    computed; equality is decided by cross-multiplication after shared
    factors are cancelled.
    """

    __slots__ = ("num", "facs", "_den")

    def __init__(self, num, den=None, _facs=None):
        ring = num.ring
        self._den = None
        if _facs is None:
            _facs = {}
            if den is not None and not (den is ring.one_poly
                                        or den == ring.one_poly):
                if den.is_zero():
                    raise ZeroDivisionError("zero denominator")
                num, _facs = _absorb_factor(num, {}, den, 1)
        if num.is_zero():
            self.num = num
            self.facs = {}
            return
        # opportunistic cancellation of whole factors into the numerator
        for f in list(_facs):
            while _facs.get(f, 0) > 0:
                q = num.exact_div(f)
                if q is None:
                    break
                num = q
                _facs[f] -= 1
            if _facs.get(f, 0) == 0:
                _facs.pop(f, None)
        self.num = num
        self.facs = _facs

    @property
    def den(self):
        if self._den is None:
            d = self.num.ring.one_poly
            for f, k in self.facs.items():
                for _ in range(k):
                    d = d * f
            self._den = d
        return self._den

    @property
    def ring(self):
        return self.num.ring

    def is_zero(self):
        return self.num.is_zero()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(self.ring.coeffs.coerce(other))
        if not isinstance(other, MRat):
            return NotImplemented
        if other.ring.vars != self.ring.vars:
            other = other.cast(self.ring)
        if self.num == other.num and self.facs == other.facs:
            return True
        mine, theirs = _cancel_common(self.facs, other.facs)
        a = self.num
        for f, k in theirs.items():
            for _ in range(k):
                a = a * f
        b = other.num
        for f, k in mine.items():
            for _ in range(k):
                b = b * f
        return a == b

    def __hash__(self):
        raise TypeError("MRat is unhashable (equality is cross-multiplicative)")

    def __add__(self, other):
        other = self._co(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.facs == other.facs:
            return MRat(self.num + other.num, _facs=dict(self.facs))
        mine, theirs = _cancel_common(self.facs, other.facs)
        a = self.num
        for f, k in theirs.items():
            for _ in range(k):
                a = a * f
        b = other.num
        for f, k in mine.items():
            for _ in range(k):
                b = b * f
        facs = dict(self.facs)
        for f, k in theirs.items():
            facs[f] = facs.get(f, 0) + k
        return MRat(a + b, _facs=facs)

    __radd__ = __add__

    def __neg__(self):
        return MRat(-self.num, _facs=dict(self.facs))

    def __sub__(self, other):
        return self + (-self._co(other))

    def __rsub__(self, other):
        return (-self) + self._co(other)

    def __mul__(self, other):
        other = self._co(other)
        if self.is_zero() or other.is_zero():
            return self.ring.zero
        facs = dict(self.facs)
        for f, k in other.facs.items():
            facs[f] = facs.get(f, 0) + k
        return MRat(self.num * other.num, _facs=facs)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._co(other)
        return self * other.inv()

    def __rtruediv__(self, other):
        return self._co(other) / self

    def inv(self):
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of the zero rational function")
        num = self.ring.one_poly
        for f, k in self.facs.items():
            for _ in range(k):
                num = num * f
        num, facs = _absorb_factor(num, {}, self.num, 1)
        return MRat(num, _facs=facs)

    def pow(self, k):
        if k == 0:
            return self.ring.one
        base = self if k > 0 else self.inv()
        out = base
        for _ in range(abs(k) - 1):
            out = out * base
        return out

    __pow__ = pow

    def _co(self, other):
        if isinstance(other, MRat):
            if other.ring.vars != self.ring.vars:
                return other.cast(self.ring)
            return other
        if isinstance(other, (int, Fraction, CycElem)):
            return self.ring.const(_coerce_coeff(self.ring, other))
        raise TypeError("cannot combine MRat with %r" % (other,))

    def remap(self, var_map):
        out = MRat(self.num.remap(var_map))
        for f, k in self.facs.items():
            g = f.remap(var_map)
            num2, facs2 = _absorb_factor(out.num, dict(out.facs), g, k)
            out = MRat(num2, _facs=facs2)
        return out

    def substitute(self, assignment, target_ring=None):
        ring = target_ring if target_ring is not None else self.ring
        out = self.num.substitute(assignment, ring)
        for f, k in self.facs.items():
            fv = f.substitute(assignment, ring)
            if fv.is_zero():
                raise ZeroDivisionError("substitution lands on the zero denominator")
            out = out / fv.pow(k)
        return out

    def cast(self, ring):
        if ring is self.ring:
            return self
        out = MRat(self.num.cast(ring))
        facs = {}
        for f, k in self.facs.items():
            g = f.cast(ring)
            facs[g] = facs.get(g, 0) + k
        return MRat(out.num, _facs=facs)

    def is_constant(self):
        zero = self.ring._zero_exp
        return not self.facs and set(self.num.terms) <= {zero}

    def __repr__(self):
        if not self.facs:
            return repr(self.num)
        num = repr(self.num)
        den = repr(self.den)
        if len(self.num.terms) > 1:
            num = "(%s)" % num
        if len(self.den.terms) > 1:
            den = "(%s)" % den
        return "%s / %s" % (num, den)


def _normalize_factor(f):
    """Scale a polynomial to a canonical factor: monomial content stripped,
    lex-leading coefficient one.  Returns (factor, monomial_delta, scalar)
    with original = scalar * monomial^delta * factor."""
    mins = f.min_exponents()
    if any(mins):
        f = f.shift([-m for m in mins])
    lead = f.terms[max(f.terms)]
    one = f.ring.coeffs.one
    if lead != one:
        if isinstance(lead, CycElem):
            inv = lead.field.inverse(lead)
        else:
            inv = Fraction(1) / lead
        f = f.scale(inv)
    else:
        inv = None
    return f, mins, lead if inv is not None else one


def _absorb_factor(num, facs, den_poly, mult):
    """Divide num by den_poly^mult, pushing monomial/scalar content into the
    numerator and recording the normalized factor."""
    ring = num.ring
    f, mins, lead = _normalize_factor(den_poly)
    if any(mins):
        num = num.shift([-m * mult for m in mins])
    if lead != ring.coeffs.one:
        if isinstance(lead, CycElem):
            inv = lead.field.inverse(lead)
        else:
            inv = Fraction(1) / lead
        for _ in range(mult):
            num = num.scale(inv)
    if f != ring.one_poly:
        facs[f] = facs.get(f, 0) + mult
    return num, facs


def _cancel_common(facs_a, facs_b):
    """Remove the shared part of two factor multisets; returns the reduced
    copies (a - common, b - common)."""
    a = dict(facs_a)
    b = dict(facs_b)
    for f in list(a):
        if f in b:
            c = min(a[f], b[f])
            a[f] -= c
            b[f] -= c
            if a[f] == 0:
                del a[f]
            if b[f] == 0:
                del b[f]
    return a, b


def _div_mpoly(a, b):
    return MRat(a, b)


# ---------------------------------------------------------------------------
# base scalar field
# ---------------------------------------------------------------------------

class BaseField:
    """The base field of scalars: Q(q), or Q(zeta_m) for q of order m.

    ``order=None`` gives generic q (a free variable of the scalar ring);
    a finite ``order=m`` replaces the group algebra convention C[q]/(q^m-1)
    with the cyclotomic *field* Q(q)/Phi_m(q), so that rational-function
    arithmetic stays over a field.
    """

    def __init__(self, order=None, extra_vars=(), q_value=None):
        if order is not None and order < 3:
            raise ValueError("finite order of q must be >= 3")
        if order is not None and q_value is not None:
            raise ValueError("finite order and numeric q are exclusive")
        self.order = order
        self.q_value = None if q_value is None else Fraction(q_value)
        if order is None:
            self.coeffs = RationalCoeffs
            head = () if q_value is not None else ("q",)
            self.scalar_vars = head + tuple(extra_vars)
        else:
            self.coeffs = CyclotomicField(order)
            self.scalar_vars = tuple(extra_vars)
        self.scalar_ring = PolyRing(self.scalar_vars, self)

    def ring(self, variables):
        """Ambient ring containing the scalar variables plus the given ones."""
        extra = tuple(v for v in variables if v not in self.scalar_ring.index)
        return PolyRing(self.scalar_vars + extra, self)

    def q(self, ring=None):
        ring = ring or self.scalar_ring
        if self.q_value is not None:
            return ring.const(self.coeffs.coerce(self.q_value))
        if self.order is None:
            return ring.var("q")
        return ring.const(self.coeffs.gen())

    def q_power(self, k, ring=None):
        return self.q(ring).pow(k)

    def scalar(self, x, ring=None):
        ring = ring or self.scalar_ring
        return ring.const(self.coeffs.coerce(x) if not isinstance(x, CycElem) else x)

    def minus_one(self, ring=None):
        return self.scalar(-1, ring)

    def parse(self, text, ring=None, symbols=()):
        """Parse scalar expressions like 'q^3', '-q^-1', '2/3*q^2', 'p1'.

        ``symbols`` lists variable names (beyond q) allowed to appear.
        """
        ring = ring or self.scalar_ring
        s = text.strip().replace(" ", "")
        if not s:
            raise ValueError("empty scalar expression")
        sign = 1
        while s and s[0] in "+-":
            if s[0] == "-":
                sign = -sign
            s = s[1:]
        out = self.scalar(sign, ring)
        for factor in s.split("*"):
            if not factor:
                raise ValueError("malformed scalar expression %r" % text)
            out = out * self._parse_factor(factor, ring, symbols)
        return out

    def _parse_factor(self, s, ring, symbols):
        num = "0123456789/"
        if all(ch in num for ch in s):
            return self.scalar(Fraction(s), ring)
        name, _, exp = s.partition("^")
        k = int(exp) if exp else 1
        if name == "q":
            return self.q_power(k, ring)
        if name in symbols or name in ring.index:
            return ring.var(name, k)
        raise ValueError("unknown symbol %r in scalar expression" % name)


# ---------------------------------------------------------------------------
# univariate views: Laurent order, denominators
# ---------------------------------------------------------------------------

def _root_multiplicity(poly, name, a):
    """Multiplicity of the root ``a`` (MRat, nonzero allowed 0 too) in poly.

    ``poly`` is an MPoly viewed as univariate in ``name`` with MRat
    coefficients over the remaining variables.
    """
    ring = poly.ring
    i = ring.index[name]
    mins = poly.min_exponents()
    if mins is None:
        raise ValueError("zero polynomial has no root multiplicity")
    if mins[i] < 0:
        e = [0] * len(ring.vars)
        e[i] = -mins[i]
        poly = poly.shift(e)
    a = a.cast(ring) if isinstance(a, MRat) else ring.const(ring.coeffs.coerce(a))
    if a.is_zero():
        return min(e[i] for e in poly.terms)
    # synthetic division by (X - a) while the remainder vanishes
    coeffs = {}
    for e, c in poly.terms.items():
        k = e[i]
        e2 = list(e)
        e2[i] = 0
        coeffs.setdefault(k, {})[tuple(e2)] = c
    deg = max(coeffs)
    ucoeffs = [MRat(MPoly(ring, coeffs.get(k, {})), ring.one_poly)
               for k in range(deg + 1)]
    mult = 0
    while True:
        # Horner: remainder = p(a), quotient coefficients accumulate
        quot = []
        acc = ring.zero
        for c in reversed(ucoeffs):
            acc = acc * a + c
            quot.append(acc)
        rem = quot.pop()
        quot.reverse()
        if not rem.is_zero() or not quot:
            return mult
        mult += 1
        ucoeffs = quot
        if len(ucoeffs) == 1 and ucoeffs[0].is_zero():
            return mult


def laurent_order_at(f, a, name=None):
    """Order of the rational function f at the point ``name = a``.

    Returns k with f = (X - a)^k * u, u regular and nonvanishing at a
    (negative k: pole of order -k).  For a = 0 the order is read off the
    Laurent expansion directly.
    """
    if f.is_zero():
        raise ValueError("the zero function has no Laurent order")
    ring = f.ring
    if name is None:
        candidates = [v for v in ring.vars if v not in ring.base.scalar_vars] \
            if ring.base is not None else list(ring.vars)
        if len(candidates) != 1:
            raise ValueError("ambiguous variable; pass name=")
        name = candidates[0]
    a_mr = a if isinstance(a, MRat) else ring.const(ring.coeffs.coerce(a))
    a_mr = a_mr.cast(ring)
    if a_mr.is_zero():
        i = ring.index[name]
        return min(e[i] for e in f.num.terms) - min(e[i] for e in f.den.terms)
    return (_root_multiplicity(f.num, name, a_mr)
            - _root_multiplicity(f.den, name, a_mr))


def ratfun_eq(a, b):
    """Exact equality of rational functions by cross-multiplication."""
    if isinstance(b, (int, Fraction)):
        return a == b
    if a.ring.vars != b.ring.vars:
        joint = a.ring.extend(b.ring.vars)
        a = a.cast(joint)
        b = b.cast(joint)
    return a == b


def regular_at_point(f, basepoint, trials=5, rng=None):
    """Probabilistic regularity of f at a point, by random line restriction.

    ``basepoint`` maps variable names to scalar MRat values; remaining
    variables are treated as scalars of the coefficient field.  Restricts f
    to ``trials`` random affine lines through the point and demands
    nonnegative Laurent order at the origin of each.  A witnessed pole is
    exact; absence of poles is probabilistic in the number of trials.
    """
    import random as _random
    rng = rng or _random.Random(0)
    ring = f.ring
    names = [v for v in ring.vars if v in basepoint]
    if not names:
        return True
    keep = tuple(v for v in ring.vars if v not in basepoint)
    target = PolyRing(("_t",) + keep, ring.base)
    t = target.var("_t")
    found_line = False
    for _ in range(trials * 4):
        assignment = {}
        for v in names:
            d = Fraction(rng.randint(1, 97), rng.randint(1, 13))
            if rng.random() < 0.5:
                d = -d
            assignment[v] = basepoint[v].cast(target) + target.const(
                target.coeffs.coerce(d)) * t
        try:
            g = f.substitute(assignment, target)
        except ZeroDivisionError:
            continue
        found_line = True
        if not g.is_zero():
            i = target.index["_t"]
            order = (min(e[i] for e in g.num.terms)
                     - min(e[i] for e in g.den.terms))
            if order < 0:
                return False
        trials -= 1
        if trials <= 0:
            return True
    if not found_line:
        raise ValueError("degenerate sampling: no valid line through basepoint")
    return True


# ---------------------------------------------------------------------------
# univariate polynomial view (coefficients are rational functions in the
# remaining variables); used for denominator extraction
# ---------------------------------------------------------------------------

class UPoly:
    """Polynomial in one distinguished variable with MRat coefficients."""

    def __init__(self, coeffs, ring, name):
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        self.coeffs = coeffs                     # ascending, MRat over ring
        self.ring = ring
        self.name = name

    @classmethod
    def from_mpoly(cls, poly, name):
        """View an MPoly as univariate in ``name`` (clearing any negative
        powers of that variable by a monomial shift)."""
        ring = poly.ring
        i = ring.index[name]
        mins = poly.min_exponents()
        if mins and mins[i] < 0:
            e = [0] * len(ring.vars)
            e[i] = -mins[i]
            poly = poly.shift(e)
        slices = {}
        for e, c in poly.terms.items():
            e2 = list(e)
            k = e2[i]
            e2[i] = 0
            slices.setdefault(k, {})[tuple(e2)] = c
        deg = max(slices) if slices else -1
        coeffs = [MRat(MPoly(ring, slices.get(k, {})), ring.one_poly)
                  for k in range(deg + 1)]
        return cls(coeffs, ring, name)

    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def lead(self):
        return self.coeffs[-1]

    def monic(self):
        if self.is_zero():
            return self
        inv = self.coeffs[-1].inv()
        return UPoly([c * inv for c in self.coeffs], self.ring, self.name)

    def __mul__(self, other):
        if self.is_zero() or other.is_zero():
            return UPoly([], self.ring, self.name)
        out = [self.ring.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return UPoly(out, self.ring, self.name)

    def divmod(self, other):
        if other.is_zero():
            raise ZeroDivisionError("univariate division by zero")
        rem = list(self.coeffs)
        dd = other.degree()
        lead_inv = other.lead().inv()
        quot = [self.ring.zero] * max(len(rem) - dd, 0)
        for k in range(len(rem) - 1, dd - 1, -1):
            c = rem[k]
            if c.is_zero():
                continue
            f = c * lead_inv
            quot[k - dd] = f
            for j, b in enumerate(other.coeffs):
                rem[k - dd + j] = rem[k - dd + j] - f * b
        while rem and rem[-1].is_zero():
            rem.pop()
        return (UPoly(quot, self.ring, self.name),
                UPoly(rem, self.ring, self.name))

    def gcd(self, other):
        a, b = self, other
        while not b.is_zero():
            a, b = b, a.divmod(b)[1]
        return a.monic() if not a.is_zero() else a

    def lcm(self, other):
        if self.is_zero() or other.is_zero():
            return UPoly([], self.ring, self.name)
        g = self.gcd(other)
        return (self * other).divmod(g)[0].monic()

    def eval(self, a):
        acc = self.ring.zero
        for c in reversed(self.coeffs):
            acc = acc * a + c
        return acc

    def root_multiplicity(self, a):
        mult = 0
        cur = self
        while not cur.is_zero() and cur.degree() >= 1:
            if not cur.eval(a).is_zero():
                return mult
            # deflate by (X - a)
            coeffs = []
            carry = self.ring.zero
            for c in reversed(cur.coeffs):
                carry = carry * a + c
                coeffs.append(carry)
            coeffs.pop()
            coeffs.reverse()
            cur = UPoly(coeffs, self.ring, self.name)
            mult += 1
        return mult

    def to_mrat(self):
        out = self.ring.zero
        x = self.ring.var(self.name)
        for k, c in enumerate(self.coeffs):
            out = out + c * x.pow(k)
        return out

    def __repr__(self):
        return "UPoly(%s; deg %d)" % (self.name, self.degree())


def entry_denominator(f, name):
    """Reduced denominator of the rational function f in the distinguished
    variable: den / gcd(num, den), monic in that variable."""
    num = UPoly.from_mpoly(f.num, name)
    den = UPoly.from_mpoly(f.den, name)
    g = num.gcd(den)
    if g.is_zero() or g.degree() == 0:
        return den.monic()
    return den.divmod(g)[0].monic()


# ---------------------------------------------------------------------------
# truncated power series
# ---------------------------------------------------------------------------

class TruncSeries:
    """Power series in one variable truncated at a fixed order D.

    Coefficients live in the base scalar field (MRat over the scalar ring,
    or plain Fractions).
    """

    def __init__(self, coeffs, D, var="t"):
        coeffs = list(coeffs)[: D + 1]
        coeffs += [_zero_like(coeffs)] * (D + 1 - len(coeffs))
        self.coeffs = coeffs
        self.D = D
        self.var = var

    @classmethod
    def from_pairs(cls, pairs, D, var="t"):
        coeffs = [Fraction(0)] * (D + 1)
        for k, c in pairs:
            if k <= D:
                coeffs[k] = c
        return cls(coeffs, D, var)

    def __eq__(self, other):
        return self.D == other.D and all(
            _ceq(a, b) for a, b in zip(self.coeffs, other.coeffs))

    def __add__(self, other):
        return TruncSeries([a + b for a, b in zip(self.coeffs, other.coeffs)],
                           self.D, self.var)

    def __neg__(self):
        return TruncSeries([-a for a in self.coeffs], self.D, self.var)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        D = self.D
        out = [_zero_like(self.coeffs)] * (D + 1)
        for i, a in enumerate(self.coeffs):
            if _is_zero_coeff(a):
                continue
            for j, b in enumerate(other.coeffs):
                if i + j > D:
                    break
                out[i + j] = out[i + j] + a * b
        return TruncSeries(out, D, self.var)

    def compose(self, other):
        """self(other(t)); requires other(0) = 0."""
        if not _is_zero_coeff(other.coeffs[0]):
            raise ValueError("composition needs vanishing constant term")
        D = self.D
        one = _one_like(self.coeffs)
        acc = TruncSeries([self.coeffs[0]] + [_zero_like(self.coeffs)] * D, D, self.var)
        power = TruncSeries([one] + [_zero_like(self.coeffs)] * D, D, self.var)
        for k in range(1, D + 1):
            power = power * other
            acc = acc + TruncSeries(
                [c * self.coeffs[k] for c in power.coeffs], D, self.var)
        return acc

    def identity_like(self):
        zero = _zero_like(self.coeffs)
        one = _one_like(self.coeffs)
        coeffs = [zero] * (self.D + 1)
        if self.D >= 1:
            coeffs[1] = one
        return TruncSeries(coeffs, self.D, self.var)

    def __repr__(self):
        bits = []
        for k, c in enumerate(self.coeffs):
            if _is_zero_coeff(c):
                continue
            if k == 0:
                bits.append(repr(c))
            else:
                bits.append("%s*%s^%d" % (c, self.var, k))
        return (" + ".join(bits) or "0") + " + O(%s^%d)" % (self.var, self.D + 1)


def _zero_like(coeffs):
    c = coeffs[0] if coeffs else Fraction(0)
    if isinstance(c, MRat):
        return c.ring.zero
    if isinstance(c, CycElem):
        return c.field.zero
    return Fraction(0)


def _one_like(coeffs):
    c = coeffs[0] if coeffs else Fraction(0)
    if isinstance(c, MRat):
        return c.ring.one
    if isinstance(c, CycElem):
        return c.field.one
    return Fraction(1)


def _is_zero_coeff(c):
    if isinstance(c, MRat):
        return c.is_zero()
    if isinstance(c, CycElem):
        return not bool(c)
    return c == 0


def _ceq(a, b):
    if isinstance(a, MRat) or isinstance(b, MRat):
        return a == b
    return a == b


def series_comp_inverse(f, D=None):
    """Compositional inverse g with f(g(t)) = t modulo t^(D+1).

    Requires f(0) = 0 and an invertible linear coefficient; solved
    triangularly, correcting one coefficient of g per order.
    """
    D = f.D if D is None else D
    if not _is_zero_coeff(f.coeffs[0]):
        raise ValueError("series must have zero constant term")
    f1 = f.coeffs[1]
    if _is_zero_coeff(f1):
        raise ValueError("linear coefficient must be invertible")
    if isinstance(f1, MRat):
        inv1 = f1.inv()
    elif isinstance(f1, CycElem):
        inv1 = f1.field.inverse(f1)
    else:
        inv1 = Fraction(1) / f1
    zero = _zero_like(f.coeffs)
    g = [zero] * (D + 1)
    g[1] = inv1
    for k in range(2, D + 1):
        gs = TruncSeries(g, D, f.var)
        h = f.compose(gs)
        defect = h.coeffs[k]
        g[k] = -(defect * inv1)
    return TruncSeries(g, D, f.var)
