"""Skew group ring of W_n over rational functions, with idempotent labels.

Elements are finite sums  sum_{nu, w} f_{nu,w} e(nu) w  with f rational in
x_1..x_n (additive convention) or X_1..X_n (multiplicative convention), nu
a composition label and w a signed permutation.  The product moves group
elements past coefficients and idempotents:

    (f e(nu) w) (g e(mu) w') = f * w(g) * delta_{nu, w.mu} e(nu) ww'.

Faithfulness of the polynomial representation justifies defining algebra
elements by these images; no rewriting system is used anywhere.
"""

from .exact import regular_at_point
from .weylb import SignedPerm

__all__ = ["SkewAlgebra", "SkewElement"]


class SkewAlgebra:
    """Ambient data shared by a family of skew elements.

    ``compositions`` is the tuple of allowed idempotent labels (tuples of
    vertex ids), or None for a trivial single label (used by the Hecke
    polynomial representation, where no idempotents are needed).
    ``theta`` maps vertex ids to vertex ids (needed for the s_0-action on
    labels when compositions are present).
    """

    def __init__(self, base, n, convention="additive", compositions=None,
                 theta=None, extra_vars=()):
        if convention not in ("additive", "multiplicative"):
            raise ValueError("unknown convention %r" % convention)
        self.base = base
        self.n = n
        self.convention = convention
        prefix = "x" if convention == "additive" else "X"
        self.family = tuple("%s%d" % (prefix, l) for l in range(1, n + 1))
        self.ring = base.ring(tuple(extra_vars) + self.family)
        self.compositions = None if compositions is None else tuple(
            tuple(nu) for nu in compositions)
        if self.compositions is not None and theta is None:
            raise ValueError("composition labels require an involution")
        self.theta = theta
        self._comp_set = None if self.compositions is None else set(self.compositions)

    def compatible(self, other):
        return (self.base is other.base and self.n == other.n
                and self.convention == other.convention
                and self.compositions == other.compositions)

    def act_nu(self, w, nu):
        if nu is None:
            return None
        return w.act_on_sequence(nu, self.theta)

    def act_coeff(self, w, f):
        return w.act_on_variables(f, self.family,
                                  "multiplicative" if self.convention == "multiplicative"
                                  else "additive")

    def labels(self):
        return (None,) if self.compositions is None else self.compositions

    # -- element builders ---------------------------------------------------

    def zero(self):
        return SkewElement(self, {})

    def element(self, terms):
        out = {}
        for (nu, w), f in terms.items():
            nu = None if nu is None else tuple(nu)
            if self._comp_set is not None and nu not in self._comp_set:
                raise ValueError("label %r outside the composition set" % (nu,))
            if f.is_zero():
                continue
            key = (nu, w)
            out[key] = out[key] + f if key in out else f
        return SkewElement(self, {k: f for k, f in out.items() if not f.is_zero()})

    def idem(self, nu):
        wid = SignedPerm.identity(self.n)
        return self.element({(nu, wid): self.ring.one})

    def one(self):
        wid = SignedPerm.identity(self.n)
        return self.element({(nu, wid): self.ring.one for nu in self.labels()})

    def group(self, w, nu=None):
        """The element e(nu) w, or sum_nu e(nu) w when nu is None."""
        if nu is not None:
            return self.element({(tuple(nu), w): self.ring.one})
        return self.element({(nu2, w): self.ring.one for nu2 in self.labels()})

    def var(self, l):
        """x_l (or X_l) times the identity."""
        name = self.family[l - 1]
        wid = SignedPerm.identity(self.n)
        v = self.ring.var(name)
        return self.element({(nu, wid): v for nu in self.labels()})

    def coeff(self, f, nu=None):
        """f e(nu) (diagonal coefficient), or f summed over all labels."""
        wid = SignedPerm.identity(self.n)
        if nu is not None:
            return self.element({(tuple(nu), wid): f})
        return self.element({(nu2, wid): f for nu2 in self.labels()})


class SkewElement:
    """Finite sum of terms f e(nu) w; immutable."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra, terms):
        self.algebra = algebra
        self.terms = terms

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for k, f in other.terms.items():
            if k in out:
                s = out[k] + f
                if s.is_zero():
                    del out[k]
                else:
                    out[k] = s
            else:
                out[k] = f
        return SkewElement(self.algebra, out)

    def __neg__(self):
        return SkewElement(self.algebra, {k: -f for k, f in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, SkewElement):
            return self.scale(other)
        self._check(other)
        alg = self.algebra
        out = {}
        for (nu, w), f in self.terms.items():
            for (mu, w2), g in other.terms.items():
                if nu is not None and alg.act_nu(w, mu) != nu:
                    continue
                key = (nu, w * w2)
                val = f * alg.act_coeff(w, g)
                if key in out:
                    s = out[key] + val
                    if s.is_zero():
                        del out[key]
                    else:
                        out[key] = s
                elif not val.is_zero():
                    out[key] = val
        return SkewElement(self.algebra, out)

    __rmul__ = __mul__

    def scale(self, c):
        """Multiply by a central coefficient (MRat over the ambient ring,
        a scalar, or an int/Fraction)."""
        ring = self.algebra.ring
        if not hasattr(c, "ring"):
            c = ring.const(ring.coeffs.coerce(c))
        else:
            c = c.cast(ring)
        if c.is_zero():
            return self.algebra.zero()
        return SkewElement(self.algebra,
                           {k: f * c for k, f in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, SkewElement):
            return NotImplemented
        if not self.algebra.compatible(other.algebra):
            return False
        keys = set(self.terms) | set(other.terms)
        zero = self.algebra.ring.zero
        for k in keys:
            if self.terms.get(k, zero) != other.terms.get(k, zero):
                return False
        return True

    def _check(self, other):
        if not self.algebra.compatible(other.algebra):
            raise ValueError("convention or label mismatch between skew elements")

    # -- polynomial representation -------------------------------------------

    def apply(self, vector):
        """Left action on a vector {nu: MRat}: the component at nu receives
        sum_w f_{nu,w} * w(v at w^{-1} nu)."""
        alg = self.algebra
        out = {}
        for (nu, w), f in self.terms.items():
            src = alg.act_nu(w.inv(), nu)
            v = vector.get(src)
            if v is None or v.is_zero():
                continue
            contrib = f * alg.act_coeff(w, v)
            if nu in out:
                out[nu] = out[nu] + contrib
            else:
                out[nu] = contrib
        return {nu: v for nu, v in out.items() if not v.is_zero()}

    def is_regular_at(self, basepoints, trials=5, rng=None):
        """Probabilistic regularity of every coefficient at its basepoint.

        ``basepoints`` maps each composition label to the tuple of scalar
        values (X_l = X(nu_l)).  Multiplicative convention only; a reported
        pole is exact, regularity is probabilistic in ``trials``.
        """
        if self.algebra.convention != "multiplicative":
            raise ValueError("regularity testing uses the multiplicative convention")
        for (nu, _w), f in self.terms.items():
            point = {name: val for name, val in zip(self.algebra.family,
                                                    basepoints[nu])}
            if not regular_at_point(f, point, trials=trials, rng=rng):
                return False
        return True

    def support(self):
        return set(self.terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for (nu, w) in sorted(self.terms, key=lambda k: (str(k[0]), k[1].img)):
            f = self.terms[(nu, w)]
            tag = "" if nu is None else " e%s" % (nu,)
            wtag = "" if w.is_identity() else " w%s" % (w.img,)
            bits.append("[%s]%s%s" % (f, tag, wtag))
        return " + ".join(bits)
