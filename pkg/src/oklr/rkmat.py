"""Trigonometric R- and K-matrices on the vector representation, and the
exact consistency identities between them.

The R-matrix is the standard one on the N-dimensional vector
representation (one simple pole, at spectral ratio q^2); the K-matrices
are the explicit boundary matrices with parameters p0, p1 (poles at p1 and
-p0), in three variants: the even non-restrictable family, the
restrictable family, and its mu = 1 specialization with a single
parameter.

Identities are verified in an operator formalism where each operator
carries a matrix together with a signed permutation of the spectral
parameters; composition is

    (M1, w1) o (M2, w2) = (M1 * w1(M2), w1 w2),

with the right factor applied first (matrices are written in the frame of
the composite's output).  In terms of the one-variable displays, the
implemented braid/reflection identities instantiate the orientation in
which the operator acting on slots (k, k+1) is singular on the hyperplane
z_k = q^2 z_{k+1}; this is the orientation under which the framed spectral
lattice is stable under the crossing action (see schurweyl).
"""

from .exact import MRat, UPoly, entry_denominator, laurent_order_at
from .weylb import SignedPerm
from .reporting import Report

__all__ = [
    "RatMatrix", "ParamOperator", "rmat_fund", "kmat",
    "check_rk_identities", "denominator_and_poles",
    "rmat_denominator_roots", "kmat_denominator_roots",
]


class RatMatrix:
    """Sparse square matrix over rational functions, column-action
    convention: (M v)_r = sum_c M[r, c] v_c."""

    __slots__ = ("dim", "ring", "entries")

    def __init__(self, dim, ring, entries=None):
        self.dim = dim
        self.ring = ring
        self.entries = {}
        for k, f in (entries or {}).items():
            if not f.is_zero():
                self.entries[k] = f

    @classmethod
    def identity(cls, dim, ring):
        return cls(dim, ring, {(i, i): ring.one for i in range(dim)})

    @classmethod
    def zero(cls, dim, ring):
        return cls(dim, ring)

    def get(self, r, c):
        return self.entries.get((r, c), self.ring.zero)

    def __add__(self, other):
        out = dict(self.entries)
        for k, f in other.entries.items():
            s = out.get(k)
            s = f if s is None else s + f
            if s.is_zero():
                out.pop(k, None)
            else:
                out[k] = s
        return RatMatrix(self.dim, self.ring, out)

    def __neg__(self):
        return RatMatrix(self.dim, self.ring,
                         {k: -f for k, f in self.entries.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, RatMatrix):
            cols = {}
            for (r, c), f in other.entries.items():
                cols.setdefault(r, []).append((c, f))
            out = {}
            for (r, c), f in self.entries.items():
                for (c2, g) in cols.get(c, ()):
                    k = (r, c2)
                    v = f * g
                    if k in out:
                        s = out[k] + v
                        if s.is_zero():
                            del out[k]
                        else:
                            out[k] = s
                    elif not v.is_zero():
                        out[k] = v
            return RatMatrix(self.dim, self.ring, out)
        return self.scale(other)

    def scale(self, c):
        if not isinstance(c, MRat):
            c = self.ring.const(self.ring.coeffs.coerce(c))
        return RatMatrix(self.dim, self.ring,
                         {k: f * c for k, f in self.entries.items()})

    def __eq__(self, other):
        if not isinstance(other, RatMatrix) or self.dim != other.dim:
            return NotImplemented
        keys = set(self.entries) | set(other.entries)
        for k in keys:
            a = self.entries.get(k)
            b = other.entries.get(k)
            if a is None:
                if not b.is_zero():
                    return False
            elif b is None:
                if not a.is_zero():
                    return False
            elif a != b:
                return False
        return True

    def is_identity(self):
        return self == RatMatrix.identity(self.dim, self.ring)

    def map_entries(self, fn):
        return RatMatrix(self.dim, self.ring,
                         {k: fn(f) for k, f in self.entries.items()})

    def substitute(self, assignment, ring=None):
        ring = ring or self.ring
        return RatMatrix(self.dim, ring,
                         {k: f.substitute(assignment, ring)
                          for k, f in self.entries.items()})

    def act_perm(self, w, family):
        """Entrywise multiplicative action of a signed permutation on the
        spectral variables."""
        return RatMatrix(self.dim, self.ring,
                         {k: w.act_on_variables(f, family, "multiplicative")
                          for k, f in self.entries.items()})

    def dump(self):
        lines = []
        for (r, c) in sorted(self.entries):
            lines.append("entry[%d,%d] = %s" % (r, c, self.entries[(r, c)]))
        return "\n".join(lines)

    def __repr__(self):
        return "RatMatrix(%dx%d, %d nonzero)" % (self.dim, self.dim,
                                                 len(self.entries))


# ---------------------------------------------------------------------------
# the explicit matrices
# ---------------------------------------------------------------------------

def rmat_fund(N, base, ring=None, z="z", w="w"):
    """The unitary R-matrix on V (x) V, V the N-dimensional vector
    representation, as an N^2 x N^2 matrix in the spectral parameters
    (z, w):

        u_r (x) u_r -> u_r (x) u_r,
        u_r (x) u_s -> (1-q^2) w^[r>s] z^[r<s] / (w - q^2 z) u_r (x) u_s
                       + q (w - z) / (w - q^2 z) u_s (x) u_r   (r != s).

    Its only pole is simple, on w = q^2 z; the specialization w = z is the
    identity.
    """
    if N < 2:
        raise ValueError("need N >= 2")
    ring = ring or base.ring((z, w))
    q = base.q(ring)
    zz = ring.var(z)
    ww = ring.var(w)
    den = ww - q * q * zz
    ent = {}

    def idx(r, s):
        return (r - 1) * N + (s - 1)

    for r in range(1, N + 1):
        ent[(idx(r, r), idx(r, r))] = ring.one
        for s in range(1, N + 1):
            if r == s:
                continue
            stay = (ring.one - q * q) * (ww if r > s else zz) / den
            swap = q * (ww - zz) / den
            ent[(idx(r, s), idx(r, s))] = stay
            ent[(idx(s, r), idx(r, s))] = swap
    return RatMatrix(N * N, ring, ent)


KMAT_VARIANTS = ("nonrestrictable-even", "restrictable", "mu1")


def kmat(N, variant, base, ring=None, p0=None, p1=None, z="z"):
    """The boundary K-matrix on the N-dimensional vector representation.

    variant 'nonrestrictable-even' (N even): u_{N/2} fixed, u_N scaled by
    1 + (z - 1/z)/(p1 - z), and for the remaining r (with rbar = N - r)

        u_r -> [(p1/p0 - 1) + (p1 - 1/p0) z^{+-1}] / [(p1 - z)(1/p0 + 1/z)] u_r
               + (p1/p0)^[r<rbar] (z - 1/z) / [(p1 - z)(1/p0 + 1/z)] u_rbar.

    variant 'restrictable' (rbar = N + 1 - r): the same two-term formula,
    with the middle row (N odd) fixed.  variant 'mu1' is the restrictable
    matrix at p0 = p1 = p:

        u_r -> (1 - p^2) z^{+-1} / (z - p^2/z) u_r
               + p (z - 1/z) / (z - p^2/z) u_rbar.

    Parameters left as None stay symbolic (variables p0, p1, or p).
    All variants satisfy K(1) = id.
    """
    if variant not in KMAT_VARIANTS:
        raise ValueError("unknown variant %r" % variant)
    if variant == "nonrestrictable-even" and N % 2:
        raise ValueError("variant needs even N")
    pvars = ("p",) if variant == "mu1" else ("p0", "p1")
    if ring is None:
        ring = base.ring((z,) + tuple(
            v for v, val in zip(pvars, (p0, p1)) if val is None) if variant != "mu1"
            else ((z,) + (("p",) if p0 is None and p1 is None else ())))
    zz = ring.var(z)
    one = ring.one
    if variant == "mu1":
        if (p0 is None) != (p1 is None):
            raise ValueError("mu1 takes a single parameter")
        p = ring.var("p") if p0 is None else p0.cast(ring)
        p0v = p1v = p
    else:
        p0v = ring.var("p0") if p0 is None else p0.cast(ring)
        p1v = ring.var("p1") if p1 is None else p1.cast(ring)
    for pv, nm in ((p0v, "p0"), (p1v, "p1")):
        if pv == one or pv == -one:
            raise ValueError("%s = +-1 is excluded" % nm)

    ent = {}

    def rbar(r):
        return (N - r) if variant == "nonrestrictable-even" else (N + 1 - r)

    den = (p1v - zz) * (p0v.inv() + zz.inv())
    for r in range(1, N + 1):
        rb = rbar(r)
        if variant == "nonrestrictable-even":
            if 2 * r == N:
                ent[(r - 1, r - 1)] = one
                continue
            if r == N:
                ent[(r - 1, r - 1)] = one + (zz - zz.inv()) / (p1v - zz)
                continue
        if r == rb:
            ent[(r - 1, r - 1)] = one
            continue
        zpow = zz if r < rb else zz.inv()
        diag = ((p0v.inv() * p1v - one) + (p1v - p0v.inv()) * zpow) / den
        off = (p0v.inv() * p1v if r < rb else one) * (zz - zz.inv()) / den
        ent[(r - 1, r - 1)] = diag
        ent[(rb - 1, r - 1)] = off
    return RatMatrix(N, ring, ent)


# ---------------------------------------------------------------------------
# parameter-carrying operators
# ---------------------------------------------------------------------------

class ParamOperator:
    """A matrix together with a signed permutation of the spectral
    parameters z_1..z_n; composition composes matrices with parameter
    substitution: (M1, w1) o (M2, w2) = (M1 * w1(M2), w1 w2)."""

    __slots__ = ("mat", "perm", "family")

    def __init__(self, mat, perm, family):
        self.mat = mat
        self.perm = perm
        self.family = family

    def __matmul__(self, other):
        return ParamOperator(
            self.mat * other.mat.act_perm(self.perm, self.family),
            self.perm * other.perm, self.family)

    compose = __matmul__

    def __eq__(self, other):
        return self.perm == other.perm and self.mat == other.mat

    @classmethod
    def identity(cls, dim, ring, n, family):
        return cls(RatMatrix.identity(dim, ring), SignedPerm.identity(n),
                   family)

    def is_identity(self):
        return self.perm.is_identity() and self.mat.is_identity()

    def __repr__(self):
        return "ParamOperator(perm=%r, %r)" % (self.perm.img, self.mat)


def _slot_embed_pair(mat, N, n, k, dim_ring):
    """Embed an N^2 x N^2 matrix into slots (k, k+1) of V^(x n)."""
    dim = N ** n
    ent = {}
    rest = [i for i in range(n) if i not in (k - 1, k)]
    from itertools import product
    for (rr, cc), f in mat.entries.items():
        a, b = divmod(rr, N)
        c, d = divmod(cc, N)
        for other in product(range(N), repeat=n - 2):
            row = [0] * n
            col = [0] * n
            for pos, v in zip(rest, other):
                row[pos] = col[pos] = v
            row[k - 1], row[k] = a, b
            col[k - 1], col[k] = c, d
            ri = ci = 0
            for v in row:
                ri = ri * N + v
            for v in col:
                ci = ci * N + v
            ent[(ri, ci)] = f
    return RatMatrix(dim, dim_ring, ent)


def _slot_embed_first(mat, N, n, dim_ring):
    """Embed an N x N matrix into the first slot of V^(x n)."""
    dim = N ** n
    ent = {}
    rest_dim = N ** (n - 1)
    for (r, c), f in mat.entries.items():
        for tail in range(rest_dim):
            ent[(r * rest_dim + tail, c * rest_dim + tail)] = f
    return RatMatrix(dim, dim_ring, ent)


class OperatorFactory:
    """Builds the crossing/boundary operators on V^(x n) over the field of
    rational functions in z_1..z_n (and any symbolic parameters)."""

    def __init__(self, N, n, base, variant="mu1", p0=None, p1=None):
        self.N = N
        self.n = n
        self.base = base
        self.family = tuple("z%d" % l for l in range(1, n + 1))
        pvars = ()
        if variant == "mu1":
            if p0 is None:
                pvars = ("p",)
        else:
            pvars = tuple(v for v, val in (("p0", p0), ("p1", p1))
                          if val is None)
        self.ring = base.ring(pvars + self.family)
        self.variant = variant
        self._r2 = rmat_fund(N, base, base.ring(("z", "w")))
        self._k1 = kmat(N, variant, base, base.ring(("z",) + pvars),
                        p0=p0, p1=p1)

    def _subst_pair(self, k):
        """R-matrix with (z, w) -> (z_{k+1}, z_k): singular on
        z_k = q^2 z_{k+1}."""
        asn = {"z": self.ring.var(self.family[k]),
               "w": self.ring.var(self.family[k - 1])}
        return self._r2.substitute(asn, self.ring)

    def r_source(self, k):
        """Crossing matrix on slots (k, k+1) in the source frame."""
        return _slot_embed_pair(self._subst_pair(k), self.N, self.n, k,
                                self.ring)

    def k_source(self):
        """Boundary matrix on slot 1 in the source frame: K(1/z_1).

        The inverted argument pairs with the crossing orientation of
        r_source: together they satisfy the four-factor reflection
        identity (the opposite pairing satisfies it too; the mixed ones do
        not)."""
        asn = {"z": self.ring.var(self.family[0]).inv()}
        return _slot_embed_first(self._k1.substitute(asn, self.ring),
                                 self.N, self.n, self.ring)

    def r_op(self, k):
        """Crossing as a ParamOperator (output-frame matrix)."""
        sk = SignedPerm.gen(k, self.n)
        mat = self.r_source(k).act_perm(sk, self.family)
        return ParamOperator(mat, sk, self.family)

    def k_op(self):
        s0 = SignedPerm.gen(0, self.n)
        mat = self.k_source().act_perm(s0, self.family)
        return ParamOperator(mat, s0, self.family)

    def x_op(self, l):
        """Multiplication by z_l (l < 0 gives the inverse)."""
        v = self.ring.var(self.family[abs(l) - 1])
        if l < 0:
            v = v.inv()
        mat = RatMatrix.identity(self.N ** self.n, self.ring).scale(v)
        return ParamOperator(mat, SignedPerm.identity(self.n), self.family)

    def identity_op(self):
        return ParamOperator.identity(self.N ** self.n, self.ring, self.n,
                                      self.family)


def check_rk_identities(N, n, base, variant="mu1", p0=None, p1=None):
    """Exact verification of the consistency identities between the
    crossing and boundary operators on V^(x n):

      * parameter transport R o X_l = X_{s_k(l)} o R and K o X_1 = X_{-1} o K,
      * unitarity R o R = id and K o K = id,
      * the three-strand braid identity (n = 3),
      * the four-factor reflection identity K R K R = R K R K (n >= 2).

    Parameters left None are kept symbolic.  Returns a Report.
    """
    if n not in (2, 3):
        raise ValueError("identities are checked on 2 or 3 strands")
    rep = Report("R/K identities (N=%d, n=%d, %s)" % (N, n, variant))
    fac = OperatorFactory(N, n, base, variant=variant, p0=p0, p1=p1)
    ident = fac.identity_op()
    for k in range(1, n):
        r = fac.r_op(k)
        for l in (k, k + 1):
            lhs = r @ fac.x_op(l)
            tgt = k + 1 if l == k else k
            rhs = fac.x_op(tgt) @ r
            rep.check("crossing_transport", lhs == rhs, k=k, l=l)
        rep.check("crossing_unitarity", (r @ r) == ident, k=k)
    if n == 3:
        r1, r2 = fac.r_op(1), fac.r_op(2)
        rep.check("braid_identity",
                  (r1 @ r2 @ r1) == (r2 @ r1 @ r2))
    kop = fac.k_op()
    lhs = kop @ fac.x_op(1)
    rhs = fac.x_op(-1) @ kop
    rep.check("boundary_transport", lhs == rhs)
    rep.check("boundary_unitarity", (kop @ kop) == ident)
    r1 = fac.r_op(1)
    rep.check("reflection_identity",
              (kop @ r1 @ kop @ r1) == (r1 @ kop @ r1 @ kop))
    return rep


# ---------------------------------------------------------------------------
# denominators and pole orders
# ---------------------------------------------------------------------------

def denominator_and_poles(mat, var, points=()):
    """Least-degree monic polynomial d with d * mat polynomial in ``var``
    (the lcm of reduced entry denominators), plus the pole order of the
    matrix at each requested point (positive = pole)."""
    ring = mat.ring
    d = UPoly([ring.one], ring, var)
    for f in mat.entries.values():
        d = d.lcm(entry_denominator(f, var))
    orders = []
    for a in points:
        worst = 0
        for f in mat.entries.values():
            if f.is_zero():
                continue
            worst = min(worst, laurent_order_at(f, a, var))
        orders.append(-worst)
    return d, orders


def _roots_from_candidates(dpoly, candidates):
    roots = []
    total = 0
    for a in candidates:
        m = dpoly.root_multiplicity(a)
        roots += [a] * m
        total += m
    if total != dpoly.degree():
        raise ValueError("denominator has roots outside the candidate set")
    return roots


def rmat_denominator_roots(N, base):
    """Pole locations (in the spectral ratio) of the R-matrix: [q^2]."""
    ring = base.ring(("z", "w"))
    R = rmat_fund(N, base, ring)
    one = base.scalar(1, ring)
    Rz = R.substitute({"z": one}, ring)
    d, _ = denominator_and_poles(Rz, "w")
    cands = [base.q_power(j, ring) for j in range(-4, 5)]
    cands += [base.q_power(j, ring) * (-1) for j in range(-4, 5)]
    return [r.cast(base.scalar_ring) for r in _roots_from_candidates(d, cands)]


def kmat_denominator_roots(N, variant, p0=None, p1=None, base=None):
    """Pole locations of the K-matrix: [p1, -p0] (or [p, -p] at mu = 1);
    computed from the matrix, verified to exhaust the denominator."""
    if variant == "mu1":
        p = p0 if p0 is not None else p1
        ring = base.ring(("z",))
        K = kmat(N, variant, base, ring.extend(()), p0=p, p1=p)
        cands = [p.cast(K.ring), -(p.cast(K.ring))]
    else:
        ring = base.ring(("z",))
        K = kmat(N, variant, base, ring, p0=p0, p1=p1)
        cands = [p1.cast(K.ring), -(p0.cast(K.ring))]
    d, _ = denominator_and_poles(K, "z")
    sring = base.scalar_ring
    return [r.cast(sring) for r in _roots_from_candidates(d, cands)]
