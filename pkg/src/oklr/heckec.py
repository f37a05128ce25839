"""The affine Hecke algebra of type C_n, through its faithful polynomial
representation.

Generators act on Laurent polynomials in X_1..X_n by

    (T_k - q) f   = (q X_k - q^{-1} X_{k+1}) / (X_k - X_{k+1}) (s_k f - f),
    (T_0 - p_0) f = p_1^{-1} (X_1 + p_0)(X_1 - p_1) / (X_1^2 - 1) (s_0 f - f),

realized as elements of the multiplicative skew group ring, where the
intertwiners

    Phi_k = 1 + (X_k - X_{k+1}) / (q X_k - q^{-1} X_{k+1}) (T_k - q),
    Phi_0 = 1 + p_1 (X_1^2 - 1) / ((X_1 + p_0)(X_1 - p_1)) (T_0 - p_0)

collapse to the plain reflections.  Parameters stay symbolic unless
concrete scalars are supplied.  The finite type-B specialization is
checked directly on constant matrices.
"""

from .exact import MRat
from .weylb import SignedPerm
from .skewring import SkewAlgebra
from .rkmat import RatMatrix, _slot_embed_pair, _slot_embed_first
from .reporting import Report

__all__ = [
    "HeckeContext", "hecke_gen", "intertwiner", "verify_hecke_relations",
    "finite_typeB_check", "finite_r_matrix", "finite_k_matrix",
]


class HeckeContext:
    """n strands over the base field, with parameters p0, p1 left symbolic
    (None) or given as scalars; p0, p1 = +-1 are rejected when concrete."""

    def __init__(self, n, base, p0=None, p1=None, compositions=None,
                 theta=None):
        self.n = n
        self.base = base
        extra = tuple(nm for nm, v in (("p0", p0), ("p1", p1)) if v is None)
        self.skew = SkewAlgebra(base, n, "multiplicative",
                                compositions=compositions, theta=theta,
                                extra_vars=extra)
        ring = self.skew.ring
        self.p0 = ring.var("p0") if p0 is None else p0.cast(ring)
        self.p1 = ring.var("p1") if p1 is None else p1.cast(ring)
        for pv, nm in ((self.p0, "p0"), (self.p1, "p1")):
            if pv == ring.one or pv == -ring.one:
                raise ValueError("%s = +-1 is excluded" % nm)
        self.q = base.q(ring)

    def X(self, l):
        return self.skew.ring.var("X%d" % l)


def hecke_gen(ctx, kind, l=None):
    """T_0, T_k, or X_l as a skew-ring element (kind in {'T0','T','X'})."""
    alg = ctx.skew
    ring = alg.ring
    one = alg.one()
    if kind == "X":
        v = ring.var("X%d" % abs(l))
        if l < 0:
            v = v.inv()
        return alg.coeff(v)
    if kind == "T0" or (kind == "T" and l == 0):
        s0 = SignedPerm.gen(0, ctx.n)
        c = (ctx.p1.inv() * (ctx.X(1) + ctx.p0) * (ctx.X(1) - ctx.p1)
             / (ctx.X(1) * ctx.X(1) - ring.one))
        return (one.scale(ctx.p0) + alg.group(s0).scale(c)
                - one.scale(c))
    if kind == "T":
        sk = SignedPerm.gen(l, ctx.n)
        c = ((ctx.q * ctx.X(l) - ctx.q.inv() * ctx.X(l + 1))
             / (ctx.X(l) - ctx.X(l + 1)))
        return one.scale(ctx.q) + alg.group(sk).scale(c) - one.scale(c)
    raise ValueError("unknown generator kind %r" % kind)


def intertwiner(ctx, k):
    """Phi_k, built from the Hecke generator by the displayed formula; as a
    skew-ring element it equals the plain reflection."""
    alg = ctx.skew
    ring = alg.ring
    one = alg.one()
    if k == 0:
        T0 = hecke_gen(ctx, "T0")
        c = (ctx.p1 * (ctx.X(1) * ctx.X(1) - ring.one)
             / ((ctx.X(1) + ctx.p0) * (ctx.X(1) - ctx.p1)))
        return one + (T0 - one.scale(ctx.p0)).scale(c)
    Tk = hecke_gen(ctx, "T", k)
    c = ((ctx.X(k) - ctx.X(k + 1))
         / (ctx.q * ctx.X(k) - ctx.q.inv() * ctx.X(k + 1)))
    return one + (Tk - one.scale(ctx.q)).scale(c)


def verify_hecke_relations(ctx):
    """Every defining relation, checked as an exact identity in the skew
    ring (parameters symbolic unless specialized in the context)."""
    rep = Report("Hecke type-C relations (n=%d)" % ctx.n)
    n = ctx.n
    alg = ctx.skew
    one = alg.one()
    T = {k: hecke_gen(ctx, "T", k) if k else hecke_gen(ctx, "T0")
         for k in range(n)}
    X = {l: hecke_gen(ctx, "X", l) for l in range(1, n + 1)}
    Xi = {l: hecke_gen(ctx, "X", -l) for l in range(1, n + 1)}
    q, p0, p1 = ctx.q, ctx.p0, ctx.p1
    for k in range(1, n):
        lhs = (T[k] - one.scale(q)) * (T[k] + one.scale(q.inv()))
        rep.check("quadratic", lhs == alg.zero(), k=k)
    lhs = (T[0] - one.scale(p0)) * (T[0] + one.scale(p1.inv()))
    rep.check("quadratic_boundary", lhs == alg.zero())
    for k in range(1, n - 1):
        rep.check("braid", T[k] * T[k + 1] * T[k] == T[k + 1] * T[k] * T[k + 1],
                  k=k)
    if n >= 2:
        lhs = (T[0] * T[1]) * (T[0] * T[1])
        rhs = (T[1] * T[0]) * (T[1] * T[0])
        rep.check("braid_boundary", lhs == rhs)
    for k in range(n):
        for m in range(k + 2, n):
            if k == 0 or m > k + 1:
                rep.check("far_commutation", T[k] * T[m] == T[m] * T[k],
                          k=k, m=m)
    for l in range(1, n + 1):
        rep.check("laurent_inverse", X[l] * Xi[l] == one, l=l)
        for m in range(l + 1, n + 1):
            rep.check("laurent_commute", X[l] * X[m] == X[m] * X[l], l=l, m=m)
    for k in range(1, n):
        rep.check("mixed", T[k] * X[k] * T[k] == X[k + 1], k=k)
        for l in range(1, n + 1):
            if l not in (k, k + 1):
                rep.check("mixed_far", T[k] * X[l] == X[l] * T[k], k=k, l=l)
    rhs = X[1].scale(p0 * p1.inv()) + T[0].scale(p0 * p1.inv() - ctx.skew.ring.one)
    rep.check("mixed_boundary", T[0] * Xi[1] * T[0] == rhs)
    for l in range(2, n + 1):
        rep.check("mixed_boundary_far", T[0] * X[l] == X[l] * T[0], l=l)
    for k in range(n):
        phi = intertwiner(ctx, k)
        rep.check("intertwiner_is_reflection",
                  phi == alg.group(SignedPerm.gen(k, ctx.n)), k=k)
    return rep


def polynomial_lattice_preserved(ctx, samples=None):
    """The generators map Laurent-polynomial vectors to Laurent-polynomial
    vectors: the difference-quotient denominators divide exactly."""
    ring = ctx.skew.ring
    X1 = ctx.X(1)
    tests = samples or [ring.one, X1, X1 * X1, X1.inv()]
    if ctx.n >= 2:
        tests += [ctx.X(2), X1 * ctx.X(2).inv()]
    gens = [hecke_gen(ctx, "T0")] + [hecke_gen(ctx, "T", k)
                                     for k in range(1, ctx.n)]
    for g in gens:
        for f in tests:
            out = g.apply({None: f})
            for v in out.values():
                if v.facs:
                    red = v.num  # force check: all factors must be monomial
                    return False
    return True


# ---------------------------------------------------------------------------
# finite type B
# ---------------------------------------------------------------------------

def finite_r_matrix(N, base, ring=None):
    """The constant crossing on V (x) V: u_r (x) u_s -> u_s (x) u_r for
    r > s, adds (q - 1/q) u_r (x) u_s for r < s, scales by q on the
    diagonal."""
    ring = ring or base.ring(())
    q = base.q(ring)
    ent = {}

    def idx(r, s):
        return (r - 1) * N + (s - 1)

    for r in range(1, N + 1):
        for s in range(1, N + 1):
            if r == s:
                ent[(idx(r, r), idx(r, r))] = q
            else:
                ent[(idx(s, r), idx(r, s))] = ring.one
                if r < s:
                    ent[(idx(r, s), idx(r, s))] = q - q.inv()
    return RatMatrix(N * N, ring, ent)


def finite_k_matrix(N, base, ring=None, p=None):
    """The constant boundary matrix: u_r -> u_rbar (r < rbar), adds
    (p - 1/p) u_r for r > rbar, scales the middle by p; rbar = N + 1 - r."""
    if ring is None:
        ring = base.ring(("p",) if p is None else ())
    pv = ring.var("p") if p is None else p.cast(ring)
    ent = {}
    for r in range(1, N + 1):
        rb = N + 1 - r
        if r == rb:
            ent[(r - 1, r - 1)] = pv
        else:
            ent[(rb - 1, r - 1)] = ring.one
            if r > rb:
                ent[(r - 1, r - 1)] = pv - pv.inv()
    return RatMatrix(N, ring, ent)


def finite_typeB_check(N, n, base, p=None):
    """Assign the boundary matrix to T_0 and the crossing to T_k and check
    all finite type-B relations as exact N^n x N^n matrix identities."""
    rep = Report("finite type-B matrices (N=%d, n=%d)" % (N, n))
    ring = base.ring(("p",) if p is None else ())
    q = base.q(ring)
    pv = ring.var("p") if p is None else p.cast(ring)
    R2 = finite_r_matrix(N, base, ring)
    K1 = finite_k_matrix(N, base, ring, p=pv)
    dim = N ** n
    T = {0: _slot_embed_first(K1, N, n, ring)}
    for k in range(1, n):
        T[k] = _slot_embed_pair(R2, N, n, k, ring)
    ident = RatMatrix.identity(dim, ring)
    for k in range(1, n):
        lhs = (T[k] - ident.scale(q)) * (T[k] + ident.scale(q.inv()))
        rep.check("quadratic", lhs == RatMatrix.zero(dim, ring), k=k)
    lhs = (T[0] - ident.scale(pv)) * (T[0] + ident.scale(pv.inv()))
    rep.check("quadratic_boundary", lhs == RatMatrix.zero(dim, ring))
    for k in range(1, n - 1):
        rep.check("braid",
                  T[k] * T[k + 1] * T[k] == T[k + 1] * T[k] * T[k + 1], k=k)
    if n >= 2:
        rep.check("braid_boundary",
                  (T[0] * T[1]) * (T[0] * T[1])
                  == (T[1] * T[0]) * (T[1] * T[0]))
    for k in range(n):
        for m in range(k + 2, n):
            rep.check("far_commutation", T[k] * T[m] == T[m] * T[k], k=k, m=m)
    return rep
