"""Enhanced quivers: vertex data, involution, framing, and their builders.

A quiver here is a finite vertex list with arrow multiplicities a_ij, a
contravariant involution theta, and a framing vector lam recording
K-matrix pole orders.  Builders cover the two families the library needs:
the parameter table attached to the Hecke-algebra comparison (vertices are
the scalars xi^{+-1} q^{2k}), and quivers derived from a datum of modules
with marked spectral values, where arrow multiplicities are pole orders of
R-matrix denominators and the framing comes from K-matrix poles.
"""

from fractions import Fraction
from itertools import permutations

from .exact import BaseField, MRat, laurent_order_at
from .reporting import Report

__all__ = [
    "EnhancedQuiver", "DimVector", "compositions", "generator_degree",
    "build_bkr_quiver", "JDatum", "quiver_from_jdatum", "typeA_fund_datum",
    "affine_d_datum", "load_jdatum", "export_dot",
]


class EnhancedQuiver:
    """Finite quiver with involution and framing.

    ``verts`` are hashable labels; ``xval`` optionally attaches the scalar
    X(i) to each vertex; ``tag`` attaches a module tag for display.
    ``jdatum_derived`` marks quivers built from module data, for which
    acyclicity is a theorem and is enforced by validate().
    """

    def __init__(self, verts, arrows, theta, lam, xval=None, tag=None,
                 base=None, jdatum_derived=False, notes=()):
        self.verts = tuple(verts)
        self.arrows = {k: int(v) for k, v in arrows.items() if v}
        self.theta_map = dict(theta)
        self.lam_map = {i: lam.get(i, 0) for i in self.verts}
        self.xval = dict(xval) if xval else {i: None for i in self.verts}
        self.tag = dict(tag) if tag else {i: "" for i in self.verts}
        self.base = base
        self.jdatum_derived = jdatum_derived
        self.notes = list(notes)

    def a(self, i, j):
        return self.arrows.get((i, j), 0)

    def abar(self, i, j):
        return self.a(i, j) + self.a(j, i)

    def theta(self, i):
        return self.theta_map[i]

    def lam(self, i):
        return self.lam_map.get(i, 0)

    def lam_theta(self, i):
        """The symmetrized framing lam(i) + lam(theta(i))."""
        return self.lam(i) + self.lam(self.theta(i))

    def is_fixed(self, i):
        return self.theta_map[i] == i

    def fixed_vertices(self):
        return tuple(i for i in self.verts if self.is_fixed(i))

    def x(self, i):
        return self.xval.get(i)

    def is_acyclic(self):
        indeg = {i: 0 for i in self.verts}
        for (i, j), m in self.arrows.items():
            if m:
                indeg[j] += 1
        queue = [i for i, d in indeg.items() if d == 0]
        seen = 0
        while queue:
            i = queue.pop()
            seen += 1
            for (a, b), m in self.arrows.items():
                if a == i and m:
                    indeg[b] -= 1
                    if indeg[b] == 0:
                        queue.append(b)
        return seen == len(self.verts)

    def validate(self):
        """Check the structural invariants; violations are data, not faults."""
        rep = Report("quiver validation")
        vset = set(self.verts)
        for i in self.verts:
            rep.check("no_loop", self.a(i, i) == 0, vertex=i)
        for i in self.verts:
            ti = self.theta_map.get(i)
            rep.check("theta_total", ti in vset, vertex=i)
            if ti in vset:
                rep.check("theta_involution", self.theta_map.get(ti) == i,
                          vertex=i)
        for i in self.verts:
            for j in self.verts:
                rep.check(
                    "theta_contravariant",
                    self.a(i, j) == self.a(self.theta(j), self.theta(i)),
                    src=i, dst=j)
        for i in self.verts:
            if self.is_fixed(i):
                rep.check("framing_zero_on_fixed", self.lam(i) == 0, vertex=i)
            if self.lam(i):
                rep.check("framing_one_sided", self.lam(self.theta(i)) == 0,
                          vertex=i)
        acyclic = self.is_acyclic()
        if self.jdatum_derived:
            rep.check("acyclic", acyclic)
        else:
            rep.note("acyclic", value=acyclic)
        for n in self.notes:
            rep.note("builder", detail=n)
        return rep

    def __repr__(self):
        return "EnhancedQuiver(%d vertices, %d arrows)" % (
            len(self.verts), sum(self.arrows.values()))


# ---------------------------------------------------------------------------
# dimension vectors and compositions
# ---------------------------------------------------------------------------

class DimVector:
    """Finitely supported map from vertices to nonnegative integers."""

    def __init__(self, data=()):
        self.data = {i: int(v) for i, v in dict(data).items() if v}
        if any(v < 0 for v in self.data.values()):
            raise ValueError("dimension vectors are nonnegative")

    @classmethod
    def unit(cls, i):
        return cls({i: 1})

    def __getitem__(self, i):
        return self.data.get(i, 0)

    def __add__(self, other):
        out = dict(self.data)
        for i, v in other.data.items():
            out[i] = out.get(i, 0) + v
        return DimVector(out)

    def __sub__(self, other):
        out = dict(self.data)
        for i, v in other.data.items():
            out[i] = out.get(i, 0) - v
        if any(v < 0 for v in out.values()):
            raise ValueError("difference is not a dimension vector")
        return DimVector(out)

    def __eq__(self, other):
        return isinstance(other, DimVector) and self.data == other.data

    def __le__(self, other):
        return all(other[i] >= v for i, v in self.data.items())

    def is_zero(self):
        return not self.data

    def norm(self):
        return sum(self.data.values())

    def support(self):
        return tuple(self.data)

    def theta(self, thetafn):
        return DimVector({thetafn(i): v for i, v in self.data.items()})

    def theta_double(self, thetafn):
        """The self-dual doubling i -> i + theta(i), summed over the vector."""
        return self + self.theta(thetafn)

    def is_selfdual(self, thetafn):
        return self == self.theta(thetafn)

    def evenness_ok(self, thetafn):
        return all(v % 2 == 0 for i, v in self.data.items() if thetafn(i) == i)

    def norm_theta(self, thetafn):
        if not self.is_selfdual(thetafn):
            raise ValueError("norm_theta needs a self-dual vector")
        if self.norm() % 2:
            raise ValueError("self-dual vector has even total size")
        return self.norm() // 2

    def __repr__(self):
        return "DimVector(%r)" % (self.data,)


def seq_dim(nu):
    return DimVector({}) if not nu else sum(
        (DimVector.unit(i) for i in nu), DimVector({}))


def seq_theta_dim(nu, thetafn):
    out = DimVector({})
    for i in nu:
        out = out + DimVector.unit(i) + DimVector.unit(thetafn(i))
    return out


def compositions(quiver, beta, isotropic=False):
    """All compositions of beta: sequences nu with sum nu_k = beta, or, in
    the isotropic kind, sum (nu_k + theta(nu_k)) = beta.

    For the isotropic kind beta must be self-dual with beta(i) even on
    theta-fixed vertices; the result is a single hyperoctahedral orbit.
    """
    theta = quiver.theta
    if not isotropic:
        letters = []
        for i in sorted(beta.support(), key=str):
            letters += [i] * beta[i]
        return sorted(set(permutations(letters)), key=str)
    if not beta.is_selfdual(theta):
        raise ValueError("isotropic compositions need a self-dual vector")
    if not beta.evenness_ok(theta):
        raise ValueError("beta(i) must be even on theta-fixed vertices")
    out = []

    def rec(remaining, prefix):
        if remaining.is_zero():
            out.append(tuple(prefix))
            return
        for i in sorted(set(quiver.verts), key=str):
            step = DimVector.unit(i) + DimVector.unit(theta(i))
            if step <= remaining:
                rec(remaining - step, prefix + [i])

    rec(beta, [])
    return sorted(set(out), key=str)


def generator_degree(quiver, kind, nu, k=None):
    """Degree of a generator on the idempotent e(nu).

    deg e = 0, deg x = 2; the crossing tau_k has degree -2 on equal
    neighbours and abar otherwise; tau_0 has degree -2 on a theta-fixed
    first letter and lam(nu_1) + lam(theta nu_1) otherwise.
    """
    if kind == "e":
        return 0
    if kind == "x":
        return 2
    if kind == "tau":
        if k is None or not 1 <= k <= len(nu) - 1:
            raise IndexError("crossing index out of range")
        i, j = nu[k - 1], nu[k]
        return -2 if i == j else quiver.abar(i, j)
    if kind == "tau0":
        i = nu[0]
        return -2 if quiver.is_fixed(i) else quiver.lam_theta(i)
    raise ValueError("unknown generator kind %r" % kind)


# ---------------------------------------------------------------------------
# the parameter-table quiver (Hecke comparison)
# ---------------------------------------------------------------------------

def _try_q_power(base, v, window):
    """Return (sign, j) with v = sign * q^j, or None."""
    for j in range(-window, window + 1):
        if v == base.q_power(j):
            return (1, j)
        if v == base.q_power(j) * (-1):
            return (-1, j)
    return None


def _scalar_label(base, v, window):
    sp = _try_q_power(base, v, window)
    if sp is None:
        return None
    s, j = sp
    body = "1" if j == 0 else ("q" if j == 1 else "q^%d" % j)
    return body if s == 1 else "-" + body


def build_bkr_quiver(base, xi, p0, p1, bound=2):
    """Quiver on the vertex set {xi^{+-1} q^{2k}}, truncated to |k| <= bound.

    theta(i) = i^{-1}, one arrow i -> q^2 i, framing lam(i) = [i = p1] +
    [i = -p0].  ``xi`` is a scalar or the string 'symbolic'.  Returns
    (quiver, row) where row records the classification of the full
    (untruncated) quiver by order of q and xi.
    """
    order = base.order
    symbolic = isinstance(xi, str) and xi == "symbolic"
    if symbolic:
        sring = base.ring(("xi",))
        xi_val = sring.var("xi")
    else:
        sring = base.scalar_ring if not isinstance(xi, MRat) else xi.ring
        xi_val = xi if isinstance(xi, MRat) else base.scalar(xi)
        sring = xi_val.ring
    p0 = p0.cast(sring) if isinstance(p0, MRat) else base.scalar(p0, sring)
    p1 = p1.cast(sring) if isinstance(p1, MRat) else base.scalar(p1, sring)
    one = sring.one
    for p, name in ((p0, "p0"), (p1, "p1")):
        if p == one or p == -one:
            raise ValueError("%s = +-1 is excluded" % name)

    q2 = base.q_power(2, sring)
    if order is None:
        ks = range(-bound, bound + 1)
    else:
        period = order // 2 if order % 2 == 0 else order   # order of q^2
        ks = range(min(period, 2 * bound + 1))
    raw = []
    for eps in (1, -1):
        for k in ks:
            raw.append((eps, k, xi_val.pow(eps) * q2.pow(k)))
    verts, values = [], []
    for eps, k, v in raw:
        if any(v == u for u in values):
            continue
        if symbolic:
            label = ("xi" if eps == 1 else "xi^-1", k)
        else:
            label = _scalar_label(base, v, 4 * bound + 8) or "xi^%d*q^%d" % (eps, 2 * k)
        verts.append(label)
        values.append(v)
    val = dict(zip(verts, values))

    def find(v):
        for lbl, u in val.items():
            if u == v:
                return lbl
        return None

    arrows = {}
    theta = {}
    lam = {}
    notes = []
    for i in verts:
        ti = find(val[i].inv())
        if ti is None:
            raise ValueError("truncation bound too small to close theta")
        theta[i] = ti
        lam[i] = (1 if val[i] == p1 else 0) + (1 if val[i] == -p0 else 0)
        j = find(q2 * val[i])
        if j is not None:
            arrows[(i, j)] = 1
        elif order is None:
            notes.append("arrow out of %r dropped by truncation" % (i,))
    row = _classify_bkr(base, xi_val, symbolic, order, val)
    quiver = EnhancedQuiver(
        sorted(verts, key=str), arrows, theta, lam,
        xval=val, tag={i: "fund" for i in verts}, base=base,
        jdatum_derived=False, notes=notes)
    return quiver, row


def _classify_bkr(base, xi_val, symbolic, order, val):
    m = None if order is None else (order // 2 if order % 2 == 0 else order)
    fixed = sorted((lbl for lbl, v in val.items() if v * v == v.ring.one),
                   key=str)
    if symbolic:
        in_qz = False
    else:
        window = 4 * (m or 16) + 8
        in_qz = _try_q_power(base, xi_val, window) is not None
    two = "" if in_qz else " x 2"
    if order is None:
        shape = "A_inf" + two
        row = (3 if not in_qz else (1 if fixed else 2))
    elif order % 2 == 0:
        shape = "A_%d^(1)%s" % (m, two)
        row = (6 if not in_qz else (4 if fixed else 5))
    else:
        shape = "A_%d^(1)%s" % (m, two)
        row = 8 if not in_qz else 7
    return {"row": row, "shape": shape, "order": order,
            "fixed_vertices": tuple(fixed)}


# ---------------------------------------------------------------------------
# quivers from module data
# ---------------------------------------------------------------------------

class JDatum:
    """A family of modules with marked spectral values and an involution.

    ``vertices``: list of (label, X-value MRat, module tag).
    ``theta``: dict label -> label.
    ``rden_roots``: dict frozenset-of-tags (or ordered 2-tuple) -> list of
    scalar roots (with multiplicity) of the R-matrix denominator between
    the two module types.
    ``kpole_roots``: dict label -> list of K-matrix pole locations for that
    vertex's module, or None when unknown.
    ``frame_theta_twist``: whether the framing at i reads the K-pole order
    at the involuted vertex (the convention under which the spectral
    lattice is stable under the algebra action).
    """

    def __init__(self, vertices, theta, rden_roots, kpole_roots=None,
                 frame_theta_twist=True, base=None, params=None):
        self.vertices = [(lbl, x, tag) for (lbl, x, tag) in vertices]
        self.theta = dict(theta)
        self.rden_roots = dict(rden_roots)
        self.kpole_roots = kpole_roots
        self.frame_theta_twist = frame_theta_twist
        self.base = base
        self.params = params or {}

    def roots_for(self, tag_i, tag_j):
        for key in ((tag_i, tag_j), frozenset((tag_i, tag_j))):
            if key in self.rden_roots:
                return self.rden_roots[key]
        raise KeyError("no denominator data for module pair (%s, %s)"
                       % (tag_i, tag_j))


def _multiplicity(roots, value):
    return sum(1 for r in roots if r == value)


def quiver_from_jdatum(datum):
    """Build the enhanced quiver of a module datum.

    Arrows i -> j count the pole order of the R-matrix denominator at
    X(j)/X(i); the framing reads K-matrix pole orders (at the involuted
    vertex by default, so that the completed tensor lattice is stable).
    Returns (quiver, report).
    """
    rep = Report("quiver from datum")
    labels = [lbl for lbl, _x, _t in datum.vertices]
    xv = {lbl: x for lbl, x, _t in datum.vertices}
    tag = {lbl: t for lbl, _x, t in datum.vertices}
    for lbl in labels:
        tl = datum.theta[lbl]
        if not (xv[tl] == xv[lbl].inv()):
            raise ValueError(
                "datum violates X(theta(i)) = X(i)^-1 at vertex %r" % (lbl,))
    arrows = {}
    for i in labels:
        for j in labels:
            if i == j and datum.theta[i] != i:
                pass
            roots = datum.roots_for(tag[i], tag[j])
            mult = _multiplicity(roots, xv[j] / xv[i])
            if i == j and mult:
                raise ValueError("real-module condition broken: pole at ratio 1")
            if mult:
                arrows[(i, j)] = mult
    lam = {}
    if datum.kpole_roots is None:
        lam = {lbl: 0 for lbl in labels}
        rep.note("framing", detail="no K-pole data; framing set to zero")
    else:
        for lbl in labels:
            src = datum.theta[lbl] if datum.frame_theta_twist else lbl
            roots = datum.kpole_roots[src]
            lam[lbl] = _multiplicity(roots, xv[src])
        rep.note("framing", detail="theta-twisted" if datum.frame_theta_twist
                 else "untwisted")
    quiver = EnhancedQuiver(labels, arrows, datum.theta, lam, xval=xv,
                            tag=tag, base=datum.base, jdatum_derived=True)
    rep.extend(quiver.validate())
    return quiver, rep


def typeA_fund_datum(base, bound=5, N=2, p0=None, p1=None,
                     variant="nonrestrictable-even", frame_theta_twist=True,
                     computed=True):
    """The datum of the vector representation placed at odd spectral points.

    Vertices are odd integers n with |n| <= bound, X(n) = q^n, theta(n) =
    -n.  R-denominator roots are computed from the explicit R-matrix (or
    taken as the known simple pole at q^2); K-poles come from the explicit
    K-matrix denominator when parameters are supplied.
    """
    labels = [n for n in range(-bound, bound + 1) if n % 2]
    verts = [(n, base.q_power(n), "fund") for n in labels]
    theta = {n: -n for n in labels}
    if computed:
        from . import rkmat
        rroots = rkmat.rmat_denominator_roots(N, base)
    else:
        rroots = [base.q_power(2)]
    rden = {frozenset(("fund",)): rroots, ("fund", "fund"): rroots}
    kroots = None
    if p1 is not None or p0 is not None:
        from . import rkmat
        kroots_list = rkmat.kmat_denominator_roots(
            N, variant, p0=p0, p1=p1, base=base)
        kroots = {n: kroots_list for n in labels}
    return JDatum(verts, theta, rden, kroots,
                  frame_theta_twist=frame_theta_twist, base=base,
                  params={"p0": p0, "p1": p1, "N": N, "variant": variant})


def affine_d_datum(base, N):
    """Tabulated datum for the affine-D family: the vector representation on
    a chain with two spin modules at each end.

    Denominator root lists are tabulated; K-pole data is unknown for the
    spin modules, so the framing is zero with a report note.
    """
    if N < 5:
        raise ValueError("need N >= 5")
    q = base.q_power
    minus = base.scalar(-1)

    def neg_q(k):
        return minus.pow(k) * q(k)

    labels = list(range(N + 1))
    xv = {}
    tags = {}
    for i in labels:
        if i in (0, 1):
            xv[i] = minus.pow(N) * q(-2 * (N - 2))
            tags[i] = "spin+" if i == 0 else "spin-"
        elif i in (N - 1, N):
            xv[i] = minus.pow(N) * q(2 * (N - 2))
            tags[i] = "spin-" if i == N - 1 else "spin+"
        else:
            xv[i] = q(2 * i - N)
            tags[i] = "vec"
    theta = {i: N - i for i in labels}
    rden = {
        frozenset(("vec",)): [q(2), q(2 * N - 2)],
        frozenset(("spin+",)): [neg_q(4 * s - 2) for s in range(1, N // 2 + 1)],
        frozenset(("spin-",)): [neg_q(4 * s - 2) for s in range(1, N // 2 + 1)],
        frozenset(("vec", "spin+")): [neg_q(N)],
        frozenset(("vec", "spin-")): [neg_q(N)],
        frozenset(("spin+", "spin-")): [neg_q(4 * s)
                                        for s in range(1, (N - 1) // 2 + 1)],
    }
    verts = [(i, xv[i], tags[i]) for i in labels]
    return JDatum(verts, theta, rden, kpole_roots=None, base=base)


def load_jdatum(path, base=None):
    """Read a datum from a TOML file; see configs/ for the schema."""
    try:
        import tomllib as toml
    except ImportError:                          # Python 3.10
        import tomli as toml
    with open(path, "rb") as fh:
        data = toml.load(fh)
    base = base or BaseField(order=data.get("order"))
    symbols = tuple(data.get("symbols", ()))
    sring = base.ring(symbols) if symbols else base.scalar_ring

    def parse(s):
        return base.parse(str(s), sring, symbols=symbols)

    verts = [(v["name"], parse(v["x"]), v.get("tag", "fund"))
             for v in data["vertex"]]
    theta = {}
    for pair in data.get("theta", []):
        a, b = pair
        theta[a] = b
        theta[b] = a
    for v, _x, _t in verts:
        theta.setdefault(v, v)
    rden = {}
    for entry in data.get("rden", []):
        key = frozenset(entry["tags"]) if len(set(entry["tags"])) > 1 \
            else frozenset((entry["tags"][0],))
        rden[key] = [parse(r) for r in entry["roots"]]
    kroots = None
    if "kpoles" in data:
        kroots = {v["name"]: [parse(r) for r in data["kpoles"].get(
            v.get("tag", "fund"), data["kpoles"].get("all", []))]
            for v in data["vertex"]}
    return JDatum(verts, theta, rden, kroots,
                  frame_theta_twist=data.get("frame_theta_twist", True),
                  base=base, params=data.get("params", {}))


def export_dot(quiver):
    """Deterministic DOT text: solid arrows, dashed involution pairs,
    labels '(tag, X(i))'."""
    lines = ["digraph quiver {"]
    for i in sorted(quiver.verts, key=str):
        x = quiver.x(i)
        label = "%s|(%s, %s)" % (i, quiver.tag.get(i, ""),
                                 "?" if x is None else repr(x))
        extra = ""
        if quiver.lam(i):
            extra = ", peripheries=2, framing=%d" % quiver.lam(i)
        lines.append('  "%s" [label="%s"%s];' % (i, label, extra))
    for (i, j) in sorted(quiver.arrows, key=lambda k: (str(k[0]), str(k[1]))):
        for _ in range(quiver.arrows[(i, j)]):
            lines.append('  "%s" -> "%s";' % (i, j))
    seen = set()
    for i in sorted(quiver.verts, key=str):
        j = quiver.theta(i)
        if i != j and (j, i) not in seen:
            seen.add((i, j))
            lines.append('  "%s" -> "%s" [dir=both, style=dashed];' % (i, j))
    lines.append("}")
    return "\n".join(lines)
