"""The hyperoctahedral group and its actions.

W_n = (Z/2)^n x| S_n acts on the index set {-n..-1, 1..n}, on sequences of
quiver vertices (the extra generator applies the quiver involution to the
first entry), and on variables (multiplicatively, X_{-l} = X_l^{-1}, or
additively, x_{-l} = -x_l).
"""

from functools import reduce

__all__ = ["SignedPerm", "from_word", "act_on_sequence", "act_on_variables"]


class SignedPerm:
    """Signed permutation of {1..n}: a bijection w of {+-1..+-n} with
    w(-i) = -w(i), stored as the tuple (w(1), ..., w(n))."""

    __slots__ = ("img",)

    def __init__(self, img):
        self.img = tuple(img)
        if sorted(abs(v) for v in self.img) != list(range(1, len(self.img) + 1)):
            raise ValueError("not a signed permutation: %r" % (self.img,))

    @classmethod
    def identity(cls, n):
        return cls(range(1, n + 1))

    @classmethod
    def gen(cls, k, n):
        """Generator s_k: s_0 negates index 1, s_k (k >= 1) swaps k, k+1."""
        if not 0 <= k <= n - 1:
            raise IndexError("generator index %d out of range for n=%d" % (k, n))
        img = list(range(1, n + 1))
        if k == 0:
            img[0] = -1
        else:
            img[k - 1], img[k] = img[k], img[k - 1]
        return cls(img)

    @property
    def n(self):
        return len(self.img)

    def __call__(self, i):
        if i == 0 or abs(i) > self.n:
            raise IndexError("index %d out of range" % i)
        v = self.img[abs(i) - 1]
        return v if i > 0 else -v

    def __mul__(self, other):
        """Composition: (w1*w2)(i) = w1(w2(i)), w2 applied first."""
        return SignedPerm(self(other(i)) for i in range(1, self.n + 1))

    def inv(self):
        img = [0] * self.n
        for i in range(1, self.n + 1):
            v = self.img[i - 1]
            img[abs(v) - 1] = i if v > 0 else -i
        return SignedPerm(img)

    def is_identity(self):
        return all(self.img[i] == i + 1 for i in range(self.n))

    def __eq__(self, other):
        return isinstance(other, SignedPerm) and self.img == other.img

    def __hash__(self):
        return hash(self.img)

    def __repr__(self):
        return "SignedPerm%r" % (self.img,)

    # -- actions ------------------------------------------------------------

    def act_on_sequence(self, nu, theta=None):
        """Left action on sequences over the vertex set.

        (w . nu)_k = nu_{w^{-1}(k)}, with the involution theta applied when
        w^{-1}(k) is negative.  s_k swaps entries k, k+1; s_0 applies theta
        to the first entry.
        """
        if len(nu) != self.n:
            raise ValueError("sequence length must equal n")
        winv = self.inv()
        out = []
        for k in range(1, self.n + 1):
            j = winv(k)
            v = nu[abs(j) - 1]
            if j < 0:
                if theta is None:
                    raise ValueError("negative index needs an involution")
                v = theta(v)
            out.append(v)
        return tuple(out)

    def act_on_variables(self, f, family, convention):
        """Action on a rational function: w . X_l = X_{w(l)}.

        ``family`` lists the n variable names (X_1..X_n or x_1..x_n, in
        index order) inside f's ring.  ``convention`` is 'multiplicative'
        (X_{-l} = X_l^{-1}) or 'additive' (x_{-l} = -x_l).
        """
        if convention not in ("multiplicative", "additive"):
            raise ValueError("unknown convention %r" % convention)
        ring = f.ring
        var_map = []
        fam_pos = {name: l for l, name in enumerate(family, start=1)}
        for i, name in enumerate(ring.vars):
            l = fam_pos.get(name)
            if l is None:
                var_map.append((i, 1, False))
                continue
            v = self(l)
            p = ring.index[family[abs(v) - 1]]
            if v > 0:
                var_map.append((p, 1, False))
            elif convention == "multiplicative":
                var_map.append((p, -1, False))
            else:
                var_map.append((p, 1, True))
        return f.remap(var_map)


def from_word(word, n):
    """Product of generators, leftmost applied last: [a,b] -> s_a s_b."""
    gens = [SignedPerm.gen(k, n) for k in word]
    return reduce(lambda a, b: a * b, gens, SignedPerm.identity(n))


def act_on_sequence(w, nu, theta=None):
    return w.act_on_sequence(nu, theta)


def act_on_variables(w, f, family, convention="multiplicative"):
    return w.act_on_variables(f, family, convention)


def all_elements(n):
    """All 2^n n! elements of W_n (desk scale only)."""
    from itertools import permutations, product
    out = []
    for perm in permutations(range(1, n + 1)):
        for signs in product((1, -1), repeat=n):
            out.append(SignedPerm(s * v for s, v in zip(signs, perm)))
    return out
