"""Sz(q) as a permutation group on its ovoid in PG(3,q).

Points are plain ints: 0 is the point at infinity, the affine point (x, y)
sits at index 1 + x*q + y, which sorts affine points by (x, y) bitmask.
The affine chart embeds as (1 : z : x : y) with z = xy + x^(theta+2) +
y^theta, and infinity is (0 : 1 : 0 : 0).

Group elements are words over four primitive moves

    T(a,b): (x,y) -> (x+a, y+b+a^theta x)      fixes infinity
    M(l):   (x,y) -> (l x, l^(theta+1) y)      fixes infinity and the origin
    W:      swaps infinity and the origin, else (x,y) -> (y/z, x/z)
    F(s):   (x,y) -> (x^(2^s), y^(2^s))        only in balanced conjugation pairs

applied right to left, so (g*h)(P) = g(h(P)).  When the ovoid is small the
full permutation table is materialized and composition runs on bytes; at
large q elements stay lazy words, periodically reduced to the canonical
translation*torus*W*translation form so words never grow past a few atoms.
Element identity is the fingerprint (images of points 0, 1, 2): only the
identity fixes three ovoid points, so three images pin an element down.
"""

from math import lcm

from .errors import (
    AllZeroCoordinatesError,
    OvoidNotPreservedError,
    TierExceededError,
    ZeroTorusParameterError,
)
from .gf2m import FieldParams

INFINITY = 0
ORIGIN = 1

# materialize permutations as bytes up to this many points (q=8 gives 65)
_MATERIALIZE_LIMIT = 256
# canonicalize lazy words longer than this
_SHORTEN_AT = 12


class Ovoid:
    """Point set of size q^2 + 1 with the index scheme described above."""

    def __init__(self, field: FieldParams):
        self.field = field
        self.q = field.q
        self.size = field.q * field.q + 1

    def affine_index(self, x: int, y: int) -> int:
        return 1 + (x << self.field.degree) + y

    def coords(self, p: int) -> tuple[int, int]:
        """Affine coordinates of a finite point."""
        if p == INFINITY:
            raise ValueError("the point at infinity has no affine coordinates")
        t = p - 1
        return t >> self.field.degree, t & (self.q - 1)

    def z_coord(self, x: int, y: int) -> int:
        """Third affine coordinate z = xy + x^(theta+2) + y^theta."""
        f = self.field
        xsq = f.mul(x, x)
        return f.mul(x, y) ^ f.mul(f.theta(x), xsq) ^ f.theta(y)

    def points(self) -> range:
        return range(self.size)

    def apply_atom(self, atom: tuple, p: int) -> int:
        f = self.field
        kind = atom[0]
        if kind == "W":
            if p == INFINITY:
                return ORIGIN
            if p == ORIGIN:
                return INFINITY
            x, y = self.coords(p)
            zi = f.inv(self.z_coord(x, y))
            return self.affine_index(f.mul(y, zi), f.mul(x, zi))
        if p == INFINITY:
            return INFINITY
        x, y = self.coords(p)
        if kind == "T":
            a, b = atom[1], atom[2]
            return self.affine_index(x ^ a, y ^ b ^ f.mul(f.theta(a), x))
        if kind == "M":
            lam = atom[1]
            return self.affine_index(f.mul(lam, x), f.mul(f.mul(f.theta(lam), lam), y))
        if kind == "F":
            s = atom[1]
            return self.affine_index(f.pow2[s][x], f.pow2[s][y])
        raise ValueError(f"unknown atom kind {kind!r}")


def projective_membership(field: FieldParams, coords: tuple[int, int, int, int]) -> bool:
    """Whether the projective point (X0 : X1 : X2 : X3) lies on the ovoid.

    The chart is (X0 : X1 : X2 : X3) = (1 : z : x : y) when X0 != 0.
    """
    x0, x1, x2, x3 = coords
    if x0 == 0 and x1 == 0 and x2 == 0 and x3 == 0:
        raise AllZeroCoordinatesError("projective point needs a nonzero coordinate")
    if x0 == 0:
        return x2 == 0 and x3 == 0
    ov = Ovoid(field)
    i = field.inv(x0)
    z, x, y = field.mul(x1, i), field.mul(x2, i), field.mul(x3, i)
    return z == ov.z_coord(x, y)


def _atom_inverse(field: FieldParams, atom: tuple) -> tuple:
    kind = atom[0]
    if kind == "T":
        a, b = atom[1], atom[2]
        return ("T", a, b ^ field.mul(field.theta(a), a))
    if kind == "M":
        return ("M", field.inv(atom[1]))
    if kind == "W":
        return atom
    if kind == "F":
        return ("F", (-atom[1]) % field.degree)
    raise ValueError(f"unknown atom kind {kind!r}")


def _compose_perm(outer, inner):
    """Permutation of the product: result[p] = outer[inner[p]]."""
    if isinstance(inner, bytes):
        return inner.translate(outer)
    return tuple(outer[v] for v in inner)


def _invert_perm(perm):
    out = [0] * len(perm)
    for i, v in enumerate(perm):
        out[v] = i
    return bytes(out) if isinstance(perm, bytes) else tuple(out)


class GroupElement:
    """One element, backed by a word, a permutation table, or both.

    When both backings exist they agree on every point; equality and hashing
    go through the three-point fingerprint.
    """

    __slots__ = ("group", "word", "perm", "_fp")

    def __init__(self, group: "SuzukiGroup", word: tuple | None = None, perm=None):
        if word is None and perm is None:
            raise ValueError("element needs a word or a permutation")
        self.group = group
        self.word = word
        if perm is None and group.materialized:
            perm = group._materialize_word(word)
        self.perm = perm
        self._fp = None

    def apply(self, p: int) -> int:
        if self.perm is not None:
            return self.perm[p]
        ov = self.group.ovoid
        for atom in reversed(self.word):
            p = ov.apply_atom(atom, p)
        return p

    @property
    def fingerprint(self) -> tuple[int, int, int]:
        if self._fp is None:
            self._fp = (self.apply(0), self.apply(1), self.apply(2))
        return self._fp

    def is_identity(self) -> bool:
        return self.fingerprint == (0, 1, 2)

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        word = None
        if self.word is not None and other.word is not None:
            word = self.word + other.word
        perm = None
        if self.perm is not None and other.perm is not None:
            perm = _compose_perm(self.perm, other.perm)
        out = GroupElement(self.group, word=word, perm=perm)
        if out.perm is None and len(out.word) > _SHORTEN_AT:
            out = out.canonicalized()
        return out

    def inverse(self) -> "GroupElement":
        f = self.group.field
        word = None
        if self.word is not None:
            word = tuple(_atom_inverse(f, a) for a in reversed(self.word))
        perm = _invert_perm(self.perm) if self.perm is not None else None
        out = GroupElement(self.group, word=word, perm=perm)
        if out.perm is None and len(out.word) > _SHORTEN_AT:
            out = out.canonicalized()
        return out

    def conjugated_by(self, h: "GroupElement") -> "GroupElement":
        """h * self * h^-1."""
        return h * self * h.inverse()

    def __pow__(self, n: int) -> "GroupElement":
        if n < 0:
            return self.inverse() ** (-n)
        out = self.group.identity()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def order(self) -> int:
        """Element order, as the lcm of the three base-point cycle lengths.

        Valid because only the identity fixes three points of the ovoid.
        """
        n = 1
        for p0 in (0, 1, 2):
            c = 1
            p = self.apply(p0)
            while p != p0:
                p = self.apply(p)
                c += 1
            n = lcm(n, c)
        return n

    def fixed_points(self) -> list[int]:
        """Full scan; meant for small ovoids."""
        return [p for p in self.group.ovoid.points() if self.apply(p) == p]

    def canonical_word(self) -> tuple:
        """Factor the action as translation * torus * W * translation.

        An element fixing infinity is T(a,b) * M(l); anything else is
        T * M * W * T.  The factors are read off the images of infinity,
        the origin and (1,1), then the rebuilt word is cross-checked on
        those probes, so a non-member action cannot slip through.
        """
        grp = self.group
        ov = grp.ovoid
        f = grp.field
        one_one = ov.affine_index(1, 1)
        top = self.apply(INFINITY)
        borel = top == INFINITY
        if borel:
            head: tuple = ()
            rest_o, rest_1 = self.apply(ORIGIN), self.apply(one_one)
        else:
            xa, ya = ov.coords(top)
            head = (("T", xa, ya),) if top != ORIGIN else ()
            # peel g = T1 * W * k and read k on the probes
            undo = (("W",), _atom_inverse(f, ("T", xa, ya))) if head else (("W",),)
            rest_o = self._apply_atoms(undo, self.apply(ORIGIN))
            rest_1 = self._apply_atoms(undo, self.apply(one_one))
        if rest_o == INFINITY or rest_1 == INFINITY:
            raise OvoidNotPreservedError("factorization probe escaped the affine chart")
        a, b = ov.coords(rest_o)
        u, _ = ov.coords(rest_1)
        lam = u ^ a
        if lam == 0:
            raise OvoidNotPreservedError("degenerate torus factor; not a group action")
        tail = []
        if borel:
            if a or b:
                tail.append(("T", a, b))
            if lam != 1:
                tail.append(("M", lam))
        else:
            # g = T1 * W * T(a,b) * M(lam) rewritten as T1 * M(1/lam) * W * T(c,d)
            li = f.inv(lam)
            if li != 1:
                tail.append(("M", li))
            tail.append(("W",))
            c = f.mul(li, a)
            d = f.mul(f.inv(f.mul(f.theta(lam), lam)), b)
            if c or d:
                tail.append(("T", c, d))
        word = head + tuple(tail)
        for probe in (INFINITY, ORIGIN, 2, one_one):
            img = probe
            for atom in reversed(word):
                img = ov.apply_atom(atom, img)
            if img != self.apply(probe):
                raise OvoidNotPreservedError("canonical factorization mismatch")
        return word

    def canonicalized(self) -> "GroupElement":
        out = GroupElement(self.group, word=self.canonical_word(), perm=self.perm)
        out._fp = self._fp
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, GroupElement) and self.fingerprint == other.fingerprint

    def __hash__(self) -> int:
        return hash(self.fingerprint)

    def _apply_atoms(self, atoms: tuple, p: int) -> int:
        ov = self.group.ovoid
        for atom in reversed(atoms):
            p = ov.apply_atom(atom, p)
        return p

    def __repr__(self) -> str:
        return f"GroupElement(fp={self.fingerprint})"


class SuzukiGroup:
    """Context for Sz(q) on its ovoid: generators, transporters, enumeration."""

    def __init__(self, field: FieldParams, full_threshold: int = 10**6):
        self.field = field
        self.ovoid = Ovoid(field)
        q = field.q
        self.q = q
        self.alpha = q + field.r + 1
        self.beta = q - field.r + 1
        self.order = (q * q + 1) * q * q * (q - 1)
        self.full_threshold = full_threshold
        self.materialized = self.ovoid.size <= _MATERIALIZE_LIMIT
        self._table: "GroupTable | None" = None
        self._w_checked = False

    def _materialize_word(self, word: tuple):
        ov = self.ovoid
        vals = []
        for p in ov.points():
            for atom in reversed(word):
                p = ov.apply_atom(atom, p)
            vals.append(p)
        if len(set(vals)) != ov.size:
            raise OvoidNotPreservedError("word does not permute the ovoid")
        if ov.size <= 256:
            # identity tail pads to a full translate table and keeps perms canonical
            return bytes(vals) + bytes(range(ov.size, 256))
        return tuple(vals)

    def identity(self) -> GroupElement:
        return GroupElement(self, word=())

    def translation(self, a: int, b: int) -> GroupElement:
        q = self.q
        if not (0 <= a < q and 0 <= b < q):
            raise ValueError(f"translation parameters out of range: ({a}, {b})")
        word = (("T", a, b),) if (a or b) else ()
        return GroupElement(self, word=word)

    def torus(self, lam: int) -> GroupElement:
        if lam == 0:
            raise ZeroTorusParameterError("torus parameter must be nonzero")
        if not lam < self.q:
            raise ValueError(f"torus parameter out of range: {lam}")
        word = (("M", lam),) if lam != 1 else ()
        return GroupElement(self, word=word)

    def w(self) -> GroupElement:
        if not self._w_checked:
            self._verify_w()
            self._w_checked = True
        return GroupElement(self, word=(("W",),))

    def _verify_w(self) -> None:
        """Check on sample points that W inverts the z coordinate."""
        ov, f = self.ovoid, self.field
        sample = range(2, min(ov.size, 130))
        for p in sample:
            x, y = ov.coords(p)
            z = ov.z_coord(x, y)
            zi = f.inv(z)
            nx, ny = f.mul(y, zi), f.mul(x, zi)
            if ov.z_coord(nx, ny) != zi:
                raise OvoidNotPreservedError("W image leaves the ovoid")

    def from_word(self, word: tuple) -> GroupElement:
        return GroupElement(self, word=tuple(word))

    def generators(self) -> list[GroupElement]:
        """Standard generators in canonical order: translations, torus, W."""
        q = self.q
        gens = [self.translation(a, b) for a in range(q) for b in range(q) if a or b]
        gens += [self.torus(lam) for lam in range(2, q)]
        gens.append(self.w())
        return gens

    def move_to_point(self, p: int) -> GroupElement:
        """An element sending infinity to p."""
        if p == INFINITY:
            return self.identity()
        x, y = self.ovoid.coords(p)
        return self.translation(x, y) * self.w()

    def central_involution(self, b: int) -> GroupElement:
        """T(0, b), an involution fixing only infinity (b nonzero)."""
        if b == 0:
            raise ValueError("T(0, 0) is the identity, not an involution")
        return self.translation(0, b)

    def involutions_fixing(self, p: int) -> list[GroupElement]:
        """All q-1 involutions whose unique fixed point is p, in canonical order."""
        h = self.move_to_point(p)
        hi = h.inverse()
        out = []
        for b in range(1, self.q):
            g = (h * self.central_involution(b) * hi).canonicalized()
            out.append(g)
        return out

    def _pair_to_standard(self, p: int, s: int) -> GroupElement:
        """An element mapping (p, s) to (infinity, origin)."""
        if p == s:
            raise ValueError("transporter needs two distinct points")
        u = self.move_to_point(p).inverse()
        sp = u.apply(s)
        x, y = self.ovoid.coords(sp)
        f = self.field
        t = self.translation(x, y ^ f.mul(f.theta(x), x))
        return t * u

    def pair_transporter(self, p1: int, q1: int, p2: int, q2: int) -> GroupElement:
        """An element g with g(p1) = p2 and g(q1) = q2; the action is 2-transitive."""
        u1 = self._pair_to_standard(p1, q1)
        u2 = self._pair_to_standard(p2, q2)
        g = (u2.inverse() * u1).canonicalized()
        if g.apply(p1) != p2 or g.apply(q1) != q2:
            raise OvoidNotPreservedError("transporter failed its defining property")
        return g

    def conjugate_involutions(
        self,
        u: GroupElement,
        v: GroupElement,
        fix_u: int | None = None,
        fix_v: int | None = None,
    ) -> GroupElement:
        """A c with c u c^-1 = v, built from the fixed points of u and v.

        Involutions at infinity are the T(0,b), and the torus acts simply
        transitively on them because l -> l^(theta+1) is a bijection, so a
        conjugator always exists and needs no search.
        """
        if fix_u is None:
            fix_u = self._only_fixed_point(u)
        if fix_v is None:
            fix_v = self._only_fixed_point(v)
        su = self.move_to_point(fix_u).inverse()
        sv = self.move_to_point(fix_v).inverse()
        bu = self.ovoid.coords((su * u * su.inverse()).apply(ORIGIN))[1]
        bv = self.ovoid.coords((sv * v * sv.inverse()).apply(ORIGIN))[1]
        f = self.field
        mu = f.div(bv, bu)
        s_exp = pow(f.r + 1, -1, f.q - 1)
        lam = f.pow(mu, s_exp)
        c = (sv.inverse() * self.torus(lam) * su).canonicalized()
        got = c * u * c.inverse()
        if got.fingerprint != v.fingerprint:
            raise OvoidNotPreservedError("involution conjugator failed")
        return c

    def _only_fixed_point(self, g: GroupElement) -> int:
        for p in self.ovoid.points():
            if g.apply(p) == p:
                return p
        raise ValueError("element has no fixed point")

    def enumerate(self) -> "GroupTable":
        """Materialize the whole group; gated by the size threshold."""
        if self._table is None:
            if self.order > self.full_threshold:
                raise TierExceededError(
                    f"group order {self.order} exceeds the full-tier threshold "
                    f"{self.full_threshold}",
                    order=self.order,
                )
            self._table = GroupTable(self)
        return self._table


class GroupTable:
    """Every element of the group, in deterministic BFS-by-fingerprint order.

    Layer k holds the elements of word length k over the standard generators;
    inside a layer elements sort by their permutation (equivalently by
    fingerprint, which is its first three entries).
    """

    def __init__(self, group: SuzukiGroup):
        self.group = group
        gens = []
        for g in group.generators():
            gens.append(g.perm if g.perm is not None else group._materialize_word(g.word))
        ident = self._identity_perm()
        index = {ident: 0}
        perms = [ident]
        frontier = [ident]
        cap = group.order
        while frontier:
            layer = set()
            for p in frontier:
                for s in gens:
                    h = _compose_perm(p, s)
                    if h not in index and h not in layer:
                        layer.add(h)
            frontier = sorted(layer)
            for h in frontier:
                index[h] = len(perms)
                perms.append(h)
            if len(perms) > cap:
                raise OvoidNotPreservedError(
                    f"closure exceeded the expected order {cap}; bad generator action"
                )
        if len(perms) != cap:
            raise OvoidNotPreservedError(
                f"closure has {len(perms)} elements, expected {cap}"
            )
        self.perms = perms
        self.index = index
        self._orders: list[int] | None = None
        self._class_ids: list[int] | None = None
        self._class_reps: list[int] | None = None

    def _identity_perm(self):
        n = self.group.ovoid.size
        return bytes(range(256)) if n <= 256 else tuple(range(n))

    def __len__(self) -> int:
        return len(self.perms)

    def element(self, i: int) -> GroupElement:
        return GroupElement(self.group, perm=self.perms[i])

    def index_of(self, g) -> int:
        perm = g.perm if isinstance(g, GroupElement) else g
        if perm is None:
            perm = self.group._materialize_word(g.word)
        return self.index[perm]

    def product_index(self, i: int, j: int) -> int:
        return self.index[_compose_perm(self.perms[i], self.perms[j])]

    def inverse_index(self, i: int) -> int:
        return self.index[_invert_perm(self.perms[i])]

    def orders(self) -> list[int]:
        if self._orders is None:
            out = []
            for perm in self.perms:
                n = 1
                for p0 in (0, 1, 2):
                    c = 1
                    p = perm[p0]
                    while p != p0:
                        p = perm[p]
                        c += 1
                    n = lcm(n, c)
                out.append(n)
            self._orders = out
        return self._orders

    def involution_indices(self) -> list[int]:
        return [i for i, n in enumerate(self.orders()) if n == 2]

    def _conjugation_generators(self):
        g = self.group
        base = [g.translation(1, 0), g.translation(0, 1), g.torus(g.field.generator), g.w()]
        return [(x.perm, x.inverse().perm) for x in base]

    def conjugacy_class_ids(self) -> list[int]:
        """Partition by conjugacy via orbit sweeps; representative = least index."""
        if self._class_ids is None:
            n = len(self.perms)
            ids = [-1] * n
            reps = []
            pairs = self._conjugation_generators()
            for i in range(n):
                if ids[i] != -1:
                    continue
                cid = len(reps)
                reps.append(i)
                ids[i] = cid
                stack = [self.perms[i]]
                while stack:
                    pj = stack.pop()
                    for s, si in pairs:
                        c = _compose_perm(s, _compose_perm(pj, si))
                        k = self.index[c]
                        if ids[k] == -1:
                            ids[k] = cid
                            stack.append(c)
            self._class_ids = ids
            self._class_reps = reps
        return self._class_ids

    def class_representatives(self) -> list[int]:
        self.conjugacy_class_ids()
        return list(self._class_reps)

    def are_conjugate(self, g, h) -> bool:
        ids = self.conjugacy_class_ids()
        return ids[self._as_index(g)] == ids[self._as_index(h)]

    def _as_index(self, g) -> int:
        if isinstance(g, int):
            return g
        return self.index_of(g)
