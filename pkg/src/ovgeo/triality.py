"""The order-3 outer symmetry available when 3 divides the field degree.

With degree = 2e+1 = 3k, the map sending both affine coordinates through
x -> x^(2^k) permutes the ovoid, normalizes the group action, and its cube
is the identity on points and on elements.  Its fixed points are exactly
the points with both coordinates in the 2^k-element subfield.
"""

from .errors import NoTrialityError
from .ovoid_group import INFINITY, GroupElement, SuzukiGroup, _compose_perm, _invert_perm


class TrialityMap:
    """Point action p -> p^(2^k) plus the induced conjugation on elements."""

    def __init__(self, group: SuzukiGroup):
        k = group.field.triality_exponent
        if k is None:
            raise NoTrialityError(
                f"field degree {group.field.degree} is not divisible by 3"
            )
        self.group = group
        self.exponent = k
        self._atom = ("F", k)
        self._perm = None
        if group.materialized:
            self._perm = group._materialize_word((self._atom,))
            self._perm_inv = _invert_perm(self._perm)

    def apply_point(self, p: int) -> int:
        if self._perm is not None:
            return self._perm[p]
        return self.group.ovoid.apply_atom(self._atom, p)

    def apply(self, g: GroupElement) -> GroupElement:
        """Conjugate of a group element by the triality; lands back in the group."""
        word = None
        if g.word is not None:
            d = self.group.field.degree
            word = (self._atom,) + g.word + (("F", d - self.exponent),)
        perm = None
        if g.perm is not None and self._perm is not None:
            perm = _compose_perm(self._perm, _compose_perm(g.perm, self._perm_inv))
        out = GroupElement(self.group, word=word, perm=perm)
        return out.canonicalized()

    def subfield(self) -> list[int]:
        """Elements of the fixed subfield GF(2^k), as bitmasks."""
        f = self.group.field
        tab = f.pow2[self.exponent]
        return [x for x in range(f.q) if tab[x] == x]

    def fixed_points(self) -> list[int]:
        """Ovoid points fixed by the point action: both coordinates subfield."""
        ov = self.group.ovoid
        sub = self.subfield()
        out = [INFINITY]
        out += [ov.affine_index(x, y) for x in sub for y in sub]
        return sorted(out)

    def fixed_point_count(self) -> int:
        return len(self.subfield()) ** 2 + 1

    def power_point(self, p: int, times: int) -> int:
        for _ in range(times % 3):
            p = self.apply_point(p)
        return p


def make_triality(group: SuzukiGroup) -> TrialityMap:
    return TrialityMap(group)
