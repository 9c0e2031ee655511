"""Regular hypermaps carried by the chamber system.

Flags are the group elements; the three color involutions act by right
multiplication, so hypervertices, hyperedges and hyperfaces are the orbits
of the three rank-2 color pairs, i.e. the cells of the chamber system.
Left translations commute with the colors and act simply transitively on
flags, which is exactly regularity.
"""

from .chamber_system import ChamberSystem, Triangle, build_chamber_system
from .ovoid_group import FieldParams, SuzukiGroup, _compose_perm, _invert_perm
from .triality import TrialityMap


def alpha_beta_facts(field: FieldParams) -> dict:
    """Arithmetic of the two odd stabilizer orders alpha and beta."""
    q = field.q
    alpha = q + field.r + 1
    beta = q - field.r + 1
    selector = alpha if alpha % 3 == 2 else beta
    five = alpha if alpha % 5 == 0 else (beta if beta % 5 == 0 else None)
    return {
        "q": q,
        "alpha": alpha,
        "beta": beta,
        "product_is_point_count": alpha * beta == q * q + 1,
        "selector_mod3": selector,
        "selector_is_2_mod_3": selector % 3 == 2,
        "five_divides_point_count": (q * q + 1) % 5 == 0,
        "five_divides": five,
    }


class Hypermap:
    """Flag set with three color involutions acting by right translation."""

    def __init__(self, cs: ChamberSystem):
        self.cs = cs
        self.group = cs.group
        self.triangle = cs.triangle
        rho = cs.triangle.rho
        self.type_triple = (
            (rho[1] * rho[2]).order(),
            (rho[2] * rho[0]).order(),
            (rho[0] * rho[1]).order(),
        )
        self.n_flags = len(cs.table)
        self._cells = [cs.cells(i) for i in range(3)]

    def orbit_counts(self) -> tuple[int, int, int]:
        """(hypervertices, hyperedges, hyperfaces) = per-color cell counts."""
        return tuple(len(c) for c in self._cells)

    def euler_characteristic(self) -> int:
        v, e, f = self.orbit_counts()
        return v + e + f - self.n_flags // 2

    def orientable(self) -> bool:
        """Even-word subgroup has index 2 exactly in the orientable case."""
        table = self.cs.table
        gens = []
        rho = self.triangle.rho
        for i in range(3):
            for j in range(3):
                if i != j:
                    gens.append(table.index_of(rho[i] * rho[j]))
        seen = bytearray(self.n_flags)
        seen[0] = 1
        frontier = [0]
        size = 1
        while frontier:
            nxt = []
            for x in frontier:
                for gi in gens:
                    y = table.product_index(gi, x)
                    if not seen[y]:
                        seen[y] = 1
                        size += 1
                        nxt.append(y)
            frontier = nxt
        return 2 * size == self.n_flags


def build_hypermap(group: SuzukiGroup, tri: Triangle) -> Hypermap:
    return Hypermap(build_chamber_system(group, tri))


def hypermap_facts(hm: Hypermap, rng, samples: int = 300) -> dict:
    cs = hm.cs
    v, e, f = hm.orbit_counts()
    expected = hm.group.order // (2 * hm.triangle.m)
    chi = hm.euler_characteristic()
    orientable = hm.orientable()
    return {
        "type": list(hm.type_triple),
        "uniform_type_m": all(t == hm.triangle.m for t in hm.type_triple),
        "flags": hm.n_flags,
        "hypervertices": v,
        "hyperedges": e,
        "hyperfaces": f,
        "counts_equal": v == e == f == expected,
        "connected": cs.is_connected(),
        "regular": cs.left_translation_check(rng, samples) and hm.n_flags == hm.group.order,
        "euler_characteristic": chi,
        "orientable": orientable,
        "genus": (2 - chi) // 2 if orientable else 2 - chi,
    }


def triality_operation_facts(hm: Hypermap, tau: TrialityMap) -> dict:
    """The triality permutes flags, advancing each color by one, exactly."""
    table = hm.cs.table
    tperm = tau._perm
    tinv = _invert_perm(tperm)
    phi = [table.index[_compose_perm(tperm, _compose_perm(p, tinv))]
           for p in table.perms]
    n = hm.n_flags
    bijective = len(set(phi)) == n
    shifts_colors = True
    for i in range(3):
        nbr_i = hm.cs.nbr[i]
        nbr_next = hm.cs.nbr[(i + 1) % 3]
        for x in range(n):
            if phi[nbr_i[x]] != nbr_next[phi[x]]:
                shifts_colors = False
                break
    order3 = all(phi[phi[phi[x]]] == x for x in range(n))
    # orbit classes advance cyclically: vertices -> edges -> faces -> vertices
    orbit_cycle = True
    for i in range(3):
        img = {frozenset(phi[x] for x in cell) for cell in hm._cells[i]}
        tgt = {frozenset(cell) for cell in hm._cells[(i + 1) % 3]}
        if img != tgt:
            orbit_cycle = False
    return {
        "bijective": bijective,
        "shifts_colors": shifts_colors,
        "order_three": order3,
        "orbit_classes_cycle": orbit_cycle,
        "ok": bijective and shifts_colors and order3 and orbit_cycle,
    }


def triality_operation_sampled(group: SuzukiGroup, tri: Triangle,
                               tau: TrialityMap, rng, samples: int = 40) -> dict:
    """Word-level check of the color shift without a group table."""
    f = group.field
    checked = 0
    for _ in range(samples):
        word = []
        for _ in range(rng.randrange(1, 4)):
            kind = rng.randrange(3)
            if kind == 0:
                word.append(("T", rng.randrange(f.q), rng.randrange(f.q)))
            elif kind == 1:
                word.append(("M", 1 + rng.randrange(f.q - 1)))
            else:
                word.append(("W",))
        x = group.from_word(tuple(word)).canonicalized()
        i = rng.randrange(3)
        lhs = tau.apply(x * tri.rho[i])
        rhs = tau.apply(x) * tri.rho[(i + 1) % 3]
        if lhs.fingerprint != rhs.fingerprint:
            return {"ok": False, "checked": checked}
        checked += 1
    return {"ok": True, "checked": checked}


def duality_absence_facts(duality: dict) -> dict:
    """Hypermap operations swapping two orbit classes come from dualities."""
    transp = [r for r in duality["meta"] if r["is_transposition"]]
    sols = sum(r["solutions"] for r in transp)
    return {
        "transposition_rows": len(transp),
        "transposition_solutions": sols,
        "no_dualities": sols == 0,
    }
