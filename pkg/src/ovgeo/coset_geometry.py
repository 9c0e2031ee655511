"""Right-coset geometry of the dihedral triple, its correlations and dualities.

Elements of type i are the right cosets H_i gamma; two cosets of different
types are incident exactly when they intersect, which matches the double
coset criterion gamma delta^-1 in H_i H_j.  Chambers of the geometry
correspond one to one with group elements, and the {j,k}-cells of the
chamber system map onto type-i cosets through gamma H_i -> H_i gamma^-1.

Correlations are searched constructively: a candidate must conjugate the
twisted triple (rho_0, rho_1, rho_2)^(2^t) onto a permuted copy, so for
each twist t and type permutation pi the solutions form either the empty
set or a single coset of the centralizer of the first involution, which is
the q^2-element Sylow subgroup at its fixed point.  That reduces each row
to a grid scan over translation parameters (a, b).
"""

from itertools import permutations

from .chamber_system import ChamberSystem, Triangle, _dihedral_span
from .errors import NotAFlagError
from .ovoid_group import (
    GroupElement,
    GroupTable,
    SuzukiGroup,
    _compose_perm,
    _invert_perm,
)
from .triality import TrialityMap


class CosetGeometry:
    """Materialized rank-3 incidence structure over the full group table."""

    def __init__(self, group: SuzukiGroup, table: GroupTable, tri: Triangle):
        self.group = group
        self.table = table
        self.triangle = tri
        n = len(table)
        self.coset_of: list[list[int]] = []
        self.members: list[list[list[int]]] = []
        self.reps: list[list[int]] = []
        self.labels: list[list[tuple]] = []
        for i in range(3):
            h_perms = []
            for h in tri.H[i]:
                h_perms.append(h.perm if h.perm is not None else group._materialize_word(h.word))
            belongs = [-1] * n
            mem_lists: list[list[int]] = []
            reps: list[int] = []
            labels: list[tuple] = []
            for x in range(n):
                if belongs[x] != -1:
                    continue
                px = table.perms[x]
                mem = sorted(table.index[_compose_perm(hp, px)] for hp in h_perms)
                cid = len(mem_lists)
                for y in mem:
                    belongs[y] = cid
                mem_lists.append(mem)
                rep = min(mem, key=lambda y: table.perms[y])
                reps.append(rep)
                labels.append(tuple(table.perms[rep][:3]))
            self.coset_of.append(belongs)
            self.members.append(mem_lists)
            self.reps.append(reps)
            self.labels.append(labels)
        # adjacency lists and sets per ordered type pair
        self.adj: dict[tuple[int, int], list[tuple[int, ...]]] = {}
        self._adjset: dict[tuple[int, int], list[frozenset]] = {}
        for i in range(3):
            for j in range(3):
                if i == j:
                    continue
                lists = []
                sets = []
                for mem in self.members[i]:
                    hit = sorted({self.coset_of[j][y] for y in mem})
                    lists.append(tuple(hit))
                    sets.append(frozenset(hit))
                self.adj[(i, j)] = lists
                self._adjset[(i, j)] = sets

    def ncosets(self, i: int) -> int:
        return len(self.members[i])

    def incident(self, i: int, ci: int, j: int, cj: int) -> bool:
        if i == j:
            return False
        return cj in self._adjset[(i, j)][ci]

    def chamber_triple(self, x: int) -> tuple[int, int, int]:
        """The coset triple through a group element."""
        return (self.coset_of[0][x], self.coset_of[1][x], self.coset_of[2][x])

    def residue_graph(self, i: int, ci: int):
        """Bipartite incidence graph of the rank-2 residue of one element."""
        j, k = [x for x in range(3) if x != i]
        js = self.adj[(i, j)][ci]
        ks = self.adj[(i, k)][ci]
        edges = []
        for cj in js:
            row = self._adjset[(j, k)][cj]
            for ck in ks:
                if ck in row:
                    edges.append((cj, ck))
        return js, ks, edges

    def residue_gonality(self, i: int, ci: int) -> int:
        """Half the girth of the rank-2 residue's incidence graph."""
        js, ks, edges = self.residue_graph(i, ci)
        nodes = [("j", v) for v in js] + [("k", v) for v in ks]
        nbrs: dict = {v: [] for v in nodes}
        for cj, ck in edges:
            nbrs[("j", cj)].append(("k", ck))
            nbrs[("k", ck)].append(("j", cj))
        girth = _graph_girth(nodes, nbrs)
        return girth // 2 if girth else 0


def _graph_girth(nodes, nbrs) -> int:
    """Shortest cycle length via BFS from every node; 0 when acyclic."""
    best = 0
    for start in nodes:
        dist = {start: 0}
        parent = {start: None}
        queue = [start]
        qi = 0
        while qi < len(queue):
            u = queue[qi]
            qi += 1
            for v in nbrs[u]:
                if v not in dist:
                    dist[v] = dist[u] + 1
                    parent[v] = u
                    queue.append(v)
                elif parent[u] != v:
                    cyc = dist[u] + dist[v] + 1
                    if best == 0 or cyc < best:
                        best = cyc
    return best


def build_coset_geometry(group: SuzukiGroup, tri: Triangle) -> CosetGeometry:
    return CosetGeometry(group, group.enumerate(), tri)


def geometry_facts(geom: CosetGeometry) -> dict:
    tri = geom.triangle
    expected_cosets = geom.group.order // (2 * tri.m)
    counts = [geom.ncosets(i) for i in range(3)]
    deg_ok = True
    for i in range(3):
        for j in range(3):
            if i == j:
                continue
            if any(len(t) != tri.m for t in geom.adj[(i, j)]):
                deg_ok = False
    sym_ok = True
    for i in range(3):
        for j in range(i + 1, 3):
            fwd = geom.adj[(i, j)]
            bwd = geom._adjset[(j, i)]
            for ci, row in enumerate(fwd):
                if any(ci not in bwd[cj] for cj in row):
                    sym_ok = False
    return {
        "cosets_per_type": counts,
        "expected_per_type": expected_cosets,
        "counts_ok": counts == [expected_cosets] * 3,
        "degrees_all_m": deg_ok,
        "incidence_symmetric": sym_ok,
    }


def double_coset_cross_check(geom: CosetGeometry, rng, samples: int = 300) -> dict:
    """Coset intersection and the product-set criterion must agree."""
    tri = geom.triangle
    table = geom.table
    prod_fps = {}
    for i in range(3):
        for j in range(3):
            if i != j:
                prod_fps[(i, j)] = {
                    (a * b).fingerprint for a in tri.H[i] for b in tri.H[j]
                }
    agree = 0
    for _ in range(samples):
        i = rng.randrange(3)
        j = (i + 1 + rng.randrange(2)) % 3
        ci = rng.randrange(geom.ncosets(i))
        cj = rng.randrange(geom.ncosets(j))
        gi = table.perms[geom.reps[i][ci]]
        gj_inv = _invert_perm(table.perms[geom.reps[j][cj]])
        quotient = tuple(_compose_perm(gi, gj_inv)[:3])
        by_product = quotient in prod_fps[(i, j)]
        by_intersection = geom.incident(i, ci, j, cj)
        if by_product != by_intersection:
            return {"ok": False, "pair": (i, ci, j, cj)}
        agree += 1
    return {"ok": True, "checked": agree}


def flag_transitivity_facts(geom: CosetGeometry) -> dict:
    """Count chambers two ways and confirm the regular correspondence."""
    n01 = 0
    chambers = 0
    thin_ok = True
    for c0, row in enumerate(geom.adj[(0, 1)]):
        a02 = geom._adjset[(0, 2)][c0]
        for c1 in row:
            n01 += 1
            common = [c2 for c2 in geom.adj[(1, 2)][c1] if c2 in a02]
            chambers += len(common)
            if len(common) != 2:
                thin_ok = False
    triples = {geom.chamber_triple(x) for x in range(len(geom.table))}
    return {
        "incident_01_pairs": n01,
        "chamber_count": chambers,
        "group_order": geom.group.order,
        "element_triples_distinct": len(triples) == len(geom.table),
        "triples_equal_chambers": len(triples) == chambers,
        "rank1_residues_size_2": thin_ok,
        "regular": chambers == geom.group.order and len(triples) == chambers,
    }


def diagram_facts(geom: CosetGeometry) -> dict:
    """Gonality of every rank-2 residue; the diagram is a triangle of m's."""
    tri = geom.triangle
    gonalities = set()
    per_type = []
    for i in range(3):
        vals = set()
        for ci in range(geom.ncosets(i)):
            vals.add(geom.residue_gonality(i, ci))
        per_type.append(sorted(vals))
        gonalities |= vals
    return {
        "per_type_gonalities": per_type,
        "all_equal_m": gonalities == {tri.m},
        "m": tri.m,
    }


def residue_of_flag(geom: CosetGeometry, flag: list[tuple[int, int]]) -> dict:
    """Elements incident to every member of a pairwise-incident flag."""
    for a in range(len(flag)):
        for b in range(a + 1, len(flag)):
            (ti, ci), (tj, cj) = flag[a], flag[b]
            if not geom.incident(ti, ci, tj, cj):
                raise NotAFlagError(f"elements {flag[a]} and {flag[b]} are not incident")
    used = {t for t, _ in flag}
    out = {}
    for t in range(3):
        if t in used:
            continue
        cands = None
        for (ti, ci) in flag:
            row = geom._adjset[(ti, t)][ci]
            cands = row if cands is None else (cands & row)
        out[t] = sorted(cands) if cands is not None else list(range(geom.ncosets(t)))
    return out


def cells_match_cosets_facts(geom: CosetGeometry, cs: ChamberSystem) -> dict:
    """The {j,k}-cells are exactly the cosets through gamma H_i -> H_i gamma^-1."""
    table = geom.table
    ok = True
    cell_maps = []
    for i in range(3):
        cells = cs.cells(i)
        mapping = {}
        for cell in cells:
            imgs = {geom.coset_of[i][table.inverse_index(x)] for x in cell}
            if len(imgs) != 1 or len(cell) != 2 * geom.triangle.m:
                ok = False
                break
            mapping[min(cell)] = imgs.pop()
        bijective = len(set(mapping.values())) == geom.ncosets(i) == len(cells)
        ok = ok and bijective
        cell_maps.append((cells, mapping))
    # incidence carried by shared chambers must match coset incidence
    pair_ok = True
    cell_id = []
    for i in range(3):
        arr = [-1] * len(table)
        for cell in cell_maps[i][0]:
            cid = geom.coset_of[i][table.inverse_index(cell[0])]
            for x in cell:
                arr[x] = cid
        cell_id.append(arr)
    shared = {(i, j): set() for i in range(3) for j in range(3) if i < j}
    for x in range(len(table)):
        for i in range(3):
            for j in range(i + 1, 3):
                shared[(i, j)].add((cell_id[i][x], cell_id[j][x]))
    for (i, j), pairs in shared.items():
        incident_pairs = {
            (ci, cj) for ci, row in enumerate(geom.adj[(i, j)]) for cj in row
        }
        if pairs != incident_pairs:
            pair_ok = False
    return {"cells_are_cosets": ok, "incidence_matches": pair_ok, "ok": ok and pair_ok}


# -- correlations


def triality_correlation_facts(geom: CosetGeometry, tau: TrialityMap) -> dict:
    """The map H_i gamma -> H_(i+1) tau(gamma) as a correlation of order 3."""
    table = geom.table
    tperm = tau._perm
    tinv = _invert_perm(tperm)
    tau_idx = [table.index[_compose_perm(tperm, _compose_perm(p, tinv))]
               for p in table.perms]
    cor = []
    well_defined = True
    for i in range(3):
        nxt = (i + 1) % 3
        out = []
        for mem in geom.members[i]:
            imgs = {geom.coset_of[nxt][tau_idx[y]] for y in mem}
            if len(imgs) != 1:
                well_defined = False
                out.append(-1)
            else:
                out.append(imgs.pop())
        cor.append(out)
    order3 = True
    for i in range(3):
        for ci in range(geom.ncosets(i)):
            c1 = cor[i][ci]
            c2 = cor[(i + 1) % 3][c1]
            c3 = cor[(i + 2) % 3][c2]
            if c3 != ci:
                order3 = False
    bijective = all(len(set(cor[i])) == geom.ncosets(i) for i in range(3))
    incidence = True
    for i in range(3):
        for j in range(3):
            if i == j:
                continue
            ii, jj = (i + 1) % 3, (j + 1) % 3
            for ci, row in enumerate(geom.adj[(i, j)]):
                tci = cor[i][ci]
                target = geom._adjset[(ii, jj)][tci]
                if any(cor[j][cj] not in target for cj in row):
                    incidence = False
    return {
        "well_defined": well_defined,
        "bijective": bijective,
        "order_three": order3,
        "incidence_preserving": incidence,
        "ok": well_defined and bijective and order3 and incidence,
    }


def duality_search(group: SuzukiGroup, tri: Triangle, vec=None) -> dict:
    """Solve g * rho_i^(2^t) * g^-1 = rho_pi(i) for every twist and permutation.

    Returns row dict keyed "t{t}_p{pi}" -> sorted solution fingerprints.
    Solutions to the first equation form c * C(omega_0) with C the Sylow
    subgroup at the twisted fixed point; the second equation then becomes a
    translation-parameter grid scan, and survivors are verified exactly.
    """
    if vec is None:
        from .fastops import VectorOvoid

        vec = VectorOvoid(group)
    f = group.field
    rows: dict[str, list] = {}
    meta_rows = []
    for t in range(f.degree):
        omegas = []
        fixes = []
        for i in range(3):
            w_word = (("F", t % f.degree),) + _word_of(tri.rho[i]) + (("F", (-t) % f.degree),)
            om = GroupElement(group, word=_strip_f0(w_word, f.degree)).canonicalized()
            omegas.append(om)
            fixes.append(group.ovoid.apply_atom(("F", t % f.degree), tri.base_points[i])
                         if t % f.degree else tri.base_points[i])
        for pi in permutations(range(3)):
            sols = _duality_row(group, tri, vec, omegas, fixes, pi)
            key = f"t{t}_p{pi[0]}{pi[1]}{pi[2]}"
            rows[key] = sorted(sols)
            meta_rows.append({
                "twist": t,
                "type_permutation": list(pi),
                "solutions": len(sols),
                "is_transposition": sorted(pi) == [0, 1, 2] and sum(
                    1 for i in range(3) if pi[i] == i) == 1,
            })
    return {"rows": rows, "meta": meta_rows}


def _word_of(g: GroupElement) -> tuple:
    if g.word is not None:
        return g.word
    return g.canonical_word()


def _strip_f0(word: tuple, degree: int) -> tuple:
    return tuple(a for a in word if not (a[0] == "F" and a[1] % degree == 0))


def _duality_row(group, tri, vec, omegas, fixes, pi) -> list:
    """Solutions of the three conjugation equations for one (twist, pi) row."""
    import numpy as np

    f = group.field
    # particular solution for equation 0
    c = group.conjugate_involutions(
        omegas[0], tri.rho[pi[0]], fix_u=fixes[0], fix_v=tri.base_points[pi[0]]
    )
    s = group.move_to_point(fixes[0])
    s_inv = s.inverse()
    mu1 = (s_inv * omegas[1] * s).canonicalized()
    nu1 = (s_inv * c.inverse() * tri.rho[pi[1]] * c * s).canonicalized()
    mu_table = vec.materialize(mu1)
    q = f.q
    d = f.degree
    a_grid = np.repeat(np.arange(q, dtype=np.int64), q)
    b_grid = np.tile(np.arange(q, dtype=np.int64), q)
    theta_a = vec.theta_tab[a_grid]
    tp1_a = vec.mul_vv(theta_a, a_grid)  # a^(theta+1)
    ok = np.ones(q * q, dtype=bool)
    for probe in (0, 1, 2):
        target = nu1.apply(probe)
        if probe == 0:
            v = int(mu_table[0])
            if v == 0:
                ok &= target == 0
                continue
            xv, yv = group.ovoid.coords(v)
            xw = xv ^ a_grid
            yw = yv ^ b_grid ^ vec.mul_vs(theta_a, xv)
            widx = 1 + (xw << d) + yw
            ok &= widx == target
            continue
        xp, yp = group.ovoid.coords(probe)
        xu = xp ^ a_grid
        yu = yp ^ b_grid ^ tp1_a ^ vec.mul_vs(theta_a, xp)
        v = mu_table[1 + (xu << d) + yu]
        vinf = v == 0
        tv = v - 1
        xv = tv >> d
        yv = tv & (q - 1)
        xw = xv ^ a_grid
        yw = yv ^ b_grid ^ vec.mul_vv(theta_a, xv)
        widx = np.where(vinf, 0, 1 + (xw << d) + yw)
        ok &= widx == target
    sols = []
    for idx in np.nonzero(ok)[0]:
        a, b = int(idx) >> d, int(idx) & (q - 1)
        g = (c * s * group.translation(a, b) * s_inv).canonicalized()
        if all(
            (g * omegas[i] * g.inverse()).fingerprint == tri.rho[pi[i]].fingerprint
            for i in range(3)
        ):
            sols.append(list(g.fingerprint))
    return sols


def correlation_summary(group: SuzukiGroup, duality: dict) -> dict:
    """Order bookkeeping for the correlation group of the geometry."""
    total = sum(r["solutions"] for r in duality["meta"])
    type_preserving = sum(
        r["solutions"] for r in duality["meta"] if r["type_permutation"] == [0, 1, 2]
    )
    transposition_sols = sum(
        r["solutions"] for r in duality["meta"] if r["is_transposition"]
    )
    return {
        "automorphisms": group.order * type_preserving,
        "correlations": group.order * total,
        "correlation_index": total,
        "dualities": transposition_sols,
        "no_dualities": transposition_sols == 0,
    }
