"""Verification sessions, the check registry and canonical JSON reports.

A session lazily builds and caches the expensive artifacts for one
parameter set (degree exponent e, side length m, tier, base point): field,
group, triality, census, triangle, full group table, chamber system,
coset geometry, duality table and hypermap.  Checks draw from the session
so a suite never rebuilds shared state, and the service can keep sessions
alive across requests.

Canonical report JSON is fully deterministic for fixed inputs and seed:
keys are sorted, separators fixed, and wall-clock timings are kept out of
the canonical payload (they appear only in the human-readable text).
"""

import json
import random
import time
from dataclasses import dataclass, field as dc_field

from .chamber_system import (
    build_chamber_system,
    build_triangle,
    census_facts,
    chamber_system_facts,
    default_base_point,
    find_base_involution,
    flag_transitivity_product_facts,
    residual_connectedness_facts,
    rotation_normalizer_facts,
    triangle_facts,
    triple_stabilizer_facts,
    triple_transport_facts,
    two_point_product_facts,
)
from .coset_geometry import (
    build_coset_geometry,
    correlation_summary,
    diagram_facts,
    duality_search,
    flag_transitivity_facts,
    geometry_facts,
    triality_correlation_facts,
)
from .errors import BasePointFixedError, NotRealizableError, TierExceededError
from .gf2m import make_field
from .hypermap import (
    Hypermap,
    alpha_beta_facts,
    duality_absence_facts,
    hypermap_facts,
    triality_operation_facts,
    triality_operation_sampled,
)
from .ovoid_group import SuzukiGroup, projective_membership
from .triality import make_triality

TIERS = ("full", "spot")


class Session:
    """Cached artifacts for one (e, m, tier, base point) parameter set."""

    def __init__(self, e: int, m: int = 5, tier: str = "full",
                 base_point: int | None = None, threshold: int = 10**6):
        if tier not in TIERS:
            raise ValueError(f"tier must be one of {TIERS}, got {tier!r}")
        if e < 1:
            raise ValueError(f"degree exponent e must be >= 1, got {e}")
        self.e = e
        self.m = m
        self.tier = tier
        self.field = make_field(2 * e + 1)
        self.group = SuzukiGroup(self.field, full_threshold=threshold)
        # a missing triality is a parameter error and outranks the tier gate
        self.tau = make_triality(self.group)
        if tier == "full" and self.group.order > threshold:
            raise TierExceededError(
                f"group order {self.group.order} exceeds full-tier threshold "
                f"{threshold}; use tier=spot",
                order=self.group.order,
            )
        self.base_point = (
            default_base_point(self.tau) if base_point is None else base_point
        )
        self._census = None
        self._rho0 = None
        self._triangle = None
        self._table = None
        self._cs = None
        self._geom = None
        self._duality = None
        self._hypermap = None
        self._vec = None

    @property
    def table(self):
        if self._table is None:
            self._table = self.group.enumerate()
        return self._table

    @property
    def census(self) -> dict:
        if self._census is None:
            tab = self.table if self.tier == "full" else None
            self._census = census_facts(self.group, self.tau, self.base_point, tab)
        return self._census

    @property
    def triangle(self):
        if self._triangle is None:
            rho0, n = find_base_involution(self.group, self.tau, self.base_point, self.m)
            self._rho0 = rho0
            self._candidates = n
            self._triangle = build_triangle(self.group, rho0, self.tau)
        return self._triangle

    @property
    def chamber_system(self):
        if self._cs is None:
            self._cs = build_chamber_system(self.group, self.triangle)
        return self._cs

    @property
    def geometry(self):
        if self._geom is None:
            self._geom = build_coset_geometry(self.group, self.triangle)
        return self._geom

    @property
    def duality(self) -> dict:
        if self._duality is None:
            self._duality = duality_search(self.group, self.triangle, self.vec)
        return self._duality

    @property
    def hypermap(self) -> Hypermap:
        if self._hypermap is None:
            self._hypermap = Hypermap(self.chamber_system)
        return self._hypermap

    @property
    def vec(self):
        if self._vec is None:
            from .fastops import VectorOvoid

            self._vec = VectorOvoid(self.group)
        return self._vec

    def describe(self) -> dict:
        f = self.field
        g = self.group
        return {
            "e": self.e,
            "degree": f.degree,
            "q": f.q,
            "modulus": f.modulus,
            "generator": f.generator,
            "theta_exponent": f.r,
            "order": g.order,
            "alpha": g.alpha,
            "beta": g.beta,
            "points": g.ovoid.size,
            "m": self.m,
            "tier": self.tier,
            "base_point": self.base_point,
        }


# -- checks; each returns (ok | None for skipped, details dict)


def check_field_laws(s: Session, rng) -> tuple:
    f = s.field
    q = f.q
    fails = 0
    if q <= 64:
        mode, samples = "exhaustive", q * q * q
        triples = (
            (a, b, c) for a in range(q) for b in range(q) for c in range(q)
        )
    else:
        mode, samples = "sampled", 10000
        triples = (
            (rng.randrange(q), rng.randrange(q), rng.randrange(q))
            for _ in range(samples)
        )
    for a, b, c in triples:
        if f.mul(f.mul(a, b), c) != f.mul(a, f.mul(b, c)):
            fails += 1
        if f.mul(a, b ^ c) != f.mul(a, b) ^ f.mul(a, c):
            fails += 1
    for _ in range(min(samples, 2000)):
        a, b = rng.randrange(q), rng.randrange(q)
        if f.mul(a, b) != f.mul(b, a):
            fails += 1
        if f.theta(a ^ b) != f.theta(a) ^ f.theta(b):
            fails += 1
        if f.theta(f.mul(a, b)) != f.mul(f.theta(a), f.theta(b)):
            fails += 1
        if f.theta(f.theta(a)) != f.frobenius(a):
            fails += 1
        if a and f.mul(a, f.inv(a)) != 1:
            fails += 1
    return fails == 0, {"mode": mode, "samples": samples, "failures": fails, "q": q}


def check_group_order(s: Session, rng) -> tuple:
    if s.tier != "full":
        return None, {"reason": "enumeration beyond tier threshold"}
    n = len(s.table)
    q = s.group.q
    return n == s.group.order, {
        "enumerated": n,
        "formula": s.group.order,
        "factors": [q * q + 1, q * q, q - 1],
    }


def check_ovoid_points(s: Session, rng) -> tuple:
    g = s.group
    ov = g.ovoid
    q = g.q
    ok = ov.size == q * q + 1
    if s.tier == "full":
        pts = range(ov.size)
        mode = "exhaustive"
    else:
        pts = [rng.randrange(ov.size) for _ in range(2000)]
        mode = "sampled"
    member_ok = True
    for p in pts:
        if p == 0:
            coords = (0, 1, 0, 0)
        else:
            x, y = ov.coords(p)
            coords = (1, ov.z_coord(x, y), x, y)
        if not projective_membership(g.field, coords):
            member_ok = False
    gens = g.generators()
    prod_ok = True
    if s.tier == "full":
        for gen in gens:
            perm = gen.perm if gen.perm is not None else g._materialize_word(gen.word)
            if sorted(perm) != list(range(256)):
                prod_ok = False
        for _ in range(100):
            w = gens[rng.randrange(len(gens))]
            for _ in range(rng.randrange(1, 5)):
                w = w * gens[rng.randrange(len(gens))]
            perm = w.perm if w.perm is not None else g._materialize_word(w.word)
            if sorted(perm) != list(range(256)):
                prod_ok = False
    else:
        sample = [rng.randrange(ov.size) for _ in range(60)]
        for _ in range(100):
            w = gens[rng.randrange(len(gens))]
            for _ in range(rng.randrange(1, 5)):
                w = w * gens[rng.randrange(len(gens))]
            imgs = [w.apply(p) for p in sample]
            if len(set(imgs)) != len(set(sample)):
                prod_ok = False
            if any(not (0 <= i < ov.size) for i in imgs):
                prod_ok = False
    return ok and member_ok and prod_ok, {
        "points": ov.size,
        "expected": q * q + 1,
        "membership_mode": mode,
        "membership_ok": member_ok,
        "generators": len(gens),
        "products_preserve": prod_ok,
    }


def check_triality(s: Session, rng) -> tuple:
    tau = s.tau
    fp = tau.fixed_point_count()
    sub = 2 ** (s.field.degree // 3)
    expected = sub * sub + 1
    ok = fp == expected and len(tau.fixed_points()) == expected
    cube_ok = True
    for _ in range(50):
        p = rng.randrange(s.group.ovoid.size)
        if tau.power_point(p, 3) != p:
            cube_ok = False
    return ok and cube_ok, {
        "fixed_points": fp,
        "expected": expected,
        "subfield_size": sub,
        "cube_is_identity": cube_ok,
    }


def check_census(s: Session, rng) -> tuple:
    cf = dict(s.census)
    count_m = sum(1 for d in cf["orders"] if d == s.m)
    cf["base_involutions_with_m"] = count_m
    ok = cf["multiset_matches"] and cf["all_odd"] and cf["coprime_parts"]
    if s.tier == "full":
        ok = ok and cf.get("pairwise_nonconjugate", False)
    ok = ok and (count_m == 1 if s.m == 5 else count_m >= 1)
    return ok, cf


def check_triangle(s: Session, rng) -> tuple:
    tf = triangle_facts(s.triangle)
    ok = (
        not tf["degenerate"]
        and tf["proper"]
        and tf["sizes"] == [s.m] * 3
        and all(len(v) == 1 for v in tf["pairwise_intersections"].values())
        and tf["triple_intersection"] == []
        and tf["pairwise_are_third_fixed_points"]
    )
    return ok, tf


def check_chamber_system(s: Session, rng) -> tuple:
    if s.tier != "full":
        return None, {"reason": "chamber table beyond tier threshold"}
    cf = chamber_system_facts(s.chamber_system, rng, samples=1000)
    ok = (
        cf["chambers"] == s.group.order
        and cf["thin"]
        and cf["connected"]
        and cf["geometric_adjacency"]["ok"]
        and cf["left_translation_ok"]
        and cf["regular"]
    )
    return ok, cf


def check_residual_connectedness(s: Session, rng) -> tuple:
    rc = residual_connectedness_facts(s.triangle)
    return rc["ok"] and rc["triples"] == 512, rc


def check_flag_transitivity(s: Session, rng) -> tuple:
    ft = flag_transitivity_product_facts(s.triangle)
    details = {"products": ft}
    ok = ft["ok"]
    if s.tier == "full":
        gf = flag_transitivity_facts(s.geometry)
        details["geometry"] = gf
        ok = ok and gf["regular"] and gf["chamber_count"] == s.group.order
    return ok, details


def check_diagram(s: Session, rng) -> tuple:
    if s.tier != "full":
        return None, {"reason": "residue sweep beyond tier threshold"}
    df = diagram_facts(s.geometry)
    gf = geometry_facts(s.geometry)
    ok = df["all_equal_m"] and gf["counts_ok"] and gf["degrees_all_m"]
    return ok, {"diagram": df, "geometry": gf}


def check_correlations(s: Session, rng) -> tuple:
    du = s.duality
    summary = correlation_summary(s.group, du)
    details = {"summary": summary, "rows": du["rows"]}
    ok = summary["no_dualities"] and summary["correlation_index"] == 3
    if s.tier == "full":
        tc = triality_correlation_facts(s.geometry, s.tau)
        details["triality_correlation"] = tc
        ok = ok and tc["ok"]
    return ok, details


def check_hypermap(s: Session, rng) -> tuple:
    ab = alpha_beta_facts(s.field)
    da = duality_absence_facts(s.duality)
    details = {"alpha_beta": ab, "duality_absence": da}
    ok = ab["product_is_point_count"] and ab["selector_is_2_mod_3"] and da["no_dualities"]
    if s.tier == "full":
        hf = hypermap_facts(s.hypermap, rng, samples=300)
        op = triality_operation_facts(s.hypermap, s.tau)
        details["facts"] = hf
        details["triality_operation"] = op
        ok = (
            ok
            and hf["uniform_type_m"]
            and hf["counts_equal"]
            and hf["connected"]
            and hf["regular"]
            and op["ok"]
        )
    else:
        op = triality_operation_sampled(s.group, s.triangle, s.tau, rng)
        details["triality_operation_sampled"] = op
        ok = ok and op["ok"]
    return ok, details


def check_lemmas(s: Session, rng) -> tuple:
    tab = s.table if s.tier == "full" else None
    tp = two_point_product_facts(s.group, s.tau, tab, rng)
    n = s.group.ovoid.size
    trips = [(0, 1, 2)] + [tuple(rng.sample(range(n), 3)) for _ in range(3)]
    ts = triple_stabilizer_facts(s.group, tab, rng, trips)
    tt = triple_transport_facts(s.group, rng, n_triples=3)
    rn = rotation_normalizer_facts(s.group, s.triangle, tab, rng)
    ok = tp["ok"] and ts["ok"] and tt["ok"] and (
        rn["ok"] if s.tier == "full" else rn["positive_ok"]
    )
    return ok, {
        "two_point_products": tp,
        "triple_stabilizers": ts,
        "triple_transport": tt,
        "rotation_normalizer": rn,
    }


CHECKS = {
    "field_laws": check_field_laws,
    "group_order": check_group_order,
    "ovoid_points": check_ovoid_points,
    "triality": check_triality,
    "census": check_census,
    "triangle": check_triangle,
    "chamber_system": check_chamber_system,
    "residual_connectedness": check_residual_connectedness,
    "flag_transitivity": check_flag_transitivity,
    "diagram": check_diagram,
    "correlations": check_correlations,
    "hypermap": check_hypermap,
    "lemmas": check_lemmas,
}

SUITES = {
    "all": list(CHECKS),
    "census": ["census"],
    "triangle": ["triangle"],
    "rc": ["residual_connectedness"],
    "ft": ["flag_transitivity"],
    "thin": ["chamber_system"],
    "diagram": ["diagram"],
    "correlations": ["correlations"],
    "hypermap": ["hypermap"],
    "lemmas": ["lemmas"],
}


@dataclass
class CheckOutcome:
    name: str
    status: str
    details: dict
    seconds: float


@dataclass
class VerificationReport:
    meta: dict
    outcomes: list[CheckOutcome] = dc_field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(o.status != "fail" for o in self.outcomes)

    def counts(self) -> dict:
        out = {"pass": 0, "fail": 0, "skipped": 0}
        for o in self.outcomes:
            out[o.status] += 1
        return out

    def canonical_dict(self) -> dict:
        return {
            "schema": "ovgeo/1",
            "kind": "verification-report",
            **self.meta,
            "checks": [
                {"name": o.name, "status": o.status, "details": o.details}
                for o in self.outcomes
            ],
            "counts": self.counts(),
            "passed": self.passed,
        }

    def canonical_json(self) -> str:
        return json.dumps(self.canonical_dict(), sort_keys=True,
                          separators=(",", ":")) + "\n"

    def text_lines(self) -> list[str]:
        lines = [
            "verification q={q} m={m} tier={tier} suite={suite} seed={seed}".format(
                **self.meta
            )
        ]
        for o in self.outcomes:
            lines.append(f"{o.status.upper():7s} {o.name} ({o.seconds:.2f}s)")
        c = self.counts()
        lines.append(
            f"result: {'PASS' if self.passed else 'FAIL'} "
            f"({c['pass']} pass, {c['fail']} fail, {c['skipped']} skipped)"
        )
        return lines


def field_info(e: int) -> dict:
    """Field-level facts; valid without a triality (degree not divisible by 3)."""
    if e < 1:
        raise ValueError(f"degree exponent e must be >= 1, got {e}")
    f = make_field(2 * e + 1)
    return {
        "e": e,
        "degree": f.degree,
        "q": f.q,
        "modulus": f.modulus,
        "modulus_bits": bin(f.modulus),
        "generator": f.generator,
        "theta_exponent": f.r,
        "has_triality": f.degree % 3 == 0,
    }


def group_info(e: int, enumerate_table: bool = False,
               threshold: int = 10**6) -> dict:
    if e < 1:
        raise ValueError(f"degree exponent e must be >= 1, got {e}")
    g = SuzukiGroup(make_field(2 * e + 1), full_threshold=threshold)
    q = g.q
    out = {
        "e": e,
        "q": q,
        "order": g.order,
        "order_factors": [q * q + 1, q * q, q - 1],
        "alpha": g.alpha,
        "beta": g.beta,
        "points": g.ovoid.size,
        "generators": len(g.generators()),
    }
    if enumerate_table:
        table = g.enumerate()
        out["enumerated"] = len(table)
        out["enumeration_matches"] = len(table) == g.order
    return out


def chamber_info(session: Session) -> dict:
    tri = session.triangle
    tf = triangle_facts(tri)
    return {
        **session.describe(),
        "census_orders": session.census["orders"],
        "base_involution_fingerprint": list(tri.rho[0].fingerprint),
        "candidates_with_m": session._candidates,
        "triangle": tf,
    }


def export_data(session: Session, what: str) -> dict:
    """Graph payload for one export target; full tier only."""
    from . import exports as ex

    if session.tier != "full":
        raise TierExceededError(
            "graph exports need the materialized full tier", order=session.group.order
        )
    if what == "incidence":
        return ex.incidence_graph_data(session.geometry)
    if what == "chamber-graph":
        return ex.chamber_graph_data(session.chamber_system)
    if what == "hypermap":
        return ex.hypermap_graph_data(session.hypermap)
    raise ValueError(f"unknown export target {what!r}")


def run_suite(session: Session, suite: str = "all", seed: int = 0) -> VerificationReport:
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {sorted(SUITES)}")
    meta = {
        "q": session.group.q,
        "degree": session.field.degree,
        "e": session.e,
        "m": session.m,
        "tier": session.tier,
        "suite": suite,
        "seed": seed,
        "base_point": session.base_point,
    }
    report = VerificationReport(meta)
    for name in SUITES[suite]:
        rng = random.Random(f"{seed}:{name}")
        t0 = time.perf_counter()
        try:
            ok, details = CHECKS[name](session, rng)
        except (TierExceededError, NotRealizableError, BasePointFixedError):
            # parameter-level problems abort the suite instead of failing it
            raise
        except Exception as exc:  # keep one broken check from masking others
            ok, details = False, {"error": repr(exc)}
        status = "skipped" if ok is None else ("pass" if ok else "fail")
        report.outcomes.append(
            CheckOutcome(name, status, details, time.perf_counter() - t0)
        )
    return report
