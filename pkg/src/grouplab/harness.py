"""Verification harness: corpus construction, per-theorem suites, lemma
property suites, witness search and JSON reports.

Suites evaluate every variant of an equivalence independently (no
short-circuiting), so a genuine discrepancy in one characterization is
observable rather than masked by another.  Reports are deterministic for a
fixed corpus and k set; only the elapsed fields vary between runs.
"""
from __future__ import annotations

import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .permgroup import (FiniteGroup, GroupError, factorize, group_from_spec,
                        order_cap, prime_power, quotient_cached)
from .lattice import SubgroupLattice
from . import classes, structure, submodular

SCHEMA_VERSION = 1

SUITE_IDS = ("T3.1", "T3.2", "T3.3", "T3.5", "T3.6", "P3.1", "T3.6_1",
             "R1", "R2", "R3", "L")

DEFAULT_CORPUS_CAP = 200

# lemma checks walk quotient lattices of quotient lattices; keep those
# entries small so the suite stays tractable
LEMMA_SUITE_MAX_ORDER = 48
LEMMA_SUITE_EXTRA = ("Hol(Z7)",)


@dataclass
class CorpusEntry:
    """One corpus group, rebuildable from its JSON spec."""

    name: str
    spec: dict
    _group: FiniteGroup | None = field(default=None, repr=False)

    @property
    def group(self) -> FiniteGroup:
        if self._group is None:
            self._group = group_from_spec(self.spec)
            self._group.name = self.name
        return self._group

    @property
    def lattice(self) -> SubgroupLattice:
        return self.group.lattice()

    @property
    def order(self) -> int:
        return self.group.order

    def tags(self) -> list[str]:
        G = self.group
        out = [f"order:{G.order}"]
        if structure.is_soluble(G):
            out.append("soluble")
        if structure.is_supersoluble(G):
            out.append("supersoluble")
        if structure.is_nilpotent(G):
            out.append("nilpotent")
        return out

    def fingerprint(self) -> tuple:
        G = self.group
        return (G.order, G.is_abelian(), G.exponent(), len(G.lattice()),
                _element_class_count(G))


def _element_class_count(G: FiniteGroup) -> int:
    mult, inv = G.mult, G.inv
    seen = [False] * G.order
    count = 0
    for x in range(G.order):
        if seen[x]:
            continue
        count += 1
        for g in range(G.order):
            seen[mult[mult[inv[g]][x]][g]] = True
    return count


FAMILIES = ("cyclic", "elem_abelian", "dihedral", "dicyclic", "symmetric",
            "holomorph", "frobenius", "products", "subgroups")


@dataclass
class CorpusConfig:
    cap: int = DEFAULT_CORPUS_CAP
    families: tuple[str, ...] = FAMILIES

    def __post_init__(self):
        if self.cap < 2:
            raise GroupError("corpus cap must be at least 2")
        unknown = set(self.families) - set(FAMILIES)
        if unknown:
            raise GroupError(f"unknown corpus families: {sorted(unknown)}")


def _named(name: str, args: list[int]) -> dict:
    return {"kind": "named", "name": name, "args": args}


def _family_specs(config: CorpusConfig) -> list[tuple[str, dict]]:
    cap = config.cap
    fams = set(config.families)
    out: list[tuple[str, dict]] = []
    if "cyclic" in fams:
        out += [(f"Z{n}", _named("cyclic", [n])) for n in range(1, 25)]
    if "elem_abelian" in fams:
        out += [(f"E{p}^{e}", _named("elem_abelian", [p, e]))
                for p, e in ((2, 2), (2, 3), (2, 4), (3, 2), (5, 2))]
    if "dihedral" in fams:
        out += [(f"D{n}", _named("dihedral", [n])) for n in range(3, 21)]
    if "dicyclic" in fams:
        out += [(f"Dic{n}", _named("dicyclic", [n])) for n in range(2, 9)]
    if "symmetric" in fams:
        out += [("S3", _named("sym", [3])), ("S4", _named("sym", [4])),
                ("S5", _named("sym", [5])), ("A4", _named("alt", [4])),
                ("A5", _named("alt", [5]))]
    if "holomorph" in fams:
        out += [(f"Hol(Z{n})", _named("holomorph_cyclic", [n]))
                for n in (5, 7, 9)]
    if "frobenius" in fams:
        out += [(f"Frob({p},{q}^{n})", _named("frobenius_metacyclic", [p, q, n]))
                for p, q, n in ((5, 2, 2), (7, 2, 1), (7, 3, 1), (13, 3, 1),
                                (13, 2, 2))]
    if "products" in fams:
        pairs = [("Z4xZ2", ("cyclic", [4]), ("cyclic", [2])),
                 ("Z6xZ2", ("cyclic", [6]), ("cyclic", [2])),
                 ("S3xZ2", ("sym", [3]), ("cyclic", [2])),
                 ("S3xZ4", ("sym", [3]), ("cyclic", [4])),
                 ("S3xS3", ("sym", [3]), ("sym", [3])),
                 ("A4xZ2", ("alt", [4]), ("cyclic", [2])),
                 ("Q8xZ3", ("dicyclic", [2]), ("cyclic", [3])),
                 ("D4xZ2", ("dihedral", [4]), ("cyclic", [2])),
                 ("Hol(Z5)xS3", ("holomorph_cyclic", [5]), ("sym", [3]))]
        out += [(name, {"kind": "direct",
                        "parts": [_named(n1, a1), _named(n2, a2)]})
                for name, (n1, a1), (n2, a2) in pairs]
    return [(n, s) for n, s in out if _spec_order_bound(s) <= cap]


def _spec_order_bound(spec: dict) -> int:
    """Exact order of a named/direct spec (all builders have known orders)."""
    if spec["kind"] == "direct":
        r = 1
        for p in spec["parts"]:
            r *= _spec_order_bound(p)
        return r
    name, args = spec["name"], spec["args"]
    return {
        "cyclic": lambda n: n,
        "elem_abelian": lambda p, e: p**e,
        "dihedral": lambda n: 2 * n,
        "dicyclic": lambda n: 4 * n,
        "sym": lambda n: math.factorial(n),
        "alt": lambda n: math.factorial(n) // 2,
        "holomorph_cyclic": lambda n: n * _totient(n),
        "frobenius_metacyclic": lambda p, q, n: p * q**n,
    }[name](*args)


def _totient(n: int) -> int:
    r = n
    for p in factorize(n):
        r -= r // p
    return r


def build_corpus(config: CorpusConfig | None = None) -> list[CorpusEntry]:
    """Default corpus: stock families plus every subgroup of S4 and S5 as an
    independent entry, deduplicated by invariant fingerprint."""
    config = config or CorpusConfig()
    entries = [CorpusEntry(name, spec) for name, spec in _family_specs(config)]
    seen: dict[tuple, str] = {}
    collisions: list[tuple[str, str]] = []
    for e in entries:
        fp = e.fingerprint()
        if fp in seen:
            collisions.append((e.name, seen[fp]))
        else:
            seen[fp] = e.name
    if "subgroups" in set(config.families):
        for host_name, host_spec in (("S4", _named("sym", [4])),
                                     ("S5", _named("sym", [5]))):
            if _spec_order_bound(host_spec) > config.cap:
                continue
            host = group_from_spec(host_spec)
            L = host.lattice()
            for s in L.subgroups:
                if s.order < 2:
                    continue
                gens = s.gens or tuple(s.members)
                spec = {"kind": "generators", "degree": host.degree,
                        "cycles": [host.elements[g].cycle_string()
                                   for g in gens]}
                cand = CorpusEntry(f"{host_name}_sub{s.id}", spec)
                fp = cand.fingerprint()
                if fp in seen:
                    continue
                seen[fp] = cand.name
                entries.append(cand)
    entries.sort(key=lambda e: e.name)
    names = [e.name for e in entries]
    if len(set(names)) != len(names):
        raise GroupError("corpus names are not unique")
    return entries


# -- report ------------------------------------------------------------------


@dataclass
class VerificationReport:
    suite: str
    k_set: list[int]
    entries: list[dict]
    counters: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        if not all(r["pass"] for r in self.entries):
            return False
        return all(self.counters.get(key, 1) > 0
                   for key in self.counters if key.startswith("nonvacuous"))

    def summary(self) -> dict:
        failed = [r for r in self.entries if not r["pass"]]
        return {"total": len(self.entries), "passed": len(self.entries) - len(failed),
                "failed": len(failed), "suite_pass": self.passed,
                "counters": dict(sorted(self.counters.items()))}

    def to_json(self) -> dict:
        return {"schema_version": SCHEMA_VERSION, "suite": self.suite,
                "k": self.k_set, "entries": self.entries,
                "summary": self.summary()}


def _merge_counters(total: dict, part: dict) -> None:
    for key, val in part.items():
        total[key] = total.get(key, 0) + val


# -- suite evaluation helpers ------------------------------------------------


def _member_in_Y(L: SubgroupLattice, a: int, k: int) -> bool:
    """Y-membership of lattice member a as a group: every subgroup of a is
    k-submodular in a (intrinsic, no re-enumeration)."""
    return len(submodular.ksub_set(L, k, top=a)) == len(L.subs_of(a))


def _quotient_lattices(G: FiniteGroup):
    """(normal Subgroup, quotient, epimorphism) for each nontrivial proper
    normal subgroup; G/1 and G/G carry no information for closure checks."""
    L = G.lattice()
    for n_id in structure.normal_ids_in(L, L.top.id):
        sub = L.subgroups[n_id]
        if sub.order in (1, G.order):
            continue
        Q, epi = quotient_cached(G, sub.mask)
        yield sub, Q, epi


def _image_id(Lq: SubgroupLattice, epi, mask: int) -> int:
    """Lattice id (in the quotient lattice) of the image of a subgroup mask."""
    out = 0
    src = epi.source
    for x in src.mask_members(mask):
        out |= 1 << epi.table[x]
    return Lq.by_mask[out]


def _eval_T31(entry: CorpusEntry, k_set: list[int]):
    records, counters = [], {}
    L = entry.lattice
    for k in k_set:
        t0 = time.perf_counter()
        variants = {str(v): submodular.thm31_characterization(L, v, k)
                    for v in (1, 2, 3)}
        ok = len(set(variants.values())) == 1
        records.append({"group": entry.name, "k": k, "variants": variants,
                        "pass": ok,
                        "witness": None if ok else {"variants": variants},
                        "elapsed": round(time.perf_counter() - t0, 4)})
    return records, counters


def _eval_T32(entry: CorpusEntry, k_set: list[int]):
    records, counters = [], {}
    L = entry.lattice
    for k in k_set:
        t0 = time.perf_counter()
        variants = {str(v): submodular.thm32_characterization(L, v, k)
                    for v in (1, 2, 3, 4)}
        ok = len(set(variants.values())) == 1
        records.append({"group": entry.name, "k": k, "variants": variants,
                        "pass": ok,
                        "witness": None if ok else {"variants": variants},
                        "elapsed": round(time.perf_counter() - t0, 4)})
    return records, counters


def _core_quotient_lattice(G: FiniteGroup, L: SubgroupLattice,
                           m: int) -> SubgroupLattice:
    """Lattice of G/Core_G(m); reuses L itself when the core is trivial."""
    c = L.core(m)
    if c == L.bottom.id:
        return L
    return quotient_cached(G, L.subgroups[c].mask)[0].lattice()


def _eval_T33(entry: CorpusEntry, k_set: list[int]):
    records, counters = [], {}
    G = entry.group
    L = entry.lattice
    for k in k_set:
        t0 = time.perf_counter()
        in_X = submodular.in_class(L, "X", k)
        in_Y = submodular.in_class(L, "Y", k)
        checks: dict[str, bool] = {}

        if in_X:
            checks["quotient_closure_X"] = all(
                submodular.in_class(Q.lattice(), "X", k)
                for _, Q, _ in _quotient_lattices(G))
            _merge_counters(counters, {"nonvacuous_quotient_closure_X": 1})
        prim = all(
            submodular.in_class(_core_quotient_lattice(G, L, m), "X", k)
            for m in L.hasse_down[L.top.id])
        checks["primitive_closure_X"] = (not prim) or in_X
        if prim:
            _merge_counters(counters, {"nonvacuous_primitive_closure_X": 1})
        if in_Y:
            checks["quotient_closure_Y"] = all(
                submodular.in_class(Q.lattice(), "Y", k)
                for _, Q, _ in _quotient_lattices(G))
            checks["subgroup_closure_Y"] = all(
                _member_in_Y(L, a, k) for a in range(len(L.subgroups)))
            _merge_counters(counters, {"nonvacuous_Y_closures": 1})
        sub_ok = True
        normals = structure.normal_ids_in(L, L.top.id)
        for i, n1 in enumerate(normals):
            for n2 in normals[i + 1:]:
                if L.meet(n1, n2) != L.bottom.id:
                    continue
                q1 = quotient_cached(G, L.subgroups[n1].mask)[0]
                q2 = quotient_cached(G, L.subgroups[n2].mask)[0]
                if (submodular.in_class(q1.lattice(), "Y", k)
                        and submodular.in_class(q2.lattice(), "Y", k)):
                    _merge_counters(counters, {"nonvacuous_subdirect_Y": 1})
                    if not in_Y:
                        sub_ok = False
        checks["subdirect_closure_Y"] = sub_ok
        phi = L.frattini()
        if phi == L.bottom.id:
            y_of_quot = in_Y
        else:
            y_of_quot = submodular.in_class(
                quotient_cached(G, L.subgroups[phi].mask)[0].lattice(), "Y", k)
        checks["frattini_X_iff_Y"] = in_X == y_of_quot
        checks["X_supersoluble"] = (not in_X) or structure.is_supersoluble(G)
        if k == 1:
            # k=1 corollary, phrased with the modular/submodular predicates
            all_max_modular = all(
                submodular.is_modular_subgroup(L, L.subgroups[m])
                for m in L.hasse_down[L.top.id])
            if phi == L.bottom.id:
                qL = L
            else:
                qL = quotient_cached(G, L.subgroups[phi].mask)[0].lattice()
            all_sub_submodular = (
                len(submodular.submodular_set(qL)) == len(qL.subgroups))
            checks["c3_modular_frattini"] = all_max_modular == all_sub_submodular
        failures = [c for c, v in checks.items() if not v]
        records.append({"group": entry.name, "k": k, "checks": checks,
                        "pass": not failures,
                        "witness": {"failed_checks": failures} if failures else None,
                        "elapsed": round(time.perf_counter() - t0, 4)})
    return records, counters


def _eval_lf_suite(entry: CorpusEntry, k_set: list[int], cls: str):
    """Shared body of the T3.5 (cls='K') and T3.6 (cls='F') suites."""
    records, counters = [], {}
    G = entry.group
    L = entry.lattice
    for k in k_set:
        t0 = time.perf_counter()
        fn = classes.h_function(k) if cls == "K" else classes.f_function(k)
        member = submodular.in_class(L, cls, k)
        checks = {"local_formation_agreement":
                  member == classes.in_local_formation(G, fn)}
        if member:
            checks["subgroup_closure"] = all(
                submodular.in_class_member(L, a, cls, k)
                for a in range(len(L.subgroups)))
            checks["quotient_closure"] = all(
                submodular.in_class(Q.lattice(), cls, k)
                for _, Q, _ in _quotient_lattices(G))
            _merge_counters(counters, {f"nonvacuous_{cls}_closures": 1})
        phi = L.frattini()
        if phi != L.bottom.id:
            quot_member = submodular.in_class(
                quotient_cached(G, L.subgroups[phi].mask)[0].lattice(), cls, k)
            checks["saturation"] = (not quot_member) or member
            if quot_member:
                _merge_counters(counters, {f"nonvacuous_{cls}_saturation": 1})
        failures = [c for c, v in checks.items() if not v]
        records.append({"group": entry.name, "k": k, "checks": checks,
                        "pass": not failures,
                        "witness": {"failed_checks": failures} if failures else None,
                        "elapsed": round(time.perf_counter() - t0, 4)})
    return records, counters


def _eval_T35(entry, k_set):
    return _eval_lf_suite(entry, k_set, "K")


def _eval_T36(entry, k_set):
    return _eval_lf_suite(entry, k_set, "F")


def _K_oracle(k: int) -> classes.ClassOracle:
    """The supersoluble-with-k-submodular-Sylows class as a formation."""
    return classes.ClassOracle(
        f"Kcls_{k}",
        lambda G: submodular.in_class(G.lattice(), "K", k),
        is_formation=True, is_hereditary=True)


def _eval_P31(entry: CorpusEntry, k_set: list[int]):
    records, counters = [], {}
    G = entry.group
    L = entry.lattice
    for k in k_set:
        t0 = time.perf_counter()
        Uk = classes.oracle("U_k", k=k)
        lhs1 = submodular.in_class(L, "K", k)
        rhs1 = structure.is_supersoluble(G) and classes.in_wF(G, Uk)
        lhs2 = submodular.in_class(L, "F", k)
        rhs2 = classes.in_wF(G, _K_oracle(k))
        checks = {"K_eq_U_and_wUk": lhs1 == rhs1, "F_eq_wK": lhs2 == rhs2}
        if lhs1:
            _merge_counters(counters, {"nonvacuous_K_members": 1})
        if lhs2:
            _merge_counters(counters, {"nonvacuous_F_members": 1})
        failures = [c for c, v in checks.items() if not v]
        records.append({"group": entry.name, "k": k, "checks": checks,
                        "pass": not failures,
                        "witness": {"failed_checks": failures} if failures else None,
                        "elapsed": round(time.perf_counter() - t0, 4)})
    return records, counters


def _is_set_product(G: FiniteGroup, L: SubgroupLattice, a: int, b: int) -> bool:
    sa, sb = L.subgroups[a], L.subgroups[b]
    d = L.meet(a, b)
    if sa.order * sb.order != G.order * L.subgroups[d].order:
        return False
    # counting passed; confirm the product really covers G
    mult = G.mult
    seen = 0
    for x in sa.members:
        row = mult[x]
        for y in sb.members:
            seen |= 1 << row[y]
    return seen == G.full_mask()


def _eval_T361(entry: CorpusEntry, k_set: list[int]):
    records, counters = [], {}
    G = entry.group
    L = entry.lattice
    nilpotent_ids = [a for a in range(len(L.subgroups))
                     if structure.is_nilpotent_in(L, a)]
    for k in k_set:
        t0 = time.perf_counter()
        reach = submodular.ksub_set(L, k)
        conclusion = None
        found = 0
        nontrivial = 0
        ok = True
        for i, a in enumerate(nilpotent_ids):
            for b in nilpotent_ids[i:]:
                if a not in reach or b not in reach:
                    continue
                if not _is_set_product(G, L, a, b):
                    continue
                found += 1
                if L.subgroups[a].order < G.order and L.subgroups[b].order < G.order:
                    nontrivial += 1
                if conclusion is None:
                    conclusion = (structure.is_supersoluble(G)
                                  and submodular.in_class(L, "F", k))
                if not conclusion:
                    ok = False
        _merge_counters(counters, {"factorizations": found,
                                   "nonvacuous_nontrivial_factorizations": nontrivial})
        records.append({"group": entry.name, "k": k,
                        "factorizations": found, "nontrivial": nontrivial,
                        "pass": ok,
                        "witness": None if ok else {"factorization_pair": True},
                        "elapsed": round(time.perf_counter() - t0, 4)})
    return records, counters


def _eval_R1(entry: CorpusEntry, k_set: list[int]):
    records, counters = [], {}
    L = entry.lattice
    t0 = time.perf_counter()
    checks = {"one_submodular_eq_submodular":
              submodular.ksub_set(L, 1) == submodular.submodular_set(L)}
    max_ok = True
    for m in L.hasse_down[L.top.id]:
        M = L.subgroups[m]
        modular = submodular.is_modular_subgroup(L, M)
        one_sub = m in submodular.ksub_set(L, 1)
        schmidt = submodular.schmidt_maximal_modular(L, M)
        if not (modular == one_sub == schmidt):
            max_ok = False
        _merge_counters(counters, {"nonvacuous_maximal_checks": 1})
    checks["maximal_modular_collapse"] = max_ok
    failures = [c for c, v in checks.items() if not v]
    records.append({"group": entry.name, "k": 1, "checks": checks,
                    "pass": not failures,
                    "witness": {"failed_checks": failures} if failures else None,
                    "elapsed": round(time.perf_counter() - t0, 4)})
    return records, counters


def _is_classic_LM(L: SubgroupLattice) -> bool:
    """LM-group in the classical sense: A maximal in <A,B> forces A meet B
    maximal in B."""
    m = len(L.subgroups)
    for a in range(m):
        for b in range(m):
            j = L.join(a, b)
            if a == j or a not in L.hasse_down[j]:
                continue
            if L.meet(a, b) not in L.hasse_down[b]:
                return False
    return True


def _eval_R2(entry: CorpusEntry, k_set: list[int]):
    records, counters = [], {}
    L = entry.lattice
    t0 = time.perf_counter()
    one_lm = submodular.is_k_LM_group(L, 1)[0]
    classic = _is_classic_LM(L)
    if one_lm:
        _merge_counters(counters, {"nonvacuous_lm_members": 1})
    ok = one_lm == classic
    records.append({"group": entry.name, "k": 1,
                    "checks": {"one_LM_eq_LM": ok}, "pass": ok,
                    "witness": None if ok else {"one_LM": one_lm, "LM": classic},
                    "elapsed": round(time.perf_counter() - t0, 4)})
    return records, counters


def _eval_R3(entry: CorpusEntry, k_set: list[int]):
    records, counters = [], {}
    L = entry.lattice
    for k in k_set:
        t0 = time.perf_counter()
        member = {c: submodular.in_class(L, c, k) for c in "YXKF"}
        chain_ok = ((not member["Y"] or member["X"])
                    and (not member["X"] or member["K"])
                    and (not member["K"] or member["F"]))
        for gap in ("X_not_Y", "K_not_X", "F_not_K"):
            hi, lo = gap[0], gap[-1]
            if member[hi] and not member[lo]:
                _merge_counters(counters, {f"strictness_{gap}": 1})
        records.append({"group": entry.name, "k": k, "membership": member,
                        "pass": chain_ok,
                        "witness": None if chain_ok else {"membership": member},
                        "elapsed": round(time.perf_counter() - t0, 4)})
    return records, counters


# -- lemma suite -------------------------------------------------------------


def _lemma_21(entry, k_set, checks, counters):
    """n-modular embedding transfers to and from quotients by N <= H."""
    G = entry.group
    L = entry.lattice
    ok = True
    for sub, Q, epi in _quotient_lattices(G):
        Lq = Q.lattice()
        for h in range(len(L.subgroups)):
            if not L.leq(L.by_mask[sub.mask], h) or h == L.top.id:
                continue
            h_img = _image_id(Lq, epi, L.subgroups[h].mask)
            if h_img == Lq.top.id:
                continue
            for n in (1, 2, 3):
                down = submodular.is_n_modularly_embedded(
                    L, L.top, L.subgroups[h], n)
                up = submodular.is_n_modularly_embedded(
                    Lq, Lq.top, Lq.subgroups[h_img], n)
                if down != up:
                    ok = False
                if not L.is_normal_in(h, L.top.id):
                    _merge_counters(counters, {"nonvacuous_L2.1": 1})
    checks["L2.1"] = ok


def _lemma_22(entry, k_set, checks, counters):
    """Maximal M k-submodular iff the core quotient has the Schmidt-like
    Sylow structure of the lemma."""
    G = entry.group
    L = entry.lattice
    ok = True
    for k in k_set:
        reach = submodular.ksub_set(L, k)
        for m in L.hasse_down[L.top.id]:
            lhs = m in reach
            if L.normal_mask(m):
                rhs = True
            else:
                c = L.core(m)
                Q, epi = quotient_cached(G, L.subgroups[c].mask)
                m_ord = L.subgroups[m].order // L.subgroups[c].order
                pp = prime_power(m_ord)
                facs = factorize(Q.order)
                rhs = (pp is not None and len(facs) == 2
                       and not structure.is_nilpotent(Q))
                if rhs:
                    q, n = pp
                    p = Q.order // m_ord
                    Lq = Q.lattice()
                    m_img = _image_id(Lq, epi, L.subgroups[m].mask)
                    p_syl = structure.sylow_in(Lq, Lq.top.id, p)
                    rhs = (n <= k and p in facs and facs[p] == 1
                           and Lq.subgroups[p_syl].order == p
                           and Lq.normal_mask(p_syl)
                           and Lq.subgroups[m_img].order == q**n
                           and _is_cyclic_member(Lq, m_img))
                _merge_counters(counters, {"nonvacuous_L2.2": 1})
            if lhs != rhs:
                ok = False
    checks["L2.2"] = ok


def _is_cyclic_member(L: SubgroupLattice, a: int) -> bool:
    sub = L.subgroups[a]
    orders = L.group.element_orders
    return any(orders[x] == sub.order for x in sub.members)


def _lemma_23(entry, k_set, checks, counters):
    L = entry.lattice
    ok = True
    for k in k_set:
        reach = submodular.ksub_set(L, k)
        maxes = L.hasse_down[L.top.id]
        if all(m in reach for m in maxes):
            if not structure.is_supersoluble(entry.group):
                ok = False
            _merge_counters(counters, {"nonvacuous_L2.3": 1})
        psub = classes.p_subnormal_set(L)
        kpsub = classes.p_subnormal_set(L, variant_k=True)
        for m in maxes:
            if m in reach and not (m in psub and m in kpsub):
                ok = False
    checks["L2.3"] = ok


def _lemma_24(entry, k_set, checks, counters):
    L = entry.lattice
    ok = True
    for k in k_set:
        reach = submodular.ksub_set(L, k)
        for h in reach:
            for c in L.conjugates(h):
                if c not in reach:
                    ok = False
                if c != h:
                    _merge_counters(counters, {"nonvacuous_L2.4_conj": 1})
        for r in reach:
            if r == L.top.id:
                continue
            for h in submodular.ksub_set(L, k, top=r):
                if h not in reach:
                    ok = False
                if h != r:
                    _merge_counters(counters, {"nonvacuous_L2.4_trans": 1})
    checks["L2.4"] = ok


def _lemma_25(entry, k_set, checks, counters):
    L = entry.lattice
    ok = True
    for k in k_set:
        reach = submodular.ksub_set(L, k)
        for h in reach:
            for u in range(len(L.subgroups)):
                d = L.meet(h, u)
                if d not in submodular.ksub_set(L, k, top=u):
                    ok = False
                if d != h and d != u:
                    _merge_counters(counters, {"nonvacuous_L2.5": 1})
                if u in reach and d not in reach:
                    ok = False
    checks["L2.5"] = ok


def _lemma_26(entry, k_set, checks, counters):
    G = entry.group
    L = entry.lattice
    ok = True
    for sub, Q, epi in _quotient_lattices(G):
        Lq = Q.lattice()
        n_id = L.by_mask[sub.mask]
        for k in k_set:
            reach = submodular.ksub_set(L, k)
            reach_q = submodular.ksub_set(Lq, k)
            for h in range(len(L.subgroups)):
                hn = L.join(h, n_id)
                hn_img = _image_id(Lq, epi, L.subgroups[hn].mask)
                if h in reach and hn_img not in reach_q:
                    ok = False  # (1) fails
                if (hn_img in reach_q) != (hn in reach):
                    ok = False  # (3) fails
                if L.leq(n_id, h) and hn_img in reach_q and h not in reach:
                    ok = False  # (2) fails
                if h != hn:
                    _merge_counters(counters, {"nonvacuous_L2.6": 1})
    checks["L2.6"] = ok


def _lemma_27(entry, k_set, checks, counters):
    L = entry.lattice
    if not structure.is_soluble(entry.group):
        return
    ok = True
    for k in k_set:
        reach = submodular.ksub_set(L, k)
        Uk = classes.oracle("U_k", k=k)
        usub = classes.f_subnormal_set(L, Uk)
        if not reach <= usub:
            ok = False
        if usub - reach:
            _merge_counters(counters, {"L2.7_converse_gap_groups": 1})
        _merge_counters(counters, {"nonvacuous_L2.7": len(reach) - 1})
    checks.setdefault("L2.7", True)
    checks["L2.7"] = checks["L2.7"] and ok


def _lemma_28(entry, k_set, checks, counters):
    G = entry.group
    L = entry.lattice
    if G.order == 1:
        return
    p = max(G.prime_divisors())
    syl = structure.sylow_in(L, L.top.id, p)
    ok = True
    for k in k_set:
        if syl in submodular.ksub_set(L, k):
            if not L.normal_mask(syl):
                ok = False
            _merge_counters(counters, {"nonvacuous_L2.8": 1})
    checks.setdefault("L2.8", True)
    checks["L2.8"] = checks["L2.8"] and ok


def _lemma_monotone(entry, k_set, checks, counters):
    L = entry.lattice
    ks = sorted(k_set)
    ok = True
    for k1, k2 in zip(ks, ks[1:]):
        r1 = submodular.ksub_set(L, k1)
        r2 = submodular.ksub_set(L, k2)
        if not r1 <= r2:
            ok = False
        if r2 - r1:
            _merge_counters(counters, {"nonvacuous_monotone_strict": 1})
        _merge_counters(counters, {"nonvacuous_monotone": 1})
    checks["monotone_k"] = ok


def _lemma_31(entry, k_set, checks, counters):
    G = entry.group
    L = entry.lattice
    U = classes.oracle("U")
    ok = True
    for k in k_set:
        in_F = submodular.in_class(L, "F", k)
        if structure.is_nilpotent(G):
            if not in_F:
                ok = False
            _merge_counters(counters, {"nonvacuous_L3.1_nilpotent": 1})
        if in_F:
            if not classes.in_wF(G, U):
                ok = False
            # (2) quotient closure and (5) subgroup closure
            if not all(submodular.in_class(Q.lattice(), "F", k)
                       for _, Q, _ in _quotient_lattices(G)):
                ok = False
            if not all(submodular.in_class_member(L, a, "F", k)
                       for a in range(len(L.subgroups))):
                ok = False
            _merge_counters(counters, {"nonvacuous_L3.1_members": 1})
        # (3) subdirect closure
        normals = structure.normal_ids_in(L, L.top.id)
        for i, n1 in enumerate(normals):
            for n2 in normals[i + 1:]:
                if L.meet(n1, n2) != L.bottom.id:
                    continue
                if L.subgroups[n1].order == 1 or L.subgroups[n2].order == 1:
                    continue
                q1 = quotient_cached(G, L.subgroups[n1].mask)[0]
                q2 = quotient_cached(G, L.subgroups[n2].mask)[0]
                if (submodular.in_class(q1.lattice(), "F", k)
                        and submodular.in_class(q2.lattice(), "F", k)):
                    _merge_counters(counters, {"nonvacuous_L3.1_subdirect": 1})
                    if not in_F:
                        ok = False
    checks["L3.1"] = ok


def _eval_L(entry: CorpusEntry, k_set: list[int]):
    records, counters = [], {}
    checks: dict[str, bool] = {}
    t0 = time.perf_counter()
    for fn in (_lemma_21, _lemma_22, _lemma_23, _lemma_24, _lemma_25,
               _lemma_26, _lemma_27, _lemma_28, _lemma_monotone, _lemma_31):
        fn(entry, k_set, checks, counters)
    failures = [c for c, v in checks.items() if not v]
    records.append({"group": entry.name, "k": list(k_set), "checks": checks,
                    "pass": not failures,
                    "witness": {"failed_checks": failures} if failures else None,
                    "elapsed": round(time.perf_counter() - t0, 4)})
    return records, counters


def _lemma_31_products(corpus: list[CorpusEntry], k_set: list[int]):
    """Direct products of small class members stay in the class."""
    record = {"group": "corpus:direct-products", "k": list(k_set),
              "checks": {}, "pass": True, "witness": None, "elapsed": 0.0}
    counters: dict[str, int] = {"nonvacuous_L3.1_product": 0}
    t0 = time.perf_counter()
    from .permgroup import direct_product

    small = [e for e in corpus if 1 < e.order <= 12]
    ok = True
    for k in k_set:
        members = [e for e in small
                   if submodular.in_class(e.lattice, "F", k)][:3]
        for i, e1 in enumerate(members):
            for e2 in members[i:]:
                if e1.order * e2.order > order_cap():
                    continue
                P = direct_product(e1.group, e2.group)
                counters["nonvacuous_L3.1_product"] += 1
                if not submodular.in_class(P.lattice(), "F", k):
                    ok = False
    record["checks"]["L3.1_product"] = ok
    record["pass"] = ok
    if not ok:
        record["witness"] = {"failed_checks": ["L3.1_product"]}
    record["elapsed"] = round(time.perf_counter() - t0, 4)
    return record, counters


_SUITE_EVAL = {
    "T3.1": _eval_T31, "T3.2": _eval_T32, "T3.3": _eval_T33,
    "T3.5": _eval_T35, "T3.6": _eval_T36, "P3.1": _eval_P31,
    "T3.6_1": _eval_T361, "R1": _eval_R1, "R2": _eval_R2, "R3": _eval_R3,
    "L": _eval_L,
}


def _lemma_corpus(corpus: list[CorpusEntry]) -> list[CorpusEntry]:
    return [e for e in corpus
            if e.order <= LEMMA_SUITE_MAX_ORDER or e.name in LEMMA_SUITE_EXTRA]


def _eval_entry(args):
    suite, name, spec, k_set = args
    entry = CorpusEntry(name, spec)
    return _SUITE_EVAL[suite](entry, k_set)


def run_suite(suite: str, k_set: list[int], corpus: list[CorpusEntry],
              jobs: int = 1) -> VerificationReport:
    if suite not in _SUITE_EVAL:
        raise GroupError(f"unknown suite {suite!r}")
    if any(k < 1 for k in k_set):
        raise GroupError("k values must be >= 1")
    k_set = sorted(set(k_set))
    entries = _lemma_corpus(corpus) if suite == "L" else corpus
    all_records: list[dict] = []
    counters: dict[str, int] = {}
    if jobs > 1:
        work = [(suite, e.name, e.spec, k_set) for e in entries]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_eval_entry, work))
    else:
        results = [_SUITE_EVAL[suite](e, k_set) for e in entries]
    for records, part in results:
        all_records.extend(records)
        _merge_counters(counters, part)
    all_records.sort(key=lambda r: (r["group"], str(r["k"])))
    if suite == "L":
        record, part = _lemma_31_products(entries, k_set)
        all_records.append(record)
        _merge_counters(counters, part)
        # every lemma needs at least one non-vacuous instance; seed the
        # counters with zero so an untested lemma fails the suite
        for key in ("nonvacuous_L2.1", "nonvacuous_L2.2", "nonvacuous_L2.3",
                    "nonvacuous_L2.4_conj", "nonvacuous_L2.4_trans",
                    "nonvacuous_L2.5", "nonvacuous_L2.6", "nonvacuous_L2.7",
                    "nonvacuous_L2.8", "nonvacuous_monotone",
                    "nonvacuous_L3.1_nilpotent", "nonvacuous_L3.1_members",
                    "nonvacuous_L3.1_subdirect"):
            counters.setdefault(key, 0)
        # the converse of the soluble-case subnormality lemma must be
        # falsified somewhere in the corpus (the order-42 holomorph does it)
        counters.setdefault("L2.7_converse_gap_groups", 0)
        counters["nonvacuous_L2.7_converse_falsified"] = (
            counters["L2.7_converse_gap_groups"])
    return VerificationReport(suite, k_set, all_records, counters)


def run_suites(suites: list[str], k_set: list[int], corpus: list[CorpusEntry],
               jobs: int = 1) -> list[VerificationReport]:
    return [run_suite(s, k_set, corpus, jobs=jobs) for s in suites]


def report_to_file(reports: list[VerificationReport], path: str) -> None:
    payload = {"schema_version": SCHEMA_VERSION,
               "reports": [r.to_json() for r in reports]}
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


# -- witness search ----------------------------------------------------------


def find_witness(query: str, corpus: list[CorpusEntry]):
    """Search the corpus for a separating example.

    Query forms:
      "class-diff:C1,k1,C2,k2"  first entry in class C1 at k1 but not in C2
                                at k2 (classes X, Y, K, F).
      "subnormal-not-submodular:k"  first entry owning a subgroup that is
                                U_k-subnormal but not k-submodular.
    Returns (entry, detail) or None.
    """
    kind, _, rest = query.partition(":")
    if kind == "class-diff":
        try:
            c1, k1, c2, k2 = rest.split(",")
            k1, k2 = int(k1), int(k2)
        except ValueError as exc:
            raise GroupError(f"malformed query {query!r}") from exc
        if c1 not in submodular.CLASS_IDS or c2 not in submodular.CLASS_IDS:
            raise GroupError(f"unknown class in query {query!r}")
        for e in corpus:
            L = e.lattice
            if (submodular.in_class(L, c1, k1)
                    and not submodular.in_class(L, c2, k2)):
                return e, {"in": f"{c1}(k={k1})", "not_in": f"{c2}(k={k2})"}
        return None
    if kind == "subnormal-not-submodular":
        try:
            k = int(rest)
        except ValueError as exc:
            raise GroupError(f"malformed query {query!r}") from exc
        Uk = classes.oracle("U_k", k=k)
        for e in corpus:
            L = e.lattice
            gap = (classes.f_subnormal_set(L, Uk)
                   - submodular.ksub_set(L, k))
            if gap:
                a = min(gap)
                return e, {"subgroup": L.subgroups[a].gen_cycles(),
                           "subgroup_order": L.subgroups[a].order}
        return None
    raise GroupError(f"unknown query kind {kind!r}")
