"""End-to-end analysis pipeline and report assembly.

The pipeline wires the whole verification chain for one (group, prime):
Sylow data, the intersection poset and its closure operator, the three
categories and their laws, the quotient-functor conditions, the adjunction,
nerve-homology comparisons (transporter vs classifying space, centric
restriction, transporter vs linking), higher-limit checks (punctured
vanishing, normalizer reduction, restriction, filtration), and the final
comparison of the linking-system nerve against the classifying space.

Budget overruns in one stage mark it not-certified and the run continues;
earlier verdicts are kept.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from . import categories as cats
from .catalog import GroupSpec, build_group
from .cohomology import CohomologyCache
from .errors import BudgetExceeded, PLocalError
from .groups import (
    DEFAULT_ORDER_BOUND,
    PermutationGroup,
    all_subgroups,
    is_prime,
    p_part,
    sylow_subgroup,
)
from .homology import (
    FpComplex,
    bar_complex,
    homology_iso_verdict,
    induced_chain_map,
    nerve_complex,
)
from .limit_checks import (
    OrbitSkeletons,
    atomic_functor_limits,
    build_orbit_skeletons,
    class_filtration_check,
    normalizer_reduction_check,
    punctured_class_vanishing,
    support_restriction_check,
)
from .limits import ModuleData
from .omega import (
    build_intersection_poset,
    classify_centric,
    longest_chain_length,
    verify_closure_properties,
)
from .report import (
    NOT_CERTIFIED,
    AnalysisReport,
    finalize_overall,
    verdict_str,
)

ALL_CHECKS = (
    "closure",
    "categories",
    "quotient",
    "adjunction",
    "nerve-vs-group",
    "centric-restriction",
    "centric-agreement",
    "linking-vs-transporter",
    "punctured",
    "normalizer-reduction",
    "atomic-vanishing",
    "restriction",
    "filtration",
    "main",
)


@dataclass
class PipelineConfig:
    prime: int
    max_degree: int = 4
    max_limit_degree: int = 3
    cohomology_index_max: int = 2
    budget: int = 2_000_000
    skeletal: bool = True
    checks: tuple[str, ...] | None = None
    include_timings: bool = True
    order_bound: int = DEFAULT_ORDER_BOUND

    def wants(self, check: str) -> bool:
        return self.checks is None or check in self.checks


class PipelineRun:
    """One analysis run; artifacts are built lazily and shared across stages."""

    def __init__(self, G: PermutationGroup, config: PipelineConfig, source: str):
        if not is_prime(config.prime):
            raise PLocalError(f"{config.prime} is not prime")
        self.G = G
        self.cfg = config
        self.source = source
        self.p = config.prime
        self.timings: dict[str, float] = {}
        self.notes: list[str] = []
        self._cache: dict[str, object] = {}

    # -- cached artifacts -------------------------------------------------

    def _get(self, key: str, build):
        if key not in self._cache:
            t0 = time.perf_counter()
            self._cache[key] = build()
            self.timings[key] = round(time.perf_counter() - t0, 6)
        return self._cache[key]

    @property
    def sylow(self):
        return self._get("sylow", lambda: sylow_subgroup(self.G, self.p))

    @property
    def poset(self):
        return self._get("poset", lambda: build_intersection_poset(self.G, self.p))

    @property
    def sylow_subgroup_list(self):
        return self._get("sylow_subgroups", lambda: all_subgroups(self.sylow))

    @property
    def centricity(self):
        def build():
            extra = [H for H in self.sylow_subgroup_list]
            seen = {H.ids for H in extra}
            for M in self.poset.members:
                if M.ids not in seen:
                    extra.append(M)
                    seen.add(M.ids)
            return classify_centric(self.G, self.p, extra)
        return self._get("centricity", build)

    @property
    def centric_in_sylow(self):
        def build():
            table = self.centricity
            return [
                H for H in self.sylow_subgroup_list
                if table.record_for(H).is_centric
            ]
        return self._get("centric_in_sylow", build)

    @property
    def omega_in_sylow(self):
        return self._get(
            "omega_in_sylow",
            lambda: [self.poset.members[i] for i in self.poset.members_in(self.sylow)],
        )

    @property
    def omega_centric_in_sylow(self):
        def build():
            table = self.centricity
            return [H for H in self.omega_in_sylow if table.record_for(H).is_centric]
        return self._get("omega_centric_in_sylow", build)

    @property
    def transporter_omega(self):
        return self._get(
            "transporter_omega",
            lambda: cats.build_transporter(self.G, self.omega_in_sylow, self.cfg.budget),
        )

    @property
    def transporter_omega_centric(self):
        return self._get(
            "transporter_omega_centric",
            lambda: cats.build_transporter(
                self.G, self.omega_centric_in_sylow, self.cfg.budget
            ),
        )

    @property
    def transporter_centric(self):
        def build():
            T = cats.build_transporter(self.G, self.centric_in_sylow, self.cfg.budget)
            if self.cfg.skeletal:
                T, _ = cats.skeleton(T)
            return T
        return self._get("transporter_centric", build)

    @property
    def linking_projection(self):
        return self._get(
            "linking_projection",
            lambda: cats.quotient_projection(self.transporter_centric, self.p, self.cfg.budget),
        )

    @property
    def linking_centric(self):
        return self.linking_projection.target

    @property
    def skeletons(self) -> OrbitSkeletons:
        return self._get(
            "skeletons",
            lambda: build_orbit_skeletons(self.G, self.p, self.poset, self.cfg.budget),
        )

    @property
    def cohomology_cache(self) -> CohomologyCache:
        return self._get(
            "cohomology_cache", lambda: CohomologyCache(self.G, self.p, self.cfg.budget)
        )

    def complex_of(self, name: str, cat, dmax: int) -> FpComplex:
        return self._get(
            f"cx:{name}:{dmax}",
            lambda: nerve_complex(cat, self.p, dmax, self.cfg.budget),
        )

    @property
    def bar(self) -> FpComplex:
        return self._get(
            "bar", lambda: bar_complex(self.G, self.p, self.cfg.max_degree, self.cfg.budget)
        )

    # -- stages -------------------------------------------------------------

    def run(self) -> AnalysisReport:
        cfg = self.cfg
        verdicts: dict[str, str] = {}
        detail: dict[str, dict] = {
            "categories": {},
            "homology": {},
            "limits": {},
        }

        def stage(check: str, fn):
            if not cfg.wants(check):
                return
            t0 = time.perf_counter()
            try:
                fn(verdicts, detail)
            except BudgetExceeded as e:
                self.notes.append(f"{check}: {e}")
                for key in _CHECK_VERDICT_KEYS[check]:
                    verdicts.setdefault(key, NOT_CERTIFIED)
            self.timings[f"stage:{check}"] = round(time.perf_counter() - t0, 6)

        stage("closure", self._stage_closure)
        stage("categories", self._stage_categories)
        stage("quotient", self._stage_quotient)
        stage("adjunction", self._stage_adjunction)
        stage("nerve-vs-group", self._stage_nerve_vs_group)
        stage("centric-restriction", self._stage_centric_restriction)
        stage("centric-agreement", self._stage_centric_agreement)
        stage("linking-vs-transporter", self._stage_t_vs_l)
        stage("punctured", self._stage_punctured)
        stage("normalizer-reduction", self._stage_reduction)
        stage("atomic-vanishing", self._stage_atomic)
        stage("restriction", self._stage_restriction)
        stage("filtration", self._stage_filtration)
        stage("main", self._stage_main)

        data = self._assemble(verdicts, detail)
        return AnalysisReport(data)

    def _stage_closure(self, verdicts, detail):
        v = verify_closure_properties(
            self.G, self.p, self.poset, self.sylow_subgroup_list
        )
        verdicts["closure_extends_and_monotone"] = verdict_str(v.extends_and_monotone)
        verdicts["closure_idempotent"] = verdict_str(v.idempotent)
        verdicts["closure_preserves_transporters"] = verdict_str(v.transporter_monotone)
        verdicts["closure_transporter_equality"] = verdict_str(v.transporter_equality)
        detail["limits"]["closure_pairs_checked"] = v.pairs_checked

    def _stage_categories(self, verdicts, detail):
        built = {
            "transporter_poset": self.transporter_omega,
            "transporter_poset_centric": self.transporter_omega_centric,
            "transporter_centric": self.transporter_centric,
            "linking_centric": self.linking_centric,
            "orbit_poset_skeleton": self.skeletons.omega_cat,
            "orbit_full_skeleton": self.skeletons.p_cat,
        }
        ok = True
        for name, cat in built.items():
            verdict = cats.verify_category(cat)
            ok = ok and verdict.passed
            detail["categories"][name] = {
                "objects": cat.object_count,
                "morphisms": cat.morphism_count,
                "laws": verdict_str(verdict.passed),
            }
        # orbit morphism-count identity |Mor(1, Q)| = |G| / |Q|
        pcat = self.skeletons.p_cat
        triv = next(
            (k for k, R in enumerate(self.skeletons.p_reps) if R.order == 1), None
        )
        if triv is not None:
            for j, R in enumerate(self.skeletons.p_reps):
                if len(pcat.mor(triv, j)) != self.G.order // R.order:
                    ok = False
                    self.notes.append(f"orbit coset count wrong at {R.label()}")
        verdicts["category_laws"] = verdict_str(ok)

    def _stage_quotient(self, verdicts, detail):
        v = cats.verify_quotient_functor(self.linking_projection, self.p)
        verdicts["quotient_functor_conditions"] = verdict_str(v.passed)
        detail["categories"]["quotient_kernel_orders"] = v.kernel_orders

    def _stage_adjunction(self, verdicts, detail):
        v = cats.verify_closure_adjunction(
            self.G, self.p, self.poset, self.sylow_subgroup_list, self.cfg.budget
        )
        verdicts["closure_inclusion_adjunction"] = verdict_str(v.passed)
        detail["limits"]["adjunction_pairs_checked"] = v.pairs_checked

    def _stage_nerve_vs_group(self, verdicts, detail):
        dmax = self.cfg.max_degree
        bar = self.bar
        t_omega_cx = self.complex_of("transporter_poset", self.transporter_omega, dmax)
        bar_h = bar.homology()
        t_h = t_omega_cx.homology()
        detail["homology"]["classifying_space"] = {
            "dims": bar_h.dims, "exact_through": dmax - 1}
        detail["homology"]["transporter_poset_nerve"] = {
            "dims": t_h.dims, "exact_through": dmax - 1}

        cosets = cats.coset_category(self.G, self.omega_in_sylow)
        coset_h = nerve_complex(cosets, self.p, dmax, self.cfg.budget).homology()
        point = [1] + [0] * (dmax - 1)
        detail["homology"]["coset_category_nerve"] = {
            "dims": coset_h.dims, "expected": point}

        T = self.transporter_omega
        min_idx = next(
            i for i, P in enumerate(T.objects)
            if P.ids == self.poset.members[self.poset.minimum].ids
        )
        bg_cat = cats.build_transporter(
            self.G, [self.G.full_subgroup()],
            table_budget=max(self.cfg.budget, self.G.order ** 2),
        )
        functor = cats.Functor(
            bg_cat, T, [min_idx],
            [T.token_by_witness(min_idx, min_idx, m.witness) for m in bg_cat.morphisms],
        )
        ok = functor.is_functor
        cm = induced_chain_map(functor, bar, t_omega_cx)
        iso = homology_iso_verdict(cm)
        dims_equal = bar_h.dims[: dmax - 1] == t_h.dims[: dmax - 1]
        detail["homology"]["group_into_transporter_iso"] = {
            "certified_through": iso.certified_through,
            "iso": iso.iso_by_degree,
        }
        verdicts["transporter_nerve_vs_classifying_space"] = verdict_str(
            ok and iso.passed and dims_equal and coset_h.dims == point
        )

    def _stage_centric_restriction(self, verdicts, detail):
        dmax = self.cfg.max_degree
        T = self.transporter_omega
        sub_idx = [
            i for i, P in enumerate(T.objects)
            if self.centricity.record_for(P).is_centric
        ]
        sub, incl = cats.full_subcategory(T, sub_idx)
        src = nerve_complex(sub, self.p, max(dmax - 1, 1), self.cfg.budget)
        tgt = self.complex_of("transporter_poset", T, dmax)
        cm = induced_chain_map(incl, src, tgt)
        iso = homology_iso_verdict(cm)
        detail["homology"]["centric_restriction_iso"] = {
            "certified_through": iso.certified_through,
            "iso": iso.iso_by_degree,
        }
        verdicts["centric_restriction_homology"] = verdict_str(iso.passed)

    def _stage_centric_agreement(self, verdicts, detail):
        dmax = max(self.cfg.max_degree - 1, 1)
        cx_omega_c = self.complex_of(
            "transporter_poset_centric", self.transporter_omega_centric, dmax
        )
        cx_centric = self.complex_of(
            "transporter_centric", self.transporter_centric, dmax
        )
        a = cx_omega_c.homology().dims
        b = cx_centric.homology().dims
        detail["homology"]["transporter_centric_nerve"] = {
            "dims": b, "exact_through": dmax - 1}
        detail["homology"]["transporter_poset_centric_nerve"] = {
            "dims": a, "exact_through": dmax - 1}
        verdicts["centric_collections_agree"] = verdict_str(a == b)

    def _stage_t_vs_l(self, verdicts, detail):
        dmax = self.cfg.max_degree
        quotient_ok = cats.verify_quotient_functor(self.linking_projection, self.p).passed
        src = self.complex_of(
            "transporter_centric", self.transporter_centric, max(dmax - 1, 1)
        )
        tgt = self.complex_of("linking_centric", self.linking_centric, dmax)
        cm = induced_chain_map(self.linking_projection, src, tgt)
        iso = homology_iso_verdict(cm)
        detail["homology"]["linking_nerve"] = {
            "dims": tgt.homology().dims, "exact_through": dmax - 1}
        detail["homology"]["transporter_into_linking_iso"] = {
            "certified_through": iso.certified_through,
            "iso": iso.iso_by_degree,
        }
        verdicts["transporter_vs_linking_homology"] = verdict_str(
            quotient_ok and iso.passed
        )

    def _stage_punctured(self, verdicts, detail):
        skel = self.skeletons
        nmax = self.cfg.max_limit_degree
        records = []
        ok = True
        for k, R in enumerate(skel.p_reps):
            if skel.p_centric[k]:
                continue
            for i in range(self.cfg.cohomology_index_max + 1):
                v = punctured_class_vanishing(
                    skel, R, i, nmax, self.cfg.budget, self.cohomology_cache
                )
                ok = ok and v.passed and v.sides_agree
                records.append({
                    "class": v.class_label,
                    "index": i,
                    "full_dims": v.full_dims,
                    "poset_dims": v.omega_dims,
                })
        detail["limits"]["punctured"] = records
        verdicts["punctured_limits_vanish"] = verdict_str(ok)

    def _stage_reduction(self, verdicts, detail):
        skel = self.skeletons
        nmax = self.cfg.max_limit_degree
        records = []
        ok = True
        for R in skel.p_reps:
            for i in range(self.cfg.cohomology_index_max + 1):
                v = normalizer_reduction_check(
                    skel, R, i, nmax, self.cfg.budget, self.cohomology_cache
                )
                ok = ok and v.passed
                records.append({
                    "class": v.class_label,
                    "index": i,
                    "left": v.left_dims,
                    "right": v.right_dims,
                    "quotient_order": v.quotient_order,
                })
        detail["limits"]["normalizer_reduction"] = records
        verdicts["normalizer_reduction"] = verdict_str(ok)

    def _stage_atomic(self, verdicts, detail):
        nmax = self.cfg.max_limit_degree
        module = ModuleData(1, [np.eye(1, dtype=np.int64) for _ in self.G.generators])
        profile = atomic_functor_limits(
            self.G, self.p, module, nmax, self.cfg.budget, self.skeletons
        )
        has_p_element = any(o == self.p for o in self.G.element_orders)
        detail["limits"]["atomic_trivial_module"] = {
            "dims": profile.dims,
            "group_has_order_p_element": has_p_element,
        }
        if has_p_element:
            verdicts["atomic_vanishing_with_p_kernel"] = verdict_str(profile.vanishes)
        else:
            verdicts["atomic_vanishing_with_p_kernel"] = verdict_str(True)

    def _stage_restriction(self, verdicts, detail):
        skel = self.skeletons
        nmax = self.cfg.max_limit_degree
        records = []
        ok = True
        for i in range(self.cfg.cohomology_index_max + 1):
            v = support_restriction_check(
                skel, i, nmax, self.cfg.budget, self.cohomology_cache
            )
            ok = ok and v.passed
            records.append({
                "index": i,
                "ambient": v.ambient_dims,
                "restricted": v.restricted_dims,
            })
        detail["limits"]["support_restriction"] = records
        verdicts["support_restriction_limits"] = verdict_str(ok)

    def _stage_filtration(self, verdicts, detail):
        skel = self.skeletons
        nmax = self.cfg.max_limit_degree
        records = []
        ok = True
        for i in range(self.cfg.cohomology_index_max + 1):
            v = class_filtration_check(
                skel, i, nmax, self.cfg.budget, self.cohomology_cache
            )
            ok = ok and v.passed
            records.append({
                "index": i,
                "stages": [
                    {
                        "added": s.added_label,
                        "order": s.added_order,
                        "punctured_dims": s.punctured_dims,
                        "lim_full": s.lim_full,
                        "lim_previous": s.lim_previous,
                        "passed": s.passed,
                    }
                    for s in v.stages
                ],
                "centric_dims": v.centric_dims,
                "full_dims": v.full_dims,
            })
        detail["limits"]["class_filtration"] = records
        verdicts["class_filtration_limits"] = verdict_str(ok)

    def _stage_main(self, verdicts, detail):
        dmax = self.cfg.max_degree
        through = min(2, dmax - 1)
        if through < 2:
            verdicts["main_comparison"] = NOT_CERTIFIED
            self.notes.append("main comparison needs max degree >= 3")
            return
        bar_h = self.bar.homology().dims
        link_h = self.complex_of(
            "linking_centric", self.linking_centric, dmax
        ).homology().dims
        equal = bar_h[: through + 1] == link_h[: through + 1]
        detail["homology"]["main_comparison"] = {
            "classifying_dims": bar_h[: through + 1],
            "linking_dims": link_h[: through + 1],
            "through_degree": through,
        }
        verdicts["main_comparison"] = verdict_str(equal)

    # -- assembly ------------------------------------------------------------

    def _assemble(self, verdicts, detail) -> dict:
        G, p = self.G, self.p
        poset = self.poset
        table = self.centricity
        members = []
        for idx, M in enumerate(poset.members):
            members.append({
                "label": M.label(),
                "order": M.order,
                "class": poset.class_of[idx],
                "centric": table.record_for(M).is_centric,
            })
        centric_sylow = [H.label() for H in self.centric_in_sylow]
        data = {
            "schema_version": 1,
            "tool": "plocal",
            "semantics": (
                "exact mod-p homology and higher limits at the stated "
                "truncations; no completion functor is computed"
            ),
            "group": {
                "source": self.source,
                "degree": G.degree,
                "order": G.order,
                "generators": [g.cycle_string() for g in G.generators],
            },
            "prime": p,
            "flags": {
                "max_degree": self.cfg.max_degree,
                "max_limit_degree": self.cfg.max_limit_degree,
                "cohomology_index_max": self.cfg.cohomology_index_max,
                "budget": self.cfg.budget,
                "skeletal": self.cfg.skeletal,
                "checks": sorted(self.cfg.checks) if self.cfg.checks else "all",
            },
            "sylow": {
                "order": self.sylow.order,
                "count": len(poset.sylows),
                "p_part": p_part(G.order, p),
                "label": self.sylow.label(),
            },
            "poset": {
                "member_count": len(poset.members),
                "class_count": len(poset.classes),
                "class_sizes": [len(cls) for cls in poset.classes],
                "chain_length": longest_chain_length(poset, self.sylow),
                "minimum_order": poset.members[poset.minimum].order,
                "centric_member_count": sum(
                    1 for M in poset.members if table.record_for(M).is_centric
                ),
                "members": members,
                "hasse_edges": poset.hasse_edges(),
            },
            "centric_in_sylow": centric_sylow,
            "categories": detail["categories"],
            "homology": detail["homology"],
            "limits": detail["limits"],
            "verdicts": {k: verdicts.get(k, NOT_CERTIFIED) for k in _ALL_VERDICT_KEYS},
            "notes": self.notes,
            "overall": "",
        }
        data["overall"] = finalize_overall(data["verdicts"])
        if self.cfg.include_timings:
            data["timings"] = dict(sorted(self.timings.items()))
        return data


_CHECK_VERDICT_KEYS = {
    "closure": [
        "closure_extends_and_monotone",
        "closure_idempotent",
        "closure_preserves_transporters",
        "closure_transporter_equality",
    ],
    "categories": ["category_laws"],
    "quotient": ["quotient_functor_conditions"],
    "adjunction": ["closure_inclusion_adjunction"],
    "nerve-vs-group": ["transporter_nerve_vs_classifying_space"],
    "centric-restriction": ["centric_restriction_homology"],
    "centric-agreement": ["centric_collections_agree"],
    "linking-vs-transporter": ["transporter_vs_linking_homology"],
    "punctured": ["punctured_limits_vanish"],
    "normalizer-reduction": ["normalizer_reduction"],
    "atomic-vanishing": ["atomic_vanishing_with_p_kernel"],
    "restriction": ["support_restriction_limits"],
    "filtration": ["class_filtration_limits"],
    "main": ["main_comparison"],
}

_ALL_VERDICT_KEYS = [k for keys in _CHECK_VERDICT_KEYS.values() for k in keys]


def run_pipeline(spec_source: str, config: PipelineConfig) -> AnalysisReport:
    """Build the group from a spec string and run the full analysis."""
    G = build_group(spec_source, config.order_bound)
    return PipelineRun(G, config, spec_source).run()


def analyze(spec: GroupSpec, **flag_overrides) -> AnalysisReport:
    """Run the pipeline for a GroupSpec; keyword arguments override flags."""
    config = PipelineConfig(prime=spec.prime, **flag_overrides)
    return run_pipeline(spec.source, config)
