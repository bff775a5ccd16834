"""
Executable checks of the hyperspace results on finite instances.

Every checker takes one :class:`Instance` and returns a :class:`CheckReport`
counting that instance once, as a pass, a fail (with the instance as witness)
or a hypothesis-not-met. Drivers feed checkers every instance in a scope
(all topologies up to ``max_points`` points and the families and
hypertopologies built on them) and merge the reports.
"""

import logging
import random
import time
from dataclasses import dataclass
from functools import cache
from itertools import combinations, permutations

from django.core.exceptions import ValidationError
from django.db import models

from .conf import resolve_seed, setting
from .documents import (
    family_document,
    family_from_document,
    hyper_document,
    load_fixture,
    space_document,
    space_from_document,
)
from .hyperspace import (
    FormulationMismatch,
    HyperSpace,
    all_hyperspaces,
    based_hyperspace,
    derive,
    is_lower_vietoris_type,
    is_natural_family,
    is_tychonoff_type,
    is_vietoris_type,
    j_map,
    join_hyper,
    lifted_hyperspace,
    lower_vietoris,
    minus_lifts,
    natural_families,
    o_l,
    o_u,
    plus_lifts,
    random_hyperspaces,
    restrict_hyper,
    upper_vietoris,
    vietoris,
)
from .interval_line import (
    WitnessFailure,
    closed_interval,
    intersection_closed,
    notpreg_witness,
    novietoris_witness,
    open_interval,
    sample_novietoris,
)
from .setcore import (
    SetFamily,
    Subset,
    close_intersections,
    close_unions,
    fin,
    fin_n,
    format_mask,
    full_mask,
    intersection_closure,
    minus_sets,
    plus_sets,
    points_of,
    union_closure,
)
from .topology import (
    SpaceMap,
    closed_family,
    enumerate_topologies,
    identity_map,
    indiscrete,
    is_base_for,
    is_compact,
    is_continuous,
    is_inversely_continuous,
    is_p_regular,
    is_subbase_for,
    is_t0,
    is_t1,
    is_t2,
    minimal_base,
    minimal_refinement,
    subbase_from_witnesses,
    subspace_topology,
)

logger = logging.getLogger(__name__)


class Verdict(models.TextChoices):
    PASS = "pass", "Pass"
    FAIL = "fail", "Fail"
    HYPOTHESIS_NOT_MET = "hypothesis-not-met", "Hypothesis not met"


@dataclass
class CheckReport:
    prop_id: str
    instances_checked: int = 0
    passed: int = 0
    failed: int = 0
    hypothesis_not_met: int = 0
    witness: dict = None
    elapsed: float = 0.0

    @property
    def verdict(self):
        if self.failed:
            return Verdict.FAIL
        if self.passed:
            return Verdict.PASS
        return Verdict.HYPOTHESIS_NOT_MET

    def merge(self, other):
        """Counts add up; the earlier witness wins."""
        return CheckReport(
            prop_id=self.prop_id,
            instances_checked=self.instances_checked + other.instances_checked,
            passed=self.passed + other.passed,
            failed=self.failed + other.failed,
            hypothesis_not_met=self.hypothesis_not_met + other.hypothesis_not_met,
            witness=self.witness if self.witness is not None else other.witness,
            elapsed=self.elapsed + other.elapsed,
        )

    def as_dict(self, timings=False):
        data = {
            "prop_id": self.prop_id,
            "instances_checked": self.instances_checked,
            "passed": self.passed,
            "failed": self.failed,
            "hypothesis_not_met": self.hypothesis_not_met,
            "verdict": self.verdict.value,
            "witness": self.witness,
        }
        if timings:
            data["elapsed"] = round(self.elapsed, 6)
        return data


@dataclass(frozen=True)
class Instance:
    space: object
    family: SetFamily = None
    hyper: HyperSpace = None
    subbase: SetFamily = None
    subset: int = None
    n: int = None
    variant: str = None
    sets: SetFamily = None
    other: HyperSpace = None

    def as_witness(self):
        data = {"space": space_document(self.space)}
        if self.family is not None:
            data["family"] = family_document(self.family)
        if self.hyper is not None:
            data["hypertopology"] = hyper_document(self.hyper)
        if self.other is not None:
            data["other_hypertopology"] = hyper_document(self.other)
        if self.subbase is not None:
            data["subbase"] = self.subbase.points_lists()
        if self.sets is not None:
            data["sets"] = self.sets.points_lists()
        if self.subset is not None:
            data["subset"] = points_of(self.subset)
        if self.n is not None:
            data["n"] = self.n
        if self.variant is not None:
            data["variant"] = self.variant
        return data


def _check(prop_id, instance, hypotheses, conclusions):
    """
    Hypotheses and conclusions are ``(name, thunk)`` pairs. Hypotheses are
    evaluated in order up to the first that fails; conclusions only when all hold.
    """
    started = time.perf_counter()
    report = CheckReport(prop_id, instances_checked=1)
    unmet = next((name for name, holds in hypotheses if not holds()), None)
    if unmet is not None:
        report.hypothesis_not_met = 1
    else:
        failed = [name for name, holds in conclusions if not holds()]
        if failed:
            report.failed = 1
            report.witness = {**instance.as_witness(), "failed": failed}
            logger.warning("%s fails on %s: %s", prop_id, instance.as_witness(), failed)
        else:
            report.passed = 1
    report.elapsed = time.perf_counter() - started
    return report


def _strong(hyper):
    if not is_vietoris_type(hyper):
        return False
    derived = derive(hyper)
    return derived.t_plus == derived.t_minus


def _fin_inside(topology, family, n=None):
    sets = fin(topology.ground_size) if n is None else fin_n(topology.ground_size, n)
    return sets.issubset(family)


def _complements(topology, sets):
    return {topology.full & ~u for u in sets.masks}


def _index_set(hyper, masks):
    return hyper.encode(hyper.family.with_masks(masks))


# Hyperspace maps


def check_jn_continuous(instance):
    space, family, hyper, n = instance.space, instance.family, instance.hyper, instance.n or 1
    return _check(
        "prop-2.7.20a",
        instance,
        [
            ("Fin_n(X) inside M", lambda: _fin_inside(space, family, n)),
            ("Vietoris-type", lambda: is_vietoris_type(hyper)),
            ("T_O coarser than T", lambda: derive(hyper).t_v.is_coarser_than(space)),
        ],
        [("j_n continuous", lambda: is_continuous(j_map(space, family, n, hyper)))],
    )


def check_j1_homeo(instance):
    space, family, hyper = instance.space, instance.family, instance.hyper

    @cache
    def j1():
        return j_map(space, family, 1, hyper)

    return _check(
        "prop-2.7.20b",
        instance,
        [
            ("M natural", lambda: is_natural_family(family)),
            ("Vietoris-type", lambda: is_vietoris_type(hyper)),
            ("T_O equals T", lambda: derive(hyper).t_v == space),
        ],
        [
            (
                "j_1 bijective",
                lambda: j1().is_injective() and j1().codomain.ground_size == space.ground_size,
            ),
            ("j_1 continuous", lambda: is_continuous(j1())),
            ("j_1 inversely continuous", lambda: is_inversely_continuous(j1())),
        ],
    )


def check_j1_closed(instance):
    space, family, hyper = instance.space, instance.family, instance.hyper
    return _check(
        "prop-2.7.20v",
        instance,
        [
            ("X is T2", lambda: is_t2(space)),
            ("M natural", lambda: is_natural_family(family)),
            ("Vietoris-type", lambda: is_vietoris_type(hyper)),
            ("T coarser than T_-O", lambda: space.is_coarser_than(derive(hyper).t_minus)),
        ],
        [("J_1(X) closed", lambda: hyper.topo.is_closed(hyper.size_index(1)))],
    )


def check_t2_from_closed_j1(instance):
    space, family, hyper = instance.space, instance.family, instance.hyper
    return _check(
        "prop-2.7.20g",
        instance,
        [
            ("Fin_2(X) inside M", lambda: _fin_inside(space, family, 2)),
            ("Vietoris-type", lambda: is_vietoris_type(hyper)),
            ("T_O coarser than T", lambda: derive(hyper).t_v.is_coarser_than(space)),
            ("J_1(X) closed", lambda: hyper.topo.is_closed(hyper.size_index(1))),
        ],
        [("X is T2", lambda: is_t2(space))],
    )


def check_jx_dense(instance):
    space, family, hyper = instance.space, instance.family, instance.hyper
    return _check(
        "prop-2.7.20d",
        instance,
        [
            ("Fin(X) inside M", lambda: _fin_inside(space, family)),
            ("Vietoris-type", lambda: is_vietoris_type(hyper)),
        ],
        [
            (
                "J(X) dense",
                lambda: hyper.topo.closure(hyper.encode(fin(space.ground_size)))
                == hyper.topo.full,
            )
        ],
    )


# Weight and density


def _lower_base(hyper, subbase):
    refinement = minimal_refinement(hyper.ground_size, subbase)
    lifts = minus_lifts(hyper, refinement)
    return intersection_closure(lifts.with_masks(lifts.mask_set | {hyper.topo.full}))


def check_weight_lower(instance):
    hyper, subbase = instance.hyper, instance.subbase
    return _check(
        "prop-3.3",
        instance,
        [
            ("lower-Vietoris-type", lambda: is_lower_vietoris_type(hyper)),
            ("P' lifts form a subbase", lambda: is_subbase_for(minus_lifts(hyper, subbase), hyper.topo)),
            ("refinement computable", lambda: minimal_refinement(hyper.ground_size, subbase) is not None),
        ],
        [
            ("constructed family is a base", lambda: is_base_for(_lower_base(hyper, subbase), hyper.topo)),
            ("weight bounded", lambda: hyper.topo.weight() <= len(_lower_base(hyper, subbase))),
        ],
    )


def _interpolates(hyper, sets):
    b_family = derive(hyper).b_family.masks
    return all(
        any(m & ~v == 0 and v & ~u == 0 for v in sets.masks)
        for m in hyper.family.masks
        for u in b_family
        if m & ~u == 0
    )


def _vietoris_base(hyper, sets):
    p_refinement = minimal_refinement(hyper.ground_size, derive(hyper).p_family)
    lifts = plus_lifts(hyper, sets).mask_set | minus_lifts(hyper, p_refinement).mask_set
    return intersection_closure(
        SetFamily(len(hyper.family), tuple(lifts | {hyper.topo.full}))
    )


def check_weight_vietoris(instance):
    hyper, sets = instance.hyper, instance.sets

    def plus_base():
        lifts = plus_lifts(hyper, sets)
        return lifts.with_masks(lifts.mask_set | {hyper.topo.full})

    return _check(
        "prop-teglovi",
        instance,
        [
            ("Vietoris-type", lambda: is_vietoris_type(hyper)),
            ("sets inside B_O", lambda: sets.issubset(derive(hyper).b_family)),
            ("sets interpolate B_O", lambda: _interpolates(hyper, sets)),
            (
                "refinement computable",
                lambda: minimal_refinement(hyper.ground_size, derive(hyper).p_family) is not None,
            ),
        ],
        [
            ("plus-lifts base for O_u", lambda: is_base_for(plus_base(), o_u(hyper).topo)),
            ("constructed family is a base", lambda: is_base_for(_vietoris_base(hyper, sets), hyper.topo)),
            ("weight bounded", lambda: hyper.topo.weight() <= len(_vietoris_base(hyper, sets))),
        ],
    )


def check_density(instance):
    space, family, hyper, subset = instance.space, instance.family, instance.hyper, instance.subset

    def fin_subset():
        return _index_set(hyper, (m for m in family.masks if m & ~subset == 0))

    return _check(
        "prop-2.7.20e",
        instance,
        [
            ("Fin(X) inside M", lambda: _fin_inside(space, family)),
            ("Vietoris-type", lambda: is_vietoris_type(hyper)),
            ("T_O equals T", lambda: derive(hyper).t_v == space),
            ("A dense", lambda: space.closure(subset) == space.full),
        ],
        [("Fin(A) dense", lambda: hyper.topo.closure(fin_subset()) == hyper.topo.full)],
    )


# Separation


def check_t0(instance):
    space, family, hyper = instance.space, instance.family, instance.hyper

    def covered():
        derived = derive(hyper)
        members = family.mask_set
        return members <= _complements(space, derived.p_family) or members <= derived.b_family.mask_set

    return _check(
        "prop-T0",
        instance,
        [("M inside X - P_O or inside B_O", covered)],
        [("hyperspace T0", lambda: is_t0(hyper.topo))],
    )


def complement_condition(space, family, subbase):
    return family.mask_set <= _complements(space, subbase)


def star_condition(space, family, subbase):
    members, sets = family.masks, subbase.masks
    for m, other in permutations(members, 2):
        if m & ~other == 0:
            continue
        if not any(other & ~u == 0 and m & ~u for u in sets):
            return False
        if not any(m & v and not other & v for v in sets):
            return False
    return True


def double_star_condition(space, family, subbase):
    sets = subbase.masks
    for m in family.masks:
        for x in points_of(space.full & ~m):
            bit = 1 << x
            if not any(m & ~u == 0 and not u & bit for u in sets):
                return False
            if not any(v & bit and not v & m for v in sets):
                return False
    return True


T1_VARIANTS = {
    "complement": complement_condition,
    "star": star_condition,
    "double-star": double_star_condition,
}


def subbase_hyperspace(space, family, subbase):
    """``O`` on ``M`` generated by ``P+ u P-``."""
    return lifted_hyperspace(space, family, plus=subbase, minus=subbase)


def _t1_conclusions(space, hyper):
    return [
        ("strong Vietoris-type", lambda: _strong(hyper())),
        ("T_O equals T", lambda: derive(hyper()).t_v == space),
        ("hyperspace T1", lambda: is_t1(hyper().topo)),
    ]


def check_t1(instance):
    space, family, subbase = instance.space, instance.family, instance.subbase
    variant = instance.variant or "complement"
    condition = T1_VARIANTS[variant]

    @cache
    def hyper():
        return subbase_hyperspace(space, family, subbase)

    return _check(
        "prop-T1",
        instance,
        [
            ("P subbase", lambda: is_subbase_for(subbase, space)),
            ("M natural", lambda: is_natural_family(family)),
            ("condition %s" % variant, lambda: condition(space, family, subbase)),
        ],
        _t1_conclusions(space, hyper),
    )


def check_t2(instance):
    space, family, subbase = instance.space, instance.family, instance.subbase

    @cache
    def hyper():
        return subbase_hyperspace(space, family, subbase)

    return _check(
        "prop-T2",
        instance,
        [
            ("P subbase", lambda: is_subbase_for(subbase, space)),
            ("M natural", lambda: is_natural_family(family)),
            ("M inside X - P", lambda: complement_condition(space, family, subbase)),
            ("X P-regular", lambda: is_p_regular(space, subbase)),
        ],
        _t1_conclusions(space, hyper) + [("hyperspace T2", lambda: is_t2(hyper().topo))],
    )


def check_star_implication(instance):
    space, family, subbase = instance.space, instance.family, instance.subbase
    return _check(
        "remark-T1-star",
        instance,
        [("condition double-star", lambda: double_star_condition(space, family, subbase))],
        [("condition star", lambda: star_condition(space, family, subbase))],
    )


PREG_VARIANTS = ("exact", "replacement")


def check_preg_converse(instance):
    space, family, subbase = instance.space, instance.family, instance.subbase
    variant = instance.variant or "exact"
    complements = _complements(space, subbase)
    if variant == "exact":
        family_hypotheses = [
            ("M equals X - P", lambda: family.mask_set == complements),
            ("M natural", lambda: is_natural_family(family)),
        ]
    else:
        family_hypotheses = [
            ("M contains X - P", lambda: complements <= family.mask_set),
            ("Fin(X) inside M", lambda: _fin_inside(space, family)),
            (
                "point unions inside M",
                lambda: all(
                    (1 << x | space.full & ~u) in family.mask_set
                    for u in subbase.masks
                    for x in points_of(u)
                ),
            ),
        ]
    return _check(
        "prop-proPreg",
        instance,
        [
            ("P base", lambda: is_base_for(subbase, space)),
            ("P closed under intersection", lambda: intersection_closure(subbase) == subbase),
            ("X not in P", lambda: space.full not in subbase.mask_set),
            *family_hypotheses,
            ("hyperspace T2", lambda: is_t2(subbase_hyperspace(space, family, subbase).topo)),
        ],
        [("X P-regular", lambda: is_p_regular(space, subbase))],
    )


def check_compact(instance):
    space, family, hyper = instance.space, instance.family, instance.hyper
    return _check(
        "prop-mycom",
        instance,
        [
            ("X compact", lambda: is_compact(space)),
            ("X T1", lambda: is_t1(space)),
            ("M = CL(X)", lambda: family == closed_family(space)),
            ("Vietoris-type", lambda: is_vietoris_type(hyper)),
            ("T_O equals T", lambda: derive(hyper).t_v == space),
        ],
        [
            ("hyperspace compact", lambda: is_compact(hyper.topo)),
            (
                "identity from the Vietoris topology continuous",
                lambda: is_continuous(identity_map(vietoris(space, family).topo, hyper.topo)),
            ),
        ],
    )


# Subspaces


def closure_map(space, subspace, domain, codomain):
    """``F -> cl_X(F)`` from closed sets of a subspace into a hyperspace over X."""
    graph = tuple(
        codomain.index_of(space.closure(subspace.to_parent(m))) for m in domain.family.masks
    )
    return SpaceMap(domain.topo, codomain.topo, graph)


def _traces(subspace, subset, sets):
    return SetFamily(
        len(subspace.points), tuple({subspace.from_parent(u & subset) for u in sets.masks})
    )


def check_embedding_minus(instance):
    space, subbase, subset = instance.space, instance.subbase, instance.subset

    @cache
    def embedding():
        codomain = lifted_hyperspace(space, closed_family(space), minus=subbase)
        subspace = subspace_topology(space, Subset(space.ground_size, subset))
        domain = lifted_hyperspace(
            subspace.topology,
            closed_family(subspace.topology),
            minus=_traces(subspace, subset, subbase),
        )
        return closure_map(space, subspace, domain, codomain)

    return _check(
        "prop-iA",
        instance,
        [
            ("P subbase", lambda: is_subbase_for(subbase, space)),
            ("X in P", lambda: space.full in subbase.mask_set),
            ("A nonempty", lambda: bool(subset)),
        ],
        [
            ("injective", lambda: embedding().is_injective()),
            ("continuous", lambda: is_continuous(embedding())),
            ("inversely continuous", lambda: is_inversely_continuous(embedding())),
        ],
    )


def check_subspace_equivalence(instance):
    space, family, hyper, subset = instance.space, instance.family, instance.hyper, instance.subset

    @cache
    def parts():
        derived = derive(hyper)
        subspace = subspace_topology(space, Subset(space.ground_size, subset))
        sub_family = closed_family(subspace.topology)
        lower = lifted_hyperspace(
            subspace.topology, sub_family, minus=_traces(subspace, subset, derived.p_family)
        )
        upper = based_hyperspace(
            subspace.topology, sub_family, _traces(subspace, subset, derived.b_family)
        )
        joined = join_hyper(lower, upper)
        return {
            "subspace": subspace,
            "joined": joined,
            "map": closure_map(space, subspace, joined, hyper),
            "plus_map": closure_map(space, subspace, upper, o_u(hyper)),
        }

    return _check(
        "prop-iAX",
        instance,
        [
            ("X T1", lambda: is_t1(space)),
            ("M = CL(X)", lambda: family == closed_family(space)),
            ("strong Vietoris-type", lambda: _strong(hyper)),
            ("T_O equals T", lambda: derive(hyper).t_v == space),
            ("A nonempty", lambda: bool(subset)),
        ],
        [
            ("O^A strong Vietoris-type", lambda: _strong(parts()["joined"])),
            (
                "T of O^A is the subspace topology",
                lambda: derive(parts()["joined"]).t_v == parts()["subspace"].topology,
            ),
            (
                "continuity agrees",
                lambda: is_continuous(parts()["map"]) == is_continuous(parts()["plus_map"]),
            ),
            (
                "inverse continuity agrees",
                lambda: is_inversely_continuous(parts()["map"])
                == is_inversely_continuous(parts()["plus_map"]),
            ),
        ],
    )


def check_join_continuity(instance):
    """Identity maps continuous into two targets stay continuous between the joins."""
    first, second = instance.hyper, instance.other
    first_target, second_target = o_u(first).topo, o_l(second).topo

    def continuous(domain, codomain):
        return is_continuous(identity_map(domain, codomain))

    return _check(
        "prop-2.6.0",
        instance,
        [
            ("first map continuous", lambda: continuous(first.topo, first_target)),
            ("second map continuous", lambda: continuous(second.topo, second_target)),
        ],
        [
            (
                "joined map continuous",
                lambda: continuous(
                    first.topo.join(second.topo), first_target.join(second_target)
                ),
            )
        ],
    )


# Structural facts


def check_fact_1_2(instance):
    hyper = instance.hyper
    b_family = derive(hyper).b_family
    return _check(
        "fact-1.2",
        instance,
        [],
        [
            ("X in B_O", lambda: full_mask(hyper.ground_size) in b_family.mask_set),
            ("B_O closed under intersection", lambda: close_intersections(b_family.masks) == b_family.mask_set),
            (
                "Tychonoff-type has base (B_O)+",
                lambda: not is_tychonoff_type(hyper)
                or is_base_for(plus_lifts(hyper, b_family), hyper.topo),
            ),
        ],
    )


def check_fact_1_6(instance):
    hyper = instance.hyper
    p_family = derive(hyper).p_family
    return _check(
        "fact-1.6",
        instance,
        [],
        [
            ("empty set in P_O", lambda: 0 in p_family.mask_set),
            ("P_O closed under union", lambda: close_unions(p_family.masks) == p_family.mask_set),
            (
                "lower-Vietoris-type has subbase (P_O)-",
                lambda: not is_lower_vietoris_type(hyper)
                or is_subbase_for(minus_lifts(hyper, p_family), hyper.topo),
            ),
        ],
    )


def _formulations_agree(hyper):
    try:
        is_vietoris_type(hyper)
    except FormulationMismatch as exc:
        logger.error("%s", exc)
        return False
    return True


def check_fact_2_6(instance):
    hyper = instance.hyper
    derived = derive(hyper)
    return _check(
        "fact-2.6",
        instance,
        [],
        [
            ("T_O is the join", lambda: derived.t_v == derived.t_plus.join(derived.t_minus)),
            ("O_u Tychonoff-type", lambda: is_tychonoff_type(o_u(hyper))),
            ("O_l lower-Vietoris-type", lambda: is_lower_vietoris_type(o_l(hyper))),
            (
                "O_u and O_l coarser than O",
                lambda: o_u(hyper).topo.is_coarser_than(hyper.topo)
                and o_l(hyper).topo.is_coarser_than(hyper.topo),
            ),
            ("formulations agree", lambda: _formulations_agree(hyper)),
        ],
    )


def check_fact_2_7(instance):
    space, family = instance.space, instance.family
    upper, lower = upper_vietoris(space, family), lower_vietoris(space, family)
    return _check(
        "fact-2.7",
        instance,
        [],
        [
            ("upper Vietoris is Vietoris-type", lambda: is_vietoris_type(upper)),
            ("lower Vietoris is Vietoris-type", lambda: is_vietoris_type(lower)),
            ("upper Vietoris is Tychonoff-type", lambda: is_tychonoff_type(upper)),
            ("lower Vietoris is lower-Vietoris-type", lambda: is_lower_vietoris_type(lower)),
            ("Vietoris is Vietoris-type", lambda: is_vietoris_type(vietoris(space, family))),
        ],
    )


def check_strong_restriction(instance):
    space, family = instance.space, instance.family

    @cache
    def hyper():
        return restrict_hyper(vietoris(space, closed_family(space)), family)

    return _check(
        "prop-strV",
        instance,
        [
            ("X T1", lambda: is_t1(space)),
            ("M natural", lambda: is_natural_family(family)),
            ("M inside CL(X)", lambda: family.issubset(closed_family(space))),
        ],
        [
            ("strong Vietoris-type", lambda: _strong(hyper())),
            ("T_O equals T", lambda: derive(hyper()).t_v == space),
        ],
    )


# Instance scopes

# Natural families are enumerated only up to this many points (16 families on 3 points).
NATURAL_FAMILY_POINTS = 3


def spaces(max_points, min_points=1):
    for n in range(min_points, max_points + 1):
        yield from enumerate_topologies(n)


def _unique(families):
    seen = {}
    for family in families:
        if family:
            seen.setdefault(family.masks, family)
    return list(seen.values())


def _naturals(space):
    if space.ground_size > NATURAL_FAMILY_POINTS:
        return []
    return list(natural_families(space.ground_size))


def standard_families(space):
    """CL(X), every nonempty subset, Fin_2(X), and the natural families on small spaces."""
    n = space.ground_size
    return _unique([closed_family(space), fin(n), fin_n(n, 2), *_naturals(space)])


def _indiscrete_hyperspace(space, family):
    return HyperSpace(space.ground_size, family, indiscrete(len(family)), space)


CONSTRUCTIONS = {
    "upper": upper_vietoris,
    "lower": lower_vietoris,
    "vietoris": vietoris,
}


def _hyperspaces(space, family, constructions=CONSTRUCTIONS, with_indiscrete=False):
    built = [build(space, family) for build in constructions.values()]
    if with_indiscrete:
        built.append(_indiscrete_hyperspace(space, family))
    return built


@dataclass(frozen=True)
class DriverOptions:
    max_points: int = 3
    n: int = None
    seed: int = None
    variant: str = None

    def rng(self):
        return random.Random(resolve_seed(self.seed))


def _hyper_instances(options):
    for space in spaces(options.max_points):
        for family in standard_families(space):
            for hyper in _hyperspaces(space, family):
                yield Instance(space, family, hyper)


def _family_instances(options):
    for space in spaces(options.max_points):
        for family in standard_families(space):
            yield Instance(space, family)


def _jn_instances(options):
    for n in (options.n,) if options.n else (1, 2):
        for space in spaces(options.max_points):
            families = _unique(
                [
                    closed_family(space).union(fin_n(space.ground_size, n)),
                    fin(space.ground_size),
                    *_naturals(space),
                ]
            )
            for family in families:
                for hyper in _hyperspaces(space, family, with_indiscrete=True):
                    yield Instance(space, family, hyper, n=n)


def _natural_instances(options):
    for space in spaces(options.max_points):
        n = space.ground_size
        families = _unique(
            [
                closed_family(space).union(fin_n(n, 1)),
                closed_family(space).union(fin_n(n, 2)),
                fin(n),
                *_naturals(space),
            ]
        )
        for family in families:
            for hyper in _hyperspaces(space, family, with_indiscrete=True):
                yield Instance(space, family, hyper)


def _finite_hyperspaces(options):
    """Hyperspaces on Fin(X), which on a finite space is every nonempty subset."""
    rng = options.rng()
    for space in spaces(options.max_points):
        family = fin(space.ground_size)
        hypers = _hyperspaces(space, family, with_indiscrete=True)
        hypers += list(random_hyperspaces(space, family, rng, setting("HYPERLAB_RANDOM_SUBBASES")))
        for hyper in hypers:
            yield space, family, hyper


def _dense_instances(options):
    for space, family, hyper in _finite_hyperspaces(options):
        yield Instance(space, family, hyper)


def _density_instances(options):
    for space, family, hyper in _finite_hyperspaces(options):
        for subset in range(1, space.full + 1):
            yield Instance(space, family, hyper, subset=subset)


def candidate_subbases(space):
    full = space.opens
    return _unique(
        [
            full,
            minimal_base(space).union(SetFamily(space.ground_size, (0,))),
            subbase_from_witnesses(space, full).union(SetFamily(space.ground_size, (0,))),
        ]
    )


def _subbase_families(space, subbase):
    complements = SetFamily(space.ground_size, tuple(_complements(space, subbase))).without_empty()
    return _unique([complements, *_naturals(space)])


def _t1_instances(options):
    variants = (options.variant,) if options.variant else tuple(T1_VARIANTS)
    for space in spaces(options.max_points):
        for subbase in candidate_subbases(space):
            for family in _subbase_families(space, subbase):
                for variant in variants:
                    yield Instance(space, family, subbase=subbase, variant=variant)


def _subbase_instances(options):
    for space in spaces(options.max_points):
        for subbase in candidate_subbases(space):
            for family in _subbase_families(space, subbase):
                yield Instance(space, family, subbase=subbase)


# Every subfamily of the opens is tried as P only up to this many opens.
EXHAUSTIVE_BASE_OPENS = 8


def intersection_closed_bases(space):
    opens = space.opens.masks
    if len(opens) > EXHAUSTIVE_BASE_OPENS:
        candidates = [space.opens, space.opens.with_masks(opens[:-1])]
    else:
        candidates = (
            space.opens.with_masks(chosen)
            for size in range(1, len(opens) + 1)
            for chosen in combinations(opens, size)
        )
    for family in candidates:
        if close_intersections(family.masks) == family.mask_set and is_base_for(family, space):
            yield family


def _preg_instances(options):
    variants = (options.variant,) if options.variant else PREG_VARIANTS
    for space in spaces(options.max_points):
        for subbase in intersection_closed_bases(space):
            for variant in variants:
                if variant == "exact":
                    family = SetFamily(
                        space.ground_size, tuple(_complements(space, subbase))
                    ).without_empty()
                else:
                    family = fin(space.ground_size)
                if family:
                    yield Instance(space, family, subbase=subbase, variant=variant)


def _closed_hyperspaces(space, rng):
    family = closed_family(space)
    hypers = _hyperspaces(space, family)
    if len(family) <= 4:
        hypers += list(all_hyperspaces(space, family))
    else:
        hypers += list(random_hyperspaces(space, family, rng, setting("HYPERLAB_RANDOM_SUBBASES")))
    return family, hypers


def _compact_instances(options):
    rng = options.rng()
    for space in spaces(options.max_points):
        family, hypers = _closed_hyperspaces(space, rng)
        for hyper in hypers:
            yield Instance(space, family, hyper)


def _embedding_instances(options):
    for space in spaces(options.max_points):
        family = closed_family(space)
        subbases = _unique(
            [
                space.opens,
                subbase_from_witnesses(space, space.opens).union(
                    SetFamily(space.ground_size, (space.full,))
                ),
            ]
        )
        for subbase in subbases:
            for subset in range(1, space.full + 1):
                yield Instance(space, family, subbase=subbase, subset=subset)


def _subspace_instances(options):
    rng = options.rng()
    for space in spaces(options.max_points):
        if not is_t1(space):
            continue
        family, hypers = _closed_hyperspaces(space, rng)
        for hyper in hypers:
            for subset in range(1, space.full + 1):
                yield Instance(space, family, hyper, subset=subset)


def _strong_instances(options):
    for space in spaces(options.max_points):
        for family in _unique([closed_family(space), *_naturals(space)]):
            yield Instance(space, family)


def _weight_lower_instances(options):
    for space in spaces(options.max_points):
        for family in standard_families(space):
            yield Instance(space, family, lower_vietoris(space, family), subbase=space.opens)
            full = vietoris(space, family)
            yield Instance(space, family, o_l(full), subbase=derive(full).p_family)


def _weight_vietoris_instances(options):
    for space in spaces(options.max_points):
        for family in standard_families(space):
            hyper = vietoris(space, family)
            b_family = derive(hyper).b_family
            candidates = [b_family, union_closure(minimal_base(space))]
            removable = [m for m in b_family.masks if m not in (0, space.full)]
            if removable:
                candidates.append(b_family.with_masks(set(b_family.masks) - {removable[0]}))
            for sets in _unique(candidates):
                yield Instance(space, family, hyper, sets=sets)


def _join_instances(options):
    for space in spaces(options.max_points):
        for family in standard_families(space):
            hypers = _hyperspaces(space, family)
            for first in hypers:
                for second in hypers:
                    yield Instance(space, family, first, other=second)


@dataclass(frozen=True)
class Proposition:
    prop_id: str
    checker: object
    instances: object
    summary: str = ""
    variants: tuple = ()


PROPOSITIONS = {
    p.prop_id: p
    for p in (
        Proposition("fact-1.2", check_fact_1_2, _hyper_instances, "B_O contains X and is closed under intersection"),
        Proposition("fact-1.6", check_fact_1_6, _hyper_instances, "P_O is closed under union"),
        Proposition("fact-2.6", check_fact_2_6, _hyper_instances, "T_O is the join; both Vietoris-type formulations agree"),
        Proposition("fact-2.7", check_fact_2_7, _family_instances, "upper and lower Vietoris topologies are Vietoris-type"),
        Proposition("prop-strV", check_strong_restriction, _strong_instances, "restricted Vietoris on T1 spaces is strong"),
        Proposition("prop-2.6.0", check_join_continuity, _join_instances, "joins preserve continuity"),
        Proposition("prop-2.7.20a", check_jn_continuous, _jn_instances, "j_n is continuous"),
        Proposition("prop-2.7.20b", check_j1_homeo, _natural_instances, "j_1 is a homeomorphism onto J_1(X)"),
        Proposition("prop-2.7.20v", check_j1_closed, _natural_instances, "J_1(X) is closed"),
        Proposition("prop-2.7.20g", check_t2_from_closed_j1, _natural_instances, "closed J_1(X) forces T2"),
        Proposition("prop-2.7.20d", check_jx_dense, _dense_instances, "J(X) is dense"),
        Proposition("prop-2.7.20e", check_density, _density_instances, "Fin(A) is dense for dense A"),
        Proposition("prop-3.3", check_weight_lower, _weight_lower_instances, "lower weight bound"),
        Proposition("prop-teglovi", check_weight_vietoris, _weight_vietoris_instances, "Vietoris weight bound"),
        Proposition("prop-T0", check_t0, _hyper_instances, "T0 hyperspaces"),
        Proposition("prop-T1", check_t1, _t1_instances, "T1 hyperspaces", tuple(T1_VARIANTS)),
        Proposition("prop-T2", check_t2, _subbase_instances, "T2 hyperspaces"),
        Proposition("remark-T1-star", check_star_implication, _subbase_instances, "(**) implies (*)"),
        Proposition("prop-proPreg", check_preg_converse, _preg_instances, "T2 hyperspaces force P-regularity", PREG_VARIANTS),
        Proposition("prop-mycom", check_compact, _compact_instances, "compact hyperspaces"),
        Proposition("prop-iA", check_embedding_minus, _embedding_instances, "closure map is an embedding"),
        Proposition("prop-iAX", check_subspace_equivalence, _subspace_instances, "subspace hyperspace equivalence"),
    )
}

EXAMPLES = ("novt", "novt1", "novietoris")


def check_ids():
    return sorted(PROPOSITIONS) + ["example-%s" % name for name in EXAMPLES]


def _require_scope(options):
    limit = setting("HYPERLAB_MAX_SEARCH_POINTS")
    if not 1 <= options.max_points <= limit:
        raise ValidationError(
            "max_points must be between 1 and %(limit)s.",
            code="infeasible",
            params={"limit": limit},
        )


def run_proposition(prop_id, options=None):
    """Run a proposition's checker over its whole scope."""
    options = options or DriverOptions()
    if prop_id.startswith("example-"):
        return reproduce(prop_id)
    try:
        proposition = PROPOSITIONS[prop_id]
    except KeyError:
        raise ValidationError(
            "Unknown proposition %(prop_id)s.", code="unknown_prop", params={"prop_id": prop_id}
        )
    _require_scope(options)
    if options.variant and options.variant not in proposition.variants:
        raise ValidationError(
            "%(prop_id)s has no variant %(variant)s.",
            code="unknown_variant",
            params={"prop_id": prop_id, "variant": options.variant},
        )
    if options.n is not None and options.n < 1:
        raise ValidationError("n must be at least 1.", code="out_of_range")
    report = CheckReport(prop_id)
    for instance in proposition.instances(options):
        report = report.merge(proposition.checker(instance))
    logger.info(
        "%s: %d instances, %d passed, %d failed, %d hypothesis not met",
        prop_id,
        report.instances_checked,
        report.passed,
        report.failed,
        report.hypothesis_not_met,
    )
    return report


# Worked examples


def _canonical(value):
    """Order-free form of nested point lists for comparison."""
    if isinstance(value, list):
        if value and all(isinstance(v, int) and not isinstance(v, bool) for v in value):
            return tuple(sorted(value))
        return frozenset(_canonical(v) for v in value)
    return value


def _open_lists(hyper):
    return [hyper.decode(u).points_lists() for u in hyper.topo.opens.masks]


def displayed_values(space, family):
    """Every family and verdict shown for a worked example, keyed by name."""
    upper, lower, full = (
        upper_vietoris(space, family),
        lower_vietoris(space, family),
        vietoris(space, family),
    )
    derived = derive(full)
    values = {
        "closed_family": closed_family(space).points_lists(),
        "upper_vietoris": _open_lists(upper),
        "lower_vietoris": _open_lists(lower),
        "vietoris": _open_lists(full),
        "vietoris_size": len(full.topo),
        "b_family": derived.b_family.points_lists(),
        "p_family": derived.p_family.points_lists(),
        "t_plus": derived.t_plus.opens.points_lists(),
        "t_minus": derived.t_minus.opens.points_lists(),
        "t_v": derived.t_v.opens.points_lists(),
        "tychonoff_type": is_tychonoff_type(full),
        "vietoris_type": is_vietoris_type(full),
        "strong_vietoris_type": _strong(full),
        "t_v_equals_t_minus": derived.t_v == derived.t_minus,
        "t_plus_equals_t": derived.t_plus == space,
        "t_minus_strictly_finer_than_t_plus": derived.t_plus.is_coarser_than(derived.t_minus)
        and derived.t_plus != derived.t_minus,
        "space_t0": is_t0(space),
        "space_t1": is_t1(space),
        "hyperspace_t0": is_t0(full.topo),
    }
    for a in range(space.full + 1):
        subset = Subset(space.ground_size, a)
        values["plus_sets/" + format_mask(a)] = plus_sets(subset, family).points_lists()
        values["minus_sets/" + format_mask(a)] = minus_sets(subset, family).points_lists()
    return values


def _compare(prop_id, expected, computed):
    report = CheckReport(prop_id)
    for name in sorted(expected):
        report.instances_checked += 1
        if name in computed and _canonical(expected[name]) == _canonical(computed[name]):
            report.passed += 1
            continue
        report.failed += 1
        if report.witness is None:
            report.witness = {
                "value": name,
                "expected": expected[name],
                "computed": computed.get(name),
            }
            logger.warning("%s: %s differs from the displayed value", prop_id, name)
    return report


def _interval(bounds):
    return open_interval(*bounds)


def _reproduce_novietoris(data):
    report = CheckReport("example-novietoris")
    shown = data["neighbourhood"]
    try:
        g = novietoris_witness(_interval(shown["V"]), [_interval(u) for u in shown["U"]])
        samples = sample_novietoris(
            random.Random(resolve_seed(data.get("seed"))), setting("HYPERLAB_INTERVAL_SAMPLES")
        )
    except WitnessFailure as exc:
        report.instances_checked += 1
        report.failed += 1
        report.witness = {"value": "witness", "error": str(exc)}
        return report
    checks = [("witness", g == closed_interval(*data["witness"]))]
    for case in data["regularity"]:
        refuted = notpreg_witness(case["x"], _interval(case["U"]))
        checks.append(("regularity at %s in %s" % (case["x"], case["U"]), refuted == case["refuted"]))
    checks.append(
        ("intervals closed under intersection", intersection_closed([_interval(b) for b in data["intervals"]]))
    )
    report.instances_checked += samples
    report.passed += samples
    for name, ok in checks:
        report.instances_checked += 1
        if ok:
            report.passed += 1
        else:
            report.failed += 1
            report.witness = report.witness or {"value": name}
    return report


def reproduce(example_id):
    """Recompute a worked example and compare with its fixture."""
    started = time.perf_counter()
    name = example_id.removeprefix("example-")
    if name not in EXAMPLES:
        raise ValidationError(
            "Unknown example %(example)s.", code="unknown_prop", params={"example": example_id}
        )
    data = load_fixture(name)
    if name == "novietoris":
        report = _reproduce_novietoris(data)
    else:
        space = space_from_document(data["space"])
        family = family_from_document(data["family"], space.ground_size)
        report = _compare("example-" + name, data["expected"], displayed_values(space, family))
    report.elapsed = time.perf_counter() - started
    return report
