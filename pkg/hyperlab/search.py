"""
Counterexample search for implications between hyperspace predicates.

A search walks spaces level by level (number of points), builds families and
hypertopologies on each according to the configured policies, and evaluates
``all(hypotheses) => conclusion``. The first level holding a counterexample
ends the search; its minimal counterexample, ordered by
``(|M|, number of opens, enumeration order)``, is the witness.
"""

import logging
import random
import time
from dataclasses import dataclass, field

from django.core.exceptions import ValidationError

from .conf import resolve_seed, setting
from .documents import family_document, space_document
from .hyperspace import (
    all_hyperspaces,
    derive,
    is_lower_vietoris_type,
    is_natural_family,
    is_tychonoff_type,
    is_vietoris_type,
    lower_vietoris,
    natural_families,
    random_hyperspaces,
    upper_vietoris,
    vietoris,
)
from .propositions import NATURAL_FAMILY_POINTS, CheckReport, Instance
from .setcore import fin, fin_n
from .topology import closed_family, enumerate_topologies, is_regular, is_t0, is_t1, is_t2

logger = logging.getLogger(__name__)

FAMILY_POLICIES = ("all-natural", "closed-only", "fin-n", "all-nonempty", "explicit")
HYPERTOPOLOGY_POLICIES = ("vietoris", "upper", "lower", "random-subbase", "exhaustive")

# Exhaustive hypertopologies are only built on families with at most this many members.
EXHAUSTIVE_FAMILY_SIZE = 4


def _strong(instance):
    hyper = instance.hyper
    if not is_vietoris_type(hyper):
        return False
    derived = derive(hyper)
    return derived.t_plus == derived.t_minus


PREDICATES = {
    "vietoris-topology": lambda i: i.hyper.topo == vietoris(i.space, i.family).topo,
    "upper-vietoris-topology": lambda i: i.hyper.topo == upper_vietoris(i.space, i.family).topo,
    "lower-vietoris-topology": lambda i: i.hyper.topo == lower_vietoris(i.space, i.family).topo,
    "tychonoff-type": lambda i: is_tychonoff_type(i.hyper),
    "lower-vietoris-type": lambda i: is_lower_vietoris_type(i.hyper),
    "vietoris-type": lambda i: is_vietoris_type(i.hyper),
    "strong-vietoris-type": _strong,
    "t-v-equals-t": lambda i: derive(i.hyper).t_v == i.space,
    "t-v-coarser": lambda i: derive(i.hyper).t_v.is_coarser_than(i.space),
    "natural-family": lambda i: is_natural_family(i.family),
    "closed-family": lambda i: i.family == closed_family(i.space),
    "hyper-t0": lambda i: is_t0(i.hyper.topo),
    "hyper-t1": lambda i: is_t1(i.hyper.topo),
    "hyper-t2": lambda i: is_t2(i.hyper.topo),
    "hyper-regular": lambda i: is_regular(i.hyper.topo),
    "base-t0": lambda i: is_t0(i.space),
    "base-t1": lambda i: is_t1(i.space),
    "base-t2": lambda i: is_t2(i.space),
    "base-regular": lambda i: is_regular(i.space),
}


@dataclass(frozen=True)
class SearchConfig:
    conclusion: str
    hypotheses: tuple = ()
    max_points: int = 3
    min_points: int = 1
    family_policy: str = "closed-only"
    family_n: int = 2
    families: tuple = ()
    hypertopology_policy: str = "vietoris"
    seed: int = None
    count: int = None
    spaces: tuple = ()

    def __post_init__(self):
        limit = setting("HYPERLAB_MAX_SEARCH_POINTS")
        if not 1 <= self.min_points <= self.max_points <= limit:
            raise ValidationError(
                "Need 1 <= min_points <= max_points <= %(limit)s.",
                code="infeasible",
                params={"limit": limit},
            )
        if self.family_policy not in FAMILY_POLICIES:
            raise ValidationError(
                "Unknown family policy %(policy)s.",
                code="invalid",
                params={"policy": self.family_policy},
            )
        if self.hypertopology_policy not in HYPERTOPOLOGY_POLICIES:
            raise ValidationError(
                "Unknown hypertopology policy %(policy)s.",
                code="invalid",
                params={"policy": self.hypertopology_policy},
            )
        if self.family_policy == "all-natural" and self.max_points > NATURAL_FAMILY_POINTS:
            raise ValidationError(
                "Natural families are enumerated on at most %(limit)s points.",
                code="infeasible",
                params={"limit": NATURAL_FAMILY_POINTS},
            )
        if self.family_policy == "explicit" and not self.families:
            raise ValidationError("The explicit family policy needs families.", code="invalid")
        if self.family_policy == "fin-n" and self.family_n < 1:
            raise ValidationError("family_n must be at least 1.", code="out_of_range")
        unknown = [p for p in (*self.hypotheses, self.conclusion) if p not in PREDICATES]
        if unknown:
            raise ValidationError(
                "Unknown predicates: %(names)s.",
                code="invalid",
                params={"names": ", ".join(unknown)},
            )

    @property
    def resolved_seed(self):
        return resolve_seed(self.seed)

    @property
    def subbase_count(self):
        return self.count if self.count is not None else setting("HYPERLAB_RANDOM_SUBBASES")


@dataclass
class SearchReport(CheckReport):
    seed: int = None
    config: dict = field(default_factory=dict)

    def as_dict(self, timings=False):
        data = super().as_dict(timings)
        data["seed"] = self.seed
        data["config"] = self.config
        return data


def _families(config, space):
    n = space.ground_size
    policy = config.family_policy
    if policy == "all-natural":
        return list(natural_families(n))
    if policy == "closed-only":
        return [closed_family(space)]
    if policy == "fin-n":
        return [fin_n(n, config.family_n)]
    if policy == "all-nonempty":
        return [fin(n)]
    return [f for f in config.families if f.ground_size == n]


def _hyperspaces(config, space, family, rng):
    policy = config.hypertopology_policy
    if policy == "vietoris":
        return [vietoris(space, family)]
    if policy == "upper":
        return [upper_vietoris(space, family)]
    if policy == "lower":
        return [lower_vietoris(space, family)]
    if policy == "random-subbase":
        return list(random_hyperspaces(space, family, rng, config.subbase_count))
    if len(family) > EXHAUSTIVE_FAMILY_SIZE:
        logger.debug("skipping exhaustive hypertopologies on %d members", len(family))
        return []
    return list(all_hyperspaces(space, family))


def _spaces(config, points):
    if config.spaces:
        return [s for s in config.spaces if s.ground_size == points]
    return list(enumerate_topologies(points))


def instances(config, points, rng):
    for space in _spaces(config, points):
        for family in _families(config, space):
            for hyper in _hyperspaces(config, space, family, rng):
                yield Instance(space, family, hyper)


def search_counterexamples(config):
    """Evaluate the implication on every instance in scope; the minimal counterexample is the witness."""
    started = time.perf_counter()
    seed = config.resolved_seed
    rng = random.Random(seed)
    hypotheses = [PREDICATES[name] for name in config.hypotheses]
    conclusion = PREDICATES[config.conclusion]
    report = SearchReport("search", seed=seed, config=config_document(config))
    for points in range(config.min_points, config.max_points + 1):
        best = None
        for order, instance in enumerate(instances(config, points, rng)):
            report.instances_checked += 1
            if not all(holds(instance) for holds in hypotheses):
                report.hypothesis_not_met += 1
            elif conclusion(instance):
                report.passed += 1
            else:
                report.failed += 1
                key = (len(instance.family), len(instance.hyper.topo), order)
                if best is None or key < best[0]:
                    best = (key, instance)
        if best is not None:
            report.witness = best[1].as_witness()
            logger.warning(
                "counterexample to %s => %s on %d points", config.hypotheses, config.conclusion, points
            )
            break
    report.elapsed = time.perf_counter() - started
    logger.info(
        "search %s => %s: %d instances, seed %s",
        list(config.hypotheses),
        config.conclusion,
        report.instances_checked,
        seed,
    )
    return report


def config_document(config):
    return {
        "conclusion": config.conclusion,
        "hypotheses": list(config.hypotheses),
        "max_points": config.max_points,
        "min_points": config.min_points,
        "family_policy": config.family_policy,
        "family_n": config.family_n,
        "families": [{"points": f.ground_size, **family_document(f)} for f in config.families],
        "hypertopology_policy": config.hypertopology_policy,
        "count": config.count,
        "spaces": [space_document(s) for s in config.spaces],
    }
