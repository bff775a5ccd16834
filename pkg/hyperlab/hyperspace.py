"""
Hyperspaces ``(M, O)`` over a finite ground set.

A hypertopology is stored as an ordinary :class:`FiniteTopology` on the
points ``0 .. |M|-1``; point ``i`` is the ``i``-th member of ``M`` in the
canonical (numeric) order. ``HyperSpace.index_of`` and ``HyperSpace.decode``
translate between members of ``M`` and those points.
"""

import logging
from dataclasses import dataclass
from functools import cached_property, lru_cache

from django.core.exceptions import ValidationError

from .conf import setting
from .setcore import (
    SetFamily,
    check_points,
    fin_n,
    full_mask,
    mask_of,
    require_same_ground,
)
from .topology import (
    FiniteTopology,
    SpaceMap,
    Subset,
    closed_family,
    enumerate_topologies,
    from_base,
    from_subbase,
    is_base_for,
    is_compact,
    is_regular,
    is_subbase_for,
    is_t0,
    is_t1,
    is_t2,
    product_points,
    product_topology,
    subspace_topology,
)

logger = logging.getLogger(__name__)


class FormulationMismatch(AssertionError):
    """The subbase and the supremum characterizations of Vietoris-type disagree."""


@dataclass(frozen=True)
class HyperSpace:
    ground_size: int
    family: SetFamily
    topo: FiniteTopology
    base: FiniteTopology = None

    def __post_init__(self):
        check_points(self.ground_size)
        require_same_ground(self, self.family)
        check_family(self.family)
        if self.topo.ground_size != len(self.family):
            raise ValidationError(
                "Hypertopology has %(got)s points for a family of %(want)s.",
                code="ground_mismatch",
                params={"got": self.topo.ground_size, "want": len(self.family)},
            )
        if self.base is not None:
            require_same_ground(self, self.base)

    @cached_property
    def index_map(self):
        return {mask: i for i, mask in enumerate(self.family.masks)}

    def index_of(self, mask):
        try:
            return self.index_map[mask]
        except KeyError:
            raise ValidationError(
                "%(member)s is not a member of the family.",
                code="not_member",
                params={"member": str(Subset(self.ground_size, mask))},
            )

    def member(self, index):
        return Subset(self.ground_size, self.family.masks[index])

    def encode(self, family):
        """Point mask of a subfamily of ``M``."""
        require_same_ground(self, family)
        return mask_of(self.index_of(m) for m in family.masks)

    def decode(self, index_mask):
        return self.family.with_masks(
            m for i, m in enumerate(self.family.masks) if index_mask >> i & 1
        )

    def plus_index(self, a_mask):
        return mask_of(i for i, m in enumerate(self.family.masks) if m & ~a_mask == 0)

    def minus_index(self, a_mask):
        return mask_of(i for i, m in enumerate(self.family.masks) if m & a_mask)

    def size_index(self, n):
        """Points of the members with at most ``n`` elements."""
        return mask_of(i for i, m in enumerate(self.family.masks) if m.bit_count() <= n)

    def open_families(self):
        return [self.decode(u) for u in self.topo.opens.masks]

    def with_topology(self, topo):
        return HyperSpace(self.ground_size, self.family, topo, self.base)

    def __str__(self):
        return "M=%s, O=[%s]" % (
            self.family,
            ", ".join(str(f) for f in self.open_families()),
        )


def check_family(family):
    if not family:
        raise ValidationError("Hyperspace family is empty.", code="empty_family")
    if 0 in family.mask_set:
        raise ValidationError("Hyperspace family contains the empty set.", code="empty_member")


def _index_family(family, index_masks):
    return SetFamily(len(family), tuple(index_masks))


def based_hyperspace(topology, family, sets):
    """Topology on ``M`` with base ``{A+ : A in sets}``; ``sets`` must contain X and be closed under intersection."""
    require_same_ground(topology, family, sets)
    check_family(family)
    shell = HyperSpace(topology.ground_size, family, _placeholder_topology(family), topology)
    base = _index_family(family, {shell.plus_index(a) for a in sets.masks})
    return shell.with_topology(from_base(len(family), base))


def upper_vietoris(topology, family):
    """Topology on ``M`` with base ``{U+ : U open}``."""
    return based_hyperspace(topology, family, topology.opens)


def lower_vietoris(topology, family):
    """Topology on ``M`` with subbase ``{U- : U open}``."""
    return lifted_hyperspace(topology, family, minus=topology.opens)


def vietoris(topology, family):
    return lifted_hyperspace(topology, family, plus=topology.opens, minus=topology.opens)


def lifted_hyperspace(topology, family, plus=None, minus=None):
    """Topology on ``family`` with subbase ``plus+ u minus-`` for families of subsets of X."""
    require_same_ground(topology, family)
    check_family(family)
    shell = HyperSpace(topology.ground_size, family, _placeholder_topology(family), topology)
    lifts = set()
    if plus is not None:
        lifts.update(shell.plus_index(a) for a in plus.masks)
    if minus is not None:
        lifts.update(shell.minus_index(a) for a in minus.masks)
    return shell.with_topology(from_subbase(len(family), _index_family(family, lifts)))


def _placeholder_topology(family):
    # Stands in until the real topology on the family is built.
    size = len(family)
    return FiniteTopology.from_masks(size, (0, full_mask(size)))


def hypertopology_from_subbase(ground_size, family, subbase, base=None):
    """Hyperspace whose topology is generated by subfamilies of ``family``."""
    check_family(family)
    shell = HyperSpace(ground_size, family, _placeholder_topology(family), base)
    generators = _index_family(family, {shell.encode(f) for f in subbase})
    return shell.with_topology(from_subbase(len(family), generators))


def restrict_hyper(hyper, subfamily):
    if not subfamily.issubset(hyper.family):
        raise ValidationError(
            "%(sub)s is not contained in the hyperspace family.",
            code="not_member",
            params={"sub": str(subfamily)},
        )
    check_family(subfamily)
    indices = Subset(len(hyper.family), hyper.encode(subfamily))
    subspace = subspace_topology(hyper.topo, indices)
    return HyperSpace(hyper.ground_size, subfamily, subspace.topology, hyper.base)


def join_hyper(first, second):
    if first.family != second.family:
        raise ValidationError("Hyperspaces have different families.", code="family_mismatch")
    return first.with_topology(first.topo.join(second.topo))


@dataclass(frozen=True)
class DerivedFamilies:
    b_family: SetFamily
    p_family: SetFamily
    t_plus: FiniteTopology
    t_minus: FiniteTopology
    t_v: FiniteTopology


def derive(hyper):
    """Families of subsets of X whose plus/minus sets are open, and the topologies they induce."""
    if hyper.ground_size > setting("HYPERLAB_DERIVE_MAX_GROUND"):
        raise ValidationError(
            "derive is limited to %(limit)s points.",
            code="out_of_range",
            params={"limit": setting("HYPERLAB_DERIVE_MAX_GROUND")},
        )
    return _derive(hyper)


@lru_cache(maxsize=4096)
def _derive(hyper):
    n = hyper.ground_size
    b_masks, p_masks = [], []
    for a in range(full_mask(n) + 1):
        if hyper.topo.is_open(hyper.plus_index(a)):
            b_masks.append(a)
        if hyper.topo.is_open(hyper.minus_index(a)):
            p_masks.append(a)
    b_family = SetFamily(n, tuple(b_masks))
    p_family = SetFamily(n, tuple(p_masks))
    return DerivedFamilies(
        b_family=b_family,
        p_family=p_family,
        t_plus=from_base(n, b_family),
        t_minus=from_subbase(n, p_family),
        t_v=from_subbase(n, b_family.union(p_family)),
    )


def plus_lifts(hyper, sets):
    return _index_family(hyper.family, {hyper.plus_index(a) for a in sets.masks})


def minus_lifts(hyper, sets):
    return _index_family(hyper.family, {hyper.minus_index(a) for a in sets.masks})


def o_u(hyper):
    """Topology on M with base the plus-sets of the open-plus family."""
    return hyper.with_topology(
        from_base(len(hyper.family), plus_lifts(hyper, derive(hyper).b_family))
    )


def o_l(hyper):
    return hyper.with_topology(
        from_subbase(len(hyper.family), minus_lifts(hyper, derive(hyper).p_family))
    )


def is_tychonoff_type(hyper):
    return is_base_for(plus_lifts(hyper, derive(hyper).b_family), hyper.topo)


def is_lower_vietoris_type(hyper):
    return is_subbase_for(minus_lifts(hyper, derive(hyper).p_family), hyper.topo)


@lru_cache(maxsize=4096)
def is_vietoris_type(hyper):
    derived = derive(hyper)
    generators = plus_lifts(hyper, derived.b_family).union(
        minus_lifts(hyper, derived.p_family)
    )
    by_subbase = is_subbase_for(generators, hyper.topo)
    by_supremum = hyper.topo == o_u(hyper).topo.join(o_l(hyper).topo)
    if by_subbase != by_supremum:
        raise FormulationMismatch(
            "Vietoris-type by subbase=%s but by supremum=%s for %s"
            % (by_subbase, by_supremum, hyper)
        )
    return by_subbase


def is_strong_vietoris_type(hyper):
    if not is_vietoris_type(hyper):
        raise ValidationError(
            "Hypertopology is not Vietoris-type.", code="not_vietoris_type"
        )
    derived = derive(hyper)
    return derived.t_plus == derived.t_minus


def is_natural_family(family):
    return all(1 << x in family.mask_set for x in range(family.ground_size))


def natural_families(n):
    """Every family containing all singletons, in order of the optional members chosen."""
    singletons = [1 << x for x in range(n)]
    others = [m for m in range(1, full_mask(n) + 1) if m.bit_count() > 1]
    for code in range(1 << len(others)):
        chosen = [m for i, m in enumerate(others) if code >> i & 1]
        yield SetFamily(n, tuple(singletons + chosen))


def comp_family(topology):
    """Nonempty compact closed sets; every subset of a finite space is compact."""
    return closed_family(topology)


def j_map(topology, family, n, hyper):
    """``(x1, .., xn) -> {x1, .., xn}`` from ``X**n`` onto the members of size at most n."""
    if not fin_n(topology.ground_size, n).issubset(family):
        raise ValidationError(
            "Fin_%(n)s(X) is not contained in the family.", code="precondition", params={"n": n}
        )
    if hyper.family != family:
        raise ValidationError("Hyperspace family differs.", code="family_mismatch")
    small = restrict_hyper(hyper, hyper.decode(hyper.size_index(n)))
    domain = product_topology(topology, n)
    graph = tuple(
        small.index_of(mask_of(point)) for point in product_points(topology.ground_size, n)
    )
    return SpaceMap(domain, small.topo, graph)


def all_hyperspaces(topology, family):
    """Every topology on a family of at most four members."""
    if len(family) > 4:
        raise ValidationError(
            "Exhaustive hypertopologies need at most 4 members, got %(size)s.",
            code="infeasible",
            params={"size": len(family)},
        )
    for topo in enumerate_topologies(len(family)):
        yield HyperSpace(topology.ground_size, family, topo, topology)


def random_hyperspaces(topology, family, rng, count):
    """
    Hypertopologies from random subbases; each generator is a random subfamily
    of M or the plus/minus lift of a random subset of X. Duplicates are skipped.
    """
    shell = HyperSpace(topology.ground_size, family, _placeholder_topology(family), topology)
    size = len(family)
    seen = set()
    for _ in range(count):
        generators = set()
        for _ in range(rng.randint(0, size + 1)):
            if rng.random() < 0.5:
                generators.add(rng.getrandbits(size))
            else:
                a = rng.getrandbits(topology.ground_size)
                lift = shell.plus_index(a) if rng.random() < 0.5 else shell.minus_index(a)
                generators.add(lift)
        topo = from_subbase(size, SetFamily(size, tuple(generators)))
        if topo.opens.masks in seen:
            continue
        seen.add(topo.opens.masks)
        yield shell.with_topology(topo)


def classify(hyper):
    """Everything the classify command reports about one hyperspace."""
    derived = derive(hyper)
    vietoris_type = is_vietoris_type(hyper)
    return {
        "tychonoff_type": is_tychonoff_type(hyper),
        "lower_vietoris_type": is_lower_vietoris_type(hyper),
        "vietoris_type": vietoris_type,
        "strong_vietoris_type": is_strong_vietoris_type(hyper) if vietoris_type else None,
        "natural_family": is_natural_family(hyper.family),
        "derived": derived,
        "separation": {
            "t0": is_t0(hyper.topo),
            "t1": is_t1(hyper.topo),
            "t2": is_t2(hyper.topo),
            "regular": is_regular(hyper.topo),
            "compact": is_compact(hyper.topo),
        },
    }
