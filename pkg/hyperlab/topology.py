"""
Finite topological spaces.

A :class:`FiniteTopology` is a ground size plus the family of its open sets.
Most questions about a finite space are answered through the minimal open
neighbourhood ``N(x)`` of each point: ``x`` is in the closure of ``A`` iff
``N(x)`` meets ``A``, and the specialization preorder is ``x <= y`` iff
``y`` is in ``N(x)``.
"""

import logging
from dataclasses import dataclass
from functools import cached_property, reduce
from itertools import combinations, product
from operator import or_

from django.core.exceptions import ValidationError

from .conf import setting
from .setcore import (
    SetFamily,
    Subset,
    check_ground,
    close_intersections,
    close_unions,
    full_mask,
    mask_of,
    points_of,
    require_same_ground,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FiniteTopology:
    ground_size: int
    opens: SetFamily

    def __post_init__(self):
        require_same_ground(self, self.opens)
        masks = self.opens.mask_set
        if 0 not in masks or self.full not in masks:
            raise ValidationError(
                "Opens must contain the empty set and the whole space.",
                code="invalid_topology",
            )
        ordered = self.opens.masks
        for i, u in enumerate(ordered):
            for v in ordered[i + 1 :]:
                if u | v not in masks or u & v not in masks:
                    raise ValidationError(
                        "Opens are not closed under union and intersection.",
                        code="invalid_topology",
                    )

    @classmethod
    def from_masks(cls, ground_size, masks):
        """Build without re-validating; for families closed by construction."""
        topology = cls.__new__(cls)
        object.__setattr__(topology, "ground_size", ground_size)
        object.__setattr__(topology, "opens", SetFamily(ground_size, tuple(masks)))
        return topology

    @classmethod
    def from_open_sets(cls, ground_size, open_sets):
        return cls(ground_size, SetFamily.of(ground_size, open_sets))

    @cached_property
    def full(self):
        return full_mask(self.ground_size)

    def __len__(self):
        return len(self.opens)

    def is_open(self, mask):
        return mask in self.opens.mask_set

    def is_closed(self, mask):
        return self.full & ~mask in self.opens.mask_set

    @cached_property
    def neighbourhoods(self):
        """Minimal open neighbourhood of every point."""
        result = []
        for x in range(self.ground_size):
            nbhd = self.full
            for u in self.opens.masks:
                if u >> x & 1:
                    nbhd &= u
            result.append(nbhd)
        return tuple(result)

    def closure(self, mask):
        return mask_of(x for x, nbhd in enumerate(self.neighbourhoods) if nbhd & mask)

    def interior(self, mask):
        return mask_of(x for x, nbhd in enumerate(self.neighbourhoods) if nbhd & ~mask == 0)

    def closed_masks(self):
        return sorted(self.full & ~u for u in self.opens.masks)

    def is_coarser_than(self, other):
        require_same_ground(self, other)
        return self.opens.mask_set <= other.opens.mask_set

    def join(self, other):
        require_same_ground(self, other)
        return from_subbase(self.ground_size, self.opens.union(other.opens))

    def weight(self):
        return len(minimal_base(self))

    def __str__(self):
        return "(%d points, %s)" % (self.ground_size, self.opens)


def discrete(ground_size):
    check_ground(ground_size)
    return FiniteTopology.from_masks(ground_size, range(full_mask(ground_size) + 1))


def indiscrete(ground_size):
    check_ground(ground_size)
    return FiniteTopology.from_masks(ground_size, (0, full_mask(ground_size)))


def generated_masks(ground_size, masks):
    """Opens generated by ``masks`` as a subbase, the whole space adjoined."""
    full = full_mask(ground_size)
    opens = close_unions(close_intersections(set(masks) | {full}))
    opens.add(0)
    return opens


def from_subbase(ground_size, subbase):
    require_same_ground(subbase, SetFamily.empty(ground_size))
    return FiniteTopology.from_masks(ground_size, generated_masks(ground_size, subbase.masks))


def _covered(mask, masks):
    return reduce(or_, (b for b in masks if b & ~mask == 0), 0) == mask


def from_base(ground_size, base):
    require_same_ground(base, SetFamily.empty(ground_size))
    full = full_mask(ground_size)
    masks = base.masks
    if reduce(or_, masks, 0) != full:
        raise ValidationError("Base does not cover the space.", code="invalid_base")
    for i, u in enumerate(masks):
        for v in masks[i + 1 :]:
            if not _covered(u & v, masks):
                raise ValidationError(
                    "Intersection %(u)s & %(v)s is not a union of base members.",
                    code="invalid_base",
                    params={"u": points_of(u), "v": points_of(v)},
                )
    opens = close_unions(masks)
    opens |= {0, full}
    return FiniteTopology.from_masks(ground_size, opens)


def closure_of(topology, subset):
    require_same_ground(topology, subset)
    return Subset(topology.ground_size, topology.closure(subset.mask))


def closed_family(topology):
    """Nonempty closed sets."""
    return SetFamily(topology.ground_size, tuple(m for m in topology.closed_masks() if m))


def is_dense(topology, subset):
    return closure_of(topology, subset).mask == topology.full


def is_t0(topology):
    nbhds = topology.neighbourhoods
    for x, y in combinations(range(topology.ground_size), 2):
        if nbhds[x] >> y & 1 and nbhds[y] >> x & 1:
            return False
    return True


def is_t1(topology):
    return all(nbhd == 1 << x for x, nbhd in enumerate(topology.neighbourhoods))


def is_t2(topology):
    nbhds = topology.neighbourhoods
    return all(nbhds[x] & nbhds[y] == 0 for x, y in combinations(range(topology.ground_size), 2))


def is_regular(topology):
    # A point and a closed set missing it are separated iff N(x) is closed.
    return all(topology.is_closed(nbhd) for nbhd in topology.neighbourhoods)


def is_t3(topology):
    return is_regular(topology) and is_t1(topology)


def is_base_for(base, topology):
    require_same_ground(base, topology)
    if not base.mask_set <= topology.opens.mask_set:
        return False
    return all(_covered(u, base.masks) for u in topology.opens.masks)


def is_subbase_for(subbase, topology):
    require_same_ground(subbase, topology)
    if not subbase.mask_set <= topology.opens.mask_set:
        return False
    return generated_masks(topology.ground_size, subbase.masks) == topology.opens.mask_set


def _require_subbase(family, topology):
    if not is_subbase_for(family, topology):
        raise ValidationError(
            "%(family)s is not a subbase for the topology.",
            code="not_subbase",
            params={"family": str(family)},
        )


def is_p_regular(topology, family):
    """Every ``x`` in ``U`` from the family has ``x in V <= X - W <= U`` with ``V, W`` in it."""
    require_same_ground(topology, family)
    _require_subbase(family, topology)
    full = topology.full
    members = family.masks
    for u in members:
        outer = [w for w in members if w | u == full]
        for x in points_of(u):
            bit = 1 << x
            if not any(v & bit and v & w == 0 for w in outer for v in members):
                return False
    return True


def minimal_refinement(ground_size, family):
    """
    Smallest subfamily ``P'`` such that every ``x`` in every ``U`` of the family
    has some ``V`` in ``P'`` with ``x in V <= U``. ``None`` above the weight cap.
    """
    require_same_ground(family, SetFamily.empty(ground_size))
    if not family:
        raise ValidationError("Weight of an empty family.", code="empty_family")
    if len(family) > setting("HYPERLAB_WEIGHT_CAP"):
        logger.info("weight not computed: %d members exceed the cap", len(family))
        return None
    candidates = [m for m in family.masks if m]
    requirements = set()
    for u in candidates:
        for x in points_of(u):
            bit = 1 << x
            requirements.add(
                mask_of(i for i, v in enumerate(candidates) if v & bit and v & ~u == 0)
            )
    forced = reduce(or_, (r for r in requirements if r.bit_count() == 1), 0)
    free = [i for i in range(len(candidates)) if not forced >> i & 1]
    for size in range(len(free)):
        for extra in combinations(free, size):
            chosen = forced | mask_of(extra)
            if all(r & chosen for r in requirements):
                return family.with_masks(
                    v for i, v in enumerate(candidates) if chosen >> i & 1
                )
    return family.with_masks(candidates)


def weight(ground_size, family):
    refinement = minimal_refinement(ground_size, family)
    return None if refinement is None else len(refinement)


def minimal_base(topology):
    return SetFamily(topology.ground_size, topology.neighbourhoods)


def subbase_from_witnesses(topology, subbase):
    """
    Members of ``subbase`` needed to write each minimal neighbourhood as an
    intersection of subbase members; the result is again a subbase.
    """
    _require_subbase(subbase, topology)
    chosen = set()
    for nbhd in topology.neighbourhoods:
        witnesses = [u for u in subbase.masks if nbhd & ~u == 0]
        chosen.update(witnesses)
    return subbase.with_masks(chosen)


def product_points(ground_size, n):
    return list(product(range(ground_size), repeat=n))


def product_topology(topology, n):
    """Topology on ``X**n``; tuples are numbered in row-major order."""
    size = topology.ground_size**n
    if n < 1 or size > setting("HYPERLAB_PRODUCT_LIMIT"):
        raise ValidationError(
            "Product of %(n)s copies is out of range.", code="out_of_range", params={"n": n}
        )
    points = product_points(topology.ground_size, n)
    cylinders = set()
    for axis in range(n):
        for u in topology.opens.masks:
            cylinders.add(mask_of(i for i, point in enumerate(points) if u >> point[axis] & 1))
    return FiniteTopology.from_masks(size, generated_masks(size, cylinders))


def compress(mask, points):
    """Re-index ``mask`` over the listed points."""
    return mask_of(i for i, p in enumerate(points) if mask >> p & 1)


def expand(mask, points):
    return mask_of(points[i] for i in points_of(mask))


@dataclass(frozen=True)
class Subspace:
    topology: FiniteTopology
    points: tuple

    def to_parent(self, mask):
        return expand(mask, self.points)

    def from_parent(self, mask):
        return compress(mask, self.points)


def subspace_topology(topology, subset):
    require_same_ground(topology, subset)
    if not subset:
        raise ValidationError("Subspace on the empty set.", code="empty_subset")
    points = subset.points()
    traces = {compress(u & subset.mask, points) for u in topology.opens.masks}
    return Subspace(FiniteTopology.from_masks(len(points), traces), points)


@dataclass(frozen=True)
class SpaceMap:
    domain: FiniteTopology
    codomain: FiniteTopology
    graph: tuple

    def __post_init__(self):
        if len(self.graph) != self.domain.ground_size:
            raise ValidationError("Map is not total.", code="not_total")
        if any(not 0 <= y < self.codomain.ground_size for y in self.graph):
            raise ValidationError("Map leaves the codomain.", code="out_of_range")

    def preimage(self, mask):
        return mask_of(x for x, y in enumerate(self.graph) if mask >> y & 1)

    def image(self, mask):
        return mask_of(self.graph[x] for x in points_of(mask))

    def is_injective(self):
        return len(set(self.graph)) == len(self.graph)

    def first_discontinuity(self):
        for v in self.codomain.opens.masks:
            if not self.domain.is_open(self.preimage(v)):
                return v
        return None


def is_continuous(space_map):
    return space_map.first_discontinuity() is None


def is_inversely_continuous(space_map):
    """The inverse of an injection, on its image with the subspace topology, is continuous."""
    if not space_map.is_injective():
        raise ValidationError("Inverse continuity of a non-injective map.", code="not_injective")
    image = space_map.image(space_map.domain.full)
    traces = {v & image for v in space_map.codomain.opens.masks}
    return all(space_map.image(u) in traces for u in space_map.domain.opens.masks)


def identity_map(domain, codomain):
    require_same_ground(domain, codomain)
    return SpaceMap(domain, codomain, tuple(range(domain.ground_size)))


def is_compact(topology):
    # Every open cover is a subfamily of the finite family of opens and so is
    # its own finite subcover; what is left to check is that the opens cover X.
    return reduce(or_, topology.opens.masks, 0) == topology.full


def _require_enumerable(n, limit):
    if not isinstance(n, int) or not 1 <= n <= limit:
        raise ValidationError(
            "Cannot enumerate topologies on %(n)r points (limit %(limit)s).",
            code="out_of_range",
            params={"n": n, "limit": limit},
        )


def enumerate_topologies(n):
    """
    All labeled topologies on ``n <= 4`` points, one per preorder (the
    specialization order), in lexicographic order of the relation matrix.
    """
    _require_enumerable(n, 4)
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    top = len(pairs) - 1
    count = 0
    for code in range(1 << len(pairs)):
        up = [1 << i for i in range(n)]
        for k, (i, j) in enumerate(pairs):
            if code >> (top - k) & 1:
                up[i] |= 1 << j
        if any(up[j] & ~up[i] for i in range(n) for j in points_of(up[i])):
            continue
        opens = [
            mask
            for mask in range(1 << n)
            if all(up[x] & ~mask == 0 for x in points_of(mask))
        ]
        count += 1
        yield FiniteTopology.from_masks(n, opens)
    logger.debug("enumerated %d topologies on %d points", count, n)


def enumerate_topologies_direct(n):
    """Cross-check for ``n <= 3``: every union- and intersection-closed family with empty set and X."""
    _require_enumerable(n, 3)
    full = full_mask(n)
    middle = list(range(1, full))
    for code in range(1 << len(middle)):
        masks = {0, full} | {m for i, m in enumerate(middle) if code >> i & 1}
        if all(u | v in masks and u & v in masks for u in masks for v in masks):
            yield FiniteTopology.from_masks(n, masks)
