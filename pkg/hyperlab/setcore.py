"""
Subsets of a small ground set and finite families of them.

A ground set of ``n`` points is ``{0, ..., n-1}``; a subset is stored as an
``n``-bit integer mask and a family as the sorted tuple of its masks, so
equality is structural and iteration order is the numeric order of masks.
The plus/minus operators and the closures below work on those masks directly.
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

from django.core.exceptions import ValidationError

from .conf import setting

logger = logging.getLogger(__name__)


def full_mask(ground_size):
    return (1 << ground_size) - 1


def mask_of(points):
    mask = 0
    for point in points:
        mask |= 1 << point
    return mask


def points_of(mask):
    points = []
    index = 0
    while mask:
        if mask & 1:
            points.append(index)
        mask >>= 1
        index += 1
    return points


def format_mask(mask):
    return "{" + ",".join(str(p) for p in points_of(mask)) + "}"


def check_ground(ground_size):
    """
    Bound for any indexed point set. Subsets also index product spaces and the
    members of a hyperspace family, so this is the product limit; base spaces
    go through :func:`check_points`.
    """
    _check_size(ground_size, "HYPERLAB_PRODUCT_LIMIT")


def check_points(ground_size):
    _check_size(ground_size, "HYPERLAB_MAX_GROUND")


def _check_size(ground_size, limit_name):
    limit = setting(limit_name)
    if not isinstance(ground_size, int) or not 1 <= ground_size <= limit:
        raise ValidationError(
            "Ground size must be an integer between 1 and %(limit)s, got %(size)r.",
            code="out_of_range",
            params={"limit": limit, "size": ground_size},
        )


def require_same_ground(*items):
    sizes = {item.ground_size for item in items}
    if len(sizes) > 1:
        raise ValidationError(
            "Ground sizes differ: %(sizes)s.",
            code="ground_mismatch",
            params={"sizes": sorted(sizes)},
        )


@dataclass(frozen=True, order=True)
class Subset:
    ground_size: int
    mask: int

    def __post_init__(self):
        check_ground(self.ground_size)
        if not 0 <= self.mask <= full_mask(self.ground_size):
            raise ValidationError(
                "Subset references points outside a ground set of %(size)s.",
                code="out_of_range",
                params={"size": self.ground_size},
            )

    @classmethod
    def of(cls, ground_size, points):
        points = list(points)
        if any(p < 0 or p >= ground_size for p in points):
            raise ValidationError(
                "Point outside a ground set of %(size)s.",
                code="out_of_range",
                params={"size": ground_size},
            )
        return cls(ground_size, mask_of(points))

    @classmethod
    def empty(cls, ground_size):
        return cls(ground_size, 0)

    @classmethod
    def full(cls, ground_size):
        return cls(ground_size, full_mask(ground_size))

    def points(self):
        return tuple(points_of(self.mask))

    def __iter__(self):
        return iter(points_of(self.mask))

    def __len__(self):
        return self.mask.bit_count()

    def __contains__(self, point):
        return bool(self.mask >> point & 1)

    def __bool__(self):
        return self.mask != 0

    def issubset(self, other):
        require_same_ground(self, other)
        return self.mask & ~other.mask == 0

    def meets(self, other):
        require_same_ground(self, other)
        return self.mask & other.mask != 0

    def __and__(self, other):
        require_same_ground(self, other)
        return Subset(self.ground_size, self.mask & other.mask)

    def __or__(self, other):
        require_same_ground(self, other)
        return Subset(self.ground_size, self.mask | other.mask)

    def __sub__(self, other):
        require_same_ground(self, other)
        return Subset(self.ground_size, self.mask & ~other.mask)

    def complement(self):
        return Subset(self.ground_size, full_mask(self.ground_size) & ~self.mask)

    def __str__(self):
        return format_mask(self.mask)


@dataclass(frozen=True)
class SetFamily:
    ground_size: int
    masks: tuple

    def __post_init__(self):
        check_ground(self.ground_size)
        masks = tuple(sorted(set(self.masks)))
        top = full_mask(self.ground_size)
        if masks and (masks[0] < 0 or masks[-1] > top):
            raise ValidationError(
                "Family member outside a ground set of %(size)s.",
                code="out_of_range",
                params={"size": self.ground_size},
            )
        object.__setattr__(self, "masks", masks)

    @classmethod
    def of(cls, ground_size, sets):
        """Build a family from Subsets, masks, or iterables of points."""
        masks = []
        for item in sets:
            if isinstance(item, Subset):
                require_same_ground(item, Subset.empty(ground_size))
                masks.append(item.mask)
            elif isinstance(item, int):
                masks.append(item)
            else:
                masks.append(Subset.of(ground_size, item).mask)
        return cls(ground_size, tuple(masks))

    @classmethod
    def empty(cls, ground_size):
        return cls(ground_size, ())

    @cached_property
    def mask_set(self):
        return frozenset(self.masks)

    def __iter__(self):
        return (Subset(self.ground_size, m) for m in self.masks)

    def __len__(self):
        return len(self.masks)

    def __contains__(self, item):
        if isinstance(item, Subset):
            return item.ground_size == self.ground_size and item.mask in self.mask_set
        return item in self.mask_set

    def __bool__(self):
        return bool(self.masks)

    def with_masks(self, masks):
        return SetFamily(self.ground_size, tuple(masks))

    def union(self, other):
        require_same_ground(self, other)
        return self.with_masks(self.mask_set | other.mask_set)

    def intersection(self, other):
        require_same_ground(self, other)
        return self.with_masks(self.mask_set & other.mask_set)

    def difference(self, other):
        require_same_ground(self, other)
        return self.with_masks(self.mask_set - other.mask_set)

    def issubset(self, other):
        require_same_ground(self, other)
        return self.mask_set <= other.mask_set

    def without_empty(self):
        return self.with_masks(m for m in self.masks if m)

    def points_lists(self):
        return [points_of(m) for m in self.masks]

    def __str__(self):
        return "{" + ",".join(format_mask(m) for m in self.masks) + "}"


def plus_masks(a_mask, masks):
    return tuple(m for m in masks if m & ~a_mask == 0)


def minus_masks(a_mask, masks):
    return tuple(m for m in masks if m & a_mask)


def plus_sets(a, family):
    """Members of ``family`` contained in ``a``."""
    require_same_ground(a, family)
    return family.with_masks(plus_masks(a.mask, family.masks))


def minus_sets(a, family):
    """Members of ``family`` meeting ``a``."""
    require_same_ground(a, family)
    return family.with_masks(minus_masks(a.mask, family.masks))


def _collapse(families):
    unique = {f.masks: f for f in families}
    return tuple(unique[key] for key in sorted(unique))


def lift_plus(sets, family):
    require_same_ground(sets, family)
    return _collapse(plus_sets(a, family) for a in sets)


def lift_minus(sets, family):
    require_same_ground(sets, family)
    return _collapse(minus_sets(a, family) for a in sets)


def fin_n(ground_size, n):
    """Nonempty subsets with at most ``n`` points."""
    if n < 1:
        raise ValidationError(
            "n must be at least 1, got %(n)s.", code="out_of_range", params={"n": n}
        )
    check_points(ground_size)
    masks = [
        mask_of(points)
        for k in range(1, min(n, ground_size) + 1)
        for points in combinations(range(ground_size), k)
    ]
    return SetFamily(ground_size, tuple(masks))


def fin(ground_size):
    return fin_n(ground_size, ground_size)


def all_subsets(ground_size):
    check_points(ground_size)
    return SetFamily(ground_size, tuple(range(full_mask(ground_size) + 1)))


def close_intersections(masks):
    closed = set()
    for mask in masks:
        closed |= {mask & other for other in closed}
        closed.add(mask)
    return closed


def close_unions(masks):
    closed = set()
    for mask in masks:
        closed |= {mask | other for other in closed}
        closed.add(mask)
    return closed


def _require_nonempty(family):
    if not family:
        raise ValidationError("Closure of an empty family.", code="empty_family")


def intersection_closure(family):
    """Smallest family containing ``family`` and closed under binary intersection."""
    _require_nonempty(family)
    return family.with_masks(close_intersections(family.masks))


def union_closure(family):
    """Smallest family containing ``family`` and closed under binary union."""
    _require_nonempty(family)
    return family.with_masks(close_unions(family.masks))
