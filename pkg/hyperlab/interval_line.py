"""
Exact interval arithmetic on the extended rational line.

Used to check the real-line witnesses: a closed set that lies in a basic
neighbourhood of a coarser hypertopology but not in a Vietoris plus-set, and
the failure of interval-regularity at bounded intervals.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction

from django.core.exceptions import ValidationError

logger = logging.getLogger(__name__)


class WitnessFailure(Exception):
    """A witness that should hold by construction did not."""


@dataclass(frozen=True, order=True)
class ExtRational:
    # -1 for minus infinity, +1 for plus infinity, 0 for a finite value.
    infinity: int = 0
    value: Fraction = Fraction(0)

    @classmethod
    def of(cls, value):
        if isinstance(value, ExtRational):
            return value
        if isinstance(value, str) and value.strip() in ("-inf", "+inf", "inf"):
            return NEG_INF if value.strip() == "-inf" else POS_INF
        return cls(0, Fraction(value))

    @property
    def is_finite(self):
        return self.infinity == 0

    def __str__(self):
        if self.infinity:
            return "-inf" if self.infinity < 0 else "+inf"
        return str(self.value)


NEG_INF = ExtRational(-1)
POS_INF = ExtRational(1)


@dataclass(frozen=True, order=True)
class Component:
    lo: ExtRational
    lo_closed: bool
    hi: ExtRational
    hi_closed: bool

    def is_empty(self):
        if self.lo > self.hi:
            return True
        return self.lo == self.hi and not (self.lo_closed and self.hi_closed)

    def contains(self, q):
        above = self.lo < q or (self.lo == q and self.lo_closed)
        below = q < self.hi or (q == self.hi and self.hi_closed)
        return above and below

    def __str__(self):
        return "%s%s,%s%s" % (
            "[" if self.lo_closed else "(",
            self.lo,
            self.hi,
            "]" if self.hi_closed else ")",
        )


def _component(lo, lo_closed, hi, hi_closed):
    lo, hi = ExtRational.of(lo), ExtRational.of(hi)
    # Infinite endpoints are never members.
    component = Component(lo, lo_closed and lo.is_finite, hi, hi_closed and hi.is_finite)
    return None if component.is_empty() else component


def _lower_key(c):
    return (c.lo, not c.lo_closed)


def _joins(left, right):
    """``right`` starts no earlier than ``left``; do they overlap or touch?"""
    if right.lo < left.hi:
        return True
    return right.lo == left.hi and (left.hi_closed or right.lo_closed)


def _merge(left, right):
    if right.hi > left.hi:
        return Component(left.lo, left.lo_closed, right.hi, right.hi_closed)
    if right.hi == left.hi:
        return Component(left.lo, left.lo_closed, left.hi, left.hi_closed or right.hi_closed)
    return left


@dataclass(frozen=True)
class IntervalSet:
    components: tuple = ()

    @classmethod
    def of(cls, *components):
        """Normalize: drop empties, sort, and merge overlapping or touching pieces."""
        pieces = sorted((c for c in components if c is not None), key=_lower_key)
        merged = []
        for piece in pieces:
            if merged and _joins(merged[-1], piece):
                merged[-1] = _merge(merged[-1], piece)
            else:
                merged.append(piece)
        return cls(tuple(merged))

    def __bool__(self):
        return bool(self.components)

    def __iter__(self):
        return iter(self.components)

    def contains(self, q):
        q = ExtRational.of(q)
        return any(c.contains(q) for c in self.components)

    def union(self, other):
        return IntervalSet.of(*self.components, *other.components)

    def intersection(self, other):
        pieces = []
        for a in self.components:
            for b in other.components:
                lo, lo_closed = _tighter_lower(a, b)
                hi, hi_closed = _tighter_upper(a, b)
                pieces.append(_component(lo, lo_closed, hi, hi_closed))
        return IntervalSet.of(*pieces)

    def complement(self):
        pieces = []
        lo, lo_closed = NEG_INF, False
        for c in self.components:
            pieces.append(_component(lo, lo_closed, c.lo, not c.lo_closed))
            lo, lo_closed = c.hi, not c.hi_closed
        pieces.append(_component(lo, lo_closed, POS_INF, False))
        return IntervalSet.of(*pieces)

    def intersects(self, other):
        return bool(self.intersection(other))

    def subset_of(self, other):
        return self.intersection(other) == self

    def is_open_interval(self):
        if not self.components:
            return True
        if len(self.components) > 1:
            return False
        c = self.components[0]
        return not c.lo_closed and not c.hi_closed

    def is_closed(self):
        return closure_intervals(self) == self

    def __str__(self):
        if not self.components:
            return "{}"
        return " u ".join(str(c) for c in self.components)


def _tighter_lower(a, b):
    if a.lo != b.lo:
        return (a.lo, a.lo_closed) if a.lo > b.lo else (b.lo, b.lo_closed)
    return a.lo, a.lo_closed and b.lo_closed


def _tighter_upper(a, b):
    if a.hi != b.hi:
        return (a.hi, a.hi_closed) if a.hi < b.hi else (b.hi, b.hi_closed)
    return a.hi, a.hi_closed and b.hi_closed


def open_interval(lo, hi):
    return IntervalSet.of(_component(lo, False, hi, False))


def closed_interval(lo, hi):
    return IntervalSet.of(_component(lo, True, hi, True))


def point(q):
    return closed_interval(q, q)


EMPTY = IntervalSet()
REAL_LINE = open_interval("-inf", "+inf")


def closure_intervals(intervals):
    return IntervalSet.of(
        *(_component(c.lo, True, c.hi, True) for c in intervals.components)
    )


def intersection_closed(intervals):
    """Open intervals are closed under pairwise intersection."""
    return all(
        a.intersection(b).is_open_interval()
        for i, a in enumerate(intervals)
        for b in intervals[i:]
    )


HALF = Fraction(1, 2)
THREE_HALVES = Fraction(3, 2)
SPLIT_LINE = open_interval(0, 1).union(open_interval(1, 2))


def _require_open_interval(intervals, name):
    if not intervals or not intervals.is_open_interval():
        raise ValidationError(
            "%(name)s must be a single open interval, got %(value)s.",
            code="precondition",
            params={"name": name, "value": str(intervals)},
        )


def novietoris_witness(v, us):
    """
    ``G = [1/2, 3/2]`` lies in ``V+`` and in every ``U_i-`` but not in
    ``((0,1) u (1,2))+``, for any open ``V`` containing both ends of ``G``
    and open ``U_i`` meeting ``{1/2, 3/2}``.
    """
    _require_open_interval(v, "V")
    if not (v.contains(HALF) and v.contains(THREE_HALVES)):
        raise ValidationError("V must contain 1/2 and 3/2.", code="precondition")
    for u in us:
        _require_open_interval(u, "U")
        if not (u.contains(HALF) or u.contains(THREE_HALVES)):
            raise ValidationError(
                "%(u)s misses {1/2, 3/2}.", code="precondition", params={"u": str(u)}
            )
    g = closed_interval(HALF, THREE_HALVES)
    checks = {
        "closed": g.is_closed(),
        "inside V": g.subset_of(v),
        "meets every U": all(g.intersects(u) for u in us),
        "1 in G": g.contains(1),
        "1 outside the split line": not SPLIT_LINE.contains(1),
        "G not inside the split line": not g.subset_of(SPLIT_LINE),
    }
    failed = [name for name, ok in checks.items() if not ok]
    if failed:
        raise WitnessFailure("G=%s fails %s for V=%s" % (g, ", ".join(failed), v))
    return g


def _random_offset(rng):
    return Fraction(rng.randint(1, 256), rng.randint(1, 64))


def random_neighbourhood(rng):
    """A random open ``V`` containing ``[1/2, 3/2]`` and open ``U_i`` meeting ``{1/2, 3/2}``."""
    lo = "-inf" if rng.random() < 0.125 else HALF - _random_offset(rng)
    hi = "+inf" if rng.random() < 0.125 else THREE_HALVES + _random_offset(rng)
    us = []
    for _ in range(rng.randint(0, 3)):
        centre = rng.choice((HALF, THREE_HALVES))
        us.append(open_interval(centre - _random_offset(rng), centre + _random_offset(rng)))
    return open_interval(lo, hi), us


def sample_novietoris(rng, count):
    """Check the witness on ``count`` random neighbourhoods; returns how many were checked."""
    for _ in range(count):
        v, us = random_neighbourhood(rng)
        novietoris_witness(v, us)
    logger.debug("real-line witness verified on %d neighbourhoods", count)
    return count


def preg_interpolant(x, u):
    """
    Open intervals ``V, W`` with ``x in V <= R - W <= U``, or ``None``.

    ``R - W`` is unbounded for every interval ``W`` other than the whole line,
    and empty for the whole line, so bounded ``U`` never admit a pair.
    """
    x = ExtRational.of(x)
    _require_open_interval(u, "U")
    if not x.is_finite or not u.contains(x):
        raise ValidationError(
            "%(x)s is not a point of %(u)s.", code="precondition", params={"x": x, "u": str(u)}
        )
    c = u.components[0]
    one = Fraction(1)
    if not c.lo.is_finite and not c.hi.is_finite:
        v, w = open_interval(x.value - one, x.value + one), open_interval(x.value + 2, x.value + 3)
    elif not c.hi.is_finite:
        cut = (c.lo.value + x.value) / 2
        v, w = open_interval(cut, x.value + one), open_interval("-inf", cut)
    elif not c.lo.is_finite:
        cut = (c.hi.value + x.value) / 2
        v, w = open_interval(x.value - one, cut), open_interval(cut, "+inf")
    else:
        return None
    outside = w.complement()
    if not (v.contains(x) and v.subset_of(outside) and outside.subset_of(u)):
        raise WitnessFailure("interpolant %s, %s fails at %s in %s" % (v, w, x, u))
    return v, w


def notpreg_witness(x, u):
    """True when no pair of open intervals interpolates between ``x`` and ``U``."""
    return preg_interpolant(x, u) is None
