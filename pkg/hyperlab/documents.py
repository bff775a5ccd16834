"""
JSON documents for spaces, families and hypertopologies, and report output.

Loading raises ``ValidationError``; the forms in :mod:`hyperlab.forms` wrap
these helpers for command-line input.
"""

import json
import logging
from pathlib import Path

from django.core.exceptions import ValidationError
from django.core.serializers.json import DjangoJSONEncoder

from .setcore import SetFamily, Subset, check_points
from .topology import FiniteTopology

logger = logging.getLogger(__name__)

FIXTURE_DIR = Path(__file__).resolve().parent / "fixtures"


def _point_lists(value, name):
    if not isinstance(value, list) or not all(isinstance(item, list) for item in value):
        raise ValidationError(
            "%(name)s must be a list of point lists.", code="invalid", params={"name": name}
        )
    for item in value:
        if not all(isinstance(p, int) and not isinstance(p, bool) for p in item):
            raise ValidationError(
                "%(name)s contains a non-integer point.", code="invalid", params={"name": name}
            )
    return value


def _check_points(points):
    if isinstance(points, bool):
        raise ValidationError("points must be an integer.", code="out_of_range")
    check_points(points)


def space_from_document(data):
    """``{"points": n, "opens": [[...], ...]}`` to a validated topology."""
    _check_points(data.get("points"))
    opens = _point_lists(data.get("opens"), "opens")
    return FiniteTopology.from_open_sets(data["points"], opens)


def space_document(topology):
    return {"points": topology.ground_size, "opens": topology.opens.points_lists()}


def family_from_document(data, ground_size):
    """``{"sets": [[...], ...]}`` to a family without the empty set."""
    sets = _point_lists(data.get("sets"), "sets")
    if any(not item for item in sets):
        raise ValidationError("A family member is empty.", code="empty_member")
    family = SetFamily.of(ground_size, sets)
    if not family:
        raise ValidationError("The family is empty.", code="empty_family")
    return family


def family_document(family):
    return {"sets": family.points_lists()}


def subbase_from_document(data, ground_size):
    """A hypertopology subbase: ``{"subbase": [family, ...]}`` where each family is a list of point lists."""
    subbase = data.get("subbase")
    if not isinstance(subbase, list):
        raise ValidationError("subbase must be a list of families.", code="invalid")
    return [SetFamily.of(ground_size, _point_lists(f, "subbase")) for f in subbase]


def hyper_document(hyper):
    return {
        "family": hyper.family.points_lists(),
        "opens": [hyper.decode(u).points_lists() for u in hyper.topo.opens.masks],
    }


def subset_points(topology, mask):
    return list(Subset(topology.ground_size, mask).points())


def read_json(path):
    try:
        with open(path, encoding="utf-8") as handle:
            return json.load(handle)
    except (OSError, json.JSONDecodeError) as exc:
        raise ValidationError(
            "Cannot read %(path)s: %(error)s", code="unreadable", params={"path": path, "error": exc}
        )


def load_fixture(name):
    return read_json(FIXTURE_DIR / ("%s.json" % name))


def dumps(data):
    """Stable JSON: sorted keys so equal reports are byte-identical."""
    return json.dumps(data, cls=DjangoJSONEncoder, sort_keys=True, indent=2)


def topology_lists(topology):
    return topology.opens.points_lists()


def classification_document(space, hyper, result):
    """The classify report: ``result`` is what :func:`hyperlab.hyperspace.classify` returns."""
    derived = result["derived"]
    return {
        "space": space_document(space),
        "hypertopology": hyper_document(hyper),
        "tychonoff_type": result["tychonoff_type"],
        "lower_vietoris_type": result["lower_vietoris_type"],
        "vietoris_type": result["vietoris_type"],
        "strong_vietoris_type": result["strong_vietoris_type"],
        "natural_family": result["natural_family"],
        "b_family": derived.b_family.points_lists(),
        "p_family": derived.p_family.points_lists(),
        "t_plus": topology_lists(derived.t_plus),
        "t_minus": topology_lists(derived.t_minus),
        "t_v": topology_lists(derived.t_v),
        "separation": result["separation"],
    }
