from django import template

register = template.Library()


@register.filter
def point_set(points):
    """[0, 2] -> {0,2}"""
    return "{" + ",".join(str(p) for p in points) + "}"


@register.filter
def set_family(sets):
    """[[0], [0, 2]] -> {{0},{0,2}}"""
    return "{" + ",".join(point_set(s) for s in sets) + "}"


@register.filter
def yes_no(value):
    if value is None:
        return "n/a"
    return "yes" if value else "no"


@register.simple_tag
def verdict_label(report):
    """
    Verdict with its counts, e.g. ``pass (12 passed, 3 hypothesis not met)``
    """
    return "%s (%d passed, %d failed, %d hypothesis not met)" % (
        report["verdict"],
        report["passed"],
        report["failed"],
        report["hypothesis_not_met"],
    )


@register.inclusion_tag("hyperlab/witness.txt")
def show_witness(witness):
    """
    Render a counterexample or a mismatching displayed value
    """
    if not witness:
        return {"witness": None}
    hyper = witness.get("hypertopology") or {}
    return {
        "witness": witness,
        "space": witness.get("space"),
        "family": hyper.get("family") or (witness.get("family") or {}).get("sets"),
        "opens": hyper.get("opens"),
        "failed": witness.get("failed", []),
        "extra": {
            key: value
            for key, value in sorted(witness.items())
            if key not in ("space", "family", "hypertopology", "failed")
        },
    }
