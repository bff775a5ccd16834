from django import forms
from django.core.exceptions import ValidationError

from .conf import setting
from .documents import family_from_document, space_from_document, subbase_from_document
from .search import FAMILY_POLICIES, HYPERTOPOLOGY_POLICIES, PREDICATES, SearchConfig


def _choices(values):
    return [(value, value) for value in values]


def _object(data, name):
    if not isinstance(data, dict):
        raise ValidationError(
            "A %(name)s document is a JSON object.", code="invalid", params={"name": name}
        )
    return data


def _ground_size(data):
    points = data.get("points")
    if not isinstance(points, int) or isinstance(points, bool) or points < 1:
        raise ValidationError("points must be a positive integer.", code="invalid")
    return points


class SpaceDocumentForm(forms.Form):
    document = forms.JSONField()

    def clean_document(self):
        return _object(self.cleaned_data["document"], "space")

    def clean(self):
        cleaned_data = super().clean()
        if "document" in cleaned_data:
            cleaned_data["space"] = space_from_document(cleaned_data["document"])
        return cleaned_data


class FamilyDocumentForm(forms.Form):
    """Sets over a ground size fixed by the space the family lives on."""

    document = forms.JSONField()
    points = forms.IntegerField(min_value=1)
    result_name = "family"

    def clean_document(self):
        return _object(self.cleaned_data["document"], self.result_name)

    def load(self, document, points):
        return family_from_document(document, points)

    def clean(self):
        cleaned_data = super().clean()
        if "document" in cleaned_data and "points" in cleaned_data:
            cleaned_data[self.result_name] = self.load(
                cleaned_data["document"], cleaned_data["points"]
            )
        return cleaned_data


class SubbaseDocumentForm(FamilyDocumentForm):
    """A hypertopology given by a subbase of subfamilies of M."""

    result_name = "subbase"

    def load(self, document, points):
        return subbase_from_document(document, points)


class SearchConfigForm(forms.Form):
    conclusion = forms.ChoiceField(choices=_choices(PREDICATES))
    hypotheses = forms.JSONField(required=False)
    max_points = forms.IntegerField(min_value=1, required=False)
    min_points = forms.IntegerField(min_value=1, required=False)
    family_policy = forms.ChoiceField(choices=_choices(FAMILY_POLICIES), required=False)
    family_n = forms.IntegerField(min_value=1, required=False)
    families = forms.JSONField(required=False)
    hypertopology_policy = forms.ChoiceField(
        choices=_choices(HYPERTOPOLOGY_POLICIES), required=False
    )
    seed = forms.IntegerField(required=False)
    count = forms.IntegerField(min_value=1, required=False)
    spaces = forms.JSONField(required=False)

    def clean_max_points(self):
        value = self.cleaned_data["max_points"]
        limit = setting("HYPERLAB_MAX_SEARCH_POINTS")
        if value is not None and value > limit:
            raise ValidationError(
                "max_points above %(limit)s is infeasible.",
                code="infeasible",
                params={"limit": limit},
            )
        return value

    def clean_hypotheses(self):
        value = self.cleaned_data["hypotheses"] or []
        if not isinstance(value, list) or not all(name in PREDICATES for name in value):
            raise ValidationError("hypotheses must be a list of predicate ids.", code="invalid")
        return tuple(value)

    def clean_families(self):
        value = self.cleaned_data["families"] or []
        if not isinstance(value, list):
            raise ValidationError("families must be a list of family documents.", code="invalid")
        return tuple(
            family_from_document(item, _ground_size(item))
            for item in (_object(v, "family") for v in value)
        )

    def clean_spaces(self):
        value = self.cleaned_data["spaces"] or []
        if not isinstance(value, list):
            raise ValidationError("spaces must be a list of space documents.", code="invalid")
        return tuple(space_from_document(_object(item, "space")) for item in value)

    def clean(self):
        cleaned_data = super().clean()
        if self.errors:
            return cleaned_data
        options = {
            name: value
            for name, value in cleaned_data.items()
            if value not in (None, "")
        }
        cleaned_data["config"] = SearchConfig(**options)
        return cleaned_data
