"""
Shared plumbing for the hyperlab commands: reading documents through the
forms, building a hypertopology from its command-line spelling, and writing
reports as JSON or text.
"""

import json

from django.core.exceptions import ValidationError
from django.core.management.base import BaseCommand, CommandError
from django.template.loader import render_to_string

from hyperlab.documents import dumps, read_json
from hyperlab.forms import FamilyDocumentForm, SpaceDocumentForm, SubbaseDocumentForm
from hyperlab.hyperspace import (
    hypertopology_from_subbase,
    lower_vietoris,
    upper_vietoris,
    vietoris,
)

INPUT_ERROR = 2
CHECK_FAILED = 1

CONSTRUCTIONS = {
    "vietoris": vietoris,
    "upper": upper_vietoris,
    "lower": lower_vietoris,
}


def input_error(errors):
    return CommandError(json.dumps(errors, sort_keys=True), returncode=INPUT_ERROR)


def validation_errors(exc):
    """The ``get_json_data`` shape for an error raised outside a form."""
    return {
        "__all__": [
            {"message": message, "code": getattr(exc, "code", None) or ""}
            for message in exc.messages
        ]
    }


class HyperlabCommand(BaseCommand):
    template_name = None

    def add_format_arguments(self, parser):
        parser.add_argument(
            "--format",
            choices=["json", "text"],
            default="json",
            help="Report format (default: json).",
        )
        parser.add_argument(
            "--timings",
            action="store_true",
            help="Include wall-clock timings; the report is then no longer reproducible.",
        )

    def read(self, path):
        try:
            return read_json(path)
        except ValidationError as exc:
            raise input_error(validation_errors(exc))

    def validated(self, form, key):
        if not form.is_valid():
            raise input_error(form.errors.get_json_data())
        return form.cleaned_data[key]

    def load_space(self, path):
        return self.validated(SpaceDocumentForm({"document": self.read(path)}), "space")

    def load_family(self, path, space):
        form = FamilyDocumentForm({"document": self.read(path), "points": space.ground_size})
        return self.validated(form, "family")

    def load_hyperspace(self, spelling, space, family):
        """``vietoris``, ``upper``, ``lower`` or ``subbase:<file>``."""
        if spelling in CONSTRUCTIONS:
            return CONSTRUCTIONS[spelling](space, family)
        kind, _, path = spelling.partition(":")
        if kind != "subbase" or not path:
            raise input_error(
                {"hypertopology": [{"message": "Unknown hypertopology %s." % spelling, "code": "invalid"}]}
            )
        form = SubbaseDocumentForm({"document": self.read(path), "points": space.ground_size})
        subbase = self.validated(form, "subbase")
        try:
            return hypertopology_from_subbase(space.ground_size, family, subbase, space)
        except ValidationError as exc:
            raise input_error(validation_errors(exc))

    def emit(self, data, options, context=None):
        if options.get("format") == "text":
            self.stdout.write(render_to_string(self.template_name, context or data), ending="")
        else:
            self.stdout.write(dumps(data))
