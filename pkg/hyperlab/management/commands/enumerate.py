from django.core.exceptions import ValidationError

from hyperlab.documents import dumps, space_document
from hyperlab.topology import enumerate_topologies

from ._base import HyperlabCommand, input_error, validation_errors


class Command(HyperlabCommand):
    help = "Enumerate every topology on n points (n <= 4)."

    def add_arguments(self, parser):
        parser.add_argument("n", type=int)
        parser.add_argument("--output", help="Write the spaces as a JSON list of space documents.")

    def handle(self, *args, **options):
        try:
            spaces = [space_document(t) for t in enumerate_topologies(options["n"])]
        except ValidationError as exc:
            raise input_error(validation_errors(exc))
        if options["output"]:
            with open(options["output"], "w", encoding="utf-8") as handle:
                handle.write(dumps(spaces))
        self.stdout.write(str(len(spaces)))
