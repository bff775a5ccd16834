from hyperlab.documents import classification_document
from hyperlab.hyperspace import classify

from ._base import HyperlabCommand


class Command(HyperlabCommand):
    help = "Classify one hyperspace: its type, derived families and separation."
    template_name = "hyperlab/classify.txt"

    def add_arguments(self, parser):
        parser.add_argument("space", help="Space document (JSON).")
        parser.add_argument("family", help="Family document (JSON).")
        parser.add_argument(
            "hypertopology",
            help="vietoris, upper, lower or subbase:<file>.",
        )
        self.add_format_arguments(parser)

    def handle(self, *args, **options):
        space = self.load_space(options["space"])
        family = self.load_family(options["family"], space)
        hyper = self.load_hyperspace(options["hypertopology"], space, family)
        self.emit(classification_document(space, hyper, classify(hyper)), options)
