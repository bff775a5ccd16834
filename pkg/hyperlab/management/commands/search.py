from django.core.management.base import CommandError

from hyperlab.forms import SearchConfigForm
from hyperlab.propositions import Verdict
from hyperlab.search import search_counterexamples

from ._base import CHECK_FAILED, HyperlabCommand


class Command(HyperlabCommand):
    help = "Search for a counterexample to an implication between predicates."
    template_name = "hyperlab/check_report.txt"

    def add_arguments(self, parser):
        parser.add_argument("config", help="Search configuration (JSON).")
        self.add_format_arguments(parser)

    def handle(self, *args, **options):
        data = self.read(options["config"])
        if not isinstance(data, dict):
            data = {}
        config = self.validated(SearchConfigForm(data), "config")
        report = search_counterexamples(config)
        payload = report.as_dict(timings=options["timings"])
        self.emit(payload, options, context={"reports": [payload]})
        if report.verdict == Verdict.FAIL:
            raise CommandError(
                "Counterexample found (seed %s)." % report.seed, returncode=CHECK_FAILED
            )
