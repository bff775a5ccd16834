from django.core.management.base import CommandError

from hyperlab.propositions import EXAMPLES, Verdict, reproduce

from ._base import CHECK_FAILED, HyperlabCommand


class Command(HyperlabCommand):
    help = "Recompute a worked example and compare it with its displayed values."
    template_name = "hyperlab/check_report.txt"

    def add_arguments(self, parser):
        parser.add_argument("example", choices=EXAMPLES)
        self.add_format_arguments(parser)

    def handle(self, *args, **options):
        report = reproduce(options["example"])
        data = report.as_dict(timings=options["timings"])
        self.emit(data, options, context={"reports": [data]})
        if report.verdict == Verdict.FAIL:
            raise CommandError("%s does not reproduce." % report.prop_id, returncode=CHECK_FAILED)
