from django.core.exceptions import ValidationError
from django.core.management import call_command
from django.core.management.base import CommandError
from django.core.management.commands.check import Command as SystemCheckCommand

from hyperlab.propositions import DriverOptions, Verdict, check_ids, run_proposition

from ._base import CHECK_FAILED, HyperlabCommand, input_error, validation_errors


class Command(HyperlabCommand):
    help = (
        "Run a proposition's driver (or a worked example) and report the verdict. "
        "Without a proposition id, Django's system checks run instead."
    )
    template_name = "hyperlab/check_report.txt"

    def add_arguments(self, parser):
        parser.add_argument("prop_id", nargs="?", help="Proposition or example id, or 'all'.")
        parser.add_argument("--max-points", type=int, default=3)
        parser.add_argument("--n", type=int, default=None, help="n of J_n for prop-2.7.20a.")
        parser.add_argument("--variant", default=None)
        parser.add_argument("--seed", type=int, default=None)
        # The test runner calls ``check`` with this option.
        parser.add_argument("--database", action="append", dest="databases")
        self.add_format_arguments(parser)

    def handle(self, *args, **options):
        prop_id = options["prop_id"]
        if prop_id is None:
            return call_command(
                SystemCheckCommand(stdout=self.stdout._out, stderr=self.stderr._out),
                databases=options["databases"],
                verbosity=options["verbosity"],
            )
        if prop_id != "all" and prop_id not in check_ids():
            raise input_error(
                {"prop_id": [{"message": "Unknown proposition %s." % prop_id, "code": "unknown_prop"}]}
            )
        driver_options = DriverOptions(
            max_points=options["max_points"],
            n=options["n"],
            seed=options["seed"],
            variant=options["variant"],
        )
        prop_ids = check_ids() if prop_id == "all" else [prop_id]
        try:
            reports = [run_proposition(p, driver_options) for p in prop_ids]
        except ValidationError as exc:
            raise input_error(validation_errors(exc))
        payload = [r.as_dict(timings=options["timings"]) for r in reports]
        self.emit(
            payload if prop_id == "all" else payload[0],
            options,
            context={"reports": payload},
        )
        failed = [r.prop_id for r in reports if r.verdict == Verdict.FAIL]
        if failed:
            raise CommandError("Failed: %s" % ", ".join(failed), returncode=CHECK_FAILED)
