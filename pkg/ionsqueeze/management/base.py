import logging
import os
import sys

from django.core.management.base import BaseCommand

from ionsqueeze import __version__
from ionsqueeze.conf import constants
from ionsqueeze.errors import ConfigError, IonSqueezeError, NumericalGuardError
from ionsqueeze.management.config import parse_config
from ionsqueeze.management.reports import error_json, write_atomic
from ionsqueeze.management.runner import run

logger = logging.getLogger(__name__)

VERBOSITY_LEVELS = {
    0: logging.ERROR,
    1: logging.WARNING,
    2: logging.INFO,
    3: logging.DEBUG,
}


def exit_code_for(error):
    if isinstance(error, NumericalGuardError):
        return constants.EXIT_GUARD_FAILURE
    return constants.EXIT_CONFIG_ERROR


def configure_logging(verbosity):
    logging.basicConfig(
        level=VERBOSITY_LEVELS.get(verbosity, logging.DEBUG),
        format='%(levelname)s %(name)s: %(message)s',
        stream=sys.stderr,
        force=True,
    )


class ProtocolCommand(BaseCommand):
    """
    A subcommand that reads a JSON configuration, runs it and emits the
    report: to ``--out`` when given, otherwise to stdout.

    Library errors end the run with their JSON description on stderr and
    exit status 2 (configuration) or 3 (numerical guard).
    """
    command_name = None
    config_required = True
    requires_system_checks = []

    def get_version(self):
        return __version__

    def add_arguments(self, parser):
        parser.add_argument(
            '--config',
            dest='config_path',
            required=self.config_required,
            help='Path to the JSON run configuration',
        )
        parser.add_argument(
            '--out',
            dest='out',
            help='Write the report here instead of to stdout',
        )
        parser.add_argument(
            '--format',
            dest='format',
            choices=constants.FORMAT_CHOICES,
            help=(
                "Output format; 'csv' writes the sweep table to --out and the "
                "JSON report next to it"),
        )
        parser.add_argument(
            '--seedless',
            action='store_true',
            dest='seedless',
            default=False,
            help=(
                'Assert a deterministic run: no random numbers are drawn and '
                'no timings are reported'),
        )
        parser.add_argument(
            '--timings',
            action='store_true',
            dest='timings',
            default=False,
            help='Include wall-clock timings in the report',
        )

    def execute(self, *args, **options):
        configure_logging(options.get('verbosity', 1))
        try:
            return super().execute(*args, **options)
        except IonSqueezeError as e:
            logger.error('%s', e.message)
            self.stderr.write(error_json(e), ending='')
            sys.exit(exit_code_for(e))

    def load_config(self, path):
        if path is None:
            return parse_config('', command=self.command_name)
        try:
            with open(path, encoding='utf-8') as handle:
                text = handle.read()
        except OSError as e:
            raise ConfigError(
                "The configuration file '%s' cannot be read: %s" % (
                    path, e.strerror))
        return parse_config(text, command=self.command_name)

    def handle(self, *args, **options):
        config = self.load_config(options['config_path'])
        out = options.get('out') or config.output_path
        fmt = options.get('format') or config.output_format
        is_sweep = self.command_name == constants.COMMAND_VALIDATE_RWA
        if fmt == constants.FORMAT_CSV and not is_sweep:
            raise ConfigError(
                "The csv format is only available for %s sweeps" % (
                    constants.COMMAND_VALIDATE_RWA, ))
        if fmt == constants.FORMAT_CSV and not out:
            raise ConfigError('The csv format needs an output path (--out)')

        report = run(
            config,
            timings=options['timings'] and not options['seedless'],
            workers=options.get('workers'),
        )
        if not out:
            return report.to_json()

        base, _ = os.path.splitext(out)
        if fmt == constants.FORMAT_CSV:
            table_path, report_path = out, base + '.json'
        else:
            table_path, report_path = base + '.csv', out
        if report_path == table_path:
            report_path = out + '.json'
        if is_sweep:
            write_atomic(table_path, report.to_csv())
            logger.info('Wrote the sweep table to %s', table_path)
        write_atomic(report_path, report.to_json())
        logger.info('Wrote the report to %s', report_path)
        return None
