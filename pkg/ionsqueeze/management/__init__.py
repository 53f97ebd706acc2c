"""
Command-line entry point: ``ionsqueeze <subcommand> [options]``, dispatching
to ``ionsqueeze.management.commands.<subcommand>.Command``.
"""
import os
import sys
from importlib import import_module

from ionsqueeze import __version__
from ionsqueeze.conf import constants


def load_command_class(name):
    module = import_module(
        'ionsqueeze.management.commands.%s' % name.replace('-', '_'))
    return module.Command()


def main_help_text(prog_name):
    lines = [
        'Usage: %s <subcommand> [options]' % prog_name,
        '',
        'Type "%s <subcommand> --help" for help on a specific '
        'subcommand.' % prog_name,
        '',
        'Available subcommands:',
    ]
    for name in constants.COMMAND_CHOICES:
        lines.append('    %s' % name)
    return '\n'.join(lines) + '\n'


def execute_from_command_line(argv=None):
    """Run the subcommand named in ``argv`` and return its exit code."""
    argv = list(sys.argv if argv is None else argv)
    prog_name = os.path.basename(argv[0]) if argv else 'ionsqueeze'
    subcommand = argv[1] if len(argv) > 1 else 'help'
    if subcommand in ('help', '-h', '--help'):
        sys.stdout.write(main_help_text(prog_name))
        return constants.EXIT_OK
    if subcommand == '--version':
        sys.stdout.write('%s\n' % __version__)
        return constants.EXIT_OK
    if subcommand not in constants.COMMAND_CHOICES:
        sys.stderr.write(
            "Unknown subcommand '%s'\n%s" % (
                subcommand, main_help_text(prog_name)))
        return constants.EXIT_CONFIG_ERROR
    try:
        load_command_class(subcommand).run_from_argv(argv)
    except SystemExit as e:
        return constants.EXIT_OK if e.code is None else e.code
    return constants.EXIT_OK


def main():
    sys.exit(execute_from_command_line())
