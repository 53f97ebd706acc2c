from ionsqueeze.conf import constants
from ionsqueeze.management.base import ProtocolCommand


class Command(ProtocolCommand):
    help = (
        "Integrate the full interaction-picture Hamiltonian over a sweep of "
        "Lamb-Dicke parameters or Rabi frequencies and tabulate its "
        "infidelity against the effective two-mode squeezing propagator")
    command_name = constants.COMMAND_VALIDATE_RWA

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument(
            '--workers',
            dest='workers',
            type=int,
            help=(
                'Number of processes the sweep points are spread over '
                '(default: the SWEEP_WORKERS setting)'),
        )
