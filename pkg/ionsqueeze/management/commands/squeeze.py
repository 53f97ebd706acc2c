from ionsqueeze.conf import constants
from ionsqueeze.management.base import ProtocolCommand


class Command(ProtocolCommand):
    help = (
        "Prepare the two-mode squeezed vacuum from |-x, +x>|00> and report "
        "its fidelity with the analytic state, the EPR variances and the "
        "entanglement between the two modes")
    command_name = constants.COMMAND_SQUEEZE
