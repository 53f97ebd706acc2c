from ionsqueeze.conf import constants
from ionsqueeze.management.base import ProtocolCommand


class Command(ProtocolCommand):
    help = (
        "Run the conditional squeezing cycles for a list of complex weights "
        "(two per cycle) and report the conditioned motional state, the "
        "exact post-selection probabilities and the closed-form product "
        "formula alongside them")
    command_name = constants.COMMAND_SUPERPOSE
