from ionsqueeze.conf import constants
from ionsqueeze.management.base import ProtocolCommand


class Command(ProtocolCommand):
    help = (
        "Squeeze, then displace both modes through the carrier, "
        "center-of-mass, flip and breathing-mode stages. With 'weights' in "
        "the configuration the squeezing stage is replaced by the "
        "superposition cycles")
    command_name = constants.COMMAND_GENERAL
