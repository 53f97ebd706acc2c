from ionsqueeze.conf import constants
from ionsqueeze.management.base import ProtocolCommand


class Command(ProtocolCommand):
    help = (
        "Print the realized conventions: the carrier output eigenstate, the "
        "displacement signs s_c and s_r, the internal-state encoding and the "
        "anchored two-mode squeezed vacuum expansion")
    command_name = constants.COMMAND_CONVENTIONS
    config_required = False
