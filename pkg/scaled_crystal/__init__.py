import json

try:
    with open("./config/scaled_crystal_config.json", "r") as f:
        SCALED_CRYSTAL_CONFIG = json.load(f)
except FileNotFoundError:
    SCALED_CRYSTAL_CONFIG = {}

from . import exceptions
from . import monoid
from . import hull
from . import finite
from . import kms
from . import ktheory
from . import runner
from . import cli

__all__ = ["monoid", "hull", "finite", "kms", "ktheory", "runner", "cli", "exceptions"]
