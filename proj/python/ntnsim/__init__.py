from ._ntnsim import *  # noqa: F401,F403
from ._ntnsim import __doc__  # noqa: F401
