from ._starworlds import *  # noqa: F401,F403
