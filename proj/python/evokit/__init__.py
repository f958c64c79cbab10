from evokit._evokit import *  # noqa: F401,F403
