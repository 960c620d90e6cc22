from ._ainf import *  # noqa: F401,F403
