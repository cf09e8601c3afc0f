"""Numerical simulator and bound-verification harness for the four-component
haptotaxis model of oncolytic virotherapy."""

from haptosim._core import *  # noqa: F401,F403
from haptosim._core import __doc__  # noqa: F401
