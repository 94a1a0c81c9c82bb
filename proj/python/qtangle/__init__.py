"""Python bindings for the qtangle library."""

from ._qtangle import *  # noqa: F401,F403
