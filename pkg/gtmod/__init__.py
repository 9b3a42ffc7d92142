"""Gelfand-Tsetlin modules over gl(n) in exact rational arithmetic."""
import logging

__version__ = "0.1.0"

logging.getLogger(__name__).addHandler(logging.NullHandler())
