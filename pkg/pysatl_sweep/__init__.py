"""Sweeping processes, Skorohod problems and reflected SDEs on moving prox-regular sets."""

__version__ = "0.1.0"
