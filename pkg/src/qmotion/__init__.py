"""qmotion: a 1D quantum tweezer-transport engine and game backend."""

__version__ = "0.1.0"
