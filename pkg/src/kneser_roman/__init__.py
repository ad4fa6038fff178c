"""Roman, total Roman and signed Roman domination on Kneser graphs."""

__version__ = "0.1.0"
