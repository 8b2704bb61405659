"""madd: multi-agent drug-discovery hit-identification engine."""

__version__ = "0.1.0"
