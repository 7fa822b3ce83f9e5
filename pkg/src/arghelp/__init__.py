"""Review helpfulness prediction with argumentation-mining features."""

__version__ = "0.1.0"
