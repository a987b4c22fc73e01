"""Prime-exponent digit encodings and their fixed points (Meertens numbers)."""

__version__ = "0.1.0"
