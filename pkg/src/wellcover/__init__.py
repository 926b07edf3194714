"""Recognition of well-covered and uniformly well-covered graphs."""

__version__ = "0.1.0"
