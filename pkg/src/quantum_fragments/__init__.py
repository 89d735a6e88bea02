"""Classical fragments of quantum theory and the no-go theorems that bound them."""

__version__ = "0.1.0"
