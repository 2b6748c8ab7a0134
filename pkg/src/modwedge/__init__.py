"""Standard subspaces, Euler elements and causal wedge regions in finite dimension."""

__version__ = "0.1.0"
