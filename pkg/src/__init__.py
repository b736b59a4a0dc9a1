"""Radial-embed: compact embeddings of weighted radial Sobolev spaces"""

__version__ = "0.1.0"
__author__ = "Analysis Team"
