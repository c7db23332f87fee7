"""
Command families registered by the command line entry point
"""
from classified.cli import corpus, hom, laws, programs

COMMANDS = [laws, programs, hom, corpus]

__all__ = ["COMMANDS", "corpus", "hom", "laws", "programs"]
