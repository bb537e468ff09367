"""Gap instance pairs for unique games over powers of Z2.

Exact tooling for building paired constraint instances whose optima are
provably separated, lifting them to label-copy form, solving small cases
exactly, and playing the k-pebble bijective game on the results.
"""

__version__ = "0.1.0"
