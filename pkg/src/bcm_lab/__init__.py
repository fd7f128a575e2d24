"""Critical bipartite configuration models and their scaling limits.

Submodules:

- degseq: degree sequence builders, moment summaries, plug-in limit constants
- bcm: uniform half-edge matching, components, intersection graph, triangles
- explore: the depth-first exploration walk and its encodings
- sizebias: size-biased permutations and exponential-clock processes
- levy: thinned Levy path simulation and excursion extraction
- mc: Monte Carlo ensembles and bound checks
- cli: command line entry point
"""

__version__ = "0.1.0"

from . import bcm, degseq, explore, levy, mc, sizebias  # noqa: F401
