"""Quantum extensive-form game engine.

Subpackages:

- ``statevector`` — dense complex statevector simulation primitives
- ``gametree``    — quantum game trees, reachability, expected payoffs
- ``equilibrium`` — grid best responses, Nash search, subgames, truncation
- ``interference``— two-stage path-annihilation demo and Grover-as-a-game
- ``walker``      — power-k discrete-time quantum walk on a 1-D lattice
- ``angelgame``   — the Angel-vs-Devil match engine
- ``runtime``     — CLI and HTTP session service
"""

from . import angelgame, equilibrium, gametree, interference, statevector, walker

__version__ = "0.1.0"

__all__ = [
    "angelgame",
    "equilibrium",
    "gametree",
    "interference",
    "statevector",
    "walker",
    "__version__",
]
