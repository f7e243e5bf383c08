"""genvamos: hyperbolic matroids from uniform hypergraphs.

Submodules
----------
exactpoly   exact rational polynomials, Sturm sequences, root isolation
symfun      symmetric functions, the lift operator, identities and gaps
stability   stability/hyperbolicity probes, eigenvalues, cones, polarization
matroid     hypergraphs, V_H, rank oracles, Ingleton/DFZ, minors
vamoslab    bases polynomials, stable witnesses, h_{n,k}, Kummer checks
jordan      Cayley-Dickson algebras, H_3(K), point-set representations
cli         the ``genvamos`` command
"""
from .exactpoly import Poly, UPoly
from .matroid import Hypergraph, RankOracle, VHMatroid, build_vh

__all__ = ["Poly", "UPoly", "Hypergraph", "RankOracle", "VHMatroid", "build_vh"]
__version__ = "0.1.0"
