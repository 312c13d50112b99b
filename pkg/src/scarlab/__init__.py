"""scarlab: elliptic scar states on XYZ spin chains and 2D lattices.

Modules:
  elliptic    Jacobi elliptic functions on exact rational multiples of 4K
  spinops     spin-S product-space states, operators, coherent rotations
  frames      reduction of a full symmetric exchange matrix to XYZ form
  lattice     scar graphs, vertex/circuit rules, sigma classification
  hamiltonian chain and graph Hamiltonian builders, rotated-frame checks
  scar        elliptic scar states, towers, projections, span ranks
  algebra     ladder algebra, deformed generators, perturbative split
  schwinger   two-flavor boson realization of the helical tower
  spectra     diagonalization, degeneracy counting, scans
  cli         command-line front end
"""

__version__ = "0.1.0"

from .errors import ScarlabError
