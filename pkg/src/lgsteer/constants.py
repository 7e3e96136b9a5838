"""Physical constants (CODATA 2018), pinned so results are reproducible."""

HBAR = 1.054571817e-34   # reduced Planck constant, J s
KBOLTZ = 1.380649e-23    # Boltzmann constant, J / K
CLIGHT = 2.99792458e8    # speed of light in vacuum, m / s
