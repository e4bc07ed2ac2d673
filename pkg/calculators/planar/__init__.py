from calculators.planar.integrator import DenseSolution, PlanarState, integrate, vector_field
from calculators.planar.return_time import period_at_zero, return_time
from calculators.planar.symmetry import (
    SymmetryResiduals,
    orbit_distance,
    reflect,
    rotate,
    symmetry_residuals,
    winding_number,
)
