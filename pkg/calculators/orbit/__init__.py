from calculators.orbit.branch import OrbitRecord, orbit_at_amplitude, solve_all, solve_branch
from calculators.orbit.construction import (
    construct_solution,
    history_from_planar,
    odd_symmetry_defect,
    solution_rows,
)
from calculators.orbit.morse import morse_bounds, morse_index
