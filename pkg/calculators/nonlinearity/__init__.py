from calculators.nonlinearity.nonlinearity import (
    Feedback,
    Nonlinearity,
    SymmetryReport,
    build,
    builtin,
    finite_difference_partials,
    partials,
    scaled,
    spring_character,
)
