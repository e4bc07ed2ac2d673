from calculators.bifurcation.scan import (
    BifurcationEvent,
    EventKind,
    Extremum,
    extrema,
    orbit_count,
    rows,
    scan,
)
