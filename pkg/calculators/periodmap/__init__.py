from calculators.periodmap.crossings import Crossing, crossings
from calculators.periodmap.realizable import RealizablePeriod, realizable, realizable_value
from calculators.periodmap.sampling import (
    Classification,
    PeriodMapTable,
    SlopeEstimate,
    amplitude_grid,
    extrapolate_to_zero,
    sample,
    slope,
)
