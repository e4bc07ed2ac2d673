from calculators.dde.floquet import (
    FloquetSpectrum,
    floquet,
    floquet_converged,
    half_period_candidates,
    spectrum,
)
from calculators.dde.history import HistorySegment, PeriodicSolution, cosine_fixture
from calculators.dde.monodromy import LinearizationCoefficients, monodromy
from calculators.dde.residual import residual
from calculators.dde.simulate import DDESolution, simulate, trailing_amplitude_period
from calculators.dde.zero_number import parity_round, sign_changes, zero_number
