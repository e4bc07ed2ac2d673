# ==========================================
# simulate — Method-of-Steps Trajectory
# ==========================================

import logging

import numpy as np

from app.components.pipeline import history_from, nonlinearity_from
from app.components.writers import write_csv, write_report
from calculators.dde import simulate, trailing_amplitude_period
from templates.paragraph_templates import paragraph_simulation
from utils.num_utils import fmt17

logger = logging.getLogger(__name__)

SAMPLES_PER_UNIT = 20


def run(cfg, args=None) -> int:
    nl = nonlinearity_from(cfg)
    h = history_from(cfg.history)
    sol = simulate(nl, h, cfg.t_max)

    if "csv" in cfg.formats:
        ts = np.linspace(-1.0, cfg.t_max, int((cfg.t_max + 1.0) * SAMPLES_PER_UNIT) + 1)
        xs = sol(ts)
        write_csv(cfg.out_dir / "simulation.csv", [["t", "x"]] + [[fmt17(t), fmt17(v)] for t, v in zip(ts, xs)])

    window = min(20.0, cfg.t_max)
    amplitude, period = trailing_amplitude_period(sol, window=window)
    write_report(cfg.out_dir / "report.txt", [paragraph_simulation(cfg.t_max, amplitude, period)])
    print(f"t_max={cfg.t_max:g}  trailing amplitude={amplitude:.10g}  period={period:.10g}")
    return 0
