# ==========================================
# periodmap — Sampled T_f Table and Figure
# ==========================================

import logging

from app.components.figure import plot_period_map
from app.components.pipeline import nonlinearity_from, table_from
from app.components.writers import write_csv, write_report
from calculators.periodmap import Classification, crossings
from templates.paragraph_templates import paragraph_periodmap

logger = logging.getLogger(__name__)


def run(cfg, args=None) -> int:
    nl = nonlinearity_from(cfg)
    table = table_from(cfg, nl)
    if "csv" in cfg.formats:
        write_csv(cfg.out_dir / "periodmap.csv", table.rows())
    if cfg.svg:
        found = [] if table.classification is Classification.LOCALLY_CONSTANT else crossings(table, cfg.n_max)
        plot_period_map(table, cfg.n_max, crossings=found, path=cfg.out_dir / "periodmap.svg")
    write_report(cfg.out_dir / "report.txt", [paragraph_periodmap(table)])
    print(f"T_f sampled at {table.amplitudes.size} amplitudes: {table.classification.value}")
    return 0
