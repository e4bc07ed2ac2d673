# ==========================================
# orbits — OrbitRecords and Solution Samples
# ==========================================

import logging
from collections import Counter

from app.components.figure import plot_period_map
from app.components.pipeline import nonlinearity_from, orbits_from, table_from
from app.components.writers import write_csv, write_json, write_report
from calculators.orbit import construct_solution, solution_rows
from flowchart.orbit_flowchart import write_flowchart
from templates.paragraph_templates import paragraph_orbit, paragraph_periodmap

logger = logging.getLogger(__name__)


def write_orbits(cfg, nl, table, records) -> None:
    if "json" in cfg.formats:
        write_json(cfg.out_dir / "orbits.json", [r.as_dict() for r in records])
    if "csv" in cfg.formats:
        seen = Counter()
        for rec in records:
            seen[rec.n] += 1
            x = construct_solution(rec)
            write_csv(cfg.out_dir / f"orbit_n{rec.n}_{seen[rec.n]}.csv", solution_rows(x, cfg.solution_points))
    if cfg.dot:
        write_flowchart(nl, records, cfg.n_max, cfg.out_dir / "orbits.dot")
    if cfg.svg:
        plot_period_map(table, cfg.n_max, records=records, path=cfg.out_dir / "periodmap.svg")


def run(cfg, args=None) -> int:
    nl = nonlinearity_from(cfg)
    table = table_from(cfg, nl)
    _, records = orbits_from(cfg, nl, table)
    write_orbits(cfg, nl, table, records)
    write_report(cfg.out_dir / "report.txt", [paragraph_periodmap(table)] + [paragraph_orbit(r) for r in records])
    for rec in records:
        flag = "" if rec.hyperbolic else " (non-hyperbolic)"
        print(f"n={rec.n}  amplitude={rec.amplitude:.12g}  period={rec.period:.12g}  "
              f"morse_index={rec.morse_index}{flag}")
    if not records:
        print("No periodic orbits on the sampled range")
    return 0
