# ==========================================
# bifurcate — Hopf Points and Saddle-Node Candidates in alpha
# ==========================================

import logging

from app.components.pipeline import nonlinearity_from, table_from
from app.components.writers import write_csv, write_json, write_report
from calculators.bifurcation import orbit_count, rows, scan
from templates.paragraph_templates import paragraph_bifurcation

logger = logging.getLogger(__name__)


def run(cfg, args=None) -> int:
    nl = nonlinearity_from(cfg)
    table = table_from(cfg, nl)
    events = scan(nl, table, (cfg.alpha_lo, cfg.alpha_hi), cfg.n_max)

    if "json" in cfg.formats:
        write_json(cfg.out_dir / "bifurcation.json", [e.as_dict() for e in events])
    if "csv" in cfg.formats:
        write_csv(cfg.out_dir / "bifurcation.csv", rows(events))
    write_report(cfg.out_dir / "report.txt", [paragraph_bifurcation(cfg.alpha_lo, cfg.alpha_hi, events)])

    for e in events:
        print(f"alpha={e.alpha:.12g}  {e.kind.value}  n={e.n}  amplitude={e.amplitude:.6g}")
    counts = orbit_count(table, cfg.alpha_hi, cfg.n_max)
    print(f"orbits at alpha={cfg.alpha_hi:g}: " + ", ".join(f"n={n}: {k}" for n, k in counts.items()))
    return 0
