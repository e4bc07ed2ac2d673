# ==========================================
# floquet — Spectra and the Morse-Index Cross-Check
# ==========================================

import logging

from app.components.pipeline import nonlinearity_from, orbits_from, table_from
from app.components.writers import write_json, write_report
from calculators.dde import half_period_candidates, spectrum, zero_number
from calculators.orbit import construct_solution
from templates.paragraph_templates import paragraph_floquet

logger = logging.getLogger(__name__)


def cross_check(rec, spec) -> str:
    if not rec.hyperbolic:
        # index and count may legitimately differ here; surfaced, not judged
        return "NON-HYPERBOLIC"
    return "PASS" if spec.unstable_count == rec.morse_index else "FAIL"


def run(cfg, args=None) -> int:
    nl = nonlinearity_from(cfg)
    table = table_from(cfg, nl)
    _, records = orbits_from(cfg, nl, table)

    results, paragraphs = [], []
    for rec in records:
        x = construct_solution(rec)
        full = spectrum(nl, x, rec.period, cfg.mesh, cfg.eps_spec)
        half = spectrum(nl, x, rec.period / 2.0, cfg.mesh, cfg.eps_spec)
        verdict = cross_check(rec, full)
        results.append({
            "n": rec.n,
            "amplitude": rec.amplitude,
            "morse_index": rec.morse_index,
            "hyperbolic": rec.hyperbolic,
            "cross_check": verdict,
            "zero_number": zero_number(x.derivative_history(cfg.mesh), rec.feedback),
            "full_period": full.as_dict(),
            "half_period": half.as_dict(),
            "half_period_candidates": half_period_candidates(half),
        })
        paragraphs.append(paragraph_floquet(rec, full, verdict == "PASS"))
        print(f"n={rec.n}  morse_index={rec.morse_index}  unstable_count={full.unstable_count}  "
              f"trivial_defect={full.trivial_defect:.3g}  {verdict}")
        if verdict == "FAIL":
            logger.warning("Floquet count %d disagrees with Morse index %d on branch n=%d",
                           full.unstable_count, rec.morse_index, rec.n)

    if "json" in cfg.formats:
        write_json(cfg.out_dir / "floquet.json", results)
    write_report(cfg.out_dir / "report.txt", paragraphs)
    return 0
