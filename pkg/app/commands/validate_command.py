# ==========================================
# validate — Nonlinearity Report
# ==========================================

import logging

from app.components.pipeline import nonlinearity_from
from app.components.writers import write_json, write_report
from calculators.nonlinearity import spring_character
from templates.paragraph_templates import paragraph_validation

logger = logging.getLogger(__name__)


def run(cfg, args=None) -> int:
    nl = nonlinearity_from(cfg)
    report = {
        "nonlinearity": nl.describe(),
        "feedback": nl.feedback.value,
        "partials": nl.partial_mode,
        "spring": spring_character(nl),
        "validation": nl.validation.as_dict(),
    }
    if "json" in cfg.formats:
        write_json(cfg.out_dir / "validation.json", report)
    write_report(cfg.out_dir / "report.txt", [paragraph_validation(nl)])
    print(f"{nl.describe()}: {nl.feedback.value} feedback, even-odd symmetric ({report['spring']})")
    return 0
