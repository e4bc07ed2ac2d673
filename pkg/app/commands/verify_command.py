# ==========================================
# verify — DDE Residuals and Symmetry Residuals
# ==========================================

import logging

from app.components.pipeline import nonlinearity_from, orbits_from, table_from
from app.components.writers import write_json
from calculators.dde import residual
from calculators.orbit import construct_solution, odd_symmetry_defect
from calculators.planar import symmetry_residuals
from utils.errors import EXIT_VALIDATION

logger = logging.getLogger(__name__)

RESIDUAL_GATE = 1e-6
SYMMETRY_GATE = 1e-7


def symmetry_ok(sym) -> bool:
    return max(sym.shift_correct, sym.xi_even, sym.eta_odd) < SYMMETRY_GATE


def run(cfg, args=None) -> int:
    nl = nonlinearity_from(cfg)
    out = {"orbits": []}
    failed = False

    amplitude = getattr(args, "amplitude", None)
    if amplitude is not None:
        sym = symmetry_residuals(nl, amplitude)
        out["symmetry"] = sym.as_dict()
        failed = not symmetry_ok(sym)
        out["status"] = "FAIL" if failed else "PASS"
        print(f"a={amplitude:g}: shift residual {sym.shift_correct:.3g} "
              f"(other shift {sym.shift_wrong:.3g}), even {sym.xi_even:.3g}, odd {sym.eta_odd:.3g}  "
              f"{out['status']}")
    else:
        table = table_from(cfg, nl)
        _, records = orbits_from(cfg, nl, table)
        for rec in records:
            x = construct_solution(rec)
            res = residual(nl, x)
            odd = odd_symmetry_defect(x)
            sym = symmetry_residuals(nl, rec.amplitude)
            ok = res < RESIDUAL_GATE and odd < SYMMETRY_GATE and symmetry_ok(sym)
            failed = failed or not ok
            out["orbits"].append({
                "n": rec.n,
                "amplitude": rec.amplitude,
                "residual": res,
                "odd_symmetry": odd,
                "symmetry": sym.as_dict(),
                "status": "PASS" if ok else "FAIL",
            })
            print(f"n={rec.n}  amplitude={rec.amplitude:.12g}  residual={res:.3g}  "
                  f"odd_symmetry={odd:.3g}  {'PASS' if ok else 'FAIL'}")

    if "json" in cfg.formats:
        write_json(cfg.out_dir / "verify.json", out)
    if failed:
        logger.warning("Verification failed; see verify.json")
        return EXIT_VALIDATION
    return 0
