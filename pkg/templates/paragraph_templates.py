# ==========================================
# Report Paragraph Templates
# ==========================================

def paragraph_validation(nl):
    v = nl.validation
    smooth = ""
    if v.non_smooth:
        smooth = (f" The definition uses {', '.join(v.non_smooth)}, which is not twice continuously "
                  f"differentiable; derivative-based results should be read with care.")
    return (
        f"The nonlinearity f(ξ,η)={nl.describe()} was checked on a {v.grid_n}×{v.grid_n} grid over "
        f"[−{v.grid_extent:g}, {v.grid_extent:g}]². The maximal relative evenness defect in ξ was "
        f"{v.max_even_defect:.3g} and the maximal relative oddness defect in η was {v.max_odd_defect:.3g} "
        f"(tolerance {v.tol:.1g}). The delayed partial derivative ∂₂f kept a constant sign with "
        f"min |∂₂f|={v.min_abs_d2:.3g}, so the equation has {nl.feedback.value} feedback; partial derivatives "
        f"were evaluated {'analytically' if nl.partial_mode == 'analytic' else 'by central differences'}.{smooth}"
    )


def paragraph_periodmap(table):
    a = table.amplitudes
    return (
        f"The period map T_f of the planar system was sampled at {a.size} amplitudes in [0, {a[-1]:g}], "
        f"with T_f(0)=2π/|∂₂f(0,0)|={table.period_at_zero:.10g}. Over this range T_f varied between "
        f"{table.periods.min():.10g} and {table.periods.max():.10g} and was classified as "
        f"{table.classification.value.replace('_', ' ')}."
    )


def paragraph_orbit(rec):
    stability = "asymptotically stable" if rec.morse_index == 0 else f"unstable with Morse index {rec.morse_index}"
    hyperbolic = (
        f"Because T_f'(x̄)={rec.slope:.4g} (±{rec.slope_err:.1g}) is non-zero, the orbit is hyperbolic and {stability}."
        if rec.hyperbolic else
        f"The slope T_f'(x̄)={rec.slope:.4g} is within its error bar ({rec.slope_err:.1g}) of zero; the orbit is "
        f"reported as non-hyperbolic with index {rec.morse_index}."
    )
    return (
        f"On branch n={rec.n} the planar orbit through (x̄,0) with x̄={rec.amplitude:.12g} has minimal period "
        f"{rec.period:.12g}, matching the realizable value {rec.realizable_value:.12g}; its first coordinate is a "
        f"periodic solution of the delay equation. {hyperbolic}"
    )


def paragraph_floquet(rec, spec, agrees):
    verdict = "agrees with" if agrees else "does not agree with"
    return (
        f"The monodromy operator of the branch n={rec.n} orbit was discretized on a mesh of {spec.mesh} intervals "
        f"over one period ({spec.period:.10g}). It has {spec.unstable_count} multipliers with modulus above "
        f"1+{spec.eps_spec:g}, and the multiplier closest to 1 lies at distance {spec.trivial_defect:.3g}. "
        f"This count {verdict} the Morse index {rec.morse_index} predicted from the period-map slope."
    )


def paragraph_simulation(t_max, amplitude, period):
    return (
        f"The delay equation was integrated by the method of steps up to t={t_max:g}. Over the trailing window the "
        f"solution had amplitude {amplitude:.10g} and mean period {period:.10g}."
    )


def paragraph_bifurcation(alpha_lo, alpha_hi, events):
    hopf = [e for e in events if e.kind.value == "Hopf"]
    sn = [e for e in events if e.kind.value != "Hopf"]
    text = (
        f"For x'=αf with α in [{alpha_lo:g}, {alpha_hi:g}], the equilibrium undergoes {len(hopf)} Hopf "
        f"bifurcation{'s' if len(hopf) != 1 else ''}"
    )
    if hopf:
        text += " at α=" + ", ".join(f"{e.alpha:.10g} (n={e.n})" for e in hopf)
    text += "."
    if sn:
        text += (
            f" Interior extrema of the period map give {len(sn)} saddle-node candidate"
            f"{'s' if len(sn) != 1 else ''} at α=" + ", ".join(f"{e.alpha:.10g} (n={e.n})" for e in sn) + "."
        )
    return text
