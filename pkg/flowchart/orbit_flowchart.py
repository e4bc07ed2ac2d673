# ==========================================
# Orbit Inventory Diagram
# ==========================================

from graphviz import Digraph


def build_flowchart(nl, records, n_max):
    dot = Digraph(comment="kyorbit orbit inventory")

    dot.attr(rankdir="TB")

    # Root
    dot.node("f", f"f(ξ,η) = {nl.describe()}\n{nl.feedback.value} feedback")

    # Branches
    for n in range(1, n_max + 1):
        dot.node(f"n{n}", f"branch n={n}")
        dot.edge("f", f"n{n}")

    # Orbits
    for i, rec in enumerate(records):
        label = f"x̄ = {rec.amplitude:.6g}\nMorse index {rec.morse_index}"
        if not rec.hyperbolic:
            label += "\nnon-hyperbolic"
        dot.node(f"o{i}", label, shape="box" if rec.morse_index else "ellipse")
        dot.edge(f"n{rec.n}", f"o{i}")

    return dot


def write_flowchart(nl, records, n_max, output_path="orbits.dot"):
    return build_flowchart(nl, records, n_max).save(output_path)
