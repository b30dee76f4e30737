from __future__ import annotations

import os

import numpy as np

from truth_belief import complexity, divergence, entropy, make_distribution
from truth_belief.report import RunReport, dump_distribution, format_number
from truth_belief.variational import SolverConfig, minimize_complexity


def build_pair():
    labels = ("rain", "cloud", "sun")
    truth = make_distribution(labels, [0.2, 0.3, 0.5])
    belief = make_distribution(labels, [0.1, 0.3, 0.6])
    return truth, belief


def sweep(truth, belief, qs):
    rows = []
    for q in qs:
        rows.append(
            {
                "q": float(q),
                "entropy": entropy(q, truth),
                "complexity": float(complexity(q, truth, belief)),
                "divergence": float(divergence(q, truth, belief)),
            }
        )
    return rows


if __name__ == "__main__":
    truth, belief = build_pair()
    rows = sweep(truth, belief, np.linspace(0.0, 3.0, 7))
    for row in rows:
        print("  ".join(f"{k}={format_number(v)}" for k, v in row.items()))

    # the believer who minimises complexity ends up believing the truth
    result = minimize_complexity(2.0, truth, SolverConfig(initial_point="random-on-support"))
    print(f"minimizer {result.minimizer!r} after {result.iterations_used} iterations")

    here = os.path.dirname(__file__)
    dump_distribution(os.path.join(here, "truth.json"), truth)
    report = RunReport(command="example", q_values=[r["q"] for r in rows], results=rows)
    out_path = os.path.join(here, "truth_meets_belief.json")
    report.write(out_path)
    print(f"Saved report to {out_path}")
