"""Graphs on which the bounds are tight.

EQ7 and EQ11 are equalities on every complete graph, EQ14 on K_2, and both
sides of EQ4 meet DEE = 1 on K_1.
"""

from distspec import Graph, evaluate_all, generate_family


def show(label, g, ids):
    reports = {r.bound_id: r for r in evaluate_all(g)}
    cells = "  ".join(f"{b} slack={reports[b].slack:+.1e} eq={reports[b].equality}" for b in ids)
    print(f"{label:<5} {cells}")


show("K_1", Graph(1), ("EQ4_LOWER", "EQ4_UPPER"))
show("K_2", generate_family("complete", 2), ("EQ14",))
for n in range(2, 13):
    show(f"K_{n}", generate_family("complete", n), ("EQ7", "EQ11"))

# for contrast, a graph with no equality
show("P_5", generate_family("path", 5), ("EQ7", "EQ11"))
