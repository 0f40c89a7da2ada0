"""Search for graphs on which the EQ14 lower bound exceeds DEE.

EQ14 is stated as a lower bound, but it already fails on K_3.  The
exhaustive sweep enumerates every labelled connected graph on n vertices and
reports the failures under the "known-open" tag, separately from genuine
regressions.
"""

from collections import Counter

from distspec import exhaustive_small, parse_graph6

for n in range(2, 6):
    s = exhaustive_small(n)
    known = s.known_open_violations()
    print(f"n={n}: {s.graphs_tested} graphs, {len(known)} EQ14 violations, "
          f"{len(s.unexpected_violations())} unexpected")

s = exhaustive_small(5)
worst = min(s.known_open_violations(), key=lambda v: v["slack"])
g = parse_graph6(worst["graph6"])
print(f"\nworst at n=5: graph6={worst['graph6']} edges={g.sorted_edges()} slack={worst['slack']:.4f}")

# the witnesses on 5 vertices, grouped by edge count
print("violations by edge count:", sorted(Counter(parse_graph6(v["graph6"]).m for v in s.violations).items()))
