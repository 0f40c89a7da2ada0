"""Every bound evaluated on the path P_4 (alpha = 1, t = 2).

The reference comparison lists four lower bounds at three decimals:
175.069 (EQ7), 92.028 (EQ14), 11.870 (EQ19) and 5.291 (EQ4).  The last
one is sqrt(28) = 5.29150..., so it rounds to 5.292; the printed 5.291 is a
truncation.
"""

import math

from distspec import d_eigenvalues, distance_estrada, distance_profile, evaluate_all, generate_family

p4 = generate_family("path", 4)
dp = distance_profile(p4)
print("distance matrix:")
print(dp.d)
print("D =", dp.dist_degrees.tolist(), " T =", dp.second_degrees.tolist(), " W =", dp.wiener)

spec = d_eigenvalues(dp)
print("D-spectrum:", [round(float(x), 6) for x in spec.eigenvalues])
print(f"DEE(P_4) = {distance_estrada(spec):.6f}")

print(f"\n{'bound':<16}{'value':>12}{'slack':>10}")
for r in evaluate_all(p4):
    print(f"{r.bound_id:<16}{r.bound_value:>12.3f}{r.slack:>10.3f}")

print(f"\nsqrt(28) = {math.sqrt(28):.7f}")
