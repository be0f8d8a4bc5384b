"""
Counting overpartitions
=======================

p-bar(n) counts partitions of n where the first copy of each part may be
overlined.  Its generating function is 1/theta_4, or eta(2t)/eta(t)^2.
"""
from overq import congruence as cg
from overq.hauptmodul import named

# the 8 overpartitions of 3: 3, 3', 2+1, 2'+1, 2+1', 2'+1', 1+1+1, 1'+1+1
print("p(3) =", cg.overpartition_bruteforce(3))

table = cg.overpartition_table(30)
print("first values:", table.values[:12])

# two routes to the same numbers
print("eta quotient agrees:", named("Phi2", 30).coeffs == table.values)

# a residue table is much cheaper when only 2-adic information matters
mod = cg.overpartition_table(100_000, 16)
print("p(100000) mod 2^16 =", mod[100_000])

# every p(n) with n >= 1 is even, and p(8n+7) is divisible by 64
print(cg.verify_progression(7, 8, 6, 20_000).verdict)
