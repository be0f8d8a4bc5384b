"""
Congruences modulo powers of 2
==============================

For odd primes ell the Hecke-type combination
  ell^3 p(2^a ell^2 n) + ell (-2^a n / ell) p(2^a n) + p(2^a n / ell^2)
agrees with (ell^3 + 1) p(2^a n) modulo 2^(a+12).
"""
from overq import congruence as cg

for ell in (3, 5):
    for alpha in range(4):
        rep = cg.verify_main_congruence(ell, alpha, 200)
        print(f"ell={ell} alpha={alpha}: {rep.verdict} ({rep.checked} values)")

# how far past 2^(a+12) does it go for small n?
for alpha, n_max in ((2, 1000), (3, 500), (4, 200)):
    print(f"alpha={alpha}: holds mod 2^{cg.scan_max_power(3, alpha, n_max).max_valid_K}")

# the integers a(s) in the level 2 expansion
print("ell=5:", cg.fit_garvan_morrow(5, 300).coeffs)
