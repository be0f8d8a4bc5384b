"""
Two Hauptmoduln and their modular equations
===========================================

G2 = (eta(2t)/eta(t))^24 generates the functions on Gamma0(2); G8 does the
same for Gamma0(8).  Everything below is checked on q-expansions.
"""
from overq import bigseries as bs
from overq import hauptmodul as hm

G2 = hm.named("G2", 200)
G8 = hm.named("G8", 200)
print("G2 =", G2)
print("G8 =", G8)

# G2 is a polynomial in G8; the fit finds the coefficients
print("G2 in powers of G8:", hm.fit_in_basis(G2, 4).as_dict())

# U2 maps G8 to 4 G8 + 16 G8^2
U = bs.u_p(hm.named("G8", 401), 2)
print("G8 | U2:", hm.fit_in_basis(U, 2).as_dict())

for v in hm.all_identities(200):
    print(f"  {v.identity:14s} {'ok' if v.passed else 'FAILED'}")

# a wrong constant shows up quickly
bad = hm.verify_modular_equation("modeq1", 200, perturb=True)
print("perturbed modeq1 first differs at q^%d" % bad.first_failure_exponent)
