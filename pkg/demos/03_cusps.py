"""
Orders at cusps
===============

Newman's conditions say when an eta quotient is a modular function on
Gamma0(N); Ligozat's formula gives its order at every cusp.
"""
from overq import etaq
from overq.hauptmodul import ETA_FORMS

G8 = ETA_FORMS["G8"][1]
print("Newman:", etaq.newman_check(G8).to_dict())
for cusp, order in etaq.cusp_orders(G8).orders:
    print(f"  cusp {cusp} width {cusp.width}: order {order}")

# any rational is moved to its representative first
print("7/12 on Gamma0(8) ->", etaq.normalize_cusp((7, 12), 8))

# F = Phi2(-q)/Phi2(-q^4): U2 can only create a simple pole at 0
F = ETA_FORMS["F"][1]
for c in etaq.cusp_set(8):
    print(f"  F|U2 at {c}: order >= {etaq.gordon_hughes_bound(F, 2, 8, c)}")
