"""
Powers of 2 in the U2 tower
===========================

Iterating U2 on Phi2(-q) G2(-q)^s gives polynomials in G8 whose
coefficients gain two factors of 2 every two steps.
"""
from overq import valuation as val
from overq.bigseries import nu2

print("t[2] =", val.t_table(2)[2].as_dict())

tower = val.l_tower(2, 4)
for row in tower.rows:
    vals = [int(nu2(c)) for _, c in row.coeffs][:8]
    print(f"L{row.level} ({row.family}): degrees {row.coeffs.low_degree}..{row.coeffs.degree}, pi2 {vals} ...")

report = val.audit_valuations([val.t_table(20), val.u_table(20)], [tower])
print(report.summary())

# deeper levels only need residues
deep = val.AuditReport(val.deep_tower_audit(2, 10))
print("L1..L10 mod 2^K:", "pass" if deep.passed else "FAIL")
