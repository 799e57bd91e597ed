"""Grade limit: gap measures approach the orthospectrum summand 2 log coth(mu/2)."""
from orthoprime import EnumerationCutoff, parse_surface
from orthoprime.identity import basmajian_convergence_report

rep = basmajian_convergence_report(parse_surface("pants:2,2,2"), [2, 4, 8, 16], EnumerationCutoff(16), n_classes=5)
print(f"ortholength window mu <= {rep.mu_max:.4f}")
print("class".ljust(18) + "".join(f"k={r.grade:<10}" for r in rep.rows))
for n, (i, j, w, mu) in enumerate(rep.classes):
    name = f"{i + 1}->{j + 1} {w or '1'}"
    print(name.ljust(18) + "".join(f"{r.deviations[n]:<12.2e}" for r in rep.rows))
