"""Partial sums of the k-l-m identity on the level-2 congruence surface.

Run: python3 demos/klm_identity.py [gamma_max]
"""
import sys

from orthoprime import EnumerationCutoff, Grading, identity_report, parse_surface

L = float(sys.argv[1]) if len(sys.argv) > 1 else 16.0
rep = identity_report(parse_surface("gamma2"), Grading((1, 2, 2)), EnumerationCutoff(L))

print(f"gamma2, grading (1,2,2), gamma-length <= {L:g}")
print(f"{'boundary':>8} {'rhs':>8} {'sum':>12} {'residual':>12} {'terms':>6}")
for b in rep.boundaries:
    print(f"{b.index + 1:>8} {b.rhs:>8.4f} {b.sum:>12.8f} {b.residual:>12.3e} {b.n_terms:>6}")

# every term is 4/(e^{gamma/2}+1); half of the total is 1/k + 1/l + 1/m summed twice
print(f"half total {rep.total / 2:.8f} (target 2)")
