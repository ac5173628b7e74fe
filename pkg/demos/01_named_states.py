"""Run every criterion on the standard named states and print the margins."""
import numpy as np

from separability import full_verdict, phi_mixture, projector, bell_state

# Mixtures of |phi+> and |phi->. Only the even mixture is separable.
print("phi mixture  lambda -> conclusion, worst margin")
for lam in np.linspace(0, 1, 11):
    v = full_verdict(phi_mixture(lam))
    worst = min(r.margin for r in v.reports)
    print(f"  {lam:.1f}  {v.conclusion:<12} {worst:+.6f}")

# A Bell state violates everything that applies to it.
v = full_verdict(projector(bell_state("psi-")))
print("\nsinglet")
for r in v.reports:
    print(f"  {r.criterion:<16} {'ok' if r.satisfied else 'violated':<9} {r.margin:+.6f}")
