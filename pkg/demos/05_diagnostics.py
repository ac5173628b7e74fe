"""Purification cross-Gram distances and the N(mu) family."""
from separability import (
    bell_state,
    cross_gram_diagnostic,
    n_mu_interval,
    phi_mixture,
    projector,
    random_separable,
    spectra_twins,
)

rho, sigma = spectra_twins()
cases = {
    "product": random_separable((2, 2), 1, 5)[0],
    "sigma": sigma,
    "rho": rho,
    "phi mix 0.5": phi_mixture(0.5),
    "phi+": projector(bell_state("phi+")),
}
print(f"{'state':<12} {'||k - s||':>10} {'mu_min':>9} {'mu_max':>9}")
for name, s in cases.items():
    g = cross_gram_diagnostic(s)
    iv = n_mu_interval(s)
    print(f"{name:<12} {g.dist_full:10.6f} {iv.mu_min:9.4f} {iv.mu_max:9.4f}")
