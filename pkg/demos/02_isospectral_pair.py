"""Two states with identical global and local spectra, one entangled and one not.

Any criterion built only from spectra cannot tell them apart. Partial
transposition can.
"""
from separability import full_verdict, ppt_check, spectra_twins
from separability.linalg import eigvalsh

rho, sigma = spectra_twins()
for name, s in (("rho", rho), ("sigma", sigma)):
    print(name)
    print("  global spectrum", eigvalsh(s.mat).round(6))
    print("  spectrum of A  ", eigvalsh(s.reduced([0])).round(6))
    print("  spectrum of B  ", eigvalsh(s.reduced([1])).round(6))
    print("  PT min eig     ", round(ppt_check(s).margin, 6))
    print("  conclusion     ", full_verdict(s).conclusion)
