"""
Spectra of a quantum particle on an elliptical path: Rayleigh-Ritz diagonalization
and exact-rational perturbation series for two related Hamiltonians.
"""
