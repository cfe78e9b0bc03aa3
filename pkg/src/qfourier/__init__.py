"""qfourier: Fourier analysis of equivariant quantum cohomology at desk scale.

Exact shift-operator/GKZ algebra, toric I-functions and their discrete
Fourier transforms, Jeffrey-Kirwan residues, Gamma-hat quantum volumes via
independent numeric routes, and projective-bundle decomposition data.
"""

__version__ = "0.1.0"
