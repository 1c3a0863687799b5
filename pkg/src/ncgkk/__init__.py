"""Finite, checkable models of the Hopf fibration S3 -> S2, its theta-deformation and the torus factorization."""
from .numeric import Spectrum, hermitian_eigenvalues
from .spectra import SpectrumTable, d0_invariant_spectrum, s2_shifted_spectrum, s3_dirac_spectrum
from .star import Elem, Phase, normalize, parse_elem
from .torus import TorusModel, build_nc_torus

__version__ = "0.1.0"
