"""Numerical verification toolkit for the meromorphic class U_m(lambda).

Builds members from Schur functions, extracts Taylor and Laurent coefficients
by independent routes, checks the proved coefficient bounds and certifies
violations of the conjectured bound on |a_3|.
"""
from .counterexample import CertifiedCounterexample, certify, find_p0, lambda_limit
from .schur import BlaschkeProduct, Constant, NegatedMobius, TaylorSchur, random_blaschke
from .series import ComplexSeries
from .umclass import PoleParams, UmFunction, build

__all__ = [
    "BlaschkeProduct", "CertifiedCounterexample", "ComplexSeries", "Constant",
    "NegatedMobius", "PoleParams", "TaylorSchur", "UmFunction", "build", "certify",
    "find_p0", "lambda_limit", "random_blaschke",
]
__version__ = "0.1.0"
