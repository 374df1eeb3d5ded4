"""Self-similar algebras over the free algebra k<x, y>.

Submodules: ``arith`` (fields, univariate polynomials, exact and GF(2)
matrices), ``freealg`` (noncommutative polynomials), ``selfsim`` (the
morphisms psi_{a,b} and their action), ``langunits`` (unit automata and
word counting), ``spectra`` (the matrices M_k and their spectra) and
``cli``.
"""

from .freealg import NcPolynomial, format_poly, parse_poly
from .langunits import UnitPolicy, build_automaton, compute_mu_nu, omega_construct
from .selfsim import LETTERS, MorphismParams, act, act_word, psi, psi_iter
from .spectra import c_k, m_k, nilpotency_conjecture, parity_image

__version__ = "0.1.0"

__all__ = [
    "LETTERS", "MorphismParams", "NcPolynomial", "UnitPolicy", "act", "act_word",
    "build_automaton", "c_k", "compute_mu_nu", "format_poly", "m_k",
    "nilpotency_conjecture", "omega_construct", "parity_image", "parse_poly",
    "psi", "psi_iter",
]
