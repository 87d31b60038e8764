"""
Exact computations for the period map of the quantum cohomology of P^2.

Modules:
    corekit       truncated series and exact scalar rings
    gw_potential  genus-zero invariants and the potential
    modular       Eisenstein series, quasi-modular forms, theta constants
    hypergeom     hypergeometric solutions, symmetric square, connection matrix
    monodromy     monodromy group, characters and the actions on the period domain
    connection    second structure connection, the matrix T and the operator L
    inversion     Taylor coefficients of the period map and their inversion
    cli           command line interface
"""

__version__ = "0.1.0"
