"""ssmkit: nonlinear normal modes and spectral submanifolds of polynomial
dissipative dynamical systems.

Subpackages and modules
-----------------------
polyfield
    Sparse multi-index polynomial algebra (the substrate for all expansions).
spectral
    Ordered spectra, spectral subspaces and quotients, nonresonance checks.
mech
    Second-order mechanical systems and their first-order form.
ssm_auto
    Autonomous invariant-graph expansions and diagnostics.
forced
    Harmonic-balance periodic/quasiperiodic responses and time-dependent graphs.
reduce
    Parametrized reduced-order models, integration and trajectory validation.
cli
    Command-line front end (``ssmkit`` entry point).
"""

__version__ = "0.1.0"
