"""Frozen oracle values.

Regenerate with ``python tools/freeze_fixtures.py``; never edit by hand.
"""

# effective_mass_gauss(beta=0.3), ground state: Richardson extrapolation of
# the step 0.01 grid refined to 0.005 and 0.0025
EFFECTIVE_MASS_GAUSS_E0 = 1.3755064009093363

# toy_problem(coupling=0.1, step=0.01) iterated with mixing 0.5 to 1e-13;
# the same loop on the step 0.005 grid differs by 2.5e-10
SCF_TOY_E0 = 1.5594649836028767
