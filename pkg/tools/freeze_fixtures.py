"""Recompute the frozen reference values used by the test suite.

Run ``python tools/freeze_fixtures.py`` and paste the output into
``tests/fixtures.py`` if a deliberate numerical change moves them.
"""

from glnm.builtins import builtin_problem
from glnm.eigensolve import solve
from glnm.grid import GridSpec
from glnm.scf import ScfConfig, scf_iterate, toy_problem


def richardson4(e_h, e_h2):
    return e_h2 + (e_h2 - e_h) / 15.0


def effective_mass_reference(steps=(0.01, 0.005, 0.0025)):
    b = builtin_problem("effective_mass_gauss")
    es = [solve(b.eigen_problem(0, grid_spec=GridSpec.uniform(0.0, 8.0, h))).e for h in steps]
    r1 = richardson4(es[0], es[1])
    r2 = richardson4(es[1], es[2])
    return es, r1, r2


def scf_reference(step=0.01):
    problems, update = toy_problem(step=step)
    cfg = ScfConfig(mixing=0.5, tolerance_e=1e-13, tolerance_field=1e-11, max_iterations=300)
    return scf_iterate(problems, update, cfg)


if __name__ == "__main__":
    es, r1, r2 = effective_mass_reference()
    print("effective_mass_gauss e(h) =", [repr(e) for e in es])
    print("EFFECTIVE_MASS_GAUSS_E0 =", repr(r2), " # Richardson (h/2, h/4); (h, h/2) gives", repr(r1))
    st = scf_reference()
    print("SCF_TOY_E0 =", repr(st.energies[0]), " # iterations", st.iteration)
    fine = scf_reference(step=0.005)
    print("  grid check h/2:", repr(fine.energies[0]), "diff", fine.energies[0] - st.energies[0])
