"""Reduced cyclic cohomology of H(S^n) next to the S^1-equivariant cohomology of LS^n.

The left column comes from words in the cohomology ring of the sphere, the
right one from the minimal model of its free loop space.  The two
computations share no code beyond the linear algebra, and they agree.
"""

from cyclichom import Window, equivariant_loop_table, reduced_precyclic, sphere_cohomology
from cyclichom.dual import lambda_cohomology
from cyclichom.models import free_sphere_model

for n in (2, 3, 4, 5):
    lam = lambda_cohomology(reduced_precyclic(sphere_cohomology(n)), 0, 8)
    loop = equivariant_loop_table(free_sphere_model(n), Window(0, 8), relative=True)
    print("S^%d" % n)
    print("  degree      " + " ".join("%2d" % k for k in range(9)))
    print("  lambda      " + " ".join("%2d" % lam[k][0] for k in range(9)))
    print("  loop model  " + " ".join("%2d" % loop.dim(k) for k in range(9)))
