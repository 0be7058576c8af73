"""Duality between flavours.

Dualizing a mixed complex exchanges polynomial and power-series sides and
reflects degrees, so the [[u]] table of the dual is the [u^-1] table of the
original read backwards.
"""

from cyclichom import Flavour, Window, dualize, duality_check, flavour_homology
from cyclichom.models import es1_mixed

m = es1_mixed()
d = dualize(m, Window(-6, 6))
primal = flavour_homology(m, Flavour.POLY_UINV, Window(-6, 6))
dual = flavour_homology(d, Flavour.SERIES_U, Window(-6, 6))
print("ES1       [u^-1]  ", [primal.dim(k) for k in range(-6, 7)])
print("dual ES1  [[u]]   ", [dual.dim(-k) for k in range(-6, 7)], "(degrees reflected)")
rep = duality_check(m, Window(-6, 6))
print("duality_check: %d identities, all hold: %s" % (len(rep.checks), rep.passed))
