"""Eight flavours of cyclic homology for three models of a point.

The Hochschild complex of the ground field, the one-dimensional complex and
the Cartan--Weil model of ES^1 are all quasi-isomorphic as cochain
complexes, yet their flavour tables differ.  Each row prints the dimension
in degrees -6..6 and the trust flag of the computation.
"""

from cyclichom import Flavour, Window, flavour_homology, hochschild, to_mixed
from cyclichom.models import es1_mixed, point_dga, point_mixed

MODELS = {
    "C(R), Hochschild complex of R": to_mixed(hochschild(point_dga())),
    "R with zero differentials": point_mixed(),
    "Cartan-Weil model of ES1": es1_mixed(),
}

for title, m in MODELS.items():
    print(title)
    for fl in Flavour:
        t = flavour_homology(m, fl, Window(-6, 6))
        dims = " ".join(str(t.dim(k)) for k in t.degrees)
        trust = sorted({t.trust(k) for k in t.degrees})
        print("  %-12s %s   (%s)" % (fl, dims, ", ".join(trust)))
    print()
