"""Which flavours see a quasi-isomorphism?

``quiso_chain`` returns mixed morphisms C(R) -> point -> ES1, each a
quasi-isomorphism for the differential delta.  Three flavours turn them into
isomorphisms; the other five detect the difference somewhere.
"""

from cyclichom import Flavour, Window, morphism_flavour_map, quiso_chain

f, g = quiso_chain()
for fl in Flavour:
    bad = []
    for name, h in (("C(R) -> point", f), ("point -> ES1", g)):
        rows = morphism_flavour_map(h, fl, Window(-4, 4))
        bad += ["%s at %d (%d -> %d)" % (name, k, r.source_dim, r.target_dim)
                for k, r in rows.items() if not r.bijective]
    verdict = "invariant on [-4, 4]" if not bad else "not bijective: " + "; ".join(bad[:2])
    print("%-12s %s" % (fl, verdict))
