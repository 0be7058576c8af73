"""A polynomial resolution in the theta double complex.

For a (d+b)-closed element x in the image of 1 - t, ``polynomial_resolution``
finds c = c_1 theta^-1 + ... + c_K theta^-K with delta_theta c = x.  The
weight (largest word length) of the columns never goes up, and drops after
every second step, which is why K stays finite.
"""

from cyclichom import hochschild, polynomial_resolution, sphere_cohomology

cc = hochschild(sphere_cohomology(2))
ops = cc.operators(4)
for y in ({("1", "1", "1", "1"): 1}, {("v", "1", "1", "1", "1"): 1},
          {("1", "v", "v", "1"): 1}):
    x = ops.one_minus_t.apply(y)
    word = "|".join(next(iter(y)))
    if ops.dH.apply(x):
        print("(1 - t)(%s) is not (d+b)-closed, so it has no resolution" % word)
        continue
    res = polynomial_resolution(cc, x)
    print("x = (1 - t)(%s): %d columns, weights %s, delta_theta c = x: %s"
          % (word, res.length, res.weights, res.verified))
    for k, c in sorted(res.columns.items()):
        terms = " + ".join("%s (%s)" % (v, "|".join(l)) for l, v in sorted(c.items()))
        print("    c_%d = %s" % (k, terms))
