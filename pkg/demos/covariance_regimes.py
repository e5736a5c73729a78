"""Do my enemies have more friends than I do?

In the mixed world the answer depends only on how friend counts and enemy
counts co-vary across people.  We plant the three regimes with the
configuration generator: popular people also collect enemies (comonotone),
popular people have few enemies (antimonotone), and everyone has the same
number of enemies (constant).

    python demos/covariance_regimes.py
"""
import numpy as np

from enmity.generators import GeneratorSpec, generate
from enmity.graph import cross_degrees, degrees, make_view
from enmity.paradox import mixed_report

n = 120
for label, kw in (
    ("comonotone", dict(coupling="comonotone")),
    ("antimonotone", dict(coupling="antimonotone")),
    ("independent", dict(coupling="independent")),
    ("constant", dict(deg_neg=(2,) * n)),
):
    deltas = []
    covs = []
    for seed in range(20):
        g = generate(GeneratorSpec("configuration-signed", n, seed=seed, tail=2.2, **kw))
        v = make_view(g, "-")
        k_neg = degrees(v).k
        k_pos = cross_degrees(g, v, "+").k
        covs.append(np.cov(k_neg, k_pos, bias=True)[0, 1])
        deltas.append(mixed_report(g, "-").delta_g)
    deltas = np.array(deltas)
    print(f"{label:>12}: mean cov(k-, k+) = {np.mean(covs):+7.3f}   "
          f"friends-of-enemies dg < 0 in {np.sum(deltas < 0):>2}/20, == 0 in {np.sum(deltas == 0):>2}/20")
