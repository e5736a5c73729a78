"""Enemies of enemies across ten synthetic villages.

Each village has dense, mostly reciprocated friendships and sparse,
mostly one-sided enmity.  We compare the enmity paradox when an enemy tie
counts if either person names it (symmetrized) with the stricter reading
where both must name it (reciprocated).

    python demos/village_enmity.py
"""
from enmity.generators import GeneratorSpec, generate
from enmity.graph import make_view
from enmity.measures import reciprocity
from enmity.paradox import delta_local_same, mixed_report

print(f"{'village':>7} {'recip(-)':>9} {'sym dg':>8} {'sym dl':>8} {'rec dg':>8} {'rec dl':>8} {'friends of enemies':>19}")
weaker = 0
for seed in range(10):
    spec = GeneratorSpec("erdos-renyi-signed", 80, seed=seed, p_pos=0.08, r_pos=0.6, p_neg=0.04, r_neg=0.15)
    g = generate(spec)
    sym = delta_local_same(make_view(g, "-", "symmetrized"))
    rec = delta_local_same(make_view(g, "-", "reciprocated"))
    # do my enemies have more friends than I do?
    mixed = mixed_report(g, "-")
    weaker += abs(rec.delta_g) < abs(sym.delta_g)
    print(f"{seed:>7} {reciprocity(g, '-'):>9.2f} {sym.delta_g:>8.3f} {sym.delta_l:>8.3f} "
          f"{rec.delta_g:>8.3f} {rec.delta_l:>8.3f} {mixed.delta_g:>19.3f}")

print(f"\nreciprocated enmity paradox is weaker in {weaker} of 10 villages")
print("Few enemy ties survive the mutual-naming filter, and the survivors are spread")
print("thinly, so the degree spread that drives the paradox mostly disappears.")
