"""Hill climbing a ring into the strongest paradox.

Starting from an 8-node ring, where nobody's enemies have more enemies than
they do, greedy reattachment keeps the edge count fixed and piles edges onto
one node.  The climb ends at a star with one extra leaf-to-leaf edge, the
most unequal degree sequence reachable without isolating anyone.

    python demos/rewire_to_star.py
"""
from enmity.generators import GeneratorSpec, generate
from enmity.graph import degrees, make_view
from enmity.rewire import maximize_strength

ring = make_view(generate(GeneratorSpec("regular", 8, k=2)))
final, trace = maximize_strength(ring, "global", seed=1)

print(f"{'step':>4}  {'move':<16} {'dg':>7} {'dl':>7} {'H_var':>6} {'H_star':>6}")
for i, s in enumerate(trace.steps):
    print(f"{i:>4}  {s.move:<16} {s.delta_g:>7.3f} {s.delta_l:>7.3f} {s.H_var:>6.2f} {s.H_star:>6.3f}")
print(f"\nstopped: {trace.stop_reason}; final degrees {sorted(degrees(final).k.tolist(), reverse=True)}")

final_local, local_trace = maximize_strength(ring, "local", seed=1, budget=50)
print(f"local objective: dl {local_trace.steps[0].delta_l:.3f} -> {local_trace.steps[-1].delta_l:.3f} "
      f"after {local_trace.accepted} moves ({local_trace.stop_reason})")
