"""
Connected factors from the constructive pipelines
=================================================

Each pipeline returns the factor together with the window it promises,
so every result can be checked on the spot.
"""

from ffkit import PreconditionUnmet
from ffkit import pipelines as P
from ffkit.graph import ResidueTarget, is_bipartite
from ffkit.harness.generators import complete, dipole, multiplied
from ffkit.harness.verify import verify


def show(G, res):
    d = G.degrees_in(res.H)
    print(f"  {res.theorem} via {res.route}: |H|={len(res.H)} degrees={d}")
    print(f"  window lo={res.lo} hi={res.hi} verified={verify(G, res.H, res.contract).ok}")


# spanning Eulerian subgraph of K5 with degrees near half
K5 = complete(5)
print("K5, Eulerian factor:")
show(K5, P.eulerian_bounded_pipeline(K5))

# odd degrees mod 2 on a 9-edge dipole
D9 = dipole(9)
print("dipole D9, all degrees odd:")
show(D9, P.gen_modk_pipeline(D9, ResidueTarget.constant(2, 2, 1), 1, 0))

# K5 has no bipartite spanning Eulerian subgraph, doubled K5 does
print("bipartite Eulerian factor of K5:")
try:
    P.bip_eulerian_pipeline(K5)
except PreconditionUnmet as exc:
    print("  refused:", exc)
K5x2 = multiplied(K5, 2)
res = P.bip_eulerian_pipeline(K5x2)
print("doubled K5:", "bipartite" if is_bipartite(K5x2, res.H) else "not bipartite", K5x2.degrees_in(res.H))

# two edge-disjoint non-bipartite Eulerian factors of tripled K4
K4x3 = multiplied(complete(4), 3)
res = P.nonbip_eulerian_pipeline(K4x3, 2)
for i, F in enumerate(res.factors):
    print(f"tripled K4, factor {i}: degrees {K4x3.degrees_in(F)}")
