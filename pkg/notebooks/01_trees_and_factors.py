"""
Spanning trees, partitions and degree-bounded factors
=====================================================

A walk through the core objects on a few small multigraphs.
Run with ``python notebooks/01_trees_and_factors.py``.
"""

from ffkit.connectivity import edge_connectivity, max_packing, partition_connectivity_check, tree_packing
from ffkit.harness.generators import complete, complete_bipartite, multiplied
from ffkit.solvers import gf_factor, lovasz_check

# K5 is 4-edge-connected but only holds two disjoint spanning trees
K5 = complete(5)
print("K5: edge connectivity", edge_connectivity(K5), "max packing", max_packing(K5))
for i, tree in enumerate(tree_packing(K5, 2).trees):
    print("  tree", i, sorted(K5.edges[e] for e in tree))

# asking for three trees yields a partition that shows why it is impossible
witness = partition_connectivity_check(K5, 3)
print("3 trees in K5? blocked by partition", witness.blocks, f"({witness.observed} crossing edges < {witness.required})")

# doubling every edge raises the count to five
K5x2 = multiplied(K5, 2)
print("doubled K5 max packing:", max_packing(K5x2))

# a (g,f)-factor with every degree in [1, 2]
H = gf_factor(K5, [1] * 5, [2] * 5)
print("(1,2)-factor of K5:", sorted(K5.edges[e] for e in H), "degrees", K5.degrees_in(H))

# a star cannot give its leaves degree 2; the (A, B) pair below says why
star = complete_bipartite(1, 3)
g, f = [0, 2, 2, 2], [3, 3, 3, 3]
print("star with leaf degrees >= 2:", gf_factor(star, g, f))
print("  witness:", lovasz_check(star, g, f))
