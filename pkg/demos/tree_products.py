"""Trees: spider covers, leaf-path partitions and the product bound.

For every tree up to 6 vertices, prints sp(T), its leaf-path partition, and
checks gamma_P(T1 x T2) >= gamma_P(T1) gamma_P(T2) over all ordered pairs.
"""

from powerdom import enumerate_trees, spider_cover_number, tree_condition1_partition, vizing_tree_check
from powerdom.graph import write_graph6

trees = [t for n in range(2, 7) for t in enumerate_trees(n)]
for t in trees:
    sp = spider_cover_number(t).value
    part, reports = tree_condition1_partition(t)
    pairs = ", ".join(f"{r.leaves[0]}-{r.leaves[1]}" for r in reports)
    print(f"{write_graph6(t):8s} n={t.n} sp={sp} parts={[sorted(p) for p in part.parts]} leaves {pairs}")

bad = 0
for a in trees:
    for b in trees:
        bound, refuted = vizing_tree_check(a, b)
        bad += refuted is not True
print(f"{len(trees) ** 2} ordered pairs checked, {bad} counterexamples")
