#!/usr/bin/env python3
# Assignment -> two trees -> assignment, for a handful of random formulas.

import random

from p2t import (
    EdgePartition,
    extract_assignment,
    random_formula,
    reduce,
    solve_nae_bruteforce,
    verify_two_tree_partition,
    witness_partition,
)

rng = random.Random(7)
done = 0
while done < 5:
    f = random_formula(rng, max_vars=4, max_clauses=4)
    a = solve_nae_bruteforce(f)
    if a is None:
        continue
    g, m = reduce(f)
    part = witness_partition(f, a, g, m)
    verdict = verify_two_tree_partition(g, part)
    back = extract_assignment(g, m, part)
    sizes = [len(part.edges_in(g, c)) for c in "AB"]
    print(f, "|", a, "| trees", sizes, "| accepted", bool(verdict), "| same", back == a)
    done += 1

# flipping one edge breaks the certificate, and the verifier says why
# (edge 1 is v(0)-t(0), a step along the variable chain)
labels = part.labels(g)
labels[1] = "B" if labels[1] == "A" else "A"
v = verify_two_tree_partition(g, EdgePartition.from_sequence(g, labels))
print("after flipping", *g.edges[1], ":", v.reason, "in class", v.edge_class)
