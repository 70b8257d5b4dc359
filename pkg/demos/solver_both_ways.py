#!/usr/bin/env python3
# The search solver on a yes instance and a no instance, then against brute force.

import random

from p2t import Formula, reduce, solve_nae_bruteforce, solve_p2t, extract_assignment, is_good
from p2t.graph import Graph
from p2t.solver import solve_p2t_naive

yes = Formula.from_ints(3, [[-1, 2, -3]])
no = Formula.from_ints(1, [[1, 1]])

for f in (yes, no):
    g, m = reduce(f)
    out = solve_p2t(g, budget=60)
    print(f, "->", out.status, out.stats)
    if out.partition is not None:
        a = extract_assignment(g, m, out.partition)
        print("  extracted", a, "good:", is_good(f, a))
    print("  brute force says", solve_nae_bruteforce(f))

# random small graphs: the search and the 2^|E| enumeration must agree
rng = random.Random(1)
tally = {}
for _ in range(300):
    n = rng.randint(4, 8)
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    g = Graph(rng.sample(pairs, rng.randint(4, min(10, len(pairs)))))
    fast, slow = solve_p2t(g).status, solve_p2t_naive(g).status
    assert fast == slow
    tally[fast] = tally.get(fast, 0) + 1
print(tally)
