#!/usr/bin/env python3
# Heavy literals push vertex degrees up; rewriting the formula caps them at four.

from p2t import Formula, bound_occurrences, degree_report, reduce, solve_nae_bruteforce

f = Formula.from_ints(4, [[1, 2], [1, 3], [1, 4], [1, -2, 3], [-1, -4]])
print("before:", f)
print("  max degree", degree_report(reduce(f)[0]).maximum)

b, _ = bound_occurrences(f)
print("after: ", b)
print("  max degree", degree_report(reduce(b)[0]).maximum)

# each fresh z is tied to its literal by (l | ~z), so NAE status is unchanged
print("satisfiable before/after:",
      solve_nae_bruteforce(f) is not None, solve_nae_bruteforce(b) is not None)
