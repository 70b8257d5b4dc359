#!/usr/bin/env python3
# Build the gadget graph for the single clause (~x1 | x2 | ~x3) and look at it.

from p2t import parse_dimacs, reduce, degree_report
from p2t.formats import serialize_graph, to_dot

formula = parse_dimacs("p cnf 3 1\n-1 2 -3 0\n")
graph, manifest = reduce(formula)

print(formula)
print(graph.num_vertices, "vertices,", graph.num_edges, "edges")

# variable chain: t(-1) .. t(4), with v/nv on either side of each square
for i in range(formula.num_vars + 2):
    gad = manifest.variable(i)
    print(i, gad.t_prev, gad.v, gad.nv, gad.t)

# each clause slot hangs an r vertex off its literal
for slot in manifest.clauses[0]:
    print(slot.literal, "->", slot.r, "->", slot.literal_vertex)

report = degree_report(graph)
print("max degree", report.maximum)

print(serialize_graph(graph).splitlines()[:6])

# pipe this into `dot -Tsvg` to draw it; purple gadgets come out dashed
with open("reduced.dot", "w") as fh:
    fh.write(to_dot(graph))
