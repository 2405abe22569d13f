#!/usr/bin/env python3
"""Quivers, path enumeration, opposites, and the rootedness fixpoint."""

from quiverhom import make_quiver, opposite, paths_between, root_sequence
from quiverhom.quiver import a2, is_right_rooted, loop_quiver

# the two-vertex line: 1 --a--> 2
q = a2()
print("paths 1 ~> 2:", [[a.id for a in p.arrows] for p in paths_between(q, 1, 2)])
print("paths 1 ~> 1:", [[a.id for a in p.arrows] for p in paths_between(q, 1, 1)])

# the rootedness filtration: vertices enter a stage once all their outgoing
# arrows land inside the previous stage
rs = root_sequence(q)
print("stages:", [sorted(s) for s in rs.stages], "fixpoint at", rs.fixpoint_index)
print("right rooted:", is_right_rooted(q))

# a loop never enters any stage: the quiver is not right rooted
lq = loop_quiver()
print("loop stages:", [sorted(s) for s in root_sequence(lq).stages])
print("loop right rooted:", is_right_rooted(lq))

# a longer example with a branch
q3 = make_quiver([1, 2, 3, 4], [("a", 1, 2), ("b", 1, 3), ("c", 2, 4), ("d", 3, 4)])
print("branch stages:", [sorted(s) for s in root_sequence(q3).stages])
print("paths 1 ~> 4:", [[a.id for a in p.arrows] for p in paths_between(q3, 1, 4)])

# the opposite quiver reverses arrows; applying it twice gives back the quiver
print("opposite twice is identity:", opposite(opposite(q3)) == q3)

# path enumeration fails loudly when a cycle makes the path set infinite
try:
    paths_between(lq, "v", "v")
except ValueError as exc:
    print("loop quiver path enumeration:", exc)
