"""
The admissible-mutation tree
============================

Starting from (O(-1), O, O(1), O(2)), the root has two admissible children
and every later vertex has three.  The check below confirms the structure to
depth 4 and writes a Graphviz file of the first three levels.
"""

import pathlib
import tempfile

from p3helix.tree import build_tree, export, verify_tree

tree = build_tree(4)
print("vertices:", len(tree))

report = verify_tree(tree)
for name, ok in report.checks.items():
    print(f"  {name:<24} {'ok' if ok else 'FAILED'}")

# level by level, the new slopes fill (0, 1) in order
for depth in range(1, 4):
    level = sorted(v.new_slope for v in tree.vertices() if v.depth == depth)
    more = " ..." if len(level) > 9 else ""
    print(depth, " ".join(str(s) for s in level[:9]) + more)

out = pathlib.Path(tempfile.gettempdir()) / "gamma_depth3.dot"
out.write_text(export(build_tree(3), "dot"))
print("wrote", out, "(render with: dot -Tsvg)")
