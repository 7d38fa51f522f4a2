"""
Local bounds by enumerating deterministic strategies
====================================================

Every local hidden-variable model is a mixture of deterministic outcome
assignments, so the local bound of a correlator inequality is the best
value over all of them.
"""

from multichsh import bell, qstate

print("CHSH:", bell.lhv_local_bound(bell.chsh_inequality()))
for n in (3, 4, 5):
    print(f"MK n={n}:", bell.lhv_local_bound(bell.mk_inequality(n)))

# The conditioned CHSH expression subtracts 2 p(c), so local models score at most 0.
for n in (3, 4, 5):
    print(f"conditioned CHSH n={n}:", bell.lhv_local_bound(bell.conditioned_chsh_inequality(n)))

# Graph Bell operators on a star, compared with L(|I| + 1).
star = qstate.GraphSpec.star(5)
for size in range(1, 5):
    op = bell.GraphBellOperator(star, 0, range(1, size + 1))
    found = bell.lhv_local_bound(bell.graph_bell_inequality(op), absolute=True)
    print(f"|I|={size}: enumerated {found}, formula {bell.graph_bell_local_bound(op)}")

# Inequalities can also come from a text file.
print(bell.dump_inequality(bell.mk_inequality(3)))
