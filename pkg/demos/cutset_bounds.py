"""Cut-set sandwich and its generalization.

On G_{m,s} the lower and upper cut-set bounds meet.  On the two-hub example
the plain upper bound is 6 but splitting the hubs between the two sides
brings it down to 4, while the true value is 1.
"""

from powerdom import cutset_bounds, gen_gms, gen_section4_example, generalized_upper

for m, s in ((2, 1), (3, 1), (2, 2)):
    inst = gen_gms(m, s)
    rep = cutset_bounds(inst.graph, inst.cut)
    print(f"G_{{{m},{s}}}: {rep.value('lower')} <= gamma_P = {rep.exact['gamma_P']} <= {rep.value('upper')}")

inst = gen_section4_example(3)
g = inst.graph
plain = cutset_bounds(g, inst.cut)
split = generalized_upper(g, inst.cut, inst.cut_parts)
print(f"two hubs: plain upper {plain.value('upper')}, split upper {split.value('generalized_upper')}, "
      f"gamma_P {split.exact['gamma_P']}")
print("  construction:", " ".join(g.name(v) for v in split.extra["construction"]))
