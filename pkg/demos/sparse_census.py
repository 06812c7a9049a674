"""Classify sparse shapes and count construction outputs for small fields.

Shows the trinomial decision tree on the three worked low-order examples,
the six-row family of degree-6 trinomials, and the closed-form output counts
against brute enumeration.
"""

from cosetpp import build_field, coset_system
from cosetpp import census, classes
from cosetpp.classes import SparseSpec

ctx = build_field(5, 1)
sys = coset_system(ctx, 2)
print("q=5, d=2, r=3 trinomials 1 + aX^3 + bX with a^4 = -1, b = a - 1:")
for a in range(ctx.N):
    if ctx.power(a, 4) != ctx.neg_one:
        continue
    spec = SparseSpec(shape="trinomial", r=3, d=2, i1=0, j1=1, i2=1, j2=0,
                      a=a, b=ctx.neg(ctx.sub(0, a)))
    verdict = classes.trinomial_classify(ctx, sys, spec)
    print(f"  a = {ctx.format_elem(a):>5s}: {verdict.tag:<18s} PP = {verdict.is_pp}")

print("\nthe six-row trinomial family at q = 11, r = 1:")
ctx11 = build_field(11, 1)
sys11 = coset_system(ctx11, 4)
for spec in classes.class4_generate(ctx11, 11, 1):
    verdict = classes.trinomial_classify(ctx11, sys11, spec)
    print(f"  a = {ctx11.format_elem(spec.a):>5s}, b = {ctx11.format_elem(spec.b):>5s}:"
          f" {verdict.tag} PP = {verdict.is_pp}")

print("\noutput counts (closed form, cross-checked in the test suite):")
for q, d, r in [(3, 2, 1), (5, 2, 3), (5, 3, 1), (7, 2, 1)]:
    print(f"  q={q} d={d} r={r}: {census.total_count(q, d, r)}")
