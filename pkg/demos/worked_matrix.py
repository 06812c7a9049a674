"""Build the worked q = 47, d = 6 example end to end.

Loads the packaged per-coset input, assembles the coefficient matrix and the
polynomial f = X^r h(X^{q-1}), verifies f by brute force, and then inverts
the construction to recover the per-coset data from h alone.
"""

import json

from cosetpp import CosetSystem, cli, construction, oracle

data = json.loads(cli._golden_text("example54_input.json"))
ctx = cli.field_from_json(data["field"])
inp = construction.AlgoInput.from_json(ctx, data)
sys = CosetSystem(ctx, inp.d)

cert = construction.assemble(ctx, sys, inp)
print(f"q = {ctx.q}, d = {inp.d}, r = {inp.r}")
print("coefficient matrix [a_ij] in the basis (1, g):")
for row in construction.h_matrix(sys, cert.h):
    print("  " + "  ".join(f"{ctx.format_basis(v):>7s}" for v in row))

report = oracle.is_permutation(ctx, cert.f)
print(f"f permutes all {ctx.qq} elements: {report.is_permutation}")

profile = construction.monomial_profile(ctx, sys, cert.h, cert.r)
print("recovered per-coset data (k: s, t, tau, e, pi):")
for row in profile:
    print(f"  {row.k}: s={row.s} t={row.t} tau={row.tau} e={row.e} pi={row.pi}")
