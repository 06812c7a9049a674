"""Command-line front end: generate, verify, classify, census, reproduce.

Exit codes follow the oracle convention: 0 verified, 1 refuted, 2 for
invalid or undefined inputs.
"""

from __future__ import annotations

import argparse
import importlib.resources
import json
import math
import random
import sys as _sys
from typing import Optional

from . import census, classes, construction, oracle, polyring
from .classes import SparseSpec
from .construction import AlgoInput
from .errors import CosetPPError
from .fieldcore import CosetSystem, FieldCtx, build_field

EXIT_VERIFIED = 0
EXIT_REFUTED = 1
EXIT_UNDEFINED = 2


# -- field and file plumbing -----------------------------------------------


def field_to_json(ctx: FieldCtx) -> dict:
    return {
        "p": ctx.p,
        "m": ctx.m,
        "modulus2": [ctx.modulus2[0], ctx.modulus2[1], 1],
        "gamma": list(ctx.gamma_pair),
    }


def field_from_json(data: dict) -> FieldCtx:
    return build_field(
        data["p"], data.get("m", 1),
        modulus2=data.get("modulus2"), gamma=data.get("gamma"),
    )


def _build_ctx(args, embedded: Optional[dict] = None) -> FieldCtx:
    if embedded is not None and args.p is None:
        return field_from_json(embedded)
    if args.p is None:
        raise CosetPPError("no field given: pass --p (and --m) or embed one in --input")
    modulus2 = None
    if args.modulus:
        c0, c1 = (int(v) for v in args.modulus.split(","))
        modulus2 = [c0, c1, 1]
    gamma = None
    if args.gamma:
        gamma = [int(v) for v in args.gamma.split(",")]
    return build_field(args.p, args.m, modulus2=modulus2, gamma=gamma)


def _load_json(path: str) -> dict:
    with open(path) as fh:
        return json.load(fh)


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _emit(args, text: str) -> None:
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        _sys.stdout.write(text)


def _golden_text(name: str) -> str:
    return (importlib.resources.files("cosetpp") / "data" / name).read_text()


# -- subcommands -----------------------------------------------------------


def cmd_generate(args) -> int:
    file_data = _load_json(args.input) if args.input else None
    ctx = _build_ctx(args, file_data.get("field") if file_data else None)
    if file_data is not None:
        inp = AlgoInput.from_json(ctx, file_data)
    else:
        if args.r is None or args.d is None:
            raise CosetPPError("generate needs --r and --d (or --input)")
        sys_ = CosetSystem(ctx, args.d)
        rng = random.Random(args.seed)
        inp = construction.random_input(ctx, sys_, args.r, rng)
    sys_ = CosetSystem(ctx, inp.d)
    cert = construction.assemble(ctx, sys_, inp)
    report = oracle.is_permutation(ctx, cert.f)
    if not report.is_permutation:
        _sys.stderr.write("self-check failed: assembled f is not a permutation\n")
        return EXIT_REFUTED
    payload = cert.to_json(ctx)
    payload["field"] = field_to_json(ctx)
    payload["input"] = inp.to_json(ctx)
    payload["matrix"] = [
        [ctx.format_basis(v) for v in row]
        for row in construction.h_matrix(sys_, cert.h)
    ]
    if args.format == "text":
        lines = [f"r = {cert.r}, d = {cert.d}",
                 "h = " + polyring.format_poly(ctx, cert.h),
                 "matrix:"]
        lines += ["  " + "  ".join(row) for row in payload["matrix"]]
        _emit(args, "\n".join(lines) + "\n")
    else:
        _emit(args, _dumps(payload))
    return EXIT_VERIFIED


def _poly_from_input(ctx: FieldCtx, args, data) -> polyring.Poly:
    if args.format == "text":
        with open(args.input) as fh:
            return polyring.parse_poly(ctx, fh.read())
    if isinstance(data, list):
        return polyring.poly_from_json(data)
    if "f" in data:
        return polyring.poly_from_json(data["f"])
    raise CosetPPError("no polynomial found in input file")


def cmd_verify(args) -> int:
    if not args.input:
        raise CosetPPError("verify needs --input")
    data = None
    if args.format != "text":
        data = _load_json(args.input)
    embedded = data.get("field") if isinstance(data, dict) else None
    ctx = _build_ctx(args, embedded)
    f = _poly_from_input(ctx, args, data)
    report = oracle.is_permutation(ctx, f)
    d = args.d if args.d is not None else (
        data.get("d") if isinstance(data, dict) else None
    )
    if d is not None and isinstance(data, dict) and "h" in data and "r" in data:
        sys_ = CosetSystem(ctx, d)
        h = polyring.poly_from_json(data["h"])
        prof = oracle.extract_coset_monomial(ctx, sys_, h, data["r"])
        if prof is not None:
            report.coset_profile = [
                {"k": row["k"], "lambda": row["lambda"], "e": row["e"]}
                for row in prof
            ]
    _emit(args, _dumps(report.to_json(ctx)))
    return EXIT_VERIFIED if report.is_permutation else EXIT_REFUTED


def cmd_classify(args) -> int:
    if not args.input:
        raise CosetPPError("classify needs --input")
    data = _load_json(args.input)
    ctx = _build_ctx(args, data.get("field"))
    spec = SparseSpec.from_json(ctx, data)
    sys_ = CosetSystem(ctx, spec.d)
    if spec.shape == "binomial":
        verdict = classes.binomial_check(ctx, sys_, spec)
    else:
        verdict = classes.trinomial_classify(ctx, sys_, spec)
    _emit(args, _dumps(verdict.to_json(ctx)))
    if verdict.is_pp is None:
        return EXIT_UNDEFINED
    return EXIT_VERIFIED if verdict.is_pp else EXIT_REFUTED


def cmd_census(args) -> int:
    if args.p is None or args.r is None:
        raise CosetPPError("census needs --p (and --m) and --r")
    q = args.p**args.m
    divisors = [args.d] if args.d is not None else [
        d for d in range(1, q + 2) if (q + 1) % d == 0
    ]
    rows = []
    for d in divisors:
        rows.append({
            "q": q, "d": d, "r": args.r,
            "total": census.total_count(q, d, args.r),
        })
    _emit(args, _dumps({"census": rows}))
    return EXIT_VERIFIED


# -- reproduce targets -----------------------------------------------------


def recompute_example54() -> dict:
    data = json.loads(_golden_text("example54_input.json"))
    ctx = field_from_json(data["field"])
    inp = AlgoInput.from_json(ctx, data)
    sys_ = CosetSystem(ctx, inp.d)
    cert = construction.assemble(ctx, sys_, inp)
    report = oracle.is_permutation(ctx, cert.f)
    profile = construction.monomial_profile(ctx, sys_, cert.h, cert.r)
    return {
        "matrix": [
            [ctx.format_basis(v) for v in row]
            for row in construction.h_matrix(sys_, cert.h)
        ],
        "f_is_permutation": report.is_permutation,
        "profile": [
            {
                "k": row.k, "s": row.s, "t": row.t, "tau": row.tau,
                "pi": row.pi, "lambda": ctx.format_elem(row.lam), "e": row.e,
            }
            for row in profile
        ],
    }


def recompute_class4_table() -> dict:
    out = []
    for p in (5, 11):
        ctx = build_field(p, 1)
        d = (p + 1) // 3
        sys_ = CosetSystem(ctx, d)
        for rr in range(3):
            r = next(
                x for x in range(1, 3 * p + 1)
                if x % 3 == rr and math.gcd(x, p - 1) == 1 and math.gcd(x, d) == 1
            )
            for spec in classes.class4_generate(ctx, p, r):
                verdict = classes.trinomial_classify(ctx, sys_, spec)
                f = construction.lift(ctx, r, classes.h_of_spec(ctx, sys_, spec))
                nf = classes.class4_normal_form(ctx, f)
                out.append({
                    "q": p, "r": r,
                    "spec": spec.to_json(ctx),
                    "tag": verdict.tag,
                    "is_pp": oracle.is_permutation(ctx, f).is_permutation,
                    "normal_form": None if nf is None else {
                        "u": ctx.format_elem(nf["u"]),
                        "s": nf["s"],
                        "c": ctx.format_elem(nf["c"]),
                        "s_mod_3": nf["s"] % 3,
                    },
                })
    return {"rows": out}


def recompute_section43() -> dict:
    out = {}
    ctx5 = build_field(5, 1)
    sys2 = CosetSystem(ctx5, 2)
    rows = []
    for a in range(ctx5.N):
        if ctx5.power(a, 4) != ctx5.neg_one:
            continue
        b = ctx5.neg(ctx5.sub(0, a))
        spec = SparseSpec(
            shape="trinomial", r=3, d=2, i1=0, j1=1, i2=1, j2=0, a=a, b=b
        )
        verdict = classes.classN_check(ctx5, sys2, spec, 1)
        f = construction.lift(ctx5, 3, classes.h_of_spec(ctx5, sys2, spec))
        rows.append({
            "a": ctx5.format_elem(a),
            "conditions_pass": verdict.is_pp,
            "oracle_pp": oracle.is_permutation(ctx5, f).is_permutation,
        })
    out["class1_q5"] = rows
    rows = []
    two = ctx5.from_int(2)
    for b in range(ctx5.N):
        if ctx5.power(ctx5.div(two, b), 3) != ctx5.one:
            continue
        spec = SparseSpec(
            shape="trinomial", r=3, d=2, i1=0, j1=1, i2=2, j2=0,
            a=ctx5.neg_one, b=b,
        )
        verdict = classes.classN_check(ctx5, sys2, spec, 2)
        f = construction.lift(ctx5, 3, classes.h_of_spec(ctx5, sys2, spec))
        rows.append({
            "b": ctx5.format_elem(b),
            "conditions_pass": verdict.is_pp,
            "oracle_pp": oracle.is_permutation(ctx5, f).is_permutation,
        })
    out["class2_q5"] = rows
    ctx8 = build_field(2, 3)
    sys3 = CosetSystem(ctx8, 3)
    val = ctx8.sub(0, sys3.epsilon_pow(1))
    rows = []
    for b in range(ctx8.N):
        if ctx8.power(ctx8.div(val, b), 3) != ctx8.one:
            continue
        spec = SparseSpec(
            shape="trinomial", r=3, d=3, i1=0, j1=1, i2=1, j2=0,
            a=ctx8.neg_one, b=b,
        )
        verdict = classes.classN_check(ctx8, sys3, spec, 3)
        f = construction.lift(ctx8, 3, classes.h_of_spec(ctx8, sys3, spec))
        rows.append({
            "b": ctx8.format_elem(b),
            "conditions_pass": verdict.is_pp,
            "oracle_pp": oracle.is_permutation(ctx8, f).is_permutation,
        })
    out["class3_q8"] = rows
    return out


def recompute_ll43(qs=(5, 7, 9, 11, 13)) -> dict:
    rows = []
    for q in qs:
        p, m = (3, 2) if q == 9 else (q, 1)
        ctx = build_field(p, m)
        rep = census.set_A_count(ctx)
        rows.append({
            "q": q,
            "brute": rep.brute_force,
            "closed": rep.closed_form,
            "agree": rep.agree,
        })
    return {"rows": rows}


_TARGETS = {
    "example-5.4": (recompute_example54, "golden_example54.json"),
    "table-class4": (recompute_class4_table, "golden_class4.json"),
    "section-4.3-examples": (recompute_section43, "golden_section43.json"),
    "lemma-LL4.3": (recompute_ll43, "golden_ll43.json"),
}


def cmd_reproduce(args) -> int:
    if args.target not in _TARGETS:
        raise CosetPPError(
            f"unknown target {args.target!r}; choose from {sorted(_TARGETS)}"
        )
    fn, golden_name = _TARGETS[args.target]
    if args.target == "lemma-LL4.3" and args.p is not None:
        got = fn(qs=(args.p**args.m,))
        golden = json.loads(_golden_text(golden_name))
        golden = {
            "rows": [row for row in golden["rows"] if row["q"] == args.p**args.m]
        }
    else:
        got = fn()
        golden = json.loads(_golden_text(golden_name))
    got_text = _dumps(got)
    golden_text = _dumps(golden)
    if got_text == golden_text:
        print(f"PASS {args.target}: output matches the checked-in golden")
        if args.target == "lemma-LL4.3":
            for row in got["rows"]:
                rel = "=" if row["agree"] else "!="
                print(f"  q={row['q']}: brute {row['brute']} {rel} formula {row['closed']}")
        return EXIT_VERIFIED
    print(f"FAIL {args.target}: recomputed output differs from the golden")
    for i, (a, b) in enumerate(zip(got_text.splitlines(), golden_text.splitlines())):
        if a != b:
            print(f"  first diff at line {i + 1}:")
            print(f"    recomputed: {a}")
            print(f"    golden:     {b}")
            break
    return EXIT_REFUTED


# -- entry point -----------------------------------------------------------


def _add_common(sub):
    sub.add_argument("--p", type=int, default=None)
    sub.add_argument("--m", type=int, default=1)
    sub.add_argument("--modulus", default=None, help="c0,c1 for X^2 + c1 X + c0")
    sub.add_argument("--gamma", default=None, help="a0,a1 for a0 + a1*root")
    sub.add_argument("--r", type=int, default=None)
    sub.add_argument("--d", type=int, default=None)
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--input", default=None)
    sub.add_argument("--output", default=None)
    sub.add_argument("--format", choices=["json", "text"], default="json")
    sub.add_argument("--jobs", type=int, default=1)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="cosetpp",
        description="Permutation polynomials acting as monomials on coset partitions",
    )
    subs = parser.add_subparsers(dest="command", required=True)
    for name in ("generate", "verify", "classify", "census"):
        _add_common(subs.add_parser(name))
    rep = subs.add_parser("reproduce")
    rep.add_argument("target")
    _add_common(rep)
    args = parser.parse_args(argv)
    handlers = {
        "generate": cmd_generate,
        "verify": cmd_verify,
        "classify": cmd_classify,
        "census": cmd_census,
        "reproduce": cmd_reproduce,
    }
    try:
        return handlers[args.command](args)
    except (CosetPPError, ValueError, OSError, json.JSONDecodeError) as exc:
        _sys.stderr.write(f"error: {exc}\n")
        return EXIT_UNDEFINED


if __name__ == "__main__":
    raise SystemExit(main())
