"""Command-line surface: tables, identity checks, invariant reports.

Everything prints deterministically (stable orderings, exact integers,
no floats).  Exit codes: 0 on success, 1 on a failed check, 2 on usage
errors (argparse's own convention).
"""

from __future__ import annotations

import argparse
import json
import sys
from itertools import combinations
from pathlib import Path

from . import galois as galois_mod
from . import jacobi as jacobi_mod
from .koszul import homology, table3_cell
from .lyndon import d_rank, enumerate_lyndon, lyndon_basis_through, witt_rank
from .magnus import expand
from .massey import (
    defining_system_check,
    dual_basis_matrix,
    identity_matrix_sign,
    massey_evaluate,
)
from .rings import Ring, ZZ, Zmod
from .tables import (
    cyclotomic_identity_check,
    d_rank_identity_check,
    d_table,
    h3_table,
    render_tsv,
    witt_table,
)
from .words import parse_word


def _ring_from_args(args) -> Ring:
    if getattr(args, "ell", None):
        return Zmod(args.ell, args.M or 1)
    return ZZ


def _emit(args, payload, text: str | None = None):
    if args.format == "json" or text is None:
        out = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    else:
        out = text
    if args.out:
        Path(args.out).write_text(out)
    else:
        sys.stdout.write(out)


def largest_block_columns(n: int, k: int, m_max: int = 4) -> int:
    """Column count of the widest weight block, for the budget guard."""
    weights = [lw.weight for lw in lyndon_basis_through(n, k - 1)]
    best = 0
    counts: dict = {}
    for m in range(1, m_max + 1):
        counts.clear()
        for combo in combinations(range(len(weights)), m):
            w = sum(weights[p] for p in combo)
            counts[w] = counts.get(w, 0) + 1
        if counts:
            best = max(best, max(counts.values()))
    return best


def cmd_witt(args) -> int:
    value = witt_rank(args.n, args.k)
    _emit(args, {"n": args.n, "k": args.k, "witt_rank": value}, f"{value}\n")
    return 0


def cmd_lyndon(args) -> int:
    words = [str(w) for w in enumerate_lyndon(args.n, args.k)]
    _emit(args, {"n": args.n, "k": args.k, "count": len(words), "words": words},
          "\n".join(words) + "\n")
    return 0


def cmd_magnus(args) -> int:
    ring = _ring_from_args(args)
    w = parse_word(args.word, args.n)
    if args.magnus_op == "expand":
        series = expand(w, args.K, ring)
        _emit(args, series.to_json())
        return 0
    index = tuple(int(c) for c in args.index)
    value = expand(w, max(len(index), 1), ring).coefficient(index)
    _emit(args, {"word": args.word, "index": args.index, "coefficient": str(value)},
          f"{value}\n")
    return 0


def cmd_homology(args) -> int:
    cols = largest_block_columns(args.n, args.k, m_max=args.i + 1)
    if cols > args.budget:
        _emit(args, {"error": "budget exceeded",
                     "largest_block_columns": cols, "budget": args.budget})
        return 2
    result = homology(args.n, args.k, args.i)
    lines = [f"weight\trank\tdivisors"]
    for w, (r, div) in sorted(result.blocks.items()):
        lines.append(f"{w}\t{r}\t{','.join(map(str, div)) or '-'}")
    _emit(args, result.to_json(), "\n".join(lines) + "\n")
    return 0


def cmd_tables(args) -> int:
    ns = list(range(2, args.n_max + 1))
    ks = list(range(2, args.k_max + 1))
    t1 = render_tsv(witt_table(ns, ks), ns, ks)
    t2 = render_tsv(d_table(ns, ks), ns, ks)
    ks3 = [k for k in ks if k <= 5]
    t3 = render_tsv(h3_table(ns, ks3), ns, ks3)
    payload = {"table1": t1, "table2": t2, "table3": t3}
    if args.verify_koszul:
        verified = {}
        for (n, k) in [(2, 2), (2, 3), (3, 3)]:
            if n > args.n_max or k > args.k_max:
                continue
            h3 = homology(n, k, 3)
            verified[f"({n},{k})"] = {
                "direct": "⊕".join(
                    str(h3.rank_at(w)) for w in range(k + 1, 2 * k)) or "0",
                "formula": table3_cell(n, k),
            }
        payload["koszul_verification"] = verified
    if args.out:
        outdir = Path(args.out)
        outdir.mkdir(parents=True, exist_ok=True)
        (outdir / "table1.tsv").write_text(t1)
        (outdir / "table2.tsv").write_text(t2)
        (outdir / "table3.tsv").write_text(t3)
        if args.verify_koszul:
            (outdir / "koszul_verification.json").write_text(
                json.dumps(payload["koszul_verification"], indent=2, sort_keys=True))
        sys.stdout.write(f"wrote tables to {outdir}\n")
    elif args.format == "json":
        sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write(t1 + "\n" + t2 + "\n" + t3)
        if args.verify_koszul:
            sys.stdout.write(json.dumps(payload["koszul_verification"],
                                        indent=2, sort_keys=True) + "\n")
    return 0


def cmd_check(args) -> int:
    name = args.identity
    if name == "cyclotomic":
        report = cyclotomic_identity_check(args.n, args.degree)
    elif name == "dk-genfun":
        report = d_rank_identity_check(args.n, args.degree)
    elif name == "massey-dual":
        M = dual_basis_matrix(args.n, args.k)
        sign = (-1) ** (args.k + 1)
        ok = identity_matrix_sign(M, sign)
        report = {"n": args.n, "k": args.k, "expected_sign": sign,
                  "matrix": [[str(x) for x in row] for row in M], "passed": ok}
    elif name == "jacobi-dim":
        space = jacobi_mod.ct_dimension(args.n, args.k)
        expected = d_rank(args.n, args.k)
        report = {"n": args.n, "k": args.k, "dimension": space.dimension,
                  "expected": expected, "passed": space.dimension == expected}
    elif name == "koszul-h3":
        h3 = homology(args.n, args.k, 3)
        direct = "⊕".join(str(h3.rank_at(w))
                               for w in range(args.k + 1, 2 * args.k)) or "0"
        formula = table3_cell(args.n, args.k)
        report = {"n": args.n, "k": args.k, "direct": direct,
                  "formula": formula, "torsion_free": h3.torsion_free,
                  "passed": direct == formula and h3.torsion_free}
    else:
        sys.stderr.write(f"unknown identity {name!r}\n")
        return 2
    _emit(args, report)
    return 0 if report["passed"] else 1


def cmd_massey(args) -> int:
    if args.massey_op == "dual":
        M = dual_basis_matrix(args.n, args.k)
        words = [str(w) for w in enumerate_lyndon(args.n, args.k)]
        check = defining_system_check(
            tuple(enumerate_lyndon(args.n, args.k)[0].index), max(args.k, 2),
            samples=args.samples, n=args.n)
        _emit(args, {
            "n": args.n, "k": args.k, "rows": words,
            "matrix": [[str(x) for x in row] for row in M],
            "defining_system_check": check.to_json(),
        })
        return 0
    index = tuple(int(c) for c in args.index)
    w = parse_word(args.word, args.n)
    value = massey_evaluate(index, w, _ring_from_args(args))
    _emit(args, {"index": args.index, "word": args.word, "value": str(value)},
          f"{value}\n")
    return 0


def cmd_galois(args) -> int:
    config = json.loads(Path(args.config).read_text())
    sigma, extra = galois_mod.from_config(config)
    report: dict = {"config": sigma.to_config(bool(config.get("strict_x0")))}
    report.update(extra)
    kind = args.report
    if kind == "depth":
        depth = galois_mod.johnson_depth(sigma)
        report["depth"] = depth if depth <= sigma.K else f">= {sigma.K + 1}"
    elif kind == "milnor":
        report["invariants"] = {
            key: str(v) for key, v in
            galois_mod.milnor_table(sigma, args.max_length or sigma.K + 1).items()
        }
    elif kind == "tau":
        report["tau"] = galois_mod.tau_vanishes(sigma, args.k).to_json()
    elif kind == "tower":
        m = args.m or args.k
        l = args.l or m
        report["tower"] = galois_mod.obstruction_tower(sigma, m, l).to_json()
    elif kind == "n2":
        report["n2"] = galois_mod.n2_report(sigma, args.k)
        report["n2"]["invariants"] = dict(sorted(report["n2"]["invariants"].items()))
    _emit(args, report)
    return 0


def _parse_diagram(text: str, n: int) -> jacobi_mod.JacobiDiagram:
    """Text format: `v:1 | [[1,2],2]`."""
    head, _, body = text.partition("|")
    root = int(head.strip().removeprefix("v:"))
    body = body.strip()

    def parse(s: str, pos: int):
        if s[pos] == "[":
            left, pos = parse(s, pos + 1)
            assert s[pos] == ","
            right, pos = parse(s, pos + 1)
            assert s[pos] == "]"
            return (left, right), pos + 1
        end = pos
        while end < len(s) and s[end].isdigit():
            end += 1
        return int(s[pos:end]), end

    code, last = parse(body, 0)
    if last != len(body):
        raise ValueError(f"trailing characters in diagram code: {body[last:]!r}")
    return jacobi_mod.JacobiDiagram(n, root, code)


def cmd_jacobi(args) -> int:
    if args.jacobi_op == "dim":
        space = jacobi_mod.ct_dimension(args.n, args.k)
        _emit(args, {
            "n": args.n, "k": args.k, "dimension": space.dimension,
            "expected": d_rank(args.n, args.k),
            "basis": [str(D) for D in space.basis],
        })
        return 0
    D = _parse_diagram(args.diagram, args.n)
    image = jacobi_mod.phi_map(D)
    _emit(args, {
        "diagram": str(D),
        "degree": D.degree,
        "image": {str(i): elt.to_json() for i, elt in sorted(image.items())},
    })
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="freenil",
        description="Exact computations in free nilpotent groups: Magnus "
                    "expansions, Lyndon bases, graded homology, Massey "
                    "products, Milnor invariants, tree diagrams.")
    parser.add_argument("--format", choices=["json", "tsv", "text"],
                        default="text")
    parser.add_argument("--out", help="write output to this path")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("witt", help="Witt rank N_k(n)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_witt)

    p = sub.add_parser("lyndon", help="Lyndon words of length k")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_lyndon)

    p = sub.add_parser("magnus", help="Magnus expansion and coefficients")
    msub = p.add_subparsers(dest="magnus_op", required=True)
    for op in ("expand", "coeff"):
        mp = msub.add_parser(op)
        mp.add_argument("--word", required=True)
        mp.add_argument("--n", type=int, required=True)
        mp.add_argument("--K", type=int, default=4)
        mp.add_argument("--ell", type=int)
        mp.add_argument("--M", type=int)
        if op == "coeff":
            mp.add_argument("--index", required=True)
        mp.set_defaults(func=cmd_magnus)

    p = sub.add_parser("homology", help="weight-graded homology ranks")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--i", type=int, default=3)
    p.add_argument("--budget", type=int, default=20000,
                   help="refuse weight blocks wider than this")
    p.set_defaults(func=cmd_homology)

    p = sub.add_parser("tables", help="rank tables")
    p.add_argument("--n-max", type=int, default=9)
    p.add_argument("--k-max", type=int, default=9)
    p.add_argument("--verify-koszul", action="store_true")
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("check", help="named identity verification")
    p.add_argument("identity", choices=[
        "cyclotomic", "dk-genfun", "massey-dual", "jacobi-dim", "koszul-h3"])
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--degree", type=int, default=12)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("massey", help="Massey products")
    msub = p.add_subparsers(dest="massey_op", required=True)
    mp = msub.add_parser("dual")
    mp.add_argument("--n", type=int, required=True)
    mp.add_argument("--k", type=int, required=True)
    mp.add_argument("--samples", type=int, default=25)
    mp.set_defaults(func=cmd_massey)
    mp = msub.add_parser("eval")
    mp.add_argument("--index", required=True)
    mp.add_argument("--word", required=True)
    mp.add_argument("--n", type=int, required=True)
    mp.add_argument("--ell", type=int)
    mp.add_argument("--M", type=int)
    mp.set_defaults(func=cmd_massey)

    p = sub.add_parser("galois", help="automorphism invariant reports")
    p.add_argument("report", choices=["depth", "milnor", "tau", "tower", "n2"])
    p.add_argument("--config", required=True)
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--m", type=int)
    p.add_argument("--l", type=int)
    p.add_argument("--max-length", type=int)
    p.set_defaults(func=cmd_galois)

    p = sub.add_parser("jacobi", help="tree diagram computations")
    jsub = p.add_subparsers(dest="jacobi_op", required=True)
    jp = jsub.add_parser("dim")
    jp.add_argument("--n", type=int, required=True)
    jp.add_argument("--k", type=int, required=True)
    jp.set_defaults(func=cmd_jacobi)
    jp = jsub.add_parser("phi")
    jp.add_argument("--diagram", required=True)
    jp.add_argument("--n", type=int, required=True)
    jp.set_defaults(func=cmd_jacobi)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, FileNotFoundError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
