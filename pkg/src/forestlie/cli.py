"""Command-line front end: enumeration, coefficient lookup, verification
suites, and table emission.

Exit codes: 0 on success, 1 when a verification fails (the first witness is
reported), 2 on usage errors.  Data output is deterministic for fixed flags;
the ``--format`` switch changes serialization only, never values.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import compositions, dyck, forests, operators, partitions, polynomial
from .errors import SelfCheckError

FOREST_ENUM_LIMIT = 9  # full forest enumeration beyond this needs --force


def vec_text(p) -> str:
    if len(p) <= 9 and all(e <= 9 for e in p):
        return "(" + "".join(str(e) for e in p) + ")"
    return "(" + ",".join(str(e) for e in p) + ")"


def vec_csv(p) -> str:
    return " ".join(str(e) for e in p)


def parse_int_vector(s: str) -> tuple[int, ...]:
    s = s.strip()
    if s in ("", "()"):
        return ()
    return tuple(int(x) for x in s.split(","))


@dataclass
class Report:
    command: str
    checks: list[dict] = field(default_factory=list)
    elapsed_ms: int = 0

    @property
    def status(self) -> str:
        return "pass" if all(c["ok"] for c in self.checks) else "fail"

    def first_failure(self) -> dict | None:
        for c in self.checks:
            if not c["ok"]:
                return c
        return None

    def to_json(self) -> dict:
        return {"command": self.command, "status": self.status, "checks": self.checks,
                "elapsed_ms": self.elapsed_ms}


def emit_csv(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def out(args, text: str) -> None:
    s = text.replace("∘", "o") if args.ascii else text
    print(s)


# ---------------------------------------------------------------------------
# verification checks (module-level so --jobs can run them in worker processes)

DYCK_TABLE_1 = {(0,): 1, (1,): 2}
DYCK_TABLE_2 = {(0, 0): 1, (0, 1): 3, (0, 2): 2, (1, 0): 2, (1, 1): 4}
DYCK_TABLE_3 = {
    (0, 0, 0): 1, (0, 0, 1): 4, (0, 0, 2): 5, (0, 0, 3): 2, (0, 1, 0): 3,
    (0, 1, 1): 9, (0, 1, 2): 6, (0, 2, 0): 2, (0, 2, 1): 4, (1, 0, 0): 2,
    (1, 0, 1): 6, (1, 0, 2): 4, (1, 1, 0): 4, (1, 1, 1): 8,
}
BELL = [1, 1, 2, 5, 15, 52, 203, 877, 4140, 21147]


def _rows(name_fmt, pairs):
    return [{"name": name_fmt.format(*key), "expected": str(exp), "actual": str(act), "ok": exp == act}
            for key, exp, act in pairs]


def check_coeff_worked_example(max_k: int) -> list[dict]:
    p = (0, 1, 0, 1, 3, 0, 1)
    pairs = [
        (("deficits",), (0, 1, 1, 2, 2, 0, 1, 1), dyck.deficit_profile(p)),
        (("value",), 72, dyck.coeff_cp(p)),
    ]
    return _rows("coeff_worked_example[{}]", pairs)


def check_dyck_tables(max_k: int) -> list[dict]:
    tables = {1: DYCK_TABLE_1, 2: DYCK_TABLE_2, 3: DYCK_TABLE_3}
    pairs = [((k,), tables[k], dyck.coefficient_table(k)) for k in range(1, min(max_k, 3) + 1)]
    return _rows("dyck_table[k={}]", pairs)


def check_dyck_counts(max_k: int) -> list[dict]:
    pairs = []
    for k in range(min(max_k, 12) + 1):
        cat = dyck.catalan(k + 1)
        pairs.append(((k, "enumerated"), cat, sum(1 for _ in dyck.enumerate_dyck(k))))
        pairs.append(((k, "counted"), cat, dyck.count_dyck(k)))
    return _rows("dyck_count[k={},{}]", pairs)


def check_dyck_two_formulas(max_k: int) -> list[dict]:
    # coeff_cp raises if the two product forms ever disagree
    pairs = []
    for k in range(min(max_k, 10) + 1):
        evaluated = sum(1 for p in dyck.enumerate_dyck(k) if dyck.coeff_cp(p) >= 1)
        pairs.append(((k,), dyck.catalan(k + 1), evaluated))
    return _rows("dyck_two_formulas[k={}]", pairs)


def check_path_roundtrip(max_k: int) -> list[dict]:
    pairs = []
    for k in range(min(max_k, 8) + 1):
        good = sum(1 for p in dyck.enumerate_dyck(k)
                   if dyck.path_to_vector(dyck.vector_to_path(p)) == p)
        pairs.append(((k,), dyck.catalan(k + 1), good))
    return _rows("path_roundtrip[k={}]", pairs)


def check_pullback_threeway(max_k: int) -> list[dict]:
    pairs = []
    for k in range(min(max_k, 9) + 1):
        coeffs = compositions.pullback_coefficients(k, check=False)
        census = partitions.shape_census(k)
        agree = all(
            coeffs.get(lam, 0) == compositions.coeff_clambda(lam) == census.get(lam, 0)
            for lam in compositions.enumerate_compositions(k)
        )
        pairs.append(((k, "threeway"), True, agree))
        pairs.append(((k, "bell_total"), partitions.bell(k), sum(coeffs.values())))
        if k < len(BELL):
            pairs.append(((k, "bell_table"), BELL[k], partitions.bell(k)))
    return _rows("pullback[k={},{}]", pairs)


def check_key_identity(max_k: int) -> list[dict]:
    pairs = []
    for k in range(min(max_k, 10) + 1):
        bad = [lam for lam in compositions.enumerate_compositions(k)
               if not compositions.verify_key_identity(lam)[0]]
        pairs.append(((k,), [], bad))
    return _rows("key_identity[k={}]", pairs)


def check_partition_bijection(max_k: int) -> list[dict]:
    worked = partitions.SetPartition.parse("1|35|6|247")
    expected_chain = [(), (1,), (1, 1), (1, 1, 1), (1, 1, 2), (2, 1, 2), (2, 1, 3), (1, 2, 1, 3)]
    pairs = [(("worked", "chain"), expected_chain, partitions.partition_to_path(worked))]
    for k in range(min(max_k, 8) + 1):
        good = sum(1 for part in partitions.enumerate_partitions(k)
                   if partitions.path_to_partition(partitions.partition_to_path(part)) == part)
        pairs.append(((k, "forward"), partitions.bell(k), good))
    for k in range(min(max_k, 7) + 1):
        good = sum(1 for path in compositions.enumerate_paths(k)
                   if partitions.partition_to_path(partitions.path_to_partition(path)) == path)
        pairs.append(((k, "reverse"), partitions.bell(k), good))
    return _rows("partition_bijection[{},{}]", pairs)


def check_forest_counts(max_k: int) -> list[dict]:
    pairs = []
    for k in range(min(max_k, 7) + 1):
        n = sum(1 for _ in forests.enumerate_forests(forests.standard_labels(k)))
        pairs.append(((k,), math.factorial(k + 1), n))
    return _rows("forest_count[k={}]", pairs)


def check_forest_identities(max_k: int) -> list[dict]:
    pairs = []
    for k in range(1, min(max_k, 6) + 1):
        prune_ok = deg_ok = True
        dyck_ok = True
        for f in forests.enumerate_forests(forests.standard_labels(k)):
            expo, _, root_children = forests.monomial(f)
            dyck_ok = dyck_ok and dyck.is_dyck(expo)
            deg_ok = deg_ok and root_children == k - sum(expo)
            prune_ok = prune_ok and forests.monomial(forests.prune(f))[0] == expo[:-1]
        pairs.append(((k, "prune_monomial"), True, prune_ok))
        pairs.append(((k, "root_degree"), True, deg_ok))
        pairs.append(((k, "dyck_exponents"), True, dyck_ok))
    return _rows("forest_identity[k={},{}]", pairs)


def check_fiber_example(max_k: int) -> list[dict]:
    if max_k < 5:
        return []
    fib = forests.fiber((0, 0, 2, 1, 1))
    hist: dict[int, int] = {}
    for f in fib:
        hist[f.tree_count] = hist.get(f.tree_count, 0) + 1
    pairs = [
        (("histogram",), {1: 1, 2: 4, 3: 5, 4: 2}, hist),
        (("cprime",), 45, forests.cprime((0, 0, 2, 1, 1))),
        (("coeff",), dyck.coeff_cp((0, 0, 2, 1, 1)), forests.cprime((0, 0, 2, 1, 1))),
    ]
    return _rows("fiber_example[{}]", pairs)


def check_sigma_equality(max_k: int) -> list[dict]:
    pairs = []
    for k in range(min(max_k, 7) + 1):
        eq, witness = polynomial.poly_equal(polynomial.sigma_formula(k), polynomial.sigma_bruteforce(k))
        pairs.append(((k,), (True, None), (eq, witness)))
    return _rows("sigma_equal[k={}]", pairs)


def check_covariant_chain(max_k: int) -> list[dict]:
    pairs = []
    for n in range(min(max_k, 6) + 1):
        trees = forests.expand_covariant(range(1, n + 1))  # raises on any mismatch
        pairs.append(((n,), math.factorial(n), len(trees)))
    return _rows("covariant_chain[n={}]", pairs)


def check_lie_partitions(max_k: int) -> list[dict]:
    pairs = []
    for k in range(1, min(max_k, 6) + 1):
        expansion = operators.expand_lie_partitions(k)  # closed form vs recurrence inside
        pairs.append(((k,), partitions.bell(k + 1), len(expansion)))
    return _rows("lie_partitions[k={}]", pairs)


def check_lie_oracle(max_k: int) -> list[dict]:
    pairs = []
    for k in range(1, min(max_k, 5) + 1):
        expansion = operators.lie_chain_oracle(k)  # compared with the forest form inside
        pairs.append(((k,), math.factorial(k + 1), len(expansion)))
    return _rows("lie_oracle[k={}]", pairs)


def check_estimate_counts(max_k: int) -> list[dict]:
    pairs = []
    for k in range(1, min(max_k, 6) + 1):
        rows = operators.estimate_certificate(k, 0)
        table = {(r.p, r.coeff, r.a_order) for r in rows}
        expected = {(p, dyck.coeff_cp(p), dyck.deficit_profile(p)[k]) for p in dyck.enumerate_dyck(k)}
        pairs.append(((k, "h0_table"), expected, table))
    for k in range(1, min(max_k, 4) + 1):
        for h in range(4):
            n = len(operators.estimate_certificate(k, h))
            pairs.append(((k, f"rows_h{h}"), dyck.catalan(k + 1) * math.comb(h + k, k), n))
    return _rows("estimate[k={},{}]", pairs)


def check_leibniz_grouping(max_k: int) -> list[dict]:
    pairs = []
    for h in range(4):
        for l in range(1, 4):
            counts = operators.leibniz_fiber_counts(h, l)  # multinomials verified inside
            pairs.append(((h, l), l ** h, sum(counts.values())))
    return _rows("leibniz[h={},l={}]", pairs)


CHECKS = [
    ("coeff_worked_example", check_coeff_worked_example),
    ("dyck_tables", check_dyck_tables),
    ("dyck_counts", check_dyck_counts),
    ("dyck_two_formulas", check_dyck_two_formulas),
    ("path_roundtrip", check_path_roundtrip),
    ("pullback_threeway", check_pullback_threeway),
    ("key_identity", check_key_identity),
    ("partition_bijection", check_partition_bijection),
    ("forest_counts", check_forest_counts),
    ("forest_identities", check_forest_identities),
    ("fiber_example", check_fiber_example),
    ("sigma_equality", check_sigma_equality),
    ("covariant_chain", check_covariant_chain),
    ("lie_partitions", check_lie_partitions),
    ("lie_oracle", check_lie_oracle),
    ("estimate_counts", check_estimate_counts),
    ("leibniz_grouping", check_leibniz_grouping),
]

_CHECKS_BY_NAME = dict(CHECKS)


def _run_check(name: str, max_k: int) -> list[dict]:
    try:
        return _CHECKS_BY_NAME[name](max_k)
    except SelfCheckError as exc:
        return [{"name": name, "expected": "consistency", "actual": str(exc), "ok": False}]


# ---------------------------------------------------------------------------
# subcommands


def cmd_dyck(args) -> int:
    rows = []
    for p in dyck.enumerate_dyck(args.k):
        rows.append({"p": list(p), "c": dyck.coeff_cp(p)} if args.coeffs else {"p": list(p)})
    if args.format == "json":
        out(args, json.dumps(rows, indent=2))
    elif args.format == "csv":
        header = ["p", "c"] if args.coeffs else ["p"]
        out(args, emit_csv(header, [[vec_csv(r["p"])] + ([r["c"]] if args.coeffs else []) for r in rows]).rstrip("\n"))
    else:
        for r in rows:
            line = vec_text(r["p"])
            if args.coeffs:
                line += f" {r['c']}"
            out(args, line)
    return 0


def cmd_coeff(args) -> int:
    p = parse_int_vector(args.p)
    deficits = dyck.deficit_profile(p)
    value = dyck.coeff_cp(p)
    if args.format == "json":
        out(args, json.dumps({"p": list(p), "deficits": list(deficits), "c": value}, indent=2))
    elif args.format == "csv":
        out(args, emit_csv(["p", "deficits", "c"], [[vec_csv(p), vec_csv(deficits), value]]).rstrip("\n"))
    else:
        width = max(len(str(e)) for e in deficits + p) if p else 1
        js = " ".join(f"{j:>{width}}" for j in range(len(p) + 1))
        ps = " " * (width + 1) + " ".join(f"{e:>{width}}" for e in p)
        ds = " ".join(f"{e:>{width}}" for e in deficits)
        out(args, f"j     | {js}")
        out(args, f"p_j   |{ps if p else ''}")
        out(args, f"D_P,j | {ds}")
        out(args, f"C_P = {value}")
    return 0


def cmd_clambda(args) -> int:
    lam = parse_int_vector(args.parts)
    value = compositions.coeff_clambda(lam)
    if args.format == "json":
        out(args, json.dumps({"lambda": list(lam), "c": value}, indent=2))
    elif args.format == "csv":
        out(args, emit_csv(["lambda", "c"], [[vec_csv(lam), value]]).rstrip("\n"))
    else:
        out(args, str(value))
    return 0


def cmd_pullback(args) -> int:
    k = args.k
    coeffs = compositions.pullback_coefficients(k, check=False)
    census = partitions.shape_census(k)
    rows = []
    all_ok = True
    for lam in compositions.enumerate_compositions(k):
        iterated = coeffs.get(lam, 0)
        closed = compositions.coeff_clambda(lam)
        counted = census.get(lam, 0)
        ok = iterated == closed == counted
        all_ok = all_ok and ok
        rows.append({"lambda": list(lam), "iterated": iterated, "formula": closed,
                     "partitions": counted, "ok": ok})
    total = sum(coeffs.values())
    bell = partitions.bell(k)
    total_ok = total == bell
    if args.format == "json":
        out(args, json.dumps({"k": k, "rows": rows, "total": total, "bell": bell,
                              "ok": all_ok and total_ok}, indent=2))
    elif args.format == "csv":
        out(args, emit_csv(["lambda", "iterated", "formula", "partitions", "ok"],
                           [[vec_csv(r["lambda"]), r["iterated"], r["formula"], r["partitions"], r["ok"]]
                            for r in rows]).rstrip("\n"))
    else:
        for r in rows:
            out(args, f"{vec_text(r['lambda']):<16} iterated={r['iterated']:<8} formula={r['formula']:<8} "
                      f"partitions={r['partitions']:<8} {'ok' if r['ok'] else 'MISMATCH'}")
        out(args, f"total = {total}, bell({k}) = {bell}, {'ok' if total_ok else 'MISMATCH'}")
    if not (all_ok and total_ok):
        first = next((r for r in rows if not r["ok"]), {"lambda": "total"})
        print(f"verification failed, first witness: {first}", file=sys.stderr)
        return 1
    return 0


def cmd_sigma(args) -> int:
    k = args.k
    if args.check and k > FOREST_ENUM_LIMIT and not args.force:
        print(f"sigma --check enumerates (k+1)! forests; refusing k={k} > {FOREST_ENUM_LIMIT} "
              "without --force", file=sys.stderr)
        return 2
    poly = polynomial.sigma_formula(k)
    payload = {"k": k, "terms": poly.to_json_terms()}
    equal = witness = None
    if args.check:
        equal, witness = polynomial.poly_equal(poly, polynomial.sigma_bruteforce(k))
        payload["check"] = {"equal": equal,
                            "witness": None if witness is None else
                            {"b": witness[0][0], "p": list(witness[0][1]),
                             "formula": witness[1], "bruteforce": witness[2]}}
    if args.format == "json":
        out(args, json.dumps(payload, indent=2))
    elif args.format == "csv":
        out(args, emit_csv(["b", "p", "c"], [[t["b"], vec_csv(t["p"]), t["c"]] for t in poly.to_json_terms()]).rstrip("\n"))
    else:
        out(args, str(poly))
        if args.check:
            out(args, f"check vs forest sum over {math.factorial(k + 1)} forests: "
                      f"{'equal' if equal else 'MISMATCH'}")
    if args.check and not equal:
        print(f"verification failed, first differing term: {witness}", file=sys.stderr)
        return 1
    return 0


def cmd_lie(args) -> int:
    k = args.k
    if k > FOREST_ENUM_LIMIT and not args.force:
        print(f"lie enumerates (k+1)! forest terms; refusing k={k} > {FOREST_ENUM_LIMIT} "
              "without --force", file=sys.stderr)
        return 2
    try:
        expansion = operators.lie_chain_oracle(k) if args.check else operators.expand_lie_forests(k)
    except SelfCheckError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return 1
    if args.format == "json":
        out(args, json.dumps({"k": k, "terms": expansion.to_json()}, indent=2))
    elif args.format == "csv":
        out(args, emit_csv(["key", "sign"], [[key, sign] for key, sign in expansion.items()]).rstrip("\n"))
    else:
        for key, sign in expansion.items():
            out(args, f"{'+' if sign > 0 else '-'} {key}")
        out(args, f"{len(expansion)} terms" + (", oracle agrees with the closed form" if args.check else ""))
    return 0


def cmd_estimate(args) -> int:
    rows = operators.estimate_certificate(args.k, args.h)
    if args.format == "json":
        out(args, json.dumps([r.to_json() for r in rows], indent=2))
    elif args.format == "csv":
        out(args, emit_csv(["p", "h", "coeff", "a_order", "xi_orders"],
                           [[vec_csv(r.p), vec_csv(r.h), r.coeff, r.a_order, vec_csv(r.xi_orders)]
                            for r in rows]).rstrip("\n"))
    else:
        out(args, f"{'P':<14} {'H':<14} {'coeff':<8} {'a_order':<8} xi_orders")
        for r in rows:
            out(args, f"{vec_text(r.p):<14} {vec_text(r.h):<14} {r.coeff:<8} {r.a_order:<8} {vec_text(r.xi_orders)}")
    return 0


def cmd_verify(args) -> int:
    start = time.monotonic()
    report = Report(command="verify")
    names = [name for name, _ in CHECKS]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_run_check, names, [args.max_k] * len(names)))
    else:
        results = [_run_check(name, args.max_k) for name in names]
    for rows in results:
        report.checks.extend(rows)
    report.elapsed_ms = int((time.monotonic() - start) * 1000)
    if args.format == "json":
        out(args, json.dumps(report.to_json(), indent=2))
    elif args.format == "csv":
        out(args, emit_csv(["name", "expected", "actual", "ok"],
                           [[c["name"], c["expected"], c["actual"], c["ok"]] for c in report.checks]).rstrip("\n"))
    else:
        for c in report.checks:
            mark = "ok  " if c["ok"] else "FAIL"
            line = f"[{mark}] {c['name']}"
            if not c["ok"]:
                line += f": expected {c['expected']}, got {c['actual']}"
            out(args, line)
        out(args, f"{report.status}: {len(report.checks)} checks in {report.elapsed_ms} ms")
    if report.status != "pass":
        first = report.first_failure()
        print(f"verification failed, first witness: {first['name']} "
              f"(expected {first['expected']}, got {first['actual']})", file=sys.stderr)
        return 1
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json", "csv"], default="text",
                        help="output serialization (values are format-independent)")
    common.add_argument("--ascii", action="store_true", help="render the empty root as 'o'")
    common.add_argument("--jobs", type=int, default=int(os.environ.get("FORESTLIE_JOBS", "1")),
                        help="parallel workers for verify (default from FORESTLIE_JOBS)")

    parser = argparse.ArgumentParser(prog="forestlie",
                                     description="Exact combinatorics of Dyck vectors, decreasing "
                                                 "forests, and operator expansions, with built-in "
                                                 "brute-force cross-verification.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dyck", parents=[common], help="list Dyck vectors of length k")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--coeffs", action="store_true", help="include the coefficient of each vector")
    p.set_defaults(fn=cmd_dyck)

    p = sub.add_parser("coeff", parents=[common], help="coefficient and deficit table of one vector")
    p.add_argument("--p", required=True, help="comma-separated entries, e.g. 0,1,0,1,3,0,1")
    p.set_defaults(fn=cmd_coeff)

    p = sub.add_parser("clambda", parents=[common], help="pull-back coefficient of one composition")
    p.add_argument("--lambda", dest="parts", required=True, help="comma-separated parts, e.g. 1,2")
    p.set_defaults(fn=cmd_clambda)

    p = sub.add_parser("pullback", parents=[common],
                       help="coefficient table of sum k, three independent ways")
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(fn=cmd_pullback)

    p = sub.add_parser("sigma", parents=[common], help="the Dyck polynomial of the forest sum")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--check", action="store_true", help="verify against the full forest enumeration")
    p.add_argument("--force", action="store_true", help="allow large k despite factorial cost")
    p.set_defaults(fn=cmd_sigma)

    p = sub.add_parser("lie", parents=[common], help="forest expansion of the Lie-derivative product")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--check", action="store_true",
                   help="rebuild by iterated left multiplication and compare")
    p.add_argument("--force", action="store_true", help="allow large k despite factorial cost")
    p.set_defaults(fn=cmd_lie)

    p = sub.add_parser("estimate", parents=[common], help="derivative-order certificate table")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--h", type=int, required=True)
    p.set_defaults(fn=cmd_estimate)

    p = sub.add_parser("verify", parents=[common], help="run the full cross-verification suite")
    p.add_argument("--all", action="store_true", help="run every suite (the default)")
    p.add_argument("--max-k", type=int, default=99,
                   help="global size ceiling; each suite also has its own cap")
    p.set_defaults(fn=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "jobs", 1) < 1:
        parser.error("--jobs must be >= 1")
    try:
        return args.fn(args)
    except SelfCheckError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
