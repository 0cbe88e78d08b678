"""Command line front end.

Lattices are read from JSON: either a bare Gram matrix (array of arrays)
or an object {"gram": [...]}.  Sublattice inputs add "vectors", a list of
generating vectors in ambient coordinates.  Marking inputs are
{"j": 23, "orbits": [[1, 2], ...], "alpha": 5} with 1-based root indices.
Exit codes: 0 success, 1 verification mismatch, 2 usage error.
"""

import argparse
import json
import sys

from .exact_linalg import IntMatrix
from .lattice import (Lattice, Sublattice, discriminant_form, saturate,
                      orthogonal_complement)
from .fqf_genus import (genus_symbol, render_genus, render_symbol,
                        normalize_symbol)
from .rootsys import root_system, vectors_of_norm
from .niemeier import build_niemeier, verify_niemeier, marking_pipeline
from .moduli import (isometry_group, oq_group, oq_images,
                     strong_component_count, double_coset_count,
                     subgroup_closure)
from .verify import SUITES, run_suite


class UsageError(Exception):
    pass


def _load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError("cannot read %s: %s" % (path, exc))
    except json.JSONDecodeError as exc:
        raise UsageError("malformed JSON in %s at line %d column %d: %s"
                         % (path, exc.lineno, exc.colno, exc.msg))


def _gram_of(obj, path):
    if isinstance(obj, list):
        gram = obj
    elif isinstance(obj, dict) and "gram" in obj:
        gram = obj["gram"]
    else:
        raise UsageError("%s: expected a Gram matrix or an object with "
                         "a \"gram\" field" % path)
    try:
        return Lattice(gram)
    except (ValueError, TypeError) as exc:
        raise UsageError("%s: %s" % (path, exc))


def _sublattice_of(obj, path):
    if not isinstance(obj, dict) or "vectors" not in obj:
        raise UsageError("%s: expected an object with \"gram\" and "
                         "\"vectors\" fields" % path)
    ambient = _gram_of(obj, path)
    vectors = obj["vectors"]
    try:
        basis = IntMatrix(list(zip(*vectors)))
        return Sublattice(ambient, basis)
    except (ValueError, TypeError) as exc:
        raise UsageError("%s: %s" % (path, exc))


def _emit(out, as_json):
    if as_json:
        print(json.dumps(out, sort_keys=True))
        return
    for key in sorted(out):
        print("%s: %s" % (key, _plain(out[key])))


def _plain(value):
    if isinstance(value, (list, tuple)):
        return " ".join(str(_plain(v)) for v in value)
    return value


def _frac(x):
    return str(x)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_genus(args):
    L = _gram_of(_load_json(args.file), args.file)
    gs = genus_symbol(L)
    sym = gs.qsymbol()
    _emit({
        "signature": list(L.signature()),
        "det": L.det(),
        "genus": render_genus(gs),
        "q": render_symbol(normalize_symbol(sym)),
    }, args.json)
    return 0


def cmd_discform(args):
    L = _gram_of(_load_json(args.file), args.file)
    F = discriminant_form(L)
    _emit({
        "orders": list(F.orders),
        "q": [_frac(q) for q in F.q_diag],
        "b": [[_frac(v) for v in row] for row in F.b_mat],
    }, args.json)
    return 0


def cmd_roots(args):
    L = _gram_of(_load_json(args.file), args.file)
    t, simple = root_system(L)
    _emit({
        "type": str(t),
        "root_count": t.root_count(),
        "simple_roots": [list(r) for r in simple],
    }, args.json)
    return 0


def cmd_count(args):
    L = _gram_of(_load_json(args.file), args.file)
    vecs = vectors_of_norm(L, args.norm)
    _emit({"norm": args.norm, "count": len(vecs)}, args.json)
    return 0


def cmd_complement(args):
    sub = _sublattice_of(_load_json(args.file), args.file)
    K = orthogonal_complement(sub)
    _emit({
        "rank": K.rank,
        "vectors": [[K.basis[i, j] for i in range(K.basis.rows)]
                    for j in range(K.rank)],
        "gram": [list(row) for row in K.gram().data],
    }, args.json)
    return 0


def cmd_saturate(args):
    sub = _sublattice_of(_load_json(args.file), args.file)
    S = saturate(sub)
    _emit({
        "rank": S.rank,
        "vectors": [[S.basis[i, j] for i in range(S.basis.rows)]
                    for j in range(S.rank)],
        "gram": [list(row) for row in S.gram().data],
    }, args.json)
    return 0


def cmd_niemeier(args):
    if not 1 <= args.j <= 23:
        raise UsageError("Niemeier index must be 1..23")
    N = build_niemeier(args.j)
    report = verify_niemeier(N.lattice)
    if args.action == "build":
        _emit({
            "j": args.j,
            "root_type": str(N.root_type),
            "rank": N.lattice.rank,
            "det": N.lattice.det(),
        }, args.json)
        return 0
    _emit(dict(report, j=args.j), args.json)
    return 0 if report["ok"] else 1


def cmd_marking(args):
    obj = _load_json(args.file)
    if not isinstance(obj, dict) or not {"j", "orbits", "alpha"} <= set(obj):
        raise UsageError("%s: expected fields j, orbits, alpha" % args.file)
    try:
        N = build_niemeier(int(obj["j"]))
        orbits = [[int(i) - 1 for i in orbit] for orbit in obj["orbits"]]
        res = marking_pipeline(N, orbits, int(obj["alpha"]) - 1)
    except (KeyError, ValueError, TypeError) as exc:
        raise UsageError("%s: %s" % (args.file, exc))
    _emit(res.as_dict(), args.json)
    return 0


def cmd_aut(args):
    L = _gram_of(_load_json(args.file), args.file)
    grp = isometry_group(L, budget=args.budget)
    _emit({
        "order": grp.order,
        "proper_order": grp.proper_order,
        "weyl_order": grp.weyl_order,
        "root_type": str(grp.root_type),
    }, args.json)
    return 0


def cmd_oq(args):
    L = _gram_of(_load_json(args.file), args.file)
    F = discriminant_form(L)
    rep = oq_group(F, budget=args.budget)
    _emit({"orders": list(F.orders), "order": rep.order}, args.json)
    return 0


def cmd_ms(args):
    L = _gram_of(_load_json(args.file), args.file)
    if L.rank != 3:
        raise UsageError("%s: ms expects a rank-3 Gram matrix" % args.file)
    _emit({"ms": strong_component_count(L, budget=args.budget)}, args.json)
    return 0


def _subgroup_gens(L, F, spec, side, budget):
    if spec == "trivial":
        return []
    if spec == "oq":
        return list(oq_group(F, budget=budget).elements)
    if spec in ("image", "image_proper"):
        kind = "full" if spec == "image" else "proper"
        _, images = oq_images(L, kind, budget=budget)
        return sorted(images)
    if isinstance(spec, list):
        return [tuple(tuple(int(c) for c in img) for img in gen)
                for gen in spec]
    raise UsageError("field %r must be trivial|oq|image|image_proper or an "
                     "explicit generator list" % side)


def cmd_dcosets(args):
    obj = _load_json(args.file)
    L = _gram_of(obj, args.file)
    F = discriminant_form(L)
    gens_a = _subgroup_gens(L, F, obj.get("a", "image"), "a", args.budget)
    gens_b = _subgroup_gens(L, F, obj.get("b", "trivial"), "b", args.budget)
    count = double_coset_count(F, gens_a, gens_b, budget=args.budget)
    _emit({
        "a_order": len(subgroup_closure(F, gens_a)),
        "b_order": len(subgroup_closure(F, gens_b)),
        "double_cosets": count,
    }, args.json)
    return 0


def cmd_table_check(args):
    rows = run_suite(args.suite, budget=args.budget)
    counts = {}
    for row in rows:
        counts[row["status"]] = counts.get(row["status"], 0) + 1
    if args.json:
        print(json.dumps({"suite": args.suite, "rows": rows,
                          "counts": counts}, sort_keys=True))
    else:
        for row in rows:
            line = "%-8s %s" % (row["status"], row["key"])
            if row["status"] == "mismatch":
                line += "  expected=%s computed=%s" % (
                    json.dumps(row["expected"], sort_keys=True),
                    json.dumps(row["computed"], sort_keys=True))
            elif "reason" in row:
                line += "  (%s)" % row["reason"]
            print(line)
        summary = ", ".join("%d %s" % (counts[k], k) for k in sorted(counts))
        print("%s: %s" % (args.suite, summary))
    return 1 if counts.get("mismatch") else 0


# ---------------------------------------------------------------------------


def _parser():
    p = argparse.ArgumentParser(
        prog="evenlat",
        description="Exact computations with even integral lattices.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, **kwargs):
        sp = sub.add_parser(name, **kwargs)
        sp.set_defaults(fn=fn)
        sp.add_argument("--json", action="store_true",
                        help="machine readable output")
        sp.add_argument("--budget", type=int, default=10 ** 4,
                        help="enumeration ceiling")
        return sp

    add("genus", cmd_genus,
        help="genus symbol of a lattice").add_argument("file")
    add("discform", cmd_discform,
        help="discriminant quadratic form").add_argument("file")
    add("roots", cmd_roots,
        help="root system of a definite lattice").add_argument("file")
    sp = add("count", cmd_count, help="count vectors of a given norm")
    sp.add_argument("file")
    sp.add_argument("--norm", type=int, required=True)
    add("complement", cmd_complement,
        help="orthogonal complement of a sublattice").add_argument("file")
    add("saturate", cmd_saturate,
        help="primitive closure of a sublattice").add_argument("file")
    sp = add("niemeier", cmd_niemeier, help="build or verify N_1..N_23")
    sp.add_argument("action", choices=("build", "verify"))
    sp.add_argument("j", type=int)
    add("marking", cmd_marking,
        help="coinvariant marking pipeline").add_argument("file")
    add("aut", cmd_aut,
        help="isometry group of a definite lattice").add_argument("file")
    add("oq", cmd_oq,
        help="orthogonal group of the discriminant form").add_argument("file")
    add("ms", cmd_ms,
        help="strong moduli component count, rank 3").add_argument("file")
    add("dcosets", cmd_dcosets,
        help="double coset count in O(q)").add_argument("file")
    sp = add("table-check", cmd_table_check,
             help="verify embedded expected tables")
    sp.add_argument("suite", choices=SUITES)
    return p


def main(argv=None):
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.fn(args)
    except (UsageError, ValueError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
