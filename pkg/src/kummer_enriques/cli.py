"""Command-line front end: verification suites, tables, inspection, dumps.

Exit status is 0 when every requested check passes, 1 when a check fails
and 2 on usage errors (bad flags, unparsable or unsuitable data).
"""

import argparse
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import classifier, forms, halfsets, involutions, lattice, ns
from .halfsets import HalfSet, HalfSetError, hexad_str, parse_set
from .involutions import InvolutionError
from .linalg import fraction_to_str, matrix_to_json
from .report import Report

log = logging.getLogger("kummer_enriques")

SCOPES = ("all", "ns", "forms", "involutions", "classification", "surjectivity")
KINDS = ("switch", "hg", "hw", "translation")


class UsageError(Exception):
    pass


# ---------------------------------------------------------------- verify

def _certify(kind_datum):
    kind, datum = kind_datum
    sigma = _involution(kind, datum)
    return involutions.eigenlattice_report([sigma])


def _representatives(slow):
    """(kind, datum) pairs whose eigenlattices get certified."""
    if slow:
        return ([("switch", b) for b in halfsets.EVEN_THETAS]
                + [("hg", g) for g in halfsets.gopel_tetrads()]
                + [("hw", w) for w in halfsets.weber_hexads()])
    return ([("switch", b) for b in halfsets.EVEN_THETAS]
            + [("hg", g) for g in halfsets.gopel_subgroups()]
            + [("hw", frozenset(parse_set(r))) for r in classifier.HW_TABLE_ROWS])


def _map(fn, items, threads):
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(fn, items))
    return [fn(x) for x in items]


def suite_ns():
    reports = [ns.ns_report(), ns.verify_disc_basis(), halfsets.combinatorics_report()]
    reports.append(ns.reconcile_report())
    return reports


def suite_forms():
    return [forms.forms_report()]


def suite_involutions(threads=1, slow=False):
    out = [involutions.construction_report(), involutions.closed_form_report(),
           involutions.weyl_report()]
    cert = Report("E7(2) eigenlattices")
    for r in _map(_certify, _representatives(slow), threads):
        cert.extend(r)
    out.append(cert)
    if slow:
        out.append(involutions.conjugation_report())
    return out


def suite_classification():
    result = classifier.classify_all()
    return [result.report, classifier.golden_report(result.rows),
            classifier.abstract_concrete_bijection(result)]


def suite_surjectivity():
    return [involutions.surjectivity_report()]


def run_scope(scope, threads=1, slow=False):
    if scope == "ns":
        return suite_ns()
    if scope == "forms":
        return suite_forms()
    if scope == "involutions":
        return suite_involutions(threads, slow)
    if scope == "classification":
        return suite_classification()
    if scope == "surjectivity":
        return suite_surjectivity()
    out = suite_ns() + suite_forms() + suite_involutions(threads, slow) + suite_classification()
    if slow:
        out += suite_surjectivity()
    return out


def cmd_verify(args, out):
    ok = True
    for rep in run_scope(args.scope, args.threads, args.slow):
        print(f"== {rep.title}", file=out)
        for line in rep.lines():
            print(line, file=out)
        ok &= rep.passed
    print("ALL PASS" if ok else "FAILURES PRESENT", file=out)
    return 0 if ok else 1


# ---------------------------------------------------------------- classify

def cmd_classify(args, out):
    result = classifier.classify_all(method=args.method)
    out.write(classifier.RENDERERS[args.format](result.rows))
    for line in result.report.lines():
        log.info(line)
    return 0 if result.passed else 1


# ---------------------------------------------------------------- inspect

def parse_datum(kind, text):
    """Parse the datum of an involution; raises UsageError when unsuitable."""
    t = text.strip()
    try:
        if kind in ("switch", "translation"):
            return HalfSet.parse(t)
        if kind == "hg":
            pts = involutions.G0 if t.upper() == "G0" else parse_set(t)
            if pts not in set(halfsets.gopel_tetrads()):
                raise UsageError(f"{t} is not a Gopel tetrad")
            return pts
        pts = involutions.W0 if t.upper() == "W0" else parse_set(t)
        if not halfsets.is_weber_hexad(pts):
            raise UsageError(f"{t} is not a Weber hexad")
        return pts
    except HalfSetError as exc:
        raise UsageError(str(exc)) from None


def _involution(kind, datum):
    if kind == "translation":
        return involutions.translation_action(datum)
    return classifier.involution_for(kind, datum)


def _rosenhain_order(sub):
    """[0], ij, jk, ki for the subgroup {0, ij, jk, ki} with i < j < k."""
    i, j, k = sorted({x for p in sub if p.members for x in p.members})
    labels = {HalfSet.of((k, i)): f"{k}{i}"}
    order = [halfsets.ZERO, HalfSet.of((i, j)), HalfSet.of((j, k)), HalfSet.of((k, i))]
    return order, labels


def _curve_of(v):
    for c in ns.CURVES:
        if ns.curve_vector(c) == v:
            return c
    return None


def _swapped_pairs(sigma):
    """Node/trope pairs interchanged by the involution."""
    pairs = []
    for a in halfsets.POINTS:
        c = _curve_of(sigma(ns.node_vector(a)))
        if c is not None and c[0] == "T":
            pairs.append((f"N{a.label}", f"T{c[1].label}"))
    return pairs


def inspect_data(kind, datum):
    sigma = _involution(kind, datum)
    data = {"kind": kind, "datum": str(datum) if kind in ("switch", "translation")
            else hexad_str(datum), "matrix": matrix_to_json(sigma.matrix)}
    if kind == "translation":
        return data
    ed = sigma.eigen
    k = ed.k.reduced()
    data["eigenlattice_basis"] = matrix_to_json(k.basis)
    data["eigenlattice_gram"] = matrix_to_json(k.gram)
    wit = involutions.e7_witness(k)
    data["e7_2_witness"] = matrix_to_json(wit) if wit else None
    check = involutions.free_necessary_check(k, "K")
    data["checks"] = check.lines()
    sub = classifier.patching_subgroup(sigma)
    data["patching_subgroup"] = [list(x) for x in sorted(sub.elements)]
    data["table_entry"] = ns.disc_class_str(classifier.table_generator(kind, sub))
    if kind == "switch":
        gens = []
        for r in halfsets.rosenhain_pair(datum):
            order, labels = _rosenhain_order(r)
            v = classifier.switch_generator_vector(datum, halfsets.rosenhain_pair(datum).index(r))
            gens.append(ns.vector_str(v, order, labels))
        data["generators"] = gens
    elif kind == "hg":
        data["generators"] = ["H/2", ns.vector_str(classifier.hg_x_vector(datum))]
    else:
        data["generators"] = [ns.vector_str(classifier.hw_generator_vector(datum))]
        data["interchanged_pairs"] = [list(p) for p in _swapped_pairs(sigma)]
    return data


def _matrix_lines(rows):
    return ["  [" + " ".join(f"{str(Fraction(x)):>5}" for x in row) + "]" for row in rows]


def render_inspect(data):
    lines = [f"# {data['kind']} {data['datum']}", "", "action matrix (columns: images of "
             "H, N0, N12, ..., N56):"]
    lines += _matrix_lines(data["matrix"])
    if "eigenlattice_gram" in data:
        lines += ["", "(-1)-eigenlattice K, reduced basis:"]
        lines += _matrix_lines(data["eigenlattice_basis"])
        lines += ["", "Gram matrix of K:"]
        lines += _matrix_lines(data["eigenlattice_gram"])
        lines += ["", "E7(2) witness (basis of K with the standard E7(2) Gram):"]
        lines += _matrix_lines(data["e7_2_witness"]) if data["e7_2_witness"] else ["  none"]
        lines += ["", "checks:"] + [f"  {c}" for c in data["checks"]]
        lines += ["", "patching subgroup generated by " + ", ".join(data["generators"])]
        lines += [f"table entry: {data['table_entry']}",
                  "elements: " + " ".join("(" + ",".join(map(str, x)) + ")"
                                          for x in data["patching_subgroup"])]
    if "interchanged_pairs" in data:
        lines += ["", "interchanged pairs: "
                  + ", ".join(f"({a}, {b})" for a, b in data["interchanged_pairs"])]
    return "\n".join(lines) + "\n"


def cmd_inspect(args, out):
    datum = parse_datum(args.kind, args.datum)
    try:
        data = inspect_data(args.kind, datum)
    except InvolutionError as exc:
        raise UsageError(str(exc)) from None
    if args.format == "json":
        out.write(json.dumps(data, indent=2, ensure_ascii=False) + "\n")
    else:
        out.write(render_inspect(data))
    failed = any(line.endswith("FAIL") or ": FAIL" in line for line in data.get("checks", []))
    return 1 if failed else 0


# ---------------------------------------------------------------- dump

def dump_enumerations():
    def sets(xs):
        return [hexad_str(x) for x in xs]
    return {
        "points": [str(a) for a in halfsets.POINTS],
        "thetas": [str(b) for b in halfsets.THETAS],
        "even_thetas": [str(b) for b in halfsets.EVEN_THETAS],
        "gopel_subgroups": sets(halfsets.gopel_subgroups()),
        "gopel_tetrads": sets(halfsets.gopel_tetrads()),
        "rosenhain_subgroups": sets(halfsets.rosenhain_subgroups()),
        "rosenhain_tetrads": sets(halfsets.rosenhain_tetrads()),
        "weber_hexads": sets(halfsets.weber_hexads()),
        "weber_classes": [sets(c) for c in halfsets.weber_classes()],
    }


def dump_forms():
    out = {}
    for m in (1, 2, 3):
        f = forms.kummer_form(m)
        out[f"u(2)^{m}+<1/4>"] = forms.form_summary_json(f, forms.orbits(f))
    census = forms.census()
    out["order4_census"] = {k: [[list(x) for x in s.elements] for s in v]
                            for k, v in census.items()}
    out["A_NS"] = ns.build_ns().form.to_json()
    return out


DUMPS = {"ns": lambda: ns.ns_json(), "enumerations": dump_enumerations, "forms": dump_forms}


def cmd_dump(args, out):
    out.write(json.dumps(DUMPS[args.what](), indent=2, ensure_ascii=False) + "\n")
    return 0


# ---------------------------------------------------------------- main

def _common_flags(p, default):
    p.add_argument("-v", "--verbose", action="count", default=default)
    p.add_argument("--threads", type=int, default=default, help="worker processes (default 1)")
    p.add_argument("--out", default=default, help="write output to this file instead of stdout")


def build_parser():
    p = argparse.ArgumentParser(prog="kummer-enriques",
                                description="Free involutions of a Picard-general Jacobian "
                                            "Kummer surface: lattice-level verification.")
    _common_flags(p, argparse.SUPPRESS)
    p.set_defaults(verbose=0, threads=1, out=None)
    common = argparse.ArgumentParser(add_help=False)
    _common_flags(common, argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", parents=[common], help="run verification suites")
    v.add_argument("--scope", choices=SCOPES, default="all")
    v.add_argument("--slow", action="store_true",
                   help="include the long-running checks (all 262 eigenlattices, "
                        "conjugation relations, surjectivity)")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("classify", parents=[common], help="emit the 31-row classification table")
    c.add_argument("--format", choices=sorted(classifier.RENDERERS), default="md")
    c.add_argument("--method", choices=("projection", "pairs"), default="projection")
    c.set_defaults(func=cmd_classify)

    i = sub.add_parser("inspect", parents=[common], help="show one involution in detail")
    i.add_argument("kind", choices=KINDS)
    i.add_argument("datum", help="[123], [0]+[12]+[34]+[56], G0, W0, ...")
    i.add_argument("--format", choices=("md", "json"), default="md")
    i.set_defaults(func=cmd_inspect)

    d = sub.add_parser("dump", parents=[common], help="JSON dumps of the underlying data")
    d.add_argument("what", choices=sorted(DUMPS))
    d.set_defaults(func=cmd_dump)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2),
                        format="%(levelname)s %(message)s")
    if args.threads < 1:
        parser.error("--threads must be at least 1")
    try:
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                return args.func(args, fh)
        return args.func(args, sys.stdout)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
