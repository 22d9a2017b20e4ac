"""Command line front end: compute, render, and verify.

Subcommands:

  matrix   print an incidence matrix or its inverse
  genfun   print a generating function of tilings
  tilings  list tilings, optionally rendering one SVG per tiling
  tree     print the decorated tree of a word and its evaluation
  verify   run the identity suite and print a pass/fail table

Exit codes: 0 success, 1 an identity check failed, 2 usage, 3 domain
error (for instance an upper word that does not lie above the lower
one), 4 a computation the known rules cannot finish (a stuck tree or
an inexact division).  Word lengths are capped at 10 by default since
every enumeration is exponential; --allow-long lifts the cap.  The
default worker count comes from DYCKTILE_WORKERS, clamped to 1..8;
results are byte-identical for every worker count.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import re
import sys

from .golden import BASIS_4_0, M_4_0, M_INV_4_0, N_4_0, N_INV_4_0
from .incidence import build, invert
from .pathword import PathWord, all_words, dyck_words, is_above, truncate_last
from .qpoly import InexactDivisionError, PolyQ, exact_div, q_int
from .tiling import (
    EXCLUSIVE,
    INCLUSIVE,
    TYPE_A,
    TYPE_B,
    TYPE_D,
    WEIGHTS,
    _upper_words,
    build_region,
    enumerate_tilings,
    exclusive_signed_weight,
    genfun_lower,
    genfun_pair,
    genfun_upper,
    render_svg,
    tiling_record,
)
from .treeform import (
    StuckTreeError,
    _evaluations,
    build_tree,
    kw_type_a,
    omega,
    q_b,
)

EXIT_OK = 0
EXIT_IDENTITY = 1
EXIT_USAGE = 2
EXIT_DOMAIN = 3
EXIT_GAP = 4

LENGTH_CAP = 10


def _default_workers() -> int:
    raw = os.environ.get("DYCKTILE_WORKERS", "1")
    try:
        return max(1, min(8, int(raw)))
    except ValueError:
        return 1


def _parse_word(parser: argparse.ArgumentParser, text: str, allow_long: bool) -> PathWord:
    if re.fullmatch("[UD]*", text) is None:
        parser.error("words use only the letters U and D, got %r" % text)
    if len(text) > LENGTH_CAP and not allow_long:
        parser.error(
            "word of length %d exceeds the cap %d; pass --allow-long to "
            "lift it (enumeration is exponential)" % (len(text), LENGTH_CAP)
        )
    return PathWord(text)


def _q_at_1(p: PolyQ) -> int:
    return sum(p.coeffs)


# -- matrix ------------------------------------------------------------------


def cmd_matrix(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    if args.n < 1:
        parser.error("--n must be at least 1")
    if args.n > LENGTH_CAP and not args.allow_long:
        parser.error(
            "--n %d exceeds the cap %d; pass --allow-long to lift it"
            % (args.n, LENGTH_CAP)
        )
    kind = {"M": "I", "N": "II", "Minv": "I", "Ninv": "II"}[args.kind]
    matrix = build(args.n, args.epsilon, kind)
    if args.kind in ("Minv", "Ninv"):
        matrix = invert(matrix)
    if args.format == "json":
        print(json.dumps(matrix.to_json(), sort_keys=True))
    elif args.format == "csv":
        sys.stdout.write(matrix.to_csv())
    elif args.format == "latex":
        print(matrix.to_latex())
    else:
        print(matrix.to_text())
    return EXIT_OK


# -- genfun ------------------------------------------------------------------


def cmd_genfun(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    lam = _parse_word(parser, args.lam, args.allow_long)
    try:
        if args.mu is not None:
            mu = _parse_word(parser, args.mu, args.allow_long)
            poly = genfun_pair(lam, mu, args.family, args.cls, args.weight)
        else:
            poly = genfun_lower(
                lam, args.family, args.weight, args.cls, workers=args.workers
            )
    except ValueError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_DOMAIN
    if args.format == "json":
        blob = {
            "lower": lam.steps,
            "upper": args.mu,
            "family": args.family,
            "class": args.cls,
            "weight": args.weight,
            "coefficients": list(poly.coeffs),
            "polynomial": str(poly),
            "q_at_1": _q_at_1(poly),
        }
        print(json.dumps(blob, sort_keys=True))
    else:
        print(poly)
        print("q=1: %d" % _q_at_1(poly))
    return EXIT_OK


# -- tilings -----------------------------------------------------------------


def cmd_tilings(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    lam = _parse_word(parser, args.lam, args.allow_long)
    try:
        if args.mu is not None:
            uppers = [_parse_word(parser, args.mu, args.allow_long)]
        else:
            uppers = _upper_words(lam, args.family)
        found = []
        for mu in uppers:
            region = build_region(lam, mu, args.family)
            for t in enumerate_tilings(region, args.cls):
                if args.filter_art is None or t.art == args.filter_art:
                    found.append(t)
    except ValueError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_DOMAIN
    found.sort(key=lambda t: (t.region.mu.steps, tiling_record(t)))
    for t in found:
        print(
            "upper=%s class=%s tiles=%d area=%d art=%d"
            % (t.region.mu.steps or "(empty)", t.cls, t.tile_count, t.area, t.art)
        )
    print("total: %d tiling%s" % (len(found), "" if len(found) == 1 else "s"))
    if args.render is not None:
        _render_tilings(args, found)
        print("rendered %d files into %s" % (len(found) + 1, args.render))
    return EXIT_OK


def _render_tilings(args: argparse.Namespace, found: list) -> None:
    os.makedirs(args.render, exist_ok=True)
    artifacts = []
    for i, t in enumerate(found):
        name = "tiling_%03d.svg" % i
        svg = render_svg(t)
        with open(os.path.join(args.render, name), "w") as fh:
            fh.write(svg)
        artifacts.append(
            {
                "file": name,
                "sha256": hashlib.sha256(svg.encode()).hexdigest(),
                "upper": t.region.mu.steps,
                "class": t.cls,
                "tiles": t.tile_count,
                "area": t.area,
                "art": t.art,
            }
        )
    manifest = {
        "command": "tilings",
        "arguments": {
            "lambda": args.lam,
            "mu": args.mu,
            "family": args.family,
            "class": args.cls,
            "filter_art": args.filter_art,
        },
        "artifacts": artifacts,
    }
    path = os.path.join(args.render, "manifest.json")
    with open(path, "w") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")


# -- tree --------------------------------------------------------------------


def _tree_lines(blob: dict) -> list[str]:
    lines = []

    def walk(children: list, path: tuple) -> None:
        for k, child in enumerate(children):
            p = path + (k,)
            lines.append(
                "edge %s %s" % (list(p), "dotted" if child["dotted"] else "plain")
            )
            walk(child["children"], p)

    walk(blob["children"], ())
    for a in blob["arrows"]:
        lines.append("arrow %s -> %s" % (a["source"], a["target"]))
    return lines


def cmd_tree(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    lam = _parse_word(parser, args.lam, args.allow_long)
    tree = build_tree(lam)
    blob = tree.to_json()
    try:
        value = omega(tree)
    except (StuckTreeError, InexactDivisionError) as exc:
        if args.format == "json":
            stuck = {"word": lam.steps, "tree": blob, "error": str(exc)}
            print(json.dumps(stuck, sort_keys=True))
        else:
            print("word: %s" % (lam.steps or "(empty)"), file=sys.stderr)
            for line in _tree_lines(blob):
                print(line, file=sys.stderr)
            print("error: %s" % exc, file=sys.stderr)
        return EXIT_GAP
    if args.format == "json":
        blob = {
            "word": lam.steps,
            "tree": blob,
            "omega": str(value),
            "coefficients": list(value.coeffs),
            "q_at_1": _q_at_1(value),
        }
        print(json.dumps(blob, sort_keys=True))
    elif args.format == "dot":
        print(tree.to_dot())
    else:
        print("word: %s" % (lam.steps or "(empty)"))
        if tree.is_empty:
            print("(empty tree)")
        for line in _tree_lines(blob):
            print(line)
        print("omega: %s" % value)
        print("q=1: %d" % _q_at_1(value))
    return EXIT_OK


# -- verify ------------------------------------------------------------------


def _words_through(max_len: int):
    for n in range(max_len + 1):
        yield from all_words(n)


def _check_golden_matrices(k: int, workers: int):
    cases, failures = 0, []
    if k < 4:
        return cases, 0, failures
    plan = (
        ("M", M_4_0, False),
        ("N", N_4_0, False),
        ("Minv", M_INV_4_0, True),
        ("Ninv", N_INV_4_0, True),
    )
    for name, rows, inverse in plan:
        matrix = build(4, 0, "I" if name.startswith("M") else "II")
        if inverse:
            matrix = invert(matrix)
        if [w.steps for w in matrix.basis] != BASIS_4_0:
            failures.append("%s: basis order drifted" % name)
            continue
        for i, lam in enumerate(BASIS_4_0):
            for j, mu in enumerate(BASIS_4_0):
                cases += 1
                if matrix.entries[i][j] != rows[i][j]:
                    failures.append(
                        "%s lam=%s mu=%s: built %s, reference %s"
                        % (name, lam, mu, matrix.entries[i][j], rows[i][j])
                    )
    return cases, 0, failures


def _check_matrix_bridge(k: int, workers: int):
    cases, failures = 0, []
    for n in range(1, min(k, 4) + 1):
        for eps in (0, 1):
            mat_art = build(n, eps, "I")
            mat_tiles = build(n, eps, "II")
            inv_art = invert(mat_art)
            inv_tiles = invert(mat_tiles)
            for lam in mat_art.basis:
                for mu in mat_art.basis:
                    if not is_above(mu, lam):
                        continue
                    plan = (
                        (inv_art, genfun_pair(lam, mu, TYPE_D, INCLUSIVE, "art")),
                        (inv_tiles, genfun_pair(lam, mu, TYPE_D, INCLUSIVE, "tiles")),
                        (mat_art, exclusive_signed_weight(lam, mu, TYPE_D, "art")),
                        (mat_tiles, exclusive_signed_weight(lam, mu, TYPE_D, "tiles")),
                    )
                    for matrix, want in plan:
                        cases += 1
                        got = matrix.entry(lam, mu)
                        if got != want:
                            failures.append(
                                "n=%d eps=%d lam=%s mu=%s: matrix %s, tilings %s"
                                % (n, eps, lam.steps, mu.steps, got, want)
                            )
    return cases, 0, failures


def _check_matrix_positivity(k: int, workers: int):
    cases, failures = 0, []
    for n in range(1, min(k + 1, 6) + 1):
        for eps in (0, 1):
            for kind in ("I", "II"):
                inv = invert(build(n, eps, kind))
                for row, lam in zip(inv.entries, inv.basis):
                    for p, mu in zip(row, inv.basis):
                        cases += 1
                        if any(c < 0 for c in p.coeffs):
                            failures.append(
                                "n=%d eps=%d kind=%s lam=%s mu=%s: %s"
                                % (n, eps, kind, lam.steps, mu.steps, p)
                            )
    return cases, 0, failures


def _check_lower_projection(k: int, workers: int):
    cases, failures = 0, []
    for w in _words_through(k):
        if not w.length:
            continue
        cases += 1
        left = genfun_lower(w, TYPE_D, "art", workers=workers)
        right = genfun_lower(truncate_last(w), TYPE_B, "art", workers=workers)
        if left != right:
            failures.append("lam=%s: D %s, B %s" % (w.steps, left, right))
    return cases, 0, failures


def _check_upper_tiles(k: int, workers: int):
    cases, failures = 0, []
    for w in _words_through(k):
        if not w.length:
            continue
        cases += 1
        left = genfun_upper(w, TYPE_D, "tiles", workers=workers)
        right = genfun_upper(truncate_last(w), TYPE_B, "tiles", workers=workers)
        if left != right:
            failures.append("mu=%s: D %s, B %s" % (w.steps, left, right))
    return cases, 0, failures


def _check_tail_product(k: int, workers: int):
    cases, failures = 0, []
    for total in range(1, k + 2):
        for m in range(1, total + 1):
            n = total - m
            w = PathWord("D" * n + "U" * m)
            cases += 1
            left = genfun_lower(w, TYPE_D, "art", workers=workers)
            right = q_b(m - 1, n)
            if left != right:
                failures.append("M=%d N=%d: enumerated %s, product %s" % (m, n, left, right))
    return cases, 0, failures


def _check_ballot_tail(k: int, workers: int):
    cases, failures = 0, []
    for total in range(k + 1):
        for m in range(total + 1):
            n = total - m
            w = PathWord("D" * n + "U" * m)
            cases += 1
            left = genfun_lower(w, TYPE_B, "art", workers=workers)
            right = q_b(m, n)
            if left != right:
                failures.append("M=%d N=%d: enumerated %s, product %s" % (m, n, left, right))
    return cases, 0, failures


def _check_hook_product(k: int, workers: int):
    cases, failures = 0, []
    for n in range(0, k + 1, 2):
        for w in dyck_words(n):
            cases += 1
            left = kw_type_a(w)
            right = genfun_lower(w, TYPE_A, "art", workers=workers)
            if left != right:
                failures.append("lam=%s: hook %s, tilings %s" % (w.steps, left, right))
    return cases, 0, failures


def _check_tree_evaluation(k: int, workers: int):
    cases, skipped, failures = 0, 0, []
    for w in _words_through(k):
        cases += 1
        try:
            left = omega(build_tree(w))
        except StuckTreeError:
            if w.length <= 5:
                failures.append("lam=%s: stuck below length 6" % w.steps)
            else:
                skipped += 1
            continue
        right = genfun_lower(w, TYPE_D, "art", workers=workers)
        if left != right:
            failures.append("lam=%s: tree %s, tilings %s" % (w.steps, left, right))
    return cases, skipped, failures


def _check_merge_confluence(k: int, workers: int):
    cases, failures = 0, []
    for w in _words_through(min(k, 5)):
        cases += 1
        pairs = _evaluations(build_tree(w), {})
        values = {exact_div(num, den) for num, den in pairs}
        if len(values) != 1:
            failures.append(
                "lam=%s: %d orders, %d values" % (w.steps, len(pairs), len(values))
            )
    return cases, 0, failures


def _check_pinned_values(k: int, workers: int):
    cases, failures = 0, []

    def expect(name: str, got, want) -> None:
        nonlocal cases
        cases += 1
        if got != want:
            failures.append("%s: got %s, want %s" % (name, got, want))

    expect(
        "pair DDUU..UUUU area",
        genfun_pair(PathWord("DDUU"), PathWord("UUUU"), TYPE_D, INCLUSIVE, "area"),
        PolyQ((0, 0, 0, 0, 0, 2)),
    )
    two = PolyQ((1, 1))
    expect("ballot tail (0,3)", q_b(0, 3), two * PolyQ((1, 0, 1)) * PolyQ((1, 0, 0, 1)))
    expect("ballot tail (1,2)", q_b(1, 2), two * PolyQ((1, 0, 1)) * PolyQ((1, 0, 1)))
    if k >= 6:
        poly = genfun_lower(PathWord("DDUUDD"), TYPE_D, "art", workers=workers)
        expect("DDUUDD count", _q_at_1(poly), 36)
        expect("DDUUDD q^5 coefficient", poly.coeffs[5], 6)
        expect(
            "tree value DUUDUU",
            omega(build_tree(PathWord("DUUDUU"))),
            q_int(3) * q_int(6),
        )
    return cases, 0, failures


CHECKS = (
    ("golden-matrices", _check_golden_matrices),
    ("matrix-bridge", _check_matrix_bridge),
    ("matrix-positivity", _check_matrix_positivity),
    ("lower-sum-projection", _check_lower_projection),
    ("upper-sum-tiles", _check_upper_tiles),
    ("tail-product", _check_tail_product),
    ("ballot-tail-product", _check_ballot_tail),
    ("hook-product", _check_hook_product),
    ("tree-evaluation", _check_tree_evaluation),
    ("merge-confluence", _check_merge_confluence),
    ("pinned-values", _check_pinned_values),
)


def cmd_verify(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    if args.max_length < 0:
        parser.error("--max-length must be nonnegative")
    if args.max_length > LENGTH_CAP and not args.allow_long:
        parser.error(
            "--max-length %d exceeds the cap %d; pass --allow-long to lift it"
            % (args.max_length, LENGTH_CAP)
        )
    report = []
    for name, fn in CHECKS:
        cases, skipped, failures = fn(args.max_length, args.workers)
        report.append(
            {
                "name": name,
                "passed": not failures,
                "cases": cases,
                "skipped": skipped,
                "failures": failures,
            }
        )
    all_pass = all(r["passed"] for r in report)
    if args.json:
        print(
            json.dumps(
                {
                    "max_length": args.max_length,
                    "workers": args.workers,
                    "checks": report,
                    "all_pass": all_pass,
                },
                sort_keys=True,
            )
        )
    else:
        width = max(len(r["name"]) for r in report)
        for r in report:
            note = ""
            if r["skipped"]:
                note = "  (%d stuck trees skipped)" % r["skipped"]
            print(
                "%s  %s  %d cases%s"
                % (
                    r["name"].ljust(width),
                    "pass" if r["passed"] else "FAIL",
                    r["cases"],
                    note,
                )
            )
            for line in r["failures"][:5]:
                print("    %s" % line)
            if len(r["failures"]) > 5:
                print("    ... and %d more" % (len(r["failures"]) - 5))
        print("all checks passed" if all_pass else "some checks FAILED")
    return EXIT_OK if all_pass else EXIT_IDENTITY


# -- parser ------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dycktile",
        description="incidence matrices, tiling generating functions, "
        "decorated trees, and the identity suite",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--workers",
        type=int,
        choices=range(1, 9),
        metavar="1..8",
        default=_default_workers(),
        help="parallel workers for batch sums (default from DYCKTILE_WORKERS)",
    )
    common.add_argument(
        "--allow-long",
        action="store_true",
        help="lift the length cap of %d" % LENGTH_CAP,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("matrix", parents=[common], help="print an incidence matrix")
    p.add_argument("--n", type=int, required=True, help="word length of the basis")
    p.add_argument("--epsilon", type=int, choices=(0, 1), default=0)
    p.add_argument("--kind", choices=("M", "N", "Minv", "Ninv"), default="M")
    p.add_argument("--format", choices=("text", "json", "csv", "latex"), default="text")
    p.set_defaults(fn=cmd_matrix)

    p = sub.add_parser("genfun", parents=[common], help="print a generating function")
    p.add_argument("--lambda", dest="lam", required=True, metavar="WORD")
    p.add_argument("--mu", metavar="WORD", help="upper word; sums over all when absent")
    p.add_argument("--type", dest="family", choices=(TYPE_A, TYPE_B, TYPE_D), default=TYPE_D)
    p.add_argument("--weight", choices=WEIGHTS, default="art")
    p.add_argument("--class", dest="cls", choices=(INCLUSIVE, EXCLUSIVE), default=INCLUSIVE)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(fn=cmd_genfun)

    p = sub.add_parser("tilings", parents=[common], help="list or render tilings")
    p.add_argument("--lambda", dest="lam", required=True, metavar="WORD")
    p.add_argument("--mu", metavar="WORD")
    p.add_argument("--type", dest="family", choices=(TYPE_A, TYPE_B, TYPE_D), default=TYPE_D)
    p.add_argument("--class", dest="cls", choices=(INCLUSIVE, EXCLUSIVE), default=INCLUSIVE)
    p.add_argument("--filter-art", type=int, help="keep tilings with this art value")
    p.add_argument("--render", metavar="DIR", help="write one SVG per tiling plus a manifest")
    p.set_defaults(fn=cmd_tilings)

    p = sub.add_parser("tree", parents=[common], help="print a decorated tree")
    p.add_argument("--lambda", dest="lam", required=True, metavar="WORD")
    p.add_argument("--format", choices=("text", "json", "dot"), default="text")
    p.set_defaults(fn=cmd_tree)

    p = sub.add_parser("verify", parents=[common], help="run the identity suite")
    p.add_argument("--max-length", type=int, default=5)
    p.add_argument("--json", action="store_true", help="machine-readable report")
    p.set_defaults(fn=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    return args.fn(args, parser)


if __name__ == "__main__":
    sys.exit(main())
