"""Command-line entry point.

One binary, subcommand style: structural validation, witness search, exact
small Hales-Jewett and van der Waerden numbers, the ultrafilter-identity
checks, and certificate re-verification.  Exit codes: 0 success/verified,
1 honest negative (exhausted search, lower bound only, failed check),
2 input error, 3 budget exceeded.
"""
from __future__ import annotations

import argparse
import os
import sys

from .certificates import (
    hj_coloring_certificate,
    render_certificate,
    save_certificate,
    vdw_coloring_certificate,
    verify_certificate_text,
    words_witness_certificate,
    finite_witness_certificate,
)
from .corpus import generate_corpus, sweep_semigroups, sweep_tensor_power
from .errors import (
    CarrierTooLarge,
    ColoringSpecError,
    HjlabError,
    SearchSpaceTooLarge,
    TableParseError,
)
from .instances import parse_coloring_spec
from .semigroups import (
    FiniteSemigroup,
    NiceSubsemigroupView,
    Retraction,
    RetractionFamily,
    is_nice_subsemigroup,
    validate_retraction,
)
from .search import (
    SAT,
    UNSAT,
    DEFAULT_NODE_BUDGET,
    DEFAULT_TIME_BUDGET,
    WitnessOutcome,
    finite_witness_search,
    find_ap_via_words,
    hj_number,
    vdw_number,
    word_witness_search,
)
from .tableio import parse_semigroup_file
from .ultra import check_lemma2_equivalence
from .words import WordSemigroup, format_word, substitution_family

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3


def _style(text, code):
    if os.environ.get("NO_COLOR") or not sys.stdout.isatty():
        return text
    return f"\x1b[{code}m{text}\x1b[0m"


def _pass():
    return _style("pass", "32")


def _fail():
    return _style("fail", "31")


def _load_structures(path, need_family=False):
    """Parse a semigroup file into (S, view, family); view/family may be
    None when the file does not declare them."""
    parsed = parse_semigroup_file(path)
    S = FiniteSemigroup(parsed.rows)
    view = None
    family = None
    if parsed.t_members is not None:
        view = NiceSubsemigroupView.from_members(S, parsed.t_members)
    if parsed.retractions:
        if view is None:
            raise TableParseError(1, 1, "retractions need a declared T line")
        family = RetractionFamily(view, [Retraction(r) for r in parsed.retractions])
    if need_family and family is None:
        raise TableParseError(1, 1, "this command needs T and retraction lines")
    return S, view, family


# -- validate -------------------------------------------------------------


def cmd_validate(args):
    try:
        parsed = parse_semigroup_file(args.semigroup)
    except (TableParseError, OSError) as e:
        print(f"parse error: {e}")
        return EXIT_INPUT
    all_ok = True
    try:
        S = FiniteSemigroup(parsed.rows)
        print(f"closure: {_pass()}")
        print(f"associativity: {_pass()} ({S.order}^3 triples)")
    except HjlabError as e:
        print(f"table: {_fail()} ({e})")
        return EXIT_NEGATIVE
    if parsed.retractions and parsed.t_members is None:
        print("retraction lines need a declared T line")
        return EXIT_INPUT
    view = None
    if parsed.t_members is not None:
        view = NiceSubsemigroupView.from_members(S, parsed.t_members)
        res = is_nice_subsemigroup(S, view)
        if res:
            print(f"nice subsemigroup: {_pass()} (|T| = {len(view.members())})")
        else:
            all_ok = False
            print(f"nice subsemigroup: {_fail()} ({res.describe()})")
    for i, row in enumerate(parsed.retractions):
        res = validate_retraction(S, view, Retraction(row))
        if res:
            print(f"retraction {i}: {_pass()}")
        else:
            all_ok = False
            print(f"retraction {i}: {_fail()} ({res.describe()})")
    return EXIT_OK if all_ok else EXIT_NEGATIVE


# -- witness --------------------------------------------------------------


def cmd_witness(args):
    try:
        coloring = parse_coloring_spec(args.coloring)
    except ColoringSpecError as e:
        print(f"coloring spec error: {e}")
        return EXIT_INPUT
    if args.hj:
        ws = WordSemigroup(args.alphabet, args.variables)
        family = substitution_family(ws)
        reduction = "none"
        search_coloring = coloring
        if coloring.kind == "apres":
            # integer colorings reach words through the digit-sum reduction
            reduction = "vdw"
            from .instances import VdwEncoding

            search_coloring = VdwEncoding(args.alphabet, args.max_len).pullback(coloring)
        outcome = word_witness_search(ws, family, search_coloring, max_len=args.max_len)
        if outcome.status != "found":
            print(f"exhausted: {outcome.budget_note} ({outcome.checked} words checked)")
            return EXIT_NEGATIVE
        cert = words_witness_certificate(ws, coloring, outcome, reduction=reduction)
        print(f"witness: {format_word(outcome.witness)}")
        print("images: " + " ".join(format_word(w) for w in outcome.images))
        print(f"color: {outcome.color}")
    else:
        try:
            S, view, family = _load_structures(args.semigroup, need_family=True)
        except (TableParseError, OSError) as e:
            print(f"parse error: {e}")
            return EXIT_INPUT
        if coloring.kind != "table":
            print("finite instances need an explicit table coloring")
            return EXIT_INPUT
        outcome = finite_witness_search(S, family, coloring)
        if outcome.status != "found":
            print(f"exhausted: {outcome.budget_note} ({outcome.checked} elements checked)")
            return EXIT_NEGATIVE
        cert = finite_witness_certificate(S, family, coloring, outcome)
        print(f"witness: {S.element_name(outcome.witness)} (index {outcome.witness})")
        print("images: " + " ".join(S.element_name(x) for x in outcome.images))
        print(f"color: {outcome.color}")
    if args.output:
        save_certificate(cert, args.output)
        print(f"certificate: {args.output}")
    else:
        sys.stdout.write(render_certificate(cert))
    return EXIT_OK


# -- hj / vdw -------------------------------------------------------------


def _number_common(args, result, name, cert_maker, cert_prefix):
    for size, res in result.runs:
        if res.status == SAT:
            line = f"{cert_prefix}={size}: SAT nodes={res.nodes}"
            if args.cert_dir:
                os.makedirs(args.cert_dir, exist_ok=True)
                path = os.path.join(
                    args.cert_dir, f"{name.lower()}-{cert_prefix}{size}.cert"
                )
                save_certificate(cert_maker(size, res), path)
                line += f" certificate={path}"
            print(line)
        elif res.status == UNSAT:
            print(f"{cert_prefix}={size}: UNSAT nodes={res.nodes}")
        else:
            print(f"{cert_prefix}={size}: BudgetExceeded nodes={res.nodes}")
    if result.decided:
        print(f"{name} = {result.value}")
        return EXIT_OK
    if result.budget_hit:
        print(f"{name} > {result.lower_bound} (budget exceeded, not UNSAT)")
        return EXIT_BUDGET
    print(f"{name} > {result.lower_bound} (lower bound only)")
    return EXIT_NEGATIVE


def cmd_hj(args):
    symmetry = () if args.no_symmetry else ("color", "coordinate", "alphabet")
    result = hj_number(
        args.n,
        args.r,
        args.max_N,
        budget_nodes=args.budget_nodes,
        budget_seconds=args.budget_seconds,
        symmetry=symmetry,
        threads=args.threads,
    )
    return _number_common(
        args,
        result,
        f"HJ({args.n},{args.r})",
        lambda N, res: hj_coloring_certificate(args.n, N, args.r, res),
        "N",
    )


def cmd_vdw(args):
    if args.via_hj:
        coloring = parse_coloring_spec(args.coloring or f"apres:{args.r}")
        out = find_ap_via_words(args.k, coloring, max_len=args.max_len)
        if out.status != "found":
            print(f"exhausted after {out.checked} words")
            return EXIT_NEGATIVE
        print(f"witness word: {format_word(out.word)}")
        print("progression: " + " ".join(str(m) for m in out.progression))
        print(f"color: {out.color}")
        if args.cert_dir:
            os.makedirs(args.cert_dir, exist_ok=True)
            ws = WordSemigroup(args.k)
            outcome = WitnessOutcome(
                "found",
                out.word,
                substitution_family(ws).images(out.word),
                out.color,
                out.checked,
            )
            cert = words_witness_certificate(ws, coloring, outcome, reduction="vdw")
            path = os.path.join(args.cert_dir, f"vdw-viahj-k{args.k}.cert")
            save_certificate(cert, path)
            print(f"certificate: {path}")
        return EXIT_OK
    symmetry = () if args.no_symmetry else ("color", "reflection")
    result = vdw_number(
        args.k,
        args.r,
        args.max_M,
        budget_nodes=args.budget_nodes,
        budget_seconds=args.budget_seconds,
        symmetry=symmetry,
        threads=args.threads,
    )
    return _number_common(
        args,
        result,
        f"W({args.k},{args.r})",
        lambda M, res: vdw_coloring_certificate(args.k, M, args.r, res),
        "M",
    )


# -- ultra ----------------------------------------------------------------


def cmd_ultra_check_prop(args):
    ks = (args.k,)
    if args.semigroup:
        try:
            S, _, _ = _load_structures(args.semigroup)
        except (TableParseError, OSError) as e:
            print(f"parse error: {e}")
            return EXIT_INPUT
        try:
            report = sweep_semigroups([S], ks=ks)
        except CarrierTooLarge as e:
            print(f"carrier too large: {e}")
            return EXIT_INPUT
        scope = f"semigroup {args.semigroup}"
    else:
        entries = generate_corpus(
            count=args.count, max_order=args.corpus_order, seed=args.seed
        )
        report = sweep_tensor_power(entries, ks=ks)
        scope = f"corpus of {report.semigroups} semigroups (seed {args.seed})"
    print(
        f"checked {scope}: {report.endomorphisms} homomorphisms, "
        f"{report.checks} (h, V, k) checks, {len(report.failures)} failures"
    )
    for f in report.failures[:5]:
        print(
            f"  failure: entry {f.entry_index} h={f.endomorphism} k={f.k} "
            f"V@{f.v_point} subset mask {f.subset_mask:#x}"
        )
    print(f"tensor-power identity: {_pass() if report.ok else _fail()}")
    return EXIT_OK if report.ok else EXIT_NEGATIVE


def cmd_ultra_lemma2(args):
    try:
        S, view, family = _load_structures(args.semigroup, need_family=True)
    except (TableParseError, OSError) as e:
        print(f"parse error: {e}")
        return EXIT_INPUT
    nice = is_nice_subsemigroup(S, view)
    if not nice:
        print(f"T is not a nice subsemigroup: {nice.describe()}")
        return EXIT_INPUT
    try:
        report = check_lemma2_equivalence(S, family, args.colors)
    except SearchSpaceTooLarge as e:
        print(f"search space too large: {e}")
        return EXIT_INPUT
    a_note = (
        f"true (witness for the constant coloring: {S.element_name(report.a_first_witness)})"
        if report.a_holds
        else f"false (coloring {report.a_counterexample} has no witness)"
    )
    b_note = (
        f"true (agreement point {S.element_name(report.b_point_in_r)})"
        if report.b_holds
        else "false (no agreement point in R)"
    )
    print(f"(a) every {report.r}-coloring has a monochromatic image set: {a_note}")
    print(f"(b) agreement ultrafilter with point in R: {b_note}")
    print(
        f"colorings checked: {report.colorings_checked}; "
        f"equivalent: {'yes' if report.equivalent else 'NO'}"
    )
    return EXIT_OK if report.equivalent else EXIT_NEGATIVE


def cmd_ultra_corpus(args):
    ks = tuple(int(k) for k in args.k.split(","))
    entries = generate_corpus(count=args.count, max_order=args.max_order, seed=args.seed)
    report = sweep_tensor_power(entries, ks=ks)
    print(
        f"corpus: {report.semigroups} transformation semigroups "
        f"(max order {args.max_order}, seed {args.seed})"
    )
    print(
        f"endomorphisms: {report.endomorphisms}; checks: {report.checks}; "
        f"failures: {len(report.failures)}"
    )
    print(f"tensor-power identity: {_pass() if report.ok else _fail()}")
    return EXIT_OK if report.ok else EXIT_NEGATIVE


# -- verify ---------------------------------------------------------------


def cmd_verify(path):
    if not os.path.exists(path):
        print(f"no such certificate: {path}")
        return EXIT_INPUT
    with open(path) as fh:
        ok, message = verify_certificate_text(fh.read())
    print(f"{path}: {_pass() if ok else _fail()} ({message})")
    return EXIT_OK if ok else EXIT_NEGATIVE


# -- parser ---------------------------------------------------------------


def build_parser():
    parser = argparse.ArgumentParser(
        prog="hjlab",
        description="Semigroup retraction structures, ultrafilter identity "
        "checks, and monochromatic-witness search at desk scale.",
    )
    parser.add_argument(
        "--verify", metavar="CERT", help="re-check a certificate file and exit"
    )
    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("validate", help="validate a semigroup file")
    p.add_argument("semigroup")

    p = sub.add_parser("witness", help="search for a monochromatic image set")
    p.add_argument("--hj", action="store_true", help="word-semigroup instance")
    p.add_argument("--alphabet", type=int, default=2)
    p.add_argument("--variables", type=int, default=1)
    p.add_argument("--max-len", type=int, default=8)
    p.add_argument("--semigroup", help="finite instance from a semigroup file")
    p.add_argument("--coloring", required=True, help="mod:<r> | table:<path> | apres:<r>")
    p.add_argument("-o", "--output", help="certificate output path")

    p = sub.add_parser("hj", help="Hales-Jewett number by backtracking")
    p.add_argument("-n", type=int, required=True, help="alphabet size")
    p.add_argument("-r", type=int, required=True, help="number of colors")
    p.add_argument("--max-N", type=int, required=True)
    p.add_argument("--budget-nodes", type=int, default=DEFAULT_NODE_BUDGET)
    p.add_argument("--budget-seconds", type=float, default=DEFAULT_TIME_BUDGET)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--no-symmetry", action="store_true")
    p.add_argument("--cert-dir", help="write SAT coloring certificates here")

    p = sub.add_parser("vdw", help="van der Waerden number by backtracking")
    p.add_argument("-k", type=int, required=True, help="progression length")
    p.add_argument("-r", type=int, default=2, help="number of colors")
    p.add_argument("--max-M", type=int, default=0)
    p.add_argument("--budget-nodes", type=int, default=DEFAULT_NODE_BUDGET)
    p.add_argument("--budget-seconds", type=float, default=DEFAULT_TIME_BUDGET)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--no-symmetry", action="store_true")
    p.add_argument("--cert-dir", help="write SAT coloring certificates here")
    p.add_argument("--via-hj", action="store_true", help="cross-validate the reduction")
    p.add_argument("--coloring", help="integer coloring for --via-hj (default apres:r)")
    p.add_argument("--max-len", type=int, default=8, help="word budget for --via-hj")

    p = sub.add_parser("ultra", help="ultrafilter identity checks")
    usub = p.add_subparsers(dest="ultra_command")

    q = usub.add_parser("check-prop", help="tensor-power identity sweep")
    q.add_argument("--semigroup", help="check one semigroup file")
    q.add_argument("--corpus-order", type=int, default=6, help="corpus max order")
    q.add_argument("--count", type=int, default=50, help="corpus size")
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--k", type=int, default=2, choices=(2, 3))

    q = usub.add_parser("lemma2", help="agreement equivalence on a finite semigroup")
    q.add_argument("--semigroup", required=True)
    q.add_argument("--colors", type=int, default=2)

    q = usub.add_parser("corpus", help="seeded corpus sweep, both k values")
    q.add_argument("--count", type=int, default=50)
    q.add_argument("--max-order", "--order", type=int, default=6, dest="max_order")
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--k", default="2,3", help="comma-separated k values")

    p = sub.add_parser("verify", help="re-check a certificate file")
    p.add_argument("certificate")

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.verify:
        return cmd_verify(args.verify)
    if args.command == "validate":
        return cmd_validate(args)
    if args.command == "witness":
        if bool(args.hj) == bool(args.semigroup):
            print("choose exactly one of --hj or --semigroup")
            return EXIT_INPUT
        try:
            return cmd_witness(args)
        except HjlabError as e:
            print(f"error: {e}")
            return EXIT_INPUT
    if args.command == "hj":
        return cmd_hj(args)
    if args.command == "vdw":
        if not args.via_hj and args.max_M < 1:
            print("--max-M is required unless --via-hj is given")
            return EXIT_INPUT
        return cmd_vdw(args)
    if args.command == "ultra":
        if args.ultra_command == "check-prop":
            return cmd_ultra_check_prop(args)
        if args.ultra_command == "lemma2":
            return cmd_ultra_lemma2(args)
        if args.ultra_command == "corpus":
            return cmd_ultra_corpus(args)
        parser.parse_args(["ultra", "--help"])
        return EXIT_INPUT
    if args.command == "verify":
        return cmd_verify(args.certificate)
    parser.print_help()
    return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
