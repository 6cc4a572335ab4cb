"""
Homsplit CLI
Command-line front end for the Thompson F, free-group endomorphism and pi_1(X, A) tools
"""

import argparse
import logging
import os
import sys
from typing import Callable, List, Optional, Tuple

from pydantic import ValidationError

import endo_split
import pi1_free
import thompson_f
import verification
from dyadic_pl import render_pl
from endo_split import ConjIdemWitness
from example_library import get_example_list, get_example_path
from settings import Settings, get_settings
from utils import (
    FormatError,
    load_text_file,
    parse_endo_text,
    parse_graph_text,
    parse_path,
    parse_word,
    render_endo,
    render_path,
    render_steps,
    render_word,
)
from word_core import Word

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3

# (report lines, verdict) where verdict is "ok", "fail" or "none"
Outcome = Tuple[List[str], str]

# every domain input error (FormatError, EndoError, GraphError, WordError, PLMapError,
# pydantic ValidationError) derives from ValueError
USAGE_ERRORS = (ValueError,)


# =============================
# Input helpers
# =============================


def _resolve(kind: str, name: str) -> str:
    # a path on disk wins; otherwise try the bundled examples by name
    if os.path.exists(name):
        return name
    return get_example_path(kind, name) or name


def _load_endo(name: str) -> Tuple[endo_split.FreeEndo, Optional[Word]]:
    return parse_endo_text(load_text_file(_resolve("endo", name)))


def _load_witness(name: str) -> ConjIdemWitness:
    f, x0 = _load_endo(name)
    if x0 is None:
        raise FormatError("this command needs an 'x0 = <word>' line in the endomorphism file")
    return ConjIdemWitness(f, x0)


def _load_graph(name: str) -> pi1_free.GraphComplex:
    return parse_graph_text(load_text_file(_resolve("graph", name)))


def _verdict(flag: bool) -> str:
    return "ok" if flag else "fail"


# =============================
# Thompson F commands
# =============================


def cmd_eq(args: argparse.Namespace) -> Outcome:
    u, v = parse_word(args.u), parse_word(args.v)
    equal = thompson_f.words_equal(u, v)
    return [f"normal form: {render_word(thompson_f.normal_form(u))}",
            f"normal form: {render_word(thompson_f.normal_form(v))}",
            f"equal: {str(equal).lower()}"], _verdict(equal)


def cmd_nf(args: argparse.Namespace) -> Outcome:
    return [render_word(thompson_f.normal_form(parse_word(args.word)))], "ok"


def cmd_pl(args: argparse.Namespace) -> Outcome:
    return render_pl(thompson_f.to_pl(parse_word(args.word))), "ok"


def cmd_verify_presentation(args: argparse.Namespace) -> Outcome:
    holds = thompson_f.verify_presentation(args.depth)
    return [f"convention: {thompson_f.COMPOSITION_CONVENTION}",
            f"relations up to a_{args.depth}: {'hold' if holds else 'fail'}"], _verdict(holds)


def cmd_verify_l31(args: argparse.Namespace) -> Outcome:
    holds = thompson_f.commuting_family_check(args.imax, args.bound)
    return [f"commuting family up to c_{args.imax}, exponents <= {args.bound}: "
            f"{'independent' if holds else 'relation found'}"], _verdict(holds)


def _form_lines(form: thompson_f.StandardForm) -> List[str]:
    return [f"i: {form.i}", f"n: {form.n}", f"b: {render_word(form.b)}",
            f"standard form: {render_word(thompson_f.render_standard_form(form))}"]


def cmd_standard_form(args: argparse.Namespace) -> Outcome:
    form = thompson_f.standard_form_check(parse_word(args.word))
    if form is None:
        return ["not literally in standard form"], "fail"
    return _form_lines(form), "ok"


def cmd_standard_form_search(args: argparse.Namespace) -> Outcome:
    found = thompson_f.standard_form_search(parse_word(args.word), args.radius)
    if found is None:
        return [f"no standard form within radius {args.radius}"], "none"
    conjugator, form = found
    return [f"conjugator: {render_word(conjugator)}", *_form_lines(form)], "ok"


def cmd_shift_check(args: argparse.Namespace) -> Outcome:
    holds = thompson_f.shift_idempotent_check(args.jmax)
    return [f"s^2(a_j) = a_0^-1 s(a_j) a_0 for j <= {args.jmax}: {str(holds).lower()}"], _verdict(holds)


# =============================
# Endomorphism commands
# =============================


def cmd_endo_check(args: argparse.Namespace) -> Outcome:
    f, x0 = _load_endo(args.file)
    x0 = x0 if x0 is not None else Word.identity()
    holds = endo_split.check_conj_idem(f, x0)
    return [f"f^2(x) = x0^-1 f(x) x0 with x0 = {render_word(x0, 'x')}: {str(holds).lower()}"], _verdict(holds)


def cmd_endo_verify_identity(args: argparse.Namespace) -> Outcome:
    wit = _load_witness(args.file)
    holds = endo_split.verify_conjugation_identity(wit, args.m, args.i, args.k, args.printed)
    exponent = f"{args.m}+({args.i}+1)*{args.k}" if args.printed else f"{args.m}+{args.k}"
    return [f"x_{args.i}^-{args.k} f^{args.m}(x) x_{args.i}^{args.k} = f^({exponent})(x): "
            f"{str(holds).lower()}"], _verdict(holds)


def cmd_endo_e_hom(args: argparse.Namespace) -> Outcome:
    wit = _load_witness(args.file)
    image = endo_split.e_hom(wit, parse_word(args.word))
    return [render_word(image, "x")], "ok"


def _split_lines(result: endo_split.SplitResult) -> List[str]:
    return [f"power: {result.power}",
            f"conjugator: {render_word(result.conjugator, 'x')}",
            *render_endo(result.idempotent)]


def cmd_endo_split(args: argparse.Namespace) -> Outcome:
    wit = _load_witness(args.file)
    result = endo_split.splitting_power(
        wit, args.i, args.k, parse_word(args.witness, "x"), bump=not args.no_bump
    )
    return _split_lines(result), "ok"


def cmd_endo_split_from_kernel(args: argparse.Namespace) -> Outcome:
    wit = _load_witness(args.file)
    return _split_lines(endo_split.kernel_witness_to_splitting(wit, parse_word(args.word))), "ok"


def cmd_endo_find_kernel(args: argparse.Namespace) -> Outcome:
    wit = _load_witness(args.file)
    found = endo_split.find_kernel_witness(wit, args.maxlen, args.maxindex)
    if found is None:
        return [f"no kernel element up to length {args.maxlen}"], "none"
    return [render_word(found)], "ok"


def cmd_endo_is_inner(args: argparse.Namespace) -> Outcome:
    f, _ = _load_endo(args.file)
    verdict = endo_split.inner_search(f, args.bound)
    lines = [f"reason: {verdict.reason}",
             f"definitive: {str(verdict.definitive).lower()}"]
    if verdict.conjugator is None:
        return lines, "fail" if verdict.definitive else "none"
    return [f"conjugator: {render_word(verdict.conjugator, 'x')}", *lines], "ok"


# =============================
# pi_1(X, A) commands
# =============================


def cmd_pi1_validate(args: argparse.Namespace) -> Outcome:
    valid = pi1_free.validate(_load_graph(args.file))
    return [f"valid: {str(valid).lower()}"], _verdict(valid)


def cmd_pi1_class(args: argparse.Namespace) -> Outcome:
    g = _load_graph(args.file)
    pi1_free.require_valid(g)
    c = pi1_free.class_of(g, parse_path(args.path, g))
    return [render_steps(c.steps)], "ok"


def cmd_pi1_product(args: argparse.Namespace) -> Outcome:
    g = _load_graph(args.file)
    pi1_free.require_valid(g)
    p = pi1_free.class_of(g, parse_path(args.p, g))
    q = pi1_free.class_of(g, parse_path(args.q, g))
    return [render_steps(pi1_free.rel_product(g, p, q).steps)], "ok"


def cmd_pi1_enumerate(args: argparse.Namespace) -> Outcome:
    g = _load_graph(args.file)
    pi1_free.require_valid(g)
    classes = pi1_free.enumerate_classes(g, args.maxlen)
    lines = [f"classes: {len(classes)}"]
    lines.extend(render_path(pi1_free.as_path(g, c)) for c in classes)
    return lines, "ok"


def cmd_pi1_iso_check(args: argparse.Namespace) -> Outcome:
    g = _load_graph(args.file)
    holds = pi1_free.basepoint_iso_check(g, args.x0, args.maxlen)
    return [f"pi_1(X, {args.x0}) -> pi_1(X, A) on length <= {args.maxlen}: "
            f"{'isomorphism' if holds else 'not an isomorphism'}"], _verdict(holds)


# =============================
# Suite and library commands
# =============================


def cmd_verify_all(args: argparse.Namespace) -> Outcome:
    results = verification.run_acceptance(args.profile, args.seed)
    return [result.line() for result in results], _verdict(all(r.passed for r in results))


def cmd_examples(args: argparse.Namespace) -> Outcome:
    lines = get_example_list(args.data_dir)
    return lines or ["no examples found"], "ok" if lines else "none"


# =============================
# Parser
# =============================


def _add(subparsers, name: str, handler: Optional[Callable[[argparse.Namespace], Outcome]], help_text: str):
    parser = subparsers.add_parser(name, help=help_text)
    parser.set_defaults(handler=handler)
    return parser


def build_parser(settings: Settings) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="homsplit",
        description="Exact tools for splitting homotopy idempotents: Thompson's group F, "
                    "free-group endomorphisms and pi_1(X, A) of graphs",
    )
    parser.add_argument("--seed", type=int, default=settings.seed, help="Seed for randomized suites")
    parser.add_argument("--log-level", default=settings.log_level,
                        choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"],
                        help="Logging level for stderr")
    verbs = parser.add_subparsers(dest="verb", required=True)

    p = _add(verbs, "eq", cmd_eq, "Decide equality of two F-words with both oracles")
    p.add_argument("u")
    p.add_argument("v")
    _add(verbs, "nf", cmd_nf, "Normal form of an F-word").add_argument("word")
    _add(verbs, "pl", cmd_pl, "Breakpoints of the PL map of an F-word").add_argument("word")
    p = _add(verbs, "verify-presentation", cmd_verify_presentation, "Check the relations of F in the PL model")
    p.add_argument("--depth", type=int, default=10)
    p = _add(verbs, "verify-l31", cmd_verify_l31, "Commuting, independent family c_i")
    p.add_argument("--imax", type=int, default=2)
    p.add_argument("--bound", type=int, default=2)
    _add(verbs, "standard-form", cmd_standard_form,
         "Read an F-word literally as a_i^n s^(i+1)(b)").add_argument("word")
    p = _add(verbs, "standard-form-search", cmd_standard_form_search,
             "Conjugate an F-word into a_i^n s^(i+1)(b)")
    p.add_argument("word")
    p.add_argument("--radius", type=int, default=settings.search_radius)
    p = _add(verbs, "shift-check", cmd_shift_check, "The shift is conjugate-idempotent with x0 = a0")
    p.add_argument("--jmax", type=int, default=8)

    endo = _add(verbs, "endo", None, "Free-group endomorphism commands")
    endo_verbs = endo.add_subparsers(dest="endo_verb", required=True)
    _add(endo_verbs, "check", cmd_endo_check, "Check f^2(x) = x0^-1 f(x) x0").add_argument("file")
    p = _add(endo_verbs, "verify-identity", cmd_endo_verify_identity, "Check x_i^-k f^m(x) x_i^k = f^(m+k)(x)")
    p.add_argument("file")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--printed", action="store_true", help="Use the exponent m+(i+1)k instead")
    p = _add(endo_verbs, "e-hom", cmd_endo_e_hom, "Image of an F-word under e")
    p.add_argument("file")
    p.add_argument("word")
    p = _add(endo_verbs, "split", cmd_endo_split, "Split f^n from x_i^k = f^(i+1)(v)")
    p.add_argument("file")
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--witness", required=True)
    p.add_argument("--no-bump", action="store_true", help="Keep i = 0 instead of moving to i = 1")
    p = _add(endo_verbs, "split-from-kernel", cmd_endo_split_from_kernel, "Split from a kernel element of e")
    p.add_argument("file")
    p.add_argument("word")
    p = _add(endo_verbs, "find-kernel", cmd_endo_find_kernel, "Search for a kernel element of e")
    p.add_argument("file")
    p.add_argument("--maxlen", type=int, default=4)
    p.add_argument("--maxindex", type=int, default=3)
    p = _add(endo_verbs, "is-inner", cmd_endo_is_inner, "Search for a with f(x) = a^-1 x a")
    p.add_argument("file")
    p.add_argument("--bound", type=int, default=settings.inner_bound)

    pi1 = _add(verbs, "pi1", None, "pi_1(X, A) commands")
    pi1_verbs = pi1.add_subparsers(dest="pi1_verb", required=True)
    _add(pi1_verbs, "validate", cmd_pi1_validate, "Check X connected and A a subtree").add_argument("file")
    p = _add(pi1_verbs, "class", cmd_pi1_class, "Canonical representative of a path")
    p.add_argument("file")
    p.add_argument("path")
    p = _add(pi1_verbs, "product", cmd_pi1_product, "Product of two classes")
    p.add_argument("file")
    p.add_argument("p")
    p.add_argument("q")
    p = _add(pi1_verbs, "enumerate", cmd_pi1_enumerate, "Classes up to a representative length")
    p.add_argument("file")
    p.add_argument("--maxlen", type=int, required=True)
    p = _add(pi1_verbs, "iso-check", cmd_pi1_iso_check, "pi_1(X, x0) -> pi_1(X, A) is an isomorphism")
    p.add_argument("file")
    p.add_argument("--x0", type=int, required=True)
    p.add_argument("--maxlen", type=int, required=True)

    p = _add(verbs, "verify-all", cmd_verify_all, "Run the acceptance suite")
    p.add_argument("--profile", choices=sorted(verification.PROFILES), default=settings.profile)
    p.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="Overrides the global --seed")
    p = _add(verbs, "examples", cmd_examples, "List bundled example inputs")
    p.add_argument("--data-dir", default=settings.data_dir)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """
    Parse arguments, run one verb and print its report

    Returns:
        int: 0 ok, 1 fail or not found, 2 usage error, 3 I/O error
    """
    try:
        settings = get_settings()
    except ValidationError as e:
        print(f"error: invalid HOMSPLIT_* setting: {str(e)}", file=sys.stderr)
        print("RESULT: fail")
        return EXIT_USAGE

    parser = build_parser(settings)
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        if e.code == 0:
            return EXIT_OK
        print("RESULT: fail")
        return EXIT_USAGE

    logging.basicConfig(
        level=args.log_level, stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s %(message)s",
    )
    try:
        thompson_f.ensure_presentation()
        lines, verdict = args.handler(args)
    except USAGE_ERRORS as e:
        print(f"error: {str(e)}", file=sys.stderr)
        print("RESULT: fail")
        return EXIT_USAGE
    except OSError as e:
        print(f"error: cannot read input: {str(e)}", file=sys.stderr)
        print("RESULT: fail")
        return EXIT_IO
    except (AssertionError, RuntimeError) as e:
        logger.error("[CLI] Internal check failed: %s", e)
        print(f"fault: {type(e).__name__}: {str(e)}")
        print("RESULT: fail")
        return EXIT_FAIL

    for line in lines:
        print(line)
    print(f"RESULT: {verdict}")
    return EXIT_OK if verdict == "ok" else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
