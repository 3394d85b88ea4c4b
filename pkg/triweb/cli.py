"""
triweb command line

  diffset       verify | standardize | singer
  presentation  builtin | degenerate | build | verify | export
  functor       check | emit
  ybe           involutivity, Yang-Baxter equation and density of R̂
  visualize     incidence graph or R̂ sparsity pattern to an image

Reports are JSON on stdout (or --out). Exit codes: 0 success, 1 checks
failed, 2 usage or validation error.
"""

import argparse
import json
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path

from triweb import __version__
from triweb.config import get_default_config, merge_config, setup_logging
from triweb.diffset import (DifferenceSet, presentation_from_difference_set, singer_difference_set,
                            standardize, verify_planar_difference_set)
from triweb.errors import PreconditionError, TriwebError, ValidationError
from triweb.fixtures import resolve_presentation
from triweb.presentation import (builtin_exotic_15_1, degenerate, import_json, to_dict,
                                 verify_axioms, verify_condition_6_variants)
from triweb.webfun import RELATIONS, make_context, run_full_suite
from triweb.ybe import rhat, summary

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_FAILED, EXIT_ERROR = 0, 1, 2


@dataclass
class CommandResult:
    exit_code: int
    payload: object = field(default=None)
    # plain text (coordinate matrices) instead of JSON
    text: str = None


def _ints(text):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as e:
        raise ValidationError(f"expected comma-separated integers, got '{text}'") from e


# -- diffset --

def cmd_diffset(args, config):
    if args.action == "verify":
        report = verify_planar_difference_set(args.N, _ints(args.D))
        return CommandResult(EXIT_OK if report.valid else EXIT_FAILED, report.to_dict())
    if args.action == "standardize":
        dset = standardize(args.N, args.q, _ints(args.D))
        return CommandResult(EXIT_OK, dset.to_dict())
    dset = singer_difference_set(args.q)
    return CommandResult(EXIT_OK, dset.to_dict())


# -- presentation --

def _read_input(path):
    if path in (None, "-"):
        return sys.stdin.read()
    return Path(path).read_text()


def _verification_payload(tp, workers):
    report = verify_axioms(tp, workers=workers)
    payload = {"summary": tp.summary(), "axioms": report.to_dict()}
    ok = report.passed
    try:
        variants = verify_condition_6_variants(tp)
        payload["variants"] = {r.condition: r.passed for r in variants}
        ok = ok and all(r.passed for r in variants)
    except PreconditionError as e:
        payload["variants"] = str(e)
    return ok, payload


def cmd_presentation(args, config):
    if args.action == "builtin":
        if args.name != "15.1":
            raise ValidationError(f"no built-in presentation '{args.name}'")
        return CommandResult(EXIT_OK, to_dict(builtin_exotic_15_1()))
    if args.action == "degenerate":
        return CommandResult(EXIT_OK, to_dict(degenerate(args.N)))
    if args.action == "build":
        try:
            record = json.loads(_read_input(args.from_diffset))
        except json.JSONDecodeError as e:
            raise ValidationError(f"difference set file is not JSON: {e}") from e
        dset = DifferenceSet.from_dict(record)
        return CommandResult(EXIT_OK, to_dict(presentation_from_difference_set(dset.N, dset.q, dset.D)))
    if args.action == "export":
        return CommandResult(EXIT_OK, to_dict(resolve_presentation(args.presentation)))
    tp = import_json(_read_input(args.input))
    ok, payload = _verification_payload(tp, config['suite']['workers'])
    return CommandResult(EXIT_OK if ok else EXIT_FAILED, payload)


# -- functor --

def _parse_emit(text):
    kind, _, labels = text.partition(":")
    labels = _ints(labels)
    if kind not in ("merge", "split", "crossing") or len(labels) != 2:
        raise ValidationError(f"--emit takes merge:a,b | split:a,b | crossing:a,b, got '{text}'")
    return kind, labels


def cmd_functor(args, config):
    tp = resolve_presentation(args.presentation)
    ctx = make_context(tp, args.char, override=args.override_hypotheses)
    if args.action == "emit":
        kind, (a, b) = _parse_emit(args.emit)
        matrix = getattr(ctx, kind)(a, b)
        return CommandResult(EXIT_OK, text=matrix.to_coo_text())
    relations = config['suite']['relations']
    if relations:
        unknown = [r for r in relations if r not in RELATIONS]
        if unknown:
            raise ValidationError(f"unknown relations {unknown}; choose from {RELATIONS}")
    suite = run_full_suite(ctx, max_label=config['suite']['max_label'], relations=relations,
                           workers=config['suite']['workers'])
    return CommandResult(EXIT_OK if suite.passed else EXIT_FAILED, suite.to_dict())


# -- ybe --

def cmd_ybe(args, config):
    tp = resolve_presentation(args.presentation)
    ctx = make_context(tp, args.char, override=args.override_hypotheses)
    sol = rhat(ctx)
    if args.emit_rhat:
        Path(args.emit_rhat).write_text(sol.matrix.to_coo_text())
    report = summary(sol)
    checks = [v for k, v in report.items() if isinstance(v, bool) or v is None]
    ok = all(v is not False for v in checks)
    return CommandResult(EXIT_OK if ok else EXIT_FAILED, report)


# -- visualize --

def cmd_visualize(args, config):
    from triweb.visualizer import PresentationVisualizer

    tp = resolve_presentation(args.presentation)
    viz = PresentationVisualizer(tp)
    if args.kind == "incidence":
        viz.show_incidence(args.out)
    else:
        ctx = make_context(tp, args.char, override=args.override_hypotheses)
        viz.show_rhat_sparsity(rhat(ctx), args.out)
    return CommandResult(EXIT_OK, {"written": args.out, "kind": args.kind})


# -- parser --

def build_parser():
    parser = argparse.ArgumentParser(
        prog="triweb",
        description="Triangle presentations, web fiber functors and Yang-Baxter checks",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  triweb diffset standardize --N 21 --q 4 --D 0,1,4,14,16
  triweb presentation builtin --name 15.1 | triweb presentation verify
  triweb functor check --presentation builtin:15.1 --char 2
  triweb functor emit --presentation builtin:15.1 --char 2 --emit crossing:1,1 --out rhat.coo
  triweb ybe --presentation degenerate:4 --char 0
        """
    )
    parser.add_argument('--version', action='version', version=f"triweb {__version__}")
    parser.add_argument('--log-level', help='Logging level (DEBUG, INFO, WARNING, ...)')
    parser.add_argument('-v', '--verbose', action='store_true', help='Shorthand for --log-level INFO')
    parser.add_argument('--indent', type=int, help='JSON indentation (default: 2)')
    sub = parser.add_subparsers(dest='command', required=True)

    def leaf(subs, name, help, out_required=False):
        p = subs.add_parser(name, help=help)
        p.add_argument('--out', required=out_required, help='Output file (default: stdout)')
        return p

    def presentation_flags(p, char_required=True):
        p.add_argument('--presentation', required=True,
                       help='builtin:15.1 | fano | singer:Q | diffset:N:Q:D | degenerate:N | FILE')
        p.add_argument('--char', type=int, required=char_required, default=0,
                       help='Characteristic p (0 for the rationals)')
        p.add_argument('--override-hypotheses', action='store_true',
                       help='Proceed although p >= n-1 and q = 1 mod p do not hold')

    diffset = sub.add_parser('diffset', help='Planar difference sets')
    dsub = diffset.add_subparsers(dest='action', required=True)
    p = leaf(dsub, 'verify', help='Check the planar difference property')
    p.add_argument('--N', type=int, required=True)
    p.add_argument('--D', required=True, help='Comma-separated residues')
    p = leaf(dsub, 'standardize', help='Translate to the zero-sum representative')
    p.add_argument('--N', type=int, required=True)
    p.add_argument('--q', type=int, required=True)
    p.add_argument('--D', required=True, help='Comma-separated residues')
    p = leaf(dsub, 'singer', help='Singer difference set for a prime power q')
    p.add_argument('--q', type=int, required=True)

    pres = sub.add_parser('presentation', help='Build, verify and export presentations')
    psub = pres.add_subparsers(dest='action', required=True)
    p = leaf(psub, 'builtin', help='Built-in presentation')
    p.add_argument('--name', default='15.1')
    p = leaf(psub, 'degenerate', help='Powerset presentation on N points')
    p.add_argument('--N', type=int, required=True)
    p = leaf(psub, 'build', help='Presentation from a difference-set JSON record')
    p.add_argument('--from-diffset', required=True, help='File ("-" for stdin)')
    p = leaf(psub, 'verify', help='Six conditions plus the 6′/6″ variants')
    p.add_argument('--in', dest='input', help='Presentation JSON (default: stdin)')
    p.add_argument('--workers', type=int)
    p = leaf(psub, 'export', help='Serialise any named presentation')
    p.add_argument('--presentation', required=True)

    functor = sub.add_parser('functor', help='Fiber functor matrices and relation suite')
    fsub = functor.add_subparsers(dest='action', required=True)
    p = leaf(fsub, 'check', help='Run the relation suite')
    presentation_flags(p)
    p.add_argument('--relations', help=f"Comma-separated subset of {','.join(RELATIONS)}")
    p.add_argument('--max-label', type=int)
    p.add_argument('--workers', type=int)
    p = leaf(fsub, 'emit', help='Write a generator matrix in coordinate format')
    presentation_flags(p)
    p.add_argument('--emit', required=True, help='merge:a,b | split:a,b | crossing:a,b')

    p = leaf(sub, 'ybe', help='Involutivity, Yang-Baxter equation and density of R̂')
    presentation_flags(p)
    p.add_argument('--emit-rhat', help='Also write R̂ in coordinate format to this file')

    p = leaf(sub, 'visualize', 'Plot incidence graph or R̂ sparsity', out_required=True)
    presentation_flags(p, char_required=False)
    p.add_argument('--kind', choices=['incidence', 'rhat'], default='incidence')

    return parser


COMMANDS = {
    'diffset': cmd_diffset,
    'presentation': cmd_presentation,
    'functor': cmd_functor,
    'ybe': cmd_ybe,
    'visualize': cmd_visualize,
}


def config_from_args(args):
    overrides = {
        'suite': {
            'max_label': getattr(args, 'max_label', None),
            'workers': getattr(args, 'workers', None),
            'relations': _relation_list(getattr(args, 'relations', None)),
        },
        'output': {'indent': args.indent},
        'debug': {},
    }
    if args.log_level or args.verbose:
        overrides['debug'] = {'enable_logging': True, 'log_level': args.log_level or 'INFO'}
    return merge_config(get_default_config(), overrides)


def _relation_list(text):
    if not text:
        return None
    return [r.strip() for r in text.split(",") if r.strip()]


def write_result(result, args, config):
    if result.text is not None:
        out = result.text
    else:
        out = json.dumps(result.payload, indent=config['output']['indent'],
                         sort_keys=config['output']['sort_keys'], ensure_ascii=False) + "\n"
    target = getattr(args, 'out', None)
    if target and args.command != 'visualize':
        Path(target).write_text(out)
    else:
        sys.stdout.write(out)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    config = config_from_args(args)
    setup_logging(config)
    try:
        result = COMMANDS[args.command](args, config)
        write_result(result, args, config)
        return result.exit_code
    except KeyboardInterrupt:
        print("\nInterrupted by user.", file=sys.stderr)
        return EXIT_ERROR
    except (TriwebError, OSError) as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_ERROR
    except Exception as e:
        logger.debug("unexpected failure", exc_info=True)
        print(f"Error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_ERROR
