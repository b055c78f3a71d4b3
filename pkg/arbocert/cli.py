"""
Command line front end: ``arbocert <command> [options]``.

Exit codes follow the verdicts: 0 surjective, 1 criterion failed,
2 unknown, 3 invalid input or malformed flags.
"""
import argparse
import json
import sys

from .certify import EXIT_CODES, INVALID_INPUT, MODES, QUADRATIC, UNKNOWN
from .certify import Certificate, SurjectivityCertifier
from .discseq import EXACT_DEGREE_CAP
from .exact import to_rat
from .family import ConstructionError, FamilyConstructor, FamilyRecord
from .frobenius import ChebotarevScan
from .monodromy import (ASSUMED, MORSE, PATHS, MonodromyCertifier,
                        MonodromyReport)
from .poly import format_poly, parse_poly
from .treegroup import (ENUMERATION_CAP, character_products_distinct,
                        group_order, quadratic_character_count_bruteforce,
                        sample_cycle_types)

USAGE_ERROR = EXIT_CODES[INVALID_INPUT]

# flags whose values may start with '-'
_VALUE_FLAGS = ('--poly', '--t')


class _Parser(argparse.ArgumentParser):

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE_ERROR, f'{self.prog}: error: {message}\n')


def _write_json(data, path):
    if path == '-':
        json.dump(data, sys.stdout, indent=2)
        sys.stdout.write('\n')
    else:
        with open(path, 'w') as fh:
            json.dump(data, fh, indent=2)


def _cmd_certify(args):
    f = parse_poly(args.poly)
    certifier = SurjectivityCertifier(
        levels=args.levels, mode=args.mode, p=args.p, q=args.q,
        exact_degree_cap=args.exact_degree_cap, n_jobs=args.n_jobs,
        verbose=args.verbose)
    cert = certifier.certify(f, to_rat(args.t))
    print(f'f = {format_poly(f)}, t = {args.t}, mode = {args.mode}')
    for entry in cert.disc_classes:
        step = entry.get('step') or {}
        print(f"  level {entry['level']}: path {entry.get('path')}, "
              f"step {'PASS' if step.get('passed') else 'FAIL'}")
    print(f'verdict: {cert.verdict}')
    if cert.reason:
        print(f'reason: {cert.reason}')
    if args.json:
        _write_json(cert.to_dict(), args.json)
    return cert.exit_code


def _cmd_family(args):
    constructor = FamilyConstructor(seed=args.seed,
                                    certify_levels=args.certify_levels,
                                    verbose=args.verbose)
    try:
        record = constructor.construct(args.degree)
    except ConstructionError as exc:
        print(f'construction failed: {exc}')
        return EXIT_CODES[UNKNOWN]
    P = record.params
    print(f'd = {P.d}, p = {P.p}, k = {P.k}, u = {P.u}, q = {P.q}, '
          f'ell = {P.ell}, m = {P.m}, M = {P.M}')
    print(f'conditions (1)-(8): '
          f"{'all hold' if record.checklist.all_true else 'FAIL'}")
    print(f'big-local certificate: '
          f"{'accepted' if record.local.accepted else 'rejected'}")
    code = 0
    if record.certificate is not None:
        print(f'verdict: {record.certificate.verdict}')
        code = record.certificate.exit_code
    if args.out:
        _write_json(record.to_dict(), args.out)
    return code


def _cmd_monodromy(args):
    f = parse_poly(args.poly)
    certifier = MonodromyCertifier(
        levels=args.levels,
        hypothesis=ASSUMED if args.assume_big_galois else MORSE,
        pcf_cap=args.pcf_cap, path=args.path, verbose=args.verbose)
    report = certifier.certify(f)
    print(f'f = {format_poly(f)}, hypothesis evidence: {report.evidence}')
    if report.pcf is not None:
        print(f'critical orbit: {report.pcf.verdict} '
              f'(level {report.pcf.level})')
    for x in report.levels_checked:
        fresh = ', '.join(sorted(str(b.as_expr()) for b in x.fresh))
        print(f'  level {x.level}: fresh {{{fresh}}}')
    print(f'verdict: {report.verdict}')
    if args.json:
        _write_json(report.to_dict(), args.json)
    return report.exit_code


def _cmd_frobenius(args):
    f = parse_poly(args.poly)
    scan = ChebotarevScan(prime_bound=args.prime_bound,
                          n_samples=args.samples, n_jobs=args.n_jobs,
                          random_state=args.seed, verbose=args.verbose)
    scan.scan(f, to_rat(args.t), args.level)
    print(scan.report_.table.to_string())
    print(f'TV distance: {scan.tv_distance_:.4f}')
    print('TV distance by prime bound:')
    for bound, tv in scan.report_.tv_schedule().items():
        print(f'  {bound}: {tv:.4f}')
    if args.json:
        _write_json(scan.report_.to_dict(), args.json)
    return 0


def _cmd_group(args):
    order = group_order(args.arity, args.depth)
    print(f'|Aut(T_{args.depth})| for d = {args.arity}: {order}')
    if order <= ENUMERATION_CAP:
        count = quadratic_character_count_bruteforce(args.arity, args.depth)
        distinct = character_products_distinct(args.arity, args.depth)
        print(f'quadratic characters: {count}')
        print(f'products of level signs pairwise distinct: {distinct}')
    else:
        print(f'quadratic characters: not enumerated (order above '
              f'{ENUMERATION_CAP})')
    if args.samples:
        counts = sample_cycle_types(args.arity, args.depth, args.samples,
                                    random_state=args.seed)
        for ct, c in sorted(counts.items()):
            print(f'  {ct}: {c / args.samples:.4f}')
    return 0


def _cmd_replay(args):
    with open(args.file) as fh:
        data = json.load(fh)
    if 'params' in data:
        matches = FamilyRecord.from_dict(data).replay_matches()
    elif 'freshness' in data:
        matches = MonodromyReport.from_dict(data).replay_matches()
    else:
        matches = Certificate.from_dict(data).replay_matches()
    print(f"replay: {'identical' if matches else 'DIFFERS'}")
    return 0 if matches else 1


def build_parser():
    parser = _Parser(prog='arbocert',
                     description='Certify surjectivity of arboreal Galois '
                                 'representations.')
    sub = parser.add_subparsers(dest='command', required=True,
                                parser_class=_Parser)

    p = sub.add_parser('certify', help='certify (f, t) over Q')
    p.add_argument('--poly', required=True,
                   help='little-endian coefficients "1,0,1" or "x^2+1"')
    p.add_argument('--t', default='0')
    p.add_argument('--levels', type=int, default=3)
    p.add_argument('--mode', choices=MODES, default=QUADRATIC)
    p.add_argument('--p', type=int,
                   help='big-local primes; searched for when both are omitted')
    p.add_argument('--q', type=int)
    p.add_argument('--exact-degree-cap', type=int, default=EXACT_DEGREE_CAP)
    p.add_argument('--n-jobs', type=int)
    p.add_argument('--json', metavar='OUT')
    p.add_argument('--verbose', action='store_true')
    p.set_defaults(func=_cmd_certify)

    p = sub.add_parser('family', help='build a certified family member')
    p.add_argument('--degree', type=int, default=20)
    p.add_argument('--seed', type=int, default=0)
    p.add_argument('--certify-levels', type=int, default=3)
    p.add_argument('--out')
    p.add_argument('--verbose', action='store_true')
    p.set_defaults(func=_cmd_family)

    p = sub.add_parser('monodromy', help='iterated monodromy over Q(t)')
    p.add_argument('--poly', required=True)
    p.add_argument('--levels', type=int, default=3)
    p.add_argument('--assume-big-galois', action='store_true')
    p.add_argument('--pcf-cap', type=int, default=6)
    p.add_argument('--path', choices=sorted(PATHS), default='auto')
    p.add_argument('--json', metavar='OUT')
    p.add_argument('--verbose', action='store_true')
    p.set_defaults(func=_cmd_monodromy)

    p = sub.add_parser('frobenius', help='Chebotarev comparison')
    p.add_argument('--poly', required=True)
    p.add_argument('--t', default='0')
    p.add_argument('--level', type=int, default=1)
    p.add_argument('--prime-bound', type=int, default=10 ** 5)
    p.add_argument('--samples', type=int, default=10 ** 6)
    p.add_argument('--seed', type=int, default=0)
    p.add_argument('--n-jobs', type=int)
    p.add_argument('--json', metavar='OUT')
    p.add_argument('--verbose', action='store_true')
    p.set_defaults(func=_cmd_frobenius)

    p = sub.add_parser('group', help='facts about Aut(T_n)')
    p.add_argument('--arity', type=int, default=2)
    p.add_argument('--depth', type=int, default=3)
    p.add_argument('--samples', type=int, default=0)
    p.add_argument('--seed', type=int, default=0)
    p.set_defaults(func=_cmd_group)

    p = sub.add_parser('replay', help='re-verify a JSON artifact')
    p.add_argument('file')
    p.set_defaults(func=_cmd_replay)
    return parser


def _join_values(argv):
    # "--poly -2,0,1" would otherwise read -2,0,1 as a flag
    out = []
    it = iter(argv)
    for arg in it:
        if arg in _VALUE_FLAGS:
            value = next(it, None)
            out.append(arg if value is None else f'{arg}={value}')
        else:
            out.append(arg)
    return out


def run(argv=None):
    """Parse ``argv`` and run the command; returns the exit code."""
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_join_values(argv))
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else USAGE_ERROR
    try:
        return args.func(args)
    except ValueError as exc:
        print(f'arbocert: error: {exc}', file=sys.stderr)
        return USAGE_ERROR


def main():
    sys.exit(run())
