"""Command line: info / euler / tevelev / gw / verify on one Fano complete intersection."""
import argparse
import logging
import sys
from typing import Any, Dict, List, Optional

from .errors import IdentityCheckError, QEulerError, ValidationError
from .euler import euler_closed, euler_constructive, euler_shifted
from .gw import DescendantKey
from .qring import magic_top_coefficients
from .render import FORMATS, breakdown_block, document, element_block, error_document, format_rational, render
from .session import Session, open_session
from .tevelev import evaluate, make_query, valid_queries
from .verify import IdentitySuite

logger = logging.getLogger(__name__)

LOG_LEVELS = ('DEBUG', 'INFO', 'WARNING', 'ERROR')


def parse_degrees(text: str) -> List[int]:
    try:
        return [int(part) for part in text.split(',') if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f'degrees must be comma-separated integers, got {text!r}')


class ArgumentParser(argparse.ArgumentParser):
    """Reports malformed arguments as ValidationError instead of exiting with usage text."""

    def error(self, message):
        raise ValidationError(f'{self.prog}: {message}')


def build_parser() -> argparse.ArgumentParser:
    common = ArgumentParser(add_help=False)
    common.add_argument('--dim', type=int, required=True, help='Dimension r of X')
    common.add_argument('--degrees', type=parse_degrees, required=True, help='Degrees m1,m2,... of the defining equations')
    common.add_argument('--format', choices=FORMATS, default='json', help='Output format (json is canonical)')
    common.add_argument('--cache', default=None, help='JSON file holding GW invariants across runs')
    common.add_argument('--log-level', choices=LOG_LEVELS, default='WARNING', help='Log level for stderr')

    parser = ArgumentParser(
        prog='qeuler',
        description='Quantum Euler classes and virtual Tevelev degrees of Fano complete intersections',
    )
    sub = parser.add_subparsers(dest='command', required=True)

    sub.add_parser('info', parents=[common], help='Invariants of X')

    euler = sub.add_parser('euler', parents=[common], help='Quantum Euler class E')
    euler.add_argument('--both', action='store_true', help='Also emit the constructive route E = Gamma + E\'')

    tevelev = sub.add_parser('tevelev', parents=[common], help='Virtual Tevelev degree')
    tevelev.add_argument('--genus', type=int, required=True, help='Genus g >= 0')
    tevelev.add_argument('--points', type=int, required=True, help='Number of marked points n >= 1')

    gw = sub.add_parser('gw', parents=[common], help='Descendant and alpha tables')
    gw.add_argument('--k', type=int, default=None, help='Largest curve degree (default floor((r+1)/d))')

    verify = sub.add_parser('verify', parents=[common], help='Run every identity check')
    verify.add_argument('--max-genus', type=int, default=2)
    verify.add_argument('--max-points', type=int, default=4)
    verify.add_argument('--workers', type=int, default=4, help='Threads for independent Tevelev queries')
    return parser


def cmd_info(session: Session, args) -> Dict[str, Any]:
    space = session.space
    return {
        'top_coefficients': [format_rational(c) for c in magic_top_coefficients(space)],
        'tevelev_queries': [{'g': q.g, 'n': q.n, 'k': q.k} for q in valid_queries(space)],
    }


def cmd_euler(session: Session, args) -> Dict[str, Any]:
    closed = euler_closed(session.hstar, session.table)
    payload = {'E': element_block(closed)}
    if session.space.borderline:
        payload['E_shifted'] = element_block(euler_shifted(session.hstar, session.table))
    if args.both:
        constructive = euler_constructive(session.hstar, session.table)
        payload['E_constructive'] = element_block(constructive)
        payload['routes_agree'] = constructive == closed
    return payload


def cmd_tevelev(session: Session, args) -> Dict[str, Any]:
    query = make_query(session.space, args.genus, args.points)
    session.table.grow(query.k)
    return breakdown_block(evaluate(session.hstar, session.table, query))


def cmd_gw(session: Session, args) -> Dict[str, Any]:
    space, table = session.space, session.table
    if args.k is not None:
        if args.k < 1:
            raise ValidationError(f'--k must be positive, got {args.k}')
        table.grow(args.k)
    k_max = args.k or table.k_max
    alphas = []
    for k in range(1, k_max + 1):
        for s in range(space.r + 1):
            alphas.append({'k': k, 's': s, 'value': format_rational(table.alpha(k, s))})
    descendants = {}
    for k in range(1, k_max + 1):
        for a in range(space.r + k * space.d):
            for i in range(space.r + 1):
                j = space.r + k * space.d - 1 - a - i
                if 0 <= j <= space.r:
                    key = DescendantKey(k, a, i)
                    descendants[key.as_string()] = format_rational(table.descendant(key))
    return {
        'k_max': k_max,
        'alpha': alphas,
        'descendants': descendants,
        'loaded_from_cache': session.loaded_entries,
    }


def cmd_verify(session: Session, args) -> Dict[str, Any]:
    if args.workers < 1:
        raise ValidationError(f'--workers must be positive, got {args.workers}')
    suite = IdentitySuite(session, max_genus=args.max_genus, max_points=args.max_points, max_workers=args.workers)
    return suite.run().as_dict()


COMMANDS = {
    'info': cmd_info,
    'euler': cmd_euler,
    'tevelev': cmd_tevelev,
    'gw': cmd_gw,
    'verify': cmd_verify,
}


def fail(error: QEulerError, fmt: str = 'json') -> int:
    sys.stdout.write(render(error_document(error.kind, str(error)), fmt))
    return error.exit_code


def parse_args(argv: Optional[List[str]] = None) -> argparse.Namespace:
    return build_parser().parse_args(argv)


def execute(args: argparse.Namespace) -> int:
    """Run one parsed command, print its document to stdout and return the exit code."""
    try:
        session = open_session(args.dim, args.degrees, cache=args.cache)
        payload = COMMANDS[args.command](session, args)
        session.save()
    except QEulerError as e:
        logger.error(f"{args.command} failed ({e.kind}): {e}")
        return fail(e, args.format)

    sys.stdout.write(render(document(args.command, session.space, payload), args.format))
    if args.command == 'verify' and not payload['passed']:
        return IdentityCheckError.exit_code
    return 0


def run(argv: Optional[List[str]] = None) -> int:
    try:
        args = parse_args(argv)
    except ValidationError as e:
        return fail(e)
    return execute(args)


def main():
    try:
        args = parse_args()
    except ValidationError as e:
        sys.exit(fail(e))
    logging.basicConfig(level=args.log_level, stream=sys.stderr,
                        format='%(asctime)s %(levelname)s %(name)s: %(message)s')
    sys.exit(execute(args))


if __name__ == '__main__':
    main()
