# main.py - Main entry point for the form class group toolkit
import argparse
import logging
import sys

from cache.cache_manager import CacheManager
from handlers.arithmetic_handler import ArithmeticHandler
from handlers.classgroup_handler import ClassGroupHandler
from handlers.minpoly_handler import MinpolyHandler
from utils.config import RunConfig
from utils.errors import FormClassError
from utils.helpers import dumps

logger = logging.getLogger("formclass")


class _Parser(argparse.ArgumentParser):
    """Usage errors exit with status 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("-v", "--verbose", action="count", default=0, help="-v for progress, -vv for debug")
    common.add_argument("--digits", type=int, help="decimal working precision (env FORMCLASS_DIGITS)")
    common.add_argument("--cache-dir", help="cache directory (env FORMCLASS_CACHE)")
    common.add_argument("--format", choices=["json", "text"], default="json")
    common.add_argument("--no-cache", action="store_true", help="neither read nor write the cache")
    common.add_argument("--factor-budget", type=float, help="seconds allowed for discriminant factorization")

    level = _Parser(add_help=False)
    level.add_argument("--level", type=int, required=True, help="the level N")
    level.add_argument("--subgroup", required=True, help="'trivial', 'full' or comma separated residues")

    parser = _Parser(prog="formclass", description="Form class groups of level N and their class invariants")
    sub = parser.add_subparsers(dest="command", required=True)

    cg = sub.add_parser("classgroup", parents=[common, level], help="enumerate C_{Gamma_G}(D, N)")
    cg.add_argument("--disc", type=int, required=True)
    cg.add_argument("--table", action="store_true", help="include the composition table")

    mp = sub.add_parser("minpoly", parents=[common, level], help="minimal polynomial over Q of the invariant")
    which = mp.add_mutually_exclusive_group(required=True)
    which.add_argument("--disc", type=int)
    which.add_argument("--n", type=int, help="use D = -4n")

    pr = sub.add_parser("primes", parents=[common, level], help="primes x^2 + ny^2 against the criterion")
    pr.add_argument("--n", type=int, required=True)
    pr.add_argument("--bound", type=int, required=True)

    kr = sub.add_parser("kronecker", parents=[common, level], help="check the Kronecker congruence at one prime")
    kr.add_argument("--disc", type=int, required=True)
    kr.add_argument("--prime", type=int, required=True)
    return parser


def configure_logging(verbosity):
    level = logging.WARNING if verbosity <= 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")


def main(argv=None, stdout=None):
    stdout = stdout or sys.stdout
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose)
    fmt = args.format
    try:
        config = RunConfig.from_args(args)

        # Initialize components
        cache_manager = CacheManager(config.cache_dir, enabled=config.use_cache)
        classgroup_handler = ClassGroupHandler(config, cache_manager)
        minpoly_handler = MinpolyHandler(config, cache_manager)
        arithmetic_handler = ArithmeticHandler(config, cache_manager, minpoly_handler)

        commands = {
            "classgroup": (classgroup_handler.handle_classgroup, classgroup_handler.render_text),
            "minpoly": (minpoly_handler.handle_minpoly, minpoly_handler.render_text),
            "primes": (arithmetic_handler.handle_primes, arithmetic_handler.render_primes_text),
            "kronecker": (arithmetic_handler.handle_kronecker, arithmetic_handler.render_kronecker_text),
        }
        handle, render = commands[args.command]
        payload, code = handle(args)
    except FormClassError as exc:
        logger.error("❌ %s", exc)
        if fmt == "json":
            stdout.write(dumps(exc.to_json()))
        return exc.exit_code
    except Exception:
        logger.exception("❌ internal error")
        return 3
    stdout.write(dumps(payload) if fmt == "json" else render(payload) + "\n")
    return code


# Application entry point
if __name__ == "__main__":
    sys.exit(main())
