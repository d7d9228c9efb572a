"""
Command-line entry point: `qroots verify`, `qroots dump` and `qroots suites`.
"""

import argparse
import sys
from pathlib import Path
from typing import List, Optional

from .checks import default_collection
from .config import RunConfig, get_settings, load_config
from .errors import (
    ConfigError,
    NonReducedWordError,
    QrootsError,
    UnknownSuiteError,
    UnsupportedTypeError,
)
from .logging_config import get_logger, setup_logging
from .rootdata import build_root_datum
from .uqalg import QuantumGroup, format_element, parse_element

logger = get_logger(__name__)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_CONFIG = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qroots",
        description="Exact checks for quantum groups at roots of unity.",
    )
    parser.add_argument(
        "--log-level",
        default=None,
        help="structlog level for stderr output (default: QROOTS_LOG_LEVEL or INFO)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="run a verification suite")
    verify.add_argument("suite", help="registered suite name, see `qroots suites`")
    verify.add_argument("--config", required=True, help="key = value config file")
    verify.add_argument("--out", default=None, help="write the JSON report here")
    verify.add_argument(
        "--check",
        action="append",
        default=None,
        help="run only this check (repeatable)",
    )
    verify.add_argument(
        "--canonical",
        action="store_true",
        help="omit timings so identical runs give identical bytes",
    )

    dump = sub.add_parser("dump", help="print the canonical PBW form of an element")
    dump.add_argument("expr", help='element text, e.g. "e*f" or "E1(3)*k[a1]"')
    dump.add_argument("--config", required=True, help="key = value config file")
    dump.add_argument("--form", choices=["DK", "L"], default="DK",
                      help="read coordinates in the De Concini-Kac or Lusztig basis")

    sub.add_parser("suites", help="list registered suites and their checks")
    return parser


def _verify(args: argparse.Namespace) -> int:
    cfg = load_config(args.config)
    report = default_collection().run(args.suite, cfg, only=args.check)
    text = report.canonical_json() if args.canonical else report.to_json()
    out = args.out or cfg.output
    if out:
        Path(out).write_text(text + "\n", encoding="utf-8")
        failed = [c.name for c in report.checks if c.status.value == "fail"]
        print(f"{report.suite}: {'pass' if report.passed else 'fail'}"
              + (f" ({', '.join(failed)})" if failed else ""))
    else:
        print(text)
    return EXIT_PASS if report.passed else EXIT_FAIL


def _dump(args: argparse.Namespace) -> int:
    cfg: RunConfig = load_config(args.config)
    try:
        datum = build_root_datum(cfg.type, cfg.word0)
    except (NonReducedWordError, UnsupportedTypeError) as e:
        raise ConfigError(e.message) from e
    qg = QuantumGroup(datum, cfg.ht_bound)
    element = parse_element(args.expr, qg)
    print(format_element(element, args.form))
    return EXIT_PASS


def _suites(_: argparse.Namespace) -> int:
    for params in default_collection().to_params():
        print(f"{params['name']}: {params['description']}")
        for name in params["checks"]:
            print(f"  {name}")
    return EXIT_PASS


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    setup_logging(args.log_level or get_settings().log_level)
    handlers = {"verify": _verify, "dump": _dump, "suites": _suites}
    try:
        return handlers[args.command](args)
    except (ConfigError, UnknownSuiteError) as e:
        logger.error("Configuration rejected", error=e.message)
        print(f"error: {e.message}", file=sys.stderr)
        return EXIT_CONFIG
    except QrootsError as e:
        logger.error("Command failed", command=args.command, error=e.message)
        print(f"error: {e.message}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
