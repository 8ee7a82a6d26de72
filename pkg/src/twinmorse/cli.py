"""
Command line interface for the verification suites.

Copyright (c) 2025 Max Qian <astro_air@126.com>
Available under the terms of MIT license
"""

import sys
from optparse import OptionParser

from .api import complex_fromfile
from .constants import SUITES, __version__
from .errors import ComplexFormatError, TwinMorseError, UnsupportedType
from .homology import reduced_homology
from .logging_utils import setdebug, setverbosity
from .report import canonical_json, emit_report
from .suites import SuiteConfig, run_suite


def _write(text: str, path: str) -> None:
    try:
        with open(path, "w", encoding="ascii", newline="\n") as fp:
            fp.write(text)
    except OSError as e:
        sys.stderr.write("cannot write report %s: %s\n" % (path, e))
        sys.exit(3)


def main() -> None:
    """Entry point of the ``twinmorse`` command.

    Runs one verification suite and prints or writes its JSON report, or
    computes the reduced homology of a complex given as JSON.

    Usage Examples:
        # Zonotope battery with 200 seeded instances
        twinmorse --suite zonotopes --trials 200 --seed 42

        # Horizontal links in a product window, report to a file
        twinmorse --suite horolinks --type "A~1xA~2" --radius 2 --report out.json

        # Betti numbers of a complex
        twinmorse --homology complex.json

    Exit Codes:
        0: Every check passed
        1: At least one check failed
        2: Usage error or invalid configuration
        3: The report could not be written
    """
    opt = OptionParser(
        usage="1. %prog [options] --suite NAME\n"
        "       2. %prog [options] --homology complex.json",
        version="twinmorse %s" % __version__,
    )
    opt.add_option(
        "-q",
        "--quiet",
        action="store_const",
        dest="verbosity",
        const=0,
        help="print only warnings and errors",
        default=1,
    )
    opt.add_option(
        "-v",
        "--verbose",
        action="store_const",
        dest="verbosity",
        const=2,
        help="be verbose",
    )
    opt.add_option("--debug", action="store_true", dest="debugmode", help="debug mode")
    opt.add_option(
        "--suite",
        type="choice",
        choices=list(SUITES),
        metavar="NAME",
        help="suite to run: %s" % ", ".join(SUITES),
    )
    opt.add_option("--type", dest="label", metavar="T", help="affine type, e.g. A~1xA~2")
    opt.add_option("--radius", metavar="R", help="window radius, integer or p/q")
    opt.add_option(
        "--q", type="int", metavar="Q", help="field size of the extra flag building"
    )
    opt.add_option("--seed", type="int", metavar="N", help="random seed")
    opt.add_option("--trials", type="int", metavar="N", help="random instances per check")
    opt.add_option("--report", metavar="PATH", help="write the JSON report to PATH")
    opt.add_option(
        "--strict-window",
        action="store_true",
        dest="strict_window",
        default=False,
        help="do not enlarge the window for Morse depths",
    )
    opt.add_option(
        "--timing",
        action="store_true",
        default=False,
        help="add the wall time in milliseconds to the report",
    )
    opt.add_option(
        "--homology", metavar="FILE", help="print the reduced homology of a JSON complex"
    )
    (options, args) = opt.parse_args()

    if args:
        opt.error("unexpected arguments: %s" % " ".join(args))
    if not options.suite and not options.homology:
        opt.print_version()
        opt.print_help()
        sys.exit()

    setverbosity(options.verbosity)
    if options.debugmode:
        setdebug()  # this sets global debugmode variable

    if options.homology:
        try:
            complex_ = complex_fromfile(options.homology)
        except (OSError, TwinMorseError) as e:
            opt.error("cannot read complex %s: %s" % (options.homology, e))
        text = canonical_json(reduced_homology(complex_).to_json())
        if options.report:
            _write(text, options.report)
        else:
            sys.stdout.write(text)
        sys.exit(0)

    try:
        config = SuiteConfig.defaults(
            options.suite,
            label=options.label,
            radius=options.radius,
            q=options.q,
            seed=options.seed,
            trials=options.trials,
            strict_window=options.strict_window,
        )
    except (ValueError, TwinMorseError) as e:
        opt.error(str(e))
    try:
        report = run_suite(options.suite, config)
    except (UnsupportedType, ComplexFormatError) as e:
        opt.error(str(e))
    except TwinMorseError as e:
        sys.exit("suite %s aborted: %s" % (options.suite, e))

    if options.report:
        try:
            emit_report(report, options.report, options.timing)
        except OSError as e:
            sys.stderr.write("cannot write report %s: %s\n" % (options.report, e))
            sys.exit(3)
    else:
        sys.stdout.write(canonical_json(report.to_json(options.timing)))
    sys.exit(0 if report.ok else 1)


if __name__ == "__main__":
    main()
