import argparse
import logging
import sys

from octabilliard.commands import (
    EXIT_CHECK_FAILED,
    EXIT_USAGE,
    CommandConfig,
    CommandName,
    FigureName,
    OutputFormat,
    UsageError,
    run_command,
)
from octabilliard.i18n import _, set_language
from octabilliard.renormalization import ComponentMeasurementError
from octabilliard.serialization import SeedSyntaxError, parse_seed
from octabilliard.settings import Settings


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="octabilliard - exact outer billiard outside the regular octagon"
    )
    parser.add_argument(
        "--command",
        "-c",
        required=True,
        choices=[c.value for c in CommandName],
        help="What to compute",
    )
    parser.add_argument(
        "--seed",
        help='Exact seed "a p/q b r/s a p/q b r/s" (x = a + b*sqrt2, then y)',
    )
    parser.add_argument("--depth", type=int, help="Census depth")
    parser.add_argument("--budget", type=int, help="Iteration budget")
    parser.add_argument("--samples", type=int, help="Samples per verify check")
    parser.add_argument("--out", help="Output file (or directory for render)")
    parser.add_argument(
        "--format", choices=[f.value for f in OutputFormat], default="json"
    )
    parser.add_argument(
        "--figure",
        choices=[f.value for f in FigureName],
        help="Render a single figure",
    )
    parser.add_argument(
        "--window",
        action="store_true",
        help="Include the lifting window sweep in verify",
    )
    parser.add_argument("--log-level", help="Logging level (default: WARNING)")
    parser.add_argument("--language", "-l", help="Language code (default: en)")
    return parser


def configure_logging(level: str) -> None:
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.WARNING),
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )


def main(argv=None) -> int:
    """
    Entry point of the octabilliard command line.

    Returns:
        0 on success, 1 when a check fails, 2 on a usage error
    """
    parser = build_parser()
    args = parser.parse_args(argv)
    settings = Settings.from_env().with_overrides(
        log_level=args.log_level, language=args.language
    )
    configure_logging(settings.log_level)
    set_language(settings.language)

    try:
        config = CommandConfig(
            command=CommandName(args.command),
            seed=parse_seed(args.seed) if args.seed else None,
            depth=args.depth,
            budget=args.budget,
            samples=args.samples,
            output_path=args.out,
            format=OutputFormat(args.format),
            figure=FigureName(args.figure) if args.figure else None,
            include_window=args.window,
        )
        result = run_command(config, settings)
    except (UsageError, SeedSyntaxError) as exc:
        print(_("Error: {message}", message=exc), file=sys.stderr)
        return EXIT_USAGE
    except ComponentMeasurementError as exc:
        print(_("Measurement failed: {message}", message=exc), file=sys.stderr)
        return EXIT_CHECK_FAILED

    if result.text:
        sys.stdout.write(result.text)
    if result.notice:
        print(result.notice, file=sys.stderr)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
