import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from dotenv import load_dotenv
from loguru import logger

from .cli.commands import SYNOPSIS, CommandResult, parse_command, run
from .config import get_settings
from .exceptions import ConfigurationError, NominalError, ParseError
from .models import ExitStatus


def configure_logging(level: str) -> None:
    """Single stderr sink; stdout carries reports only"""
    logger.remove()
    logger.add(
        sys.stderr,
        level=level,
        format="<level>{level: <8}</level> | {name}:{function} - {message}",
    )


def emit(result: CommandResult, json_output: bool, out: Optional[str]) -> None:
    if json_output:
        body = json.dumps(result.record, indent=2, ensure_ascii=False)
    else:
        body = result.text
    print(body)
    if out:
        path = Path(out)
        path.write_text(body + "\n", encoding="utf-8")
        logger.info(f"Report written to {path}")


def main(argv: Optional[Sequence[str]] = None) -> int:
    # Load environment variables
    load_dotenv()
    try:
        settings = get_settings()
    except ConfigurationError as e:
        configure_logging("WARNING")
        logger.error(f"{e}")
        return int(ExitStatus.USAGE)
    configure_logging(settings.log_level)

    try:
        command = parse_command(sys.argv[1:] if argv is None else argv)
        result = run(command)
    except SystemExit as e:
        # --help
        return int(e.code or 0)
    except ParseError as e:
        logger.error(f"Parse error: {e.render()}")
        print(SYNOPSIS, file=sys.stderr)
        return int(ExitStatus.USAGE)
    except NominalError as e:
        logger.error(f"{e}")
        print(SYNOPSIS, file=sys.stderr)
        return int(ExitStatus.USAGE)

    try:
        emit(result, command.json_output, command.out)
    except OSError as e:
        logger.error(f"Could not write report: {e}")
        return int(ExitStatus.USAGE)
    return int(result.status)


def run_cli() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run_cli()
