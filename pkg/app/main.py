"""Command-line entry point"""
from app.presentation.cli.commands import cli


def main() -> None:
    cli(prog_name="dualgraph")


if __name__ == "__main__":
    main()
