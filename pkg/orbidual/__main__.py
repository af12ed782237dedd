"""Allow running as python -m orbidual."""

from orbidual.cli import cli

if __name__ == "__main__":
    cli()
