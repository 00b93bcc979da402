"""Module entry point: python -m gsmc."""

from gsmc.cli import main

if __name__ == "__main__":
    raise SystemExit(main())
