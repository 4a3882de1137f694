# main.py
"""
Entry point: ``python main.py <subcommand> ...`` is the same as the ``ranktest`` script.

    python main.py tabulate 5 5 mww exact
    python main.py experiment configs/desk.toml
"""

from __future__ import annotations

from src.cli.ranktest_cli import main

if __name__ == "__main__":
    raise SystemExit(main())
