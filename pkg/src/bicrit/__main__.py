from __future__ import annotations

from .rendercli.cli import main

main()
