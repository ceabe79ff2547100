#!/usr/bin/env python3
"""Refresh the pinned reports of the bundled instances.

Run after any intentional change to analysis output or report layout,
then review the diff: every change here is a behavioral change of the
`examples` regression gate.
"""

import pathlib
import sys

from matchcore.bundled import INSTANCE_NAMES, instance_report_text


def main() -> int:
    here = pathlib.Path(__file__).resolve().parent.parent
    target = here / "src" / "matchcore" / "instances"
    for name in INSTANCE_NAMES:
        text = instance_report_text(name)
        path = target / f"{name}.expected"
        old = path.read_text() if path.exists() else None
        path.write_text(text)
        print(("unchanged " if old == text else "wrote     ") + str(path))
    return 0


if __name__ == "__main__":
    sys.exit(main())
