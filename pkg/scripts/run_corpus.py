"""Run every manifest entry through the CLI and compare exit codes.

Also runs each command twice and checks that the JSON output is identical.
"""

import argparse
import sys
import time

from whk import cli, corpus


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--only", help="restrict to one corpus file")
    args = ap.parse_args()
    bad = 0
    for name, commands in sorted(corpus.manifest().items()):
        if args.only and name != args.only:
            continue
        for command, want in sorted(commands.items()):
            t0 = time.perf_counter()
            doc, code = cli.run(command, str(corpus.path(name)))
            again, _ = cli.run(command, str(corpus.path(name)))
            dt = time.perf_counter() - t0
            same = cli.render_json(doc) == cli.render_json(again)
            ok = code == want and same
            bad += not ok
            flag = "ok  " if ok else "FAIL"
            print(f"{flag} {name:32} {command:22} exit={code} want={want} deterministic={same} {dt:.2f}s")
    print(f"{bad} mismatches")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
