"""Regenerate src/graphdivide/data/reference_knots.txt from spherogram's tables.

Run once by a maintainer; the package itself only reads the text file.
"""

import argparse
import datetime

import spherogram


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default="src/graphdivide/data/reference_knots.txt")
    ap.add_argument("--max-knot", type=int, default=10)
    ap.add_argument("--max-link", type=int, default=7)
    args = ap.parse_args()
    lines = [
        "# name PD (one crossing per X(a,b,c,d); a = incoming under edge, then counterclockwise)",
        f"# source: spherogram {spherogram.__version__} built-in tables "
        "(Rolfsen knots via RolfsenTable, links via ThistlethwaiteLinkTable/RolfsenTable)",
        f"# generated {datetime.date.today().isoformat()} by scripts/make_reference_table.py",
        f"# knots up to {args.max_knot} crossings, links up to {args.max_link} crossings",
    ]
    for n in range(3, args.max_knot + 1):
        k = 1
        while True:
            name = f"{n}_{k}"
            try:
                link = spherogram.Link(name)
            except (KeyError, ValueError, IndexError):
                break
            lines.append(name + " " + " ".join("X(%d,%d,%d,%d)" % tuple(x) for x in link.PD_code()))
            k += 1
    for n in range(2, args.max_link + 1):
        for ab in "an":
            k = 1
            while True:
                name = f"L{n}{ab}{k}"
                try:
                    link = spherogram.Link(name)
                except (KeyError, ValueError, IndexError):
                    break
                lines.append(name + " " + " ".join("X(%d,%d,%d,%d)" % tuple(x) for x in link.PD_code()))
                k += 1
    with open(args.out, "w") as fh:
        fh.write("\n".join(lines) + "\n")


if __name__ == "__main__":
    main()
