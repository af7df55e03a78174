"""Write DOT files for the reactive compilations of every corpus net and origin.

    python3 scripts/render_figures.py out/
    dot -Tpng out/inheruniv_x.dot -o inheruniv_x.png
"""
import argparse
from pathlib import Path

from inet.dsl import load_corpus
from inet.reactive import compile, to_dot


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("outdir", type=Path)
    ap.add_argument("--net", action="append", help="only these nets (repeatable)")
    args = ap.parse_args()
    args.outdir.mkdir(parents=True, exist_ok=True)
    for name, g in load_corpus().nets:
        if args.net and name not in args.net:
            continue
        for origin in sorted(g.nodes):
            rn = compile(g, origin)
            if not g.out_links(origin):
                continue
            path = args.outdir / f"{name}_{origin}.dot"
            path.write_text(to_dot(rn))
            print(f"{path}: {len(rn.double_arrows)} double arrows")


if __name__ == "__main__":
    main()
