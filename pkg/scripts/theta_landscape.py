"""Print the Delaunay classes of a form and theta_inv on a grid of the skeleton torus.

    python3 scripts/theta_landscape.py --gram 4,2,2,4 --char 1,0 --grid 4
"""
import argparse
import math

from troparith.delvor import cell_volume, delaunay_classes
from troparith.quadform import QuadChar


def parse_gram(text):
    entries = [int(x) for x in text.split(",")]
    g = math.isqrt(len(entries))
    if g * g != len(entries):
        raise SystemExit("--gram needs g*g comma-separated integers")
    return [entries[i * g:(i + 1) * g] for i in range(g)]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--gram", default="4,2,2,4")
    ap.add_argument("--char", default=None)
    ap.add_argument("--grid", type=int, default=4)
    args = ap.parse_args()
    gram = parse_gram(args.gram)
    g = len(gram)
    char = tuple(int(x) for x in args.char.split(",")) if args.char else (0,) * g
    q = QuadChar(gram, char)

    print(f"Delaunay classes of B = {gram}:")
    total = 0
    for c in delaunay_classes(QuadChar(gram, (0,) * g)):
        vol = cell_volume(c.vertices)
        total += vol
        print(f"  {c.vertices}  volume {vol}  witness {tuple(str(x) for x in c.witness.coeffs)}")
    print(f"  total volume {total}")

    from troparith.cli import theta_inv_grid
    print(f"\ntheta_inv with characteristic {char} at l = B t:")
    print(theta_inv_grid(q, args.grid), end="")


if __name__ == "__main__":
    main()
