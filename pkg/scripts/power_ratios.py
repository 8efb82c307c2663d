"""Length ratios along x1^n: the circuit variant tends to 4|w|, the walk variant stays at 2|w|."""

import argparse
from fractions import Fraction

from magnus_qi.geodesic import geodesic_length_fn
from magnus_qi.groups import Lattice
from magnus_qi.words import x
from magnus_qi.wreath import magnus_embed, wreath_length_circuit, wreath_length_walk


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=12)
    args = ap.parse_args()
    B = Lattice(2)
    print("n  |w|  circuit  walk  circuit/|w|  walk/|w|")
    for n in range(1, args.max_n + 1):
        w = x(1, n)
        fn = geodesic_length_fn(w, B)
        e = magnus_embed(w, B)
        c, k = wreath_length_circuit(e), wreath_length_walk(e)
        print(f"{n:<2} {fn:<4} {c:<8} {k:<5} {str(Fraction(c, fn)):<12} {Fraction(k, fn)}")


if __name__ == "__main__":
    main()
