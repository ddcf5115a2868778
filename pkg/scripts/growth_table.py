#!/usr/bin/env python3
"""Finite shadows of the countable/continuum dichotomy.

For each truncation level k: the chain module has k+1 submodules (linear),
the square of the chain has a (1,b)-family of size 2^k inside a lattice that
is strictly larger, and a multi-prime semisimple layer has 2^(#primes)
subgroups.  These are the growth patterns behind the symbolic verdicts of
`modlat zmod count`.
"""

import argparse

from modlat.modules import direct_sum, enumerate_submodules, regular_module
from modlat.tower import make_tower, pair_growth
from modlat.zmodule import parse_descriptor, support_growth_shadow, truncation_crosscheck


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-level", type=int, default=5)
    parser.add_argument("--prime", type=int, default=2)
    args = parser.parse_args()
    p, top = args.prime, args.max_level

    tower = make_tower(p, ["t"])
    family = pair_growth(tower, top)
    print(f"level | chain count | (1,b) family | square lattice")
    for k in range(1, top + 1):
        chain = truncation_crosscheck(parse_descriptor(f"Prufer({p})"), p, k)
        ring = tower.level(k)
        square = len(enumerate_submodules(direct_sum([regular_module(ring)] * 2)))
        print(f"{k:5d} | {chain.submodule_count:11d} | {family[k - 1]:12d} | {square:14d}")

    print()
    q_marker = parse_descriptor("Q")
    for k in range(1, top + 1):
        shadow = support_growth_shadow(q_marker, k)
        print(
            f"Q support shadow at level {k}: primes {shadow.primes} -> "
            f"{shadow.submodule_count} subgroups"
        )


if __name__ == "__main__":
    main()
