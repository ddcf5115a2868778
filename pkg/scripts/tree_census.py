#!/usr/bin/env python3
"""Census of ideal trees across towers: level sizes, branching, leaf growth.

The chain tower grows one class per level with a single splitting node; any
tower whose Hilbert-Samuel estimate reaches two branches everywhere and its
leaf count doubles per level.  Run with no arguments for the default gallery,
or pass --vars/--relations for a custom tower.
"""

import argparse

from modlat.tower import branching_report, hilbert_samuel_profile, ideal_tree, make_tower

GALLERY = [
    (2, ["t"], [], 5),
    (2, ["x", "y"], [], 4),
    (3, ["x", "y"], [], 3),
    (2, ["X", "Y", "T"], ["T^3", "T^2*Y", "T*Y^2"], 4),
    (2, ["x", "y"], ["y^2"], 5),
]


def census(p, variables, relations, depth):
    tower = make_tower(p, variables, relations)
    profile = hilbert_samuel_profile(tower, max(depth, 6))
    report = branching_report(ideal_tree(tower, depth))
    print(f"{tower.spec.label()}  (depth {depth})")
    print(f"  lengths: {profile.lengths}  krull estimate: {profile.krull_estimate}")
    print(f"  level sizes: {report.level_sizes}")
    print(f"  verdict: {report.verdict}  leaves: {report.leaf_count}")
    print(f"  branching nodes per level: {report.branching_nodes_per_level}")
    print()


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--p", type=int, default=2)
    parser.add_argument("--vars", nargs="*", default=None)
    parser.add_argument("--relations", nargs="*", default=[])
    parser.add_argument("--depth", type=int, default=4)
    args = parser.parse_args()
    if args.vars:
        census(args.p, args.vars, args.relations, args.depth)
    else:
        for p, variables, relations, depth in GALLERY:
            census(p, variables, relations, depth)


if __name__ == "__main__":
    main()
