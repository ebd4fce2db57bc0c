#!/usr/bin/env python3
"""Freeze golden homology values for the main comparison.

Computes, with the standalone brute-force oracle (unnormalized nerves and
dense elimination, no imports from the package), the mod-p homology of the
classifying space and of the linking-system nerve over one Sylow subgroup,
in degrees 0..2, for the comparison targets:

    sym:3 at p=2, sym:3 at p=3, sym:4 at p=2

and writes tests/golden/main_comparison.json.  Run once; the file is
committed and the acceptance suite compares pipeline output against it.
"""

import json
import pathlib
import sys
import time

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent.parent / "tests"))

import oracle


def centric_subgroups_of_sylow(G, degree, p):
    S = oracle.sylow_naive(G, degree, p)
    subs = oracle.all_p_subgroups_of(S, degree, p)
    return [H for H in subs if oracle.is_centric_naive(G, H, p)]


def entry(name, G, degree, p, dmax=3):
    t0 = time.time()
    bar_cat = oracle.one_object_group_category(G)
    bar_dims = oracle.unnormalized_nerve_homology(bar_cat, p, dmax)
    objects = centric_subgroups_of_sylow(G, degree, p)
    link = oracle.linking_category_naive(G, degree, p, objects)
    link_dims = oracle.unnormalized_nerve_homology(link, p, dmax)
    print(
        f"{name} p={p}: classifying {bar_dims}  linking({len(objects)} objects) "
        f"{link_dims}  [{time.time() - t0:.1f}s]"
    )
    return {
        "group": name,
        "prime": p,
        "through_degree": dmax - 1,
        "classifying_dims": bar_dims,
        "linking_dims": link_dims,
    }


def main():
    entries = [
        entry("sym:3", oracle.sym(3), 3, 2),
        entry("sym:3", oracle.sym(3), 3, 3),
        entry("sym:4", oracle.sym(4), 4, 2),
    ]
    # the two small cases have independently known values; refuse to freeze
    # anything that contradicts them
    assert entries[0]["classifying_dims"] == [1, 1, 1]
    assert entries[0]["linking_dims"] == [1, 1, 1]
    assert entries[1]["classifying_dims"] == [1, 0, 0]
    assert entries[1]["linking_dims"] == [1, 0, 0]
    out = pathlib.Path(__file__).resolve().parent.parent / "tests" / "golden"
    out.mkdir(parents=True, exist_ok=True)
    path = out / "main_comparison.json"
    path.write_text(json.dumps({"entries": entries}, indent=2) + "\n")
    print(f"wrote {path}")


if __name__ == "__main__":
    main()
