"""Regenerate the PD fixtures under src/hardunknots/fixtures/.

Every fixture is built from tangle data with the package's own
constructors, then written as PD with a provenance list.  Run with
``--check`` to compare against the files on disk instead of writing.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from hardunknots.diagram import (  # noqa: E402
    build_expr, closure, integer_tangle, is_hard, sum_diagram, tangle_product, tangle_sum,
    tuck, vertical_tangle,
)

OUT = ROOT / "src" / "hardunknots" / "fixtures"


def goeritz():
    # [4] + ((1/[2] * [-3]) * 1/[-2]), where * stacks tangles vertically
    p = tangle_product(tangle_product(vertical_tangle(2), integer_tangle(-3)), vertical_tangle(-2))
    return closure(tangle_sum(integer_tangle(4), p))


def specs():
    base = sum_diagram([1, 3], [-1, -2], flip_b=True)
    return {
        "culprit": (tuck(base), [
            "tuck(sum_diagram([1,3], [-1,-2], flip_b=True)) with the default route:",
            "the bottom junction arc is lifted and laid back under the bottom closure arc,",
            "the top closure arc and the top junction arc, around the right-hand block.",
            "10 crossings, no simplifying R1/R2 and no R3.",
        ]),
        "culprit_left": (tuck(base, route=(12, 1, 10)), [
            "tuck(sum_diagram([1,3], [-1,-2], flip_b=True), route=(12, 1, 10)):",
            "the same lifted arc routed around the left-hand block instead.",
            "10 crossings, hard, not planar-isomorphic to 'culprit' even up to mirror.",
            "Stands in for a non-rational-sum hard unknot; every hard diagram found by",
            "rerouting and crossing-switch searches still has a Conway circle with two",
            "possibly rational sides, so that property is not certified here.",
        ]),
        "H": (sum_diagram([1, 3], [-1, -4]), [
            "sum_diagram([1,3], [-1,-4]) = N([4/3] - [5/4]); 9 crossings, hard.",
        ]),
        "H_prime": (sum_diagram([1, 4], [-1, -3]), [
            "sum_diagram([1,4], [-1,-3]) = N([5/4] - [4/3]); 9 crossings, hard.",
            "Equals H with the two end-of-fraction unit crossings switched, up to planar isotopy.",
            "This is also the diagram K = N([1,4] - [1,3]); as knots K = -H.",
        ]),
        "J": (sum_diagram([1, 3], [-1, -2, -2]), [
            "sum_diagram([1,3], [-1,-2,-2]) = N([4/3] - [7/5]); 9 crossings, hard.",
        ]),
        "J_prime": (sum_diagram([1, 2, 2], [-1, -3]), [
            "sum_diagram([1,2,2], [-1,-3]) = N([7/5] - [4/3]); 9 crossings, hard.",
            "Equals J with the unit crossings of [1,3] and -[1,2,2] switched, up to planar isotopy.",
        ]),
        "goeritz": (goeritz(), [
            "N([4] + ((1/[2] * [-3]) * 1/[-2])), * being vertical stacking; 11 crossings, hard.",
            "bracket polynomial equals the unknot's; a height-1 exhaustive Reidemeister",
            "search (external check) reduces it to 0 crossings.",
        ]),
        "decoy": (closure(build_expr("[1/2] + ([1] + [-1] + [-1/3])")), [
            "N([1/2] + ([1] + [-1] + [-1/3])); 1/2 - 1/3 = 1/6, an unknot.",
            "7 crossings; not hard.",
        ]),
    }


def record(name, d, prov):
    rec = d.to_pd_dict()
    rec["name"] = name
    rec["n_crossings"] = d.n_crossings
    rec["hard"] = is_hard(d)
    rec["provenance"] = prov
    # one crossing per line keeps the files readable and diffable
    lines = ["{"]
    keys = sorted(rec)
    for i, k in enumerate(keys):
        tail = "," if i < len(keys) - 1 else ""
        if k == "crossings":
            body = ",\n".join("  " + json.dumps(c, sort_keys=True) for c in rec[k])
            lines.append(f' "crossings": [\n{body}\n ]{tail}')
        else:
            lines.append(f" {json.dumps(k)}: {json.dumps(rec[k])}{tail}")
    lines.append("}")
    return "\n".join(lines) + "\n"


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--check", action="store_true", help="compare instead of writing")
    args = ap.parse_args(argv)
    bad = 0
    for name, (d, prov) in specs().items():
        text = record(name, d, prov)
        path = OUT / f"{name}.json"
        if args.check:
            if not path.exists() or path.read_text() != text:
                print(f"differs: {name}")
                bad += 1
        else:
            path.write_text(text)
            print(f"wrote {path.relative_to(ROOT)} ({d.n_crossings} crossings)")
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())
