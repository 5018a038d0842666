"""Regenerate the bundled presentation and quiver files under src/k0dense/data.

CM(R) for the A1 surface singularity and mod k[x]/(x^2) have the same
extension structure: one projective-injective indecomposable (R, resp. P)
and one other indecomposable X (I, resp. S) whose only non-split
self-extension is X -> proj -> X.  Every SES

    proj^a1 + X^m1 -> mid -> proj^a3 + X^m3

splits off its projective part and has mid = proj^(a1+a3+k*i) + X^(m1+m3-2i)
for some 0 <= i <= min(m1, m3), where k copies of proj sit in the middle of
the non-split sequence (k = 2 for I -> R^2 -> I, k = 1 for S -> P -> S).
"""

import json
from itertools import product
from pathlib import Path

DATA = Path(__file__).resolve().parent.parent / "src" / "k0dense" / "data"


def family(proj, other, k, bound, cover_limit):
    ses = []

    def obj(a, m):
        return {name: x for name, x in ((proj, a), (other, m)) if x}

    for a1, m1, a3, m3 in product(range(bound + 1), repeat=4):
        for i in range(1, min(m1, m3) + 1):
            mid = (a1 + a3 + k * i, m1 + m3 - 2 * i)
            if max(mid) <= bound:
                ses.append({"sub": obj(a1, m1), "mid": obj(*mid), "ext": obj(a3, m3)})
    # generator covers X^m -> proj^(a+k*m) -> proj^a + X^m beyond the box,
    # so that the generator check has something to find for every object
    for a, m in product(range(cover_limit + 1), repeat=2):
        if m and a + k * m > bound:
            ses.append({"sub": obj(0, m), "mid": obj(a + k * m, 0), "ext": obj(a, m)})
    return ses


def main():
    DATA.mkdir(parents=True, exist_ok=True)
    a1 = {
        "indecomposables": ["R", "I"],
        "generators": [{"R": 1}],
        "ses_complete_bound": 4,
        "include_split": True,
        "ses": family("R", "I", 2, 4, 3),
    }
    kx2 = {
        "indecomposables": ["S", "P"],
        "generators": [{"P": 1}],
        "ses_complete_bound": 4,
        "include_split": True,
        "ses": family("P", "S", 1, 4, 3),
    }
    files = {
        "a1_cm.json": a1,
        "kx2_mod.json": kx2,
        "a2_quiver.json": {
            "vertices": ["1", "2"],
            "arrows": [{"name": "a", "from": "1", "to": "2"}],
            "relations": [],
        },
        "kx2.json": {
            "vertices": ["1"],
            "arrows": [{"name": "x", "from": "1", "to": "1"}],
            "relations": [["x", "x"]],
        },
        "free_loop.json": {
            "vertices": ["1"],
            "arrows": [{"name": "x", "from": "1", "to": "1"}],
            "relations": [],
        },
    }
    for name, payload in files.items():
        (DATA / name).write_text(json.dumps(payload, indent=1) + "\n")


if __name__ == "__main__":
    main()
