"""Regenerate the shipped group fixtures under src/eqoperad/data/groups."""

import itertools
import json
from pathlib import Path

DATA = Path(__file__).resolve().parent.parent / "src" / "eqoperad" / "data"
OUT = DATA / "groups"


def table(elements, op):
    idx = {x: i for i, x in enumerate(elements)}
    return [[idx[op(a, b)] for b in elements] for a in elements]


def cyclic(n):
    return table(list(range(n)), lambda a, b: (a + b) % n)


def product(m, n):
    els = list(itertools.product(range(m), range(n)))
    return table(els, lambda a, b: ((a[0] + b[0]) % m, (a[1] + b[1]) % n))


def s3():
    perms = list(itertools.permutations(range(3)))
    return table(perms, lambda p, q: tuple(p[q[i]] for i in range(3)))


def q8():
    # quaternion units as (sign, unit) with units 1, i, j, k
    units = {("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
             ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
             ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
             ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1")}
    els = [(s, u) for u in "1ijk" for s in (1, -1)]

    def op(a, b):
        s, u = units[(a[1], b[1])]
        return (a[0] * b[0] * s, u)

    return table(els, op)


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    groups = {"trivial": cyclic(1), "C2": cyclic(2), "C3": cyclic(3), "C4": cyclic(4),
              "C2xC2": product(2, 2), "C6": cyclic(6), "S3": s3(), "Q8": q8()}
    for name, mult in groups.items():
        data = {"name": name, "order": len(mult), "identity": 0, "mult": mult}
        (OUT / f"{name}.json").write_text(json.dumps(data) + "\n")




def broken_operad():
    """Com over C2 with |U| <= 2, plus a second copy of the object over
    [2 C2/C2 -> C2/C2]; only the Segal condition fails."""
    from eqoperad.groups import load_group
    from eqoperad.operad import DuplicateObject, ExplicitOperad, com_operad_all
    from eqoperad.spans import UFin

    base = UFin(load_group("C2"), 2)
    com = com_operad_all(base)
    x = next(x for x in com.objects()
             if len(base.objects[com.base_of(x)].u.orbits()) == 2 and base.objects[com.base_of(x)].v.size == 1)
    data = ExplicitOperad.materialize(DuplicateObject(com, x), name="broken").to_json()
    (DATA / "operads").mkdir(parents=True, exist_ok=True)
    (DATA / "operads" / "broken.json").write_text(json.dumps(data) + "\n")


if __name__ == "__main__":
    main()
    broken_operad()
