#!/usr/bin/env python3
"""Writes the fixed table sets used by the classic property checks.

data/generator_tables.csv   50 tables: balanced, sparse (f00 large), dense (f11 large)
                            and boundary shapes with exactly one empty cell.
data/independent_tables.csv 50 tables with f11*f00 == f10*f01, built as outer products
                            of row totals and column weights.
"""
import itertools
import pathlib

DATA = pathlib.Path(__file__).resolve().parent.parent / "data"

BALANCED = [
    (10, 10, 10, 10), (20, 5, 5, 70), (30, 20, 10, 40), (25, 15, 35, 25),
    (50, 10, 20, 20), (12, 30, 18, 40), (40, 25, 25, 10), (7, 3, 9, 11),
    (60, 40, 30, 70), (15, 45, 5, 35), (33, 17, 21, 29), (80, 20, 20, 80),
    (5, 20, 25, 50), (45, 5, 40, 10),
]
SPARSE = [
    (1, 10, 10, 1000), (10, 100, 250, 5000), (11, 500, 600, 25000), (3, 40, 25, 9000),
    (2, 1000, 800, 100000), (5, 250, 10, 50000), (8, 60, 90, 12000), (1, 1, 2, 500),
    (20, 300, 150, 75000), (4, 800, 1000, 10000), (7, 15, 300, 2000), (10, 10, 10, 100000),
]
DENSE = [
    (1000, 10, 10, 1), (5000, 100, 250, 10), (25000, 500, 600, 11), (9000, 40, 25, 3),
    (100000, 1000, 800, 2), (50000, 250, 10, 5), (12000, 60, 90, 8), (500, 1, 2, 1),
    (75000, 300, 150, 20), (10000, 800, 1000, 4), (2000, 15, 300, 7), (100000, 10, 10, 10),
]
BOUNDARY = [
    (0, 10, 20, 30), (0, 5, 5, 90), (0, 40, 1, 3),
    (20, 0, 10, 30), (5, 0, 25, 70), (1, 0, 3, 1000),
    (20, 10, 0, 30), (5, 25, 0, 70), (1000, 3, 0, 1),
    (20, 10, 30, 0), (90, 5, 5, 0), (3, 1, 40, 0),
]


def independent():
    out = []
    for r1, r2, (u, v) in itertools.product((1, 2, 3, 5, 8), (1, 4, 10, 20, 50),
                                            ((1, 1), (2, 3))):
        out.append((r1 * u, r1 * v, r2 * u, r2 * v))
    return out


def write(name, rows, comment):
    with open(DATA / name, "w") as fh:
        fh.write(f"# {comment}\n")
        fh.write("f11,f10,f01,f00\n")
        for r in rows:
            fh.write(",".join(str(x) for x in r) + "\n")


if __name__ == "__main__":
    gens = BALANCED + SPARSE + DENSE + BOUNDARY
    assert len(gens) == 50 and len(set(gens)) == 50
    ind = independent()
    assert len(ind) == 50 and all(a * d == b * c for a, b, c, d in ind)
    write("generator_tables.csv", gens,
          "classic property generator set: balanced, sparse, dense, one empty cell")
    write("independent_tables.csv", ind, "independence family: f11*f00 == f10*f01")
