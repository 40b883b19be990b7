#!/usr/bin/env python3
"""Writes the binarized transaction fixtures used by the real-data pipelines.

The census and mushroom tables themselves are not shipped. These fixtures are drawn from
small latent-variable models with the same shape after binarization: one indicator per
attribute level, exactly one level set per attribute and transaction.

data/fixtures/adult_style.csv     census-like; most indicators are rare, so f00 dominates
data/fixtures/mushroom_style.csv  specimen-like; dominant levels make f11 large

Output is deterministic (numpy PCG64 with fixed seeds).
"""
import pathlib

import numpy as np

OUT = pathlib.Path(__file__).resolve().parent.parent / "data" / "fixtures"


def softmax(x):
    e = np.exp(x - x.max(axis=1, keepdims=True))
    return e / e.sum(axis=1, keepdims=True)


def draw(rng, logits):
    p = softmax(logits)
    u = rng.random((p.shape[0], 1))
    return (u > np.cumsum(p, axis=1)).sum(axis=1).clip(max=p.shape[1] - 1)


def write(path, names, columns):
    path.parent.mkdir(parents=True, exist_ok=True)
    rows = np.stack(columns, axis=1).astype(int)
    with open(path, "w", newline="\n") as f:
        f.write(",".join(names) + "\n")
        for r in rows:
            f.write(",".join(map(str, r)) + "\n")


def binarize(attr, levels, codes, names, columns):
    for k, level in enumerate(levels):
        names.append(f"{attr}={level}")
        columns.append(codes == k)


def adult_style(n=3000, seed=11):
    rng = np.random.default_rng(seed)
    status = rng.normal(size=n)  # latent socio-economic score
    age = rng.normal(size=n)
    male = rng.random(n) < 0.67
    names, columns = [], []

    def attr(name, levels, weights, base):
        w = np.asarray(weights, dtype=float)
        logits = np.asarray(base, dtype=float) + status[:, None] * w[0] + age[:, None] * w[1]
        logits += male[:, None] * w[2]
        binarize(name, levels, draw(rng, logits), names, columns)

    attr("age", ["17-25", "26-35", "36-45", "46-60", "61+"],
         [[0] * 5, [-2, -0.8, 0, 0.8, 2], [0] * 5], [0, 0.5, 0.5, 0.3, -1])
    attr("workclass", ["private", "self-emp", "government", "other"],
         [[0, 0.6, 0.4, -1], [0, 0.5, 0.3, -0.5], [0, 0.4, -0.2, -0.3]], [1.5, -0.5, -0.3, -1.5])
    attr("education", ["dropout", "hs-grad", "some-college", "bachelors", "masters", "doctorate"],
         [[-1.5, -0.5, 0, 1, 1.6, 2.2], [0.2, 0, -0.2, 0, 0.2, 0.3], [0] * 6],
         [-0.5, 1, 0.8, 0.2, -1, -2.5])
    attr("marital", ["married", "never-married", "divorced", "widowed"],
         [[0.5, -0.3, -0.2, 0], [0.6, -1.5, 0.4, 1.2], [0.6, 0, -0.4, -0.8]], [0.5, 0.2, -0.6, -2])
    attr("occupation", ["manual", "service", "clerical", "sales", "professional", "managerial"],
         [[-1, -0.8, -0.2, 0, 1, 1.2], [0] * 6, [0.8, -0.5, -0.8, 0, 0, 0.3]],
         [0.5, 0.3, 0.2, 0.2, 0, -0.2])
    attr("race", ["white", "black", "other"], [[0.2, -0.2, 0], [0] * 3, [0] * 3], [2, 0, -0.5])
    binarize("sex", ["male", "female"], np.where(male, 0, 1), names, columns)
    attr("hours", ["part-time", "full-time", "overtime", "extreme"],
         [[-0.5, 0, 0.6, 0.8], [-0.3, 0.2, 0.1, 0], [-0.8, 0, 0.5, 0.6]], [-0.5, 1.5, 0, -1.5])
    attr("capital-gain", ["none", "some"], [[0, 1.2], [0, 0.4], [0, 0.2]], [2.5, 0])
    attr("income", ["<=50k", ">50k"], [[0, 1.8], [0, 0.5], [0, 0.6]], [1.5, 0])
    write(OUT / "adult_style.csv", names, columns)


def mushroom_style(n=2000, seed=23):
    rng = np.random.default_rng(seed)
    poisonous = rng.random(n) < 0.48
    names, columns = [], []
    binarize("class", ["edible", "poisonous"], poisonous.astype(int), names, columns)
    # (attribute, levels, base logits, class shift); the first level dominates
    spec = [
        ("cap-shape", ["convex", "flat", "bell"], [2.2, 1.2, -1], [0, 0.3, -0.8]),
        ("cap-surface", ["scaly", "smooth", "fibrous"], [1.5, 1.2, 0], [0.4, 0.2, -0.9]),
        ("bruises", ["no", "yes"], [1.2, 0], [1.0, -1.0]),
        ("gill-attachment", ["free", "attached"], [3.5, 0], [0.3, -0.3]),
        ("gill-spacing", ["close", "crowded"], [2, 0], [0.8, -1.2]),
        ("gill-size", ["broad", "narrow"], [1.8, 0], [-1.5, 1.5]),
        ("stalk-shape", ["tapering", "enlarging"], [0.8, 0], [0.3, -0.3]),
        ("stalk-surface", ["smooth", "silky", "fibrous"], [2, 0.3, -0.5], [-0.8, 1.6, 0]),
        ("veil-color", ["white", "other"], [3.8, 0], [0, 0.4]),
        ("ring-number", ["one", "two"], [2.8, 0], [0.3, -0.6]),
        ("ring-type", ["pendant", "evanescent", "large"], [2, 1, -1], [-1, 0.6, 1.5]),
        ("spore-color", ["white", "brown", "black"], [1, 1, 0.6], [0.8, -0.9, -0.9]),
        ("population", ["several", "solitary", "scattered"], [1.6, 0.6, 0.2], [0.7, 0, -0.6]),
        ("habitat", ["woods", "grasses", "paths"], [1.4, 0.9, 0], [0, -0.2, 0.7]),
    ]
    for attr, levels, base, shift in spec:
        logits = np.asarray(base)[None, :] + poisonous[:, None] * np.asarray(shift)[None, :]
        logits = logits + rng.normal(scale=0.3, size=(n, len(levels)))
        binarize(attr, levels, draw(rng, logits), names, columns)
    write(OUT / "mushroom_style.csv", names, columns)


if __name__ == "__main__":
    adult_style()
    mushroom_style()
