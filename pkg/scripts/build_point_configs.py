"""Regenerate the shipped Non-Pappus (quaternionic) and Non-Desargues
(octonionic) point configurations.

Points are built with joins and meets in the projective plane of H_3(K)
from small random integer seeds, then each candidate is kept only if
verify_representation passes over every subset.
"""
import json
import sys
from pathlib import Path

from genvamos.jordan import (PointSet, join, meet, random_point, target_matroid,
                             vector_from_point, verify_representation)
from genvamos.rng import generator

DATA = Path(__file__).resolve().parents[1] / "src" / "genvamos" / "data"


def point_on(L, gen, level):
    """A point of line L: meet with the join of two random points."""
    return meet(L, join(random_point(gen, level), random_point(gen, level)))


def non_pappus(gen):
    level = 2
    a1, a2 = random_point(gen, level), random_point(gen, level)
    a3 = point_on(join(a1, a2), gen, level)
    b1, b2 = random_point(gen, level), random_point(gen, level)
    b3 = point_on(join(b1, b2), gen, level)
    c1 = meet(join(a2, b3), join(a3, b2))
    c2 = meet(join(a1, b3), join(a3, b1))
    c3 = meet(join(a1, b2), join(a2, b1))
    return [a1, a2, a3, b1, b2, b3, c1, c2, c3]


def non_desargues(gen):
    level = 3
    O = random_point(gen, level)
    ps = [random_point(gen, level) for _ in range(3)]
    qs = [point_on(join(O, p), gen, level) for p in ps]
    r = {}
    for i, j in ((0, 1), (0, 2), (1, 2)):
        r[i, j] = meet(join(ps[i], ps[j]), join(qs[i], qs[j]))
    return [O, *ps, *qs, r[0, 1], r[0, 2], r[1, 2]]


def search(builder, target, level, seed, tries=200):
    gen = generator(seed, stream=level)
    for attempt in range(tries):
        try:
            pts = builder(gen)
        except ValueError:
            continue
        vecs = [vector_from_point(P) for P in pts]
        ps = PointSet.from_vectors(level, vecs)
        if any(a != b for a, b in zip(ps.points, pts)):
            continue
        ok, _ = verify_representation(ps, target)
        if ok:
            return ps, attempt
    raise SystemExit("no configuration found")


def main():
    seed = int(sys.argv[1], 0) if len(sys.argv) > 1 else 0xC0FFEE
    for name, builder, level, note in (
        ("nonpappus", non_pappus, 2, "quaternionic Pappus configuration with the c-line removed"),
        ("nondesargues", non_desargues, 3, "octonionic Desargues configuration with the axis removed"),
    ):
        target = target_matroid(json.loads((DATA / f"{name}_matroid.json").read_text()))
        ps, attempt = search(builder, target, level, seed)
        out = ps.to_json(note=f"{note}; generated by scripts/build_point_configs.py seed={seed:#x} attempt={attempt}")
        (DATA / f"{name}_points.json").write_text(json.dumps(out, indent=1) + "\n")
        print(name, "attempt", attempt)


if __name__ == "__main__":
    main()
