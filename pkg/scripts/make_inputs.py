#!/usr/bin/env python3
"""Regenerate the bundled example inputs in inputs/.

Each document is a simple polytope with characteristic data and a generic
height function (or, for bad_order, an explicit broken vertex order).
"""

import json
from pathlib import Path

OUT = Path(__file__).resolve().parents[1] / "inputs"


def doc(name, dim, facets, vertices, lam, **extra):
    return dict(name=name, dim=dim, facets=facets,
                vertices=vertices, **{"lambda": lam}, **extra)


def cube_vertices():
    verts, coords = [], []
    for z in (0, 1):
        for y in (0, 1):
            for x in (0, 1):
                verts.append(sorted([1 + 3 * x, 2 + 3 * y, 3 + 3 * z]))
                coords.append([x, y, z])
    return verts, coords


def build_all():
    docs = []
    docs.append(doc("cp1", 1, 2, [[1], [2]], [[1], [-1]],
                    vertex_coords=[[0], [1]], height_vector=[1]))
    docs.append(doc("cp2", 2, 3, [[1, 2], [1, 3], [2, 3]],
                    [[1, 0], [0, 1], [-1, -1]],
                    vertex_coords=[[0, 0], [0, 1], [1, 0]], height_vector=[1, 2]))
    docs.append(doc("cp3", 3, 4,
                    [[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]],
                    [[1, 0, 0], [0, 1, 0], [0, 0, 1], [-1, -1, -1]],
                    vertex_coords=[[0, 0, 0], [0, 0, 1], [0, 1, 0], [1, 0, 0]],
                    height_vector=[1, 2, 4]))
    square = [[1, 2], [2, 3], [3, 4], [1, 4]]
    square_coords = [[0, 0], [1, 0], [1, 1], [0, 1]]
    for k in range(4):
        docs.append(doc(f"square_h{k}", 2, 4, square,
                        [[1, 0], [0, 1], [-1, k], [0, -1]],
                        vertex_coords=square_coords, height_vector=[1, 2]))
    verts, coords = cube_vertices()
    docs.append(doc("cube", 3, 6, verts,
                    [[1, 0, 0], [0, 1, 0], [0, 0, 1],
                     [-1, 0, 0], [0, -1, 0], [0, 0, -1]],
                    vertex_coords=coords, height_vector=[1, 2, 4]))
    docs.append(doc("bad_char", 2, 3, [[1, 2], [1, 3], [2, 3]],
                    [[1, 0], [0, 1], [-2, -1]],
                    vertex_coords=[[0, 0], [0, 1], [1, 0]], height_vector=[1, 2]))
    # valid square data with an order in which two vertices have no earlier neighbour
    docs.append(doc("bad_order", 2, 4, square,
                    [[1, 0], [0, 1], [-1, 0], [0, -1]],
                    vertex_order=[1, 3, 2, 4]))
    return docs


def main():
    OUT.mkdir(exist_ok=True)
    for d in build_all():
        path = OUT / f"{d['name']}.json"
        path.write_text(json.dumps(d, indent=2) + "\n", encoding="utf-8")
        print(f"wrote {path}")


if __name__ == "__main__":
    main()
