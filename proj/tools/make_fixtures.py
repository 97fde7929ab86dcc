#!/usr/bin/env python3
"""Regenerate the graph fixtures.

Planar fixtures get their rotation from vertex coordinates (counterclockwise
angle order), toroidal grids use east, north, west, south at every vertex,
and K5, K3,3 and Petersen take the first minimum-genus rotation found by
`arfpf mingenus`.
"""

import argparse
import json
import math
import pathlib
import subprocess


def write(path, n, edges, rotation):
    lines = [f"V {n}"]
    lines += [f"E {i} {u} {v}" for i, (u, v) in enumerate(edges)]
    for v in range(n):
        lines.append(f"R {v}:" + "".join(" " + h for h in rotation[v]))
    path.write_text("\n".join(lines) + "\n")


def token(e, side):
    return f"{e}{'ab'[side]}"


def planar(coords, edges):
    rotation = [[] for _ in coords]
    for e, (u, v) in enumerate(edges):
        for side, (a, b) in enumerate(((u, v), (v, u))):
            dx = coords[b][0] - coords[a][0]
            dy = coords[b][1] - coords[a][1]
            rotation[a].append((math.atan2(dy, dx), token(e, side)))
    return [[t for _, t in sorted(r)] for r in rotation]


def planar_grid(rows, cols):
    coords = [(c, r) for r in range(rows) for c in range(cols)]
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1))
            if r + 1 < rows:
                edges.append((v, v + cols))
    return len(coords), edges, planar(coords, edges)


def torus_grid(size):
    n = size * size
    edges = []
    east = {}
    north = {}
    for r in range(size):
        for c in range(size):
            v = r * size + c
            east[v] = len(edges)
            edges.append((v, r * size + (c + 1) % size))
            north[v] = len(edges)
            edges.append((v, ((r + 1) % size) * size + c))
    rotation = []
    for r in range(size):
        for c in range(size):
            v = r * size + c
            west = east[r * size + (c - 1) % size]
            south = north[((r - 1) % size) * size + c]
            rotation.append([token(east[v], 0), token(north[v], 0), token(west, 1), token(south, 1)])
    return n, edges, rotation


def any_rotation(n, edges):
    rotation = [[] for _ in range(n)]
    for e, (u, v) in enumerate(edges):
        rotation[u].append(token(e, 0))
        rotation[v].append(token(e, 1))
    return rotation


def minimum_genus(binary, path, n, edges):
    write(path, n, edges, any_rotation(n, edges))
    out = subprocess.run([binary, "mingenus", str(path)], check=True, capture_output=True, text=True)
    path.write_text(json.loads(out.stdout)["graph"])


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--binary", default="build/tools/arfpf")
    parser.add_argument("--out", default="fixtures")
    args = parser.parse_args()
    out = pathlib.Path(args.out)
    out.mkdir(exist_ok=True)

    write(out / "loop.graph", 1, [(0, 0)], [["0a", "0b"]])
    write(out / "theta_planar.graph", 2, [(0, 1)] * 3, [["0a", "1a", "2a"], ["2b", "1b", "0b"]])
    write(out / "theta_torus.graph", 2, [(0, 1)] * 3, [["0a", "1a", "2a"], ["0b", "1b", "2b"]])
    k4_coords = [(0, 2), (-2, -1), (2, -1), (0, 0)]
    k4_edges = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
    write(out / "k4.graph", 4, k4_edges, planar(k4_coords, k4_edges))
    minimum_genus(args.binary, out / "k5.graph", 5, [(i, j) for i in range(5) for j in range(i + 1, 5)])
    k33_edges = [(i, 3 + j) for i in range(3) for j in range(3)]
    minimum_genus(args.binary, out / "k33.graph", 6, k33_edges)
    petersen_edges = [(i, (i + 1) % 5) for i in range(5)] + [(i, i + 5) for i in range(5)]
    petersen_edges += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    minimum_genus(args.binary, out / "petersen.graph", 10, petersen_edges)
    for size in (2, 3, 4):
        write(out / f"grid{size}x{size}.graph", *planar_grid(size, size))
    for size in (3, 4, 8):
        write(out / f"torus{size}x{size}.graph", *torus_grid(size))


if __name__ == "__main__":
    main()
