"""Orbit-ball search in the side-pairing tiling.

Reduced words are grown letter by letter. The orbit points of all
extensions of a prefix u = s1...sn lie in s1...s(n-1)(D_sn) minus the
orbit-free horoballs at its cusp vertices, so a prefix is dropped once that
region is farther than R from the basepoint.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import hyperboloid as H
from .surfaces import SurfaceModel


@dataclass
class Ball:
    mats: np.ndarray  # (N, 4) entries a, b, c, d
    dist: np.ndarray  # d(O, wO)
    parent: np.ndarray  # index of the prefix, -1 for the identity
    letter: np.ndarray  # last letter, 0 for the identity
    length: np.ndarray
    truncated: bool  # the word-length cap cut off a live prefix
    members: np.ndarray  # indices with d(O, wO) <= R

    def word(self, idx: int) -> tuple[int, ...]:
        out = []
        while idx > 0:
            out.append(int(self.letter[idx]))
            idx = int(self.parent[idx])
        return tuple(reversed(out))

    def __len__(self) -> int:
        return len(self.dist)


def _apply(m: np.ndarray, z: np.ndarray) -> np.ndarray:
    a, b, c, d = m[:, 0], m[:, 1], m[:, 2], m[:, 3]
    return (a * z + b) / (c * z + d)


def _dist(z: np.ndarray, w: complex) -> np.ndarray:
    x = 1.0 + np.abs(z - w) ** 2 / (2.0 * z.imag * w.imag)
    return np.arccosh(np.maximum(x, 1.0))


def _side_data(s: SurfaceModel):
    data = {}
    verts = s.cusp_vertices
    for x, (p, q) in s.sides.items():
        n = H.geodesic_normal(p, q)
        cusps = []
        inside = s.letter_map(x)(s.basepoint)  # lies in D_x
        for v, other in ((p, q), (q, p)):
            if v not in verts:
                continue
            cv = verts[v]
            a = cv.chart(other)
            sign = 1.0 if cv.chart(inside).real > a else -1.0
            cusps.append((np.array(cv.chart.as_tuple()), a, sign, cv.height))
        data[x] = (n, cusps)
    return data


def _lower_bound(P: np.ndarray, n: np.ndarray, cusps) -> np.ndarray:
    """Lower bound for the distance from points P to a truncated half-plane."""
    x, y = P.real, P.imag
    r2 = x * x + y * y
    inner = -(r2 + 1.0) / (2 * y) * n[0] + (r2 - 1.0) / (2 * y) * n[1] + x / y * n[2]
    lb = np.where(inner >= 0.0, 0.0, np.arcsinh(np.maximum(-inner, 0.0)))
    for chart, a, sign, h in cusps:
        Q = _apply(chart[None, :], P)
        qx, qy = Q.real, Q.imag
        on_side = sign * (qx - a) >= 0.0
        rho = np.hypot(qx - a, qy)
        vert = np.where(rho <= h, np.arcsinh(np.abs(qx - a) / qy), _dist_pts(Q, a, h))
        xs = np.where(on_side, qx, a)
        horiz = _dist_pts(Q, xs, h)
        d = np.minimum(vert, horiz)
        d = np.where(on_side & (qy <= h), 0.0, d)
        lb = np.maximum(lb, d)
    return lb


def _dist_pts(Q: np.ndarray, x, h: float) -> np.ndarray:
    x = 1.0 + ((Q.real - x) ** 2 + (Q.imag - h) ** 2) / (2.0 * Q.imag * h)
    return np.arccosh(np.maximum(x, 1.0))


def orbit_ball(s: SurfaceModel, R: float, word_max: int = 4096) -> Ball:
    """All reduced words w with d(O, wO) <= R and length <= word_max."""
    O = s.basepoint
    sides = _side_data(s)
    gens = {x: np.array(s.letter_map(x).as_tuple()) for x in s.letters}

    mats = [np.array([[1.0, 0.0, 0.0, 1.0]])]
    dist = [np.zeros(1)]
    parent = [np.array([-1])]
    letter = [np.array([0])]
    length = [np.zeros(1, dtype=int)]

    cur_m, cur_l, cur_idx = mats[0], letter[0], np.array([0])
    total = 1
    truncated = False
    depth = 0
    while len(cur_m):
        a, b, c, d = cur_m[:, 0], cur_m[:, 1], cur_m[:, 2], cur_m[:, 3]
        P = (d * O - b) / (-c * O + a)  # U^{-1} O
        new_m, new_l, new_p = [], [], []
        for x in s.letters:
            ok = cur_l != -x
            if not ok.any():
                continue
            n, cusps = sides[x]
            lb = _lower_bound(P, n, cusps)
            ok &= lb <= R
            if not ok.any():
                continue
            if depth >= word_max:
                truncated = True
                continue
            U = cur_m[ok]
            g = gens[x]
            child = np.stack(
                [
                    U[:, 0] * g[0] + U[:, 1] * g[2],
                    U[:, 0] * g[1] + U[:, 1] * g[3],
                    U[:, 2] * g[0] + U[:, 3] * g[2],
                    U[:, 2] * g[1] + U[:, 3] * g[3],
                ],
                axis=1,
            )
            new_m.append(child)
            new_l.append(np.full(len(child), x))
            new_p.append(cur_idx[ok])
        if not new_m:
            break
        cur_m = np.concatenate(new_m)
        cur_l = np.concatenate(new_l)
        par = np.concatenate(new_p)
        depth += 1
        cur_idx = np.arange(total, total + len(cur_m))
        total += len(cur_m)
        mats.append(cur_m)
        dist.append(_dist(_apply(cur_m, np.full(len(cur_m), O)), O))
        parent.append(par)
        letter.append(cur_l)
        length.append(np.full(len(cur_m), depth))

    dist_all = np.concatenate(dist)
    # the whole search tree is kept so words can be rebuilt from parent links
    keep = dist_all <= R
    return Ball(
        np.concatenate(mats),
        dist_all,
        np.concatenate(parent),
        np.concatenate(letter),
        np.concatenate(length),
        truncated,
        np.flatnonzero(keep),
    )


def locate(s: SurfaceModel, z: complex, max_steps: int = 100000, tol: float = 1e-12) -> tuple[tuple[int, ...], complex]:
    """Word g with z in g(F), and the representative g^-1(z) in F.

    Points within ``tol`` of a side count as inside, so a point on a paired
    side does not bounce between the two tiles.
    """
    normals = {x: H.geodesic_normal(*pq) for x, pq in s.sides.items()}
    word = []
    for _ in range(max_steps):
        u = H.point(z)
        best, val = None, tol
        for x, n in normals.items():
            v = H.mink(u, n)
            if v > val:
                best, val = x, v
        if best is None:
            return tuple(word), z
        word.append(best)
        z = s.letter_map(-best)(z)
    raise RuntimeError("point location did not terminate")
