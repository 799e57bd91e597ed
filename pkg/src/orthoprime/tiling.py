"""Walking a geodesic through the tiles g(F) of the side-pairing tiling.

The geodesic is carried in the frame of the current tile: crossing side x
into g x (F) applies x^-1 to the point and tangent, so coordinates stay of
moderate size however many tiles are crossed.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

import numpy as np

from . import hyperboloid as H
from . import words as W
from .ball import locate
from .surfaces import SurfaceModel


@dataclass(frozen=True)
class SideData:
    letters: tuple[int, ...]
    normals: np.ndarray  # (n, 3), positive outside F across the side
    inverse: dict  # letter -> entries of x^-1


@lru_cache(maxsize=64)
def side_data(s: SurfaceModel) -> SideData:
    letters = tuple(sorted(s.sides))
    normals = np.array([H.geodesic_normal(*s.sides[x]) for x in letters])
    return SideData(letters, normals, {x: s.letter_map(-x).as_tuple() for x in letters})


@dataclass
class Step:
    word: W.Word  # the tile is word(F)
    P: np.ndarray  # position at local time 0, in the tile frame
    V: np.ndarray
    start: float  # elapsed time at local time 0
    exit: float  # local time at which the geodesic leaves the tile


def _crossing_up(a: float, b: float) -> float:
    """First t > 0 where a cosh t + b sinh t becomes positive."""
    # the single zero has tanh t = -a/b; the sign change there follows b
    if b <= 0 or abs(b) <= abs(a):
        return math.inf
    tz = math.atanh(-a / b)
    return tz if tz > 1e-12 else math.inf


def renorm(P: np.ndarray, V: np.ndarray):
    P = P / math.sqrt(-H.mink(P, P))
    V = V + H.mink(V, P) * P
    return P, V / math.sqrt(H.mink(V, V))


def tile_exit(sd: SideData, P: np.ndarray, V: np.ndarray) -> tuple[float, int | None]:
    a = sd.normals @ (H.J * P)
    b = sd.normals @ (H.J * V)
    best, letter = math.inf, None
    for idx, x in enumerate(sd.letters):
        tt = _crossing_up(a[idx], b[idx])
        if tt < best:
            best, letter = tt, x
    return best, letter


def start_frame(s: SurfaceModel, z: complex, toward) -> tuple[W.Word, np.ndarray, np.ndarray]:
    """Tile of z and the unit tangent at z pointing to ``toward``.

    ``toward`` is an interior point (complex) or an ideal point (float).
    """
    g, zl = locate(s, z)
    h_inv = s.eval_word(g).inverse().as_tuple()
    P = H.point(zl)
    if isinstance(toward, complex):
        Q = H.act(h_inv, H.point(toward))
        ch = -H.mink(P, Q)
        V = Q - ch * P
    else:
        L = H.act(h_inv, H.light(toward))
        V = L / (-H.mink(P, L)) - P
    return g, *renorm(P, V)


def walk(s: SurfaceModel, g: W.Word, P: np.ndarray, V: np.ndarray, T: float = math.inf, budget: int = 10_000) -> Iterator[Step]:
    """Tiles met by the geodesic x(t) = cosh t P + sinh t V for t in [0, T]."""
    sd = side_data(s)
    elapsed = 0.0
    for _ in range(budget):
        t_exit, x = tile_exit(sd, P, V)
        yield Step(g, P, V, elapsed, t_exit)
        if x is None or elapsed + t_exit >= T:
            return
        ch, sh = math.cosh(t_exit), math.sinh(t_exit)
        P, V = ch * P + sh * V, sh * P + ch * V
        m = sd.inverse[x]
        P, V = renorm(H.act(m, P), H.act(m, V))
        g = W.reduce(g + (x,))
        elapsed += t_exit
