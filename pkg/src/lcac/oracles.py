"""Independent cross-checks that share no code path with the main solvers."""

from __future__ import annotations

from fractions import Fraction

from .core import AlgebraPresentation
from .polyring import D, Poly, X


def _monomial_vector(polys, keys):
    vec = []
    for idx, p in enumerate(polys):
        terms = p.terms
        vec.extend(terms.get(k, Fraction(0)) for k in keys[idx])
    return vec


def _rank(vectors) -> int:
    rows = [list(v) for v in vectors if any(v)]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        pivot = None
        for r in range(rank, len(rows)):
            if rows[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for r in range(rank + 1, len(rows)):
            if rows[r][col]:
                f = rows[r][col] / rows[rank][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def monomial_scan_reducible(E: AlgebraPresentation, target: str, sign: int, ideal: str, degree: int) -> bool:
    """Is there ``g`` with ``deg g <= degree`` making the shift by ``sign*g*v``
    kill the ideal components?  Images of each ``d^k`` are computed from
    the change-of-generator formula directly::

        [U~ x W~]_v = [U x W]_v + s([U = T] (-x)^k [v x W]_v
                                     + [W = T] (d + x)^k [U x v]_v
                                     - d^k [U x W]_T)

    and the target lies in their span iff the ranks agree.
    """
    t, iv = E.index(target), E.index(ideal)
    S = E.structure
    pairs = []
    for u in range(E.rank):
        if u == iv:
            continue
        pairs.append((u, t))
        if u != t:
            pairs.append((t, u))
    current = [S[(u, w)][iv] for u, w in pairs]
    images = []
    for k in range(degree + 1):
        image = []
        for u, w in pairs:
            delta = -(D ** k) * S[(u, w)][t]
            if u == t:
                delta = delta + (-X) ** k * S[(iv, w)][iv]
            if w == t:
                delta = delta + (D + X) ** k * S[(u, iv)][iv]
            image.append(delta * sign)
        images.append(image)
    keys = []
    for idx in range(len(pairs)):
        monos = set(current[idx].terms)
        for image in images:
            monos |= set(image[idx].terms)
        keys.append(sorted(monos))
    target_vec = _monomial_vector([-c for c in current], keys)
    image_vecs = [_monomial_vector(image, keys) for image in images]
    return _rank(image_vecs) == _rank(image_vecs + [target_vec])


def coboundary_images(a, degree: int) -> list[Poly]:
    """Images of ``d^k`` under the Vir coboundary into ``M_{a,0}``,
    written out by hand; used to double check the table rows."""
    a = Poly.coerce(a)
    out = []
    for k in range(degree + 1):
        g = D ** k
        shifted = (D + X) ** k
        back = (-X) ** k
        out.append(shifted * (D + a * X) - back * ((1 - a) * D - a * X) - (D + 2 * X) * g)
    return out
