"""Reference implementations of the hot kernels (no compiled code)."""

import numpy as np


def _is_canonical(word):
    n = len(word)
    doubled = word + word
    rev = word[::-1]
    rdoubled = rev + rev
    for s in range(n):
        if doubled[s:s + n] < word or rdoubled[s:s + n] < word:
            return False
    return True


def corona_words(pair_angle, target, tol, max_len):
    """Canonical cyclic 0/1 words whose consecutive-pair angles sum to ``target``.

    ``pair_angle[a][b]`` is the angle contributed by neighbours ``a`` then ``b``
    (0 = large, 1 = small).  Returns a list of tuples, each the lexicographic
    minimum over rotations and reflections, in DFS order.
    """
    pa = [[float(pair_angle[a][b]) for b in range(2)] for a in range(2)]
    min_pair = min(min(row) for row in pa)
    limit = target + tol
    out = []
    word = []

    def extend(total):
        n = len(word)
        if n >= 3:
            closed = total + pa[word[-1]][word[0]]
            if abs(closed - target) <= tol:
                w = tuple(word)
                if _is_canonical(w):
                    out.append(w)
        if n >= max_len or total + 2.0 * min_pair > limit:
            return
        last = word[-1]
        for c in (0, 1):
            word.append(c)
            extend(total + pa[last][c])
            word.pop()

    for first in (0, 1):
        word.append(first)
        extend(0.0)
        word.pop()
    return out


def contact_pairs(x, y, rho, shifts, reach):
    """Ordered pairs ``(i, j, s)`` with ``|p_j + shift_s - p_i| <= (rho_i + rho_j)(1 + reach)``.

    Self-pairs under the zero shift are skipped.  Returns four arrays
    ``(i, j, s, dist)`` in (s, i, j) lexicographic order.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    rho = np.asarray(rho, dtype=float)
    shifts = np.asarray(shifts, dtype=float).reshape(-1, 2)
    cut = (rho[:, None] + rho[None, :]) * (1.0 + reach)
    out_i, out_j, out_s, out_d = [], [], [], []
    for s, (sx, sy) in enumerate(shifts):
        dx = (x[None, :] + sx) - x[:, None]
        dy = (y[None, :] + sy) - y[:, None]
        d = np.sqrt(dx * dx + dy * dy)
        mask = d <= cut
        if sx == 0.0 and sy == 0.0:
            np.fill_diagonal(mask, False)
        ii, jj = np.nonzero(mask)
        out_i.append(ii)
        out_j.append(jj)
        out_s.append(np.full(ii.shape, s, dtype=np.intp))
        out_d.append(d[ii, jj])
    if not out_i:
        empty = np.zeros(0, dtype=np.intp)
        return empty, empty, empty, np.zeros(0)
    return (
        np.concatenate(out_i).astype(np.intp),
        np.concatenate(out_j).astype(np.intp),
        np.concatenate(out_s).astype(np.intp),
        np.concatenate(out_d),
    )
