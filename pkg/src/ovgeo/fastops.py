"""Vectorized evaluation of point maps over the whole ovoid with numpy.

Field arithmetic is lifted to int64 arrays through the discrete-log tables
of the underlying field, with explicit zero masks since log(0) is not a
thing.  Point indices follow ovoid order: 0 is the point at infinity and
affine (x, y) sits at 1 + (x << degree) + y.
"""

import numpy as np

from .ovoid_group import GroupElement, SuzukiGroup


class VectorOvoid:
    """Numpy tables for one field plus word evaluation on point arrays."""

    def __init__(self, group: SuzukiGroup):
        self.group = group
        f = group.field
        self.q = f.q
        self.degree = f.degree
        self.n = group.ovoid.size
        # log[0] never read when masks are applied; keep a poison value
        log = np.zeros(f.q, dtype=np.int64)
        for v in range(1, f.q):
            log[v] = f.log[v]
        self.log_tab = log
        self.exp_tab = np.array(f.exp, dtype=np.int64)
        self.pow2_tabs = [np.array(t, dtype=np.int64) for t in f.pow2]
        self.theta_tab = self.pow2_tabs[f.e + 1]
        self.r = f.r

    def mul_vv(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        out = self.exp_tab[self.log_tab[a] + self.log_tab[b]]
        return np.where((a == 0) | (b == 0), 0, out)

    def mul_vs(self, a: np.ndarray, s: int) -> np.ndarray:
        if s == 0:
            return np.zeros_like(a)
        out = self.exp_tab[self.log_tab[a] + self.group.field.log[s]]
        return np.where(a == 0, 0, out)

    def inv_v(self, a: np.ndarray) -> np.ndarray:
        """Inverse on nonzero entries; zero entries stay zero (mask upstream)."""
        out = self.exp_tab[(self.q - 1) - self.log_tab[a]]
        return np.where(a == 0, 0, out)

    def pow_const(self, a: np.ndarray, k: int) -> np.ndarray:
        k = k % (self.q - 1)
        if k == 0:
            return np.where(a == 0, 0, np.ones_like(a))
        out = self.exp_tab[(self.log_tab[a] * k) % (self.q - 1)]
        return np.where(a == 0, 0, out)

    def _split(self, pts: np.ndarray):
        aff = pts > 0
        t = np.where(aff, pts - 1, 0)
        return aff, t >> self.degree, t & (self.q - 1)

    def _join(self, aff: np.ndarray, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return np.where(aff, 1 + (x << self.degree) + y, 0)

    def apply_atom(self, atom: tuple, pts: np.ndarray) -> np.ndarray:
        kind = atom[0]
        aff, x, y = self._split(pts)
        if kind == "T":
            a, b = atom[1], atom[2]
            ta = self.group.field.theta(a)
            x2 = x ^ a
            y2 = y ^ b ^ self.mul_vs(x, ta)
            return self._join(aff, np.where(aff, x2, 0), np.where(aff, y2, 0))
        if kind == "M":
            lam = atom[1]
            lt1 = self.group.field.mul(self.group.field.theta(lam), lam)
            return self._join(aff, self.mul_vs(x, lam), self.mul_vs(y, lt1))
        if kind == "F":
            tab = self.pow2_tabs[atom[1] % self.degree]
            return self._join(aff, tab[x], tab[y])
        if kind == "W":
            # z = xy + x^(theta+2) + y^theta; origin <-> infinity swap
            z = self.mul_vv(x, y) ^ self.pow_const(x, self.r + 2) ^ self.theta_tab[y]
            zi = self.inv_v(z)
            x2 = self.mul_vv(y, zi)
            y2 = self.mul_vv(x, zi)
            out = self._join(aff & (z != 0), x2, y2)
            # affine points with z == 0 (only the origin) go to infinity
            out = np.where(aff & (z == 0), 0, out)
            # infinity goes to the origin
            return np.where(~aff, 1, out)
        raise ValueError(f"unknown atom {atom!r}")

    def eval_word(self, word: tuple, pts: np.ndarray) -> np.ndarray:
        out = pts
        for atom in reversed(word):
            out = self.apply_atom(atom, out)
        return out

    def materialize(self, g: GroupElement) -> np.ndarray:
        """Full image table of a group element over all points."""
        pts = np.arange(self.n, dtype=np.int64)
        if g.perm is not None:
            return np.frombuffer(g.perm[: self.n], dtype=np.uint8).astype(np.int64)
        word = g.word if g.word is not None else g.canonical_word()
        return self.eval_word(word, pts)
