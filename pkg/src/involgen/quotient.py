"""Reduction of representation images mod p and brute-force subgroup enumeration.

Only the closed-surface 2g x 2g block is reduced.  A matrix is stored as its
rows, each row encoded as a base-p integer; right multiplication by a fixed
generator then becomes a lookup in a table indexed by row code, so a whole
BFS frontier is advanced with a few numpy gathers.
"""

from dataclasses import dataclass

import numpy as np

from involgen.symhom import make_lattice


class NotSymplectic(ValueError):
    pass


class TooLarge(ValueError):
    pass


def sp_order(g, p):
    """|Sp(2g, F_p)| = p^(g^2) * prod_{i=1..g} (p^(2i) - 1)."""
    if g < 1:
        raise ValueError("g must be >= 1")
    if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
        raise ValueError(f"{p} is not prime")
    n = p ** (g * g)
    for i in range(1, g + 1):
        n *= p ** (2 * i) - 1
    return n


def closed_omega(g, p):
    L = make_lattice(g, 0)
    return np.asarray(L.omega, dtype=np.int64) % p


@dataclass(frozen=True)
class ModPMatrix:
    A: np.ndarray
    p: int

    @property
    def n(self):
        return self.A.shape[0]

    def key(self):
        return np.ascontiguousarray(self.A, dtype=np.uint8).tobytes()

    def preserves_form(self):
        Om = closed_omega(self.n // 2, self.p)
        A = self.A.astype(np.int64)
        return bool(np.array_equal((A.T @ Om @ A) % self.p, Om))

    def __matmul__(self, other):
        return ModPMatrix((self.A.astype(np.int64) @ other.A.astype(np.int64)) % self.p, self.p)


def reduce_mod(el, g, p):
    """Closed-surface block of a RepElement (or raw integer matrix) mod p."""
    M = el.M if hasattr(el, "M") else el
    block = np.array([[int(x) % p for x in row[: 2 * g]] for row in np.asarray(M)[: 2 * g]],
                     dtype=np.int64)
    return ModPMatrix(block, p)


def transvection_mod(v, p):
    """v |-> v + <v, c> c on F_p^(2g) for the vector c (length 2g)."""
    c = np.asarray(v, dtype=np.int64) % p
    Om = closed_omega(len(c) // 2, p)
    # column form: M x = x + (x^T Om c) c  ->  M = I + c (Om c)^T
    return ModPMatrix((np.eye(len(c), dtype=np.int64) + np.outer(c, Om @ c)) % p, p)


@dataclass
class Enumeration:
    order: int
    capped: bool
    levels: int

    @property
    def result(self):
        return "cap-exceeded" if self.capped else self.order


def _row_codes(n, p):
    """All row vectors of F_p^n, indexed by their base-p code (digit j = entry j)."""
    idx = np.arange(p ** n, dtype=np.int64)
    digits = np.empty((p ** n, n), dtype=np.int64)
    for j in range(n):
        digits[:, j] = (idx // p ** j) % p
    return digits


def _encode_rows(A, p):
    n = A.shape[1]
    weights = p ** np.arange(n, dtype=np.int64)
    return (A.astype(np.int64) % p) @ weights


def enumerate_generated(gens, cap=2_000_000, p=None):
    """Exact order of the group generated by ``gens`` (ModPMatrix list), or capped.

    ``cap`` bounds the number of stored elements; once exceeded the result is
    reported as ``cap-exceeded`` rather than a partial count.
    """
    gens = list(gens)
    if not gens:
        return Enumeration(1, False, 0)
    p = p or gens[0].p
    n = gens[0].n
    for G in gens:
        if G.p != p or G.n != n:
            raise ValueError("generators must share size and modulus")
        if not G.preserves_form():
            raise NotSymplectic("generator does not preserve the symplectic form mod p")
    base = p ** n
    if base ** n >= 2 ** 63 or base > 2 ** 20:
        raise TooLarge(f"matrices of size {n} mod {p} do not fit the packed key")

    rows = _row_codes(n, p)
    # table[code(r)] = code(r @ G)
    tables = [_encode_rows(rows @ G.A.astype(np.int64) % p, p) for G in gens]
    place = base ** np.arange(n, dtype=np.int64)

    def pack(R):
        return R @ place

    start = _encode_rows(np.eye(n, dtype=np.int64), p)[None, :]
    seen = np.unique(pack(start))
    frontier = start
    levels = 0
    while len(frontier):
        levels += 1
        cand = np.concatenate([t[frontier] for t in tables])
        keys, first = np.unique(pack(cand), return_index=True)
        fresh = ~np.isin(keys, seen, assume_unique=True)
        frontier = cand[first[fresh]]
        seen = np.union1d(seen, keys[fresh])
        if len(seen) > cap:
            return Enumeration(len(seen), True, levels)
    return Enumeration(len(seen), False, levels)


def lickorish_mod(g, p=2):
    """Transvections along alpha_i, beta_i, gamma_i on the closed block mod p."""
    out = []
    for i in range(g):
        e = np.zeros(2 * g, dtype=np.int64)
        e[i] = 1
        out.append(transvection_mod(e, p))
        f = np.zeros(2 * g, dtype=np.int64)
        f[g + i] = 1
        out.append(transvection_mod(f, p))
        if i < g - 1:
            c = np.zeros(2 * g, dtype=np.int64)
            c[i], c[i + 1] = 1, -1
            out.append(transvection_mod(c, p))
    return out


MAX_GENUS = 3


def quotient_verdict(gens, g, p=2, cap=2_000_000):
    """JSON-ready record of the mod-p generation check for a list of RepElements."""
    expected = sp_order(g, p)
    if g > MAX_GENUS or (p > 2 and g > 2):
        return {"p": p, "order": None, "expected": expected,
                "skipped": "quotient check skipped (size)"}
    mats = [reduce_mod(el, g, p) for el in gens]
    res = enumerate_generated(mats, cap=cap, p=p)
    return {"p": p, "order": None if res.capped else res.order, "expected": expected,
            "ok": (not res.capped) and res.order == expected}
