"""Integer homology of a punctured surface and its symplectic linear algebra.

The lattice of a genus ``g`` surface with ``b`` punctures has basis

    a_1..a_g, b_1..b_g, c_1..c_{b-1}

with ``<a_i, b_i> = +1`` and the puncture classes ``c_m`` central for the
pairing.  The class of the last puncture is ``c_b = -(c_1 + ... + c_{b-1})``.

Matrices act on column vectors and are stored as numpy arrays.  Products
go through :func:`mat_mul`, which stays in int64 only when the result is
provably representable and falls back to Python integers otherwise, so all
arithmetic is exact.
"""

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from involgen import intlin


class InvalidGenus(ValueError):
    pass


class DegenerateTwist(ValueError):
    pass


class NoCompletion(ValueError):
    """The constraints of a partial involution cannot be completed."""


class InvalidPermutation(ValueError):
    pass


_INT64_SAFE = 2 ** 62


def _maxabs(A):
    if A.size == 0:
        return 0
    return int(np.max(np.abs(A)))


def as_exact(A):
    """Return ``A`` as int64 if every entry fits comfortably, else as objects."""
    A = np.asarray(A)
    if A.dtype == np.int64:
        return A
    if A.dtype == object:
        if A.size == 0 or _maxabs(A) < _INT64_SAFE:
            return A.astype(np.int64)
        return A
    return A.astype(np.int64)


def mat_mul(A, B):
    """Exact integer matrix product."""
    A = np.asarray(A)
    B = np.asarray(B)
    inner = A.shape[-1] if A.ndim else 1
    if (A.dtype == np.int64 and B.dtype == np.int64
            and _maxabs(A) * _maxabs(B) * max(inner, 1) < _INT64_SAFE):
        return A @ B
    return as_exact(A.astype(object) @ B.astype(object))


@dataclass(frozen=True)
class HClass:
    """A homology class: integer coordinates in the lattice basis."""

    coords: tuple
    label: str = None

    @classmethod
    def of(cls, vec, label=None):
        return cls(tuple(int(x) for x in vec), label)

    @property
    def vec(self):
        return as_exact(np.array(self.coords, dtype=object))

    def __len__(self):
        return len(self.coords)

    def __add__(self, other):
        return HClass(tuple(x + y for x, y in zip(self.coords, other.coords)))

    def __sub__(self, other):
        return HClass(tuple(x - y for x, y in zip(self.coords, other.coords)))

    def __neg__(self):
        return HClass(tuple(-x for x in self.coords))

    def __rmul__(self, k):
        return HClass(tuple(k * x for x in self.coords))

    def __eq__(self, other):
        if not isinstance(other, HClass):
            return NotImplemented
        return self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def named(self, label):
        return HClass(self.coords, label)

    def is_zero(self):
        return not any(self.coords)


@dataclass(frozen=True)
class HomologyLattice:
    genus: int
    punctures: int
    labels: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        g, b = self.genus, self.punctures
        labels = ([f"a{i}" for i in range(1, g + 1)]
                  + [f"b{i}" for i in range(1, g + 1)]
                  + [f"c{m}" for m in range(1, b)])
        object.__setattr__(self, "labels", tuple(labels))

    @property
    def rank(self):
        return 2 * self.genus + max(self.punctures - 1, 0)

    @property
    def handle_rank(self):
        return 2 * self.genus

    @cached_property
    def omega(self):
        g, n = self.genus, self.rank
        W = np.zeros((n, n), dtype=np.int64)
        for i in range(g):
            W[i, g + i] = 1
            W[g + i, i] = -1
        return W

    def zero(self):
        return HClass((0,) * self.rank)

    def a(self, i):
        return self._unit(i - 1, f"a{i}")

    def b(self, i):
        return self._unit(self.genus + i - 1, f"b{i}")

    def c(self, m):
        """Puncture class c_m for 1 <= m <= b, expanding c_b."""
        b = self.punctures
        if not 1 <= m <= b:
            raise IndexError(f"no puncture {m} on a surface with {b} punctures")
        if m < b:
            return self._unit(2 * self.genus + m - 1, f"c{m}")
        coords = [0] * self.rank
        for j in range(2 * self.genus, self.rank):
            coords[j] = -1
        return HClass(tuple(coords), f"c{b}")

    def _unit(self, idx, label):
        coords = [0] * self.rank
        coords[idx] = 1
        return HClass(tuple(coords), label)

    def identity(self):
        return np.eye(self.rank, dtype=np.int64)

    def describe(self, v):
        """Render a class as a signed sum of basis labels."""
        coords = v.coords if isinstance(v, HClass) else tuple(int(x) for x in v)
        terms = []
        for lab, x in zip(self.labels, coords):
            if x == 0:
                continue
            sign = "-" if x < 0 else "+"
            mag = "" if abs(x) == 1 else f"{abs(x)}"
            terms.append(f"{sign}{mag}{lab}")
        if not terms:
            return "0"
        s = "".join(terms)
        return s[1:] if s[0] == "+" else s


def make_lattice(g, b):
    if g < 1:
        raise InvalidGenus(f"genus must be >= 1, got {g}")
    if b < 0:
        raise ValueError(f"number of punctures must be >= 0, got {b}")
    return HomologyLattice(g, b)


def _coords(L, v):
    coords = v.coords if isinstance(v, HClass) else tuple(int(x) for x in np.asarray(v).ravel())
    if len(coords) != L.rank:
        raise ValueError(f"class has length {len(coords)}, lattice rank is {L.rank}")
    return coords


def pairing(L, u, v):
    """Algebraic intersection number <u, v>."""
    u = _coords(L, u)
    v = _coords(L, v)
    g = L.genus
    return sum(u[i] * v[g + i] - u[g + i] * v[i] for i in range(g))


def transvection(L, c):
    """Matrix of v -> v + <v, c> c."""
    cc = _coords(L, c)
    if not any(cc):
        raise DegenerateTwist("transvection along the zero class")
    cvec = np.array(cc, dtype=object)
    # row functional v -> <v, c> is (Omega c)^T v
    functional = L.omega.astype(object) @ cvec
    M = np.eye(L.rank, dtype=object) + np.outer(cvec, functional)
    return as_exact(M)


def apply(M, v):
    """Image of a class under a matrix, as an HClass."""
    vec = np.array(v.coords if isinstance(v, HClass) else v, dtype=object)
    return HClass.of(M.astype(object) @ vec)


def is_symplectic(L, M):
    M = np.asarray(M)
    Om = L.omega
    return bool(np.array_equal(mat_mul(mat_mul(M.T, Om), M), Om))


def is_involution(M):
    M = np.asarray(M)
    return bool(np.array_equal(mat_mul(M, M), np.eye(M.shape[0], dtype=np.int64)))


def determinant(M):
    return intlin.determinant([[int(x) for x in row] for row in np.asarray(M)])


def puncture_block(L, perm):
    """Matrix block sending c_j to c_{perm(j)} in the basis c_1..c_{b-1}.

    ``perm`` is a sequence of 0-based images of length b.
    """
    b = L.punctures
    n = max(b - 1, 0)
    P = np.zeros((n, n), dtype=np.int64)
    for j in range(n):
        t = perm[j]
        if t == b - 1:
            P[:, j] = -1
        else:
            P[t, j] = 1
    return P


def complete_partial_involution(L, pairs, fixed=(), puncture_perm=None):
    """Complete partial data to an Omega-preserving integral involution.

    ``pairs`` is a list of ``(u, v)``: the result sends u to v and v to u.
    ``fixed`` holds classes w (sent to w) or ``(w, sign)`` (sent to sign*w).
    ``puncture_perm`` (0-based image sequence, must be an involution) fixes
    the action on puncture classes; the identity is used when omitted.

    The handle block is solved on the saturation W of the constrained
    classes.  If W is isotropic, a dual isotropic lift Z is built and the
    action on Z is the contragredient of the action on W; if W is
    unimodular, it splits off orthogonally.  The result is the identity on
    the orthogonal complement of the completed block, so it is
    deterministic in its inputs.
    """
    g, b = L.genus, L.punctures
    h = 2 * g
    if puncture_perm is None:
        puncture_perm = tuple(range(b))
    puncture_perm = tuple(puncture_perm)
    if len(puncture_perm) != b or sorted(puncture_perm) != list(range(b)):
        raise InvalidPermutation("puncture action is not a permutation of the punctures")
    if any(puncture_perm[puncture_perm[i]] != i for i in range(b)):
        raise InvalidPermutation("puncture action is not an involution")
    P = puncture_block(L, puncture_perm)

    src, dst = [], []
    for u, v in pairs:
        u, v = _coords(L, u), _coords(L, v)
        src += [u, v]
        dst += [v, u]
    for item in fixed:
        w, sign = item if isinstance(item, tuple) and len(item) == 2 and not isinstance(item[0], int) else (item, 1)
        w = _coords(L, w)
        src.append(w)
        dst.append(tuple(sign * x for x in w))

    # Puncture parts must be carried by the permutation block alone.
    for u, v in zip(src, dst):
        uc = np.array(u[h:], dtype=object)
        vc = np.array(v[h:], dtype=object)
        if uc.size and not np.array_equal(P.astype(object) @ uc, vc):
            raise NoCompletion("puncture components of a constraint disagree with the puncture action")

    H = _complete_handle_block(g, [u[:h] for u in src], [v[:h] for v in dst])
    M = np.zeros((L.rank, L.rank), dtype=object)
    M[:h, :h] = H
    if b > 1:
        M[h:, h:] = P
    return as_exact(M)


def _handle_pair(g, u, v):
    return sum(u[i] * v[g + i] - u[g + i] * v[i] for i in range(g))


def _complete_handle_block(g, src, dst):
    h = 2 * g
    pairs = [(list(u), list(v)) for u, v in zip(src, dst) if any(u) or any(v)]
    for u, v in pairs:
        if not any(u) or not any(v):
            raise NoCompletion("a nonzero class is constrained to map to zero")
    # pairing must be preserved on the constrained classes
    for i, (u1, v1) in enumerate(pairs):
        for u2, v2 in pairs[i:]:
            if _handle_pair(g, u1, u2) != _handle_pair(g, v1, v2):
                raise NoCompletion("constraints do not preserve the intersection pairing")
    if not pairs:
        return np.eye(h, dtype=object)

    basis = intlin.saturation_basis([u for u, _ in pairs] + [v for _, v in pairs], h)
    r = len(basis)
    Bt = intlin.transpose(basis)  # h x r, columns are the basis of W
    # coordinates of sources and images in the W basis
    Csrc = intlin.solve_rational(Bt, intlin.transpose([u for u, _ in pairs]))
    Cdst = intlin.solve_rational(Bt, intlin.transpose([v for _, v in pairs]))
    # F Csrc = Cdst, solve for F^T: Csrc^T F^T = Cdst^T
    Ft = intlin.solve_rational(intlin.transpose(Csrc), intlin.transpose(Cdst))
    if Ft is None:
        raise NoCompletion("constraints are not linearly consistent")
    F = intlin.integral(intlin.transpose(Ft))
    if F is None:
        raise NoCompletion("constraints force a non-integral map on the saturated span")
    # the solve is exact only if F reproduces every constraint
    Cs = [[int(x) for x in row] for row in Csrc]
    Cd = [[int(x) for x in row] for row in Cdst]
    if intlin.matmul(F, Cs) != Cd:
        raise NoCompletion("constraints are not linearly consistent")
    if intlin.matmul(F, F) != intlin.identity(r):
        raise NoCompletion("constraints are not involutive on their span")

    Om = [[0] * h for _ in range(h)]
    for i in range(g):
        Om[i][g + i] = 1
        Om[g + i][i] = -1
    gram = [[_handle_pair(g, x, y) for y in basis] for x in basis]
    if intlin.matmul(intlin.matmul(intlin.transpose(F), gram), F) != gram:
        raise NoCompletion("constraints do not preserve the intersection pairing")

    if all(x == 0 for row in gram for x in row):
        T = _isotropic_completion(g, basis, F, Om)
    elif abs(intlin.determinant(gram)) == 1:
        T = _unimodular_completion(g, basis, F, gram, Om)
    else:
        raise NoCompletion(
            "constrained sublattice is neither isotropic nor unimodular; "
            "completion is only implemented for those two shapes")
    return np.array(T, dtype=object)


def _isotropic_completion(g, basis, F, Om):
    h = 2 * g
    r = len(basis)
    # functionals v -> <w_i, v>  are rows w_i^T Om
    L = intlin.matmul(basis, Om)
    try:
        Z = intlin.transpose(intlin.right_inverse(L))  # rows z_j with <w_i, z_j> = delta_ij
    except ValueError as exc:
        raise NoCompletion(f"no dual lift for the constrained classes: {exc}") from exc
    # make the dual set isotropic: z_i += sum_{j>i} -<z_i, z_j> w_j
    for i in range(r):
        for j in range(i + 1, r):
            c = _handle_pair(g, Z[i], Z[j])
            if c:
                Z[i] = [x - c * y for x, y in zip(Z[i], basis[j])]
    G = intlin.transpose(F)  # contragredient of an involution is F^{-T} = F^T
    return _assemble(h, basis, Z, F, G, g)


def _assemble(h, W, Z, F, G, g):
    """M = v + (f - 1)(P v) for the hyperbolic block spanned by W and Z."""
    r = len(W)
    M = [[0] * h for _ in range(h)]
    for col in range(h):
        e = [0] * h
        e[col] = 1
        # P e = sum <e, z_i> w_i + sum <w_i, e> z_i
        alpha = [_handle_pair(g, e, Z[i]) for i in range(r)]
        beta = [_handle_pair(g, W[i], e) for i in range(r)]
        img = list(e)
        for i in range(r):
            for k in range(r):
                fa = alpha[i] * (F[k][i] - (1 if k == i else 0))
                fb = beta[i] * (G[k][i] - (1 if k == i else 0))
                if fa:
                    img = [x + fa * y for x, y in zip(img, W[k])]
                if fb:
                    img = [x + fb * y for x, y in zip(img, Z[k])]
        for row in range(h):
            M[row][col] = img[row]
    return M


def _unimodular_completion(g, basis, F, gram, Om):
    h = 2 * g
    r = len(basis)
    ginv = intlin.integral(intlin.solve_rational(gram, intlin.identity(r)))
    M = [[0] * h for _ in range(h)]
    for col in range(h):
        e = [0] * h
        e[col] = 1
        # P e = sum_i x_i w_i with gram x = (<w_j, e>)_j
        rhs = [_handle_pair(g, w, e) for w in basis]
        x = intlin.matvec(ginv, rhs)
        fx = intlin.matvec(F, x)
        img = list(e)
        for i in range(r):
            d = fx[i] - x[i]
            if d:
                img = [a + d * y for a, y in zip(img, basis[i])]
        for row in range(h):
            M[row][col] = img[row]
    return M
