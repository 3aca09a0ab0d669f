"""Named curves on the genus g surface with b punctures and their homology classes.

Curve ids are strings: ``alpha{i}``, ``beta{i}``, ``gamma{i}``, ``delta{j}``,
``eta{j}`` and the lantern roles ``a1..a4``, ``x1..x3``.
"""

from dataclasses import dataclass, field

import numpy as np

from involgen.symhom import make_lattice, pairing, transvection, mat_mul


class NoLantern(ValueError):
    pass


@dataclass(frozen=True)
class SurfaceParams:
    g: int
    b: int = 0

    def __post_init__(self):
        if self.g < 1:
            raise ValueError(f"genus must be >= 1, got {self.g}")
        if self.b < 0:
            raise ValueError(f"number of punctures must be >= 0, got {self.b}")

    @property
    def k(self):
        return self.g // 2

    @property
    def lattice(self):
        return make_lattice(self.g, self.b)


def sigma(pivot, g, i):
    """Handle index permutation of rho1 (i -> g+1-i) or rho2 (i -> g+2-i, 1 fixed)."""
    if pivot == "rho1":
        return g + 1 - i
    if pivot == "rho2":
        return 1 if i == 1 else g + 2 - i
    raise ValueError(pivot)


@dataclass(frozen=True)
class LanternConfig:
    """The lantern with boundary alpha_{m+1}, alpha_{m-1}, gamma_{m-1}, gamma_m.

    ``boundary`` holds oriented classes B1..B4 with B1+B2+B3+B4 = 0 and
    ``interior`` the classes X1..X3, where X1 = B2+B3 is the class of
    alpha_m and X_j is the image of X1 under the pair swap exchanging the
    pairs (B1, X1) and (Bj, Xj).
    """

    m: int
    pivot: str
    boundary: tuple
    interior: tuple
    assignment: str = field(default="")

    @property
    def boundary_curves(self):
        m = self.m
        return (f"alpha{m + 1}", f"alpha{m - 1}", f"gamma{m - 1}", f"gamma{m}")


def lantern_center(g):
    """Center m and pivot involution: the pivot's handle map sends m+1 to m."""
    pivot = "rho1" if g % 2 == 0 else "rho2"
    for m in range(2, g):
        if sigma(pivot, g, m + 1) == m:
            return m, pivot
    raise NoLantern(f"no lantern center for genus {g}")


def _pair_swap_consistent(B, X, j):
    """Is X[j] the image of X1 under the swap B1 <-> Bj fixing the other two?

    A sign-uniform swap s*B1 <-> s*Bj, s*Bl fixed (ΣB = 0 forces one sign)
    sends X1 = B2 + B3 to s * (B2 + B3 with index 1 and j exchanged).
    """
    idx = [0, 1, 2, 3]
    idx[0], idx[j] = idx[j], idx[0]
    image = B[idx[1]] + B[idx[2]]
    return X[j] == image or X[j] == -image


def lantern_config(p):
    if p.g < 3:
        raise NoLantern(f"the lantern needs genus >= 3, got {p.g}")
    L = p.lattice
    m, pivot = lantern_center(p.g)
    a = L.a
    B1 = a(m + 1)
    B2 = -a(m - 1)
    B3 = a(m - 1) - a(m)
    B4 = a(m) - a(m + 1)
    B = (B1, B2, B3, B4)
    X1 = B2 + B3
    candidates = [
        ("x2=B1+B3,x3=B1+B2", (X1, B1 + B3, B1 + B2)),
        ("x2=B1+B2,x3=B1+B3", (X1, B1 + B2, B1 + B3)),
    ]
    for name, X in candidates:
        if _lantern_identity(L, B, X) and _pair_swap_consistent(B, X, 1) and _pair_swap_consistent(B, X, 2):
            labels = ("a1", "a2", "a3", "a4")
            return LanternConfig(
                m=m, pivot=pivot,
                boundary=tuple(b.named(l) for b, l in zip(B, labels)),
                interior=tuple(x.named(f"x{i + 1}") for i, x in enumerate(X)),
                assignment=name,
            )
    raise NoLantern("no interior assignment satisfies the lantern identity")


def _product(L, classes):
    M = L.identity()
    for c in classes:
        M = mat_mul(M, transvection(L, c))
    return M


def _lantern_identity(L, B, X):
    return bool(np.array_equal(_product(L, X), _product(L, B)))


def lantern_identity_holds(p, cfg=None):
    cfg = cfg or lantern_config(p)
    return _lantern_identity(p.lattice, cfg.boundary, cfg.interior)


@dataclass(frozen=True)
class CurveRegistry:
    params: SurfaceParams
    classes: dict

    def __getitem__(self, curve_id):
        return self.classes[curve_id]

    def __contains__(self, curve_id):
        return curve_id in self.classes

    def ids(self):
        return list(self.classes)

    def handle_curves(self):
        """The 3g-1 Lickorish curves in the order alpha, beta, gamma."""
        g = self.params.g
        return ([f"alpha{i}" for i in range(1, g + 1)]
                + [f"beta{i}" for i in range(1, g + 1)]
                + [f"gamma{i}" for i in range(1, g)])

    def as_table(self):
        L = self.params.lattice
        return [{"curve": cid, "coords": list(c.coords), "class": L.describe(c)}
                for cid, c in self.classes.items()]


def build_registry(p):
    """Classes of every named curve.

    [delta_j] = a_1 + c_1 + ... + c_j, and [eta_{j+1}] is the image of
    [delta_j] under the inverse rotation.
    """
    from involgen.rep import rotation
    from involgen.symhom import apply

    L = p.lattice
    g, b = p.g, p.b
    classes = {}
    for i in range(1, g + 1):
        classes[f"alpha{i}"] = L.a(i).named(f"alpha{i}")
    for i in range(1, g + 1):
        classes[f"beta{i}"] = L.b(i).named(f"beta{i}")
    for i in range(1, g):
        classes[f"gamma{i}"] = (L.a(i) - L.a(i + 1)).named(f"gamma{i}")
    if b >= 1:
        delta = L.a(1)
        classes["delta0"] = delta.named("delta0")
        for j in range(1, b):
            delta = delta + L.c(j)
            classes[f"delta{j}"] = delta.named(f"delta{j}")
        Rinv = rotation(p).inverse()
        for j in range(b):
            classes[f"eta{j + 1}"] = apply(Rinv.M, classes[f"delta{j}"]).named(f"eta{j + 1}")
    if g >= 3:
        cfg = lantern_config(p)
        for c in cfg.boundary + cfg.interior:
            classes[c.label] = c
    return CurveRegistry(p, classes)


def pairing_profile_holds(p):
    """Intersection pattern of the alpha/beta/gamma chain, checked exactly."""
    reg = build_registry(p)
    L = p.lattice
    g = p.g
    for i in range(1, g + 1):
        for j in range(1, g + 1):
            if pairing(L, reg[f"alpha{i}"], reg[f"beta{j}"]) != (1 if i == j else 0):
                return False
    for i in range(1, g):
        gam = reg[f"gamma{i}"]
        if pairing(L, gam, reg[f"beta{i}"]) * pairing(L, gam, reg[f"beta{i + 1}"]) != -1:
            return False
        for j in range(1, g + 1):
            if pairing(L, gam, reg[f"alpha{j}"]) != 0:
                return False
            if j not in (i, i + 1) and pairing(L, gam, reg[f"beta{j}"]) != 0:
                return False
    return True
