"""Images of mapping classes: an integer matrix on homology plus a puncture permutation.

A :class:`RepElement` is only meaningful with the compatibility law
``M c_j = c_{perm(j)}`` (with ``c_b = -(c_1 + ... + c_{b-1})``).  Every
constructor here builds matrices whose puncture block is generated from the
permutation, and :func:`check_relations` re-verifies the law anyway.
"""

from dataclasses import dataclass, field
from itertools import product

import numpy as np

from involgen.permgrp import Perm, canonical_r, pairing_involution
from involgen.surface import build_registry, lantern_config, sigma
from involgen.symhom import (
    NoCompletion, apply, as_exact, complete_partial_involution,
    is_involution, is_symplectic, mat_mul, puncture_block, transvection,
)


class BranchNotAvailable(ValueError):
    """The requested generator does not exist for these (g, b)."""


class ConstructionFailed(RuntimeError):
    """Constraints that should be satisfiable had no completion."""


@dataclass(frozen=True)
class RepElement:
    M: np.ndarray = field(compare=False)
    perm: Perm = field(compare=False)
    name: str = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "M", as_exact(self.M))

    @property
    def rank(self):
        return self.M.shape[0]

    def key(self):
        M = self.M
        data = M.tobytes() if M.dtype == np.int64 else repr(M.tolist()).encode()
        return data, self.perm.images

    def __eq__(self, other):
        if not isinstance(other, RepElement):
            return NotImplemented
        return equal(self, other)

    def __hash__(self):
        return hash(self.key())

    def __matmul__(self, other):
        return compose(self, other)

    def inverse(self):
        return inverse(self)

    def act(self, v):
        return apply(self.M, v)

    def named(self, name):
        return RepElement(self.M, self.perm, name)


def _check_same(f, g):
    if f.rank != g.rank or f.perm.degree != g.perm.degree:
        raise ValueError("elements live on different lattices")


def compose(f, g):
    """f after g."""
    _check_same(f, g)
    return RepElement(mat_mul(f.M, g.M), f.perm * g.perm)


def equal(f, g):
    _check_same(f, g)
    return f.perm == g.perm and bool(np.array_equal(f.M, g.M))


def identity(p):
    return RepElement(p.lattice.identity(), Perm.identity(p.b), "id")


def inverse(f):
    """Exact inverse using the block structure [[H, 0], [C, P]]."""
    n = f.rank
    b = f.perm.degree
    h = n - max(b - 1, 0)
    g = h // 2
    M = f.M.astype(object)
    H = M[:h, :h]
    Om = np.zeros((h, h), dtype=object)
    for i in range(g):
        Om[i, g + i] = 1
        Om[g + i, i] = -1
    Hinv = -(Om @ H.T @ Om)
    out = np.zeros((n, n), dtype=object)
    out[:h, :h] = Hinv
    if n > h:
        C = M[h:, :h]
        pinv = f.perm.inverse()
        Pinv = puncture_block_from_perm(b, pinv).astype(object)
        out[h:, h:] = Pinv
        out[h:, :h] = -(Pinv @ C @ Hinv)
    inv = RepElement(out, f.perm.inverse(), None if f.name is None else f"{f.name}^-1")
    if not np.array_equal(mat_mul(f.M, inv.M), np.eye(n, dtype=np.int64)):
        raise ValueError("matrix is not invertible over the integers in block form")
    return inv


def puncture_block_from_perm(b, perm):
    from involgen.symhom import HomologyLattice
    return puncture_block(HomologyLattice(1, b), perm.images)


def is_compatible(p, f):
    """Compatibility law M c_j = c_{perm(j)} for every puncture j."""
    L = p.lattice
    for j in range(1, p.b + 1):
        if apply(f.M, L.c(j)) != L.c(f.perm(j)):
            return False
    return True


def twist(p, c, name=None):
    """The homology image of the Dehn twist along a curve of class c."""
    return RepElement(transvection(p.lattice, c), Perm.identity(p.b), name)


def _rho(p, pivot, r_name):
    L = p.lattice
    g = p.g
    perm = canonical_r(p.b, r_name)
    M = np.zeros((L.rank, L.rank), dtype=np.int64)
    for i in range(1, g + 1):
        s = sigma(pivot, g, i)
        M[s - 1, i - 1] = -1
        M[g + s - 1, g + i - 1] = -1
    M[2 * g:, 2 * g:] = puncture_block(L, perm.images)
    return RepElement(M, perm, pivot)


def rho1(p):
    return _rho(p, "rho1", "r1")


def rho2(p):
    return _rho(p, "rho2", "r2")


def rotation(p):
    return compose(rho2(p), rho1(p)).named("R")


def rotation_power(p, n):
    R = rotation(p)
    step = R if n >= 0 else R.inverse()
    out = identity(p)
    for _ in range(abs(n)):
        out = compose(out, step)
    return out.named(f"R^{n}")


def pivot(p):
    cfg = lantern_config(p)
    return rho1(p) if cfg.pivot == "rho1" else rho2(p)


def rho3(p):
    """Conjugate of the pivot half-turn by the twist along x1."""
    cfg = lantern_config(p)
    Tx = twist(p, cfg.interior[0])
    return compose(compose(Tx, pivot(p)), Tx.inverse()).named("rho3")


def rho3_orientation(p):
    """Which product of rho3 and the pivot equals T_x1 T_a1^{-1}.

    Returns ``"rho3*pivot"`` or ``"pivot*rho3"``.
    """
    cfg = lantern_config(p)
    target = compose(twist(p, cfg.interior[0]), twist(p, cfg.boundary[0]).inverse())
    r3, pv = rho3(p), pivot(p)
    if equal(compose(r3, pv), target):
        return "rho3*pivot"
    if equal(compose(pv, r3), target):
        return "pivot*rho3"
    raise ConstructionFailed("neither product of rho3 and the pivot is T_x1 T_a1^-1")


# --- fixed-point budgets on punctures ----------------------------------------

def budget_plain(g):
    """Plain pair swaps I12/I13: none for g = 3, up to 3 otherwise."""
    return 0 if g == 3 else 3


def budget_modified_I12(g):
    return 2 * (g - 5)


def budget_I(g):
    return 3


def budget_J(g):
    return 2 * (g - 7) + 2


def _check_budget(perm, budget, what):
    if not perm.is_involution():
        raise ConstructionFailed(f"{what}: puncture action is not an involution")
    nfix = len(perm.fixed_points())
    if nfix > budget:
        raise BranchNotAvailable(
            f"{what}: puncture action needs {nfix} fixed points, budget is {budget}")


def _min_fixed_pairing(b, budget, what):
    need = b % 2
    if need > budget:
        raise BranchNotAvailable(
            f"{what}: an odd number of punctures needs a fixed point, budget is {budget}")
    return pairing_involution(b, need)


def _complete(p, pairs, fixed, perm, what):
    try:
        M = complete_partial_involution(p.lattice, pairs, fixed, perm.images)
    except NoCompletion as exc:
        raise ConstructionFailed(f"{what}: {exc}") from exc
    return RepElement(M, perm, what)


def _signed_search(p, builder, n_signs, what):
    """Try sign patterns in a fixed order, return the first completion."""
    last = None
    for signs in product((1, -1), repeat=n_signs):
        pairs, fixed, perm = builder(signs)
        try:
            M = complete_partial_involution(p.lattice, pairs, fixed, perm.images)
        except NoCompletion as exc:
            last = exc
            continue
        return RepElement(M, perm, what), signs
    raise ConstructionFailed(f"{what}: no sign pattern admits a completion ({last})")


def build_I12(p, modified=False):
    """Pair swap (a1, x1) <-> (a2, x2) fixing a3, a4.

    The modified version (genus >= 5) also swaps gamma_{m+1} with beta_{m-2}.
    """
    g, b = p.g, p.b
    if g < 3:
        raise BranchNotAvailable("I12 needs genus >= 3")
    if modified and g < 5:
        raise BranchNotAvailable("the modified I12 needs genus >= 5")
    cfg = lantern_config(p)
    m = cfg.m
    B, X = cfg.boundary, cfg.interior
    L = p.lattice
    if modified:
        budget = budget_modified_I12(g)
        perm = _min_fixed_pairing(b, budget, "I12")
    else:
        budget = budget_plain(g)
        perm = _min_fixed_pairing(b, budget, "I12")
    _check_budget(perm, budget, "I12")
    gam = L.a(m + 1) - L.a(m + 2) if modified else None
    beta = L.b(m - 2) if modified else None

    def constraints(signs):
        s = signs[0]
        pairs = [(B[0], s * B[1]), (X[0], s * X[1])]
        fixed = [(B[2], s), (B[3], s)]
        if modified:
            pairs.append((gam, signs[1] * beta))
        return pairs, fixed, perm

    el, signs = _signed_search(p, constraints, 2 if modified else 1, "I12")
    return el


def build_I13(p):
    """Pair swap (a1, x1) <-> (a3, x3) fixing a2, a4; acts as r3 from genus 5 on."""
    g, b = p.g, p.b
    if g < 3:
        raise BranchNotAvailable("I13 needs genus >= 3")
    cfg = lantern_config(p)
    B, X = cfg.boundary, cfg.interior
    budget = budget_plain(g)
    perm = canonical_r(b, "r3") if g >= 5 else _min_fixed_pairing(b, budget, "I13")
    _check_budget(perm, budget, "I13")

    def constraints(signs):
        s = signs[0]
        return [(B[0], s * B[2]), (X[0], s * X[2])], [(B[1], s), (B[3], s)], perm

    el, _ = _signed_search(p, constraints, 1, "I13")
    return el


def I_beta_index(p):
    """The beta curve that I exchanges with alpha_m (prefers m+1, else m-1)."""
    return build_I_with_index(p)[1]


def build_I_with_index(p):
    g, b = p.g, p.b
    if g < 3:
        raise BranchNotAvailable("I needs genus >= 3")
    if g == 3 and b % 2:
        raise BranchNotAvailable("I for genus 3 needs an even number of punctures")
    cfg = lantern_config(p)
    m = cfg.m
    L = p.lattice
    perm = canonical_r(b, "r3")
    _check_budget(perm, budget_I(g), "I")
    failures = []
    for idx in (m + 1, m - 1):
        if not 1 <= idx <= g:
            continue

        def constraints(signs, idx=idx):
            return [(L.a(m), signs[0] * L.b(idx))], [], perm

        try:
            el, _ = _signed_search(p, constraints, 1, "I")
        except ConstructionFailed as exc:
            failures.append(str(exc))
            continue
        return el, idx
    raise ConstructionFailed("I: " + "; ".join(failures))


def build_I(p):
    """Involution exchanging alpha_m with a beta curve, acting on punctures as r3."""
    return build_I_with_index(p)[0]


def build_J(p):
    """Involution taking the lantern S to R^2 S, with J beta_{m-2} = R^3 gamma_m."""
    g, b = p.g, p.b
    if g < 7:
        raise BranchNotAvailable("J needs genus >= 7")
    perm = canonical_r(b, "r3")
    _check_budget(perm, budget_J(g), "J")
    cfg = lantern_config(p)
    m = cfg.m
    B = cfg.boundary
    L = p.lattice
    R2 = rotation_power(p, 2).M
    R3 = rotation_power(p, 3).M
    R2B = [apply(R2, c) for c in B]
    gamma_far = apply(R3, B[3])

    def constraints(signs):
        t, s2, s3, s4, s5 = signs
        pairs = [
            (B[1], s2 * R2B[2]),
            (B[2], s3 * R2B[0]),
            (B[3], s4 * R2B[3]),
            (L.b(m - 2), s5 * gamma_far),
        ]
        return pairs, [(B[0], t)], perm

    el, _ = _signed_search(p, constraints, 5, "J")
    return el


def available_generators(p):
    """Every generator whose preconditions hold for (g, b), keyed by name."""
    gens = {"rho1": rho1(p), "rho2": rho2(p), "R": rotation(p)}
    if p.g >= 3:
        gens["rho3"] = rho3(p)
    builders = [
        ("I12", lambda: build_I12(p)),
        ("I12_modified", lambda: build_I12(p, modified=True)),
        ("I13", lambda: build_I13(p)),
        ("I", lambda: build_I(p)),
        ("J", lambda: build_J(p)),
    ]
    for name, build in builders:
        try:
            gens[name] = build().named(name)
        except BranchNotAvailable:
            continue
    return gens


# --- relation checks ---------------------------------------------------------

@dataclass
class CheckReport:
    entries: list = field(default_factory=list)

    def add(self, relation, instance, holds):
        self.entries.append({"relation": relation, "instance": instance, "holds": bool(holds)})

    @property
    def all_hold(self):
        return all(e["holds"] for e in self.entries)

    def failures(self):
        return [e for e in self.entries if not e["holds"]]

    def to_json(self):
        return list(self.entries)


def check_relations(p, generators=None):
    """Exact checks of the rotation, conjugation, delta-transport and lantern relations."""
    report = CheckReport()
    L = p.lattice
    g = p.g
    gens = generators if generators is not None else available_generators(p)
    reg = build_registry(p)

    for name in ("rho1", "rho2", "rho3"):
        if name in gens:
            report.add("involution", f"{name}^2 = 1", is_involution(gens[name].M))

    R = gens.get("R") or rotation(p)
    Rinv = R.inverse()
    shifts = ([("alpha", i, i + 1) for i in range(1, g)]
              + [("beta", i, i % g + 1) for i in range(1, g + 1)]
              + [("gamma", i, i + 1) for i in range(1, g - 1)])
    for fam, i, j in shifts:
        src, dst = reg[f"{fam}{i}"], reg[f"{fam}{j}"]
        report.add("rotation", f"R {fam}{i} = {fam}{j}", R.act(src) == dst)
        conj = compose(compose(R, twist(p, src)), Rinv)
        report.add("twist-conjugation", f"R T_{fam}{i} R^-1 = T_{fam}{j}",
                   equal(conj, twist(p, dst)))

    for j in range(p.b):
        report.add("rotation-delta", f"R^-1 delta{j} = eta{j + 1}",
                   Rinv.act(reg[f"delta{j}"]) == reg[f"eta{j + 1}"])

    if g >= 3:
        from involgen.surface import lantern_identity_holds
        report.add("lantern", "T_x1 T_x2 T_x3 = T_a1 T_a2 T_a3 T_a4", lantern_identity_holds(p))

    for name, el in gens.items():
        report.add("compatibility", f"{name}: M c_j = c_perm(j)", is_compatible(p, el))
        report.add("symplectic", f"{name}: M^T Omega M = Omega", is_symplectic(L, el.M))
    return report


def sigma_prime_transport(p):
    """Can a map supported away from the puncture disk carry eta_{j+1} to delta_{j+1}?

    Such a map fixes every puncture class and acts on the handle block by a
    symplectic matrix, which is transitive on primitive handle vectors.  So
    at the homology level the question reduces to equality of the puncture
    components up to a common sign.  The outcome is reported, not enforced.
    """
    reg = build_registry(p)
    h = 2 * p.g
    out = []
    for j in range(max(p.b - 1, 0)):
        eta = reg[f"eta{j + 1}"].coords
        delta = reg[f"delta{j + 1}"].coords
        reachable = eta[h:] == delta[h:] or tuple(-x for x in eta[h:]) == delta[h:]
        out.append({"j": j + 1, "eta": list(eta), "delta": list(delta), "reachable": reachable})
    return out
