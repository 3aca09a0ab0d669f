import numpy as np
import pytest

from involgen.surface import (
    NoLantern, SurfaceParams, build_registry, lantern_center, lantern_config,
    lantern_identity_holds, pairing_profile_holds, sigma,
)
from involgen.symhom import HClass, pairing


def naive_twist(L, c):
    """Independent oracle: build T_c column by column from v + <v,c> c."""
    n = L.rank
    cols = []
    for k in range(n):
        e = [0] * n
        e[k] = 1
        k_c = pairing(L, HClass(tuple(e)), c)
        cols.append([e[i] + k_c * c.coords[i] for i in range(n)])
    return np.array(cols, dtype=object).T


def naive_product(L, classes):
    M = np.eye(L.rank, dtype=object)
    for c in classes:
        M = M @ naive_twist(L, c)
    return M


def test_sigma():
    assert [sigma("rho1", 5, i) for i in range(1, 6)] == [5, 4, 3, 2, 1]
    assert [sigma("rho2", 5, i) for i in range(1, 6)] == [1, 5, 4, 3, 2]


@pytest.mark.parametrize("g, m, pivot", [(3, 2, "rho2"), (4, 2, "rho1"), (5, 3, "rho2"),
                                         (6, 3, "rho1"), (7, 4, "rho2"), (8, 4, "rho1")])
def test_lantern_center(g, m, pivot):
    assert lantern_center(g) == (m, pivot)
    assert sigma(pivot, g, m + 1) == m


def test_lantern_needs_genus_three():
    with pytest.raises(NoLantern):
        lantern_config(SurfaceParams(2, 0))


def test_lantern_classes_g4_by_hand():
    p = SurfaceParams(4, 0)
    L = p.lattice
    cfg = lantern_config(p)
    a = L.a
    assert cfg.m == 2
    assert list(cfg.boundary) == [a(3), -a(1), a(1) - a(2), a(2) - a(3)]
    assert list(cfg.interior) == [-a(2), a(1) - a(2) + a(3), a(3) - a(1)]
    assert cfg.boundary_curves == ("alpha3", "alpha1", "gamma1", "gamma2")


@pytest.mark.parametrize("g", range(3, 11))
@pytest.mark.parametrize("b", [0, 3])
def test_lantern_identity_against_naive_products(g, b):
    p = SurfaceParams(g, b)
    cfg = lantern_config(p)
    L = p.lattice
    assert lantern_identity_holds(p, cfg)
    lhs = naive_product(L, cfg.interior)
    rhs = naive_product(L, cfg.boundary)
    assert np.array_equal(lhs, rhs)
    assert sum(cfg.boundary, L.zero()).is_zero()


def test_boundary_classes_are_unsigned_curve_classes():
    p = SurfaceParams(6, 0)
    reg = build_registry(p)
    cfg = lantern_config(p)
    for cls, cid in zip(cfg.boundary, cfg.boundary_curves):
        assert cls == reg[cid] or cls == -reg[cid]


@pytest.mark.parametrize("g, b", [(3, 0), (4, 2), (7, 5), (10, 6)])
def test_registry(g, b):
    p = SurfaceParams(g, b)
    reg = build_registry(p)
    assert len(reg.handle_curves()) == 3 * g - 1
    assert all(c in reg for c in reg.handle_curves())
    assert pairing_profile_holds(p)
    assert sum(1 for c in reg.ids() if c.startswith("delta")) == b


def test_delta_and_eta_classes():
    p = SurfaceParams(4, 4)
    L = p.lattice
    reg = build_registry(p)
    assert reg["delta0"] == L.a(1)
    assert reg["delta2"] == L.a(1) + L.c(1) + L.c(2)
    # rotation shifts handles i -> i+1 and punctures i -> i-1
    assert reg["eta1"] == L.a(4)
    assert reg["eta3"] == L.a(4) + L.c(2) + L.c(3)


def test_as_table_rendering():
    rows = build_registry(SurfaceParams(3, 2)).as_table()
    by_id = {r["curve"]: r["class"] for r in rows}
    assert by_id["gamma1"] == "a1-a2"
    assert by_id["delta1"] == "a1+c1"
