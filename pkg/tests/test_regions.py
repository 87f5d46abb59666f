import itertools
from fractions import Fraction as F

import pytest

from dofregion.polytope import DomainError, Halfspace, Point2, equals, from_halfspaces, hull_from_points, is_subset
from dofregion.regions import (
    AntennaConfig,
    ChannelClass,
    bc2_csit,
    bc2_no_csit,
    bck_no_csit,
    crc_classify,
    crc_corner_points,
    crc_csit,
    crc_inner,
    crc_outer,
    crck_region,
    ic_classify,
    ic_corner_points,
    ic_csit,
    ic_inner,
    ic_outer,
    ick_region,
    report,
)

R8 = range(1, 9)
ALL4 = list(itertools.product(R8, repeat=4))


def H(a1, a2, b):
    return Halfspace.of(a1, a2, b)


def region(*hs):
    return from_halfspaces(hs)


def hs_text(poly):
    return sorted(str(h) for h in poly.halfspaces)


# -- broadcast ------------------------------------------------------------


@pytest.mark.parametrize("cfg", [(2, 1, 1), (1, 5, 5)])
def test_bc_sum_dof_one(cfg):
    assert hs_text(bc2_no_csit(*cfg)) == ["d1 + d2 <= 1"]


def test_bc_weighted():
    r = bc2_no_csit(3, 2, 1)
    assert r.vertices == (Point2(0, 0), Point2(2, 0), Point2(0, 1))


def test_bc_csit_examples():
    assert equals(bc2_csit(2, 2, 2), hull_from_points([(2, 0), (0, 2)]))
    assert equals(bc2_csit(4, 2, 1), region(H(1, 0, 2), H(0, 1, 1), H(1, 1, 3)))
    assert equals(bc2_csit(4, 2, 1), hull_from_points([(2, 1)]))


def test_bck_examples():
    assert bck_no_csit(4, (1, 1, 1)).intercepts() == (1, 1, 1)
    assert bck_no_csit(1, (3, 7, 2)).intercepts() == (1, 1, 1)
    assert bck_no_csit(3, (3, 2, 1)).intercepts() == (3, 2, 1)


# -- interference channel -------------------------------------------------


def test_ic_corner_examples():
    assert ic_corner_points(2, 3, 4, 4) == (Point2(2, 1), Point2(0, 4))
    assert ic_corner_points(3, 2, 3, 2) == (Point2(2, 0), Point2(0, 2))
    assert ic_corner_points(2, 2, 3, 3) == (Point2(2, 0), Point2(0, 3))


def test_ic_inner_examples():
    assert hs_text(ic_inner(2, 3, 4, 4)) == ["3*d1 + 2*d2 <= 8", "d1 <= 2"]
    assert hs_text(ic_inner(3, 2, 3, 2)) == ["d1 + d2 <= 2"]
    assert hs_text(ic_inner(1, 1, 1, 1)) == ["d1 + d2 <= 1"]


def test_ic_csit_examples():
    assert hs_text(ic_csit(1, 1, 1, 1)) == ["d1 + d2 <= 1"]
    assert equals(ic_csit(2, 3, 4, 4), region(H(1, 0, 2), H(0, 1, 4), H(1, 1, 4)))
    assert equals(ic_csit(3, 2, 3, 2), region(H(1, 0, 2), H(0, 1, 2), H(1, 1, 3)))


@pytest.mark.parametrize(
    "cfg, case, exact",
    [((2, 3, 4, 4), "IC-B2", False), ((3, 2, 3, 2), "IC-A", True), ((2, 3, 2, 3), "IC-D1", True)],
)
def test_ic_classify_examples(cfg, case, exact):
    label = ic_classify(*cfg)
    assert (label.case_id, label.exact) == (case, exact)


def test_ic_outer_examples():
    outer = ic_outer(2, 3, 4, 4)
    assert equals(outer, region(H(1, 0, 2), H(F(1, 3), F(1, 4), 1)))
    assert outer.vertices == (Point2(0, 0), Point2(2, 0), Point2(2, F(4, 3)), Point2(0, 4))
    assert equals(ic_outer(3, 2, 3, 2), ic_inner(3, 2, 3, 2))
    assert equals(ic_outer(3, 4, 1, 2), region(H(1, 0, 3), H(0, 1, 1), H(F(1, 3), F(1, 2), 1)))


# -- cognitive radio channel ----------------------------------------------


def test_crc_corner_examples():
    assert crc_corner_points(3, 4, 3, 2) == (Point2(4, 0), Point2(0, 2))
    assert crc_corner_points(2, 3, 4, 5) == (Point2(3, 0), Point2(0, 4))
    assert crc_corner_points(1, 1, 1, 1) == (Point2(1, 0), Point2(0, 1))


def test_crc_inner_examples():
    assert equals(crc_inner(3, 4, 3, 2), region(H(F(1, 4), F(1, 2), 1)))
    assert equals(crc_inner(3, 5, 2, 4), region(H(0, 1, 2), H(F(1, 5), F(3, 10), 1)))
    assert hs_text(crc_inner(1, 1, 1, 1)) == ["d1 + d2 <= 1"]


def test_crc_csit_examples():
    assert equals(crc_csit(3, 5, 2, 4), region(H(1, 0, 5), H(0, 1, 2), H(1, 1, 5)))
    assert hs_text(crc_csit(1, 1, 1, 1)) == ["d1 + d2 <= 1"]
    assert equals(crc_csit(2, 3, 4, 5), region(H(1, 0, 3), H(0, 1, 4), H(1, 1, 4)))


@pytest.mark.parametrize(
    "cfg, case, exact",
    [((3, 4, 3, 2), "CRC-A", True), ((3, 5, 2, 4), "CRC-C1", False), ((2, 3, 4, 5), "CRC-C2b", True)],
)
def test_crc_classify_examples(cfg, case, exact):
    label = crc_classify(*cfg)
    assert (label.case_id, label.exact) == (case, exact)


def test_crc_outer_examples():
    outer = crc_outer(3, 5, 2, 4)
    assert equals(outer, region(H(0, 1, 2), H(F(1, 5), F(1, 4), 1)))
    assert [v for v in outer.vertices if not crc_inner(3, 5, 2, 4).contains(v)] == [Point2(F(5, 2), 2)]
    assert equals(crc_outer(3, 4, 3, 2), crc_inner(3, 4, 3, 2))
    assert equals(crc_outer(4, 3, 1, 2), region(H(0, 1, 1), H(F(1, 3), F(1, 2), 1)))


# -- K users --------------------------------------------------------------


def test_ick_examples():
    assert ick_region([1, 1, 1], [1, 1, 1]).intercepts() == (1, 1, 1)
    assert ick_region([2, 3], [2, 2]).weights == (F(1, 2), F(1, 2))
    assert ick_region([1, 2], [2, 1]) is None


def test_crck_examples():
    assert crck_region([1, 2, 2], [4, 1, 1]).intercepts() == (4, 1, 1)
    assert crck_region([1, 1], [1, 1]).intercepts() == (1, 1)
    assert crck_region([1, 1], [1, 2]) is None


def test_k_user_arity_errors():
    with pytest.raises(DomainError):
        ick_region([1, 1], [1])
    with pytest.raises(DomainError):
        crck_region([1], [1])


# -- reports and config validation -------------------------------------------


def test_report_examples():
    r = report(AntennaConfig.ic(2, 3, 4, 4))
    assert r.label.case_id == "IC-B2" and r.gap == (Point2(2, F(4, 3)),)
    r = report(AntennaConfig.bc(2, 1, 1))
    assert r.label.exact and equals(r.inner, r.outer) and hs_text(r.inner) == ["d1 + d2 <= 1"]
    r = report(AntennaConfig.crc(2, 3, 4, 5))
    assert r.label.exact and equals(r.inner, r.outer) and r.gap == ()


def test_report_unknown_k_user():
    r = report(AntennaConfig(ChannelClass.ICK, (1, 2), (2, 1)))
    assert r.label.case_id == "ICK-UNKNOWN" and r.inner is None and r.outer is None


def test_single_antenna_broadcast_is_flagged():
    assert report(AntennaConfig.bc(1, 2, 3)).flags
    assert not report(AntennaConfig.bc(2, 2, 3)).flags


def test_intersect_csit_is_opt_in():
    plain = report(AntennaConfig.ic(2, 3, 4, 4))
    tight = report(AntennaConfig.ic(2, 3, 4, 4), intersect_csit=True)
    assert is_subset(tight.outer, plain.outer) and is_subset(tight.outer, plain.csit)
    assert tight.flags and not plain.flags


@pytest.mark.parametrize(
    "args",
    [
        (ChannelClass.IC2, (1, 2, 3), (1, 2, 3)),
        (ChannelClass.IC2, (0, 1), (1, 1)),
        (ChannelClass.BC2, (2,), (1, 1, 1)),
        (ChannelClass.BC2, (2, 2), (1, 1)),
        (ChannelClass.ICK, (1,), (1,)),
    ],
)
def test_bad_configs(args):
    with pytest.raises(DomainError):
        AntennaConfig(*args)


# -- exhaustive invariants on [1,8]^4 -------------------------------------


def test_corner_points_nonnegative():
    for cfg in ALL4:
        for p in ic_corner_points(*cfg) + crc_corner_points(*cfg):
            assert p.d1 >= 0 and p.d2 >= 0, cfg


def test_ic_swap_symmetry():
    mirror_case = {"A": "A", "B1": "C1", "B2": "C2", "C1": "B1", "C2": "B2", "D1": "D1", "D2": "D3", "D3": "D2"}
    for M1, N1, M2, N2 in itertools.product(range(1, 7), repeat=4):
        a, b = (M1, N1, M2, N2), (M2, N2, M1, N1)
        assert ic_classify(*b).case_id == "IC-" + mirror_case[ic_classify(*a).case_id[3:]]
        for fn in (ic_inner, ic_outer, ic_csit):
            assert fn(*b) == fn(*a).swapped(), (fn.__name__, a)


def test_cognition_never_shrinks():
    for cfg in ALL4:
        assert is_subset(ic_inner(*cfg), crc_inner(*cfg)), cfg
        assert is_subset(ic_csit(*cfg), crc_csit(*cfg)), cfg


def test_csit_equalities_on_full_characterizations():
    for M1, N1, M2, N2 in ALL4:
        case = ic_classify(M1, N1, M2, N2).case_id
        if case == "IC-D1" or (case == "IC-B1" and N2 >= M1):
            assert equals(ic_inner(M1, N1, M2, N2), ic_csit(M1, N1, M2, N2)), (M1, N1, M2, N2)


def test_d2_boundary_is_exact():
    hits = 0
    for M1, N1, M2, N2 in ALL4:
        if ic_classify(M1, N1, M2, N2).case_id == "IC-D2" and M1 == N2:
            hits += 1
            assert equals(ic_inner(M1, N1, M2, N2), ic_outer(M1, N1, M2, N2))
    assert hits > 0


def test_case_partition():
    # exactly one case predicate fires per config; written out independently
    ic_preds = {
        "IC-A": lambda M1, N1, M2, N2: N1 <= M1 and N2 <= M2,
        "IC-B1": lambda M1, N1, M2, N2: N1 > M1 and N2 <= M2 and N2 <= N1,
        "IC-B2": lambda M1, N1, M2, N2: N1 > M1 and N2 <= M2 and N2 > N1,
        "IC-C1": lambda M1, N1, M2, N2: N2 > M2 and N1 <= M1 and N1 <= N2,
        "IC-C2": lambda M1, N1, M2, N2: N2 > M2 and N1 <= M1 and N1 > N2,
        "IC-D1": lambda M1, N1, M2, N2: N1 > M1 and N2 > M2 and N1 > M2 and N2 > M1,
        "IC-D2": lambda M1, N1, M2, N2: N1 > M1 and N2 > M2 and N1 > M2 and N2 <= M1,
        "IC-D3": lambda M1, N1, M2, N2: N1 > M1 and N2 > M2 and N2 > M1 and N1 <= M2,
    }
    crc_preds = {
        "CRC-A": lambda M1, N1, M2, N2: N2 <= M2,
        "CRC-B1": lambda M1, N1, M2, N2: N2 > M2 and M1 >= N1 and N1 <= N2,
        "CRC-B2": lambda M1, N1, M2, N2: N2 > M2 and M1 >= N1 and N1 > N2,
        "CRC-C1": lambda M1, N1, M2, N2: N2 > M2 and N1 > M1 and N2 < min(N1, M1 + M2),
        "CRC-C2a": lambda M1, N1, M2, N2: N2 > M2 and N1 > M1 and N2 >= min(N1, M1 + M2) and N1 >= M2,
        "CRC-C2b": lambda M1, N1, M2, N2: N2 > M2 and N1 > M1 and N2 >= min(N1, M1 + M2) and N1 < M2,
    }
    for cfg in ALL4:
        ic_hits = [k for k, p in ic_preds.items() if p(*cfg)]
        crc_hits = [k for k, p in crc_preds.items() if p(*cfg)]
        assert ic_hits == [ic_classify(*cfg).case_id], cfg
        assert crc_hits == [crc_classify(*cfg).case_id], cfg


def test_bc_csit_equality_iff_few_transmit_antennas():
    for M, N1, N2 in itertools.product(R8, repeat=3):
        a, b = bc2_no_csit(M, N1, N2), bc2_csit(M, N1, N2)
        assert is_subset(a, b)
        assert equals(a, b) == (M <= min(N1, N2)), (M, N1, N2)
