import itertools
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dofregion.achievability import certify_corner, inner_bound_grid_check, zf_feasible
from dofregion.polytope import DomainError, Point2, equals, hull_from_points
from dofregion.regions import AntennaConfig, ChannelClass


def generic_rank_verdict(config: AntennaConfig, alloc) -> bool:
    """Closed-form decodability for generic channels and precoders.

    With a generic receive matrix H, rank(H @ T) = min(N, rank T) for any
    transmit-side matrix T drawn independently of H, so everything reduces
    to the rank of the stacked precoders each receiver sees.
    """
    cls = config.channel_class
    users = range(len(alloc))

    def tx_rank(included):
        if cls in (ChannelClass.BC2, ChannelClass.BCK):
            return min(config.tx[0], sum(alloc[j] for j in included))
        if cls in (ChannelClass.CRC2, ChannelClass.CRCK):
            cog = sum(min(config.tx[j], alloc[j]) for j in included if j > 0)
            prim = alloc[0] if 0 in included else 0
            return min(sum(config.tx), prim + cog)
        return sum(min(config.tx[j], alloc[j]) for j in included)

    for i in users:
        if alloc[i] == 0:
            continue
        N = config.rx[i]
        others = [j for j in users if j != i]
        if min(N, tx_rank(list(users))) != alloc[i] + min(N, tx_rank(others)):
            return False
    return True


def configs_up_to(A):
    for c in itertools.product(range(1, A + 1), repeat=4):
        yield AntennaConfig.ic(*c)
        yield AntennaConfig.crc(*c)
    for c in itertools.product(range(1, A + 1), repeat=3):
        yield AntennaConfig.bc(*c)


# -- examples -------------------------------------------------------------


def test_feasible_example():
    rep = zf_feasible(AntennaConfig.ic(2, 3, 4, 4), (2, 1), trials=200, seed=1)
    assert rep.verdict == "feasible" and rep.successes == 200 and rep.min_singular_ratio > 1e-6


def test_infeasible_example():
    rep = zf_feasible(AntennaConfig.ic(2, 3, 4, 4), (2, 2), trials=200, seed=1)
    assert rep.verdict == "infeasible" and rep.successes == 0


@pytest.mark.parametrize(
    "config",
    [AntennaConfig.ic(1, 1, 1, 1), AntennaConfig.crc(3, 5, 2, 4), AntennaConfig.bc(2, 1, 1),
     AntennaConfig(ChannelClass.ICK, (1, 1, 1), (1, 1, 1))],
)
def test_all_zero_is_feasible(config):
    assert zf_feasible(config, (0,) * config.users, trials=5).feasible


def test_oversized_allocation_is_rejected_not_an_error():
    rep = zf_feasible(AntennaConfig.ic(1, 1, 1, 1), (7, 0), trials=5)
    assert rep.verdict == "infeasible"


def test_k_user_siso_only_one_stream():
    cfg = AntennaConfig(ChannelClass.ICK, (1, 1, 1), (1, 1, 1))
    assert zf_feasible(cfg, (1, 0, 0), trials=20).feasible
    assert zf_feasible(cfg, (1, 1, 0), trials=20).verdict == "infeasible"


@pytest.mark.parametrize("alloc", [(1,), (1, -1), (1, 2, 3)])
def test_bad_allocations(alloc):
    with pytest.raises(DomainError):
        zf_feasible(AntennaConfig.ic(2, 2, 2, 2), alloc)


def test_trials_must_be_positive():
    with pytest.raises(DomainError):
        zf_feasible(AntennaConfig.ic(2, 2, 2, 2), (1, 1), trials=0)


def test_certificate_single_phase():
    cert = certify_corner(AntennaConfig.ic(2, 3, 4, 4), Point2(2, 1), trials=200, seed=1)
    assert cert.phases == (((2, 1), F(1)),)


def test_certificate_time_sharing():
    cert = certify_corner(AntennaConfig.bc(3, 2, 1), (1, F(1, 2)), trials=200, seed=1)
    assert sorted(cert.phases) == [((0, 1), F(1, 2)), ((2, 0), F(1, 2))]
    assert cert.achieved() == Point2(1, F(1, 2))


def test_certificate_search_fails_on_open_point():
    assert certify_corner(AntennaConfig.ic(2, 3, 4, 4), (2, F(4, 3)), trials=200, seed=1) is None


def test_origin_needs_no_phase():
    cert = certify_corner(AntennaConfig.ic(2, 3, 4, 4), (0, 0))
    assert cert.phases == () and cert.achieved() == Point2(0, 0)


def test_certificate_is_two_user_only():
    with pytest.raises(DomainError):
        certify_corner(AntennaConfig(ChannelClass.ICK, (1, 1, 1), (1, 1, 1)), (1, 0))


@pytest.mark.parametrize(
    "config, hull",
    [
        (AntennaConfig.ic(1, 1, 1, 1), [(1, 0), (0, 1)]),
        (AntennaConfig.ic(3, 2, 3, 2), [(2, 0), (0, 2)]),
        (AntennaConfig.crc(3, 4, 3, 2), [(4, 0), (0, 2)]),
    ],
)
def test_grid_check_examples(config, hull):
    chk = inner_bound_grid_check(config, trials=50, seed=1)
    assert chk.ok and equals(chk.hull, hull_from_points(hull))


# -- agreement with the closed-form rank count ------------------------------


def test_verdicts_match_generic_rank_formula():
    for config in configs_up_to(3):
        top = config.max_antennas
        for alloc in itertools.product(range(top + 1), repeat=2):
            rep = zf_feasible(config, alloc, trials=4, seed=3)
            assert rep.verdict != "ambiguous", (config, alloc)
            assert rep.feasible == generic_rank_verdict(config, alloc), (config, alloc)


def test_k_user_verdicts_match_generic_rank_formula():
    for cls in (ChannelClass.ICK, ChannelClass.CRCK):
        for M in itertools.product((1, 2), repeat=3):
            cfg = AntennaConfig(cls, M, (2, 1, 2))
            for alloc in itertools.product(range(3), repeat=3):
                assert zf_feasible(cfg, alloc, trials=3).feasible == generic_rank_verdict(cfg, alloc)


# -- properties -----------------------------------------------------------

counts = st.integers(1, 4)
classes = st.sampled_from(["ic", "crc", "bc"])


@st.composite
def config_and_alloc(draw):
    kind = draw(classes)
    if kind == "bc":
        cfg = AntennaConfig.bc(draw(counts), draw(counts), draw(counts))
    else:
        cfg = getattr(AntennaConfig, kind)(*(draw(counts) for _ in range(4)))
    alloc = tuple(draw(st.integers(0, 4)) for _ in range(2))
    return cfg, alloc


@settings(max_examples=60, deadline=None)
@given(config_and_alloc(), st.integers(0, 2**32))
def test_monotone_in_allocation(ca, seed):
    cfg, alloc = ca
    if not zf_feasible(cfg, alloc, trials=8, seed=seed).feasible:
        return
    for smaller in itertools.product(*(range(s + 1) for s in alloc)):
        assert zf_feasible(cfg, smaller, trials=8, seed=seed).feasible, (cfg, alloc, smaller)


@settings(max_examples=30, deadline=None)
@given(config_and_alloc(), st.integers(0, 2**64 - 1))
def test_deterministic(ca, seed):
    cfg, alloc = ca
    assert zf_feasible(cfg, alloc, trials=6, seed=seed) == zf_feasible(cfg, alloc, trials=6, seed=seed)


@settings(max_examples=40, deadline=None)
@given(config_and_alloc())
def test_generic_allocations_always_succeed(ca):
    cfg, alloc = ca
    rep = zf_feasible(cfg, alloc, trials=50, seed=11)
    if generic_rank_verdict(cfg, alloc):
        assert rep.successes == 50 and rep.min_singular_ratio > 1e-6
    else:
        assert rep.successes == 0


def test_batching_does_not_change_reports(monkeypatch):
    import dofregion.achievability as ach

    cfg = AntennaConfig.crc(2, 3, 2, 3)
    whole = zf_feasible(cfg, (2, 1), trials=30, seed=5)
    monkeypatch.setattr(ach, "_BATCH", 7)
    assert zf_feasible(cfg, (2, 1), trials=30, seed=5) == whole


@settings(max_examples=25, deadline=None)
@given(config_and_alloc(), st.fractions(0, 4, max_denominator=3), st.fractions(0, 4, max_denominator=3))
def test_certificates_are_exact(ca, d1, d2):
    cfg, _ = ca
    cert = certify_corner(cfg, (d1, d2), trials=10, seed=2)
    if cert is None:
        return
    assert cert.achieved() == Point2(d1, d2)
    assert sum(w for _, w in cert.phases) <= 1
    assert all(r.feasible for r in cert.reports)
