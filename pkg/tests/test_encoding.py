import math

import numpy as np
import pytest

from sdcap.channels import (
    ChannelParams,
    dephasing_channel,
    depolarizing_qubit,
    from_params,
    identity_channel,
    param_count,
    unitary_channel,
)
from sdcap.encoding import (
    ScramblingSet,
    encode_ensemble,
    gell_mann_basis,
    rate_per_qubit,
    verify_achievability,
    weyl_set,
)
from sdcap.exceptions import DegenerateSenderEntropy, DimensionError, DomainError, InvariantViolation
from sdcap.measures import coherent_info, entropy, holevo
from sdcap.states import max_entangled, product, random_state, singlet, werner_like

from conftest import random_density


def test_weyl_set_qubit_paulis():
    ss = weyl_set(2)
    got = sorted(tuple(np.round(u, 12).ravel()) for u in ss.unitaries)
    sx = np.array([[0, 1], [1, 0]], dtype=complex)
    sz = np.array([[1, 0], [0, -1]], dtype=complex)
    expected = sorted(
        tuple(np.round(u, 12).ravel()) for u in (np.eye(2, dtype=complex), sx, sz, sx @ sz)
    )
    assert got == expected


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_weyl_set_members_unitary(d):
    ss = weyl_set(d)
    assert len(ss.unitaries) == d * d
    for u in ss.unitaries:
        assert np.allclose(u.conj().T @ u, np.eye(d), atol=1e-12)


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_weyl_scrambles_every_matrix(d, rng):
    # sum_i U_i M U_i† = d tr(M) I, checked on a random non-Hermitian matrix.
    ss = weyl_set(d)
    m = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    acc = sum(u @ m @ u.conj().T for u in ss.unitaries)
    assert np.allclose(acc, d * np.trace(m) * np.eye(d), atol=1e-10)


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_weyl_residual_within_tolerance(d):
    ss = weyl_set(d)
    assert ss.residual() <= 1e-8 * d * d
    ss.validate()


def test_weyl_rejects_small_dimension():
    with pytest.raises(DomainError):
        weyl_set(1)


@pytest.mark.parametrize("d", [2, 3, 4])
def test_gell_mann_basis_props(d):
    # d^2 - 1 Hermitian traceless generators, pairwise orthogonal under the
    # Hilbert-Schmidt inner product: a basis of the traceless hyperplane.
    basis = gell_mann_basis(d)
    assert len(basis) == d * d - 1
    flat = np.stack([g.ravel() for g in basis])
    gram = flat @ flat.conj().T
    for g in basis:
        assert np.allclose(g, g.conj().T, atol=1e-14)
        assert abs(np.trace(g)) < 1e-14
    off = gram - np.diag(np.diagonal(gram))
    assert np.abs(off).max() < 1e-12
    assert np.diagonal(gram).real.min() > 0.1


def test_scrambling_set_validation():
    with pytest.raises(DimensionError):
        ScramblingSet(2, (np.eye(2),) * 3)  # needs d^2 members
    bad = [np.eye(2, dtype=complex)] * 4
    bad[1] = np.diag([1.0, 2.0]).astype(complex)
    with pytest.raises(InvariantViolation):
        ScramblingSet(2, tuple(bad))
    # the identity repeated d^2 times is unitary but scrambles nothing
    ident = ScramblingSet(2, (np.eye(2, dtype=complex),) * 4)
    with pytest.raises(InvariantViolation):
        ident.validate()


def test_encode_ensemble_average_is_flat(rng):
    s = random_state(2, 2, 3)
    p = ChannelParams(2, 2, 4, rng.uniform(0, 2 * np.pi, param_count(2, 2, 4)))
    e = encode_ensemble(s, from_params(p), weyl_set(2))
    assert len(e.items) == 4
    assert all(abs(pr - 0.25) < 1e-15 for pr, _ in e.items)
    avg = e.average()
    eta_b = e.items[0][1].reduced_b()
    assert np.allclose(avg, np.kron(np.eye(2) / 2, eta_b), atol=1e-10)
    assert entropy(avg) == pytest.approx(1.0 + entropy(eta_b), abs=1e-8)
    # signal unitaries never change entropy: all members match the post-map state
    member_s = [entropy(m.rho) for _, m in e.items]
    assert max(member_s) - min(member_s) < 1e-9


def test_encode_ensemble_dimension_checks(rng):
    s = random_state(2, 2, 3)
    with pytest.raises(DimensionError):
        encode_ensemble(s, identity_channel(3), weyl_set(3))
    with pytest.raises(DimensionError):
        encode_ensemble(s, identity_channel(2), weyl_set(3))


def test_achievability_identity_on_singlet_exact():
    lhs, rhs, gap = verify_achievability(singlet(), identity_channel(2))
    assert lhs == pytest.approx(2.0, abs=1e-10)
    assert rhs == pytest.approx(2.0, abs=1e-10)
    assert abs(gap) < 1e-10


def test_achievability_matches_direct_holevo(rng):
    s = random_state(2, 2, 17)
    ch = depolarizing_qubit(0.35)
    lhs, rhs, gap = verify_achievability(s, ch)
    eta = None
    e = encode_ensemble(s, ch, weyl_set(2))
    assert lhs == pytest.approx(holevo(e), abs=1e-12)
    assert abs(gap) < 1e-9


def test_achievability_entropy_raising_channel():
    # Full depolarizing on the singlet: every encoded member is I/4, the
    # ensemble carries no information, and the identity still balances
    # because the bound side goes negative past log2(d).
    lhs, rhs, gap = verify_achievability(singlet(), depolarizing_qubit(1.0))
    assert abs(lhs) < 1e-10
    assert rhs == pytest.approx(0.0, abs=1e-10)
    assert abs(gap) < 1e-10


def test_achievability_random_pairs(rng):
    worst = 0.0
    for k in range(40):
        s = random_state(2, 2, 100 + k)
        p = ChannelParams(2, 2, 4, rng.uniform(0, 2 * np.pi, param_count(2, 2, 4)))
        _, _, gap = verify_achievability(s, from_params(p))
        worst = max(worst, abs(gap))
    assert worst <= 1e-7


def test_achievability_qutrit_pair(rng):
    s = random_state(3, 3, 7)
    p = ChannelParams(3, 3, 3, rng.uniform(0, 2 * np.pi, param_count(3, 3, 3)))
    _, _, gap = verify_achievability(s, from_params(p))
    assert abs(gap) <= 1e-7


def test_achievability_werner_identity_closed_form():
    p = 0.9
    s = werner_like(p)
    lam = [p + (1 - p) / 4] + [(1 - p) / 4] * 3
    se = -sum(x * math.log2(x) for x in lam)
    lhs, rhs, gap = verify_achievability(s, identity_channel(2))
    assert lhs == pytest.approx(2.0 - se, abs=1e-12)
    assert lhs == pytest.approx(1.0 + coherent_info(s), abs=1e-12)
    assert abs(gap) < 1e-10


def test_achievability_output_dim_mismatch():
    with pytest.raises(DimensionError):
        verify_achievability(singlet(), identity_channel(3))


def test_rate_per_qubit():
    assert rate_per_qubit(singlet()) == pytest.approx(2.0, abs=1e-12)
    s = max_entangled(3)
    assert rate_per_qubit(s) == pytest.approx(2.0, abs=1e-12)
    # a product state with a mixed A factor carries exactly the raw-qubit rate
    flat = product(np.eye(2) / 2, np.diag([0.7, 0.3]))
    assert rate_per_qubit(flat) == pytest.approx(1.0, abs=1e-10)
    mixed = product(np.diag([1.0, 0.0]), np.eye(2) / 2)
    with pytest.raises(DegenerateSenderEntropy):
        rate_per_qubit(mixed)


def test_rate_per_qubit_werner_point_nine():
    # spectrum {0.925, 0.025 x3}: S = 0.503187..., so the rate is 1.496812...
    lam = [0.925, 0.025, 0.025, 0.025]
    se = -sum(x * math.log2(x) for x in lam)
    got = rate_per_qubit(werner_like(0.9))
    assert got == pytest.approx(2.0 - se, abs=1e-12)
    assert got == pytest.approx(1.4968162683194166, abs=1e-12)


def test_rate_per_qubit_never_below_one(rng):
    for k in range(5):
        s = random_state(2, 2, 200 + k)
        assert rate_per_qubit(s) >= 1.0 - 1e-12


def test_unitary_preprocessing_cannot_change_rate(rng):
    # conjugating A by a unitary shifts nothing: all entropies invariant
    s = random_state(2, 2, 31)
    th = 0.7
    u = np.array([[np.cos(th), -np.sin(th)], [np.sin(th), np.cos(th)]], dtype=complex)
    lhs1, _, _ = verify_achievability(s, identity_channel(2))
    lhs2, _, _ = verify_achievability(s, unitary_channel(u))
    assert lhs1 == pytest.approx(lhs2, abs=1e-10)
