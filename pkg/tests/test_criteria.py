import numpy as np
import pytest

from sdcap.criteria import is_ppt, reduction_criterion
from sdcap.measures import coherent_info
from sdcap.states import (
    max_entangled,
    product,
    random_state,
    singlet,
    tiles_bound_entangled,
    werner_like,
)

from conftest import random_density


def test_singlet_fails_everything():
    s = singlet()
    assert not is_ppt(s)
    assert reduction_criterion(s) == (False, False)


def test_product_states_pass(rng):
    s = product(random_density(2, rng), random_density(3, rng))
    assert is_ppt(s)
    assert reduction_criterion(s) == (True, True)


def test_werner_ppt_boundary():
    # partial transpose spectrum has minimum (1 - 3p)/4: sign flips at p = 1/3
    assert is_ppt(werner_like(0.25))
    assert is_ppt(werner_like(1 / 3))
    assert not is_ppt(werner_like(0.40))


def test_maxent_violates_reduction():
    for d in (2, 3):
        holds_a, holds_b = reduction_criterion(max_entangled(d))
        assert not holds_a and not holds_b


def test_tiles_is_ppt_with_zero_coherent_info():
    s = tiles_bound_entangled()
    assert is_ppt(s)
    assert reduction_criterion(s) == (True, True)
    assert coherent_info(s) == 0.0


def test_reduction_matches_ppt_for_two_qubits():
    # in 2x2 both criteria detect exactly the NPT states; random states sit
    # far from the boundary so exact agreement is the expected outcome
    for seed in range(60):
        s = random_state(2, 2, seed)
        holds_a, holds_b = reduction_criterion(s)
        assert holds_a == holds_b == is_ppt(s)


def test_reduction_implies_zero_coherent_info():
    for seed in range(100):
        for dims in ((2, 2), (3, 3)):
            s = random_state(*dims, seed)
            _, holds_b = reduction_criterion(s)
            if holds_b:
                assert coherent_info(s) <= 1e-9
