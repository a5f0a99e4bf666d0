import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qrev import catalog as cat
from qrev import channel as chm
from qrev import entropy as en
from qrev.errors import DimensionMismatch
from qrev.qstate import DensityOperator, maximally_mixed, pure_state, purify
from qrev.random import random_channel, random_density, random_isometry, random_unitary

import oracles

DEPHASE = cat.dephasing_channel(0.5)


def test_vn_entropy_values():
    assert en.vn_entropy(pure_state([0.6, 0.8j])) == pytest.approx(0.0, abs=1e-12)
    assert en.vn_entropy(maximally_mixed(2)) == pytest.approx(1.0, abs=1e-12)
    # 3/4 log2(4/3) + 1/4 log2 4
    assert en.vn_entropy(DensityOperator(np.diag([0.75, 0.25]))) == pytest.approx(0.8112781244591328, abs=1e-12)


def test_vn_entropy_against_oracle(rng):
    for d in (2, 3, 5):
        rho = random_density(rng, d, rank=d - 1)
        assert en.vn_entropy(rho) == pytest.approx(oracles.entropy_bits(rho.matrix), abs=1e-10)


def test_relative_entropy_values():
    rho = random_density(np.random.default_rng(1), 3)
    assert en.relative_entropy(rho, rho) == pytest.approx(0.0, abs=1e-12)
    assert en.relative_entropy(pure_state([1, 0]), maximally_mixed(2)) == pytest.approx(1.0, abs=1e-12)
    assert en.relative_entropy(pure_state([1, 0]), pure_state([0, 1])) is en.INFINITE


def test_relative_entropy_against_logm(rng):
    for d in (2, 3, 4):
        rho, sigma = random_density(rng, d), random_density(rng, d)
        assert en.relative_entropy(rho, sigma) == pytest.approx(
            oracles.relative_entropy_logm(rho.matrix, sigma.matrix), abs=1e-8
        )


def test_relative_entropy_rank_deficient_rho(rng):
    # supp rho inside supp sigma, rho singular
    rho = random_density(rng, 3, rank=1)
    sigma = random_density(rng, 3)
    d = en.relative_entropy(rho, sigma)
    assert en.is_finite(d) and d > 0


def test_infinite_sentinel_refuses_arithmetic():
    inf = en.INFINITE
    assert inf > 1e300 and not inf < 0.0 and inf >= inf
    with pytest.raises(TypeError):
        inf + 1.0
    with pytest.raises(TypeError):
        1.0 - inf
    with pytest.raises(TypeError):
        float(inf)


def test_relative_entropy_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        en.relative_entropy(maximally_mixed(2), maximally_mixed(3))


def test_mutual_information_values(rng):
    prod = DensityOperator(np.kron(random_density(rng, 2).matrix, random_density(rng, 3).matrix))
    assert en.mutual_information(prod, (2, 3)) == pytest.approx(0.0, abs=1e-10)
    phi = np.array([1, 0, 0, 1]) / np.sqrt(2)
    assert en.mutual_information(pure_state(phi), (2, 2)) == pytest.approx(2.0, abs=1e-12)
    cc = DensityOperator(np.diag([0.5, 0, 0, 0.5]))
    assert en.mutual_information(cc, (2, 2)) == pytest.approx(1.0, abs=1e-12)
    with pytest.raises(DimensionMismatch):
        en.mutual_information(cc, (2, 3))


def test_mutual_information_is_relative_entropy(rng):
    for dx, dy in [(2, 2), (2, 3)]:
        rho = random_density(rng, dx * dy)
        marg = DensityOperator(
            np.kron(
                np.trace(rho.matrix.reshape(dx, dy, dx, dy), axis1=1, axis2=3),
                np.trace(rho.matrix.reshape(dx, dy, dx, dy), axis1=0, axis2=2),
            )
        )
        assert en.mutual_information(rho, (dx, dy)) == pytest.approx(en.relative_entropy(rho, marg), abs=1e-8)


def test_channel_mutual_information_values(rng):
    mm = maximally_mixed(2)
    assert en.channel_mutual_information(mm, cat.identity_channel(2)) == pytest.approx(2.0, abs=1e-12)
    const = cat.replacement_channel(3, random_density(rng, 2))
    assert en.channel_mutual_information(random_density(rng, 3), const) == pytest.approx(0.0, abs=1e-10)
    assert en.channel_mutual_information(mm, DEPHASE) == pytest.approx(1.0, abs=1e-12)


def test_channel_mutual_information_against_oracle(rng):
    for d, m in [(2, 2), (3, 2), (2, 4)]:
        ch = random_channel(rng, d, m, rank=2)
        rho = random_density(rng, d)
        expected = oracles.channel_mutual_info(rho.matrix, list(ch.kraus))
        assert en.channel_mutual_information(rho, ch) == pytest.approx(expected, abs=1e-9)


def test_coherent_information_values(rng):
    rho = random_density(rng, 3)
    assert en.coherent_information(rho, cat.identity_channel(3)) == pytest.approx(en.vn_entropy(rho), abs=1e-9)
    const = cat.replacement_channel(3, random_density(rng, 2))
    assert en.coherent_information(rho, const) == pytest.approx(-en.vn_entropy(rho), abs=1e-9)
    assert en.coherent_information(maximally_mixed(2), DEPHASE) == pytest.approx(0.0, abs=1e-12)


def test_coherent_information_against_oracle(rng):
    ch = random_channel(rng, 3, 2, rank=3)
    rho = random_density(rng, 3)
    expected = oracles.coherent_info(rho.matrix, list(ch.kraus))
    assert en.coherent_information(rho, ch) == pytest.approx(expected, abs=1e-9)


def test_entanglement_fidelity_values(rng):
    mm = maximally_mixed(2)
    assert en.entanglement_fidelity(random_density(rng, 3), cat.identity_channel(3)) == pytest.approx(1.0, abs=1e-12)
    assert en.entanglement_fidelity(mm, cat.reset_channel()) == pytest.approx(0.25, abs=1e-12)
    assert en.entanglement_fidelity(mm, cat.unitary_channel(cat.X)) == pytest.approx(0.0, abs=1e-12)
    with pytest.raises(DimensionMismatch):
        en.entanglement_fidelity(mm, random_channel(rng, 2, 3))


def test_entanglement_fidelity_against_oracle(rng):
    for _ in range(5):
        ch = random_channel(rng, 3, rank=2)
        rho = random_density(rng, 3)
        f = en.entanglement_fidelity(rho, ch)
        assert f == pytest.approx(oracles.entanglement_fidelity(rho.matrix, list(ch.kraus)), abs=1e-10)
        assert -1e-9 <= f <= 1 + 1e-9


def test_entanglement_fidelity_one_iff_identity_on_support(rng):
    # a unitary acting trivially on the support of rho
    rho = DensityOperator(np.diag([0.5, 0.5, 0.0]))
    u = np.eye(3, dtype=complex)
    u[2, 2] = 1j
    assert en.entanglement_fidelity(rho, cat.unitary_channel(u)) == pytest.approx(1.0, abs=1e-12)
    v = np.eye(3, dtype=complex)
    v[1, 1] = 1j
    assert en.entanglement_fidelity(rho, cat.unitary_channel(v)) < 1 - 1e-3


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), d=st.integers(2, 4), m=st.integers(2, 4), rank=st.integers(1, 4))
def test_positivity_and_monotonicity(seed, d, m, rank):
    rng = np.random.default_rng(seed)
    rho, sigma = random_density(rng, d), random_density(rng, d)
    ch = random_channel(rng, d, m, rank=rank)
    before = en.relative_entropy(rho, sigma)
    after = en.relative_entropy(chm.apply(ch, rho), chm.apply(ch, sigma))
    assert before >= -1e-9
    if en.is_finite(after):
        assert after >= -1e-9
        assert after <= before + 1e-8


def test_small_relative_entropy_forces_close_states(rng):
    rho = random_density(rng, 3)
    near = DensityOperator(0.99999 * rho.matrix + 0.00001 * np.eye(3) / 3)
    d = en.relative_entropy(near, rho)
    assert d <= 1e-8
    assert np.abs(near.matrix - rho.matrix).max() <= 1e-4


def test_isometry_invariance(rng):
    for _ in range(5):
        v = random_isometry(rng, 5, 3)
        rho, sigma = random_density(rng, 3), random_density(rng, 3)
        lift = lambda r: DensityOperator(v @ r.matrix @ v.conj().T)
        assert en.relative_entropy(lift(rho), lift(sigma)) == pytest.approx(en.relative_entropy(rho, sigma), abs=1e-8)


def test_data_processing(rng):
    for _ in range(10):
        d = int(rng.integers(2, 4))
        rho = random_density(rng, d)
        e = random_channel(rng, d, 3, rank=2)
        f = random_channel(rng, 3, 2, rank=2)
        i_id = en.channel_mutual_information(rho, cat.identity_channel(d))
        i_e = en.channel_mutual_information(rho, e)
        i_fe = en.channel_mutual_information(rho, chm.compose(f, e))
        assert i_id >= i_e - 1e-8 and i_e >= i_fe - 1e-8
        h = en.vn_entropy(rho)
        ic_e = en.coherent_information(rho, e)
        ic_fe = en.coherent_information(rho, chm.compose(f, e))
        assert h >= ic_e - 1e-8 and ic_e >= ic_fe - 1e-8


def test_purification_independence(rng):
    for _ in range(5):
        rho = random_density(rng, 3)
        ch = random_channel(rng, 3, 2, rank=2)
        base = en.channel_mutual_information(rho, ch)
        rotated = purify(rho).with_reference_isometry(random_unitary(rng, 3))
        out = chm.apply_extended(ch, rotated)
        assert en.mutual_information(out, (3, 2)) == pytest.approx(base, abs=1e-8)


def test_environment_and_coherent_splits(rng):
    for _ in range(10):
        d = int(rng.integers(2, 5))
        rho = random_density(rng, d)
        ch = random_channel(rng, d, int(rng.integers(2, 4)), rank=int(rng.integers(1, 4)))
        i = en.channel_mutual_information(rho, ch)
        i_env = en.channel_mutual_information(rho, chm.complement(ch))
        h = en.vn_entropy(rho)
        ic = en.coherent_information(rho, ch)
        assert 2 * h == pytest.approx(i + i_env, abs=1e-8)
        assert 2 * ic == pytest.approx(i - i_env, abs=1e-8)
        assert i == pytest.approx(h + ic, abs=1e-8)
