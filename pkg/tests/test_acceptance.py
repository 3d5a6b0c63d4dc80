"""Release criteria, one test per criterion.

Each test encodes a stated tolerance; the conftest summary hook prints a
PASS/FAIL line per criterion at the end of the run.  Everything runs at
desk scale with the default optimizer configuration unless a criterion
names a different budget.
"""

import numpy as np
import pytest

from mubcorr.cli import main
from mubcorr.closed_form import (
    discord_isotropic,
    entanglement_of_formation_two_qubit,
    entanglement_of_formation_werner,
    pair_correlation_bell_diagonal,
    pair_correlation_bell_diagonal_sorted,
    pair_correlation_isotropic,
    pair_correlation_werner,
    residual_correlation_bell_diagonal,
    triple_correlation_bell_diagonal,
)
from mubcorr.linalg import DensityMatrix, partial_trace, tensor_product, von_neumann_entropy
from mubcorr.measures import (
    OptimizerConfig,
    classical_correlation,
    mub_pair_correlation,
    mub_tuple_correlation,
    mutual_information,
    quantum_discord,
    residual_correlation,
)
from mubcorr.states import (
    BlochTriple,
    SchmidtVector,
    bell_diagonal,
    bell_diagonal_rho1,
    bell_diagonal_rho2,
    isotropic_state,
    pure_from_schmidt,
    random_density_matrix,
    werner_state,
)
from mubcorr.verify import CHI_NONZERO, verify_nullity_theorem

CFG = OptimizerConfig()  # 24 restarts, seed 0


def _seeded_triples(count, seed=0):
    """Valid Bloch triples drawn by rejection from the cube."""
    rng = np.random.default_rng(seed)
    triples = []
    while len(triples) < count:
        r = rng.uniform(-1.0, 1.0, 3)
        try:
            triples.append(BlochTriple(*r))
        except ValueError:
            continue
    return triples


def _seeded_schmidt(count, seed=0):
    rng = np.random.default_rng(seed)
    out = []
    for k in range(count):
        d = 2 if k % 2 == 0 else 3
        out.append(SchmidtVector(tuple(rng.dirichlet(np.ones(d)))))
    return out


def _product_state(seed):
    a = random_density_matrix(2, 1, 2, seed=seed)
    b = random_density_matrix(1, 2, 2, seed=seed + 10_000)
    return DensityMatrix(2, 2, tensor_product(a.mat, b.mat))


@pytest.mark.parametrize("d", [2, 3])
def test_werner_closed_form_equivalence(d):
    for alpha in np.linspace(-1.0, 1.0, 21):
        got = mub_pair_correlation(werner_state(d, float(alpha)), cfg=CFG).value
        want = pair_correlation_werner(d, float(alpha))
        assert got == pytest.approx(want, abs=1e-3), f"alpha={alpha}"


@pytest.mark.parametrize("d", [2, 3])
def test_isotropic_closed_form_equivalence(d):
    for beta in np.linspace(0.0, 1.0, 21):
        got = mub_pair_correlation(isotropic_state(d, float(beta)), cfg=CFG).value
        want = pair_correlation_isotropic(d, float(beta))
        assert got == pytest.approx(want, abs=1e-3), f"beta={beta}"


def test_bell_diagonal_pair_formula():
    # determination recorded here: the sorted variant (two largest
    # magnitudes) is the one the optimizer reproduces; the verbatim
    # reading ties exactly when (r1, r2) already are the two largest
    verbatim_ties = 0
    for i, triple in enumerate(_seeded_triples(50)):
        got = mub_pair_correlation(bell_diagonal(triple), cfg=CFG).value
        want_sorted = pair_correlation_bell_diagonal_sorted(triple)
        want_verbatim = pair_correlation_bell_diagonal(triple)
        best = min(abs(got - want_sorted), abs(got - want_verbatim))
        assert best <= 1e-3, f"triple {i}"
        assert got == pytest.approx(want_sorted, abs=1e-3), f"triple {i}: sorted variant"
        if abs(want_verbatim - want_sorted) < 1e-12:
            verbatim_ties += 1
    print(f"\nsorted variant matched 50/50 triples; verbatim tied on {verbatim_ties}")


def test_bell_diagonal_residual_formula():
    for i, triple in enumerate(_seeded_triples(50)):
        got = residual_correlation(bell_diagonal(triple), cfg=CFG).value
        want = residual_correlation_bell_diagonal(triple)
        assert got == pytest.approx(want, abs=2e-3), f"triple {i}"


def test_bell_diagonal_triple_formula():
    # The stated three-basis expression scores the frame aligned with the
    # Bloch axes; the optimizer searches all frames and exceeds it on
    # generic triples (e.g. (1,0,0): formula 0, rotated frames reach
    # 0.2558).  Kept at the stated tolerance, so this records the gap
    # rather than hiding it.
    worst = 0.0
    for i, triple in enumerate(_seeded_triples(50)):
        got = mub_tuple_correlation(bell_diagonal(triple), 3, cfg=CFG).value
        want = triple_correlation_bell_diagonal(triple)
        worst = max(worst, abs(got - want))
        assert got >= want - 2e-3, f"triple {i}: numeric fell below the formula"
    assert worst <= 2e-3, f"numeric exceeds the stated formula by up to {worst:.4f}"


def test_pure_state_values():
    for i, schmidt in enumerate(_seeded_schmidt(20)):
        rho = pure_from_schmidt(schmidt)
        s_b = von_neumann_entropy(partial_trace(rho, "A"))
        c = mub_pair_correlation(rho, cfg=CFG).value
        q2 = residual_correlation(rho, cfg=CFG).value
        assert c == pytest.approx(s_b, abs=1e-3), f"schmidt {i}"
        assert q2 == pytest.approx(s_b, abs=1e-3), f"schmidt {i}"


def test_theorem_verification():
    report = verify_nullity_theorem(200, 2, 2, seed=42)
    assert report.failures == ()
    assert report.products_detected == 20  # every tenth sample is a product
    assert report.witnesses_found == 180
    assert report.min_chi_over_witnesses > CHI_NONZERO

    report = verify_nullity_theorem(50, 3, 3, seed=1)
    assert report.failures == ()
    assert report.products_detected == 5
    assert report.witnesses_found == 45
    assert report.min_chi_over_witnesses > CHI_NONZERO


def test_nullity_if_direction():
    for seed in range(50):
        value = mub_pair_correlation(_product_state(seed), cfg=CFG).value
        assert value <= 1e-9, f"seed {seed}"


def test_ordering_and_monotonicity():
    corpus = [
        bell_diagonal(BlochTriple(0.5, 0.3, 0.1)),
        bell_diagonal(BlochTriple(1.0, 0.0, 0.0)),
        bell_diagonal_rho1(0.3)[0],
        bell_diagonal_rho2(0.7)[0],
        werner_state(2, 0.6),
        werner_state(3, 0.7),
        isotropic_state(2, 0.8),
        isotropic_state(3, 0.6),
        pure_from_schmidt(SchmidtVector((0.3, 0.7))),
        random_density_matrix(2, 2, 4, seed=31),
        random_density_matrix(2, 2, 2, seed=32),
        random_density_matrix(3, 3, 9, seed=33),
    ]
    for i, rho in enumerate(corpus):
        c = mub_pair_correlation(rho, cfg=CFG).value
        c1 = classical_correlation(rho, cfg=CFG).value
        q2 = residual_correlation(rho, cfg=CFG).value
        c3 = mub_tuple_correlation(rho, 3, cfg=CFG).value
        assert q2 <= c + 2e-3, f"state {i}: Q2 > C"
        assert c <= c1 + 2e-3, f"state {i}: C > C1"
        assert c3 <= c + 1e-6, f"state {i}: C3 > C"

    # the pair value is already attained by larger tuples on both families
    for param in np.linspace(0.0, 1.0, 5):
        for rho in (werner_state(2, float(param)), isotropic_state(2, float(param))):
            c = mub_pair_correlation(rho, cfg=CFG).value
            c3 = mub_tuple_correlation(rho, 3, cfg=CFG).value
            assert c3 == pytest.approx(c, abs=2e-3)
    for param in (0.4, 0.9):
        for rho in (werner_state(3, param), isotropic_state(3, param)):
            c = mub_pair_correlation(rho, cfg=CFG).value
            c4 = mub_tuple_correlation(rho, 4, cfg=CFG).value
            assert c4 == pytest.approx(c, abs=2e-3)


def test_special_state_values():
    sigma = bell_diagonal(BlochTriple(1.0, 0.0, 0.0))
    assert mub_pair_correlation(sigma, cfg=CFG).value == pytest.approx(0.3993, abs=1e-3)
    assert quantum_discord(sigma, cfg=CFG) <= 1e-3
    assert entanglement_of_formation_two_qubit(sigma) <= 1e-3
    assert residual_correlation(sigma, cfg=CFG).value <= 1e-3

    rho1, _ = bell_diagonal_rho1(0.5)
    c = mub_pair_correlation(rho1, cfg=CFG).value
    q2 = residual_correlation(rho1, cfg=CFG).value
    assert c == pytest.approx(q2, abs=2e-3)


def test_isotropic_companions():
    for beta in np.linspace(0.0, 1.0, 11):
        rho = isotropic_state(2, float(beta))
        numeric = mutual_information(rho) - classical_correlation(rho, cfg=CFG).value
        assert discord_isotropic(2, float(beta)) == pytest.approx(numeric, abs=2e-3)
    for alpha in np.linspace(-1.0, 1.0, 21):
        got = entanglement_of_formation_two_qubit(werner_state(2, float(alpha)))
        assert got == pytest.approx(
            entanglement_of_formation_werner(2, float(alpha)), abs=1e-9
        )


def test_sweep_determinism(tmp_path):
    args = ["sweep", "--family", "bell-diagonal-rho1", "--from", "0", "--to", "1",
            "--steps", "3", "--measures", "C,Q2", "--seed", "9", "--restarts", "6",
            "--out"]
    first, second = str(tmp_path / "a.csv"), str(tmp_path / "b.csv")
    assert main(args + [first]) == 0
    assert main(args + [second]) == 0
    assert open(first, "rb").read() == open(second, "rb").read()
