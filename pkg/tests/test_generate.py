import pytest

from knapsack_lll import solver
from knapsack_lll.generate import GEN_REGIMES, SplitMix64, generate_instance, random_kernel_lattice
from knapsack_lll.linalg import check_primitivity, gram_det_sq, mat_vec


def test_splitmix_reference_values():
    # reference stream for seed 0 of the splitmix64 generator
    rng = SplitMix64(0)
    assert [rng.next() for _ in range(3)] == [
        0xE220A8397B1DCDAF, 0x6E789E6AA1B965F4, 0x06C45D188009454F
    ]


def test_splitmix_determinism():
    r1, r2 = SplitMix64(42), SplitMix64(42)
    assert [r1.randint(-5, 5) for _ in range(100)] == [r2.randint(-5, 5) for _ in range(100)]
    rng = SplitMix64(7)
    assert {rng.randint(0, 2) for _ in range(200)} == {0, 1, 2}
    with pytest.raises(ValueError):
        SplitMix64(1).randint(3, 2)


@pytest.mark.parametrize("regime", GEN_REGIMES)
def test_generated_regime(regime):
    m = 1 if regime.endswith("_M1") or regime == "OUT" else 2
    for seed in range(1, 6):
        inst = generate_instance(m, 4, 12, seed, regime)
        cls = solver.classify_regime(inst)
        if regime == "OUT":
            assert cls.regime == solver.OUT
        else:
            assert regime in cls.applicable
        assert generate_instance(m, 4, 12, seed, regime) == inst


def test_generate_errors():
    with pytest.raises(ValueError):
        generate_instance(2, 4, 10, 1, "THM3_M1")
    with pytest.raises(ValueError):
        generate_instance(1, 4, 10, 1, "NOPE")


def test_random_kernel_lattice():
    rng = SplitMix64(9)
    for _ in range(20):
        A, ker = random_kernel_lattice(rng, 6, 3, 10)
        assert check_primitivity(A) and ker.rank == 3
        assert ker.gram_det_sq == gram_det_sq(A)
        assert all(mat_vec(A, x) == (0, 0, 0) for x in ker.basis)
