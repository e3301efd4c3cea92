import pytest

from lancaster import ArTripleSpec, TripleSeries, derive_rng, gen_independent_ar


@pytest.fixture
def random_triple():
    """Factory for i.i.d.-ish random triples of a given size."""

    def make(n: int, seed: int = 0, d: int = 1) -> TripleSeries:
        rng = derive_rng(seed, 99)
        return TripleSeries(
            rng.standard_normal((n, d)),
            rng.standard_normal((n, d)),
            rng.standard_normal((n, d)),
        )

    return make


@pytest.fixture
def ar_triple():
    """Factory for mutually independent AR(a) triples."""

    def make(n: int, a: float = 0.5, seed: int = 0) -> TripleSeries:
        spec = ArTripleSpec("independent", n, a)
        return gen_independent_ar(spec, derive_rng(seed, 0))

    return make
