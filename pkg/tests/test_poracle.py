import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import matrix_is_p
from tenclass import (
    DenseTensor,
    PVerdict,
    add_constant_rows,
    decompose,
    identity_tensor,
    is_b_nekrasov_conditions,
    is_b_nekrasov_definition,
    p0_falsify,
    p_falsify,
)
from tenclass.generators import random_b_nekrasov, random_nekrasov
from tenclass.poracle import objective, objective_many, sign_patterns
from tenclass.tensor import contract_vector

seeds = st.integers(0, 10**6)


def constant_row_counterexample() -> DenseTensor:
    """B-Nekrasov with m=4 whose constant third row defeats the P property."""
    arr = identity_tensor(4, 3).array.copy()
    arr[0, 0, 2, 2] = arr[1, 1, 2, 2] = -0.9
    return add_constant_rows(DenseTensor.from_array(arr), [0.0, 0.0, 100.0])


class TestObjective:
    def test_identity(self):
        assert objective(identity_tensor(4, 2), [1.0, -1.0]) == 1.0

    def test_zero_coordinates_are_ignored(self):
        arr = -identity_tensor(2, 2).array
        arr[1, 0] = 50.0
        A = DenseTensor.from_array(arr)
        assert objective(A, [1.0, 0.0]) == -1.0

    def test_zero_vector_is_never_a_witness(self):
        assert objective(-identity_tensor(4, 2), [0.0, 0.0]) == np.inf

    @given(seeds, st.integers(2, 5), st.integers(1, 4), st.floats(0.1, 10))
    @settings(max_examples=80, deadline=None)
    def test_homogeneous_of_degree_m(self, seed, m, n, alpha):
        rng = np.random.default_rng(seed)
        A = DenseTensor(m, n, rng.uniform(-2, 2, n**m))
        v = rng.standard_normal(n)
        assert objective(A, alpha * v) == pytest.approx(alpha**m * objective(A, v), rel=1e-9, abs=1e-12)

    @given(seeds, st.sampled_from([3, 5]), st.integers(1, 4))
    @settings(max_examples=60, deadline=None)
    def test_odd_order_flips_sign(self, seed, m, n):
        rng = np.random.default_rng(seed)
        A = DenseTensor(m, n, rng.uniform(-2, 2, n**m))
        v = rng.standard_normal(n)
        prods = v * contract_vector(A, v)
        neg = -v * contract_vector(A, -v)
        np.testing.assert_allclose(neg, -prods, rtol=1e-12, atol=1e-12)

    def test_sign_patterns(self):
        pats = sign_patterns(3)
        assert len(pats) == 26
        np.testing.assert_allclose(np.linalg.norm(pats, axis=1), 1.0)

    def test_batch(self, rng):
        A = DenseTensor(4, 3, rng.uniform(-2, 2, 81))
        V = rng.standard_normal((5, 3))
        np.testing.assert_allclose(objective_many(A, V), [objective(A, v) for v in V], rtol=1e-13)


class TestPFalsify:
    def test_identity_even(self):
        r = p_falsify(identity_tensor(4, 3))
        assert not r.falsified and r.even_order

    def test_minus_identity(self):
        r = p_falsify(-identity_tensor(4, 3))
        assert r.falsified
        assert objective(-identity_tensor(4, 3), r.witness) <= 0
        assert r.worst_value == pytest.approx(-1.0)

    def test_example_survives_large_budget(self, example):
        r = p_falsify(example, budget=10_000)
        assert not r.falsified
        assert r.worst_value > 0

    def test_deterministic_given_seed(self, example):
        a = p_falsify(example, seed=7).to_dict()
        b = p_falsify(example, seed=7).to_dict()
        assert a == b

    def test_witness_reproduces(self, rng):
        for _ in range(10):
            arr = rng.uniform(-1, 1, (3,) * 4)
            arr[1, 1, 1, 1] = -5.0
            A = DenseTensor.from_array(arr)
            r = p_falsify(A)
            assert r.falsified
            assert objective(A, r.witness) <= 1e-10

    def test_odd_order_identity_is_falsified(self):
        r = p_falsify(identity_tensor(3, 2))
        assert not r.even_order and r.falsified
        assert objective(identity_tensor(3, 2), r.witness) == pytest.approx(-1.0)

    def test_odd_order_note(self):
        r = PVerdict("not_falsified", None, 0.5, 10, even_order=False)
        assert "odd order" in r.note
        assert "odd order" in r.to_dict()["note"]

    def test_invalid_budget(self):
        with pytest.raises(ValueError):
            p_falsify(identity_tensor(4, 2), budget=0)

    @pytest.mark.parametrize("seed", range(40))
    def test_order_two_agrees_with_principal_minors(self, seed):
        rng = np.random.default_rng(seed)
        M = rng.uniform(-1, 1, (3, 3)) + np.diag(rng.uniform(-0.5, 2.5, 3))
        r = p_falsify(DenseTensor.from_array(M), budget=4000)
        assert r.falsified == (not matrix_is_p(M))


class TestP0:
    def test_identity(self):
        assert not p0_falsify(identity_tensor(4, 2)).falsified

    def test_minus_identity(self):
        assert p0_falsify(-identity_tensor(4, 2)).falsified

    def test_zero_tensor_is_p0_but_not_p(self):
        O = DenseTensor.zeros(4, 2)
        assert p_falsify(O).falsified
        assert not p0_falsify(O).falsified

    @given(seeds, st.integers(2, 4))
    @settings(max_examples=20, deadline=None)
    def test_h_with_positive_diagonal(self, seed, n):
        A = random_nekrasov(np.random.default_rng(seed), 4, n, positive_diagonal=True)
        assert not p0_falsify(A).falsified


class TestConstantRows:
    def test_zero_constants(self, rng):
        A = DenseTensor(4, 2, rng.uniform(-1, 1, 16))
        assert add_constant_rows(A, np.zeros(2)) == A

    def test_rebuilds_example(self, example):
        dec = decompose(example)
        assert add_constant_rows(dec.bplus, dec.rplus) == example

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            add_constant_rows(identity_tensor(4, 2), [1.0, -1.0])

    @given(seeds, st.integers(2, 4))
    @settings(max_examples=20, deadline=None)
    def test_positive_diagonal_plus_constants_stays_p(self, seed, n):
        # The coordinate sharing the sign of sum(v) always has a positive product.
        rng = np.random.default_rng(seed)
        arr = np.zeros((n,) * 4)
        for i in range(n):
            arr[(i,) * 4] = rng.uniform(0.5, 2)
        A = add_constant_rows(DenseTensor.from_array(arr), rng.uniform(0, 5, n))
        assert not p_falsify(A).falsified

    @given(seeds, st.integers(2, 4))
    @settings(max_examples=20, deadline=None)
    def test_generator_members_survive(self, seed, n):
        A = random_b_nekrasov(np.random.default_rng(seed), 4, n)
        assert not p_falsify(A).falsified


class TestConstantRowsCanBreakP:
    def test_member_of_the_class(self):
        A = constant_row_counterexample()
        assert is_b_nekrasov_definition(A)
        assert is_b_nekrasov_conditions(A)
        assert decompose(A).bplus == DenseTensor.from_array(A.array - np.array([0, 0, 100.0])
                                                            .reshape(3, 1, 1, 1))

    def test_explicit_vector(self):
        A = constant_row_counterexample()
        v = np.array([1.0, 1.0, -1.5])
        prods = v * contract_vector(A, v)
        np.testing.assert_allclose(prods, [-1.025, -1.025, -13.6875], rtol=1e-14)

    def test_search_finds_a_witness(self):
        A = constant_row_counterexample()
        r = p_falsify(A, budget=10_000)
        assert r.falsified
        assert objective(A, r.witness) < 0

    def test_bplus_alone_is_not_falsified(self):
        assert not p_falsify(decompose(constant_row_counterexample()).bplus, budget=10_000).falsified
