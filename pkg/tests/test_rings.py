import random
from fractions import Fraction

import pytest

from qhcalc.qalgebra import GroundField
from qhcalc.rings import (
    CPn,
    Grassmannian,
    basis,
    convert_grading,
    first_chern_generator,
    fits_box,
    kunneth,
    littlewood_richardson,
    normalize_partition,
    partitions_in_box,
    quantum_pieri,
    quantum_product,
    rim_hook_reduce,
)

from oracles import lr_coefficients_oracle


class TestPartitions:
    def test_normalize(self):
        assert normalize_partition([3, 1, 0, 0]) == (3, 1)
        with pytest.raises(ValueError):
            normalize_partition([1, 2])
        with pytest.raises(ValueError):
            normalize_partition([2, -1])

    def test_box(self):
        assert fits_box((2, 2), 2, 2)
        assert not fits_box((3,), 2, 2)
        assert len(partitions_in_box(2, 2)) == 6  # binomial(4, 2)


class TestBasis:
    def test_cp2_degree_two(self):
        assert basis(CPn(n=2), 2) == [1]

    def test_g24_degree_four(self):
        assert basis(Grassmannian(k=2, N=4), 4) == [(1, 1), (2,)]

    def test_odd_degree_empty(self):
        assert basis(Grassmannian(k=2, N=5), 3) == []
        assert basis(CPn(n=4), 5) == []


class TestLittlewoodRichardson:
    def test_pieri_square(self):
        assert littlewood_richardson((1,), (1,), 2) == {(2,): 1, (1, 1): 1}

    def test_unit(self):
        assert littlewood_richardson((3, 1), (), 2) == {(3, 1): 1}

    def test_two_one_times_one(self):
        assert littlewood_richardson((2, 1), (1,), 2) == {(3, 1): 1, (2, 2): 1}

    def test_against_schur_oracle(self):
        cases = []
        for rows in (2, 3):
            box = partitions_in_box(rows, 3)
            for lam in box:
                for mu in box:
                    cases.append((lam, mu, rows))
        rng = random.Random(3)
        for lam, mu, rows in rng.sample(cases, 60):
            assert littlewood_richardson(lam, mu, rows) == lr_coefficients_oracle(
                lam, mu, rows
            ), (lam, mu, rows)


class TestRimHook:
    def test_in_box_identity(self):
        assert rim_hook_reduce((2, 1), 2, 4) == ((2, 1), 0, 1)

    def test_single_hook_positive(self):
        assert rim_hook_reduce((3, 1), 2, 4) == ((), 1, 1)

    def test_single_hook_negative(self):
        assert rim_hook_reduce((4,), 2, 4) == ((), 1, -1)

    def test_too_many_parts_rejected(self):
        with pytest.raises(ValueError):
            rim_hook_reduce((1, 1, 1), 2, 4)


class TestQuantumPieri:
    def test_g24_two_one(self):
        ring = Grassmannian(k=2, N=4)
        expected = ring.basis_class((2, 2)) + ring.basis_class((), m=1)
        assert quantum_pieri(ring, (2, 1), 1) == expected

    def test_g24_top_class(self):
        ring = Grassmannian(k=2, N=4)
        assert quantum_pieri(ring, (2, 2), 1) == ring.basis_class((1,), m=1)

    def test_unit_factor(self):
        ring = Grassmannian(k=3, N=6)
        for p in range(1, 4):
            assert quantum_pieri(ring, (), p) == ring.basis_class((p,))

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            quantum_pieri(Grassmannian(k=2, N=4), (1,), 3)


class TestQuantumProduct:
    def test_cp2_relation(self):
        ring = CPn(n=2)
        u = ring.basis_class(1)
        assert quantum_product(ring, u, ring.basis_class(2)) == ring.basis_class(0, m=1)

    def test_g24_char_two_cube(self):
        ring = Grassmannian(k=2, N=4, field=GroundField(2))
        s1 = ring.basis_class((1,))
        assert ring.power(s1, 3).is_zero()

    def test_unit(self):
        ring = Grassmannian(k=2, N=5)
        a = ring.basis_class((2, 1)) + ring.basis_class((1,), m=2)
        assert quantum_product(ring, ring.one(), a) == a

    def test_g24_powers_nonzero_over_q(self):
        ring = Grassmannian(k=2, N=4)
        p = ring.one()
        for d in range(1, 41):
            p = quantum_product(ring, p, ring.basis_class((1,)))
            assert not p.is_zero(), d

    def test_g24_sigma1_fifth_power(self):
        ring = Grassmannian(k=2, N=4)
        assert ring.power(ring.basis_class((1,)), 5) == ring.basis_class(
            (1,), m=1
        ).scale(4)

    def test_degree_additivity(self):
        ring = Grassmannian(k=3, N=6)
        rng = random.Random(5)
        labels = [l for l in ring.basis_labels()]
        for _ in range(40):
            a = ring.basis_class(rng.choice(labels), m=rng.randint(-1, 1))
            b = ring.basis_class(rng.choice(labels), m=rng.randint(-1, 1))
            prod = quantum_product(ring, a, b)
            if not prod.is_zero():
                assert prod.degree() == a.degree() + b.degree()

    def test_pipeline_agreement_small(self):
        for k, N in ((2, 4), (2, 5), (3, 6)):
            ring = Grassmannian(k=k, N=N)
            for lam in ring.basis_labels():
                for p in range(1, N - k + 1):
                    assert quantum_pieri(ring, lam, p) == quantum_product(
                        ring, ring.basis_class(lam), ring.basis_class((p,))
                    ), (k, N, lam, p)

    def test_classical_limit(self):
        ring = Grassmannian(k=2, N=5)
        for lam in ring.basis_labels():
            for mu in ring.basis_labels():
                prod = quantum_product(
                    ring, ring.basis_class(lam), ring.basis_class(mu)
                )
                classical = {
                    nu: c
                    for nu, c in littlewood_richardson(lam, mu, ring.k).items()
                    if fits_box(nu, ring.k, ring.N - ring.k)
                }
                q0 = {
                    label: c for (label, m), c in prod.terms if m == 0
                }
                assert q0 == {nu: Fraction(c) for nu, c in classical.items()}

    def test_associativity_commutativity_random(self):
        rng = random.Random(17)
        for k, N in ((2, 4), (2, 5), (3, 5), (3, 6)):
            ring = Grassmannian(k=k, N=N)
            labels = ring.basis_labels()
            for _ in range(60):
                a, b, c = (ring.basis_class(rng.choice(labels)) for _ in range(3))
                ab = quantum_product(ring, a, b)
                assert ab == quantum_product(ring, b, a)
                assert quantum_product(ring, ab, c) == quantum_product(
                    ring, a, quantum_product(ring, b, c)
                )


class TestKunneth:
    def test_p1_times_p1_square(self):
        ring = kunneth(CPn(n=1, lambda0=Fraction(1)), CPn(n=1, lambda0=Fraction(1)))
        u1 = ring.basis_class((1, 0))
        assert quantum_product(ring, u1, u1) == ring.basis_class((0, 0), m=1)

    def test_unit_factors(self):
        left = Grassmannian(k=2, N=4, lambda0=Fraction(1))
        right = CPn(n=3, lambda0=Fraction(1))
        ring = kunneth(left, right)
        a = ring.basis_class(((2, 1), 0))
        b = ring.basis_class(((), 2))
        assert quantum_product(ring, a, b) == ring.basis_class(((2, 1), 2))

    def test_mismatched_monotonicity_rejected(self):
        with pytest.raises(ValueError):
            kunneth(
                CPn(n=1, lambda0=Fraction(1)), CPn(n=2, lambda0=Fraction(2))
            )

    def test_g24_times_p3_generator_powers(self):
        ring = kunneth(
            Grassmannian(k=2, N=4, lambda0=Fraction(1)),
            CPn(n=3, lambda0=Fraction(1)),
        )
        assert ring.N_chern == 4
        u = first_chern_generator(ring)
        p = ring.one()
        for d in range(1, 21):
            p = quantum_product(ring, p, u)
            assert not p.is_zero(), d

    def test_structure_constants_factorize(self):
        left = CPn(n=1, lambda0=Fraction(1))
        right = CPn(n=1, lambda0=Fraction(1))
        ring = kunneth(left, right)
        for la in ring.basis_labels():
            for lb in ring.basis_labels():
                got = dict(ring.structure(la, lb))
                expected = {}
                for (l1, m1), c1 in left.structure(la[0], lb[0]):
                    for (l2, m2), c2 in right.structure(la[1], lb[1]):
                        expected[((l1, l2), m1 + m2)] = c1 * c2
                assert got == expected


class TestGradingAndGenerator:
    def test_convert_grading(self):
        assert convert_grading(CPn(n=2), 0) == 4
        assert convert_grading(CPn(n=2), 2) == 2
        assert convert_grading(Grassmannian(k=2, N=4), 8) == 0

    def test_first_chern_generator(self):
        assert first_chern_generator(CPn(n=4)) == CPn(n=4).basis_class(1)
        g = Grassmannian(k=2, N=4)
        assert first_chern_generator(g) == g.basis_class((1,))
        ring = kunneth(CPn(n=1, lambda0=Fraction(1)), CPn(n=1, lambda0=Fraction(1)))
        assert first_chern_generator(ring) == ring.basis_class(
            (1, 0)
        ) + ring.basis_class((0, 1))
