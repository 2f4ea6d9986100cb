"""Spectral terms, geometric coefficients and the balance evaluator."""

import itertools
import math
import random
from fractions import Fraction

import pytest

from lefschetz.algebra import build_chevalley_algebra, highest_weight_module, parabolic_split
from lefschetz.exact import LaurentCharacter
from lefschetz.formula import (
    GeodesicClassRecord,
    LeviRealForm,
    SpectralInput,
    SpectralTermTable,
    TestFunction,
    am_tilde_membership,
    balance_evaluator,
    det_identity_check,
    geometric_term,
    hecht_schmid_check,
    integrate_testfn,
    spectral_term,
)
from lefschetz.roots import build_root_system


def setup(label, levi):
    datum = build_root_system(label)
    alg = build_chevalley_algebra(datum)
    return datum, alg, parabolic_split(alg, levi)


def box_fn(coeff=1.0, mu=(Fraction(0),), box=((1.0, 2.0),)):
    return TestFunction(((coeff, tuple(mu), tuple(box)),))


class TestDetIdentity:
    def test_empty(self):
        assert det_identity_check([], ())

    def test_single_weight(self):
        assert det_identity_check([(1,)], (Fraction(2, 3),))

    def test_a2_borel_generic_point(self):
        _, _, split = setup("A2", set())
        weights = [split.restrict_to_a(r) for r in split.n_roots]
        assert det_identity_check(weights, (Fraction(3, 5), Fraction(7, 2)))

    def test_rational_weights(self):
        assert det_identity_check(
            [(Fraction(1, 2),), (Fraction(3, 2),)], (Fraction(2, 3),)
        )

    def test_seeded_sweep(self):
        rng = random.Random(42)
        for label in ("A1", "A2", "B2"):
            datum, alg, _ = setup(label, set())
            for bits in range(1 << datum.rank):
                levi = {i for i in range(datum.rank) if bits >> i & 1}
                split = parabolic_split(alg, levi)
                weights = [split.restrict_to_a(r) for r in split.n_roots]
                for _ in range(10):
                    point = tuple(
                        Fraction(rng.randint(1, 9), rng.randint(1, 9))
                        for _ in range(split.a_dim())
                    )
                    assert det_identity_check(weights, point)


class TestSpectralTerm:
    def test_rank_one_borel_fixture(self):
        _, alg, split = setup("A1", set())
        triv = highest_weight_module(alg, (0,))
        levi_form = LeviRealForm(LaurentCharacter.zero(1))
        table = spectral_term(triv, split, levi_form, LaurentCharacter.one(1))
        assert table.terms == {(Fraction(0),): -1, (Fraction(-2),): 1}

    def test_full_levi_reduces_to_alternating_invariants(self):
        from lefschetz.euler import euler_poincare_trace

        datum, alg, split = setup("A1", {0})
        levi_form = LeviRealForm(LaurentCharacter.zero(1))
        tau = LaurentCharacter.one(1)
        for lam in ((0,), (2,)):
            mod = highest_weight_module(alg, lam)
            table = spectral_term(mod, split, levi_form, tau)
            expected = euler_poincare_trace(
                mod.character(), LaurentCharacter.zero(1), tau, datum
            )
            assert table.terms.get((), 0) == expected

    def test_linearity_in_tables(self):
        _, alg, split = setup("A1", set())
        levi_form = LeviRealForm(LaurentCharacter.zero(1))
        tau = LaurentCharacter.one(1)
        t0 = spectral_term(highest_weight_module(alg, (0,)), split, levi_form, tau)
        t2 = spectral_term(highest_weight_module(alg, (2,)), split, levi_form, tau)
        combined = SpectralInput(((t0, 2), (t2, -1))).combined()
        for k in set(t0.terms) | set(t2.terms):
            assert combined.terms.get(k, 0) == 2 * t0.terms.get(k, 0) - t2.terms.get(k, 0)

    def test_nontrivial_levi_invariants(self):
        _, alg, split = setup("A2", {0})
        levi_form = LeviRealForm(LaurentCharacter.zero(2))
        tau = LaurentCharacter.one(2)
        table = spectral_term(highest_weight_module(alg, (1, 0)), split, levi_form, tau)
        assert table.terms == {(Fraction(-4),): 1}
        # the adjoint module cancels completely against trivial Levi data
        table = spectral_term(highest_weight_module(alg, (1, 1)), split, levi_form, tau)
        assert table.terms == {}

    def test_json_round_trip(self):
        table = SpectralTermTable({(Fraction(-2),): 1, (Fraction(0),): -1})
        assert SpectralTermTable.from_json_obj(table.to_json_obj()) == table


class TestGeometricTerm:
    def test_rank_one_closed_form(self):
        ell = 1.7
        rec = GeodesicClassRecord((-ell,), ell, Fraction(1), 1 + 0j, 1 + 0j)
        value = geometric_term(rec, [(1,)])
        assert abs(value - ell / (1 - math.exp(-ell))) < 1e-14

    def test_covolume_linearity(self):
        rec1 = GeodesicClassRecord((-1.0,), 1.0, Fraction(1), 1 + 0j, 1 + 0j)
        rec2 = GeodesicClassRecord((-1.0,), 2.0, Fraction(1), 1 + 0j, 1 + 0j)
        assert abs(geometric_term(rec2, [(1,)]) - 2 * geometric_term(rec1, [(1,)])) < 1e-14

    def test_zero_omega_trace(self):
        rec = GeodesicClassRecord((-1.0,), 1.0, Fraction(1), 0j, 1 + 0j)
        assert geometric_term(rec, [(1,)]) == 0

    def test_unit_multipliers(self):
        rec = GeodesicClassRecord((-1.0,), 1.0, Fraction(1), 1 + 0j, 1 + 0j)
        u = complex(math.cos(1.0), math.sin(1.0))
        value = geometric_term(rec, [(1,)], [u])
        assert abs(value - 1 / (1 - u * math.exp(-1.0))) < 1e-14

    def test_record_outside_chamber_rejected(self):
        rec = GeodesicClassRecord((1.0,), 1.0, Fraction(1), 1 + 0j, 1 + 0j)
        with pytest.raises(ValueError):
            geometric_term(rec, [(1,)])

    def test_json_round_trip(self):
        rec = GeodesicClassRecord((-1.5, -0.5), 2.0, Fraction(3, 2), 1 + 2j, 0.5 + 0j)
        assert GeodesicClassRecord.from_json_obj(rec.to_json_obj()) == rec


class TestMembership:
    def test_expanding_on_nbar(self):
        member, lam = am_tilde_membership([2.0, 4.0], [1.0])
        assert member and lam == 2.0

    def test_boundary_not_member(self):
        member, lam = am_tilde_membership([1.0, 3.0], [1.0])
        assert not member and lam == 1.0

    def test_mixed(self):
        member, lam = am_tilde_membership([2, 4], [0.5, 2])
        assert not member and lam == 1.0

    def test_monotone_in_a_eigenvalues(self):
        rng = random.Random(4)
        for _ in range(100):
            a = [rng.uniform(0.5, 3) for _ in range(3)]
            m = [rng.uniform(0.5, 3) for _ in range(3)]
            member, _ = am_tilde_membership(a, m)
            bigger = [x * rng.uniform(1, 2) for x in a]
            member2, _ = am_tilde_membership(bigger, m)
            assert member2 or not member

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            am_tilde_membership([], [1.0])


class TestHechtSchmid:
    def test_trivial_a1(self):
        _, alg, split = setup("A1", set())
        assert hecht_schmid_check(highest_weight_module(alg, (0,)), split)

    def test_empty_n(self):
        _, alg, split = setup("A1", {0})
        assert hecht_schmid_check(highest_weight_module(alg, (2,)), split)

    def test_sweep_a1_a2(self):
        for label in ("A1", "A2"):
            datum, alg, _ = setup(label, set())
            for bits in range(1 << datum.rank):
                levi = {i for i in range(datum.rank) if bits >> i & 1}
                split = parabolic_split(alg, levi)
                for lam in itertools.product(range(3), repeat=datum.rank):
                    mod = highest_weight_module(alg, lam)
                    assert hecht_schmid_check(mod, split), (label, levi, lam)


class TestIntegration:
    def test_interval_length(self):
        assert abs(integrate_testfn(box_fn(), (Fraction(0),)) - 1) < 1e-15

    def test_exponential(self):
        phi = box_fn(mu=(Fraction(-1),), box=((0.5, 1.5),))
        expected = math.exp(-0.5) - math.exp(-1.5)
        assert abs(integrate_testfn(phi, (Fraction(0),)) - expected) < 1e-15

    def test_product_of_coordinates(self):
        phi = TestFunction(
            ((2.0, (Fraction(0), Fraction(-1)), ((1.0, 2.0), (0.5, 1.5))),)
        )
        expected = 2.0 * 1.0 * (math.exp(-0.5) - math.exp(-1.5))
        assert abs(integrate_testfn(phi, (Fraction(0), Fraction(0))) - expected) < 1e-14

    def test_bad_box_rejected(self):
        with pytest.raises(ValueError):
            box_fn(box=((-1.0, 2.0),))

    def test_evaluate_inside_and_outside(self):
        phi = box_fn(mu=(Fraction(1),))
        assert phi.evaluate((1.5,)) == pytest.approx(math.exp(1.5))
        assert phi.evaluate((5.0,)) == 0.0


class TestBalance:
    def test_empty_inputs(self):
        _, alg, split = setup("A1", set())
        spec = SpectralInput(())
        phi = box_fn()
        assert balance_evaluator(spec, [], phi, split=split) == (0.0, 0.0, 0.0)

    def test_constructed_consistent_fixture(self):
        _, alg, split = setup("A1", set())
        phi = box_fn(box=((0.2, 3.0),))
        ell = 1.0
        rec = GeodesicClassRecord((-ell,), 1.0, Fraction(1), 1 + 0j, 1 + 0j)
        n_weights = [split.restrict_to_a(r) for r in split.n_roots]
        local = geometric_term(rec, n_weights) * phi.evaluate((ell,))
        lam = (Fraction(-2),)
        per_unit = integrate_testfn(phi, tuple(-c for c in lam))
        # one spectral entry tuned so the global side equals the local side
        table = SpectralTermTable({lam: 1})
        scale = local.real / per_unit
        phi_scaled = phi.scaled(scale)
        g, l, r = balance_evaluator(
            SpectralInput(((table, 1),)), [rec], phi_scaled, split=split
        )
        # the local side is also scaled by `scale`, so rescale the record
        rec2 = GeodesicClassRecord((-ell,), 1.0 / scale, Fraction(1), 1 + 0j, 1 + 0j)
        g, l, r = balance_evaluator(
            SpectralInput(((table, 1),)), [rec2], phi_scaled, split=split
        )
        assert abs(r) < 1e-12 * max(1.0, abs(g))

    def test_linearity_in_test_function(self):
        _, alg, split = setup("A1", set())
        table = SpectralTermTable({(Fraction(-2),): 1, (Fraction(0),): -1})
        spec = SpectralInput(((table, 1),))
        rec = GeodesicClassRecord((-1.0,), 1.0, Fraction(1), 1 + 0j, 1 + 0j)
        phi = box_fn(box=((0.5, 2.0),))
        g1, l1, r1 = balance_evaluator(spec, [rec], phi, split=split)
        g3, l3, r3 = balance_evaluator(spec, [rec], phi.scaled(3.0), split=split)
        assert abs(g3 - 3 * g1) < 1e-12
        assert abs(l3 - 3 * l1) < 1e-12
        assert abs(r3 - 3 * r1) < 1e-12

    def test_linearity_in_multiplicities(self):
        _, alg, split = setup("A1", set())
        table = SpectralTermTable({(Fraction(-2),): 1})
        phi = box_fn()
        g1, _, _ = balance_evaluator(SpectralInput(((table, 1),)), [], phi, split=split)
        g5, _, _ = balance_evaluator(SpectralInput(((table, 5),)), [], phi, split=split)
        assert abs(g5 - 5 * g1) < 1e-12
