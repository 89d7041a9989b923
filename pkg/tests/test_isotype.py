"""Character linear system and the isotype formulas."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from germlab import (
    EulerOnly,
    IcisDatum,
    InconsistentDataError,
    SingleDim,
    character_table_symmetric,
    check_conservation,
    evaluate_class_function,
    mu_tau,
    solve_character_system,
    tau_betti_single_dim,
    tau_characteristic,
)
from germlab.errors import IncompleteDataError
from germlab.isotype import fixed_point_data_from_text

T2 = character_table_symmetric(2)
ALT2 = "(1,1)"
TRIV2 = "(2)"


class TestSolve:
    def test_sphere_with_reflection(self):
        x = solve_character_system(T2, {"(1,1)": 2, "(2)": 0})
        assert x == {TRIV2: 1, ALT2: 1}

    def test_trivial_action(self):
        x = solve_character_system(T2, {"(1,1)": 2, "(2)": 2})
        assert x == {TRIV2: 2, ALT2: 0}

    @pytest.mark.parametrize("k", [2, 3, 4, 5])
    def test_regular_representation_gives_degrees(self, k):
        t = character_table_symmetric(k)
        b = {label: 0 for label in t.class_labels}
        b[t.class_labels[t.identity_index]] = t.group_order
        x = solve_character_system(t, b)
        for i, label in enumerate(t.irrep_labels):
            assert x[label] == t.degree(i)

    @pytest.mark.parametrize("k", range(1, 9))
    def test_round_trip_on_random_class_functions(self, k):
        t = character_table_symmetric(k)
        rng = random.Random(20 + k)
        for _ in range(100):
            x = {label: Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for label in t.irrep_labels}
            b = evaluate_class_function(t, x)
            assert solve_character_system(t, b) == x


class TestTauCharacteristic:
    def test_sphere_reflection_alternating(self):
        data = {"(1,1)": EulerOnly(2), "(2)": EulerOnly(0)}
        assert tau_characteristic(T2, data, ALT2) == 1

    def test_trivial_rep_on_trivial_action_returns_euler(self):
        data = {"(1,1)": EulerOnly(2), "(2)": EulerOnly(2)}
        assert tau_characteristic(T2, data, TRIV2) == 2

    def test_trivial_rep_is_size_weighted_average(self):
        t = character_table_symmetric(3)
        data = {lbl: EulerOnly(v) for lbl, v in zip(t.class_labels, (3, 1, 7))}
        expected = Fraction(
            sum(size * d.euler for size, d in zip(t.class_sizes, data.values())),
            t.group_order,
        )
        assert tau_characteristic(t, data, "(3)") == expected


class TestTauBetti:
    def test_sphere_reflection(self):
        data = {"(1,1)": SingleDim(2, 1), "(2)": SingleDim(1, 1)}
        assert tau_betti_single_dim(T2, data, ALT2, 2) == 1

    def test_trivial_action_kills_alternating_part(self):
        data = {"(1,1)": SingleDim(2, 1), "(2)": SingleDim(2, 1)}
        assert tau_betti_single_dim(T2, data, ALT2, 2) == 0

    def test_zero_data(self):
        data = {"(1,1)": SingleDim(2, 0), "(2)": SingleDim(1, 0)}
        assert tau_betti_single_dim(T2, data, ALT2, 2) == 0

    def test_nonintegral_flagged_with_value(self):
        data = {"(1,1)": SingleDim(2, 1), "(2)": SingleDim(1, 2)}
        with pytest.raises(InconsistentDataError) as err:
            tau_betti_single_dim(T2, data, ALT2, 2)
        assert err.value.value == Fraction(3, 2)

    def test_constant_connected_component_data_is_trivial_isotype(self):
        # Feeding b = 1 on every class to the solver recovers the inner
        # products <chi_T | chi_tau>: 1 for the trivial character, 0 otherwise.
        for k in (2, 3, 4):
            t = character_table_symmetric(k)
            x = solve_character_system(t, {lbl: 1 for lbl in t.class_labels})
            for i, label in enumerate(t.irrep_labels):
                assert x[label] == (1 if i == t.trivial_index else 0)


class TestMuTau:
    def test_curve_with_swap_action(self):
        for k in (1, 2, 3):
            data = {"(1,1)": IcisDatum(1, k), "(2)": IcisDatum(0, k)}
            assert mu_tau(T2, data, ALT2, 1) == k

    def test_all_zero(self):
        data = {"(1,1)": IcisDatum(1, 0), "(2)": IcisDatum(0, 0)}
        for tau in (ALT2, TRIV2):
            assert mu_tau(T2, data, tau, 1) == 0

    def test_negative_supplied_dimension_with_point_datum(self):
        # mu even makes the value non-integral; the exact value rides along.
        for mu, ok in ((3, True), (4, False)):
            data = {"(1,1)": IcisDatum(1, mu), "(2)": IcisDatum(-1, -1)}
            if ok:
                assert mu_tau(T2, data, ALT2, 1) == Fraction(mu + 1, 2)
            else:
                with pytest.raises(InconsistentDataError) as err:
                    mu_tau(T2, data, ALT2, 1)
                assert err.value.value == Fraction(mu + 1, 2)
                assert mu_tau(T2, data, ALT2, 1, allow_nonintegral=True) == Fraction(
                    mu + 1, 2
                )

    def test_free_orbit_rule(self):
        # Empty fixed loci for every nonidentity class: mu^tau is
        # degree(tau) * mu / k!.
        t = character_table_symmetric(3)
        mu = 12
        data = {lbl: IcisDatum(0, 0) for lbl in t.class_labels}
        data["(1,1,1)"] = IcisDatum(2, mu)
        for i, label in enumerate(t.irrep_labels):
            assert mu_tau(t, data, label, 2) == Fraction(int(t.degree(i)) * mu, 6)


class TestConservation:
    def test_morsified_cusp(self):
        # mu = 2 splitting into two nodes with no residual homology.
        verdict = check_conservation(2, 0, [1, 1], 1)
        assert verdict.holds and verdict.semicontinuity_ok

    def test_identity_family(self):
        verdict = check_conservation(5, 0, [5], 1)
        assert verdict.holds

    def test_fabricated_violation(self):
        verdict = check_conservation(2, 0, [1], 1)
        assert not verdict.holds
        assert verdict.difference == 1

    def test_zero_dimensional_variant(self):
        # mu(X_0) = beta_0(X_t) + sum local - beta_0(X_0).
        verdict = check_conservation(2, 0, [0], 0, beta0_tau_xt=3, beta0_tau_x0=1)
        assert verdict.holds

    def test_zero_dimensional_requires_beta0_terms(self):
        with pytest.raises(IncompleteDataError):
            check_conservation(2, 0, [0], 0)

    def test_semicontinuity_flag(self):
        verdict = check_conservation(2, -1, [3], 1)
        assert not verdict.semicontinuity_ok


class TestFixedPointFiles:
    def test_euler_file(self):
        f = fixed_point_data_from_text(
            "# sphere with reflection\nclass (1,1) euler 2\nclass (2) euler 0\n"
        )
        assert f.kind == "euler"
        assert tau_characteristic(T2, f.data, ALT2) == 1

    def test_single_dim_file_with_top_dim(self):
        f = fixed_point_data_from_text(
            "top_dim 2\nclass (1,1) single 2 1\nclass (2) single 1 1\n"
        )
        assert f.top_dim == 2
        assert tau_betti_single_dim(T2, f.data, ALT2, 2) == 1

    def test_mixed_kinds_rejected(self):
        with pytest.raises(Exception):
            fixed_point_data_from_text(
                "class (1,1) euler 2\nclass (2) single 1 1\n"
            )
