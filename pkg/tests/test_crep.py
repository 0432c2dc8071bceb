"""
Tests for c-representations: constraint sets, transformation rules, the minimal
core, c-inference, strategies and solutions along splittings.
"""

import itertools

import pytest

from condsplit.crep import (
    RULES,
    ConstantStrategy,
    ImpactVector,
    LexMinStrategy,
    MinimalCoreStrategy,
    Verdict,
    c_infer,
    ccore_infer,
    check_ip_cspg,
    compose_solutions,
    constraint_sets,
    cr_plus,
    effective_bound,
    enumerate_solutions,
    get_strategy,
    induced_ocf,
    is_solution,
    match_delta3,
    minimal_core_vector,
    reduce,
    reduced_constraints,
    solution_split_compose,
    split_solution,
    strategy_infer,
    strategy_vector,
)
from condsplit.errors import (
    InconsistentBeliefBase,
    InvalidRanking,
    LengthMismatch,
    MismatchedDelta3Impacts,
    NotGeneralizedSafe,
    StrategyReturnedNonSolution,
    UnknownOperator,
)
from condsplit.conditionals import BeliefBase
from condsplit.logic import Signature
from condsplit.splitting import induce

# κη of Δ^b in truth-table order for three c-representations
BIRDS_OCFS = {
    (1, 2, 2, 1): [2, 3, 1, 2, 0, 1, 1, 2, 4, 4, 2, 2, 0, 0, 0, 0],
    (3, 4, 4, 3): [4, 7, 3, 6, 0, 3, 3, 6, 8, 8, 4, 4, 0, 0, 0, 0],
    (4, 5, 6, 7): [5, 12, 4, 11, 0, 7, 4, 11, 11, 11, 6, 6, 0, 0, 0, 0],
}


def _family(*sets):
    return frozenset(frozenset(s) for s in sets)


class TestImpactVector:
    """Tests for ImpactVector"""

    def test_lookup_and_format(self, birds):
        """Test access by label and the printed form"""
        eta = ImpactVector.for_base(birds, [1, 2, 2, 1])

        assert eta[2] == 2
        assert str(eta) == "(1,2,2,1)"
        assert eta.restrict([4, 1]) == ImpactVector(labels=(1, 4), impacts=(1, 1))

    def test_negative_impacts(self):
        """Test that impacts are natural numbers"""
        with pytest.raises(InvalidRanking):
            ImpactVector(labels=(1,), impacts=(-1,))

    def test_length_mismatch(self, birds):
        """Test that a vector needs one impact per conditional"""
        with pytest.raises(LengthMismatch):
            ImpactVector(labels=(1, 2), impacts=(1,))
        with pytest.raises(LengthMismatch):
            is_solution(birds, [1, 2, 2])


class TestConstraintSets:
    """Tests for CR(Δ) and its reduction"""

    def test_unreduced_rows(self, birds):
        """Test V and F of (f|b) and (!f|p)"""
        system = constraint_sets(birds)

        assert system.row(1).verifying == _family((), (2,), (4,), (2, 4))
        assert system.row(1).falsifying == _family((), (4,))
        assert system.row(2).verifying == _family((1,), (1, 4), (3,))
        assert system.row(2).falsifying == _family((), (3,), (4,))
        assert not system.reduced

    def test_reduced_rows(self, birds):
        """Test V̂ and F̂ of Δ^b"""
        # Execute
        system = reduced_constraints(birds)

        # Assert
        assert system.reduced
        assert [row.verifying for row in system.rows] == [
            _family(()),
            _family((1,)),
            _family((1,)),
            _family(()),
        ]
        assert all(row.falsifying == _family(()) for row in system.rows)

    def test_reduced_system_keeps_solutions(self, birds):
        """Test that V and V̂ accept the same impact vectors of Δ^b"""
        # Setup
        etas = [[1, 2, 2, 1], [1, 1, 2, 1], [0, 1, 1, 1], [2, 3, 3, 1]]

        # Execute
        original = constraint_sets(birds).satisfied_by(birds.labels, etas)
        reduced = reduced_constraints(birds).satisfied_by(birds.labels, etas)

        # Assert
        assert original.tolist() == [True, False, False, True]
        assert reduced.tolist() == original.tolist()

    def test_rule_order_does_not_matter(self, birds):
        """Test that every rule order reaches the same system on Δ^b"""
        system = constraint_sets(birds)
        expected = reduce(system)

        for order in [list(reversed(RULES)), ["R6", "R5", "R4", "R1", "R2", "R3"], ["R3", "R1", "R6", "R2"]]:
            assert reduce(system, order=order).rows == expected.rows

    def test_single_rules(self, birds):
        """Test R1 on V2, then R6 on the mutual singletons of δ2 and δ3"""
        # Setup
        rows = {row.label: (row.verifying, row.falsifying) for row in constraint_sets(birds).rows}

        # Execute
        RULES["R1"](rows)
        after_subsets = rows[2][0]
        RULES["R2"](rows)
        RULES["R6"](rows)

        # Assert
        assert after_subsets == _family((1,), (3,))
        assert rows[2][0] == _family((1,))
        assert rows[3][0] == _family((1,))

    def test_equal_sides(self):
        """Test R4 on a row whose V and F coincide"""
        rows = {1: (_family((2,), (3,)), _family((2,), (3,)))}

        changed = RULES["R4"](rows)

        assert changed
        assert rows[1] == (_family(()), _family(()))

    def test_common_element(self):
        """Test R3 removing a label shared by every set"""
        rows = {1: (_family((2, 3), (2,)), _family((2, 4)))}

        RULES["R3"](rows)

        assert rows[1] == (_family((3,), ()), _family((4,)))

    def test_logs_reduction(self, birds, mock_logfire):
        """Test that reduction runs in a span"""
        reduce(constraint_sets(birds))

        mock_logfire.span.assert_called_once()
        assert mock_logfire.span.call_args.args[0] == "reduce_constraints"


class TestMinimalCore:
    """Tests for CR^+(Δ) and the minimal core vector"""

    def test_cr_plus(self, birds):
        """Test the printed positive constraints of Δ^b"""
        constraints = [str(c) for c in cr_plus(birds)]

        assert constraints == ["η1 > 0", "η2 > η1", "η3 > η1", "η4 > 0"]

    def test_minimal_core_vector(self, birds):
        """Test η^mc of Δ^b"""
        eta = minimal_core_vector(birds)

        assert eta == ImpactVector(labels=(1, 2, 3, 4), impacts=(1, 2, 2, 1))
        assert is_solution(birds, eta)

    @pytest.mark.parametrize("fixture", ["rain", "sun", "kiwi"])
    def test_minimal_core_is_solution(self, request, fixture):
        """Test that η^mc solves CR(Δ) for the example bases"""
        base = request.getfixturevalue(fixture)

        assert is_solution(base, minimal_core_vector(base))

    def test_self_fulfilling_impact_zero(self):
        """Test that a conditional without falsifying worlds gets impact 0"""
        base = BeliefBase.from_pairs(Signature.of("a", "b"), [("a", "a,b"), ("b", "a")])

        assert minimal_core_vector(base).impacts == (0, 1)
        assert str(cr_plus(base)[0]) == "η1 ≥ 0"

    def test_inconsistent(self):
        """Test that inconsistent bases have no c-representation"""
        base = BeliefBase.from_pairs(Signature.of("a"), [("a", "top"), ("!a", "top")])

        with pytest.raises(InconsistentBeliefBase):
            minimal_core_vector(base)

    def test_ccore_infer(self, birds, formula):
        """Test inference with the minimal core c-representation"""
        atoms = "b,p,f,w"

        assert ccore_infer(birds, formula("p,b", atoms), formula("w", atoms))
        assert ccore_infer(birds, formula("p", atoms), formula("!f", atoms))


class TestSolutions:
    """Tests for checking and enumerating solutions of CR(Δ)"""

    @pytest.mark.parametrize("impacts,ranks", list(BIRDS_OCFS.items()))
    def test_induced_ocfs(self, birds, table_rows, impacts, ranks):
        """Test κη for c-representations of Δ^b"""
        kappa = induced_ocf(birds, impacts)

        assert is_solution(birds, impacts)
        assert [kappa[i] for i in table_rows(birds.signature)] == ranks

    def test_non_solution(self, birds):
        """Test vectors violating the constraint of (!f|p)"""
        assert not is_solution(birds, [1, 1, 2, 1])
        assert not is_solution(birds, [0, 2, 2, 1])

    def test_enumerate_within_bound(self, birds):
        """Test all solutions of CR(Δ^b) with impacts up to 2"""
        solutions = [eta.impacts for eta in enumerate_solutions(birds, 2)]

        assert solutions == [(1, 2, 2, 1), (1, 2, 2, 2)]

    def test_enumeration_is_lexicographic(self, birds):
        """Test that solutions come in lexicographic order"""
        solutions = [eta.impacts for eta in enumerate_solutions(birds, 4)]

        assert solutions == sorted(solutions)
        assert all(is_solution(birds, eta) for eta in solutions)

    def test_unsatisfiable_conditional(self):
        """Test that a conditional without verifying worlds has no solution"""
        base = BeliefBase.from_pairs(Signature.of("a"), [("a", "a,!a")])

        assert list(enumerate_solutions(base, 3)) == []


class TestCInference:
    """Tests for skeptical c-inference"""

    def test_accepts(self, birds, formula):
        """Test a query accepted by every c-representation of Δ^b"""
        atoms = "b,p,f,w"

        result = c_infer(birds, formula("p,b", atoms), formula("w", atoms))

        assert result.verdict == Verdict.TRUE
        assert result.bound == result.threshold == 16
        assert result.countermodel is None

    def test_countermodel(self, birds, formula):
        """Test a rejected query with its witnessing c-representation"""
        # Setup
        atoms = "b,p,f,w"

        # Execute
        result = c_infer(birds, formula("b", atoms), formula("p", atoms))

        # Assert
        assert result.verdict == Verdict.FALSE
        assert result.countermodel is not None
        assert is_solution(birds, result.countermodel)

    def test_unknown_below_threshold(self, birds, formula):
        """Test that an accepted query is only Unknown below 2^|Δ|"""
        atoms = "b,p,f,w"

        result = c_infer(birds, formula("p", atoms), formula("b", atoms), bound=2)

        assert result.verdict == Verdict.UNKNOWN
        assert result.bound == 2

    def test_unsatisfiable_antecedent(self, birds, formula):
        """Test that everything follows from an unsatisfiable antecedent"""
        atoms = "b,p,f,w"

        result = c_infer(birds, formula("p,!p", atoms), formula("f", atoms))

        assert result.verdict == Verdict.TRUE

    def test_bound_lowered_to_budget(self, birds, settings_env, mock_logfire):
        """Test that the bound shrinks until the candidate grid fits the budget"""
        # Setup
        settings_env(cinf_max_candidates=100)

        # Execute
        used = effective_bound(birds, 16)

        # Assert
        assert used == 2
        mock_logfire.warning.assert_called_once()


class TestStrategies:
    """Tests for selection strategies"""

    def test_get_strategy(self):
        """Test the built-in strategies by name"""
        assert isinstance(get_strategy("mc"), MinimalCoreStrategy)
        assert isinstance(get_strategy("lexmin"), LexMinStrategy)
        with pytest.raises(UnknownOperator):
            get_strategy("random")

    def test_lexmin(self, birds):
        """Test the lexicographically first solution of Δ^b"""
        assert strategy_vector(birds, LexMinStrategy()).impacts == (1, 2, 2, 1)

    def test_non_solution(self, birds, mock_logfire):
        """Test that a strategy picking a non-solution is reported"""
        with pytest.raises(StrategyReturnedNonSolution):
            strategy_vector(birds, ConstantStrategy([0, 0, 0, 0]))

        mock_logfire.error.assert_called_once()

    def test_strategy_infer(self, birds, formula):
        """Test inference with a fixed c-representation"""
        atoms = "b,p,f,w"
        sigma = ConstantStrategy([4, 5, 6, 7], name="eta3")

        assert strategy_infer(birds, sigma, formula("p", atoms), formula("b", atoms))
        assert not strategy_infer(birds, sigma, formula("b", atoms), formula("p", atoms))

    def test_minimal_core_ip_cspg(self, birds):
        """Test that the minimal core picks the restricted vector on both subbases"""
        s = induce(birds, ["p", "f"], ["w"], ["b"])

        assert check_ip_cspg(MinimalCoreStrategy(), birds, s)

    def test_ip_cspg_needs_generalized_safe(self, birds):
        """Test that the check rejects candidates that do not split the base"""
        s = induce(birds, ["b"], ["p"], ["f", "w"])

        with pytest.raises(NotGeneralizedSafe):
            check_ip_cspg(MinimalCoreStrategy(), birds, s)


class TestSplitCompose:
    """Tests for solutions along generalized safe splittings"""

    def test_split(self, birds):
        """Test splitting η = (4,5,6,7) along ({p,f}, {w}, {b})"""
        # Setup
        s = induce(birds, ["p", "f"], ["w"], ["b"])

        # Execute
        eta1, eta2, eta3 = split_solution(birds, s, [4, 5, 6, 7])

        # Assert
        assert eta1 == ImpactVector(labels=(1, 2, 3), impacts=(4, 5, 6))
        assert eta2 == ImpactVector(labels=(4,), impacts=(7,))
        assert eta3.impacts == ()

    def test_compose(self, birds):
        """Test composing solutions of the two subbases"""
        s = induce(birds, ["p", "f"], ["w"], ["b"])
        parts = (
            ImpactVector(labels=(1, 2, 3), impacts=(1, 2, 2)),
            ImpactVector(labels=(4,), impacts=(3,)),
        )

        eta = solution_split_compose(birds, s, "compose", parts=parts)

        assert eta.impacts == (1, 2, 2, 3)
        assert is_solution(birds, eta)

    def test_solutions_split_into_solutions(self, birds):
        """Test that the parts of every solution solve the subbases"""
        s = induce(birds, ["p", "f"], ["w"], ["b"])
        sub1, sub2 = s.subbase(1), s.subbase(2)

        for eta in enumerate_solutions(birds, 3):
            eta1, eta2, _ = split_solution(birds, s, eta)
            assert is_solution(sub1, eta1)
            assert is_solution(sub2, eta2)

    def test_solutions_compose_into_solutions(self, birds):
        """Test that any two solutions of the subbases compose to a solution"""
        s = induce(birds, ["p", "f"], ["w"], ["b"])
        firsts = list(enumerate_solutions(s.subbase(1), 3))
        seconds = list(enumerate_solutions(s.subbase(2), 3))

        for eta1, eta2 in itertools.product(firsts, seconds):
            assert is_solution(birds, compose_solutions(birds, s, eta1, eta2))

    def test_mismatched_shared_impacts(self, sun):
        """Test that solutions disagreeing on Δ3 cannot be composed"""
        s = induce(sun, ["b", "g"], ["o", "u"], ["s", "r"])
        eta1 = ImpactVector(labels=(1, 2, 3, 4), impacts=(1, 1, 1, 1))
        eta2 = ImpactVector(labels=(1, 2, 5, 6, 7), impacts=(2, 1, 1, 1, 1))

        with pytest.raises(MismatchedDelta3Impacts):
            compose_solutions(sun, s, eta1, eta2)

    def test_match_delta3(self, rain):
        """Test extending a solution of Δ1 by a solution of Δ2 sharing the Δ3 impacts"""
        # Setup
        s = induce(rain, ["b"], ["o", "u"], ["s", "r"])
        eta1 = ImpactVector(labels=s.delta1, impacts=(1, 1, 1))

        # Execute
        match = match_delta3(rain, s, eta1, side=1, bound=2)

        # Assert
        assert match is not None
        eta2, shared = match
        assert shared == ImpactVector(labels=(1, 2), impacts=(1, 1))
        assert eta2 == ImpactVector(labels=(1, 2, 4, 5, 6), impacts=(1, 1, 1, 1, 1))
        assert is_solution(rain, compose_solutions(rain, s, eta1, eta2))

    def test_split_needs_generalized_safe(self, birds):
        """Test that candidates which do not split the base are rejected"""
        s = induce(birds, ["b"], ["p"], ["f", "w"])

        with pytest.raises(NotGeneralizedSafe):
            split_solution(birds, s, [1, 2, 2, 1])
