"""
Tests for the inference operators and their registry.
"""

import numpy as np
import pytest

from condsplit.conditionals import BeliefBase
from condsplit.crep import Verdict, c_infer
from condsplit.errors import InconsistentBeliefBase, UnknownOperator
from condsplit.kb import load_kb
from condsplit.logic import Signature, models
from condsplit.operators import (
    CInference,
    Comparison,
    get_all_operators,
    get_operator,
    lex_compare,
    lex_infer,
    lex_ranks,
    preference_matrix,
    system_z_infer,
    system_z_ocf,
    w_dot,
    w_infer,
    w_preferred,
    zw_infer,
)

# κ^z and dense lex ranks of Δ^b in truth-table order
BIRDS_Z = [2, 2, 1, 1, 0, 1, 1, 1, 2, 2, 2, 2, 0, 0, 0, 0]
BIRDS_LEX = [3, 4, 1, 2, 0, 1, 1, 2, 5, 5, 3, 3, 0, 0, 0, 0]

OPERATOR_NAMES = ["systemz", "lex", "systemw", "zw", "ccore", "cinf", "crep:mc", "crep:lexmin"]


def _world(base, **values):
    return base.signature.world_from_literals(values)


class TestRegistry:
    """Tests for OperatorRegistry"""

    def test_all_operators_registered(self):
        """Test the names of the built-in operators"""
        assert list(get_all_operators()) == OPERATOR_NAMES

    def test_unknown_operator(self):
        """Test that unknown names raise UnknownOperator"""
        with pytest.raises(UnknownOperator):
            get_operator("systemq")

    def test_unknown_strategy(self):
        """Test that crep:<name> needs a known strategy"""
        with pytest.raises(UnknownOperator):
            get_operator("crep:random")

    def test_reasoner_cached_per_base(self, birds):
        """Test that each operator builds its reasoner once per base"""
        operator = get_operator("systemz")

        assert operator.reasoner(birds) is operator.reasoner(birds)


class TestSystemZ:
    """Tests for System Z"""

    def test_ranks(self, birds, table_rows):
        """Test κ^z of Δ^b"""
        kappa = system_z_ocf(birds)

        assert [kappa[i] for i in table_rows(birds.signature)] == BIRDS_Z

    def test_drowning(self, birds, formula):
        """Test that System Z does not let penguins inherit wings"""
        atoms = "b,p,f,w"

        assert not system_z_infer(birds, formula("p,b", atoms), formula("w", atoms))
        assert system_z_infer(birds, formula("p", atoms), formula("!f", atoms))
        assert system_z_infer(birds, formula("b", atoms), formula("w", atoms))

    def test_inconsistent_base(self):
        """Test that System Z needs a tolerance partition"""
        base = BeliefBase.from_pairs(Signature.of("a"), [("a", "top"), ("!a", "top")])

        with pytest.raises(InconsistentBeliefBase):
            system_z_ocf(base)


class TestLex:
    """Tests for lexicographic inference"""

    def test_ranks(self, birds, table_rows):
        """Test the dense ranks of the lex preorder on Δ^b"""
        kappa = lex_ranks(birds)

        assert [kappa[i] for i in table_rows(birds.signature)] == BIRDS_LEX

    def test_compare(self, birds):
        """Test the highest level deciding the comparison"""
        flying_penguin = _world(birds, b=True, p=True, f=True, w=True)
        walking_penguin = _world(birds, b=True, p=True, f=False, w=False)

        assert lex_compare(birds, walking_penguin, flying_penguin) == Comparison.LESS
        assert lex_compare(birds, flying_penguin, walking_penguin) == Comparison.GREATER
        assert lex_compare(birds, flying_penguin, flying_penguin) == Comparison.EQUAL

    def test_penguins_have_wings(self, birds, formula):
        """Test that lex inference lets penguins inherit wings"""
        atoms = "b,p,f,w"

        assert lex_infer(birds, formula("p,b", atoms), formula("w", atoms))


class TestSystemW:
    """Tests for System W"""

    def test_preferred(self, birds):
        """Test <^w between worlds falsifying {δ1} and {δ1, δ4}"""
        better = _world(birds, b=True, p=True, f=False, w=True)
        worse = _world(birds, b=True, p=True, f=False, w=False)

        assert w_preferred(birds, better, worse)
        assert not w_preferred(birds, worse, better)

    def test_strict_order(self, birds):
        """Test that <^w is irreflexive and asymmetric"""
        matrix = preference_matrix(birds)

        assert not matrix.diagonal().any()
        assert not (matrix & matrix.T).any()

    def test_penguins_have_wings(self, birds, formula):
        """Test that System W lets penguins inherit wings"""
        atoms = "b,p,f,w"

        assert w_infer(birds, formula("p,b", atoms), formula("w", atoms))
        assert not w_infer(birds, formula("p", atoms), formula("f", atoms))

    def test_batched_queries_agree(self, birds, formula):
        """Test that batched queries give the same answers as single ones"""
        # Setup
        atoms = "b,p,f,w"
        queries = [("p,b", "w"), ("p", "f"), ("b", "f"), ("top", "!p"), ("p,!b", "bot")]
        a = np.array([models(formula(x, atoms), birds.signature).mask for x, _ in queries])
        b = np.array([models(formula(y, atoms), birds.signature).mask for _, y in queries])
        reasoner = get_operator("systemw").reasoner(birds)

        # Execute
        batched = reasoner.entails_many(a, b)

        # Assert
        assert batched.tolist() == [reasoner.entails_masks(x, y) for x, y in zip(a, b)]

    def test_dot(self, birds):
        """Test the Graphviz rendering of <^w"""
        text = w_dot(birds)

        assert text.startswith('digraph "birds" {')
        assert "rankdir=BT;" in text
        assert text.count("[label=") == 16


class TestZW:
    """Tests for C^zw"""

    def test_birds_uses_system_w(self, birds, formula, mock_logfire):
        """Test that Δ^b, with a genuine safe splitting, is answered by System W"""
        # Setup
        atoms = "b,p,f,w"
        operator = get_operator("zw")

        # Execute
        accepted = zw_infer(birds, formula("p,b", atoms), formula("w", atoms))

        # Assert
        assert accepted
        assert operator.query(birds, formula("p,b", atoms), formula("w", atoms))

    def test_kiwi_uses_system_z(self, kiwi, formula):
        """Test that Δ^k, without a genuine safe splitting, is answered by System Z"""
        atoms = "b,p,f,w,k"

        assert zw_infer(kiwi, formula("b,f", atoms), formula("w", atoms))
        assert not zw_infer(kiwi, formula("p,b,f", atoms), formula("w", atoms))
        assert w_infer(kiwi, formula("p,b,f", atoms), formula("w", atoms))

    def test_logs_delegate(self, fixtures_dir, mock_logfire):
        """Test that building the reasoner logs which system answers"""
        # Setup
        sun = load_kb(fixtures_dir / "sun.cl").base

        # Execute
        get_operator("zw").reasoner(sun)

        # Assert
        resolved = [
            call for call in mock_logfire.info.call_args_list if call.args[0] == "C^zw resolved"
        ]
        assert len(resolved) == 1
        assert resolved[0].kwargs["delegate"] == "systemw"


class TestCReprOperators:
    """Tests for operators over c-representations"""

    def test_ccore(self, birds, formula):
        """Test the minimal core c-representation of Δ^b"""
        atoms = "b,p,f,w"
        operator = get_operator("ccore")

        assert operator.query(birds, formula("p,b", atoms), formula("w", atoms))
        assert not operator.query(birds, formula("b", atoms), formula("p", atoms))

    def test_strategy_operators_agree_on_birds(self, birds, formula):
        """Test that the lexmin and minimal core strategies pick the same vector on Δ^b"""
        atoms = "b,p,f,w"
        a, b = formula("p", atoms), formula("!f", atoms)

        assert get_operator("crep:mc").query(birds, a, b)
        assert get_operator("crep:lexmin").query(birds, a, b)

    def test_c_inference(self, birds, formula):
        """Test skeptical c-inference on Δ^b"""
        # Setup
        atoms = "b,p,f,w"
        reasoner = get_operator("cinf").reasoner(birds)

        # Execute & Assert
        assert reasoner.infer(formula("p,b", atoms), formula("w", atoms))
        assert reasoner.infer(formula("p", atoms), formula("b", atoms))
        assert not reasoner.infer(formula("b", atoms), formula("p", atoms))
        assert reasoner.countermodel(formula("b", atoms), formula("p", atoms)) is not None
        assert reasoner.solution_count > 0

    def test_c_inference_with_bound(self, birds, formula):
        """Test a c-inference operator with an explicit impact bound"""
        atoms = "b,p,f,w"
        reasoner = CInference(bound=2).reasoner(birds)

        assert reasoner.bound == 2
        assert reasoner.solution_count == 2
        assert "2 c-representations with impacts ≤ 2" in reasoner.explain(
            formula("p", atoms), formula("b", atoms)
        )[0]

    def test_c_inference_with_lowered_bound(self, birds, formula, settings_env):
        """Test that a bound lowered by the candidate budget leaves unproven queries unaccepted"""
        # Setup
        settings_env(cinf_max_candidates=16)
        atoms = "b,p,f,w"
        a, b = formula("p", atoms), formula("b", atoms)

        # Execute
        reasoner = get_operator("cinf").reasoner(birds)
        result = c_infer(birds, a, b)

        # Assert
        assert result.verdict == Verdict.UNKNOWN
        assert reasoner.bound == result.bound == 1
        assert not reasoner.complete
        assert not reasoner.infer(a, b)
        assert reasoner.infer(formula("bot", atoms), b)
        assert "incomplete" in reasoner.explain(a, b)[0]

    def test_bounded_relation(self, birds, formula, settings_env):
        """Test that the bounded relation accepts whatever no solution within the bound refutes"""
        settings_env(cinf_max_candidates=16)
        atoms = "b,p,f,w"

        reasoner = get_operator("cinf").bounded(1).reasoner(birds)

        assert reasoner.within_bound
        assert reasoner.solution_count == 0
        assert reasoner.infer(formula("p", atoms), formula("b", atoms))

    @pytest.mark.parametrize("name", OPERATOR_NAMES)
    def test_direct_inference(self, birds, name):
        """Test that every operator accepts the conditionals of Δ^b"""
        reasoner = get_operator(name).reasoner(birds)

        for conditional in birds.conditionals:
            assert reasoner.infer(conditional.antecedent, conditional.consequent)
