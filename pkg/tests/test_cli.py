"""
Tests for the condsplit command line.
"""

import json

import jsonschema
import pytest
from click.testing import CliRunner

from condsplit.cli import cli


@pytest.fixture
def runner():
    """Click test runner"""
    return CliRunner()


@pytest.fixture
def kb(fixtures_dir):
    """Path of an example knowledge base by name"""

    def path(name: str) -> str:
        return str(fixtures_dir / f"{name}.cl")

    return path


class TestInfer:
    """Tests for `condsplit infer`"""

    def test_accept(self, runner, kb):
        """Test an accepted query and its exit status"""
        result = runner.invoke(cli, ["infer", "--kb", kb("birds"), "--op", "lex", "--query", "(w | p,b)"])

        assert result.exit_code == 0
        assert result.stdout.strip() == "ACCEPT"

    def test_reject(self, runner, kb):
        """Test a rejected query and its exit status"""
        result = runner.invoke(cli, ["infer", "--kb", kb("birds"), "--op", "systemz", "--query", "(w | p,b)"])

        assert result.exit_code == 1
        assert result.stdout.strip() == "REJECT"

    def test_unknown(self, runner, kb):
        """Test c-inference below the completeness threshold"""
        result = runner.invoke(
            cli, ["infer", "--kb", kb("birds"), "--op", "cinf", "--query", "(b | p)", "--bound", "2"]
        )

        assert result.exit_code == 2
        assert result.stdout.splitlines()[0] == "UNKNOWN"

    def test_json(self, runner, kb, load_schema):
        """Test the JSON answer against the published schema"""
        # Execute
        result = runner.invoke(
            cli, ["infer", "--kb", kb("birds"), "--op", "cinf", "--query", "(p | b)", "--json"]
        )

        # Assert
        assert result.exit_code == 1
        payload = json.loads(result.stdout)
        jsonschema.validate(payload, load_schema("infer.schema.json"))
        assert payload["verdict"] == "REJECT"
        assert len(payload["countermodel"]) == 4

    def test_verbose_trace(self, runner, kb):
        """Test the witness trace of an OCF-based operator"""
        result = runner.invoke(
            cli, ["infer", "--kb", kb("birds"), "--op", "ccore", "--query", "(w | p,b)", "--verbose"]
        )

        assert result.exit_code == 0
        assert "κ(p,b ∧ w) = 1" in result.stdout

    def test_unknown_operator(self, runner, kb):
        """Test that input errors exit with status 3"""
        result = runner.invoke(cli, ["infer", "--kb", kb("birds"), "--op", "systemq", "--query", "(w | b)"])

        assert result.exit_code == 3
        assert "error:" in result.stderr

    def test_unknown_atom_in_query(self, runner, kb):
        """Test a query over atoms outside the signature"""
        result = runner.invoke(cli, ["infer", "--kb", kb("birds"), "--op", "lex", "--query", "(x | b)"])

        assert result.exit_code == 3


class TestSplittings:
    """Tests for `condsplit splittings`"""

    def test_census_header(self, runner, kb):
        """Test the counts line of Δ^rain"""
        result = runner.invoke(cli, ["splittings", "--kb", kb("rain")])

        assert result.exit_code == 0
        lines = result.stdout.splitlines()
        assert lines[0] == "total=37 safe=16 gensafe=33 genuine=5"
        assert len(lines) == 38

    def test_kiwi_has_no_genuine_safe(self, runner, kb):
        """Test filtering Δ^k for genuine safe splittings"""
        result = runner.invoke(
            cli, ["splittings", "--kb", kb("kiwi"), "--only", "genuine", "--require", "safe"]
        )

        assert result.exit_code == 0
        assert result.stdout.splitlines() == ["total=37 safe=5 gensafe=14 genuine=5"]

    def test_jsonl(self, runner, kb, load_schema):
        """Test the JSON lines output"""
        # Execute
        result = runner.invoke(
            cli, ["splittings", "--kb", kb("kiwi"), "--only", "genuine", "--format", "jsonl"]
        )

        # Assert
        lines = result.stdout.splitlines()
        assert json.loads(lines[0]) == {"total": 37, "safe": 5, "gensafe": 14, "genuine": 5}
        schema = load_schema("splitting.schema.json")
        records = [json.loads(line) for line in lines[1:]]
        assert len(records) == 5
        for record in records:
            jsonschema.validate(record, schema)
            assert record["genuine"]


class TestCrep:
    """Tests for `condsplit crep`"""

    def test_core(self, runner, kb):
        """Test the positive constraints and η^mc of Δ^b"""
        result = runner.invoke(cli, ["crep", "core", "--kb", kb("birds")])

        assert result.exit_code == 0
        assert "  η1 > 0" in result.stdout
        assert "  η2 > η1" in result.stdout
        assert "η^mc = (1,2,2,1)" in result.stdout

    def test_core_json(self, runner, kb):
        """Test the JSON form of the minimal core"""
        result = runner.invoke(cli, ["crep", "core", "--kb", kb("birds"), "--json"])

        payload = json.loads(result.stdout)
        assert payload["impacts"] == [1, 2, 2, 1]
        assert payload["ranks"]["signature"] == ["b", "p", "f", "w"]

    def test_solutions(self, runner, kb):
        """Test streaming the solutions within a bound"""
        result = runner.invoke(cli, ["crep", "solutions", "--kb", kb("birds"), "--bound", "2"])

        assert result.stdout.splitlines() == ["(1,2,2,1)", "(1,2,2,2)"]

    def test_solutions_limit(self, runner, kb):
        """Test stopping after a number of solutions"""
        result = runner.invoke(
            cli, ["crep", "solutions", "--kb", kb("birds"), "--bound", "3", "--limit", "1"]
        )

        assert result.stdout.splitlines() == ["(1,2,2,1)"]

    def test_dump(self, runner, kb):
        """Test the V/F table of Δ^b"""
        result = runner.invoke(cli, ["crep", "dump", "--kb", kb("birds")])

        assert result.exit_code == 0
        assert "δ2:" in result.stdout
        assert "V̂={{δ1}}" in result.stdout


class TestPostulates:
    """Tests for `condsplit postulates check`"""

    def test_violation_exit_status(self, runner, kb):
        """Test that a violated postulate exits with 1"""
        result = runner.invoke(
            cli,
            ["postulates", "check", "--kb", kb("birds"), "--op", "systemz", "--postulate", "cindg", "--scope", "safe"],
        )

        assert result.exit_code == 1
        assert "violated" in result.stdout.splitlines()[0]

    def test_satisfied_json(self, runner, kb, load_schema):
        """Test a satisfied check in JSON"""
        result = runner.invoke(
            cli,
            ["postulates", "check", "--kb", kb("birds"), "--op", "ccore", "--postulate", "ditv", "--json"],
        )

        assert result.exit_code == 0
        payload = json.loads(result.stdout)
        jsonschema.validate(payload, load_schema("postulate_report.schema.json"))
        assert payload["status"] == "satisfied-at-scale"


class TestOtherCommands:
    """Tests for kb, operators, report and dot"""

    def test_kb_validate(self, runner, kb):
        """Test the summary of a knowledge base"""
        result = runner.invoke(cli, ["kb", "validate", "--kb", kb("birds")])

        assert result.exit_code == 0
        lines = result.stdout.splitlines()
        assert lines[0] == "birds: 4 conditionals over {b,p,f,w} (lines syntax)"
        assert lines[1] == "Δ^0 = {(f|b), (w|b)}"

    def test_kb_validate_missing_file(self, runner, tmp_path):
        """Test that a missing file is an input error"""
        result = runner.invoke(cli, ["kb", "validate", "--kb", str(tmp_path / "none.cl")])

        assert result.exit_code == 3

    def test_kb_dump(self, runner, kb):
        """Test printing the block format in the line format"""
        result = runner.invoke(cli, ["kb", "dump", "--kb", kb("birds_block")])

        assert result.stdout.splitlines()[2] == "(f | b)"

    def test_operators(self, runner):
        """Test listing the operators"""
        result = runner.invoke(cli, ["operators"])

        assert result.exit_code == 0
        assert "- systemw:" in result.stdout
        assert "- crep:mc:" in result.stdout

    def test_report(self, runner, kb, tmp_path):
        """Test writing the Markdown dossier to a file"""
        output = tmp_path / "birds.md"

        result = runner.invoke(cli, ["report", "--kb", kb("birds"), "--output", str(output)])

        assert result.exit_code == 0
        text = output.read_text(encoding="utf-8")
        assert text.startswith("# birds")
        assert "η^mc = `(1,2,2,1)`" in text

    def test_dot(self, runner, kb):
        """Test the DOT output"""
        result = runner.invoke(cli, ["dot", "--kb", kb("birds")])

        assert result.stdout.startswith('digraph "birds"')

    def test_max_atoms(self, runner, kb, settings_env):
        """Test that --max-atoms caps the signature for the run"""
        settings_env(max_atoms=20)

        result = runner.invoke(cli, ["--max-atoms", "3", "kb", "validate", "--kb", kb("birds")])

        assert result.exit_code == 3
        assert "CONDSPLIT_MAX_ATOMS" in result.stderr
