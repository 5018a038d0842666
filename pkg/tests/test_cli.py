import json

import pytest

from k0dense.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def write(tmp_path):
    def _write(name, payload):
        p = tmp_path / name
        p.write_text(payload if isinstance(payload, str) else json.dumps(payload))
        return str(p)
    return _write


class TestSnf:
    def test_two_by_two(self, capsys, write):
        code, out, _ = run(capsys, "snf", write("m.json", [[2, 4], [6, 8]]))
        assert code == 0
        assert "invariant factors: 2, 4" in out

    def test_identity_json(self, capsys, write):
        code, out, _ = run(capsys, "--json", "snf", write("m.json", [[1, 0], [0, 1]]))
        assert code == 0
        assert json.loads(out)["invariant_factors"] == [1, 1]

    @pytest.mark.parametrize("payload", [[[1, 2], [3]], "{not json", [[1.5]], "[]"])
    def test_malformed(self, capsys, write, payload):
        code, _, err = run(capsys, "snf", write("m.json", payload))
        assert code == 2
        assert err.startswith("error:")

    def test_missing_file(self, capsys):
        assert run(capsys, "snf", "/nonexistent/m.json")[0] == 2


class TestGroup:
    def test_list(self, capsys, write):
        f = write("g.json", {"ambient_rank": 2, "relations": [[2, 0], [0, 2]], "generators": []})
        code, out, _ = run(capsys, "group", f, "--list")
        assert code == 0
        assert "5 subgroups" in out

    def test_infinite(self, capsys, write):
        f = write("g.json", {"ambient_rank": 1, "relations": []})
        code, out, _ = run(capsys, "--json", "group", f, "--list")
        data = json.loads(out)
        assert data["free_rank"] == 1 and data["subgroups"] == "infinitely many"


class TestClassify:
    def test_a1(self, capsys):
        code, out, _ = run(capsys, "classify", "examples/a1_cm.json")
        assert code == 0
        assert "2 dense resolving subcategories" in out

    def test_variants_identical(self, capsys):
        a = run(capsys, "classify", "examples/a1_cm.json", "--variant", "resolving")
        b = run(capsys, "classify", "examples/a1_cm.json", "--variant", "coresolving")
        assert a == b

    def test_free_quotient(self, capsys, write):
        f = write("p.json", {"indecomposables": ["A", "B"], "ses": [], "generators": []})
        code, out, _ = run(capsys, "classify", f)
        assert code == 0
        assert "status: infinitely many" in out

    def test_with_bound(self, capsys):
        code, out, _ = run(capsys, "classify", "a1_cm.json", "--bound", "4")
        assert code == 0
        assert "verification at bound 4: PASS" in out

    def test_bound_beyond_completeness(self, capsys):
        code, _, err = run(capsys, "classify", "a1_cm.json", "--bound", "5")
        assert code == 2 and "exhaustive" in err

    def test_bad_presentation(self, capsys, write):
        f = write("p.json", {"indecomposables": ["A"], "generators": [{"Q": 1}]})
        assert run(capsys, "classify", f)[0] == 2

    def test_deterministic(self, capsys):
        assert run(capsys, "--json", "classify", "a1_cm.json") == run(capsys, "--json", "classify", "a1_cm.json")


class TestVerify:
    def test_pass(self, capsys):
        code, out, _ = run(capsys, "--json", "verify", "examples/a1_cm.json", "--bound", "4")
        assert code == 0 and json.loads(out)["passed"]

    def test_failure_exit_code(self, capsys, write):
        # [B] has order 3 modulo [A]; at bound 2 the object B has no
        # complement inside the box for the index-3 class
        P = {"indecomposables": ["A", "B"], "generators": [{"A": 1}],
             "ses": [{"sub": {"B": 2}, "mid": {"A": 1}, "ext": {"B": 1}}],
             "ses_complete_bound": 2, "include_split": True}
        code, out, _ = run(capsys, "verify", write("p.json", P), "--bound", "2")
        assert code == 1
        assert "[FAIL] density" in out


class TestCartan:
    def test_kx2(self, capsys):
        code, out, _ = run(capsys, "cartan", "examples/kx2.json")
        assert code == 0
        assert "count: 2" in out and "count by subgroup enumeration: 2" in out

    def test_a2(self, capsys):
        code, out, _ = run(capsys, "--json", "cartan", "examples/a2_quiver.json")
        assert json.loads(out)["count"] == 1

    def test_free_loop(self, capsys):
        code, _, err = run(capsys, "cartan", "free_loop.json")
        assert code == 3
        assert "cycle x" in err

    def test_singular(self, capsys, write):
        f = write("q.json", {"vertices": ["1", "2"],
                             "arrows": [{"name": "a", "from": "1", "to": "2"},
                                        {"name": "b", "from": "2", "to": "1"}],
                             "relations": [["a", "b"], ["b", "a"]]})
        code, out, _ = run(capsys, "cartan", f)
        assert code == 0 and "count: INFINITE" in out

    def test_non_monomial(self, capsys, write):
        f = write("q.json", {"vertices": ["1"], "arrows": [{"name": "a", "from": "1", "to": "1"}],
                             "relations": [{"a": 1}]})
        assert run(capsys, "cartan", f)[0] == 2


class TestSingularity:
    def test_e8(self, capsys):
        code, out, _ = run(capsys, "--json", "singularity", "--type", "e8")
        row = json.loads(out)["rows"][0]
        assert (row["k0"], row["count"]) == ("Z", 1)

    def test_a5(self, capsys):
        code, out, _ = run(capsys, "--json", "singularity", "--type", "a_n", "--n", "5")
        assert json.loads(out)["rows"][0]["count"] == 4

    def test_d6(self, capsys):
        code, out, _ = run(capsys, "--json", "singularity", "--type", "d_n", "--n", "6")
        row = json.loads(out)["rows"][0]
        assert (row["k0"], row["count"]) == ("Z + Z/2 + Z/2", 5)

    @pytest.mark.parametrize("argv", [
        ["--type", "a_n", "--n", "0"], ["--type", "d_n", "--n", "3"], ["--type", "bogus"],
        ["--type", "e6", "--n", "2"], [],
    ])
    def test_out_of_range(self, capsys, argv):
        assert run(capsys, "singularity", *argv)[0] == 2


class TestQuotientClassify:
    def test_a_n(self, capsys, write):
        f = write("g.json", {"ambient_rank": 2, "relations": [[0, 12]]})
        code, out, _ = run(capsys, "quotient-classify", f, "--designated", "1,0")
        assert code == 0 and "6 subgroups" in out

    def test_whole_group(self, capsys, write):
        f = write("g.json", {"ambient_rank": 2, "relations": [[0, 12]]})
        code, out, _ = run(capsys, "quotient-classify", f, "--designated", "1,0", "--designated", "0,1")
        assert "1 subgroups" in out

    def test_d_even(self, capsys, write):
        f = write("g.json", {"ambient_rank": 3, "relations": [[0, 2, 0], [0, 0, 2]],
                             "generators": [[1, 0, 0]]})
        code, out, _ = run(capsys, "--json", "quotient-classify", f)
        assert len(json.loads(out)["subgroups"]) == 5

    def test_infinite(self, capsys, write):
        f = write("g.json", {"ambient_rank": 2, "relations": []})
        code, out, _ = run(capsys, "quotient-classify", f, "--designated", "1,0")
        assert code == 0 and "infinitely many" in out

    def test_bad_designated(self, capsys, write):
        f = write("g.json", {"ambient_rank": 2, "relations": []})
        assert run(capsys, "quotient-classify", f, "--designated", "1,x")[0] == 2
        assert run(capsys, "quotient-classify", f, "--designated", "1,0,0")[0] == 2


def test_no_command(capsys):
    assert run(capsys)[0] == 2
