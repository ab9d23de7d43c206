import json
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest
from hypothesis import given
from hypothesis import strategies as st

from idemcodes.cli import RunConfig, canonical_spec, config_from_args, main, parse_field_spec, parse_group_spec, run
from idemcodes.errors import BadParameters, ParseError
from idemcodes.groups import dump_cayley, group_metacyclic

SCHEMA = json.loads((resources.files("idemcodes") / "data" / "report.schema.json").read_text())


def run_json(command, group, field, **kw):
    kw.setdefault("timing", False)
    status, out = run(RunConfig(command, group, field, output="json", **kw))
    rep = json.loads(out)
    jsonschema.validate(rep, SCHEMA)
    return status, rep


class TestGroupSpec:
    def test_examples(self):
        assert parse_group_spec("metacyclic(9,3,4)").n == 27
        assert parse_group_spec("direct(metacyclic(7,3,4),cyclic(5))").n == 105
        assert parse_group_spec("cyclic(1)").n == 1
        assert parse_group_spec("cayley(q8.cayley)").n == 8

    def test_canonical_round_trip(self):
        text = " direct( metacyclic(7, 3, 4) ,cyclic( 5 ) ) "
        canon = canonical_spec(text)
        assert canon == "direct(metacyclic(7,3,4),cyclic(5))"
        assert canonical_spec(canon) == canon

    @pytest.mark.parametrize(
        "text,pos",
        [("cyclc(3)", 0), ("cyclic(x)", 7), ("cyclic(3", 8), ("metacyclic(9,3)", 14), ("cyclic(3) extra", 10), ("", 0)],
    )
    def test_errors_carry_position(self, text, pos):
        with pytest.raises(ParseError) as info:
            parse_group_spec(text)
        assert info.value.pos == pos

    def test_bad_parameters(self):
        with pytest.raises(BadParameters, match="position 7"):
            parse_group_spec("direct(metacyclic(7,3,3),cyclic(2))")
        with pytest.raises(BadParameters):
            parse_group_spec("cayley(/nonexistent/table.txt)")

    def test_cayley_file(self, tmp_path):
        path = tmp_path / "f20.txt"
        path.write_text(dump_cayley(group_metacyclic(5, 4, 2)))
        G = parse_group_spec(f"cayley({path})")
        assert G.n == 20 and G.name == f"cayley({path})"

    @given(st.recursive(
        st.one_of(
            st.integers(1, 5).map(lambda n: f"cyclic({n})"),
            st.sampled_from(["metacyclic(3,2,2)", "metacyclic(5,2,4)"]),
        ),
        lambda inner: st.tuples(inner, inner).map(lambda ab: f"direct({ab[0]},{ab[1]})"),
        max_leaves=3,
    ))
    def test_round_trip_property(self, spec):
        G = parse_group_spec(spec)
        spaced = spec.replace(",", " , ").replace("(", "( ")
        H = parse_group_spec(spaced)
        assert G.name == H.name == spec
        assert (G.table == H.table).all()


class TestFieldSpec:
    @pytest.mark.parametrize("text,p,k", [("gf(2)", 2, 1), ("gf(2^2)", 2, 2), ("GF(4)", 2, 2), ("gf(3^2)", 3, 2), ("gf( 5 )", 5, 1)])
    def test_parse(self, text, p, k):
        F = parse_field_spec(text)
        assert (F.p, F.k) == (p, k)

    @pytest.mark.parametrize("text", ["gf(6)", "gf(1)", "gf(2^0)"])
    def test_not_prime_power(self, text):
        with pytest.raises(BadParameters):
            parse_field_spec(text)

    def test_syntax(self):
        with pytest.raises(ParseError):
            parse_field_spec("F_2")


class TestRun:
    def test_ssp(self):
        status, rep = run_json("ssp", "metacyclic(11,5,3)", "gf(2)")
        assert status == 0 and rep["status"] == "ok"
        assert {"H": list(range(11)), "K": [0]}.items() <= next(p for p in rep["pairs"] if p["K"] == [0]).items()

    def test_ssp_text(self):
        status, out = run(RunConfig("ssp", "metacyclic(11,5,3)", "gf(2)"))
        assert status == 0
        assert any(line.startswith(f"H={','.join(map(str, range(11)))} K=0 [H:K]=11") for line in out.splitlines())

    def test_wedderburn(self):
        status, rep = run_json("wedderburn", "cyclic(3)", "gf(2)")
        assert status == 0 and rep["complete"]
        assert sorted((c["matrix_size"], c["field_order"]) for c in rep["components"]) == [(1, 2), (1, 4)]

    def test_codes_frobenius(self):
        status, rep = run_json("codes", "metacyclic(5,4,2)", "gf(3)")
        assert status == 0
        assert any(c["k"] == 4 and c["d"] == 12 for comp in rep["components"] for c in comp["codes"])

    def test_text_and_json_agree(self):
        _, rep = run_json("search", "metacyclic(7,3,2)", "gf(2)")
        _, text = run(RunConfig("search", "metacyclic(7,3,2)", "gf(2)", timing=False))
        for entry in rep["best"]:
            assert f"k={entry['k']} d={entry['d']}" in text

    def test_idempotents_dump(self):
        status, rep = run_json("idempotents", "cayley(q8.cayley)", "gf(3)")
        assert status == 0
        big = [c for c in rep["components"] if c["matrix_size"] == 2]
        assert big[0]["construction"] == "nilpotent" and len(big[0]["idempotents"]) == 2

    def test_dump_in_codes(self):
        _, rep = run_json("codes", "metacyclic(7,3,2)", "gf(2)", dump_idempotents=True)
        assert all("idempotents" in c for c in rep["components"] if not c.get("skipped"))

    def test_characteristic_error(self):
        status, rep = run_json("codes", "cyclic(6)", "gf(2)")
        assert status == 1 and rep["status"] == "error"
        assert rep["error"]["code"] == "characteristic_divides_order"

    def test_parse_error_status(self):
        status, rep = run_json("ssp", "cyclic(", "gf(2)")
        assert status == 1 and rep["error"]["code"] == "parse_error"

    def test_unsupported_only(self, monkeypatch):
        # every real group has the supported component G/G, so force the skip path
        import idemcodes.codes as codes_mod

        monkeypatch.setattr(codes_mod, "_primsets", lambda *a: ([], "forced"))
        status, rep = run_json("codes", "metacyclic(7,3,2)", "gf(2)")
        assert status == 2 and rep["status"] == "unsupported"
        assert all(c["skipped"] == "forced" for c in rep["components"])

    def test_determinism(self):
        a = run(RunConfig("search", "metacyclic(5,4,2)", "gf(3)", output="json", timing=False))
        b = run(RunConfig("search", "metacyclic(5,4,2)", "gf(3)", output="json", timing=False))
        assert a == b

    def test_export(self, tmp_path):
        status, rep = run_json("codes", "metacyclic(7,3,2)", "gf(2)", export_path=str(tmp_path / "out"))
        files = sorted((tmp_path / "out").iterdir())
        assert files
        head = files[0].read_text().splitlines()[0].split()
        assert head[0] == "21" and head[2] == "2"

    def test_threads_do_not_change_results(self):
        a = run(RunConfig("search", "metacyclic(11,5,3)", "gf(2)", output="json", timing=False, threads=1))
        b = run(RunConfig("search", "metacyclic(11,5,3)", "gf(2)", output="json", timing=False, threads=4))
        assert a == b


class TestMain:
    def test_env_overrides(self, monkeypatch, capsys):
        monkeypatch.setenv("IDEMCODES_GROUP", "metacyclic(7,3,2)")
        monkeypatch.setenv("IDEMCODES_FIELD", "gf(2)")
        monkeypatch.setenv("IDEMCODES_OUTPUT", "json")
        monkeypatch.setenv("IDEMCODES_NO_TIMING", "1")
        assert main(["search"]) == 0
        rep = json.loads(capsys.readouterr().out)
        assert rep["group"] == "metacyclic(7,3,2)" and "timing" not in rep

    def test_flag_beats_env(self, monkeypatch):
        monkeypatch.setenv("IDEMCODES_BUDGET", "100")
        assert config_from_args(["ssp", "--group", "cyclic(3)", "--field", "gf(2)"]).budget == 100
        assert config_from_args(["ssp", "--group", "cyclic(3)", "--field", "gf(2)", "--budget", "7"]).budget == 7

    def test_normal_elements_all(self):
        cfg = config_from_args(["codes", "--group", "cyclic(3)", "--field", "gf(2)", "--normal-elements", "all"])
        assert cfg.normal_elements is None

    def test_usage_errors(self, capsys):
        assert main(["ssp", "--group", "cyclic(3)"]) == 1
        assert main(["ssp", "--group", "cyclic(3)", "--field", "gf(2)", "--bogus"]) == 1
        assert main(["frobnicate", "--group", "cyclic(3)", "--field", "gf(2)"]) == 1
        assert "error [bad_parameters]" in capsys.readouterr().err

    def test_console_script(self):
        proc = subprocess.run(
            [sys.executable, "-m", "idemcodes.cli", "search", "--group", "metacyclic(7,3,2)", "--field", "gf(2)", "--output", "json", "--no-timing"],
            capture_output=True, text=True, check=False,
        )
        assert proc.returncode == 0
        rep = json.loads(proc.stdout)
        jsonschema.validate(rep, SCHEMA)
        assert {"k": 3, "d": 12} in rep["best"]
