"""End-to-end runs of the command line surface, in process."""

import json

import pytest

from raagout.cli import main
from raagout.graphs import DefiningGraph


P3 = {"vertices": ["a", "b", "c"], "edges": [["a", "b"], ["b", "c"]]}


@pytest.fixture
def p3(tmp_path):
	path = tmp_path / "p3.json"
	path.write_text(json.dumps(P3))
	return str(path)


def write_json(tmp_path, name, obj):
	path = tmp_path / name
	path.write_text(json.dumps(obj))
	return str(path)


def run(capsys, *argv):
	code = main(list(argv))
	out = capsys.readouterr()
	return code, out.out, out.err


def test_gens_p3(capsys, p3):
	code, out, _ = run(capsys, "gens", "--graph", p3)
	assert code == 0
	lines = out.splitlines()
	assert len(lines) == 7
	assert "trv a^c" in lines and "trv c^a" in lines
	assert "trv b^a" not in lines


def test_gens_json(capsys, p3):
	code, out, _ = run(capsys, "gens", "--graph", p3, "--format", "json")
	assert code == 0
	assert len(json.loads(out)) == 7


def test_info_text(capsys, p3):
	code, out, _ = run(capsys, "info", "--graph", p3)
	assert code == 0
	assert "3 vertices, 2 edges, connected" in out


def test_invariant(capsys, p3):
	code, out, _ = run(capsys, "invariant", "--graph", p3, "--target", "b")
	assert (code, out.strip()) == (0, "invariant")
	code, out, _ = run(capsys, "invariant", "--graph", p3, "--target", "a,b")
	assert (code, out.strip()) == (0, "not invariant")


def test_saturate_p3_empty(capsys, tmp_path, p3):
	periph = write_json(tmp_path, "empty.json", {"G": [], "H": []})
	code, out, _ = run(capsys, "saturate", "--graph", p3, "--periph", periph)
	assert code == 0
	assert out.splitlines() == ["G <b>"]


def test_vcd_diamond_script(capsys, tmp_path):
	from raagout.families import diamond_chain, diamond_script

	graph = write_json(tmp_path, "d3.json", diamond_chain(3).to_json_obj())
	script = write_json(tmp_path, "d3.script.json", diamond_script(3))
	code, out, _ = run(capsys, "vcd", "--graph", graph, "--script", script)
	assert code == 0
	lines = out.splitlines()
	assert lines[0] == "upper: 11"
	assert lines[1] == "lower: 11"


def test_vcd_json_round_trip_and_determinism(capsys, tmp_path):
	from raagout.families import diamond_chain, diamond_script

	graph = write_json(tmp_path, "d2.json", diamond_chain(2).to_json_obj())
	script = write_json(tmp_path, "d2.script.json", diamond_script(2))
	runs = []
	for _ in range(2):
		code, out, _ = run(capsys, "vcd", "--graph", graph, "--script", script,
			"--format", "json")
		assert code == 0
		runs.append(out)
	assert runs[0] == runs[1]
	obj = json.loads(runs[0])
	assert obj["upper"] == 7 and obj["lower"] == 7


def test_vcd_gens_file(capsys, tmp_path):
	from raagout.families import four_path, four_path_generators, four_path_script

	g = four_path(1, 1, 1, 1)
	graph = write_json(tmp_path, "fp.json", g.to_json_obj())
	script = write_json(tmp_path, "fp.script.json", four_path_script(1, 1, 1, 1))
	gens = write_json(
		tmp_path, "fp.gens.json", [str(x) for x in four_path_generators(g, 1, 1, 1, 1)]
	)
	code, out, _ = run(capsys, "vcd", "--graph", graph, "--script", script,
		"--gens", gens, "--nilpotent")
	assert code == 0
	assert out.splitlines()[:2] == ["upper: 4", "lower: 4"]


def test_decompose_dot(capsys, p3):
	code, out, _ = run(capsys, "decompose", "--graph", p3, "--format", "dot")
	assert code == 0
	assert out.startswith("digraph decomposition {")


def test_decompose_json_has_leaves(capsys, p3):
	code, out, _ = run(capsys, "decompose", "--graph", p3, "--format", "json")
	assert code == 0
	json.loads(out)


def test_restrict_json_round_trip(capsys, p3):
	code, out, _ = run(capsys, "restrict", "--graph", p3, "--target", "b",
		"--format", "json")
	assert code == 0
	obj = json.loads(out)
	img = DefiningGraph.from_json_obj(obj["image"]["graph"])
	assert img.to_json_obj() == obj["image"]["graph"]


def test_periphery_adds_target(capsys, p3):
	code, out, _ = run(capsys, "periphery", "--graph", p3, "--target", "b")
	assert code == 0


def test_cone_graph_round_trip(capsys, p3):
	code, out, _ = run(capsys, "cone-graph", "--graph", p3, "--format", "json")
	assert code == 0
	obj = json.loads(out)
	g = DefiningGraph.from_json_obj(obj)
	assert g.to_json_obj() == obj
	assert "@*" in g.vertices


def test_apply_symmetry_product(capsys, p3):
	# inv a, trv^-1, inv a, inv c, trv c^a, trv^-1 composes to the a-c swap
	gens = []
	for text in ("inv a", "trv a^c^-1", "inv a", "inv c", "trv c^a", "trv a^c^-1"):
		gens += ["--gen", text]
	images = {}
	for w in "abc":
		code, out, _ = run(capsys, "apply", "--graph", p3, *gens, "--word", w)
		assert code == 0
		images[w] = out.strip()
	assert images == {"a": "c", "b": "b", "c": "a"}


def test_check_exact_clean(capsys, p3):
	code, out, _ = run(capsys, "check-exact", "--graph", p3, "--target", "b")
	assert code == 0
	assert "0 failures" in out
	assert "FAIL" not in out


def test_exit_code_domain_errors(capsys, tmp_path, p3):
	code, _, err = run(capsys, "gens", "--graph", str(tmp_path / "missing.json"))
	assert code == 1 and "error" in err
	code, _, err = run(capsys, "invariant", "--graph", p3, "--target", "zz")
	assert code == 1
	bad = tmp_path / "bad.json"
	bad.write_text("{nope")
	code, _, err = run(capsys, "gens", "--graph", str(bad))
	assert code == 1 and "not JSON" in err


def test_exit_code_usage_error_is_1(capsys, p3):
	with pytest.raises(SystemExit) as exc:
		main(["gens", "--graph", p3, "--bogus"])
	capsys.readouterr()
	assert exc.value.code == 1


def test_exit_code_capability_limit(capsys, tmp_path):
	from raagout.families import diamond_chain

	graph = write_json(tmp_path, "d3.json", diamond_chain(3).to_json_obj())
	periph = write_json(tmp_path, "empty.json", {"G": [], "H": []})
	code, _, err = run(capsys, "saturate", "--graph", graph, "--periph", periph,
		"--cap", "2")
	assert code == 2
	assert "capability limit" in err


def test_no_command_prints_help(capsys):
	code, out, _ = run(capsys)
	assert code == 1
	assert "command" in out
