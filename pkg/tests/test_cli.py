import json
import os
from fractions import Fraction

import jsonschema
import pytest

from colorcount import cli
from colorcount.exact import count_colorings
from colorcount.formats import GraphFile, build_instance, load_instance, parse_graph, parse_lists
from colorcount.generators import petersen
from colorcount.instance import Instance

SCHEMA = json.loads(cli.SCHEMA_PATH.read_text())
THREADS = str(os.cpu_count() or 1)


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def graph_file(tmp_path, n, edges, name="g.txt"):
    return write(tmp_path, name, GraphFile(n, tuple(edges)).to_text())


def run(capsys, argv):
    code = cli.main(argv)
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, argv):
    code, out = run(capsys, [*argv, "--json"])
    rep = json.loads(out)
    jsonschema.validate(rep, SCHEMA)
    return code, rep


K4 = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
C5 = [(k, (k + 1) % 5) for k in range(5)]


def test_count_k4_rational(tmp_path, capsys):
    code, rep = run_json(capsys, ["count", graph_file(tmp_path, 4, K4), "--depth", "10", "--backend", "rational"])
    assert code == 0
    assert rep["result"]["count_exact"] == "24"
    assert len(rep["factors"]) == 4
    assert rep["input_digest"] and rep["config"]["depth"] == 10


def test_count_c5_float(tmp_path, capsys):
    code, rep = run_json(capsys, ["count", graph_file(tmp_path, 5, C5), "--depth", "10"])
    assert code == 0
    assert rep["result"]["count"] == pytest.approx(240, rel=1e-9)


def test_count_petersen_matches_oracle(tmp_path, capsys):
    inst = Instance.build(10, petersen())
    truth = count_colorings(inst).value
    assert truth == 12960
    path = graph_file(tmp_path, 10, petersen())
    code, rep = run_json(capsys, ["count", path, "--depth", "12", "--backend", "rational"])
    assert code == 0 and rep["result"]["count_exact"] == str(truth)


def test_count_default_depth_warns(tmp_path, capsys):
    code = cli.main(["count", graph_file(tmp_path, 4, K4)])
    cap = capsys.readouterr()
    assert code == 0 and "depth 8" in cap.err
    assert cap.out.startswith("count:")


def test_count_epsilon_reports_depth(tmp_path, capsys):
    path = graph_file(tmp_path, 1, [])
    code, rep = run_json(capsys, ["count", path, "--epsilon", "0.5", "--backend", "rational"])
    assert code == 0 and rep["result"]["count_exact"] == "4"
    assert rep["config"]["depth"] > 0 and rep["warnings"]


def test_count_depth_and_epsilon_are_exclusive(tmp_path, capsys):
    assert cli.main(["count", graph_file(tmp_path, 4, K4), "--depth", "3", "--epsilon", "0.1"]) == cli.EXIT_PARSE


def test_marginal_edge(tmp_path, capsys):
    code, rep = run_json(capsys, ["marginal", graph_file(tmp_path, 2, [(0, 1)]),
                                  "--vertex", "0", "--color", "1", "--depth", "5"])
    assert code == 0 and rep["result"]["marginal"] == 0.25


def test_marginal_triangle_half(tmp_path, capsys):
    g = graph_file(tmp_path, 3, [(0, 1), (1, 2), (0, 2)])
    lists = write(tmp_path, "l.json", json.dumps({"1": [2, 3, 4], "2": [2, 3, 4]}))
    code, rep = run_json(capsys, ["marginal", g, lists, "--vertex", "0", "--color", "1",
                                  "--depth", "4", "--backend", "rational"])
    assert code == 0
    assert rep["result"]["marginal_exact"] == "1/2"
    assert rep["result"]["boundary_class"] == "HalfCase3"


def test_marginal_colour_outside_list(tmp_path, capsys):
    g = graph_file(tmp_path, 2, [(0, 1)])
    lists = write(tmp_path, "l.json", json.dumps({"0": [2, 3, 4]}))
    code, rep = run_json(capsys, ["marginal", g, lists, "--vertex", "0", "--color", "1", "--depth", "3"])
    assert code == 0
    assert rep["result"]["marginal"] == 0 and rep["result"]["boundary_class"] == "Zero"


def test_marginal_text_output(tmp_path, capsys):
    code, out = run(capsys, ["marginal", graph_file(tmp_path, 2, [(0, 1)]), "--vertex", "1",
                             "--color", "3", "--depth", "2", "--backend", "rational"])
    assert code == 0 and "marginal: 1/4" in out and "class: Interior" in out


def test_exact_counts(tmp_path, capsys):
    assert run(capsys, ["exact", graph_file(tmp_path, 4, K4)]) == (0, "24\n")
    assert run(capsys, ["exact", graph_file(tmp_path, 2, [(0, 1)])]) == (0, "12\n")
    code, rep = run_json(capsys, ["exact", graph_file(tmp_path, 10, petersen())])
    assert code == 0 and rep["result"]["count"] == 12960


def test_exact_marginal_is_rational_string(tmp_path, capsys):
    g = graph_file(tmp_path, 3, [(0, 1), (1, 2), (0, 2)])
    lists = write(tmp_path, "l.json", json.dumps({"1": [2, 3, 4], "2": [2, 3, 4]}))
    code, out = run(capsys, ["exact", g, lists, "--marginal", "0", "2"])
    assert code == 0 and Fraction(out.strip()) == Fraction(1, 6)


def test_exact_capacity(tmp_path, capsys):
    path = graph_file(tmp_path, 10, petersen())
    assert cli.main(["exact", path, "--cap", "5"]) == cli.EXIT_CAPACITY


def test_verify_resolve3(capsys):
    code, rep = run_json(capsys, ["verify-decay", "--case", "resolve3+", "--resolution", "0.005", "--threads", THREADS])
    assert code == 0
    (r,) = rep["result"]["reports"]
    assert r["passed"] and r["max_found"] <= 0.963


def test_verify_jensen(capsys):
    code, rep = run_json(capsys, ["verify-decay", "--case", "jensen", "--resolution", "0.005", "--threads", THREADS])
    assert code == 0
    got = {r["name"]: Fraction(r["threshold"]) for r in rep["result"]["reports"]}
    assert sorted(got.values()) == [Fraction(10181, 10000), Fraction(10195, 10000)]


def test_verify_rejects_bad_arguments(capsys):
    assert cli.main(["verify-decay", "--case", "nonsense"]) == cli.EXIT_PARSE
    assert cli.main(["verify-decay", "--resolution", "0"]) == cli.EXIT_PARSE
    assert cli.main(["verify-decay", "--case", "deg1", "--threshold", "deg1_l4"]) == cli.EXIT_PARSE


def test_gen_k4(tmp_path, capsys):
    out = tmp_path / "k4.txt"
    code, rep = run_json(capsys, ["gen", "--family", "k4", "--out", str(out)])
    assert code == 0
    gf = parse_graph(out.read_text())
    assert gf.n == 4 and len(gf.edges) == 6


def test_gen_cubic_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    for p in (a, b):
        assert cli.main(["gen", "--family", "cubic", "--n", "10", "--seed", "7", "--out", str(p)]) == 0
    capsys.readouterr()
    assert a.read_text() == b.read_text()


def test_gen_cycle(tmp_path, capsys):
    out = tmp_path / "c5.txt"
    assert cli.main(["gen", "--family", "cycle", "--n", "5", "--out", str(out)]) == 0
    capsys.readouterr()
    assert len(parse_graph(out.read_text()).edges) == 5


@pytest.mark.parametrize("dimacs", [False, True])
@pytest.mark.parametrize("family,n", [("subcubic", 12), ("cubic", 14), ("petersen", 0)])
def test_gen_round_trip(tmp_path, capsys, dimacs, family, n):
    from colorcount.generators import CorpusSpec, generate

    g, l = tmp_path / "g.txt", tmp_path / "l.json"
    argv = ["gen", "--family", family, "--n", str(n), "--seed", "3", "--p", "0.4",
            "--lists-policy", "random_valid", "--out", str(g), "--lists-out", str(l)]
    if dimacs:
        argv.append("--dimacs")
    assert cli.main(argv) == 0
    capsys.readouterr()
    inst, gf, _ = load_instance(g, l)
    assert gf.dimacs == dimacs and gf.base == int(dimacs)
    want = generate(CorpusSpec(cli.FAMILY_ALIASES[family], n=n, p=0.4, seed=3, lists="random_valid"))
    assert inst == want


def test_parse_formats():
    a = parse_graph("c comment\np edge 3 2\ne 1 2\ne 2 3\n")
    b = parse_graph("# plain\n3 2\n0 1\n1 2\n")
    assert a.edges == b.edges and (a.base, b.base) == (1, 0)
    assert parse_graph("3 2 1\n1 2\n2 3\n").edges == b.edges
    lists = parse_lists('{"1": [1, 2]}', 3, base=1)
    assert lists[0] == frozenset({1, 2}) and lists[1] == frozenset({1, 2, 3, 4})
    assert build_instance(b, lists).is_valid()


@pytest.mark.parametrize("text", ["", "3\n", "3 2\n0 1\n", "3 1\n0 5\n", "2 1\nx y\n", "p edge 2 1\n1 2\n", "2 1 7\n0 1\n"])
def test_parse_graph_errors(tmp_path, capsys, text):
    path = write(tmp_path, "bad.txt", text)
    assert cli.main(["count", path, "--depth", "2"]) == cli.EXIT_PARSE


@pytest.mark.parametrize("text", ["[1]", "{\"0\": []}", "{\"0\": [5]}", "{\"9\": [1]}", "{\"a\": [1]}", "{", "{\"0\": [true]}"])
def test_parse_lists_errors(tmp_path, capsys, text):
    g = graph_file(tmp_path, 2, [(0, 1)])
    assert cli.main(["count", g, write(tmp_path, "l.json", text), "--depth", "2"]) == cli.EXIT_PARSE


def test_missing_file(tmp_path):
    assert cli.main(["exact", str(tmp_path / "nope.txt")]) == cli.EXIT_PARSE


def test_invalid_instance_exit_codes(tmp_path, capsys):
    loop = graph_file(tmp_path, 2, [(0, 0)], "loop.txt")
    assert cli.main(["count", loop, "--depth", "2"]) == cli.EXIT_INVALID
    star4 = graph_file(tmp_path, 5, [(0, k) for k in range(1, 5)], "star.txt")
    assert cli.main(["count", star4, "--depth", "2"]) == cli.EXIT_INVALID
    tight = graph_file(tmp_path, 4, K4, "k4.txt")
    lists = write(tmp_path, "l.json", json.dumps({"0": [1, 2, 3]}))
    assert cli.main(["count", tight, lists, "--depth", "2"]) == cli.EXIT_INVALID
    assert cli.main(["marginal", tight, lists, "--vertex", "0", "--color", "1", "--depth", "2"]) == cli.EXIT_INVALID


def test_unsatisfiable_exit_code(tmp_path, capsys):
    g = graph_file(tmp_path, 2, [(0, 1)])
    lists = write(tmp_path, "l.json", json.dumps({"0": [2], "1": [2]}))
    code, rep = run_json(capsys, ["count", g, lists, "--depth", "3"])
    assert code == cli.EXIT_UNSAT and rep["result"]["count"] == 0
    assert cli.main(["exact", g, lists]) == cli.EXIT_UNSAT
