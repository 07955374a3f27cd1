import json
import math

import pytest

from monofact.cli import main
from monofact.serialize import dumps, loads
from monofact.bijection import t1_forward
from monofact.lamination import Chord, Lamination
from monofact.perm import Factorisation, enumerate_monotone_factorisations
from monofact.tree import PlaneTree

EX10 = Factorisation.from_pairs([(8, 9), (8, 10), (7, 8), (2, 3), (2, 4), (2, 5), (1, 2), (1, 6), (1, 7)])


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_sample_json_and_config_echo(capsys):
    code, out, err = run(capsys, "sample", "--n", "12", "--seed", "4")
    assert code == 0
    d = json.loads(out)
    assert d["n"] == 12 and d["seed"] == 4 and len(d["pairs"]) == 11
    assert err.startswith("config: ") and json.loads(err.split("config: ", 1)[1])["seed"] == 4


@pytest.mark.parametrize("kind", ["decreasing", "increasing"])
def test_sample_is_deterministic(capsys, kind):
    a = run(capsys, "sample", "--n", "300", "--seed", "9", "--kind", kind, "--with-tree")[1]
    b = run(capsys, "sample", "--n", "300", "--seed", "9", "--kind", kind, "--with-tree")[1]
    assert a == b and "tree" in json.loads(a)
    c = run(capsys, "sample", "--n", "300", "--seed", "10", "--kind", kind)[1]
    assert json.loads(c)["pairs"] != json.loads(a)["pairs"]


def test_sample_text(capsys):
    code, out, _ = run(capsys, "sample", "--n", "3", "--seed", "0", "--format", "text")
    assert code == 0 and out.count("(") == 2


@pytest.mark.parametrize("kind", ["decreasing", "increasing"])
def test_enumerate_n4(capsys, kind):
    code, out, _ = run(capsys, "enumerate", "--n", "4", "--kind", kind)
    got = {loads(line).taus for line in out.splitlines()}
    assert code == 0 and got == {f.taus for f in enumerate_monotone_factorisations(4, kind)}


def test_enumerate_n3_exact(capsys):
    out = run(capsys, "enumerate", "--n", "3")[1]
    assert [json.loads(x)["pairs"] for x in out.splitlines()] == [[[2, 3], [1, 2]], [[1, 2], [1, 3]]]


@pytest.mark.parametrize("argv", [
    ["sample"],
    ["sample", "--n", "0"],
    ["sample", "--n", "5", "--kind", "sideways"],
    ["sample", "--n", "5", "--seed", "-2"],
    ["enumerate", "--n", "40"],
    ["lamination", "--n", "5", "--t", "3/2"],
    ["lamination", "--n", "5", "--t", "abc"],
    ["distance", "--n", "1"],
    ["distance", "--n", "5", "--tol", "0"],
    ["stats", "exact", "--n", "30"],
])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_argparse_usage_error():
    with pytest.raises(SystemExit) as e:
        main(["frobnicate"])
    assert e.value.code == 2


def test_verify_good_and_faulty(tmp_path, capsys):
    good = tmp_path / "good.json"
    good.write_text(dumps(EX10, kind="decreasing"))
    code, out, _ = run(capsys, "verify", str(good))
    rep = json.loads(out)
    assert code == 0 and rep["passed"] and len(rep["checks"]) >= 8
    # fault injection: swap one b-value so the product is no longer the full cycle
    d = json.loads(good.read_text())
    d["pairs"][0][1] = 10
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(d))
    code, out, _ = run(capsys, "verify", str(bad))
    assert code == 1 and json.loads(out)["failures"] == ["minimal_factorisation"]


def test_verify_wrong_kind(tmp_path, capsys):
    p = tmp_path / "f.json"
    p.write_text(dumps(EX10, kind="increasing"))
    code, out, _ = run(capsys, "verify", str(p), "--format", "text")
    assert code == 1 and "FAIL  declared_kind_increasing" in out


@pytest.mark.parametrize("content", ["{", '{"schema":"monofact/v1","type":"factorisation"}', "[1,2]"])
def test_verify_malformed(tmp_path, capsys, content):
    p = tmp_path / "m.json"
    p.write_text(content)
    assert run(capsys, "verify", str(p))[0] == 3


def test_missing_file(tmp_path, capsys):
    assert run(capsys, "verify", str(tmp_path / "nope.json"))[0] == 3


@pytest.mark.parametrize("obj,kind", [
    (PlaneTree((2, 0, 0)), "plane_tree"),
    (t1_forward(EX10), "labeled_tree"),
    (Lamination((Chord(0, 0),)), "lamination"),
])
def test_verify_other_types(tmp_path, capsys, obj, kind):
    p = tmp_path / "o.json"
    p.write_text(dumps(obj))
    code, out, _ = run(capsys, "verify", str(p))
    assert code == 0 and json.loads(out)["object_type"] == kind


def test_lamination_json_and_svg(tmp_path, capsys):
    f = tmp_path / "f.json"
    f.write_text(dumps(EX10))
    code, out, _ = run(capsys, "lamination", "--input", str(f), "--t", "9/10")
    d = json.loads(out)
    assert code == 0 and d["k"] == 9 and [[1, 10], [1, 5]] in d["chords"]
    a, b = tmp_path / "a.svg", tmp_path / "b.svg"
    run(capsys, "lamination", "--n", "50", "--seed", "2", "--format", "svg", "--out", str(a))
    run(capsys, "lamination", "--n", "50", "--seed", "2", "--format", "svg", "--out", str(b))
    assert a.read_bytes() == b.read_bytes() and a.read_bytes().count(b"<line") == 49


def test_lamination_t0_is_a_point(capsys):
    out = run(capsys, "lamination", "--n", "20", "--t", "0")[1]
    assert json.loads(out)["chords"] == [[[0, 1], [0, 1]]]
    svg = run(capsys, "lamination", "--n", "20", "--t", "0", "--format", "svg")[1]
    assert "<line" not in svg


def test_lamination_rejects_crossing_input(tmp_path, capsys):
    p = tmp_path / "f.json"
    p.write_text(dumps(Factorisation.from_pairs([(1, 2), (2, 3)])))
    assert run(capsys, "lamination", "--input", str(p))[0] == 1


def test_distance_golden_and_tolerance(capsys):
    code, out, _ = run(capsys, "distance", "--n", "3", "--trials", "1", "--tol", "1e-6")
    d = json.loads(out)
    assert code == 0 and d["rows"][0]["n"] == 3
    # both trees of size 3 have known bounds: sqrt(3) for the cherry, 2 for the path
    v = d["rows"][0]["values"][0]
    assert min(abs(v - math.sqrt(3)), abs(v - 2)) < 1e-6
    coarse = json.loads(run(capsys, "distance", "--n", "40", "--trials", "2", "--tol", "2e-3")[1])
    fine = json.loads(run(capsys, "distance", "--n", "40", "--trials", "2", "--tol", "1e-3")[1])
    for x, y in zip(coarse["rows"][0]["values"], fine["rows"][0]["values"]):
        assert abs(x - y) <= 2e-3


def test_distance_table_deterministic(capsys):
    a = run(capsys, "distance", "--n", "30", "60", "--trials", "3", "--seed", "1")[1]
    b = run(capsys, "distance", "--n", "30", "60", "--trials", "3", "--seed", "1")[1]
    assert a == b and "median_strictly_decreasing" in json.loads(a)


def test_stats_exact(capsys):
    code, out, _ = run(capsys, "stats", "exact", "--n", "4")
    assert code == 0 and json.loads(out)["probabilities"] == ["1/5", "3/5", "1/5"]
    code, out, _ = run(capsys, "stats", "exact", "--n", "4", "--format", "text")
    assert "PASS" in out


def test_stats_sampler_and_parking(capsys):
    assert run(capsys, "stats", "sampler", "--n", "4", "--trials", "50000")[0] == 0
    code, out, _ = run(capsys, "stats", "parking", "--n", "150", "--trials", "30", "--seed", "3")
    assert code == 0 and json.loads(out)["statistics"]["walk_route_max_gap"] == 0


@pytest.mark.parametrize("kind", ["decreasing", "increasing"])
def test_convert_roundtrip(tmp_path, capsys, kind):
    p = tmp_path / "f.json"
    p.write_text(run(capsys, "sample", "--n", "25", "--seed", "1", "--kind", kind)[1])
    tree = run(capsys, "convert", str(p), "--kind", kind)[1]
    q = tmp_path / "t.json"
    q.write_text(tree)
    back = loads(run(capsys, "convert", str(q), "--kind", kind)[1])
    assert back == loads(p.read_text())


def test_convert_labeled(tmp_path, capsys):
    p = tmp_path / "f.json"
    p.write_text(dumps(EX10))
    lt = run(capsys, "convert", str(p), "--to", "labeled_tree")[1]
    assert json.loads(lt)["type"] == "labeled_tree"
    q = tmp_path / "l.json"
    q.write_text(lt)
    assert loads(run(capsys, "convert", str(q))[1]) == EX10


def test_convert_wrong_kind(tmp_path, capsys):
    p = tmp_path / "f.json"
    p.write_text(dumps(EX10))
    assert run(capsys, "convert", str(p), "--kind", "increasing")[0] == 1


def test_out_file(tmp_path, capsys):
    o = tmp_path / "s.json"
    code, out, _ = run(capsys, "sample", "--n", "7", "--out", str(o))
    assert code == 0 and out == "" and loads(o.read_text()).n == 7
