import json

from trivec.cli import main, parse_state, state_document
from trivec.exterior import canonical_state


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def write_state(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def ghz_doc():
    return {
        "format": 1, "dimension": 6, "degree": 3, "scalar_mode": "rational",
        "amplitudes": [
            {"indices": [1, 2, 3], "re": "1", "im": "0"},
            {"indices": [4, 5, 6], "re": "1", "im": "0"},
        ],
    }


def test_classify_ghz(tmp_path, capsys):
    path = write_state(tmp_path, "ghz.json", ghz_doc())
    code, out, _ = run_cli(capsys, "classify", "--input", path)
    assert code == 0
    rep = json.loads(out)
    assert rep["classification"]["label"] == "GHZ"
    assert rep["invariants"]["quartic_d"]["re"] == "1"
    assert rep["spectrum"]["constraints"][0]["saturated"] is False


def test_classify_is_byte_deterministic(tmp_path, capsys):
    path = write_state(tmp_path, "ghz.json", ghz_doc())
    _, out1, _ = run_cli(capsys, "classify", "--input", path)
    _, out2, _ = run_cli(capsys, "classify", "--input", path)
    assert out1 == out2


def test_classify_rejects_repeated_index(tmp_path, capsys):
    doc = ghz_doc()
    doc["amplitudes"][0]["indices"] = [1, 1, 2]
    path = write_state(tmp_path, "bad.json", doc)
    code, _, err = run_cli(capsys, "classify", "--input", path)
    assert code == 2
    assert "indices" in err


def test_classify_rejects_duplicate_set(tmp_path, capsys):
    doc = ghz_doc()
    doc["amplitudes"].append({"indices": [2, 1, 3], "re": "1", "im": "0"})
    path = write_state(tmp_path, "dup.json", doc)
    code, _, err = run_cli(capsys, "classify", "--input", path)
    assert code == 2
    assert "duplicate" in err


def test_nonincreasing_indices_normalized():
    doc = ghz_doc()
    doc["amplitudes"][0]["indices"] = [3, 2, 1]
    p, mode = parse_state(doc)
    assert p.coefficient((1, 2, 3)) == -1


def test_state_document_roundtrip():
    p = canonical_state(7, "X")
    doc = state_document(p, "rational")
    q, mode = parse_state(doc)
    assert q == p and mode == "rational"


def test_canonical_and_classify_roundtrip(tmp_path, capsys):
    for dim, label in ((6, "W"), (7, "X"), (8, "XVI")):
        path = str(tmp_path / f"{label}.json")
        code, _, _ = run_cli(capsys, "canonical", "--dim", str(dim),
                             "--class", label, "--out", path)
        assert code == 0
        code, out, _ = run_cli(capsys, "classify", "--input", path)
        assert code == 0
        assert json.loads(out)["classification"]["label"] == label


def test_canonical_family_with_params(tmp_path, capsys):
    path = str(tmp_path / "fam1.json")
    code, _, _ = run_cli(capsys, "canonical", "--dim", "9", "--class",
                         "family1", "--params", "1,2,4,8", "--out", path)
    assert code == 0
    code, out, _ = run_cli(capsys, "classify", "--input", path)
    assert code == 0
    rep = json.loads(out)
    assert rep["classification"]["label"] == "family1"
    assert rep["classification"]["rank_T"] == 80


def test_canonical_rejects_bad_params(capsys):
    code, _, err = run_cli(capsys, "canonical", "--dim", "9", "--class",
                           "family1", "--params", "2,1,1,3")
    assert code == 2
    assert "constraint" in err


def test_canonical_q1_report(tmp_path, capsys):
    path = str(tmp_path / "q1.json")
    run_cli(capsys, "canonical", "--dim", "9", "--class", "family6",
            "--params", "1", "--out", path)
    code, out, _ = run_cli(capsys, "classify", "--input", path)
    assert code == 0
    rep = json.loads(out)
    assert rep["classification"]["label"] == "family6"
    assert rep["classification"]["rank_T"] == 56
    js = [rep["invariants"][k]["re"] for k in ("J12", "J18", "J24", "J30")]
    assert js == ["1", "1", "111", "584"]


def test_random_deterministic(tmp_path, capsys):
    code, out1, _ = run_cli(capsys, "random", "--dim", "7", "--seed", "5")
    assert code == 0
    _, out2, _ = run_cli(capsys, "random", "--dim", "7", "--seed", "5")
    assert out1 == out2


def test_random_slocc_of_preserves_class(tmp_path, capsys):
    path = write_state(tmp_path, "ghz.json", ghz_doc())
    moved = str(tmp_path / "moved.json")
    code, _, _ = run_cli(capsys, "random", "--slocc-of", path, "--seed", "1",
                         "--out", moved)
    assert code == 0
    code, out, _ = run_cli(capsys, "classify", "--input", moved)
    assert code == 0
    assert json.loads(out)["classification"]["label"] == "GHZ"


def test_embed_qubit_ghz(tmp_path, capsys):
    psi = {"amplitudes": [
        {"indices": [0, 0, 0], "re": "1", "im": "0"},
        {"indices": [1, 1, 1], "re": "1", "im": "0"},
    ]}
    path = write_state(tmp_path, "psi.json", psi)
    code, out, _ = run_cli(capsys, "embed", "--type", "qubit3",
                           "--input", path)
    assert code == 0
    rep = json.loads(out)
    assert rep["classification"] == {"dimension": 6, "label": "GHZ"}


def test_embed_qubit_w(tmp_path, capsys):
    psi = {"amplitudes": [
        {"indices": [0, 0, 1], "re": "1", "im": "0"},
        {"indices": [0, 1, 0], "re": "1", "im": "0"},
        {"indices": [1, 0, 0], "re": "1", "im": "0"},
    ]}
    path = write_state(tmp_path, "w.json", psi)
    code, out, _ = run_cli(capsys, "embed", "--type", "qubit3",
                           "--input", path)
    assert code == 0
    assert json.loads(out)["classification"]["label"] == "W"


def test_embed_qutrit_normal_form(tmp_path, capsys):
    amps = []
    for trip in ((1, 1, 1), (2, 2, 2), (3, 3, 3)):
        amps.append({"indices": list(trip), "re": "1", "im": "0"})
    path = write_state(tmp_path, "psi0.json", {"amplitudes": amps})
    code, out, _ = run_cli(capsys, "embed", "--type", "qutrit3",
                           "--input", path)
    assert code == 0
    rep = json.loads(out)
    assert rep["classification"]["dimension"] == 9
    assert rep["qutrit_family_separation"]["D36"]["zero"] is True
    assert rep["qutrit_family_separation"]["D21"]["zero"] is True


def test_embed_rejects_bad_labels(tmp_path, capsys):
    psi = {"amplitudes": [{"indices": [0, 0, 2], "re": "1", "im": "0"}]}
    path = write_state(tmp_path, "bad.json", psi)
    code, _, err = run_cli(capsys, "embed", "--type", "qubit3",
                           "--input", path)
    assert code == 2


def test_rdm_report(tmp_path, capsys):
    path = write_state(tmp_path, "ghz.json", ghz_doc())
    code, out, _ = run_cli(capsys, "rdm", "--input", path)
    assert code == 0
    rep = json.loads(out)
    assert rep["occupations_descending"] == [0.5] * 6
    assert rep["pinning"]["class_label"] == "GHZ"


def test_selfcheck(capsys):
    code, out, err = run_cli(capsys, "selfcheck")
    assert code == 0
    rep = json.loads(out)
    assert rep["passed"] is True
    assert "ok" in err


def test_mode_mismatch(tmp_path, capsys):
    path = write_state(tmp_path, "ghz.json", ghz_doc())
    code, _, err = run_cli(capsys, "classify", "--input", path,
                           "--mode", "float")
    assert code == 2
