import pytest

from patchrank import manifest_path_for, read_manifest, write_manifest


def test_round_trip(tmp_path):
    path = tmp_path / "run.manifest"
    entries = {"command": "denoise", "alpha": repr(1.0 / 72.0), "seed": 42, "input": "a.pgm"}
    write_manifest(path, entries)
    back = read_manifest(path)
    assert back == {k: str(v) for k, v in entries.items()}
    assert float(back["alpha"]) == 1.0 / 72.0


def test_path_helper():
    assert manifest_path_for("out/x.pgm") == "out/x.pgm.manifest"


def test_rejects_unrepresentable_entries(tmp_path):
    with pytest.raises(ValueError):
        write_manifest(tmp_path / "bad.manifest", {"a=b": 1})
    with pytest.raises(ValueError):
        write_manifest(tmp_path / "bad.manifest", {"a": "x\ny"})


def test_read_rejects_garbage(tmp_path):
    path = tmp_path / "g.manifest"
    path.write_text("just a line without separator\n")
    with pytest.raises(ValueError):
        read_manifest(path)
