import os

import numpy as np
import pytest

from lzjd import deserialize, digest_bytes, score
from lzjd.cli import run


@pytest.fixture
def files(tmp_path, rng):
    base = rng.integers(0, 64, 60_000, dtype=np.uint8).tobytes()
    paths = {
        "a.bin": base,
        "a_copy.bin": base,
        "a_half.bin": base[:30_000],
        "noise.bin": rng.bytes(40_000),
        "empty.bin": b"",
    }
    for name, data in paths.items():
        (tmp_path / name).write_bytes(data)
    return tmp_path


def out_lines(capsys):
    return capsys.readouterr().out.splitlines()


def test_hash_two_files(files, capsys):
    assert run([str(files / "a.bin"), str(files / "noise.bin")]) == 0
    lines = out_lines(capsys)
    assert len(lines) == 2
    d = deserialize(lines[0])
    assert d.name == str(files / "a.bin") and d.input_length == 60_000


def test_gen_compare_identical(files, capsys):
    a, b = str(files / "a.bin"), str(files / "a_copy.bin")
    assert run(["-g", "-t", "1", a, b]) == 0
    assert out_lines(capsys) == [f"{a}|{b}|100"]


def test_recursive_sorted_and_threshold(files, capsys):
    assert run(["-r", "-g", "-t", "21", str(files)]) == 0
    lines = out_lines(capsys)
    assert lines == sorted(lines)
    pairs = {tuple(os.path.basename(p) for p in line.split("|")[:2]) for line in lines}
    assert ("a.bin", "a_copy.bin") in pairs
    assert all(int(line.rsplit("|", 1)[1]) >= 21 for line in lines)
    assert not any("noise.bin" in line for line in lines)


def test_directory_needs_recursion(files, capsys):
    assert run([str(files)]) == 1
    assert "use -r" in capsys.readouterr().err


def test_missing_file_others_still_hashed(files, capsys):
    code = run([str(files / "a.bin"), str(files / "missing.bin")])
    captured = capsys.readouterr()
    assert code == 1
    assert len(captured.out.splitlines()) == 1
    assert "missing.bin" in captured.err


def test_symlinks_not_followed(files, capsys):
    os.symlink(files / "a.bin", files / "link.bin")
    assert run(["-r", str(files)]) == 0
    captured = capsys.readouterr()
    assert "link.bin" not in captured.out and "symlink" in captured.err


def test_compare_db_and_cross(files, tmp_path, capsys):
    db1 = tmp_path / "db1.txt"
    db2 = tmp_path / "db2.txt"
    assert run(["-o", str(db1), str(files / "a.bin"), str(files / "a_half.bin")]) == 0
    assert run(["-o", str(db2), str(files / "a_copy.bin")]) == 0
    capsys.readouterr()
    assert run(["-c", str(db1)]) == 0
    within = out_lines(capsys)
    assert len(within) == 1
    da = digest_bytes((files / "a.bin").read_bytes())
    dh = digest_bytes((files / "a_half.bin").read_bytes())
    assert within[0].endswith(f"|{score(da, dh)}")
    assert run(["-c", str(db1), str(db2)]) == 0
    cross = out_lines(capsys)
    assert cross[0] == f"{files / 'a.bin'}|{files / 'a_copy.bin'}|100"


def test_incompatible_dbs(files, tmp_path, capsys):
    db1, db2 = tmp_path / "k1024.txt", tmp_path / "k64.txt"
    run(["-o", str(db1), str(files / "a.bin")])
    run(["-o", str(db2), "--k", "64", str(files / "a_copy.bin")])
    capsys.readouterr()
    assert run(["-c", str(db1), str(db2)]) == 1
    err = capsys.readouterr().err
    assert "lzjd:1:1024:0" in err and "lzjd:1:64:0" in err


def test_bad_db_is_usage_error(tmp_path, capsys):
    db = tmp_path / "bad.txt"
    db.write_text("lzjd:1:1024:0:3:x:AAAAAQAAAAI=\nsdbf:03:1:x\n")
    assert run(["-c", str(db)]) == 2
    assert "line 2" in capsys.readouterr().err


def test_missing_db(tmp_path, capsys):
    assert run(["-c", str(tmp_path / "none.txt")]) == 1


@pytest.mark.parametrize(
    "argv",
    [[], ["-g", "-c", "x"], ["-c"], ["-c", "a", "b", "c"], ["--k", "0", "x"], ["-p", "0", "x"], ["--bogus"]],
)
def test_usage_errors(argv, capsys):
    with pytest.raises(SystemExit) as info:
        run(argv)
    assert info.value.code == 2


def test_stdin(monkeypatch, capsys, rng):
    import io
    import sys

    data = rng.bytes(5000)
    monkeypatch.setattr(sys, "stdin", io.TextIOWrapper(io.BytesIO(data)))
    assert run(["-"]) == 0
    assert deserialize(out_lines(capsys)[0]) == digest_bytes(data, "-")


def test_thread_count_does_not_change_output(files, capsys):
    outputs = []
    for p in ("1", "8"):
        assert run(["-r", "-g", "-p", p, str(files)]) == 0
        outputs.append(capsys.readouterr().out)
    assert outputs[0] == outputs[1] and outputs[0]


def test_stats_on_stderr(files, capsys):
    assert run(["--stats", "-g", str(files / "a.bin"), str(files / "a_copy.bin")]) == 0
    err = capsys.readouterr().err
    assert "MB/s" in err and "cmp/s" in err


def test_empty_file_digest(files, capsys):
    assert run([str(files / "empty.bin")]) == 0
    assert out_lines(capsys)[0].endswith(":0:" + str(files / "empty.bin") + ":")
