import subprocess
import sys

import pytest

from hyplat_figures.cli import main


def test_render_ok(n6_csv, tmp_path, capsys):
    out = tmp_path / "n6"
    code = main(["render", "--kind", "scatter",
                 "--in", str(n6_csv), "--out", str(out)])
    assert code == 0
    assert (tmp_path / "n6.png").exists()
    assert (tmp_path / "n6.svg").exists()
    text = capsys.readouterr().out
    assert "wrote" in text
    assert "points=4" in text


def test_schema_mismatch_exit_3_with_diff(tmp_path, capsys):
    bad = tmp_path / "bad.csv"
    bad.write_text("a,b\n1,2\n")
    code = main(["render", "--kind", "scatter",
                 "--in", str(bad), "--out", str(tmp_path / "f")])
    assert code == 3
    err = capsys.readouterr().err
    assert "schema error" in err
    assert "missing columns: x, y, even_x" in err
    assert "unexpected columns: a, b" in err


def test_missing_input_exit_3(tmp_path, capsys):
    code = main(["render", "--kind", "scatter",
                 "--in", str(tmp_path / "nope.csv"),
                 "--out", str(tmp_path / "f")])
    assert code == 3
    assert "error" in capsys.readouterr().err


def test_unknown_kind_is_usage_error(tmp_path):
    with pytest.raises(SystemExit) as exc:
        main(["render", "--kind", "pie",
              "--in", "x.csv", "--out", str(tmp_path / "f")])
    assert exc.value.code == 2


def test_no_command_is_usage_error():
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2


def test_console_entry_point(n6_csv, tmp_path):
    res = subprocess.run(
        [sys.executable, "-m", "hyplat_figures.cli", "render",
         "--kind", "scatter", "--in", str(n6_csv),
         "--out", str(tmp_path / "n6"), "--title", "orbit of norm 6"],
        capture_output=True, text=True,
    )
    assert res.returncode == 0, res.stderr
    assert (tmp_path / "n6.svg").exists()
