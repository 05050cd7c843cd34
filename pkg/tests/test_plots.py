import pytest

from calculus.errors import MalformedTableError
from ui.plots import line_chart_svg, read_series, write_plot


def _write(tmp_path, text, name="table.csv"):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return path


def test_read_series_skips_empty_cells(tmp_path):
    path = _write(tmp_path, "n,delta,t\n3,0,\n14,64,257\n")
    ns, data = read_series(path, ["delta", "t"])
    assert ns.tolist() == [3, 14]
    assert data["delta"].tolist() == [[3, 0], [14, 64]]
    assert data["t"].tolist() == [[14, 257]]


def test_write_plot(tmp_path):
    src = _write(tmp_path, "n,t\n15,816\n25,272512\n")
    out = write_plot(src, tmp_path / "t.svg", ["t"])
    svg = out.read_text(encoding="utf-8")
    assert svg.startswith("<svg")
    assert 'viewBox="0 0 800 500"' in svg
    assert "t(25) = 272512" in svg


def test_missing_column(tmp_path):
    src = _write(tmp_path, "n,delta\n3,0\n")
    with pytest.raises(MalformedTableError):
        read_series(src, ["t"])


def test_empty_series(tmp_path):
    src = _write(tmp_path, "n,t\n3,\n")
    with pytest.raises(MalformedTableError):
        read_series(src, ["t"])


def test_non_numeric_cell(tmp_path):
    src = _write(tmp_path, "n,t\n3,abc\n")
    with pytest.raises(MalformedTableError):
        read_series(src, ["t"])


def test_no_n_column(tmp_path):
    src = _write(tmp_path, "x,t\n3,1\n")
    with pytest.raises(MalformedTableError):
        read_series(src, ["t"])


def test_nothing_to_plot():
    with pytest.raises(MalformedTableError):
        line_chart_svg({})
