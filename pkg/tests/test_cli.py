import csv

import numpy as np
import pytest

from trigherm.cli import EXIT_BREAKDOWN, EXIT_INVALID, EXIT_OK, fmt, main
from trigherm.diffmat import diffmat
from trigherm.nodes import equidistant_nodes


def read(path):
    text = path.read_bytes()
    assert b"\r" not in text
    return list(csv.reader(text.decode().splitlines()))


def test_fmt_has_17_significant_digits():
    assert fmt(1 / 3) == "3.3333333333333331e-01"
    assert float(fmt(np.pi)) == np.pi
    assert fmt(-0.0) == "0.0000000000000000e+00"
    assert fmt(float("nan")) == "nan"


def test_diffmat_dump_roundtrips(tmp_path):
    out = tmp_path / "d.csv"
    assert main(["diffmat", "--n", "5", "--j", "1", "--s", "3", "--method", "recursive", "--out", str(out)]) == EXIT_OK
    rows = read(out)
    assert rows[0] == [f"k{k}" for k in range(5)]
    got = np.array(rows[1:], dtype=float)
    assert np.array_equal(got, diffmat(equidistant_nodes(5), 1, 3).entries)


def test_interpolate(tmp_path):
    out = tmp_path / "i.csv"
    assert main(["interpolate", "--n", "20", "--m", "2", "--function", "f1", "--grid", "1000", "--out", str(out)]) == 0
    rows = read(out)
    assert rows[0] == ["theta", "t_m", "f", "abs_error"] and len(rows) == 1001
    vals = np.array(rows[1:], dtype=float)
    assert np.max(vals[:, 3]) < 1e-4


def test_interpolate_conformal_and_files(tmp_path):
    out = tmp_path / "c.csv"
    args = ["interpolate", "--nodes", "conformal", "--alpha", "0.5", "--front", "0.5,3.6", "--n", "12"]
    assert main(args + ["--m", "1", "--function", "f2", "--grid", "50", "--out", str(out)]) == 0
    nodes = tmp_path / "nodes.csv"
    nodes.write_text("theta\n0.0\n1.0\n2.5\n4.0\n5.0\n")
    data = tmp_path / "data.csv"
    t = np.array([0.0, 1.0, 2.5, 4.0, 5.0])
    data.write_text("\n".join(f"{np.sin(x)},{np.cos(x)}" for x in t) + "\n")
    out2 = tmp_path / "f.csv"
    argv = ["interpolate", "--nodes", "file", "--node-file", str(nodes), "--function", "file"]
    assert main(argv + ["--data-file", str(data), "--m", "1", "--grid", "10", "--out", str(out2)]) == 0
    rows = read(out2)
    assert rows[1][2] == "nan"


def test_convergence(tmp_path):
    out = tmp_path / "r.csv"
    assert main(["convergence", "--function", "f2", "--m", "1", "--Ns", "5,10,20", "--grid", "1000", "--out", str(out)]) == 0
    rows = read(out)
    assert rows[0] == ["N", "err_N", "rate"]
    assert [r[0] for r in rows[1:]] == ["5", "10", "20"]
    assert rows[-1][2] == "nan" and float(rows[1][2]) > 0


def test_reconstruct(tmp_path):
    pts = tmp_path / "p.csv"
    t = 2 * np.pi * np.arange(16) / 16
    pts.write_text("x,y\n" + "\n".join(f"{np.cos(a)},{np.sin(a)}" for a in t) + "\n")
    out, svg = tmp_path / "r.csv", tmp_path / "r.svg"
    assert main(["reconstruct", "--points", str(pts), "--m", "0", "--grid", "100", "--out", str(out), "--svg", str(svg)]) == 0
    xy = np.array(read(out)[1:], dtype=float)[:, 1:]
    assert np.allclose(np.hypot(xy[:, 0], xy[:, 1]), 1.0, atol=1e-12)
    assert svg.read_text().startswith("<svg")


@pytest.mark.parametrize(
    "argv",
    [
        ["diffmat", "--n", "1", "--j", "0", "--s", "1"],
        ["diffmat", "--n", "4", "--j", "-1", "--s", "1"],
        ["diffmat", "--n", "4", "--j", "0", "--s", "1", "--method", "fft"],
        ["interpolate", "--n", "8", "--function", "f9"],
        ["interpolate", "--nodes", "conformal", "--n", "8"],
        ["interpolate", "--nodes", "conformal", "--alpha", "1.2", "--front", "1", "--n", "8"],
        ["interpolate", "--nodes", "file"],
        ["interpolate"],
        ["interpolate", "--n", "8", "--m", "9"],
        ["convergence", "--Ns", "5,x"],
        ["convergence", "--Ns", "1,2"],
        ["reconstruct", "--points", "/nonexistent.csv"],
        ["bogus"],
    ],
)
def test_validation_failures_exit_2(argv, capsys):
    try:
        code = main(argv + (["--out", "-"] if argv[0] in ("diffmat",) else []))
    except SystemExit as exc:
        code = exc.code
    assert code == EXIT_INVALID


def test_clockwise_points_exit_2(tmp_path):
    pts = tmp_path / "p.csv"
    t = -2 * np.pi * np.arange(8) / 8
    pts.write_text("\n".join(f"{np.cos(a)},{np.sin(a)}" for a in t) + "\n")
    assert main(["reconstruct", "--points", str(pts)]) == EXIT_INVALID


def test_numerical_breakdown_exits_3(tmp_path):
    data = tmp_path / "d.csv"
    data.write_text("\n".join("1e307,1e307,1e307" for _ in range(6)) + "\n")
    with np.errstate(all="ignore"):
        code = main(["interpolate", "--n", "6", "--m", "2", "--function", "file", "--data-file", str(data), "--grid", "20"])
    assert code == EXIT_BREAKDOWN
