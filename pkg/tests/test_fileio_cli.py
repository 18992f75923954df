import json

import numpy as np
import pytest

from elastic_fda.cli import EXIT_DOMAIN, EXIT_INPUT, EXIT_OK, EXIT_VERIFY_FAILED, main
from elastic_fda.errors import InputError
from elastic_fda.fileio import read_function_csv, read_points_csv, write_function_csv


def write_csv(path, t, v, header=True):
    lines = ["t,value"] if header else []
    lines += [f"{float(a)!r},{float(b)!r}" for a, b in zip(t, v)]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


@pytest.fixture
def sample_files(tmp_path):
    t = np.linspace(0.0, 1.0, 81)
    f1 = np.sin(2 * np.pi * t) + 2 * t
    gamma = t**1.5
    f2 = np.interp(gamma, t, f1)
    p1, p2 = tmp_path / "f1.csv", tmp_path / "f2.csv"
    write_csv(p1, t, f1)
    write_csv(p2, t, f2, header=False)
    return p1, p2


# ---- parsing -------------------------------------------------------------------

def test_read_csv_header_optional(tmp_path):
    p = tmp_path / "f.csv"
    p.write_text("t,value\n0,1\n0.5,2\n1,3\n", encoding="utf-8")
    t, v = read_points_csv(p)
    assert np.array_equal(t, [0.0, 0.5, 1.0])
    assert np.array_equal(v, [1.0, 2.0, 3.0])
    p2 = tmp_path / "g.csv"
    p2.write_text("0,1\n1,3\n", encoding="utf-8")
    t2, _ = read_points_csv(p2)
    assert np.array_equal(t2, [0.0, 1.0])


def test_read_csv_reports_line_numbers(tmp_path):
    p = tmp_path / "bad.csv"
    p.write_text("t,value\n0,1\n0.5,zzz\n1,3\n", encoding="utf-8")
    with pytest.raises(InputError, match=r"bad\.csv:3"):
        read_points_csv(p)
    p2 = tmp_path / "cols.csv"
    p2.write_text("0,1\n0.5\n", encoding="utf-8")
    with pytest.raises(InputError, match=r"cols\.csv:2"):
        read_points_csv(p2)


def test_read_function_rejects_decreasing(tmp_path):
    p = tmp_path / "dec.csv"
    p.write_text("0,0\n0.6,1\n0.4,2\n1,3\n", encoding="utf-8")
    with pytest.raises(InputError, match="decrease"):
        read_function_csv(p)


def test_read_function_collapses_duplicates(tmp_path):
    p = tmp_path / "dup.csv"
    p.write_text("0,0\n0.5,1\n0.5,9\n1,2\n", encoding="utf-8")
    f = read_function_csv(p)
    assert np.array_equal(f.grid.nodes, [0.0, 0.5, 1.0])
    assert np.array_equal(f.values, [0.0, 9.0, 2.0])


def test_write_then_read_round_trip(tmp_path, rng):
    from conftest import make_function

    f = make_function(rng, 33)
    p = tmp_path / "out.csv"
    write_function_csv(p, f)
    back = read_function_csv(p)
    assert np.array_equal(back.grid.nodes, f.grid.nodes)
    assert np.array_equal(back.values, f.values)


def test_rescale_flag(tmp_path):
    p = tmp_path / "wide.csv"
    p.write_text("2,5\n3,6\n4,7\n", encoding="utf-8")
    f = read_function_csv(p, rescale_domain=True)
    assert np.array_equal(f.grid.nodes, [0.0, 0.5, 1.0])


# ---- CLI end to end -----------------------------------------------------------------

def test_cli_srsf_shape_contract(tmp_path, sample_files):
    p1, _ = sample_files
    out = tmp_path / "q.csv"
    assert main(["srsf", str(p1), "-o", str(out)]) == EXIT_OK
    rows = out.read_text().strip().splitlines()
    assert rows[0] == "t,q"
    assert len(rows) - 1 == 80  # one row per cell


def test_cli_round_trip_through_files(tmp_path, sample_files):
    p1, _ = sample_files
    q = tmp_path / "q.csv"
    recon = tmp_path / "recon.csv"
    assert main(["srsf", str(p1), "-o", str(q), "--reconstruct-to", str(recon)]) == EXIT_OK
    t1, v1 = read_points_csv(p1)
    t2, v2 = read_points_csv(recon)
    assert np.array_equal(t1, t2)
    assert np.max(np.abs(v1 - v2)) <= 1e-9


def test_cli_align_outputs(tmp_path, sample_files):
    p1, p2 = sample_files
    out = tmp_path / "result.json"
    aligned = tmp_path / "aligned.csv"
    warp = tmp_path / "warp.csv"
    code = main([
        "align", str(p1), str(p2), "-o", str(out),
        "--aligned-csv", str(aligned), "--warp-csv", str(warp),
        "--dp-grid-size", "17",
    ])
    assert code == EXIT_OK
    doc = json.loads(out.read_text())
    assert doc["schema_version"] == 1
    assert doc["normalized"] is True
    assert doc["config"]["grid_size"] == 17
    assert doc["distance"] >= 0.0
    assert not doc["constant_function_convention"]
    ta, va = read_points_csv(aligned)
    t1, _ = read_points_csv(p1)
    assert np.array_equal(ta, t1)  # aligned f2 lives on f1's grid
    tw, vw = read_points_csv(warp)
    assert vw[0] == 0.0 and vw[-1] == 1.0
    assert np.all(np.diff(vw) >= 0.0)


def test_cli_align_identical_files(tmp_path, sample_files):
    p1, _ = sample_files
    out = tmp_path / "r.json"
    warp = tmp_path / "w.csv"
    code = main(["align", str(p1), str(p1), "-o", str(out), "--warp-csv", str(warp), "--dp-grid-size", "9"])
    assert code == EXIT_OK
    assert json.loads(out.read_text())["distance"] == 0.0
    tw, vw = read_points_csv(warp)
    assert np.array_equal(tw, vw)


def test_cli_align_deterministic(tmp_path, sample_files):
    p1, p2 = sample_files
    outs = []
    for tag in ("a", "b"):
        out = tmp_path / f"{tag}.json"
        main(["align", str(p1), str(p2), "-o", str(out), "--dp-grid-size", "17"])
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]


def test_cli_align_batch(tmp_path, sample_files):
    p1, p2 = sample_files
    pairs = tmp_path / "pairs.txt"
    pairs.write_text(
        f"{p1},{p2},{tmp_path/'pair0'}\n{p1},{p1},{tmp_path/'pair1'}\n", encoding="utf-8"
    )
    code = main(["align", "--pairs", str(pairs), "--dp-grid-size", "9", "--jobs", "2"])
    assert code == EXIT_OK
    assert json.loads((tmp_path / "pair1.json").read_text())["distance"] == 0.0
    assert (tmp_path / "pair0.aligned.csv").exists()
    assert (tmp_path / "pair0.warp.csv").exists()


def test_cli_exit_codes(tmp_path, sample_files):
    p1, _ = sample_files
    missing = tmp_path / "nope.csv"
    assert main(["srsf", str(missing)]) == EXIT_INPUT

    garbage = tmp_path / "garbage.csv"
    garbage.write_text("t,value\n0,zzz\n1,2\n", encoding="utf-8")
    assert main(["srsf", str(garbage), "-o", str(tmp_path / "q.csv")]) == EXIT_INPUT

    const = tmp_path / "const.csv"
    const.write_text("0,5\n0.5,5\n1,5\n", encoding="utf-8")
    out = tmp_path / "c.json"
    assert main(["align", str(const), str(p1), "-o", str(out), "--dp-grid-size", "9"]) == EXIT_DOMAIN
    assert json.loads(out.read_text())["constant_function_convention"] is True

    fa = tmp_path / "fa.csv"
    fb = tmp_path / "fb.csv"
    fa.write_text("0,0\n1,1\n", encoding="utf-8")
    fb.write_text("0,0.5\n1,1\n", encoding="utf-8")
    assert main(["geodesic", str(fa), str(fb), "-o", str(tmp_path / "geo")]) == EXIT_DOMAIN


def test_cli_geodesic_files(tmp_path, sample_files):
    p1, p2 = sample_files
    prefix = tmp_path / "geo"
    code = main(["geodesic", str(p1), str(p2), "--steps", "5", "-o", str(prefix), "--dp-grid-size", "9"])
    assert code == EXIT_OK
    files = sorted(tmp_path.glob("geo_*.csv"))
    assert len(files) == 5
    t0, v0 = read_points_csv(files[0])
    t1, v1 = read_points_csv(p1)
    at = np.interp(t1, t0, v0)
    assert np.max(np.abs(at - v1)) <= 1e-9


def test_cli_constant_speed(tmp_path, sample_files):
    p1, _ = sample_files
    h = tmp_path / "h.csv"
    gam = tmp_path / "gamma.csv"
    assert main(["constant-speed", str(p1), "-o", str(h), "--warp-csv", str(gam)]) == EXIT_OK
    tg, vg = read_points_csv(gam)
    assert vg[0] == 0.0 and vg[-1] == 1.0 and np.all(np.diff(vg) >= 0)


def test_cli_cantor(tmp_path, capsys):
    assert main(["cantor", "--eval", "1/3", "--digits", "24"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "0.5" in out
    assert "0.022222222222222222222222" in out


def test_cli_verify_quick(capsys):
    assert main(["verify", "--suite", "cantor", "--seed", "1"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "PASS cantor." in out
    assert "all passed" in out


def test_cli_verify_failure_exit(monkeypatch):
    import elastic_fda.cli as cli

    def fake_call(args, path, payload, timeout=0):
        return {"passed": False, "seed": 0, "suites": [], "checks": [
            {"suite": "x", "name": "y", "passed": False, "detail": "boom"}
        ]}

    monkeypatch.setattr(cli, "call_service", fake_call)
    assert cli.main(["verify"]) == EXIT_VERIFY_FAILED


def test_cli_rescale_domain(tmp_path):
    wide = tmp_path / "wide.csv"
    t = np.linspace(2.0, 4.0, 33)
    write_csv(wide, t, np.sin(t))
    out = tmp_path / "q.csv"
    assert main(["srsf", str(wide), "-o", str(out)]) == EXIT_INPUT  # not in [0,1]
    assert main(["srsf", str(wide), "-o", str(out), "--rescale-domain"]) == EXIT_OK
