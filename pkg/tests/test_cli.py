import csv
import io
import json
import math
import subprocess
import sys

import pytest
from numpy.testing import assert_allclose

from arealmahler.cli import OutputRecord, main, render

GOLDEN_MD_Q1 = 0.181650509823419975804


def run(capsys, *argv):
    status = main(list(argv))
    out = capsys.readouterr()
    return status, out.out, out.err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_mahler_xyk_areal(capsys):
    status, out, _ = run(capsys, "mahler", "--family", "xyk", "--k", "1", "--areal")
    assert status == 0
    (r,) = rows(out)
    # k = 1 closed form evaluated in mpmath, frozen
    assert_allclose(float(r["value_re"]), 0.110693998283635, atol=1e-11)
    assert r["quantity"] == "m_D(x+y+k)"


def test_mahler_qk_areal(capsys):
    status, out, _ = run(capsys, "mahler", "--family", "qk", "--k", "1", "--areal")
    assert status == 0
    assert abs(float(rows(out)[0]["value_re"]) - GOLDEN_MD_Q1) <= 1e-10


def test_mahler_classical_large_k(capsys):
    status, out, _ = run(capsys, "mahler", "--family", "xyk", "--k", "5")
    assert status == 0
    assert_allclose(float(rows(out)[0]["value_re"]), math.log(5), rtol=1e-14)


def test_mahler_all_routes_one_record_each(capsys):
    status, out, _ = run(capsys, "mahler", "--family", "xyk", "--k", "0.5,1.5", "--areal", "--all-routes")
    assert status == 0
    recs = rows(out)
    assert len(recs) == 8
    for k in ("0.5", "1.5"):
        vals = [float(r["value_re"]) for r in recs if r["k"] == k]
        assert max(vals) - min(vals) <= 1e-10


def test_mahler_qk_all_routes(capsys):
    status, out, _ = run(capsys, "mahler", "--family", "qk", "--k", "2", "--areal", "--all-routes")
    assert status == 0
    recs = rows(out)
    assert [r["method"].split(":")[1] for r in recs] == ["thm12", "density"]
    assert abs(float(recs[0]["value_re"]) - float(recs[1]["value_re"])) <= 1e-9


def test_mahler_univariate(capsys):
    # 2 + x: both roots outside, so m_D = m = log 2
    status, out, _ = run(capsys, "mahler", "--family", "uni", "--coeffs", "2,1", "--areal")
    assert status == 0
    assert_allclose(float(rows(out)[0]["value_re"]), math.log(2), rtol=1e-14)


def test_mahler_monte_carlo(capsys):
    status, out, _ = run(capsys, "mahler", "--family", "xyk", "--k", "5", "--areal", "--route", "mc", "--samples", "1e5", "--seed", "3")
    assert status == 0
    r = rows(out)[0]
    assert r["method"] == "monte-carlo"
    assert abs(float(r["value_re"]) - math.log(5)) <= 4 * float(r["err"])


def test_json_output(capsys):
    status, out, _ = run(capsys, "mahler", "--family", "qk", "--k", "5", "--areal", "--format", "json")
    assert status == 0
    rec = json.loads(out.strip())
    assert_allclose(rec["value_re"], 9 / 200 - 0.5 + math.log(5), rtol=1e-12)
    assert rec["wall_time_ms"] == 0


def test_csv_uses_17_digits(capsys):
    _, out, _ = run(capsys, "mahler", "--family", "xyk", "--k", "5")
    assert rows(out)[0]["value_re"] == format(math.log(5), ".17g")


def test_zeta_subcommand(capsys):
    status, out, _ = run(capsys, "zeta", "--k", "1", "--s=2", "--s=0")
    assert status == 0
    recs = rows(out)
    assert_allclose(float(recs[0]["value_re"]), 2, rtol=1e-12)
    assert_allclose(float(recs[1]["value_re"]), 1, rtol=1e-13)


def test_zeta_negative_complex_argument(capsys):
    status, out, _ = run(capsys, "zeta", "--k", "1", "--s=-3.5+6.7i")
    assert status == 0
    r = rows(out)[0]
    assert float(r["s_re"]) == -3.5 and float(r["s_im"]) == 6.7


def test_zeros_single_box(capsys):
    status, out, _ = run(capsys, "zeros", "--k", "1", "--im", "5:8", "--check-winding")
    assert status == 0
    recs = rows(out)
    assert len(recs) == 2
    assert abs(float(recs[0]["value_re"]) + 3.4729) <= 5e-4
    assert abs(float(recs[0]["value_im"]) - 6.767) <= 5e-4
    assert recs[1]["quantity"] == "winding count" and float(recs[1]["value_re"]) == 1


def test_zeros_empty_box(capsys):
    status, out, _ = run(capsys, "zeros", "--k", "1", "--re=-3:-2", "--im", "5:8")
    assert status == 0
    assert rows(out) == []


def test_zeros_sorted_by_imaginary_part(capsys):
    status, out, _ = run(capsys, "zeros", "--k", "1", "--im", "5:20")
    ims = [float(r["value_im"]) for r in rows(out)]
    assert status == 0 and len(ims) == 3 and ims == sorted(ims)


def test_verify_thm11(capsys):
    status, out, _ = run(capsys, "verify", "--suite", "thm11", "--grid", "50")
    assert status == 0
    recs = rows(out)
    assert recs and all(r["method"] == "pass" for r in recs)
    assert all(float(r["value_re"]) < 1e-10 for r in recs)


def test_verify_crazymatrix(capsys):
    status, out, _ = run(capsys, "verify", "--suite", "crazymatrix", "--k", "0.5,1,2,3")
    assert status == 0
    assert len(rows(out)) == 12


def test_verify_montecarlo(capsys):
    status, out, _ = run(capsys, "verify", "--suite", "montecarlo", "--samples", "1e5", "--seed", "42")
    assert status == 0
    assert all(float(r["value_re"]) <= 4 for r in rows(out))


def test_plotdata_center_and_real_row(capsys):
    status, out, _ = run(capsys, "plotdata", "--k", "1", "--re-grid=-0.5:0.5:3", "--im-grid=-0.5:0.5:3")
    assert status == 0
    recs = rows(out)
    assert len(recs) == 9
    center = recs[4]
    assert float(center["s_re"]) == 0 and float(center["s_im"]) == 0
    assert_allclose(float(center["value_re"]), 1, rtol=1e-13)
    for r in recs[3:6]:
        assert abs(float(r["value_im"])) <= 1e-12


def test_plotdata_minimum_near_zero(capsys):
    status, out, _ = run(capsys, "plotdata", "--k", "1", "--re-grid=-3.5:-3.44:7", "--im-grid=6.74:6.8:7")
    assert status == 0
    recs = rows(out)
    mags = [abs(complex(float(r["value_re"]), float(r["value_im"]))) for r in recs]
    best = recs[mags.index(min(mags))]
    assert abs(float(best["s_re"]) + 3.4729) <= 0.01 and abs(float(best["s_im"]) - 6.767) <= 0.01


def test_out_file_is_byte_identical(tmp_path):
    paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
    for p in paths:
        assert main(["mahler", "--family", "qk", "--k", "0.5,1,3", "--areal", "--all-routes", "--out", str(p)]) == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_timing_flag_records_wall_time(capsys):
    _, out, _ = run(capsys, "mahler", "--family", "xyk", "--k", "1", "--timing")
    assert float(rows(out)[0]["wall_time_ms"]) > 0


def test_usage_errors_exit_2(capsys):
    for argv in (["mahler", "--k=-1"], ["mahler", "--family", "abc"], ["frobnicate"], ["zeros", "--im", "8:5"], ["zeta"]):
        with pytest.raises(SystemExit) as exc:
            main(argv)
        assert exc.value.code == 2
    capsys.readouterr()


def test_computation_errors_exit_1(capsys):
    status, _, err = run(capsys, "mahler", "--family", "xyk", "--k", "1", "--route", "thm12")
    assert status == 1 and err.startswith("error:")
    status, _, _ = run(capsys, "mahler", "--family", "uni", "--areal")
    assert status == 1
    status, _, _ = run(capsys, "zeros", "--k", "3")
    assert status == 1


def test_output_record_validation():
    with pytest.raises(ValueError):
        OutputRecord("x", float("nan"), 0.0, "m")
    with pytest.raises(ValueError):
        OutputRecord("x", 1.0, 0.0, "")
    with pytest.raises(ValueError):
        OutputRecord("x", 1.0, -1.0, "m")
    text = render([OutputRecord("x", 1 + 2j, 0.0, "m", 1.0, 0.5)], "csv")
    assert text.splitlines()[1] == "x,1,0.5,0,1,2,0,m,0"


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "arealmahler", "mahler", "--family", "xyk", "--k", "5"], capture_output=True, text=True
    )
    assert res.returncode == 0
    assert_allclose(float(rows(res.stdout)[0]["value_re"]), math.log(5), rtol=1e-14)
    res = subprocess.run([sys.executable, "-m", "arealmahler", "mahler", "--k=-2"], capture_output=True, text=True)
    assert res.returncode == 2
