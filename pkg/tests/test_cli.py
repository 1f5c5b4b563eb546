import pytest

from dtseq.catalog import parse_catalog
from dtseq.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_verify_v4(capsys):
    code, out, _ = run(capsys, "verify", "--v", "4")
    assert code == 0
    assert out.startswith("3 matched / 0 mismatched")


def test_unsupported_order(capsys):
    code, _, err = run(capsys, "enumerate-dts", "--v", "5")
    assert code == 2
    assert err.startswith("error: UnsupportedOrder:")
    assert len(err.strip().splitlines()) == 1


def test_bad_window(capsys):
    code, _, err = run(capsys, "sequence", "--v", "4", "--ell", "9")
    assert code == 2 and err.startswith("error: BadWindow:")


def test_missing_input_file(capsys, tmp_path):
    code, _, err = run(capsys, "sequence", "--v", "4", "-i", str(tmp_path / "nope.txt"))
    assert code == 2 and err.startswith("error: IoError:")


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 2


def test_enumerate_tts(capsys):
    code, out, _ = run(capsys, "enumerate-tts", "--v", "7")
    assert code == 0
    orders = [int(ln.split()[-1]) for ln in out.splitlines() if ln.startswith("# aut-order")]
    assert sorted(orders) == [24, 42, 48, 168]


def test_enumerate_sequence_pipeline(tmp_path, capsys):
    cat = tmp_path / "catalog.txt"
    assert main(["enumerate-dts", "--v", "6", "-o", str(cat)]) == 0
    assert parse_catalog(cat.read_text()).total == 32
    report = tmp_path / "report.tsv"
    assert main(["sequence", "--v", "6", "--ell", "6", "-i", str(cat), "-o", str(report)]) == 0
    rows = report.read_text().splitlines()[2:]
    assert len(rows) == 32
    again = tmp_path / "report2.tsv"
    assert main(["sequence", "--v", "6", "--ell", "6", "-i", str(cat), "-o", str(again), "--threads", "2"]) == 0
    assert again.read_bytes() == report.read_bytes()


def test_catalog_order_mismatch(tmp_path, capsys):
    cat = tmp_path / "catalog.txt"
    main(["enumerate-dts", "--v", "4", "-o", str(cat)])
    code, _, err = run(capsys, "sequence", "--v", "6", "-i", str(cat))
    assert code == 2 and err.startswith("error: OrderMismatch:")


def test_threads_do_not_change_bytes(tmp_path, monkeypatch):
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    main(["enumerate-dts", "--v", "7", "-o", str(a)])
    monkeypatch.setenv("DTSEQ_THREADS", "2")
    main(["enumerate-dts", "--v", "7", "-o", str(b)])
    assert a.read_bytes() == b.read_bytes()


def test_max_ell_report_v7(tmp_path):
    cat = tmp_path / "catalog.txt"
    out = tmp_path / "report.tsv"
    assert main(["enumerate-dts", "--v", "7", "-o", str(cat)]) == 0
    assert main(["sequence", "--v", "7", "--max-ell", "-i", str(cat), "-o", str(out)]) == 0
    rows = [ln.split("\t") for ln in out.read_text().splitlines()[2:]]
    assert len(rows) == 2368
    six = [r for r in rows if r[1] == "6"]
    assert len(six) == 4
    assert sorted(int(r[3]) for r in six) == [112, 112, 124, 124]


def test_report_paper_format(capsys):
    code, out, _ = run(capsys, "report", "--v", "4")
    assert code == 0
    assert out.count("Number of 4-good sequencings found: 8") == 3


def test_verify_detects_tampered_catalog(tmp_path, capsys):
    cat = tmp_path / "catalog.txt"
    main(["enumerate-dts", "--v", "4", "-o", str(cat)])
    text = cat.read_text()
    cut = text.index("# class T4/3")
    cat.write_text(text[:cut])
    code, out, _ = run(capsys, "verify", "--v", "4", "-i", str(cat))
    assert code == 1
    assert "UNMATCHED fixture" in out
