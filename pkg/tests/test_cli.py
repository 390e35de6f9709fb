import subprocess
import sys

import pytest

from mpfss import keyfile
from mpfss.cli import main
from mpfss.keysize import rows_from_csv


def keygen(out, *extra, N=50, alpha=7, beta=11, seed=1, group="test32"):
    argv = ["keygen", "--N", str(N), "--alpha", str(alpha), "--beta", str(beta),
            "--group", group, "--seed", str(seed), "--out", str(out), *extra]
    return main(argv)


def eval_decode(tmp_path, keydir, p=3, x=None, decode_extra=()):
    shares = []
    for i in range(1, p + 1):
        s = tmp_path / f"s{i}.bin"
        argv = ["eval", "--key", str(keydir / f"key_{i}.bin"), "--out", str(s)]
        if x is not None:
            argv += ["--x", x]
        assert main(argv) == 0
        shares.append(str(s))
    out = tmp_path / "values.tsv"
    code = main(["decode", *shares, "--out", str(out), *decode_extra])
    if code:
        return code, None
    return code, [int(line.split("\t")[1]) for line in out.read_text().splitlines()]


def test_dpf_end_to_end(tmp_path):
    assert keygen(tmp_path / "k") == 0
    code, vals = eval_decode(tmp_path, tmp_path / "k")
    assert code == 0
    assert vals == [11 if x == 7 else 0 for x in range(50)]


def test_dcf_last_threshold_point_encoding(tmp_path):
    assert keygen(tmp_path / "k", "--scheme", "dcf", "--encoding", "point", "--parties", "5",
                  alpha=49, beta=3, group="p256") == 0
    code, vals = eval_decode(tmp_path, tmp_path / "k", p=5, x="40:50")
    assert code == 0 and vals == [3] * 10


def test_beta_zero(tmp_path):
    assert keygen(tmp_path / "k", beta=0) == 0
    assert eval_decode(tmp_path, tmp_path / "k", x="7")[1] == [0]


def test_keygen_deterministic(tmp_path, capsys):
    keygen(tmp_path / "a", "--prss")
    keygen(tmp_path / "b", "--prss")
    for i in (1, 2, 3):
        assert (tmp_path / "a" / f"key_{i}.bin").read_bytes() == (tmp_path / "b" / f"key_{i}.bin").read_bytes()
    assert "total" in capsys.readouterr().out


@pytest.mark.parametrize(
    "extra,kw",
    [
        ((), dict(alpha=50)),
        (("--parties", "4", "--corrupt", "2"), {}),
        (("--bound", "10"), dict(beta=10)),
        ((), dict(group="curve25519")),
    ],
)
def test_keygen_validation_errors(tmp_path, extra, kw):
    assert keygen(tmp_path / "k", *extra, **kw) == 2


def test_eval_out_of_domain(tmp_path):
    keygen(tmp_path / "k")
    assert main(["eval", "--key", str(tmp_path / "k" / "key_1.bin"), "--x", "50", "--out",
                 str(tmp_path / "s")]) == 2


def test_eval_missing_file(tmp_path):
    assert main(["eval", "--key", str(tmp_path / "nope.bin"), "--out", str(tmp_path / "s")]) == 1


def test_decode_mixed_invocations(tmp_path):
    keygen(tmp_path / "a", seed=1)
    keygen(tmp_path / "b", seed=2)
    for i, d in ((1, "a"), (2, "b"), (3, "a")):
        main(["eval", "--key", str(tmp_path / d / f"key_{i}.bin"), "--out", str(tmp_path / f"s{i}")])
    assert main(["decode", *(str(tmp_path / f"s{i}") for i in (1, 2, 3))]) == 2


def test_decode_missing_party(tmp_path):
    keygen(tmp_path / "k")
    for i in (1, 2):
        main(["eval", "--key", str(tmp_path / "k" / f"key_{i}.bin"), "--out", str(tmp_path / f"s{i}")])
    assert main(["decode", str(tmp_path / "s1"), str(tmp_path / "s2")]) == 2


def test_decode_out_of_range_is_runtime_error(tmp_path):
    keygen(tmp_path / "k", beta=500)
    assert eval_decode(tmp_path, tmp_path / "k", x="7", decode_extra=("--bound", "100"))[0] == 1


def test_corrupt_key_file(tmp_path):
    keygen(tmp_path / "k")
    path = tmp_path / "k" / "key_1.bin"
    path.write_bytes(path.read_bytes()[:-5])
    assert main(["eval", "--key", str(path), "--out", str(tmp_path / "s")]) == 2


def test_bench_csv(tmp_path):
    out = tmp_path / "bench.csv"
    argv = ["bench", "--Ns", "100,1000", "--ps", "3", "--group", "test32", "--seed", "3",
            "--moduli", "211", "--primorials", "4", "--crt", "--moduli-N", "1000000",
            "--out", str(out)]
    assert main(argv) == 0
    rows = rows_from_csv(out.read_text())
    assert {r.scheme for r in rows} >= {"ours-dpf", "bunn-it", "trivial", "riposte-ddh", "bunn-prg"}
    assert all(r.prss for r in rows)
    assert any(r.kind == "analytic-crt" for r in rows)


def test_histogram(capsys):
    vals = "0,3,3,7,7,7"
    assert main(["histogram", "--N", "8", "--values", vals, "--group", "test32", "--seed", "4"]) == 0
    lines = capsys.readouterr().out.split()
    counts = [int(c) for c in lines[1::2]]
    assert counts == [1, 0, 0, 2, 0, 0, 0, 3]
    assert main(["histogram", "--N", "4", "--values", "5", "--group", "test32"]) == 2


def test_module_entry_point(tmp_path):
    res = subprocess.run([sys.executable, "-m", "mpfss", "keygen", "--N", "8", "--alpha", "9",
                          "--beta", "1", "--out", str(tmp_path)], capture_output=True, text=True)
    assert res.returncode == 2
    assert "error" in res.stderr


def test_share_file_header_marks_shares(tmp_path):
    keygen(tmp_path / "k")
    main(["eval", "--key", str(tmp_path / "k" / "key_1.bin"), "--x", "3:6", "--out", str(tmp_path / "s")])
    hdr, start, elems = keyfile.load_shares((tmp_path / "s").read_bytes())
    assert (hdr.scheme, start, len(elems)) == (keyfile.DPF, 3, 3)
