import pytest

from perverse_sl2.cache import CacheError, dump_pipeline, load_pipeline
from perverse_sl2.cli import main
from perverse_sl2.homotopy import verify_tilting


def run(capsys, *argv):
    code = main(list(argv))
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def test_schedule_text(capsys):
    code, out, _ = run(capsys, "schedule", "--p", "3", "--n", "2")
    assert code == 0
    lines = out.splitlines()
    assert "K[-1]={0}" in lines
    assert "K[0]={1,3,5,7} I[0]={5,7} J[0]={1,3}" in lines
    assert "K[0,0]={1,7} I[0,0]={7} J[0,0]={1}" in lines
    assert "K[0,1]={3,5} I[0,1]={5} J[0,1]={3}" in lines


def test_projectives_q4(capsys):
    code, out, _ = run(capsys, "projectives", "--p", "2", "--n", "2")
    assert code == 0
    assert "Pk (dim 12): k | V W | k k | V W | k" in out


def test_structured_output_is_deterministic(capsys):
    a = run(capsys, "schedule", "--p", "3", "--n", "2", "--format", "structured")
    b = run(capsys, "schedule", "--p", "3", "--n", "2", "--format", "structured")
    assert a == b
    assert "status: ok" in a[1] and "time:" not in a[1]


@pytest.mark.parametrize("argv,msg", [
    (["schedule", "--p", "4"], "p must be prime"),
    (["schedule", "--p", "3", "--n", "0"], "n must be positive"),
    (["schedule", "--p", "2", "--block", "nonprincipal"], "single full-defect block"),
    (["schedule", "--p", "3", "--block", "merged"], "only exists for p = 2"),
    (["schedule", "--p", "2", "--n", "40"], "exceeds"),
    (["schedule", "--p", "3", "--seed", "-1"], "unsigned"),
])
def test_usage_errors(capsys, argv, msg):
    code, out, err = run(capsys, *argv)
    assert code == 2 and msg in err and not out


def test_argparse_errors_exit_2():
    with pytest.raises(SystemExit) as exc:
        main(["schedule"])
    assert exc.value.code == 2


def test_verify_exit_codes(capsys):
    code, out, _ = run(capsys, "verify", "--p", "2", "--n", "2")
    assert code == 0 and "verification: ok" in out
    code, out, _ = run(capsys, "verify", "--p", "3", "--n", "2", "--block", "principal")
    assert code == 0
    # the composition criteria fail for the non-principal block, as expected
    code, out, _ = run(capsys, "verify", "--p", "3", "--n", "2", "--block", "nonprincipal")
    assert code == 1
    assert "[fail] t=0, t'=0" in out and "verification: FAIL" in out


def test_pipeline_cache_roundtrip(capsys, tmp_path):
    argv = ["pipeline", "--p", "3", "--n", "2", "--block", "nonprincipal", "--cache-dir", str(tmp_path)]
    code, first, _ = run(capsys, *argv)
    assert code == 0 and "R7: P5 (+) P7 -> P1 @ [-1,0]" in first
    code, second, _ = run(capsys, *argv)
    assert code == 0 and "(cached)" in second
    strip = lambda s: [l for l in s.splitlines() if not l.startswith(("time:", "block"))]
    assert strip(first) == strip(second)
    (entry,) = tmp_path.glob("*.ptwcpx")
    entry.write_bytes(b"garbage")
    code, third, _ = run(capsys, *argv)
    assert code == 0 and "warning: cache entry" in third and "(cached)" not in third


def test_cache_serialization(pipe9p):
    block, res = pipe9p
    buf = dump_pipeline(res, 9, block.parity)
    back = load_pipeline(buf)
    assert dump_pipeline(back, 9, block.parity) == buf
    assert back.final.notation() == res.final.notation()
    assert verify_tilting(back.final).ok
    with pytest.raises(CacheError):
        load_pipeline(b"PTWCPX9" + buf[7:])
    with pytest.raises(CacheError):
        load_pipeline(buf[:40])


def test_selftest_and_simples(capsys):
    code, out, _ = run(capsys, "selftest", "--p", "3", "--n", "2")
    assert code == 0
    code, out, _ = run(capsys, "simples", "--p", "2", "--n", "2", "--format", "structured")
    assert code == 0 and "St" in out
