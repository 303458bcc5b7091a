import subprocess
import sys
from pathlib import Path

SCRIPTS = Path(__file__).resolve().parent.parent / "scripts"


def _run(*args):
    return subprocess.run([sys.executable, *map(str, args)], capture_output=True, text=True, check=False)


def test_reproduce_tables(tmp_path):
    r = _run(SCRIPTS / "reproduce_tables.py", "--out-dir", tmp_path, "--tables", "a92d6-i2", "40bis")
    assert r.returncode == 0, r.stderr
    assert "golden ok" in r.stdout
    assert (tmp_path / "40bis.json").exists() and (tmp_path / "a92d6-i2.txt").exists()


def test_cross_oracle():
    r = _run(SCRIPTS / "cross_oracle.py", "--fibrations", "36", "40bis")
    assert r.returncode == 0, r.stderr
    assert "all routes agree" in r.stdout


def test_verify_weierstrass_without_maps():
    r = _run(SCRIPTS / "verify_weierstrass.py", "--skip-maps")
    assert r.returncode == 0, r.stderr
    assert "torsion invariants (2, 6)" in r.stdout
