#!/usr/bin/env python3
"""Regenerates the candidate goldens with the oracle and compares byte for byte."""
import argparse
import pathlib
import subprocess
import sys

ROOT = pathlib.Path(__file__).resolve().parents[2]


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--out", required=True, type=pathlib.Path)
    args = parser.parse_args()
    subprocess.run([sys.executable, str(ROOT / "tests/oracle/candidates_oracle.py"),
                    "--wordnet-dir", str(ROOT / "tests/fixtures/wordnet"),
                    "--features", str(ROOT / "data/phonetic_features.tsv"),
                    "--out", str(args.out)], check=True)
    golden = ROOT / "tests/golden/candidates"
    names = sorted(p.name for p in golden.glob("*.csv"))
    produced = sorted(p.name for p in args.out.glob("*.csv"))
    ok = names == produced and names
    for name in names:
        same = (args.out / name).exists() and (args.out / name).read_bytes() == (golden / name).read_bytes()
        print(f"{'same' if same else 'DIFFERS'}: {name}")
        ok = ok and same
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
