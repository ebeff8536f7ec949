"""Exit codes and paper-suite behaviour of the solnscope executable."""

import json
import shutil
import subprocess
import sys
import tempfile
from pathlib import Path


def run(exe, *args):
    return subprocess.run([exe, *map(str, args)], capture_output=True, text=True)


def main():
    exe, root = sys.argv[1], Path(sys.argv[2])
    problems = []

    def expect(cond, what):
        if not cond:
            problems.append(what)

    with tempfile.TemporaryDirectory() as tmp:
        tmp = Path(tmp)

        def spec(name, body):
            p = tmp / name
            p.write_text(body)
            return p

        ok = spec("ok.spec", "kind = regularized\nfunction = hinge(x1)\nA = [[0,1]]\nb = [1]\n")
        r = run(exe, "run", ok)
        expect(r.returncode == 0, f"plain run exit {r.returncode}")
        expect("(-inf,0] x {1}" in r.stdout, "plain run misses X")
        expect(run(exe, "run", ok).stdout == r.stdout, "run output not byte-identical")

        r = run(exe, "run", ok, "--json", "--checks", "existence,compactness")
        expect(r.returncode == 0, f"json run exit {r.returncode}")
        doc = json.loads(r.stdout)
        groups = {row["group"] for row in doc["rows"]}
        expect(groups <= {"existence", "compactness"}, f"--checks leaked groups {groups}")

        bad = spec("bad.spec", "kind = regularized\nfunction = hinge(x1\nA = [[0,1]]\nb = [1]\n")
        r = run(exe, "run", bad)
        expect(r.returncode == 2, f"parse error exit {r.returncode}")
        expect("line 2, column 17" in r.stderr, f"parse error position missing: {r.stderr!r}")

        dim = spec("dim.spec", "kind = regularized\nfunction = hinge(x1)\nA = [[0,1]]\nb = [1,2]\n")
        expect(run(exe, "run", dim).returncode == 2, "dimension error exit")
        unk = spec("unk.spec", "kind = regularized\nfunction = wobble(x1)\nA = [[0,1]]\nb = [1]\n")
        expect(run(exe, "run", unk).returncode == 2, "unknown atom exit")
        expect(run(exe, "run", tmp / "missing.spec").returncode == 2, "missing file exit")

        und = spec("und.spec", "kind = regularized\nfunction = exp(x1) + exp(x2)\nA = [[1,0],[0,1]]\nb = [1,1]\n")
        r = run(exe, "run", und)
        expect(r.returncode == 1, f"undecidable exit {r.returncode}")
        expect("undecidable: " in r.stdout, "undecidable rows not marked")

        # suite into a directory that does not exist yet
        out = tmp / "a" / "b"
        r = run(exe, "paper-suite", out)
        expect(r.returncode == 0, f"paper-suite exit {r.returncode}: {r.stdout}{r.stderr}")
        expect(len(list(out.glob("*.txt"))) == 12, "paper-suite did not write 12 text reports")
        expect(len(list(out.glob("*.json"))) == 12, "paper-suite did not write 12 json reports")
        r = run(exe, "--paper-suite", tmp / "flag")
        expect(r.returncode == 0, f"--paper-suite exit {r.returncode}")

        # perturbed golden
        data = tmp / "data"
        shutil.copytree(root / "specs", data / "specs")
        shutil.copytree(root / "goldens", data / "goldens")
        g = data / "goldens" / "p1_ex3.txt"
        g.write_text(g.read_text().replace("X                               | (-inf,0] x {1}",
                                           "X                               | (-inf,1] x {1}"))
        r = run(exe, "paper-suite", tmp / "perturbed", "--data", data)
        expect(r.returncode == 3, f"perturbed golden exit {r.returncode}")
        expect("p1_ex3" in r.stdout + r.stderr, "mismatch report does not name the instance")
        expect("(-inf,1] x {1}" in r.stdout + r.stderr, "mismatch report does not show the row")

    for p in problems:
        print("FAIL:", p)
    print(f"{len(problems)} problems")
    return 1 if problems else 0


if __name__ == "__main__":
    sys.exit(main())
