"""Regenerate the bundled UCI tables from a keel-ds wheel.

    pip download keel-ds==0.2.5 --no-deps -d /tmp/dl
    python tools/build_datasets.py /tmp/dl/keel_ds-0.2.5-py3-none-any.whl

KEEL ships Glass only as one-vs-rest relabelings; the six-class table is
rebuilt from the five files that share one numeric rendering (class 3 is
the remainder).
"""
import sys
import zipfile
from pathlib import Path

OUT = Path(__file__).resolve().parents[1] / "src" / "ensemble_knn" / "data"

DIRECT = {
    "iris": "keel_ds/data/balanced/raw/iris.dat",
    "wine": "keel_ds/data/balanced/raw/wine.dat",
    "sonar": "keel_ds/data/balanced/raw/sonar.dat",
    "haberman": "keel_ds/data/imbalanced/raw/haberman.dat",
}
GLASS_PARTS = {"1": "glass0", "2": "glass1", "5": "glass4", "6": "glass5", "7": "glass6"}


def rows(text):
    for line in text.splitlines():
        line = line.strip()
        if line and not line.startswith("@"):
            yield [cell.strip() for cell in line.split(",")]


def write(name, table):
    with open(OUT / f"{name}.csv", "w", newline="\n") as fh:
        for row in table:
            fh.write(",".join(row) + "\n")
    print(f"{name}: {len(table)} rows")


def main(wheel):
    zf = zipfile.ZipFile(wheel)
    read = lambda member: zf.read(member).decode("utf-8")
    for name, member in DIRECT.items():
        write(name, list(rows(read(member))))

    parts = {
        label: list(rows(read(f"keel_ds/data/imbalanced/raw/{stem}.dat")))
        for label, stem in GLASS_PARTS.items()
    }
    base = parts["1"]
    for label, table in parts.items():
        if [r[:-1] for r in table] != [r[:-1] for r in base]:
            raise SystemExit(f"glass part {label} has a different row order")
    glass = []
    for i, row in enumerate(base):
        hits = [label for label, table in parts.items() if table[i][-1] == "positive"]
        if len(hits) > 1:
            raise SystemExit(f"glass row {i} is positive in {hits}")
        glass.append(row[:-1] + [hits[0] if hits else "3"])
    write("glass", glass)


if __name__ == "__main__":
    main(sys.argv[1])
