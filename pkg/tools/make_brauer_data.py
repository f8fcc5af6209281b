"""Regenerate the bundled Brauer tables from hand-entered values.

Class metadata (sizes, centralizers, power maps) comes from the computed
ordinary table; only the p-regular columns are kept.  The values below are
the standard small-group Brauer tables.  Every file is reloaded (and so
verified) after writing.
"""
from pathlib import Path

from charinv.chartab import dixon_schneider
from charinv.chartab.io import dumps_table, loads_table
from charinv.chartab.table import BrauerTable, ClassInfo, sort_rows
from charinv.cyclo import Cyc
from charinv.groups import construct_named

OUT = Path(__file__).resolve().parents[1] / "src" / "charinv" / "data" / "brauer"
w = Cyc.zeta(3)

# (file stem, group, prime, rows over the p-regular columns in class order)
TABLES = [
    ("s3_p2", "sym:3", 2, [[1, 1], [2, -1]]),
    ("s3_p3", "sym:3", 3, [[1, 1], [1, -1]]),
    ("a4_p2", "alt:4", 2, [[1, 1, 1], [1, w, w * w], [1, w * w, w]]),
    ("a4_p3", "alt:4", 3, [[1, 1], [3, -1]]),
    ("s4_p2", "sym:4", 2, [[1, 1], [2, -1]]),
    ("s4_p3", "sym:4", 3, [[1, 1, 1, 1], [1, 1, -1, -1], [3, -1, 1, -1], [3, -1, -1, 1]]),
]


def build(spec, p, rows):
    T = dixon_schneider(construct_named(spec))
    keep = [i for i, c in enumerate(T.classes) if c.element_order % p]
    where = {old: new for new, old in enumerate(keep)}
    classes = [
        ClassInfo(c.size, c.centralizer, c.element_order,
                  {q: where[j] for q, j in c.power_maps.items()}, c.label)
        for c in (T.classes[i] for i in keep)
    ]
    irr = sort_rows([[Cyc(v) if not isinstance(v, Cyc) else v for v in r] for r in rows])
    return BrauerTable(f"{spec} mod {p}", T.order, classes, irr, p, ordinary_ref=spec)


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    for stem, spec, p, rows in TABLES:
        text = dumps_table(build(spec, p, rows))
        loads_table(text, stem)
        (OUT / f"{stem}.tbl").write_text(text, encoding="utf-8")
        print("wrote", stem)


if __name__ == "__main__":
    main()
