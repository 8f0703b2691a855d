#!/usr/bin/env python3
"""Builds pi_table1.csv: two researchers whose mid-rule percentiles fall into the
PR6 class counts (3,3,1,3,6,7) and (0,5,1,10,14,35).

Every researcher paper is published in its own journal-year with 99 other papers
(unit_id left empty), placed so that `below` of them are cited less.
"""
import csv
import sys

SET_SIZE = 100
# papers cited less than the focal paper -> mid percentile below + 0.5
BELOW = {"top-1%": 99, "95-99%": 97, "90-95%": 92, "75-90%": 82, "50-75%": 62, "0-50%": 25}

PI1 = {
    "top-1%": [400, 300, 250],
    "95-99%": [150, 120, 100],
    "90-95%": [80],
    "75-90%": [50, 40, 35],
    "50-75%": [20, 18, 15, 12, 10, 8],
    "0-50%": [6, 5, 4, 3, 2, 2, 2],
}
PI2 = {
    "top-1%": [],
    "95-99%": [200, 180, 160, 150, 140],
    "90-95%": [100],
    "75-90%": [60, 55, 50, 48, 45, 42, 40, 38, 36, 34],
    "50-75%": [8, 8, 7, 7, 6, 6, 6, 5, 5, 5, 5, 4, 4, 4],
    "0-50%": [4] * 15 + [3] * 20,
}


def mid_percentile(c, population):
    below = sum(1 for x in population if x < c)
    equal = sum(1 for x in population if x == c)
    return 100.0 * (below + equal / 2.0) / len(population)


def main(path):
    assert sum(map(len, PI1.values())) == 23 and sum(sum(v) for v in PI1.values()) == 1632
    assert sum(map(len, PI2.values())) == 65 and sum(sum(v) for v in PI2.values()) == 1578
    rows = []
    journal = 0
    for unit, classes in (("PI1", PI1), ("PI2", PI2)):
        serial = 0
        for label, counts in classes.items():
            for c in counts:
                journal += 1
                serial += 1
                venue = f"J{journal:03d}"
                below = BELOW[label]
                above = SET_SIZE - 1 - below
                background = [c * i // below for i in range(below)]
                background += [c + 1 + 3 * i for i in range(above)]
                pct = mid_percentile(c, background + [c])
                assert pct == below + 0.5, (unit, label, c, pct)
                rows.append((f"{unit}-{serial:02d}", unit, venue, 2007, "article", c))
                for i, b in enumerate(background, 1):
                    rows.append((f"{venue}-R{i:02d}", "", venue, 2007, "article", b))
    with open(path, "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["paper_id", "unit_id", "venue_id", "pub_year", "doc_type", "citations"])
        w.writerows(rows)


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "pi_table1.csv")
