#!/usr/bin/env python3
"""Count the entries a marker file should load to, independently of the Rust code.

Records are split on "/", lowercased, split into words on whitespace and after
each inner apostrophe, bare punctuation records are dropped, elided final words
get their full companion, and the result is deduplicated.
"""
import re
import sys


def words(record):
    out = []
    for chunk in record.replace("’", "'").lower().split():
        out.extend(w for w in re.split(r"(?<=')", chunk) if w)
    return tuple(out)


def companion(word):
    stem = word[:-1]
    if stem.endswith("qu"):
        return stem + "e"
    return {"d": "de", "s": "si", "l": "le"}.get(stem)


def main(path):
    entries = set()
    records = 0
    for line in open(path, encoding="utf-8"):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        for rec in line.split("/"):
            rec = rec.strip()
            if not rec:
                continue
            records += 1
            ws = words(rec)
            if all(not c.isalnum() for c in "".join(ws)):
                continue
            entries.add(ws)
            if ws[-1].endswith("'"):
                full = companion(ws[-1])
                if full:
                    entries.add(ws[:-1] + (full,))
    elided = sum(1 for e in entries if e[-1].endswith("'"))
    print(f"records={records} entries={len(entries)} elided={elided} "
          f"max_len={max(len(e) for e in entries)}")


if __name__ == "__main__":
    main(sys.argv[1])
