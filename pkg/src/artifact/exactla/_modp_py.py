"""Pure-Python modular rank kernel (sparse row elimination)."""
from __future__ import annotations


def rank_mod_p(nrows: int, ncols: int, entries: list[tuple[int, int, int]], p: int) -> int:
    rows: dict[int, dict[int, int]] = {}
    for r, c, v in entries:
        v %= p
        if v:
            row = rows.setdefault(r, {})
            row[c] = (row.get(c, 0) + v) % p
            if not row[c]:
                del row[c]
    # pivot rows keyed by their leading column
    pivots: dict[int, dict[int, int]] = {}
    rank = 0
    for r in sorted(rows):
        row = {c: v for c, v in rows[r].items() if v}
        while row:
            lead = min(row)
            prow = pivots.get(lead)
            if prow is None:
                inv = pow(row[lead], -1, p)
                pivots[lead] = {c: v * inv % p for c, v in row.items()}
                rank += 1
                break
            f = row[lead]
            for c, v in prow.items():
                nv = (row.get(c, 0) - f * v) % p
                if nv:
                    row[c] = nv
                else:
                    row.pop(c, None)
    return rank
