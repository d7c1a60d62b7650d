"""Order-theoretic arrays and tableaux over a poset.

Two layouts are used throughout:

* column layout (``cols``): a tuple of columns, each a top-to-bottom tuple.
  This is the faithful form for tableaux and for ragged column-shaped
  arrays; columns must increase downward in the poset order.
* row layout (``rows``): a tuple of rows, used for the row-shaped arrays
  whose rows must be powersum words (see `is_powerful_array`).

The textual form everywhere is rows joined by "/" with comma-separated
entries, e.g. "1,2,4/3,5/6".
"""

from __future__ import annotations

from dataclasses import dataclass

from .qcore import QPoly, check_partition, compositions_with_sort, conjugate, sort_desc


# ---------------------------------------------------------------------------
# layout plumbing
# ---------------------------------------------------------------------------

def col_heights(cols):
    return tuple(len(c) for c in cols)


def shape_from_cols(cols):
    """Row-shape partition of a column layout (heights must be weakly decreasing)."""
    h = col_heights(cols)
    if any(h[i] < h[i + 1] for i in range(len(h) - 1)):
        raise ValueError(f"column heights not weakly decreasing: {h}")
    return conjugate(h)


def cols_to_rows(cols):
    if not cols:
        return ()
    nrows = max(len(c) for c in cols)
    return tuple(
        tuple(c[i] for c in cols if len(c) > i) for i in range(nrows)
    )


def rows_to_cols(rows):
    if not rows:
        return ()
    ncols = max(len(r) for r in rows)
    return tuple(
        tuple(r[j] for r in rows if len(r) > j) for j in range(ncols)
    )


def rows_to_text(rows):
    return "/".join(",".join(str(v) for v in row) for row in rows)


def text_to_rows(text):
    text = text.strip()
    if not text:
        return ()
    return tuple(
        tuple(int(tok) for tok in part.split(",")) for part in text.split("/")
    )


def tableau_to_text(cols):
    return rows_to_text(cols_to_rows(cols))


def text_to_tableau(text):
    return rows_to_cols(text_to_rows(text))


# ---------------------------------------------------------------------------
# validity and statistics
# ---------------------------------------------------------------------------

def is_p_array(p, cols):
    """Columns are chains, increasing downward."""
    return all(
        p.less(c[i], c[i + 1]) for c in cols for i in range(len(c) - 1)
    )


def is_p_tableau(p, cols):
    """A column-increasing array whose rows never step strictly down in P."""
    if not is_p_array(p, cols):
        return False
    for j in range(len(cols) - 1):
        a, b = cols[j], cols[j + 1]
        for i in range(min(len(a), len(b))):
            if p.less(b[i], a[i]):  # left entry strictly above right one
                return False
    return True


def colword(cols):
    """Entries read bottom-to-top within each column, columns left to right."""
    out = []
    for c in cols:
        out.extend(reversed(c))
    return tuple(out)


def inv_word(p, w):
    """Pairs read in decreasing label order whose entries are incomparable."""
    return sum(
        1
        for s in range(len(w))
        for t in range(s + 1, len(w))
        if w[s] > w[t] and p.same_or_incomparable(w[s], w[t])
    )


def inv_p(p, x):
    """Inversion count of a word, or of a tableau given in column layout."""
    if x and isinstance(x[0], tuple):
        return inv_word(p, colword(x))
    return inv_word(p, x)


def eval_q(p, w):
    """q^inv for words that use every element exactly once; zero otherwise."""
    if sorted(w) != list(range(1, p.n + 1)):
        return QPoly.zero()
    return QPoly.monomial(inv_word(p, w))


def eval_q_partial(p, w):
    """q^inv for repeat-free words; zero when any entry repeats."""
    if len(set(w)) != len(w):
        return QPoly.zero()
    return QPoly.monomial(inv_word(p, w))


# ---------------------------------------------------------------------------
# enumeration of standard tableaux
# ---------------------------------------------------------------------------

def enumerate_standard(p, lam):
    """All tableaux of the given row shape using each of 1..n once.

    Cells are filled along the column word (leftmost column bottom-to-top
    first) trying small values first, so the output is sorted by column word.
    """
    lam = check_partition(lam)
    if sum(lam) != p.n:
        raise ValueError(f"shape {lam} does not use {p.n} entries")
    if not lam:
        return [()]
    heights = conjugate(lam)
    ncols = lam[0]
    cells = [
        (j, i) for j in range(ncols) for i in range(heights[j] - 1, -1, -1)
    ]
    grid = [[None] * heights[j] for j in range(ncols)]
    used = [False] * (p.n + 1)
    out = []

    def place(idx):
        if idx == len(cells):
            out.append(tuple(tuple(c) for c in grid))
            return
        j, i = cells[idx]
        below = grid[j][i + 1] if i + 1 < heights[j] else None
        left = grid[j - 1][i] if j else None
        for v in range(1, p.n + 1):
            if used[v]:
                continue
            if below is not None and not p.less(v, below):
                continue
            if left is not None and p.less(v, left):
                continue
            used[v] = True
            grid[j][i] = v
            place(idx + 1)
            used[v] = False
        grid[j][i] = None

    place(0)
    return out


# ---------------------------------------------------------------------------
# ladders
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Ladder:
    """One incomparability component across an adjacent column pair."""

    column: int  # 1-based index of the left column
    left: tuple  # ((row, value), ...) in the left column, rows 1-based
    right: tuple
    balance: str  # "balanced" | "left_unbalanced" | "right_unbalanced"


def ladders(p, cols, i):
    """Incomparability components between columns i and i+1 (1-based)."""
    if not (1 <= i < len(cols)):
        raise ValueError(f"no column pair at {i} in shape {col_heights(cols)}")
    left = [(r + 1, v) for r, v in enumerate(cols[i - 1])]
    right = [(r + 1, v) for r, v in enumerate(cols[i])]
    nodes = [("L", rv) for rv in left] + [("R", rv) for rv in right]
    parent = {node: node for node in nodes}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for lnode in left:
        for rnode in right:
            if p.incomparable(lnode[1], rnode[1]):
                ra, rb = find(("L", lnode)), find(("R", rnode))
                if ra != rb:
                    parent[ra] = rb
    groups = {}
    for node in nodes:
        groups.setdefault(find(node), []).append(node)
    out = []
    for members in groups.values():
        lpart = tuple(sorted(rv for side, rv in members if side == "L"))
        rpart = tuple(sorted(rv for side, rv in members if side == "R"))
        if len(lpart) == len(rpart):
            bal = "balanced"
        elif len(lpart) > len(rpart):
            bal = "left_unbalanced"
        else:
            bal = "right_unbalanced"
        out.append(Ladder(column=i, left=lpart, right=rpart, balance=bal))
    out.sort(key=lambda k: min(k.left + k.right))
    return out


def _sort_chain(p, values):
    vals = list(values)
    depth = {v: sum(1 for u in vals if p.less(u, v)) for v in vals}
    return tuple(sorted(vals, key=depth.__getitem__))


def ladder_swap(p, cols, ladder):
    """Exchange the two sides of an unbalanced ladder between its columns.

    The element counts of the two columns move one step toward the larger
    side's column; the result is validated as a column-increasing array.
    """
    if ladder.balance == "balanced":
        raise ValueError("refusing to swap a balanced ladder")
    i = ladder.column
    lvals = {v for _, v in ladder.left}
    rvals = {v for _, v in ladder.right}
    new_left = [v for v in cols[i - 1] if v not in lvals] + sorted(rvals)
    new_right = [v for v in cols[i] if v not in rvals] + sorted(lvals)
    new_cols = list(cols)
    new_cols[i - 1] = _sort_chain(p, new_left)
    new_cols[i] = _sort_chain(p, new_right)
    new_cols = tuple(new_cols)
    if not is_p_array(p, new_cols):
        raise AssertionError("ladder swap produced a non-chain column")
    old_h, new_h = col_heights(cols), col_heights(new_cols)
    delta = 1 if ladder.balance == "right_unbalanced" else -1
    expected = list(old_h)
    expected[i - 1] += delta
    expected[i] -= delta
    if list(new_h) != expected:
        raise AssertionError(
            f"swap changed shape {old_h} -> {new_h}, expected {tuple(expected)}"
        )
    return new_cols


def has_right_unbalanced(p, cols):
    return any(
        lad.balance == "right_unbalanced"
        for i in range(1, len(cols))
        for lad in ladders(p, cols, i)
    )


def is_strong(p, cols):
    """No adjacent column pair carries a right-unbalanced ladder."""
    return not has_right_unbalanced(p, cols)


def is_strong_by_matching(p, cols):
    """Independent check: each column injects into its left neighbor through
    incomparable partners (bipartite matching)."""
    for i in range(1, len(cols)):
        left, right = cols[i - 1], cols[i]
        match = {}

        def try_assign(ridx, seen):
            for lidx, lval in enumerate(left):
                if lidx in seen or not p.same_or_incomparable(right[ridx], lval):
                    continue
                seen.add(lidx)
                if match.get(lidx) is None or try_assign(match[lidx], seen):
                    match[lidx] = ridx
                    return True
            return False

        count = sum(1 for r in range(len(right)) if try_assign(r, set()))
        if count < len(right):
            return False
    return True


# ---------------------------------------------------------------------------
# powersum words and row-shaped arrays
# ---------------------------------------------------------------------------

def is_powersum_word(p, w):
    """No adjacent step down in P, and no position other than the last that
    sits below everything to its right."""
    for i in range(len(w) - 1):
        if p.less(w[i + 1], w[i]):
            return False
    for i in range(len(w) - 1):
        if all(p.less(w[i], w[j]) for j in range(i + 1, len(w))):
            return False
    return True


def is_powerful_array(p, rows):
    if not all(rows) or not rows:
        return False
    for row in rows:
        if not is_powersum_word(p, row):
            return False
    ncols = max(len(r) for r in rows)
    for t in range(ncols):
        present = [r for r in range(len(rows)) if len(rows[r]) > t]
        for a in range(len(present)):
            for b in range(a + 1, len(present)):
                if not p.less(rows[present[a]][t], rows[present[b]][t]):
                    return False
    for r in range(len(rows)):
        last = rows[r][-1]
        for s in range(r + 1, len(rows)):
            for t in range(len(rows[r]), len(rows[s])):
                if not p.less(last, rows[s][t]):
                    return False
    return True


def tab(p, rows):
    """Top-justify the columns of a row-shaped powerful array."""
    rows = tuple(tuple(r) for r in rows)
    if not is_powerful_array(p, rows):
        raise ValueError(f"not a powerful array: {rows_to_text(rows)}")
    return rows_to_cols(rows)


def _leftmost_rl_minimum(p, w):
    for i in range(len(w)):
        if all(p.less(w[i], w[j]) for j in range(i + 1, len(w))):
            return i
    raise AssertionError("the final position is always a minimum")


def tab_inverse(p, cols):
    """Unique row-shaped preimage under `tab`, or None when there is none.

    Peels the top row of the leading columns: the next array row always ends
    at the leftmost position of the current first row that sits below the
    whole remainder.  The candidate is validated wholesale at the end, so a
    failed reconstruction can only return None, never a wrong array.
    """
    original = tuple(tuple(c) for c in cols)
    work = [list(c) for c in original if c]
    rows = []
    while work:
        first_row = tuple(c[0] for c in work)
        cut = _leftmost_rl_minimum(p, first_row) + 1
        row = first_row[:cut]
        if not is_powersum_word(p, row):
            return None
        rows.append(row)
        for j in range(cut):
            work[j].pop(0)
        work = [c for c in work if c]
        work_heights = [len(c) for c in work]
        if any(
            work_heights[i] < work_heights[i + 1]
            for i in range(len(work_heights) - 1)
        ):
            return None
    rows = tuple(rows)
    if not is_powerful_array(p, rows):
        return None
    if rows_to_cols(rows) != original:
        return None
    return rows


def enumerate_powerful_arrays(p, lam):
    """All row-shaped powerful arrays using 1..n once, over every ordering
    of lam's parts.  Returned as (row_shape, rows) pairs."""
    lam = check_partition(lam)
    if sum(lam) != p.n:
        raise ValueError(f"shape {lam} does not use {p.n} entries")
    if not lam:
        return [((), ())]
    out = []
    for alpha in compositions_with_sort(lam):
        rows = []
        used = [False] * (p.n + 1)

        def fill_row(ridx, pos, row):
            target = alpha[ridx]
            if pos == target:
                if not is_powersum_word(p, row):
                    return
                rows.append(tuple(row))
                if ridx + 1 == len(alpha):
                    out.append((alpha, tuple(rows)))
                else:
                    fill_row(ridx + 1, 0, [])
                rows.pop()
                return
            for v in range(1, p.n + 1):
                if used[v]:
                    continue
                if pos and p.less(v, row[pos - 1]):
                    continue  # a step down in P inside the row
                ok = True
                for r in range(ridx):
                    prev = rows[r]
                    anchor = prev[pos] if len(prev) > pos else prev[-1]
                    if not p.less(anchor, v):
                        ok = False
                        break
                if not ok:
                    continue
                used[v] = True
                row.append(v)
                fill_row(ridx, pos + 1, row)
                row.pop()
                used[v] = False

        fill_row(0, 0, [])
    return out


def enumerate_class(p, lam, which):
    """Standard tableaux of a shape, optionally filtered to the strong ones
    or replaced by the image of the powerful arrays."""
    if which == "standard":
        return enumerate_standard(p, lam)
    if which == "strong":
        return [t for t in enumerate_standard(p, lam) if is_strong(p, t)]
    if which == "powerful":
        images = {rows_to_cols(rows) for _, rows in enumerate_powerful_arrays(p, lam)}
        return sorted(images, key=colword)
    raise ValueError(f"unknown tableau class {which!r}")
