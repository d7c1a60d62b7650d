"""Structural identities for powerful-tableau families.

Three groups of operations live here, all downstream of the tableau
machinery:

* concatenation of column arrays, the greedy-partition displacement family,
  and full-column extension for shapes whose length matches the longest
  chain — together these produce partitions whose elementary coefficient is
  a plain sum of q^inv over strong tableaux;
* the two-row factorization/multiplication machinery: every powersum word of
  length k splits into a 2-letter and a (k-2)-letter word, the pairs missed
  by that splitting are characterized by five mutually exclusive relation
  patterns, and gluing each missed pair back into a two-row array yields the
  distinguished family K(n-2, 2) sitting between the strong and powerful
  standard tableaux;
* peak vectors for bijective powerful arrays over the path order, which
  reduce enumeration and inversion counting to a product-form recurrence.

Everything is exact.  Identities that the construction is supposed to
guarantee (case exclusivity, powersum outputs, inversion preservation,
injectivity, dual-route agreement) are re-checked at runtime and raise
RuntimeError when violated, so a breach is loud rather than silent.
"""

import itertools
from dataclasses import dataclass

from .qcore import check_partition, conjugate, partitions, remove_first_column
from .posets import (
    max_chain_length,
    greedy_partition,
    natural_unit_m,
    path_hessenberg,
    poset_from_hessenberg,
)
from .tableaux import (
    colword,
    inv_word,
    is_p_tableau,
    is_powersum_word,
    is_powerful_array,
    tab,
    tab_inverse,
)


# ---------------------------------------------------------------------------
# concatenation and the greedy displacement family
# ---------------------------------------------------------------------------

def concat(s_cols, t_cols):
    """Columns of the first array followed by the columns of the second.

    No validity checking happens here: concatenation is used both on
    tableaux (partition column shapes) and on ragged arrays, and the caller
    decides which predicate the result must satisfy.
    """
    return tuple(tuple(c) for c in s_cols) + tuple(tuple(c) for c in t_cols)


def greedy_shape_family(p, cuts, weights):
    """Partition obtained by displacing the greedy chain partition.

    ``cuts`` is a set of row indices (1-based, no two adjacent); row i of the
    greedy partition shrinks by ``weights[i]`` and row i+1 grows by the same
    amount.  The displaced row lengths must again form a partition, which is
    returned conjugated (so the result is a column-length shape).  For every
    member of this family the elementary coefficient equals the inversion
    generating function of the strong standard tableaux of that shape.
    """
    cuts = set(cuts)
    gr = greedy_partition(p)
    for i in cuts:
        if not isinstance(i, int) or not 1 <= i <= p.n:
            raise ValueError(f"cut index out of range: {i!r}")
        if i + 1 in cuts:
            raise ValueError(f"adjacent cut indices: {i} and {i + 1}")
    if set(weights) != cuts:
        raise ValueError("weights must be keyed exactly by the cut indices")
    for i, w in weights.items():
        if not isinstance(w, int) or w <= 0:
            raise ValueError(f"displacement at {i} must be a positive integer")

    top = max([len(gr)] + [i + 1 for i in cuts])
    parts = []
    for i in range(1, top + 1):
        size = gr[i - 1] if i <= len(gr) else 0
        if i in cuts:
            size -= weights[i]
        if i - 1 in cuts:
            size += weights[i - 1]
        parts.append(size)
    while parts and parts[-1] == 0:
        parts.pop()
    mu = tuple(parts)
    try:
        mu = check_partition(mu)
    except ValueError:
        raise ValueError(
            f"displaced rows {mu} do not form a partition"
        ) from None
    return conjugate(mu)


# ---------------------------------------------------------------------------
# powersum word factorization
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FactorPair:
    """A 2-letter and a (k-2)-letter powersum word, kept in order."""

    a: tuple
    b: tuple

    def __iter__(self):
        return iter((self.a, self.b))


def r_index(p, w):
    """Least position whose letter is incomparable to its right neighbour."""
    for i in range(len(w) - 1):
        if p.incomparable(w[i], w[i + 1]):
            return i + 1
    raise ValueError(f"no incomparable adjacent letters in {w!r}")


def powersum_words(p, length, pool=None):
    """All injective powersum words of the given length over ``pool``.

    ``pool`` defaults to every element of the poset; words draw distinct
    letters from it in any order.
    """
    if pool is None:
        pool = p.elements()
    out = []
    for combo in itertools.combinations(pool, length):
        for word in itertools.permutations(combo):
            if is_powersum_word(p, word):
                out.append(word)
    return out


def factorize(p, w):
    """Split a powersum word of length k > 2 into a 2 + (k-2) pair.

    The split swaps only comparable adjacent letters, so the inversion count
    of the concatenated pair matches the input; that and the powersum-ness of
    both halves are re-checked on every call.
    """
    w = tuple(w)
    if len(w) <= 2:
        raise ValueError(f"need at least 3 letters, got {len(w)}")
    if not is_powersum_word(p, w):
        raise ValueError(f"not a powersum word: {w!r}")
    r = r_index(p, w)

    if r == 1:
        a, b = w[:2], w[2:]
    elif p.less(w[r - 2], w[r]):
        a, b = (w[r - 1], w[r]), w[: r - 1] + w[r + 1 :]
    elif p.incomparable(w[r - 2], w[r]):
        if any(not p.less(w[r - 2], w[j]) for j in range(r + 1, len(w))):
            a, b = (w[r], w[r - 1]), w[: r - 1] + w[r + 1 :]
        else:
            if r != 2:
                raise RuntimeError(
                    f"blocked split should only happen at position 2, got {r}"
                )
            a, b = (w[2], w[0]), (w[1],) + w[3:]
    else:
        raise RuntimeError(
            f"letter below its second-left neighbour in powersum word {w!r}"
        )

    if not is_powersum_word(p, a) or not is_powersum_word(p, b):
        raise RuntimeError(f"split of {w!r} produced a non-powersum half")
    if inv_word(p, a + b) != inv_word(p, w):
        raise RuntimeError(f"split of {w!r} changed the inversion count")
    return FactorPair(a, b)


def _missed_pattern(p, a, b):
    """Which of the five relation patterns (1..5) the pair matches, or 0.

    A pair of powersum words lies outside the factorization image exactly
    when one pattern matches.  The patterns are pairwise exclusive for any
    pair at all, so more than one match means the relation data is corrupt.
    """
    r = r_index(p, b)
    below_all = all(p.less(a[1], x) for x in b)
    tail_up = all(p.less(a[0], b[j]) for j in range(1, len(b)))
    hits = []
    if below_all and p.less(a[0], b[0]):
        hits.append(1)
    if below_all and p.incomparable(a[0], b[0]) and tail_up:
        hits.append(2)
    if p.incomparable(b[0], a[0]) and p.less(b[0], a[1]) and tail_up:
        hits.append(3)
    if p.less(b[r - 1], a[0]) and p.less(b[r - 1], a[1]) and p.less(b[r], a[1]):
        hits.append(4)
    if p.incomparable(b[r - 1], a[0]) and p.less(b[r - 1], a[1]) and p.less(b[r], a[0]):
        hits.append(5)
    if len(hits) > 1:
        raise RuntimeError(f"patterns {hits} overlap on pair ({a!r}, {b!r})")
    return hits[0] if hits else 0


def complemented_set(p, k):
    """Disjoint-support word pairs missed by the length-k factorization.

    Computed twice — as the literal set complement of the factorization
    image inside all disjoint-support (2, k-2) powersum pairs, and directly
    from the five relation patterns — and the two answers must agree.
    """
    if k <= 4:
        raise ValueError(f"need k > 4, got {k}")
    universe = set()
    for a in powersum_words(p, 2):
        sa = set(a)
        for b in powersum_words(p, k - 2):
            if sa.isdisjoint(b):
                universe.add(FactorPair(a, tuple(b)))

    image = {factorize(p, w) for w in powersum_words(p, k)}
    by_image = universe - image
    by_pattern = {fp for fp in universe if _missed_pattern(p, fp.a, fp.b)}
    if by_image != by_pattern:
        diff = by_image.symmetric_difference(by_pattern)
        raise RuntimeError(
            f"complement routes disagree on {len(diff)} pairs, e.g. {next(iter(diff))}"
        )
    return by_image


# ---------------------------------------------------------------------------
# multiplication into two-row tableaux
# ---------------------------------------------------------------------------

def mult_map(p, pair):
    """Glue a missed pair into a powerful two-row tableau of shape (k-2, 2).

    The row arrangement is dictated by which relation pattern the pair
    matches; a pair matching none (i.e. one that the factorization does hit)
    is rejected.  The result always evaluates like the concatenated pair:
    its column word has the same inversion count.
    """
    a, b = pair
    a, b = tuple(a), tuple(b)
    for half in (a, b):
        if not is_powersum_word(p, half):
            raise ValueError(f"not a powersum word: {half!r}")
    if len(a) != 2 or len(b) < 3:
        raise ValueError("expected a 2-letter and a (k-2)-letter word, k > 4")
    pattern = _missed_pattern(p, a, b)
    if pattern == 0:
        raise ValueError(f"pair ({a!r}, {b!r}) is in the factorization image")

    if pattern == 1:
        rows = (a, b)
    elif pattern == 2:
        rows = ((a[1], a[0]), b)
    elif pattern == 3:
        rows = ((b[0], a[0]), (a[1],) + b[1:])
    elif pattern == 4:
        rows = (b, a)
    else:
        r = r_index(p, b)
        rows = (b, (a[1], a[0])) if r == 1 else (b, a)

    cols = tab(p, rows)
    if inv_word(p, colword(cols)) != inv_word(p, a + b):
        raise RuntimeError(f"gluing ({a!r}, {b!r}) changed the inversion count")
    return cols


def in_mult_image(p, cols):
    """Whether a powerful (k-2, 2) tableau is glued from some missed pair.

    Decided from the tableau's unique row-shaped preimage alone, with no
    reference to the gluing map — an independent route used to cross-check
    the image computed by ``K_set``.
    """
    rows = tab_inverse(p, cols)
    if rows is None:
        raise ValueError("not a powerful tableau")
    lengths = tuple(len(r) for r in rows)
    if len(lengths) != 2 or sorted(lengths) != [2, sum(lengths) - 2]:
        raise ValueError(f"expected two rows of sizes (k-2, 2), got {lengths}")
    if lengths[0] == 2:
        return True
    v, w = rows
    r = r_index(p, v)
    if r == 1:
        return True
    if p.less(v[r - 1], w[0]) and p.less(v[r - 1], w[1]) and p.less(v[r], w[1]):
        return True
    return (
        p.incomparable(v[r - 1], w[0])
        and p.less(v[r - 1], w[1])
        and p.less(v[r], w[0])
    )


def K_set(p):
    """The distinguished standard tableaux of shape (n-2, 2).

    Image of the full complemented set under the gluing map; since the word
    pairs use every element once, each image tableau is standard.  The sum
    of q^inv over this set is the elementary coefficient of (n-2, 2), and
    the set sits between the strong and powerful standard tableaux.
    """
    n = p.n
    if n <= 4:
        raise ValueError(f"shape (n-2, 2) needs n > 4, got {n}")
    missed = complemented_set(p, n)
    out = {mult_map(p, fp) for fp in missed}
    if len(out) != len(missed):
        raise RuntimeError("gluing map collided on distinct pairs")
    return out


# ---------------------------------------------------------------------------
# peak vectors over the path order
# ---------------------------------------------------------------------------

def _path_poset(n):
    return poset_from_hessenberg(path_hessenberg(n))


def peak(rows, p=None):
    """Positions of each row's maximum in a bijective powerful path array."""
    rows = tuple(tuple(r) for r in rows)
    n = sum(len(r) for r in rows)
    if p is None:
        p = _path_poset(n)
    elif p.n != n or natural_unit_m(p) != path_hessenberg(p.n):
        raise ValueError("rows must form an array over the path order")
    if sorted(x for r in rows for x in r) != list(range(1, n + 1)):
        raise ValueError("array is not bijective onto 1..n")
    if not is_powerful_array(p, rows):
        raise ValueError("not a powerful array")
    return tuple(r.index(max(r)) + 1 for r in rows)


def _peak_admissible(alpha, rvec):
    for i in range(1, len(alpha)):
        if rvec[i] == 1:
            if rvec[i - 1] == min(alpha[i], alpha[i - 1]):
                return False
        elif rvec[i - 1] == 1:
            return False
    return True


def _peak_rows(alpha, rvec):
    rows = []
    z = 0
    for size, r in zip(alpha, rvec):
        rows.append(
            tuple(range(z + 1, z + r)) + tuple(range(z + size, z + r - 1, -1))
        )
        z += size
    return tuple(rows)


def peak_inversions(alpha, rvec):
    """Closed-form inversion count of the array with the given peak vector.

    Row i contributes alpha_i - r_i inversions internally, plus one against
    the next row unless that row's maximum sits first and points left of it;
    the last row has no next row and contributes nothing extra.
    """
    total = 0
    last = len(alpha) - 1
    for i, (size, r) in enumerate(zip(alpha, rvec)):
        total += size - r
        if i < last and not (rvec[i + 1] == 1 and r < alpha[i + 1]):
            total += 1
    return total


def bpa_enumerate(n, alpha):
    """All bijective powerful arrays over the path order with given row sizes.

    Generates the admissible peak vectors directly and materializes each row
    as its forced consecutive block, ascending up to the peak and descending
    after it.
    """
    alpha = tuple(alpha)
    if not alpha or any(not isinstance(a, int) or a <= 0 for a in alpha):
        raise ValueError(f"row sizes must be positive integers: {alpha!r}")
    if sum(alpha) != n:
        raise ValueError(f"row sizes {alpha} do not total {n}")
    out = set()
    for rvec in itertools.product(*[range(1, a + 1) for a in alpha]):
        if _peak_admissible(alpha, rvec):
            out.add(_peak_rows(alpha, rvec))
    return out


# ---------------------------------------------------------------------------
# full-column extension at maximal chain length
# ---------------------------------------------------------------------------

def _chains(p, r):
    out = []
    for combo in itertools.combinations(p.elements(), r):
        ordered = tuple(
            sorted(combo, key=lambda x: sum(1 for y in combo if p.less(y, x)))
        )
        if all(p.less(ordered[i], ordered[i + 1]) for i in range(r - 1)):
            out.append(ordered)
    return out


def maxchain_extend(p, lam, key_inner):
    """Prepend full-height chain columns to a family of inner tableaux.

    Valid only when the shape's length equals the longest chain of the
    poset; then the tableaux of shape ``lam`` whose first-column removal
    lands in ``key_inner`` are exactly the valid chain-prepends, and they
    inherit the inner family's coefficient property.
    """
    lam = check_partition(lam)
    r = len(lam)
    if r != max_chain_length(p):
        raise ValueError(
            f"shape length {r} must equal the longest chain {max_chain_length(p)}"
        )
    inner = [tuple(tuple(c) for c in t) for t in key_inner]
    want = conjugate(remove_first_column(lam))
    for t in inner:
        if tuple(len(c) for c in t) != want:
            raise ValueError(f"inner tableau has column heights "
                             f"{tuple(len(c) for c in t)}, expected {want}")
    out = set()
    for column in _chains(p, r):
        taken = set(column)
        for t in inner:
            if any(taken.intersection(c) for c in t):
                continue
            cand = (column,) + t
            if is_p_tableau(p, cand):
                out.add(cand)
    return out


# ---------------------------------------------------------------------------
# monomial structure coefficients
# ---------------------------------------------------------------------------

def m_product_coeffs(mu, nu):
    """Structure coefficients of a product of two monomial symmetric functions.

    Returns {partition: coefficient} over partitions of |mu| + |nu|, computed
    by counting exponent-vector pairs in as many variables as the two lengths
    combined (enough for every partition that can appear).  The coefficient
    of the componentwise sum is always 1, and every partition appearing is
    dominated by that sum.
    """
    mu, nu = check_partition(mu), check_partition(nu)
    width = len(mu) + len(nu)
    if width == 0:
        return {(): 1}
    vecs_mu = set(itertools.permutations(mu + (0,) * (width - len(mu))))
    vecs_nu = set(itertools.permutations(nu + (0,) * (width - len(nu))))
    out = {}
    for eta in partitions(sum(mu) + sum(nu)):
        if len(eta) > width:
            continue
        target = eta + (0,) * (width - len(eta))
        count = 0
        for u in vecs_mu:
            w = tuple(t - x for t, x in zip(target, u))
            if all(c >= 0 for c in w) and w in vecs_nu:
                count += 1
        if count:
            out[eta] = count
    return out
