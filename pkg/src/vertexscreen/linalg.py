"""Exact linear algebra over Q or Q(x).

Row reduction is fraction-free in spirit: rows are rescaled to clear
denominators and stripped of content after every elimination step, which
keeps polynomial growth in check at the sizes this engine works with.
"""

from fractions import Fraction

from .scalars import RationalFunction, p_div_exact, p_gcd, p_mul, P_ONE


def _p_lcm(a, b):
    g = p_gcd(a, b)
    return p_mul(a, p_div_exact(b, g))


def _strip_row(row, field, factor_sink=None):
    """Scale a row by a nonzero scalar to a small canonical form.

    A common polynomial factor of a row vanishes at its roots, so when a
    factor_sink is supplied every stripped factor is recorded there (its
    roots are candidate rank-drop levels).
    """
    if isinstance(field.zero, Fraction):
        den = 1
        num_gcd = 0
        for x in row:
            if x:
                den = den * x.denominator // _gcd(den, x.denominator)
        for x in row:
            if x:
                num_gcd = _gcd(num_gcd, abs(x.numerator * (den // x.denominator)))
        if num_gcd == 0:
            return row
        s = Fraction(den, num_gcd)
        return [x * s for x in row]
    # rational functions: clear denominators by their lcm, then strip both
    # the integer content and any common polynomial factor
    den = P_ONE
    for x in row:
        if x and x.den != P_ONE:
            den = _p_lcm(den, x.den)
    if den != P_ONE:
        scale = RationalFunction(field, den, P_ONE)
        row = [x * scale if x else x for x in row]
    gpoly = None
    for x in row:
        if x:
            gpoly = x.num if gpoly is None else p_gcd(gpoly, x.num)
            if len(gpoly) == 1:
                break
    if gpoly and (len(gpoly) > 1 or abs(gpoly[0]) > 1):
        if factor_sink is not None and len(gpoly) > 1:
            factor_sink.append(RationalFunction(field, gpoly, P_ONE))
        inv = RationalFunction(field, P_ONE, gpoly)
        row = [x * inv if x else x for x in row]
    return row


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return abs(a)


def row_reduce(rows, ncols, field, pivot_sink=None):
    """Return (echelon_rows, pivot_cols).  Destroys the input list.

    pivot_sink, when given, receives every pivot value used and every
    stripped common row factor: divisions by pivots happen during
    elimination and back substitution, so their vanishing loci belong to
    the "denominators crossed" by the computation.
    """
    rows = [list(r) for r in rows]
    rows = [_strip_row(r, field, pivot_sink) for r in rows]
    pivots = []
    rank = 0
    for col in range(ncols):
        piv = None
        for i in range(rank, len(rows)):
            if rows[i][col]:
                piv = i
                break
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        prow = rows[rank]
        pval = prow[col]
        if pivot_sink is not None:
            pivot_sink.append(pval)
        for i in range(len(rows)):
            if i == rank:
                continue
            v = rows[i][col]
            if v:
                f = v / pval
                rows[i] = [a - f * b for a, b in zip(rows[i], prow)]
                rows[i] = _strip_row(rows[i], field, pivot_sink)
        pivots.append(col)
        rank += 1
    return rows[:rank], pivots


def matrix_rank(rows, ncols, field):
    if not rows:
        return 0
    reduced, pivots = row_reduce(rows, ncols, field)
    return len(pivots)


def nullspace(rows, ncols, field, pivot_sink=None):
    """Basis of {v : M v = 0} for M given as a list of rows.

    Basis vectors are normalized to have 1 in their free coordinate and
    appear in increasing free-column order, so the output is deterministic.
    """
    if ncols == 0:
        return []
    if not rows:
        rows = [[field.zero] * ncols]
    reduced, pivots = row_reduce(rows, ncols, field, pivot_sink=pivot_sink)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for fc in free:
        v = [field.zero] * ncols
        v[fc] = field.one
        # back substitution: pivot rows are mutually reduced already
        for r, pc in zip(reduced, pivots):
            if r[fc]:
                v[pc] = -r[fc] / r[pc]
        basis.append(v)
    return basis


def solve_in_span(vectors, target, field):
    """Coefficients c with sum(c_i * vectors_i) == target, or None.

    Vectors and target are dicts key->coeff.
    """
    keys = set(target)
    for v in vectors:
        keys.update(v)
    keys = sorted(keys)
    if not vectors:
        return [] if not target else None
    # unknowns: coefficients c_i; equations indexed by keys
    rows = []
    rhs = []
    for key in keys:
        rows.append([v.get(key, field.zero) for v in vectors])
        rhs.append(target.get(key, field.zero))
    aug = [row + [b] for row, b in zip(rows, rhs)]
    reduced, pivots = row_reduce(aug, len(vectors) + 1, field)
    n = len(vectors)
    if n in pivots:
        return None  # inconsistent
    sol = [field.zero] * n
    for r, pc in zip(reduced, pivots):
        sol[pc] = r[n] / r[pc]
    # verify (cheap insurance against rank edge cases)
    for key in keys:
        acc = field.zero
        for c, v in zip(sol, vectors):
            acc = acc + c * v.get(key, field.zero)
        if acc != target.get(key, field.zero):
            return None
    return sol
