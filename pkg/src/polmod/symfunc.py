"""Partitions, symmetric-group characters, and symmetric-function bases.

Two different alphabets show up downstream and both are served here:

* concrete expansions of the classical bases (m, e, h, p, s) as Poly values
  in the n variables of one row of the variable matrix;
* formal series in a partition-indexed basis (SymSeries), used for the
  Schur-basis output of Hilbert/Frobenius series and the change of basis to
  complete homogeneous functions.

Characters of the symmetric group are computed by the border-strip
recursion on beta-sets, memoized; class sizes and canonical representative
permutations per cycle type live in CycleType.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, combinations_with_replacement, permutations
from math import factorial

from .errors import NotSymmetric, UsageError
from .polyring import Poly, ring
from .rationals import QQ, as_int, rational_to_string

# ---------------------------------------------------------------------------
# partitions


def is_partition(parts):
    parts = tuple(parts)
    return all(p > 0 for p in parts) and all(
        parts[i] >= parts[i + 1] for i in range(len(parts) - 1)
    )


def check_partition(parts):
    parts = tuple(int(p) for p in parts)
    if not is_partition(parts):
        raise UsageError("not a partition (weakly decreasing, positive): %r" % (parts,))
    return parts


@lru_cache(maxsize=None)
def partitions_of(n, max_part=None):
    """All partitions of n as decreasing tuples, in decreasing lex order."""
    if n == 0:
        return ((),)
    if max_part is None or max_part > n:
        max_part = n
    out = []
    for first in range(max_part, 0, -1):
        for rest in partitions_of(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


def conjugate(lam):
    if not lam:
        return ()
    return tuple(
        sum(1 for p in lam if p > i) for i in range(lam[0])
    )


@lru_cache(maxsize=None)
def hook_lengths(lam):
    conj = conjugate(lam)
    return tuple(
        tuple(lam[i] - j + conj[j] - i - 1 for j in range(lam[i]))
        for i in range(len(lam))
    )


@lru_cache(maxsize=None)
def syt_count(lam):
    """f^lambda: standard Young tableaux of shape lambda (hook formula)."""
    n = sum(lam)
    denom = 1
    for row in hook_lengths(lam):
        for h in row:
            denom *= h
    q, r = divmod(factorial(n), denom)
    assert r == 0
    return q


@lru_cache(maxsize=None)
def schur_dimension(mu, nvars):
    """Number of column-strict tableaux of shape mu, entries <= nvars.

    Hook-content formula; this is s_mu(1^nvars). Zero when mu has more than
    nvars rows.
    """
    if len(mu) > nvars:
        return 0
    value = QQ(1)
    hooks = hook_lengths(mu)
    for i in range(len(mu)):
        for j in range(mu[i]):
            value = value * QQ(nvars + j - i, hooks[i][j])
    return as_int(value)


# ---------------------------------------------------------------------------
# cycle types and characters


@dataclass(frozen=True)
class CycleType:
    """A conjugacy class of the symmetric group."""

    parts: tuple
    size: int
    representative: tuple  # image tuple of a canonical permutation

    @property
    def n(self):
        return sum(self.parts)


def _class_size(parts):
    n = sum(parts)
    denom = 1
    mult = {}
    for p in parts:
        mult[p] = mult.get(p, 0) + 1
    for p, c in mult.items():
        denom *= (p ** c) * factorial(c)
    return factorial(n) // denom


def _representative(parts):
    """Consecutive cycle blocks: (1 2 .. k)(k+1 ..) ... as an image tuple."""
    images = []
    start = 1
    for p in parts:
        block = list(range(start + 1, start + p)) + [start]
        images.extend(block)
        start += p
    return tuple(images)


@lru_cache(maxsize=None)
def cycle_types(n):
    """All conjugacy classes of S_n; class sizes sum to n!."""
    out = tuple(
        CycleType(parts, _class_size(parts), _representative(parts))
        for parts in partitions_of(n)
    )
    assert sum(ct.size for ct in out) == factorial(n)
    return out


def fixed_points(images):
    return sum(1 for j, im in enumerate(images, start=1) if im == j)


def _beta_set(lam):
    m = len(lam)
    return tuple(lam[i] + m - 1 - i for i in range(m))


@lru_cache(maxsize=None)
def _mn(beta, mu):
    """Character recursion on the beta-set encoding of the shape."""
    if not mu:
        return 1
    k = mu[0]
    rest = mu[1:]
    total = 0
    bset = set(beta)
    for idx, b in enumerate(beta):
        nb = b - k
        if nb < 0 or nb in bset:
            continue
        # height of the removed strip: entries of beta strictly between
        # nb and b, each contributing one row crossing
        height = sum(1 for x in beta if nb < x < b)
        new_beta = tuple(sorted((set(beta) - {b}) | {nb}, reverse=True))
        term = _mn(new_beta, rest)
        total += term if height % 2 == 0 else -term
    return total


def mn_character(lam, mu):
    """Irreducible character chi^lambda at cycle type mu (|lam| = |mu|)."""
    lam = tuple(lam)
    mu = tuple(mu)
    if sum(lam) != sum(mu):
        raise ValueError("size mismatch: |%s| != |%s|" % (lam, mu))
    # largest parts first keeps the memo table small
    mu_sorted = tuple(sorted(mu, reverse=True))
    return _mn(_beta_set(lam), mu_sorted)


@lru_cache(maxsize=None)
def character_table(n):
    """{(lam, mu.parts): chi^lam(mu)} for all lam, mu of n."""
    table = {}
    for lam in partitions_of(n):
        for ct in cycle_types(n):
            table[(lam, ct.parts)] = mn_character(lam, ct.parts)
    return table


# ---------------------------------------------------------------------------
# concrete basis expansions in one row of the variable matrix


def _row_monomial(r, row, exps_by_col, coeff=1):
    return r.monomial({(row, j): a for j, a in exps_by_col.items() if a}, coeff)


def power_sum_poly(k, row, n, ell=None):
    r = ring(ell or row, n)
    out = r.zero()
    for j in range(1, n + 1):
        out = out + _row_monomial(r, row, {j: k})
    return out


def elementary_poly(k, row, n, ell=None):
    r = ring(ell or row, n)
    if k == 0:
        return r.one()
    if k > n:
        return r.zero()
    out = r.zero()
    for cols in combinations(range(1, n + 1), k):
        out = out + _row_monomial(r, row, {j: 1 for j in cols})
    return out


def homogeneous_poly(k, row, n, ell=None):
    r = ring(ell or row, n)
    if k == 0:
        return r.one()
    out = r.zero()
    for cols in combinations_with_replacement(range(1, n + 1), k):
        exps = {}
        for j in cols:
            exps[j] = exps.get(j, 0) + 1
        out = out + _row_monomial(r, row, exps)
    return out


def monomial_poly(lam, row, n, ell=None):
    lam = check_partition(lam)
    r = ring(ell or row, n)
    if len(lam) > n:
        # no monomial uses more distinct variables than there are columns
        return r.zero()
    padded = tuple(lam) + (0,) * (n - len(lam))
    out = r.zero()
    for arrangement in sorted(set(permutations(padded))):
        out = out + _row_monomial(r, row, {j + 1: a for j, a in enumerate(arrangement)})
    return out


@lru_cache(maxsize=None)
def _ssyt_weights(lam, nvars):
    """Multiset of content vectors of column-strict tableaux of shape lam."""
    if not lam:
        return ((0,) * nvars,)
    rows = len(lam)
    weights = []

    def fill(row_idx, col_idx, current, above_row):
        # current: the row being filled (list), above_row: finished row above
        if col_idx == lam[row_idx]:
            if row_idx + 1 == rows:
                content = [0] * nvars
                for filled in finished + [current]:
                    for v in filled:
                        content[v - 1] += 1
                weights.append(tuple(content))
                return
            finished.append(list(current))
            fill(row_idx + 1, 0, [], finished[-1])
            finished.pop()
            return
        lo = current[col_idx - 1] if col_idx > 0 else 1
        if above_row is not None and col_idx < len(above_row):
            lo = max(lo, above_row[col_idx] + 1)
        for v in range(lo, nvars + 1):
            current.append(v)
            fill(row_idx, col_idx + 1, current, above_row)
            current.pop()

    finished = []
    fill(0, 0, [], None)
    return tuple(weights)


def schur_row_poly(lam, row, n, ell=None):
    lam = check_partition(lam)
    r = ring(ell or row, n)
    if len(lam) > n:
        # column-strict fillings need a strictly increasing first column
        return r.zero()
    out = {}
    for content in _ssyt_weights(lam, n):
        code = 0
        for j, a in enumerate(content, start=1):
            if a:
                code += a << r.shifts[r.cell(row, j)]
        out[code] = out.get(code, QQ(0)) + 1
    return r.from_terms(out)


def _product_over_parts(lam, factor, row, n, ell):
    out = ring(ell or row, n).one()
    for part in lam:
        out = out * factor(part, row, n, ell)
    return out


def expand_basis(basis, lam, row, n, ell=None):
    """The basis element indexed by partition lam, realized in x[row, 1..n].

    basis is one of 'm', 'e', 'h', 'p', 's' (or the long names monomial /
    elementary / homogeneous / powersum / schur). e, h, p with a partition
    index mean the product over parts.
    """
    tag = {"monomial": "m", "elementary": "e", "homogeneous": "h",
           "powersum": "p", "schur": "s"}.get(basis, basis)
    lam = check_partition(lam)
    if tag == "m":
        return monomial_poly(lam, row, n, ell)
    if tag == "e":
        return _product_over_parts(lam, elementary_poly, row, n, ell)
    if tag == "h":
        return _product_over_parts(lam, homogeneous_poly, row, n, ell)
    if tag == "p":
        return _product_over_parts(lam, power_sum_poly, row, n, ell)
    if tag == "s":
        return schur_row_poly(lam, row, n, ell)
    raise UsageError("unknown basis tag %r" % (basis,))


# ---------------------------------------------------------------------------
# diagonal (multirow) symmetric polynomials


def diag_power_sum(d, n):
    """sum_j prod_i x[i,j]^{d_i}: the diagonal power sum of multidegree d."""
    d = tuple(d)
    if sum(d) < 1:
        raise UsageError("diagonal power sum needs |d| >= 1")
    r = ring(len(d), n)
    out = {}
    for j in range(1, n + 1):
        code = 0
        for i, di in enumerate(d, start=1):
            if di:
                code += di << r.shifts[r.cell(i, j)]
        out[code] = out.get(code, QQ(0)) + 1
    return r.from_terms(out)


def multi_elementary(d, n):
    """Multidegree-d coefficient of prod_j (1 + sum_i t_i x[i,j]).

    Explicitly: choose a column set B of size |d| and color its columns with
    row labels, d_i columns of color i; each choice contributes the product
    of the selected variables.
    """
    d = tuple(d)
    ell = len(d)
    r = ring(ell, n)
    total = sum(d)
    if total > n:
        return r.zero()
    if total == 0:
        return r.one()
    colors = []
    for i, di in enumerate(d, start=1):
        colors.extend([i] * di)
    out = {}
    for cols in combinations(range(1, n + 1), total):
        for coloring in set(permutations(colors)):
            code = 0
            for j, i in zip(cols, coloring):
                code += 1 << r.shifts[r.cell(i, j)]
            out[code] = out.get(code, QQ(0)) + 1
    return r.from_terms(out)


def multi_elementary_outside(d, n, excluded):
    """Same as multi_elementary but only over columns outside `excluded`."""
    d = tuple(d)
    ell = len(d)
    r = ring(ell, n)
    total = sum(d)
    allowed = [j for j in range(1, n + 1) if j not in set(excluded)]
    if total > len(allowed):
        return r.zero()
    if total == 0:
        return r.one()
    colors = []
    for i, di in enumerate(d, start=1):
        colors.extend([i] * di)
    out = {}
    for cols in combinations(allowed, total):
        for coloring in set(permutations(colors)):
            code = 0
            for j, i in zip(cols, coloring):
                code += 1 << r.shifts[r.cell(i, j)]
            out[code] = out.get(code, QQ(0)) + 1
    return r.from_terms(out)


# ---------------------------------------------------------------------------
# formal series in a partition basis


class SymSeries:
    """Formal linear combination of partition-indexed basis elements."""

    __slots__ = ("basis", "coeffs")

    def __init__(self, basis, coeffs=None):
        self.basis = basis
        self.coeffs = {}
        if coeffs:
            for lam, q in coeffs.items():
                q = QQ(q)
                if q:
                    self.coeffs[tuple(lam)] = q

    def add_term(self, lam, q):
        lam = tuple(lam)
        s = self.coeffs.get(lam, QQ(0)) + QQ(q)
        if s:
            self.coeffs[lam] = s
        else:
            self.coeffs.pop(lam, None)

    def __eq__(self, other):
        return (
            isinstance(other, SymSeries)
            and self.basis == other.basis
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.basis, frozenset(self.coeffs.items())))

    def items_sorted(self):
        return sorted(self.coeffs.items(), key=lambda kv: (sum(kv[0]), kv[0]))

    def truncate_length(self, max_rows):
        """Drop partitions with more than max_rows parts."""
        return SymSeries(
            self.basis,
            {lam: q for lam, q in self.coeffs.items() if len(lam) <= max_rows},
        )

    def map_partition_weights(self, weight):
        """sum over terms of coeff * weight(partition)."""
        total = QQ(0)
        for lam, q in self.coeffs.items():
            total = total + q * weight(lam)
        return total

    def __str__(self):
        if not self.coeffs:
            return "0"
        tag = self.basis[0]
        pieces = []
        for lam, q in self.items_sorted():
            mag = abs(q)
            if not lam:
                body = rational_to_string(mag)
            else:
                name = "%s[%s]" % (tag, ",".join(map(str, lam)))
                body = name if mag == 1 else rational_to_string(mag) + " " + name
            if not pieces:
                pieces.append(body if q > 0 else "-" + body)
            else:
                pieces.append((" + " if q > 0 else " - ") + body)
        return "".join(pieces)

    def __repr__(self):
        return "<SymSeries %s: %s>" % (self.basis, self)


# -- Schur expansion of a concrete symmetric polynomial ---------------------


def _is_symmetric_one_row(f):
    r = f.ring
    if r.ell != 1:
        return False
    for j in range(1, r.n):
        images = list(range(1, r.n + 1))
        images[j - 1], images[j] = images[j], images[j - 1]
        if f.permute(tuple(images)) != f:
            return False
    return True


def to_schur(f):
    """Exact Schur expansion of a symmetric polynomial in one row.

    Repeatedly subtracts coeff * s_lambda for the graded-lex-leading
    monomial x^lambda; leading exponents of symmetric polynomials are
    partitions and the leading coefficient of s_lambda is 1, so the leading
    term strictly decreases and the loop terminates.
    """
    r = f.ring
    if r.ell != 1:
        raise NotSymmetric("to_schur expects a polynomial in a single row")
    if not _is_symmetric_one_row(f):
        raise NotSymmetric("polynomial is not symmetric in its %d variables" % r.n)
    out = SymSeries("schur")
    work = f
    while work.terms:
        lead = max(work.terms, key=lambda c: (r.code_total_degree(c), c))
        exps = r.unpack(lead)
        lam = tuple(a for a in exps if a)
        if tuple(sorted(exps, reverse=True)) != exps or not is_partition(lam):
            raise NotSymmetric(
                "leading exponent %s is not a partition; input not symmetric"
                % (exps,)
            )
        c = work.terms[lead]
        out.add_term(lam, c)
        work = work - schur_row_poly(lam, 1, r.n, 1).scale(c) if lam else work - r.const(c)
    return out


def from_schur(series, nvars):
    """Realize a Schur-basis series concretely in nvars variables (row 1)."""
    r = ring(1, nvars)
    out = r.zero()
    for lam, q in series.coeffs.items():
        if len(lam) <= nvars:
            out = out + schur_row_poly(lam, 1, nvars, 1).scale(q)
        # partitions with more rows than variables evaluate to zero
    return out


# -- Jacobi-Trudi / Kostka transitions --------------------------------------


@lru_cache(maxsize=None)
def jacobi_trudi_h(lam):
    """Expansion of s_lam into products of h_k, as {partition: int}.

    Determinant of (h_{lam_i - i + j}) expanded over permutations; h_0
    contributes an empty factor, any negative index kills the term.
    """
    lam = tuple(lam)
    if not lam:
        return {(): 1}
    m = len(lam)
    out = {}
    for sigma in permutations(range(m)):
        inversions = sum(
            1 for a in range(m) for b in range(a + 1, m) if sigma[a] > sigma[b]
        )
        sign = -1 if inversions % 2 else 1
        factors = []
        dead = False
        for i in range(m):
            k = lam[i] - (i + 1) + (sigma[i] + 1)
            if k < 0:
                dead = True
                break
            if k > 0:
                factors.append(k)
        if dead:
            continue
        key = tuple(sorted(factors, reverse=True))
        out[key] = out.get(key, 0) + sign
    return {k: v for k, v in out.items() if v}


@lru_cache(maxsize=None)
def kostka(lam, mu):
    """Number of column-strict tableaux of shape lam and content mu."""
    lam = tuple(lam)
    mu = tuple(mu)
    if sum(lam) != sum(mu):
        return 0
    if not lam:
        return 1
    if not mu:
        return 0
    k = mu[-1]
    rest = mu[:-1]
    total = 0
    for nu in _horizontal_strip_removals(lam, k):
        total += kostka(nu, rest)
    return total


def _horizontal_strip_removals(lam, k):
    """All partitions nu with lam/nu a horizontal strip of size k."""
    m = len(lam)
    results = []

    def rec(i, remaining, acc):
        if i == m:
            if remaining == 0:
                results.append(tuple(p for p in acc if p))
            return
        lo = max(lam[i + 1] if i + 1 < m else 0, lam[i] - remaining)
        # nu_i between lam_{i+1} and lam_i, and nu_{i-1} >= lam_i (interlacing)
        hi = lam[i]
        if acc and acc[-1] < lam[i]:
            hi = acc[-1]
        for nu_i in range(hi, lo - 1, -1):
            rec(i + 1, remaining - (lam[i] - nu_i), acc + [nu_i])

    rec(0, k, [])
    return results


def schur_to_h(series):
    """Change of basis schur -> complete homogeneous (exact, integral)."""
    if series.basis != "schur":
        raise ValueError("expected a schur-basis series")
    out = SymSeries("homogeneous")
    for lam, q in series.coeffs.items():
        for hpart, c in jacobi_trudi_h(lam).items():
            out.add_term(hpart, q * c)
    return out


def h_to_schur(series):
    """Change of basis complete homogeneous -> schur via Kostka numbers."""
    if series.basis != "homogeneous":
        raise ValueError("expected a homogeneous-basis series")
    out = SymSeries("schur")
    for mu, q in series.coeffs.items():
        n = sum(mu)
        for lam in partitions_of(n):
            k = kostka(lam, mu)
            if k:
                out.add_term(lam, q * k)
    return out
