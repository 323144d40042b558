"""Graded spans and the polarization-module fixpoint construction.

A GradedSpan keeps, per multidegree, a reduced echelon basis of homogeneous
polynomials: pivots are the graded-lex-greatest monomials, pivot coefficients
are 1, and no row contains another row's pivot. Reduced echelon form is
canonical for a subspace under a fixed monomial order, so the final bases do
not depend on insertion order — determinism comes for free.

Rows are stored as plain {packed monomial code: rational} dicts sorted by
decreasing pivot. Because every row's monomials are bounded by its own pivot,
a single descending pass over the rows fully reduces a candidate.

The module builder closes the span of a stable generator family under all
first partial derivatives and all polarization operators by a worklist, with
the polarization order bounded per row by the source-row degree (higher
orders annihilate, so the operator set is finite and the bound is exact).
"""

from __future__ import annotations

import heapq

from .errors import UsageError
from .polyring import Poly, adjacent_transpositions, ring


class Component:
    """Reduced echelon basis of one graded component."""

    __slots__ = ("degree", "pivots", "rows")

    def __init__(self, degree):
        self.degree = tuple(degree)
        self.pivots = []  # descending packed codes
        self.rows = []  # parallel list of {code: QQ}

    @property
    def dimension(self):
        return len(self.rows)

    def reduce(self, w):
        """Fully reduce dict w against the basis, in place; returns w."""
        pivots = self.pivots
        rows = self.rows
        for idx in range(len(pivots)):
            c = w.get(pivots[idx])
            if c:
                for code, q in rows[idx].items():
                    s = w.get(code)
                    if s is None:
                        w[code] = -c * q
                    else:
                        s = s - c * q
                        if s:
                            w[code] = s
                        else:
                            del w[code]
        return w

    def insert(self, w):
        """Insert dict w (consumed); True if the dimension grew."""
        return _insert_at(self, w) is not None

    def contains(self, w):
        """Span membership test (w: dict, copied)."""
        return not self.reduce(dict(w))


class GradedSpan:
    """Direct sum of graded components with exact span arithmetic."""

    def __init__(self, ell, n, generators_text=None):
        self.ring = ring(ell, n)
        self.components = {}
        self.generators_text = list(generators_text or [])

    @property
    def ell(self):
        return self.ring.ell

    @property
    def n(self):
        return self.ring.n

    def component(self, d):
        d = tuple(d)
        comp = self.components.get(d)
        if comp is None:
            comp = Component(d)
            self.components[d] = comp
        return comp

    def insert(self, f):
        """span_insert: route a homogeneous Poly (or raw dict+degree pair)."""
        if isinstance(f, Poly):
            if f.is_zero():
                return False
            d = f.multidegree()  # raises NonHomogeneous on bad input
            return self.component(d).insert(dict(f.terms))
        raise TypeError("insert expects a Poly")

    def insert_terms(self, d, terms):
        """Insert a term dict known to be homogeneous of multidegree d."""
        if not terms:
            return False
        return self.component(d).insert(terms)

    def member(self, f):
        """Exact span membership of a homogeneous Poly."""
        if f.is_zero():
            return True
        d = f.multidegree()
        comp = self.components.get(tuple(d))
        if comp is None:
            return False
        return comp.contains(f.terms)

    def sorted_degrees(self):
        return sorted(
            (d for d, comp in self.components.items() if comp.dimension),
            key=lambda d: (sum(d), d),
        )

    def dims(self):
        """{multidegree: dimension}, empty components omitted."""
        return {d: self.components[d].dimension for d in self.sorted_degrees()}

    def total_dimension(self):
        return sum(comp.dimension for comp in self.components.values())

    def component_basis(self, d):
        """Reduced echelon basis of V_d as Poly values (copies)."""
        comp = self.components.get(tuple(d))
        if comp is None:
            return []
        return [Poly(self.ring, dict(row)) for row in comp.rows]

    def copy(self):
        dup = GradedSpan(self.ell, self.n, self.generators_text)
        for d, comp in self.components.items():
            c2 = dup.component(d)
            c2.pivots = list(comp.pivots)
            c2.rows = [dict(row) for row in comp.rows]
        return dup

    def __eq__(self, other):
        if not isinstance(other, GradedSpan):
            return NotImplemented
        if self.ring is not other.ring:
            return False
        return self.dims() == other.dims() and all(
            self.components[d].rows == other.components[d].rows
            for d in self.dims()
        )

    def to_json_dict(self):
        comps = []
        for d in self.sorted_degrees():
            comp = self.components[d]
            comps.append(
                {
                    "degree": list(d),
                    "dimension": comp.dimension,
                    "basis": [str(Poly(self.ring, row)) for row in comp.rows],
                }
            )
        return {
            "n": self.n,
            "ell": self.ell,
            "generators": list(self.generators_text),
            "dimension": self.total_dimension(),
            "components": comps,
        }


# ---------------------------------------------------------------------------
# generator families


class GeneratorFamily:
    """A stable family of homogeneous generators.

    mode 'orbit': the family is the symmetric-group orbit of the given
    polynomials (closed here by breadth-first application of adjacent
    transpositions). mode 'verbatim': the polynomials are taken as given and
    their span is checked to be stable under the column action.
    """

    def __init__(self, polys, mode="orbit", text=None):
        polys = [f for f in polys if f is not None]
        if not polys:
            raise UsageError("empty generator family")
        self.ring = polys[0].ring
        for f in polys:
            if f.ring is not self.ring:
                raise UsageError("generators live in different rings")
            if not f.is_homogeneous():
                raise UsageError("generator %s is not homogeneous" % f)
        self.mode = mode
        self.text = list(text or [])
        nonzero = [f for f in polys if not f.is_zero()]
        if mode == "orbit":
            self.polys = _orbit_close(nonzero, self.ring.n)
        elif mode == "verbatim":
            self.polys = nonzero
            _check_span_stable(nonzero, self.ring.n)
        else:
            raise UsageError("unknown family mode %r" % mode)

    def is_zero(self):
        return not self.polys


def _orbit_close(polys, n):
    seen = []
    queue = list(polys)
    taus = adjacent_transpositions(n)
    keyset = set()
    while queue:
        f = queue.pop()
        key = frozenset(f.terms.items())
        if key in keyset:
            continue
        keyset.add(key)
        seen.append(f)
        for tau in taus:
            queue.append(f.permute(tau))
    return seen


def _check_span_stable(polys, n):
    if not polys:
        return
    span = GradedSpan(polys[0].ring.ell, n)
    for f in polys:
        span.insert(f)
    for tau in adjacent_transpositions(n):
        for f in polys:
            if not span.member(f.permute(tau)):
                raise UsageError(
                    "family is not stable under the column action "
                    "(offending transposition %s)" % (tau,)
                )


# ---------------------------------------------------------------------------
# closure operators


def _apply_derivatives(r, terms, degree, out_sink):
    """All first partials of a term dict; nonzero results go to out_sink."""
    n = r.n
    for i in range(1, r.ell + 1):
        if degree[i - 1] == 0:
            continue
        dd = degree[: i - 1] + (degree[i - 1] - 1,) + degree[i:]
        for j in range(1, n + 1):
            shift = r.shifts[(i - 1) * n + (j - 1)]
            out = {}
            for code, q in terms.items():
                a = (code >> shift) & 31
                if a:
                    out[code - (1 << shift)] = q * a
            if out:
                out_sink(dd, out)


def _apply_polarizations(r, terms, degree, out_sink):
    """All E[i,k,p] images, p up to the row-k degree; results to out_sink.

    The Euler case (i == k, p == 1) is skipped: it scales each component
    and never enlarges the span.
    """
    n = r.n
    for k in range(1, r.ell + 1):
        dk = degree[k - 1]
        if dk == 0:
            continue
        src_shifts = [r.shifts[(k - 1) * n + j] for j in range(n)]
        for i in range(1, r.ell + 1):
            dst_places = [r.places[(i - 1) * n + j] for j in range(n)]
            for p in range(1, dk + 1):
                if i == k and p == 1:
                    continue
                lowered = list(degree)
                lowered[k - 1] -= p
                lowered[i - 1] += 1
                dd = tuple(lowered)
                out = {}
                for code, q in terms.items():
                    for j in range(n):
                        shift = src_shifts[j]
                        a = (code >> shift) & 31
                        if a >= p:
                            f = a
                            for t in range(1, p):
                                f *= a - t
                            nc = code - (p << shift) + dst_places[j]
                            v = q * f
                            s = out.get(nc)
                            if s is None:
                                out[nc] = v
                            else:
                                s = s + v
                                if s:
                                    out[nc] = s
                                else:
                                    del out[nc]
                if out:
                    out_sink(dd, out)


def _close(span, use_derive, use_polarize):
    """Worklist closure of a span under the selected operator families.

    Pending rows are processed in increasing (|d|, d); every successful
    insertion queues a snapshot of the reduced new row. Later insertions may
    rewrite stored rows (back-substitution), but each rewrite subtracts rows
    that are themselves queued, so the processed snapshots still span the
    final space and the closure argument goes through unchanged.
    """
    r = span.ring
    heap = []
    seq = 0
    for d in sorted(span.components, key=lambda d: (sum(d), d)):
        for row in span.components[d].rows:
            heapq.heappush(heap, (sum(d), d, seq, dict(row)))
            seq += 1

    def sink(dd, termdict):
        nonlocal seq
        comp = span.component(dd)
        pos = _insert_at(comp, termdict)
        if pos is not None:
            heapq.heappush(heap, (sum(dd), dd, seq, dict(comp.rows[pos])))
            seq += 1

    while heap:
        _, d, _, terms = heapq.heappop(heap)
        if use_derive:
            _apply_derivatives(r, terms, d, sink)
        if use_polarize:
            _apply_polarizations(r, terms, d, sink)
    return span


def _insert_at(comp, w):
    """Component insert that reports the inserted row's position (or None)."""
    w = comp.reduce(w)
    if not w:
        return None
    pivot = max(w)
    inv = 1 / w[pivot]
    if inv != 1:
        for code in w:
            w[code] = w[code] * inv
    for idx in range(len(comp.pivots)):
        if comp.pivots[idx] < pivot:
            break
        row = comp.rows[idx]
        c = row.get(pivot)
        if c:
            for code, q in w.items():
                s = row.get(code)
                if s is None:
                    row[code] = -c * q
                else:
                    s = s - c * q
                    if s:
                        row[code] = s
                    else:
                        del row[code]
    lo, hi = 0, len(comp.pivots)
    while lo < hi:
        mid = (lo + hi) // 2
        if comp.pivots[mid] > pivot:
            lo = mid + 1
        else:
            hi = mid
    comp.pivots.insert(lo, pivot)
    comp.rows.insert(lo, w)
    return lo


def derivative_closure(span):
    """Smallest span containing the input, closed under all first partials."""
    return _close(span.copy(), use_derive=True, use_polarize=False)


def polarization_closure(span):
    """Smallest span containing the input, closed under all polarizations."""
    return _close(span.copy(), use_derive=False, use_polarize=True)


def polarization_module(family, ell=None, n=None):
    """The polarization module of a stable family: joint closure fixpoint."""
    if isinstance(family, GeneratorFamily):
        fam = family
    else:
        raise TypeError("expected a GeneratorFamily")
    r = fam.ring
    if ell is not None and ell != r.ell or n is not None and n != r.n:
        raise UsageError("family ring does not match requested (ell, n)")
    span = GradedSpan(r.ell, r.n, fam.text)
    for f in fam.polys:
        span.insert(f)
    return _close(span, use_derive=True, use_polarize=True)
