"""Characters, isotypic decompositions, and bigraded character series.

The symmetric group acts on a polarization module by permuting columns of
the variable matrix; each multidegree component is stable. Traces are read
off a reduced echelon basis with single dictionary lookups: expanding a
vector in such a basis just evaluates it at the pivots, so the trace of a
permutation is the sum over basis rows of the row's coefficient at the
permuted pivot.

A FrobeniusSeries collects, per irreducible, the generating polynomial of
multiplicities over multidegrees and re-expands it in Schur polynomials of
the degree-tracking variables. That polynomial is symmetric exactly when
the module is stable under the row-mixing operators, which the closure
guarantees; the Schur expansion doubles as a structural sanity check.
"""

from __future__ import annotations

from math import factorial

from .errors import ConsistencyError, UsageError
from .polyring import inverse_permutation, ring
from .rationals import QQ, as_int, rational_to_json, rational_to_string
from .symfunc import (
    SymSeries,
    cycle_types,
    is_partition,
    mn_character,
    partitions_of,
    schur_to_h,
    syt_count,
    to_schur,
)


def component_character(module, d, images):
    """Trace of the column permutation (image tuple) on component V_d."""
    comp = module.components.get(tuple(d))
    if comp is None or not comp.rows:
        return 0
    r = module.ring
    inv = inverse_permutation(images)
    total = QQ(0)
    for pivot, row in zip(comp.pivots, comp.rows):
        c = row.get(r.permute_code(pivot, inv))
        if c:
            total = total + c
    if int(total) != total:
        raise ConsistencyError(
            "non-integral character value %s on component %s"
            % (rational_to_string(total), (tuple(d),))
        )
    return int(total)


def component_isotype(module, d):
    """Multiplicities {irreducible label: count} of V_d, by character theory.

    Labels are partitions of n. Non-integral or negative multiplicities mean
    the span is not actually stable (or the engine is broken) and raise.
    """
    n = module.n
    cts = cycle_types(n)
    values = {
        ct.parts: component_character(module, d, ct.representative) for ct in cts
    }
    order = factorial(n)
    out = {}
    for lam in partitions_of(n):
        s = 0
        for ct in cts:
            s += ct.size * values[ct.parts] * mn_character(lam, ct.parts)
        if s % order != 0:
            raise ConsistencyError(
                "fractional multiplicity %s/%s for %s on component %s"
                % (s, order, lam, tuple(d))
            )
        m = s // order
        if m < 0:
            raise ConsistencyError(
                "negative multiplicity %d for %s on component %s"
                % (m, lam, tuple(d))
            )
        if m:
            out[lam] = m
    return out


# ---------------------------------------------------------------------------
# bigraded series


def _lambda_sort_key(lam):
    # decreasing lex within a fixed size puts the trivial label first
    return tuple(-p for p in lam)


class FrobeniusSeries:
    """Sum of coeff * s_mu(degree variables) * s_lambda(permutation side)."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n, coeffs=None):
        self.n = n
        self.coeffs = {}
        if coeffs:
            for (mu, lam), q in coeffs.items():
                self.add_term(mu, lam, q)

    def add_term(self, mu, lam, q):
        key = (tuple(mu), tuple(lam))
        s = self.coeffs.get(key, QQ(0)) + QQ(q)
        if s:
            self.coeffs[key] = s
        else:
            self.coeffs.pop(key, None)

    def __eq__(self, other):
        return (
            isinstance(other, FrobeniusSeries)
            and self.n == other.n
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.n, frozenset(self.coeffs.items())))

    def __bool__(self):
        return bool(self.coeffs)

    def truncate(self, ell):
        """Drop degree-side labels needing more than ell variables."""
        out = FrobeniusSeries(self.n)
        for (mu, lam), q in self.coeffs.items():
            if len(mu) <= ell:
                out.add_term(mu, lam, q)
        return out

    def group_by_lambda(self):
        """[(lambda, SymSeries over mu)] with the trivial label first."""
        groups = {}
        for (mu, lam), q in self.coeffs.items():
            groups.setdefault(lam, SymSeries("schur")).add_term(mu, q)
        return sorted(groups.items(), key=lambda kv: _lambda_sort_key(kv[0]))

    def hilbert(self):
        """Dimension generating series over multidegrees, Schur basis."""
        out = SymSeries("schur")
        for (mu, lam), q in self.coeffs.items():
            out.add_term(mu, q * syt_count(lam))
        return out

    def dimension(self, ell):
        from .symfunc import schur_dimension

        total = 0
        for (mu, lam), q in self.coeffs.items():
            total += as_int(q) * syt_count(lam) * schur_dimension(mu, ell)
        return total

    def to_json_list(self):
        items = sorted(
            self.coeffs.items(),
            key=lambda kv: (_lambda_sort_key(kv[0][1]), sum(kv[0][0]), kv[0][0]),
        )
        return [
            {"mu": list(mu), "lambda": list(lam), "coeff": rational_to_json(q)}
            for (mu, lam), q in items
        ]

    def __str__(self):
        if not self.coeffs:
            return "0"
        pieces = []
        for lam, series in self.group_by_lambda():
            wname = "s[%s]" % ",".join(map(str, lam))
            if len(series.coeffs) == 1:
                ((mu, q),) = series.coeffs.items()
                if q > 0:
                    head = "" if q == 1 else rational_to_string(q) + " "
                    qname = "" if not mu else "s[%s] " % ",".join(map(str, mu))
                    pieces.append("%s%s%s" % (head, qname, wname))
                    continue
            pieces.append("(%s) %s" % (series, wname))
        return " + ".join(pieces)

    def __repr__(self):
        return "<FrobeniusSeries n=%d: %s>" % (self.n, self)


def frobenius_series(module):
    """Bigraded character series of a computed module, fully exact."""
    n = module.n
    ell = module.ell
    per_lambda = {}
    for d in module.sorted_degrees():
        for lam, m in component_isotype(module, d).items():
            per_lambda.setdefault(lam, []).append((d, m))
    qring = ring(1, ell)
    out = FrobeniusSeries(n)
    for lam, pairs in per_lambda.items():
        g = qring.zero()
        for d, m in pairs:
            g = g + qring.monomial({(1, i + 1): di for i, di in enumerate(d)}, m)
        for mu, c in to_schur(g).coeffs.items():
            out.add_term(mu, lam, c)
    return out


def hilbert_series(module):
    """Dimension series over multidegrees, expanded in Schur polynomials."""
    qring = ring(1, module.ell)
    g = qring.zero()
    for d, dim in module.dims().items():
        g = g + qring.monomial({(1, i + 1): di for i, di in enumerate(d)}, dim)
    return to_schur(g)


def hilbert_series_h(module):
    return schur_to_h(hilbert_series(module))


# ---------------------------------------------------------------------------
# closed-form predictions


def _valid_lambda(lam):
    lam = tuple(lam)
    while lam and lam[-1] == 0:
        lam = lam[:-1]
    return lam if is_partition(lam) else None


def _add_interval(out, lo, hi, lam, ell):
    """Add sum_{j=lo}^{hi} s_j(q) * s_lam(w); j = 0 contributes 1."""
    lam = _valid_lambda(lam)
    if lam is None:
        return
    for j in range(lo, hi + 1):
        mu = () if j == 0 else (j,)
        if len(mu) <= ell:
            out.add_term(mu, lam, 1)


def oracle_series(kind, *, n, ell, d=None, a=None, b=None, c=None):
    """Closed-form bigraded series for the solved generator shapes.

    kinds: e1_power, p_d, e_d, family_A, family_B (need d);
    deg2 (needs a, b); deg3 (needs a, b, c).
    """
    if n < 1 or ell < 1:
        raise UsageError("need n >= 1 and ell >= 1")
    out = FrobeniusSeries(n)
    if kind in ("e1_power", "p_d", "e_d", "family_A", "family_B"):
        if d is None or d < 1:
            raise UsageError("kind %r needs a degree d >= 1" % kind)
    if kind == "e1_power":
        _add_interval(out, 0, d, (n,), ell)
    elif kind == "p_d":
        _add_interval(out, 0, d, (n,), ell)
        _add_interval(out, 1, d - 1, (n - 1, 1), ell)
    elif kind == "e_d":
        if d > n:
            raise UsageError(
                "elementary generator of degree %d vanishes for n = %d" % (d, n)
            )
        for i in range(0, d // 2 + 1):
            _add_interval(out, i, d - i, (n - i, i), ell)
    elif kind == "family_A":
        _add_interval(out, 0, d, (n,), ell)
        _add_interval(out, 1, d, (n - 1, 1), ell)
    elif kind == "family_B":
        if n < 2:
            raise UsageError("the difference family needs n >= 2")
        _add_interval(out, 0, d - 1, (n,), ell)
        _add_interval(out, 1, d, (n - 1, 1), ell)
    elif kind == "deg2":
        if a is None or b is None:
            raise UsageError("deg2 needs coefficients a, b")
        from .exceptions import classify

        tag = classify(2, (a, b), n)
        _add_interval(out, 0, 2, (n,), ell)
        if tag == "P2":
            _add_interval(out, 1, 1, (n - 1, 1), ell)
    elif kind == "deg3":
        if a is None or b is None or c is None:
            raise UsageError("deg3 needs coefficients a, b, c")
        from .exceptions import classify

        tag = classify(3, (a, b, c), n)
        _add_interval(out, 0, 3, (n,), ell)
        if tag != "P1_CUBED":
            _add_interval(out, 1, 2, (n - 1, 1), ell)
        if tag == "H3":
            _add_interval(out, 2, 2, (n,), ell)
    else:
        raise UsageError("unknown oracle kind %r" % kind)
    return out
