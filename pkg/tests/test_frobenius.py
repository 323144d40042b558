"""Unit tests for isotypic decomposition and the bigraded series."""

import pytest

from polmod import (
    FrobeniusSeries,
    GeneratorFamily,
    QQ,
    UsageError,
    component_isotype,
    expand_basis,
    frobenius_series,
    hilbert_series,
    hilbert_series_h,
    oracle_series,
    polarization_module,
    ring,
)
from polmod.cli.runner import build_module, checked_frobenius


def module_of(text, n, ell):
    return build_module([text], n, ell)


def test_component_isotype_of_the_full_linear_span():
    module = module_of("x[1,1]", 3, 1)
    assert component_isotype(module, (0,)) == {(3,): 1}
    assert component_isotype(module, (1,)) == {(3,): 1, (2, 1): 1}


def test_frobenius_series_of_a_symmetric_square():
    # (x1+...+xn)^2 generates the chain module: trivial isotype everywhere
    module = module_of("e[1]^2", 3, 2)
    fs = checked_frobenius(module)
    assert fs == oracle_series("deg2", n=3, ell=2, a=1, b=2)
    lams = {lam for (_, lam) in fs.coeffs}
    assert lams == {(3,)}


def test_frobenius_series_of_the_power_sum_square():
    module = module_of("p[2]", 3, 2)
    fs = checked_frobenius(module)
    assert fs == oracle_series("deg2", n=3, ell=2, a=1, b=0)
    assert fs.coeffs[((1,), (2, 1))] == 1


def test_oracle_chain_has_no_spurious_terms_at_n_1():
    fs = oracle_series("p_d", n=1, ell=2, d=3)
    assert {lam for (_, lam) in fs.coeffs} == {(1,)}
    assert sorted(mu for (mu, _) in fs.coeffs) == [(), (1,), (2,), (3,)]
    engine = checked_frobenius(module_of("p[3]", 1, 2))
    assert engine == fs


def test_oracle_rejects_vanishing_elementary():
    with pytest.raises(UsageError):
        oracle_series("e_d", n=2, ell=1, d=3)
    with pytest.raises(UsageError):
        oracle_series("p_d", n=3, ell=1)
    with pytest.raises(UsageError):
        oracle_series("nonsense", n=3, ell=1, d=2)


def test_series_container_ordering_and_text():
    fs = FrobeniusSeries(3)
    fs.add_term((), (3,), 1)
    fs.add_term((1,), (3,), 1)
    fs.add_term((2,), (3,), 2)
    fs.add_term((1,), (2, 1), 1)
    assert str(fs) == "(1 + s[1] + 2 s[2]) s[3] + s[1] s[2,1]"
    rows = fs.to_json_list()
    assert rows[0] == {"mu": [], "lambda": [3], "coeff": 1}
    # trivial lambda block comes first, then the two-row shape
    lam_order = [tuple(row["lambda"]) for row in rows]
    assert lam_order == [(3,), (3,), (3,), (2, 1)]


def test_series_dimension_counts_both_factors():
    fs = FrobeniusSeries(4)
    fs.add_term((), (4,), 1)
    fs.add_term((1,), (3, 1), 1)
    # dim = 1 + ell * f^(3,1) with f^(3,1) = 3
    assert fs.dimension(1) == 1 + 3
    assert fs.dimension(2) == 1 + 2 * 3


def test_hilbert_series_in_both_bases():
    module = module_of("e[1]^2", 3, 2)
    hs = hilbert_series(module)
    assert hs.basis == "schur"
    assert hs.coeffs == {(): QQ(1), (1,): QQ(1), (2,): QQ(1)}
    hh = hilbert_series_h(module)
    assert hh.basis == "homogeneous"
    assert hh.coeffs == {(): QQ(1), (1,): QQ(1), (2,): QQ(1)}
    module2 = module_of("p[2]", 3, 2)
    hs2 = hilbert_series(module2)
    assert hs2.coeffs == {(): QQ(1), (1,): QQ(3), (2,): QQ(1)}


def test_consistency_gate_accepts_good_modules():
    module = module_of("m[2,1]", 3, 2)
    fs = checked_frobenius(module)
    assert fs.dimension(2) == module.total_dimension()


def test_full_dimension_accounting_against_hilbert():
    for text, n, ell in [("p[3]", 3, 2), ("e[2]", 4, 1), ("h[2]", 3, 3)]:
        module = module_of(text, n, ell)
        hs = hilbert_series(module)
        from polmod.symfunc import schur_dimension

        total = hs.map_partition_weights(lambda mu: QQ(schur_dimension(mu, ell)))
        assert total == module.total_dimension()
