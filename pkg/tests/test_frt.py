from itertools import product

import pytest

from qpfaff.errors import DomainError, NotOrientable, ParseError
from qpfaff.frt import (
    QuadraticRelation,
    RMatrix,
    _matmul,
    build_r_matrix,
    check_detq_central,
    check_ybe,
    commutator_residuals,
    extract_rtt_relations,
    presentation_from_relations,
    quantum_determinant_t,
    quantum_matrix_presentation,
    rtt_entry_equations,
    rtt_residual,
    t_labels,
    three_site_operators,
)
from qpfaff.ncpoly import NCPolynomial, normal_form, parse_ncpoly
from qpfaff.scalar import ONE, Q, Q_INV

T2 = t_labels(2)


def rel(text):
    lhs, rhs = text.split("=")
    return QuadraticRelation.from_difference(parse_ncpoly(lhs, T2) - parse_ncpoly(rhs, T2))


EXPECTED_N2 = [
    "t11*t12 = q*t12*t11",
    "t11*t21 = q*t21*t11",
    "t12*t22 = q*t22*t12",
    "t21*t22 = q*t22*t21",
    "t12*t21 = t21*t12",
    "t11*t22 = t22*t11 + (q - q^-1)*t12*t21",
]


def test_r_matrix_small():
    assert build_r_matrix(1).render() == "(q)"
    R = build_r_matrix(2)
    diag = [R.entry(p, p) for p in R.indices()]
    assert diag == [Q, ONE, ONE, Q]
    off = {k: v for k, v in R.entries.items() if k[0] != k[1]}
    assert off == {((2, 1), (1, 2)): Q - Q_INV}
    assert build_r_matrix(2, "upper").entries.get(((1, 2), (2, 1))) == Q - Q_INV


def test_r_matrix_classical_limit():
    for n in (1, 2, 3):
        assert build_r_matrix(n).specialize(1) == RMatrix.identity(n)


def test_r_matrix_errors():
    with pytest.raises(DomainError):
        build_r_matrix(0)
    with pytest.raises(DomainError):
        build_r_matrix(2, "diagonal")


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("placement", ["lower", "upper"])
def test_ybe(n, placement):
    assert check_ybe(build_r_matrix(n, placement))


def test_ybe_identity_and_failure_witness():
    assert check_ybe(RMatrix.identity(2))
    R = build_r_matrix(2)
    broken = RMatrix(2, dict(R.entries))
    broken.entries[((1, 2), (2, 1))] = Q
    res = check_ybe(broken)
    assert not res and res.witness is not None


def _swap23(n):
    out = {}
    for a, b, c in product(range(1, n + 1), repeat=3):
        out[(a, b, c)] = {(a, c, b): ONE}
    return out


@pytest.mark.parametrize("n", [2, 3])
def test_r13_by_explicit_placement_matches_swap_conjugation(n):
    r12, r13, _ = three_site_operators(build_r_matrix(n))
    P = _swap23(n)
    assert _matmul(_matmul(P, r12), P) == r13


def test_entry_equation_count():
    eqs = rtt_entry_equations(build_r_matrix(2))
    assert len(eqs) == 16
    assert sum(1 for *_, e in eqs if not e.is_zero()) == 12


def test_relations_n1_empty():
    assert extract_rtt_relations(build_r_matrix(1)) == []


def test_relations_n2_match_expected():
    rels = extract_rtt_relations(build_r_matrix(2))
    assert len(rels) == 6
    pres = presentation_from_relations(rels, T2)
    for text in EXPECTED_N2:
        assert normal_form(rel(text).difference, pres).is_zero(), text
    # and conversely every extracted relation lies in the span of the expected list
    expected = presentation_from_relations([rel(t) for t in EXPECTED_N2], T2)
    for r in rels:
        assert normal_form(r.difference, expected).is_zero()


def test_relations_back_substitution():
    R = build_r_matrix(2)
    pres = quantum_matrix_presentation(2)
    assert rtt_residual(R, pres) == []


def test_relation_rendering_canonical():
    rels = extract_rtt_relations(build_r_matrix(2))
    assert [str(r) for r in rels] == [
        "t11*t12 = q*t12*t11",
        "t11*t21 = q*t21*t11",
        "t11*t22 = (q - q^-1)*t21*t12 + t22*t11",
        "t12*t21 = t21*t12",
        "t12*t22 = q*t22*t12",
        "t21*t22 = q*t22*t21",
    ]


def test_round_trip_soundness():
    rels = extract_rtt_relations(build_r_matrix(2))
    pres = presentation_from_relations(rels, T2)
    for r in rels:
        assert normal_form(r.lhs, pres) == normal_form(r.rhs, pres)


def test_n3_relations():
    R = build_r_matrix(3)
    rels = extract_rtt_relations(R)
    assert len(rels) == 36
    assert rtt_residual(R, quantum_matrix_presentation(3)) == []


def test_relations_at_q_one_are_commutators():
    rels = extract_rtt_relations(build_r_matrix(2).specialize(1))
    for r in rels:
        (w, c), = r.lhs.items()
        assert r.rhs == NCPolynomial(T2, {(w[1], w[0]): ONE})


def test_upper_placement_is_the_mirror_algebra():
    R = build_r_matrix(2, "upper")
    rels = extract_rtt_relations(R)
    assert str(rels[0]) == "t11*t12 = q^-1*t12*t11"
    pres = presentation_from_relations(rels, T2)
    assert rtt_residual(R, pres) == []
    d_q = quantum_determinant_t(2)
    d_qinv = parse_ncpoly("t11*t22 - q^-1*t12*t21", T2)
    assert any(not r.is_zero() for r in commutator_residuals(d_q, pres))
    assert all(r.is_zero() for r in commutator_residuals(d_qinv, pres))


def test_presentation_from_relations_errors():
    ab = ("a", "b")
    r1 = QuadraticRelation.from_difference(parse_ncpoly("a*b - b*a", ab))
    r2 = QuadraticRelation.from_difference(parse_ncpoly("b*a - 2*a*b", ab))
    with pytest.raises(NotOrientable):
        presentation_from_relations([r1, r2])
    free = presentation_from_relations([], ("t",))
    assert free.rules == {}
    with pytest.raises(DomainError):
        presentation_from_relations([])


def test_relation_normalization():
    r = QuadraticRelation.from_difference(parse_ncpoly("(q^2 - 1)*t11*t12 - (q^3 - q)*t12*t11", T2))
    assert str(r) == "t11*t12 = q*t12*t11"
    r = QuadraticRelation.from_difference(parse_ncpoly("-2*t12*t21 + 2*t21*t12", T2))
    assert str(r) == "t12*t21 = t21*t12"


def test_quantum_determinant_t():
    assert quantum_determinant_t(2) == parse_ncpoly("t11*t22 - q*t12*t21", T2)
    assert quantum_determinant_t(2, with_q=False) == parse_ncpoly("t11*t22 - t12*t21", T2)
    d3 = quantum_determinant_t(3)
    assert len(d3) == 6


def test_centrality():
    assert check_detq_central(2)
    assert not check_detq_central(2, quantum_determinant_t(2, with_q=False))
    assert check_detq_central(2, quantum_determinant_t(2, with_q=False), q0=1)
    with pytest.raises(DomainError):
        check_detq_central(3)


def test_r_matrix_text_round_trip():
    for n in (1, 2, 3):
        R = build_r_matrix(n)
        text = R.to_text()
        again = RMatrix.from_text(text)
        assert again == R and again.to_text() == text


@pytest.mark.parametrize("text", ["1,1 1,1 q\n", "n 2\n1,1 q\n", "n 2\n1,3 1,1 q\n", "n 2\n1 1 q\n"])
def test_r_matrix_text_errors(text):
    with pytest.raises(ParseError):
        RMatrix.from_text(text)
