"""R-matrices, the Yang-Baxter equation and RTT relations.

Index convention: a composite index ``(i, k)`` means first tensor factor
``i`` and second factor ``k``; ``E_ij (x) E_kl`` has its single nonzero
entry at row ``(i, k)``, column ``(j, l)``.  Rows and columns are ordered
lexicographically.

The off-diagonal ``(q - q^-1)`` block of the GL_q(n) R-matrix sits at rows
``(i, k)`` with ``i > k`` by default.  With that placement ``R T1 T2 = T2 T1 R``
gives ``t11 t12 = q t12 t11`` and the ``(-q)^l`` determinant is central.  The
mirror placement (``placement="upper"``) gives the same algebra with ``q``
replaced by ``q^-1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import DomainError, NotOrientable, ParseError
from .ncpoly import (
    NCPolynomial,
    Presentation,
    RewriteRule,
    concat,
    format_terms,
    normal_form,
    specialize_q,
    word_key,
)
from .scalar import ONE, ZERO, LaurentScalar, as_q_power, eval_at, parse_scalar

Pair = Tuple[int, ...]
Sparse = Dict[Pair, Dict[Pair, LaurentScalar]]


@dataclass
class RMatrix:
    """An ``n^2 x n^2`` matrix of scalars indexed by pairs ``(i, k)``."""

    n: int
    entries: Dict[Tuple[Pair, Pair], LaurentScalar]

    def __post_init__(self):
        self.entries = {k: v for k, v in self.entries.items() if v}

    @classmethod
    def identity(cls, n: int) -> "RMatrix":
        return cls(n, {(p, p): ONE for p in product(range(1, n + 1), repeat=2)})

    def indices(self) -> List[Pair]:
        return list(product(range(1, self.n + 1), repeat=2))

    def entry(self, row: Pair, col: Pair) -> LaurentScalar:
        return self.entries.get((tuple(row), tuple(col)), ZERO)

    def specialize(self, q0) -> "RMatrix":
        return RMatrix(self.n, {k: LaurentScalar({0: eval_at(v, q0)}) for k, v in self.entries.items()})

    def dense(self) -> List[List[LaurentScalar]]:
        idx = self.indices()
        return [[self.entry(r, c) for c in idx] for r in idx]

    def render(self) -> str:
        rows = self.dense()
        if self.n == 1:
            return f"({rows[0][0].compact()})"
        cells = [[v.compact() for v in r] for r in rows]
        width = max(len(c) for r in cells for c in r)
        return "\n".join("[ " + "  ".join(c.rjust(width) for c in r) + " ]" for r in cells)

    def to_text(self) -> str:
        """Sparse triplets: ``i,k j,l scalar`` per nonzero entry."""
        lines = [f"n {self.n}"]
        for (r, c) in sorted(self.entries):
            lines.append(f"{r[0]},{r[1]} {c[0]},{c[1]} {self.entries[(r, c)]}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "RMatrix":
        n = None
        entries: Dict[Tuple[Pair, Pair], LaurentScalar] = {}
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if line.startswith("n "):
                n = int(line[2:])
                continue
            try:
                rtxt, ctxt, stxt = line.split(None, 2)
                r = tuple(int(x) for x in rtxt.split(","))
                c = tuple(int(x) for x in ctxt.split(","))
            except ValueError:
                raise ParseError(f"line {lineno}: expected 'i,k j,l scalar'") from None
            if len(r) != 2 or len(c) != 2:
                raise ParseError(f"line {lineno}: indices must be pairs")
            entries[(r, c)] = entries.get((r, c), ZERO) + parse_scalar(stxt)
        if n is None:
            raise ParseError("R-matrix text needs an 'n' line")
        for r, c in entries:
            if not all(1 <= x <= n for x in r + c):
                raise ParseError(f"index {r} {c} out of range for n={n}")
        return cls(n, entries)


def build_r_matrix(n: int, placement: str = "lower") -> RMatrix:
    """GL_q(n) R-matrix

    ``q sum E_ii(x)E_ii + sum_{i!=j} E_ii(x)E_jj + (q - q^-1) sum E_ij(x)E_ji``,
    the last sum over ``i > j`` (``placement="lower"``) or ``i < j`` (``"upper"``).
    """
    if n < 1:
        raise DomainError(f"need n >= 1, got {n}")
    if placement not in ("lower", "upper"):
        raise DomainError(f"placement must be 'lower' or 'upper', got {placement!r}")
    q = LaurentScalar({1: 1})
    qq = LaurentScalar({1: 1, -1: -1})
    entries: Dict[Tuple[Pair, Pair], LaurentScalar] = {}

    def put(i, j, k, l, v):
        key = ((i, k), (j, l))
        entries[key] = entries.get(key, ZERO) + v

    rng = range(1, n + 1)
    for i in rng:
        put(i, i, i, i, q)
        for j in rng:
            if i != j:
                put(i, i, j, j, ONE)
            if (i > j) if placement == "lower" else (i < j):
                put(i, j, j, i, qq)
    return RMatrix(n, entries)


# -- Yang-Baxter -------------------------------------------------------------


def _matmul(a: Sparse, b: Sparse) -> Sparse:
    out: Sparse = {}
    for r, row in a.items():
        acc: Dict[Pair, LaurentScalar] = {}
        for m, v in row.items():
            for c, w in b.get(m, {}).items():
                acc[c] = acc.get(c, ZERO) + v * w
        acc = {c: v for c, v in acc.items() if v}
        if acc:
            out[r] = acc
    return out


def _embed(R: RMatrix, sites: Tuple[int, int]) -> Sparse:
    """Place R on two of the three tensor sites by explicit index placement."""
    s, t = sites
    other = ({0, 1, 2} - {s, t}).pop()
    out: Sparse = {}
    rng = range(1, R.n + 1)
    for (r, c), v in R.entries.items():
        for x in rng:
            row = [0, 0, 0]
            col = [0, 0, 0]
            row[s], row[t], row[other] = r[0], r[1], x
            col[s], col[t], col[other] = c[0], c[1], x
            out.setdefault(tuple(row), {})[tuple(col)] = v
    return out


def three_site_operators(R: RMatrix) -> Tuple[Sparse, Sparse, Sparse]:
    return _embed(R, (0, 1)), _embed(R, (0, 2)), _embed(R, (1, 2))


@dataclass
class YBEResult:
    ok: bool
    witness: Optional[Tuple[Pair, Pair, LaurentScalar, LaurentScalar]] = None

    def __bool__(self):
        return self.ok


def check_ybe(R: RMatrix) -> YBEResult:
    """Compare ``R12 R13 R23`` with ``R23 R13 R12`` entry by entry."""
    r12, r13, r23 = three_site_operators(R)
    lhs = _matmul(_matmul(r12, r13), r23)
    rhs = _matmul(_matmul(r23, r13), r12)
    for row in sorted(set(lhs) | set(rhs)):
        lr, rr = lhs.get(row, {}), rhs.get(row, {})
        for col in sorted(set(lr) | set(rr)):
            a, b = lr.get(col, ZERO), rr.get(col, ZERO)
            if a != b:
                return YBEResult(False, (row, col, a, b))
    return YBEResult(True)


# -- RTT relations -----------------------------------------------------------


def t_labels(n: int) -> Tuple[str, ...]:
    sep = "" if n <= 9 else "_"
    return tuple(f"t{i}{sep}{j}" for i in range(1, n + 1) for j in range(1, n + 1))


def rtt_entry_equations(R: RMatrix) -> List[Tuple[Pair, Pair, NCPolynomial]]:
    """Every entry of ``R T1 T2 - T2 T1 R`` as a free polynomial in the t_ij.

    ``(T1 T2)_{(m,p),(j,l)} = t_mj t_pl`` and ``(T2 T1)_{(i,k),(m,p)} = t_kp t_im``.
    """
    n = R.n
    labels = t_labels(n)

    def t(i, j):
        return (i - 1) * n + (j - 1)

    idx = R.indices()
    out = []
    for row in idx:
        i, k = row
        for col in idx:
            j, l = col
            terms: Dict[Tuple[int, ...], LaurentScalar] = {}
            for m, p in idx:
                v = R.entry(row, (m, p))
                if v:
                    w = (t(m, j), t(p, l))
                    terms[w] = terms.get(w, ZERO) + v
                v = R.entry((m, p), col)
                if v:
                    w = (t(k, p), t(i, m))
                    terms[w] = terms.get(w, ZERO) - v
            out.append((row, col, NCPolynomial(labels, terms)))
    return out


@dataclass(frozen=True)
class QuadraticRelation:
    """``lhs = rhs`` with ``lhs`` the monic leading word of ``lhs - rhs``."""

    lhs: NCPolynomial
    rhs: NCPolynomial

    @property
    def difference(self) -> NCPolynomial:
        return self.lhs - self.rhs

    @classmethod
    def from_difference(cls, e: NCPolynomial) -> "QuadraticRelation":
        e = normalize_relation(e)
        lead = e.leading_word()
        lhs = NCPolynomial(e.alphabet, {lead: ONE})
        return cls(lhs, lhs - e)

    def render(self, latex: bool = False) -> str:
        def side(p):
            return format_terms(sorted(p.terms.items(), key=lambda kv: word_key(kv[0]), reverse=True), p.alphabet, latex)

        return f"{side(self.lhs)} = {side(self.rhs)}"

    def __str__(self):
        return self.render()


def _poly_content(c: LaurentScalar) -> Tuple[Fraction, int]:
    """Rational content and lowest exponent of a nonzero scalar."""
    coeffs = [v for _, v in c.items()]
    num = 0
    den = 1
    for v in coeffs:
        num = gcd(num, v.numerator)
        den = den * v.denominator // gcd(den, v.denominator)
    return Fraction(num, den), c.min_exponent()


def normalize_relation(e: NCPolynomial) -> NCPolynomial:
    """Scale a relation so its leading word has coefficient 1.

    When the leading coefficient is not a unit, the common factor of all
    coefficients is divided out first.
    """
    if e.is_zero():
        raise DomainError("cannot normalize the zero relation")
    common = None
    for _, c in e.items():
        common = c if common is None else _scalar_gcd(common, c)
    reduced = {w: c.divexact(common) for w, c in e.terms.items()}
    e = NCPolynomial(e.alphabet, reduced)
    lead = e.coefficient(e.leading_word())
    if as_q_power(lead) is not None:
        return e.scale(lead.inverse())
    content, _ = _poly_content(lead)
    sign = 1 if lead.items()[-1][1] > 0 else -1
    return e.scale(LaurentScalar({0: sign / content}))


def _scalar_gcd(a: LaurentScalar, b: LaurentScalar) -> LaurentScalar:
    """Monic gcd of two Laurent scalars, up to units ``c q^k``."""
    def to_poly(s):
        lo = s.min_exponent()
        return {k - lo: v for k, v in s.terms.items()}

    def poly_rem(x, y):
        x = dict(x)
        ty = max(y)
        while x and max(x) >= ty:
            tx = max(x)
            f = x[tx] / y[ty]
            for k, v in y.items():
                nv = x.get(k + tx - ty, 0) - f * v
                if nv:
                    x[k + tx - ty] = nv
                else:
                    x.pop(k + tx - ty, None)
        return x

    x, y = to_poly(a), to_poly(b)
    while y:
        x, y = y, poly_rem(x, y)
    lead = x[max(x)]
    return LaurentScalar({k: v / lead for k, v in x.items()})


def _eliminate(row: Dict[Tuple[int, ...], LaurentScalar], basis) -> Dict[Tuple[int, ...], LaurentScalar]:
    """Fraction-free reduction of ``row`` against an echelon ``basis``.

    ``basis`` maps a pivot word to a row whose leading word is that pivot.
    Pivots are visited from heaviest to lightest, so each is cleared once.
    """
    row = dict(row)
    for piv in sorted(basis, key=word_key, reverse=True):
        c = row.get(piv)
        if not c:
            continue
        prow = basis[piv]
        pc = prow[piv]
        new = {w: v * pc for w, v in row.items()}
        for w, v in prow.items():
            new[w] = new.get(w, ZERO) - c * v
        row = {w: v for w, v in new.items() if v}
        if row:
            g = None
            for v in row.values():
                g = v if g is None else _scalar_gcd(g, v)
            row = {w: v.divexact(g) for w, v in row.items()}
    return row


def extract_rtt_relations(R: RMatrix) -> List[QuadraticRelation]:
    """A basis of the entry equations of ``R T1 T2 = T2 T1 R``.

    Equations are taken lightest first (ties broken by their word lists) and
    kept only when linearly independent over Q(q) of those already kept.
    """
    cands = {}
    for _, _, e in rtt_entry_equations(R):
        if not e.is_zero():
            rel = QuadraticRelation.from_difference(e)
            cands[rel.difference] = rel

    def order(rel):
        words = sorted(rel.difference.terms, key=word_key, reverse=True)
        return ([word_key(w) for w in words], words)

    basis: Dict[Tuple[int, ...], Dict[Tuple[int, ...], LaurentScalar]] = {}
    kept = []
    for rel in sorted(cands.values(), key=order):
        rest = _eliminate(rel.difference.terms, basis)
        if rest:
            basis[max(rest, key=word_key)] = rest
            kept.append(rel)
    return sorted(kept, key=lambda r: word_key(r.lhs.leading_word()), reverse=True)


def presentation_from_relations(
    rels: Sequence[QuadraticRelation], alphabet: Optional[Sequence[str]] = None, name: str = "rtt"
) -> Presentation:
    """Orient each relation into a rewrite rule for its leading pair."""
    if alphabet is None:
        if not rels:
            raise DomainError("an empty relation list needs an explicit alphabet")
        alphabet = rels[0].lhs.alphabet
    alphabet = tuple(alphabet)
    rules: Dict[Tuple[int, int], RewriteRule] = {}
    for rel in rels:
        e = normalize_relation(rel.difference)
        if e.alphabet != alphabet:
            raise DomainError("relation over a different alphabet")
        lead = e.leading_word()
        if len(lead) != 2 or lead[0] >= lead[1]:
            raise NotOrientable(rel, "leading word is not an out-of-order generator pair")
        a, b = lead
        swap = ZERO
        lower = []
        for w, c in e.items():
            if w == lead:
                continue
            if w == (b, a):
                swap = -c
            else:
                lower.append((-c, w))
        rule = RewriteRule((a, b), swap, tuple(sorted(lower, key=lambda cw: word_key(cw[1]), reverse=True)))
        old = rules.get((a, b))
        if old is not None and old != rule:
            raise NotOrientable(rel, "conflicts with another relation on the same pair")
        rules[(a, b)] = rule
    pres = Presentation(alphabet, rules.values(), name=name)
    for rel in rels:
        if not normal_form(rel.difference, pres).is_zero():
            raise NotOrientable(rel, "does not reduce to zero in the oriented presentation")
    return pres


def quantum_matrix_presentation(n: int = 2) -> Presentation:
    """Presentation of the quantum matrix algebra obtained from the builtin R."""
    rels = extract_rtt_relations(build_r_matrix(n))
    return presentation_from_relations(rels, t_labels(n), name=f"rtt-gl{n}")


def rtt_residual(R: RMatrix, pres: Presentation) -> List[Tuple[Pair, Pair, NCPolynomial]]:
    """Entries of ``R T1 T2 - T2 T1 R`` that survive normal ordering."""
    out = []
    for row, col, e in rtt_entry_equations(R):
        r = normal_form(e, pres)
        if not r.is_zero():
            out.append((row, col, r))
    return out


def quantum_determinant_t(n: int, with_q: bool = True) -> NCPolynomial:
    """``sum_sigma (-q)^l(sigma) t_{1 s(1)} ... t_{n s(n)}`` in the free algebra.

    ``with_q=False`` gives the plain signed sum, used as a negative control.
    """
    from .combinat import enumerate_permutations

    labels = t_labels(n)
    terms: Dict[Tuple[int, ...], LaurentScalar] = {}
    for sigma in enumerate_permutations(n):
        ell = sigma.inversions()
        c = LaurentScalar({ell: (-1) ** ell}) if with_q else LaurentScalar({0: (-1) ** ell})
        w = tuple((i - 1) * n + sigma(i) - 1 for i in range(1, n + 1))
        terms[w] = terms.get(w, ZERO) + c
    return NCPolynomial(labels, terms)


def commutator_residuals(d: NCPolynomial, pres: Presentation) -> List[NCPolynomial]:
    out = []
    for g in range(len(pres.alphabet)):
        t = NCPolynomial.from_word(pres.alphabet, (g,))
        out.append(normal_form(concat(d, t) - concat(t, d), pres))
    return out


def check_detq_central(n: int = 2, determinant: Optional[NCPolynomial] = None, q0=None) -> bool:
    """True iff ``det_q T`` commutes with every ``t_ij`` modulo the RTT relations."""
    if n != 2:
        raise DomainError("centrality check is only supported for n = 2")
    pres = quantum_matrix_presentation(n)
    d = quantum_determinant_t(n) if determinant is None else determinant
    for r in commutator_residuals(d, pres):
        if q0 is not None:
            r = specialize_q(r, q0, commutative=True)
        if not r.is_zero():
            return False
    return True
