"""Classical and quantum Pfaffians and determinants of skew matrices."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .combinat import enumerate_matchings, enumerate_permutations, matching_inversions, matching_sign
from .errors import DegenerateInput, DomainError, ParseError
from .ncpoly import (
    NCPolynomial,
    Presentation,
    normal_form,
    nc_mul,
    specialize_q,
    uniform_q_presentation,
)
from .scalar import ONE, LaurentScalar

MINUS_Q = LaurentScalar({1: -1})

LABELS_4 = ("x", "y", "z", "u", "v", "w")


def _slots(dim: int) -> List[Tuple[int, int]]:
    return [(i, j) for i in range(1, dim + 1) for j in range(i + 1, dim + 1)]


def default_labels(dim: int) -> Tuple[str, ...]:
    if dim <= 9:
        return tuple(f"a{i}{j}" for i, j in _slots(dim))
    return tuple(f"a{i}_{j}" for i, j in _slots(dim))


class SkewMatrixNum:
    """Skew-symmetric matrix with exact rational entries; upper triangle stored."""

    def __init__(self, dim: int, upper: Mapping[Tuple[int, int], object]):
        if dim < 0:
            raise DomainError(f"bad dimension {dim}")
        self.dim = dim
        self.upper: Dict[Tuple[int, int], Fraction] = {}
        for (i, j), v in upper.items():
            if not (1 <= i < j <= dim):
                raise DomainError(f"slot ({i},{j}) is not strictly upper triangular for dim {dim}")
            self.upper[(i, j)] = Fraction(v)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "SkewMatrixNum":
        n = len(rows)
        for i in range(n):
            if len(rows[i]) != n:
                raise DomainError("matrix is not square")
            for j in range(n):
                if Fraction(rows[i][j]) != -Fraction(rows[j][i]):
                    raise DomainError(f"entries ({i+1},{j+1}) and ({j+1},{i+1}) are not skew")
        return cls(n, {(i, j): rows[i - 1][j - 1] for i, j in _slots(n)})

    @classmethod
    def from_upper_list(cls, dim: int, values: Sequence) -> "SkewMatrixNum":
        slots = _slots(dim)
        if len(values) != len(slots):
            raise DomainError(f"need {len(slots)} upper-triangle values for dim {dim}")
        return cls(dim, dict(zip(slots, values)))

    def entry(self, i: int, j: int) -> Fraction:
        if i == j:
            return Fraction(0)
        if i < j:
            return self.upper.get((i, j), Fraction(0))
        return -self.upper.get((j, i), Fraction(0))

    def rows(self) -> List[List[Fraction]]:
        return [[self.entry(i, j) for j in range(1, self.dim + 1)] for i in range(1, self.dim + 1)]

    def scaled(self, i: int, t) -> "SkewMatrixNum":
        """Multiply row ``i`` and column ``i`` by ``t``."""
        t = Fraction(t)
        return SkewMatrixNum(self.dim, {(a, b): v * t if i in (a, b) else v for (a, b), v in self.upper.items()})


class SkewMatrixSym:
    """q-skew-symmetric matrix of noncommuting generators.

    Upper-triangle slots carry generators (alphabet in lexicographic slot
    order); the entry below the diagonal is ``a_ji = -q * a_ij``.
    """

    def __init__(self, dim: int, labels: Optional[Sequence[str]] = None, presentation: Optional[Presentation] = None):
        if dim < 1:
            raise DomainError(f"bad dimension {dim}")
        self.dim = dim
        slots = _slots(dim)
        if labels is None:
            labels = presentation.alphabet if presentation is not None else default_labels(dim)
        labels = tuple(labels)
        if len(labels) != len(slots):
            raise DomainError(f"dimension {dim} needs {len(slots)} labels, got {len(labels)}")
        if presentation is None:
            presentation = uniform_q_presentation(labels)
        if presentation.alphabet != labels:
            raise DomainError("presentation alphabet must list the slot generators in lexicographic slot order")
        self.labels = labels
        self.presentation = presentation
        self._slot_index = {s: k for k, s in enumerate(slots)}

    @classmethod
    def example_4x4(cls, presentation: Optional[Presentation] = None) -> "SkewMatrixSym":
        """The 4x4 matrix with entries x, y, z, u, v, w."""
        return cls(4, LABELS_4, presentation)

    def with_presentation(self, presentation: Presentation) -> "SkewMatrixSym":
        return SkewMatrixSym(self.dim, self.labels, presentation)

    @property
    def alphabet(self) -> Tuple[str, ...]:
        return self.labels

    def slot_index(self, i: int, j: int) -> int:
        return self._slot_index[(i, j)]

    def entry_term(self, i: int, j: int) -> Optional[Tuple[LaurentScalar, int]]:
        """``(coefficient, generator index)`` of entry (i, j), or None on the diagonal."""
        if i == j:
            return None
        if i < j:
            return ONE, self._slot_index[(i, j)]
        return MINUS_Q, self._slot_index[(j, i)]

    def entry(self, i: int, j: int) -> NCPolynomial:
        t = self.entry_term(i, j)
        if t is None:
            return NCPolynomial(self.labels)
        return NCPolynomial(self.labels, {(t[1],): t[0]})


# -- classical ---------------------------------------------------------------


def classical_pfaffian(A: SkewMatrixNum) -> Fraction:
    if A.dim % 2:
        raise DomainError(f"Pfaffian needs even dimension, got {A.dim}")
    if A.dim == 0:
        return Fraction(1)
    total = Fraction(0)
    for pi in enumerate_matchings(A.dim):
        prod = Fraction(matching_sign(pi))
        for i, j in pi:
            prod *= A.entry(i, j)
            if not prod:
                break
        total += prod
    return total


def classical_determinant(M) -> Fraction:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    rows = M.rows() if isinstance(M, SkewMatrixNum) else [[Fraction(x) for x in r] for r in M]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise DomainError("determinant needs a square matrix")
    if n == 0:
        return Fraction(1)
    a = [list(r) for r in rows]
    sgn = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if a[r][k] != 0), None)
            if swap is None:
                return Fraction(0)
            a[k], a[swap] = a[swap], a[k]
            sgn = -sgn
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev
        prev = a[k][k]
    return sgn * a[n - 1][n - 1]


def cofactor_determinant(M) -> Fraction:
    """Laplace expansion along the first row; only for small matrices."""
    rows = [[Fraction(x) for x in r] for r in (M.rows() if isinstance(M, SkewMatrixNum) else M)]
    n = len(rows)
    if n == 0:
        return Fraction(1)
    if n == 1:
        return rows[0][0]
    total = Fraction(0)
    for j in range(n):
        if rows[0][j]:
            minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
            total += (-1) ** j * rows[0][j] * cofactor_determinant(minor)
    return total


# -- quantum -----------------------------------------------------------------


def quantum_pfaffian(A: SkewMatrixSym, strategy: str = "leftmost") -> NCPolynomial:
    """Matching sum ``sum (-q)^inv(pi) a_{i1 j1} a_{i2 j2} ...``, normal ordered."""
    if A.dim % 2:
        raise DomainError(f"Pfaffian needs even dimension, got {A.dim}")
    terms: Dict[Tuple[int, ...], LaurentScalar] = {}
    for pi in enumerate_matchings(A.dim):
        word = tuple(A.slot_index(i, j) for i, j in pi)
        c = MINUS_Q ** matching_inversions(pi)
        terms[word] = terms.get(word, LaurentScalar()) + c
    return normal_form(NCPolynomial(A.labels, terms), A.presentation, strategy)


def quantum_determinant(A: SkewMatrixSym, strategy: str = "leftmost") -> NCPolynomial:
    """Permutation sum ``sum (-q)^l(sigma) a_{1 s(1)} ... a_{m s(m)}`` with row-ordered products.

    Entries below the diagonal contribute their ``-q`` factor up front;
    permutations with a fixed point hit the zero diagonal and drop out.
    """
    terms: Dict[Tuple[int, ...], LaurentScalar] = {}
    for sigma in enumerate_permutations(A.dim):
        word = []
        coeff = MINUS_Q ** sigma.inversions()
        for i in range(1, A.dim + 1):
            t = A.entry_term(i, sigma(i))
            if t is None:
                break
            coeff = coeff * t[0]
            word.append(t[1])
        else:
            w = tuple(word)
            terms[w] = terms.get(w, LaurentScalar()) + coeff
    return normal_form(NCPolynomial(A.labels, terms), A.presentation, strategy)


@dataclass
class IdentityScanResult:
    """Outcome of testing ``det_q == sign * q^c * Pf_q^2`` term by term."""

    status: str  # "ExactPower" or "Failure"
    presentation_name: str
    c: Optional[int] = None
    sign: Optional[int] = None
    residual: Optional[NCPolynomial] = None
    best_c: Optional[int] = None
    best_sign: Optional[int] = None
    pf_squared: Optional[object] = field(default=None, repr=False)
    det: Optional[object] = field(default=None, repr=False)

    @property
    def exact(self) -> bool:
        return self.status == "ExactPower"

    def summary(self) -> str:
        if self.exact:
            return f"ExactPower sign={self.sign:+d} c={self.c} [{self.presentation_name}]"
        return (
            f"Failure best sign={self.best_sign:+d} c={self.best_c} "
            f"residual terms={len(self.residual)} [{self.presentation_name}]"
        )


def default_c_range(dim: int) -> Tuple[int, int]:
    n = dim // 2
    bound = max(2 * n * n, 1)
    return -bound, bound


def _candidates(c_range):
    lo, hi = c_range
    if lo > hi:
        raise DomainError(f"empty c range {c_range}")
    for c in sorted(range(lo, hi + 1), key=lambda c: (abs(c), c)):
        for s in (1, -1):
            yield s, c


def identity_scan(A, c_range: Optional[Tuple[int, int]] = None, q0=None, strategy: str = "leftmost") -> IdentityScanResult:
    """Search for ``sign`` and ``c`` with ``det_q(A) = sign * q^c * Pf_q(A)^2``.

    ``A`` is a :class:`SkewMatrixSym` (symbolic) or a :class:`SkewMatrixNum`
    (numbers, i.e. the q = 1 world).  With ``q0`` set, symbolic results are
    specialized at ``q = q0`` and compared as commutative polynomials.
    """
    if c_range is None:
        c_range = default_c_range(A.dim)

    if isinstance(A, SkewMatrixNum):
        pf = classical_pfaffian(A)
        if pf == 0:
            raise DegenerateInput("Pfaffian is zero")
        p2, d = pf * pf, classical_determinant(A)
        best = None
        for s, c in _candidates(c_range):
            r = d - s * p2
            if r == 0:
                return IdentityScanResult("ExactPower", "numeric", c=c, sign=s, pf_squared=p2, det=d)
            if best is None:
                best = (s, c, r)
        s, c, r = best
        return IdentityScanResult(
            "Failure", "numeric", residual=NCPolynomial((), {(): r}), best_c=c, best_sign=s, pf_squared=p2, det=d
        )

    pres = A.presentation
    pf = quantum_pfaffian(A, strategy)
    p2 = nc_mul(pf, pf, pres, strategy)
    d = quantum_determinant(A, strategy)
    name = pres.name
    if q0 is not None:
        pf = specialize_q(pf, q0, commutative=True)
        p2 = specialize_q(p2, q0, commutative=True)
        d = specialize_q(d, q0, commutative=True)
        name = f"{name}@q={q0}"
    if pf.is_zero():
        raise DegenerateInput("quantum Pfaffian is zero")

    best = None
    for s, c in _candidates(c_range):
        factor = LaurentScalar({c: s}) if q0 is None else LaurentScalar({0: s * Fraction(q0) ** c})
        r = d - p2.scale(factor)
        if r.is_zero():
            return IdentityScanResult("ExactPower", name, c=c, sign=s, pf_squared=p2, det=d)
        if best is None or len(r) < len(best[2]):
            best = (s, c, r)
    s, c, r = best
    return IdentityScanResult("Failure", name, residual=r, best_c=c, best_sign=s, pf_squared=p2, det=d)


# -- matrix files ------------------------------------------------------------


def parse_matrix(text: str):
    """Read a matrix file.

    ::

        dim 4
        mode numeric          # or: symbolic
        1 2 3                 # i j value   (numeric)
        1 2 x                 # i j label   (symbolic)

    Symbolic files list every upper slot; labels must appear in lexicographic
    slot order.  Missing numeric slots are zero.
    """
    dim = None
    mode = None
    entries: Dict[Tuple[int, int], str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        if toks[0] == "dim" and len(toks) == 2:
            try:
                dim = int(toks[1])
            except ValueError:
                raise ParseError(f"line {lineno}: bad dimension {toks[1]!r}") from None
        elif toks[0] == "mode" and len(toks) == 2:
            if toks[1] not in ("numeric", "symbolic"):
                raise ParseError(f"line {lineno}: mode must be numeric or symbolic")
            mode = toks[1]
        elif len(toks) == 3:
            try:
                i, j = int(toks[0]), int(toks[1])
            except ValueError:
                raise ParseError(f"line {lineno}: expected 'i j value'") from None
            if (i, j) in entries:
                raise ParseError(f"line {lineno}: slot ({i},{j}) given twice")
            entries[(i, j)] = toks[2]
        else:
            raise ParseError(f"line {lineno}: cannot parse {raw!r}")
    if dim is None or mode is None:
        raise ParseError("matrix file needs 'dim' and 'mode' lines")
    for i, j in entries:
        if not (1 <= i < j <= dim):
            raise ParseError(f"slot ({i},{j}) is not strictly upper triangular for dim {dim}")
    if mode == "numeric":
        try:
            return SkewMatrixNum(dim, {k: Fraction(v) for k, v in entries.items()})
        except (ValueError, ZeroDivisionError):
            raise ParseError("numeric matrix has a non-rational entry") from None
    slots = _slots(dim)
    missing = [s for s in slots if s not in entries]
    if missing:
        raise ParseError(f"symbolic matrix misses slots {missing}")
    labels = [entries[s] for s in slots]
    try:
        return SkewMatrixSym(dim, labels)
    except DomainError as exc:
        raise ParseError(str(exc)) from None


def format_matrix(A) -> str:
    if isinstance(A, SkewMatrixNum):
        lines = [f"dim {A.dim}", "mode numeric"]
        lines += [f"{i} {j} {A.entry(i, j)}" for i, j in _slots(A.dim)]
    else:
        lines = [f"dim {A.dim}", "mode symbolic"]
        lines += [f"{i} {j} {A.labels[k]}" for k, (i, j) in enumerate(_slots(A.dim))]
    return "\n".join(lines) + "\n"
