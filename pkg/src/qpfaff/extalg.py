"""Quantum exterior algebra on v_1..v_2n with noncommutative coefficients.

Basis elements are strictly increasing index tuples.  Reordering a
concatenated tuple costs one factor ``swap`` (default ``-q``) per inversion,
so ``v2 ^ v1 = -q v1 ^ v2``; repeated indices vanish.  Coefficients live in
the algebra of a presentation and commute with every ``v_i``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Mapping, Optional, Sequence, Tuple

from .combinat import _word_inversions
from .errors import DegenerateInput, DomainError
from .ncpoly import NCPolynomial, Presentation, format_terms, nc_mul, specialize_q
from .qlinalg import SkewMatrixSym, quantum_pfaffian
from .scalar import LaurentScalar, eval_at

Basis = Tuple[int, ...]
MINUS_Q = LaurentScalar({1: -1})


class WedgeElement:
    """Finite sum ``sum_I c_I v_I`` over increasing tuples ``I``."""

    __slots__ = ("dim", "alphabet", "_terms")

    def __init__(self, dim: int, alphabet: Sequence[str], terms: Optional[Mapping[Basis, NCPolynomial]] = None):
        self.dim = dim
        self.alphabet = tuple(alphabet)
        clean: Dict[Basis, NCPolynomial] = {}
        for idx, c in (terms or {}).items():
            idx = tuple(idx)
            if any(a >= b for a, b in zip(idx, idx[1:])):
                raise DomainError(f"basis tuple {idx} is not strictly increasing")
            if idx and not (1 <= idx[0] and idx[-1] <= dim):
                raise DomainError(f"basis tuple {idx} out of range for dimension {dim}")
            if c.alphabet != self.alphabet:
                raise DomainError("coefficient over a different alphabet")
            if not c.is_zero():
                clean[idx] = c
        self._terms = clean

    @classmethod
    def basis(cls, dim: int, alphabet: Sequence[str], idx: Sequence[int], coeff: Optional[NCPolynomial] = None):
        """``coeff * v_{i1} ^ ... ^ v_{ik}``; ``idx`` must already be increasing."""
        if coeff is None:
            coeff = NCPolynomial.one(alphabet)
        return cls(dim, alphabet, {tuple(idx): coeff})

    @property
    def terms(self) -> Dict[Basis, NCPolynomial]:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items(), key=lambda kv: (len(kv[0]), kv[0]))

    def coefficient(self, idx: Sequence[int]) -> NCPolynomial:
        return self._terms.get(tuple(idx), NCPolynomial.zero(self.alphabet))

    def grades(self) -> set:
        return {len(i) for i in self._terms}

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self):
        return len(self._terms)

    def _check(self, other: "WedgeElement"):
        if self.dim != other.dim or self.alphabet != other.alphabet:
            raise DomainError("wedge elements of different shape")

    def __add__(self, other: "WedgeElement") -> "WedgeElement":
        self._check(other)
        out = dict(self._terms)
        for idx, c in other._terms.items():
            out[idx] = out[idx] + c if idx in out else c
        return WedgeElement(self.dim, self.alphabet, out)

    def __eq__(self, other):
        if not isinstance(other, WedgeElement):
            return NotImplemented
        return self.dim == other.dim and self.alphabet == other.alphabet and self._terms == other._terms

    def __hash__(self):
        return hash((self.dim, self.alphabet, frozenset(self._terms.items())))

    def __repr__(self):
        return f"WedgeElement({render_wedge(self)})"


def sort_with_sign(idx: Sequence[int], swap: LaurentScalar = MINUS_Q) -> Optional[Tuple[Basis, LaurentScalar]]:
    """Sorted tuple and ``swap ** inversions``, or None on a repeated index."""
    idx = tuple(idx)
    if len(set(idx)) != len(idx):
        return None
    return tuple(sorted(idx)), swap ** _word_inversions(idx)


def wedge_mul(
    a: WedgeElement, b: WedgeElement, pres: Presentation, swap: LaurentScalar = MINUS_Q, strategy: str = "leftmost"
) -> WedgeElement:
    """Product in the exterior algebra; coefficients multiply with ``nc_mul``."""
    a._check(b)
    if pres.alphabet != a.alphabet:
        raise DomainError("presentation alphabet does not match the coefficients")
    out: Dict[Basis, NCPolynomial] = {}
    for i, ca in a._terms.items():
        for j, cb in b._terms.items():
            sorted_ = sort_with_sign(i + j, swap)
            if sorted_ is None:
                continue
            k, factor = sorted_
            c = nc_mul(ca, cb, pres, strategy).scale(factor)
            out[k] = out[k] + c if k in out else c
    return WedgeElement(a.dim, a.alphabet, out)


def omega_from_matrix(A: SkewMatrixSym) -> WedgeElement:
    """``sum_{i<j} a_ij v_i ^ v_j``."""
    if A.dim % 2:
        raise DomainError(f"the 2-form needs even dimension, got {A.dim}")
    terms = {}
    for i in range(1, A.dim + 1):
        for j in range(i + 1, A.dim + 1):
            terms[(i, j)] = NCPolynomial.from_word(A.labels, (A.slot_index(i, j),))
    return WedgeElement(A.dim, A.labels, terms)


def wedge_power(omega: WedgeElement, n: int, pres: Presentation, swap: LaurentScalar = MINUS_Q) -> WedgeElement:
    """Left fold ``((omega ^ omega) ^ omega) ...`` with ``n`` factors."""
    if n < 1:
        raise DomainError(f"need n >= 1, got {n}")
    out = omega
    for _ in range(n - 1):
        out = wedge_mul(out, omega, pres, swap)
    return out


def _ratio(top: NCPolynomial, pf: NCPolynomial) -> Optional[LaurentScalar]:
    if pf.is_zero():
        return None
    w = pf.leading_word()
    s = top.coefficient(w).divexact(pf.coefficient(w))
    if s is None or top != pf.scale(s):
        return None
    return s


def wedge_power_top(
    A: SkewMatrixSym, q0=None, swap: LaurentScalar = MINUS_Q
) -> Tuple[NCPolynomial, Optional[LaurentScalar]]:
    """Coefficient of ``v_1 ^ ... ^ v_2n`` in ``omega^n`` and its ratio to Pf_q.

    The ratio is the scalar ``s`` with ``top = s * Pf_q(A)`` when one exists,
    otherwise None.  With ``q0`` both sides are specialized at ``q = q0`` and
    compared as commutative polynomials.
    """
    if A.dim % 2:
        raise DomainError(f"need even dimension, got {A.dim}")
    n = A.dim // 2
    if n > 3:
        raise DomainError(f"wedge powers are capped at 2n <= 6, got {A.dim}")
    pres = A.presentation
    power = wedge_power(omega_from_matrix(A), n, pres, swap)
    top = power.coefficient(tuple(range(1, A.dim + 1)))
    pf = quantum_pfaffian(A)
    if q0 is not None:
        q0 = Fraction(q0)
        top = specialize_q(top, q0, commutative=True)
        pf = specialize_q(pf, q0, commutative=True)
    if top.is_zero():
        raise DegenerateInput("top coefficient of the wedge power is zero")
    return top, _ratio(top, pf)


def render_wedge(x: WedgeElement, latex: bool = False) -> str:
    """``x v1^v2 + y v1^v3`` or the LaTeX equivalent."""
    if x.is_zero():
        return "0"
    parts = []
    for idx, c in x.items():
        coeff = format_terms(c.items(), c.alphabet, latex)
        if len(c) > 1 or coeff.startswith("-"):
            coeff = rf"\left({coeff}\right)" if latex else f"({coeff})"
        if latex:
            vol = r" \wedge ".join(f"v_{{{i}}}" for i in idx)
            parts.append(rf"{coeff} \, {vol}" if idx else coeff)
        else:
            vol = "^".join(f"v{i}" for i in idx)
            parts.append(f"{coeff} {vol}" if idx else coeff)
    return " + ".join(parts)


def specialize_ratio(s: Optional[LaurentScalar], q0) -> Optional[Fraction]:
    return None if s is None else eval_at(s, q0)
