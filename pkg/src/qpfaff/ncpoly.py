"""Noncommutative polynomials, quadratic rewrite rules and normal ordering.

Words are tuples of generator indices into an ordered alphabet.  A word is
in normal order when its indices are non-increasing, i.e. generators that
come later in the alphabet are written first.  An adjacent pair ``g_a g_b``
with ``a < b`` is out of order and must be rewritten by the rule registered
for that pair::

    g_a g_b  ->  swap * g_b g_a  +  sum(c_i * w_i)

where every correction word ``w_i`` is smaller than ``g_a g_b`` in the term
order (:func:`word_key`).  Rules that respect the term order always
terminate.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Mapping, NamedTuple, Optional, Sequence, Tuple

from .errors import DomainError, MissingRelation, ParseError
from .scalar import ONE, ZERO, LaurentScalar, as_q_power, eval_at, parse_scalar

Word = Tuple[int, ...]

STRATEGIES = ("leftmost", "rightmost")


def word_key(word: Sequence[int]):
    """Sort key of the term order: degree first, then lexicographic with
    earlier alphabet letters counting as heavier.

    This is a monomial order, so ``g_a g_b > g_b g_a`` for ``a < b`` and the
    order is preserved under left and right multiplication.
    """
    return (len(word), tuple(-i for i in word))


def is_normal(word: Sequence[int]) -> bool:
    return all(word[i] >= word[i + 1] for i in range(len(word) - 1))


def disorder(word: Sequence[int]) -> int:
    """Number of index pairs ``i < j`` with ``word[i] < word[j]``."""
    n = len(word)
    return sum(1 for i in range(n) for j in range(i + 1, n) if word[i] < word[j])


class Generator(NamedTuple):
    index: int
    label: str


def _check_labels(alphabet: Sequence[str]) -> Tuple[str, ...]:
    labels = tuple(alphabet)
    if len(set(labels)) != len(labels):
        raise DomainError(f"duplicate generator labels in {labels}")
    for lab in labels:
        if not re.fullmatch(r"[A-Za-z][A-Za-z0-9_]*", lab) or lab == "q":
            raise DomainError(f"invalid generator label {lab!r}")
    return labels


class NCPolynomial:
    """Finite linear combination of words with LaurentScalar coefficients.

    The polynomial does not know about relations; use :func:`normal_form`
    or :func:`nc_mul` to work modulo a presentation.
    """

    __slots__ = ("alphabet", "_terms")

    def __init__(self, alphabet: Sequence[str], terms: Optional[Mapping[Word, object]] = None):
        self.alphabet = tuple(alphabet)
        clean: Dict[Word, LaurentScalar] = {}
        if terms:
            for w, c in terms.items():
                c = LaurentScalar.coerce(c)
                w = tuple(w)
                if c:
                    prev = clean.get(w)
                    s = c if prev is None else prev + c
                    if s:
                        clean[w] = s
                    else:
                        clean.pop(w, None)
        self._terms = clean

    @classmethod
    def zero(cls, alphabet) -> "NCPolynomial":
        return cls(alphabet)

    @classmethod
    def one(cls, alphabet) -> "NCPolynomial":
        return cls(alphabet, {(): ONE})

    @classmethod
    def from_word(cls, alphabet, word: Sequence, coeff=ONE) -> "NCPolynomial":
        alphabet = tuple(alphabet)
        idx = []
        for g in word:
            if isinstance(g, str):
                try:
                    g = alphabet.index(g)
                except ValueError:
                    raise DomainError(f"unknown generator {g!r}") from None
            if not 0 <= g < len(alphabet):
                raise DomainError(f"generator index {g} outside alphabet")
            idx.append(g)
        return cls(alphabet, {tuple(idx): coeff})

    # -- inspection -------------------------------------------------------

    @property
    def terms(self) -> Dict[Word, LaurentScalar]:
        return dict(self._terms)

    def items(self) -> List[Tuple[Word, LaurentScalar]]:
        return sorted(self._terms.items(), key=lambda kv: word_key(kv[0]))

    def coefficient(self, word: Sequence[int]) -> LaurentScalar:
        return self._terms.get(tuple(word), ZERO)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def degrees(self) -> set:
        return {len(w) for w in self._terms}

    def leading_word(self) -> Word:
        if not self._terms:
            raise DomainError("the zero polynomial has no leading word")
        return max(self._terms, key=word_key)

    # -- linear structure -------------------------------------------------

    def _same(self, other: "NCPolynomial"):
        if self.alphabet != other.alphabet:
            raise DomainError("polynomials over different alphabets")

    def __add__(self, other):
        if not isinstance(other, NCPolynomial):
            return NotImplemented
        self._same(other)
        out = dict(self._terms)
        for w, c in other._terms.items():
            s = out.get(w, ZERO) + c
            if s:
                out[w] = s
            else:
                out.pop(w, None)
        return _raw(self.alphabet, out)

    def __neg__(self):
        return _raw(self.alphabet, {w: -c for w, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, NCPolynomial):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "NCPolynomial":
        c = LaurentScalar.coerce(c)
        if not c:
            return NCPolynomial(self.alphabet)
        return _raw(self.alphabet, {w: v for w, v in ((w, c * v) for w, v in self._terms.items()) if v})

    def __mul__(self, other):
        # scalars are central, so only scalar multiplication is offered here;
        # products of polynomials go through concat() or nc_mul()
        if isinstance(other, (LaurentScalar, int, Fraction)):
            return self.scale(other)
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, NCPolynomial):
            return NotImplemented
        return self.alphabet == other.alphabet and self._terms == other._terms

    def __hash__(self):
        return hash((self.alphabet, frozenset(self._terms.items())))

    def __repr__(self):
        return f"NCPolynomial({render(self)!r})"

    def __str__(self):
        return render(self)


def _raw(alphabet, terms) -> NCPolynomial:
    p = NCPolynomial.__new__(NCPolynomial)
    p.alphabet = alphabet
    p._terms = terms
    return p


def concat(a: NCPolynomial, b: NCPolynomial) -> NCPolynomial:
    """Free (relation-free) product: concatenate words pairwise."""
    a._same(b)
    out: Dict[Word, LaurentScalar] = {}
    for w1, c1 in a._terms.items():
        for w2, c2 in b._terms.items():
            w = w1 + w2
            out[w] = out.get(w, ZERO) + c1 * c2
    return NCPolynomial(a.alphabet, out)


# -- presentations ----------------------------------------------------------


@dataclass(frozen=True)
class RewriteRule:
    """``g_a g_b -> swap * g_b g_a + sum(c * w for c, w in lower)`` with a < b."""

    lhs: Tuple[int, int]
    swap: LaurentScalar
    lower: Tuple[Tuple[LaurentScalar, Word], ...] = ()

    @property
    def swap_word(self) -> Word:
        return (self.lhs[1], self.lhs[0])

    def is_pure(self) -> bool:
        return not self.lower

    def rhs(self, alphabet) -> NCPolynomial:
        terms = {self.swap_word: self.swap}
        poly = NCPolynomial(alphabet, terms)
        for c, w in self.lower:
            poly = poly + NCPolynomial(alphabet, {w: c})
        return poly


class Presentation:
    """Ordered alphabet plus pair-indexed rewrite rules.  Immutable."""

    def __init__(self, alphabet: Sequence[str], rules: Iterable[RewriteRule] = (), name: str = "presentation"):
        self.name = name
        self.alphabet = _check_labels(alphabet)
        self._index = {lab: i for i, lab in enumerate(self.alphabet)}
        table: Dict[Tuple[int, int], RewriteRule] = {}
        n = len(self.alphabet)
        for rule in rules:
            a, b = rule.lhs
            if not (0 <= a < b < n):
                raise DomainError(f"rule lhs {rule.lhs} must be an out-of-order pair (a < b) of known generators")
            if rule.lhs in table:
                raise DomainError(f"more than one rule for the pair {self.label_word(rule.lhs)}")
            lhs_key = word_key(rule.lhs)
            for c, w in rule.lower:
                if any(not 0 <= g < n for g in w):
                    raise DomainError(f"correction word {w} uses unknown generators")
                if not word_key(w) < lhs_key:
                    raise DomainError(
                        f"correction word {self.label_word(w)} is not smaller than {self.label_word(rule.lhs)}"
                    )
            table[rule.lhs] = rule
        self.rules: Dict[Tuple[int, int], RewriteRule] = table
        self._caches: Dict[str, Dict[Word, Dict[Word, LaurentScalar]]] = {s: {} for s in STRATEGIES}

    @property
    def generators(self) -> List[Generator]:
        return [Generator(i, lab) for i, lab in enumerate(self.alphabet)]

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise DomainError(f"unknown generator {label!r} in presentation {self.name!r}") from None

    def label_word(self, word: Sequence[int]) -> str:
        return " ".join(self.alphabet[i] for i in word)

    def word(self, text: str) -> Word:
        return tuple(self.index(tok) for tok in text.split())

    def gen(self, label: str) -> NCPolynomial:
        return NCPolynomial.from_word(self.alphabet, (self.index(label),))

    def poly(self, text: str) -> NCPolynomial:
        return parse_ncpoly(text, self.alphabet)

    def is_pure(self) -> bool:
        """True when every rule is a plain scalar swap."""
        return all(r.is_pure() for r in self.rules.values())

    def is_complete(self) -> bool:
        n = len(self.alphabet)
        return all((a, b) in self.rules for a in range(n) for b in range(a + 1, n))

    def check_terminating(self) -> bool:
        """Every rule rewrites its lhs into strictly smaller words."""
        for (a, b), rule in self.rules.items():
            key = word_key((a, b))
            if not word_key(rule.swap_word) < key:
                return False
            if any(not word_key(w) < key for _, w in rule.lower):
                return False
        return True

    def __repr__(self):
        return f"Presentation({self.name!r}, {len(self.alphabet)} generators, {len(self.rules)} rules)"

    # -- text format ------------------------------------------------------

    def to_text(self) -> str:
        lines = [f"name: {self.name}", "alphabet: " + " ".join(self.alphabet)]
        for key in sorted(self.rules):
            rule = self.rules[key]
            rhs = [f"{_rule_coeff(rule.swap)} : {self.label_word(rule.swap_word)}"]
            for c, w in sorted(rule.lower, key=lambda cw: word_key(cw[1]), reverse=True):
                rhs.append(f"{_rule_coeff(c)} : {self.label_word(w) if w else '1'}")
            lines.append(f"{self.label_word(rule.lhs)} -> " + " + ".join(rhs))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Presentation":
        return parse_presentation(text)


def _rule_coeff(c: LaurentScalar) -> str:
    s = c.compact()
    if " " in s or s.startswith("-"):
        return f"({s})"
    return s


def _split_top_level(s: str, sep: str = "+") -> List[str]:
    parts, depth, cur = [], 0, []
    i = 0
    while i < len(s):
        ch = s[i]
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
        i += 1
    parts.append("".join(cur))
    return parts


def parse_presentation(text: str) -> Presentation:
    """Read the line-oriented presentation format.

    ::

        name: quantum-matrix-2
        alphabet: a b c d
        a b -> q : b a
        a d -> 1 : d a + (q - q^-1) : b c
    """
    name = "presentation"
    alphabet: Optional[Tuple[str, ...]] = None
    rule_lines = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("name:"):
            name = line[5:].strip()
        elif line.startswith("alphabet:"):
            alphabet = tuple(line[9:].split())
        elif "->" in line:
            rule_lines.append((lineno, line))
        else:
            raise ParseError(f"line {lineno}: unrecognised presentation line {raw!r}")
    if alphabet is None:
        raise ParseError("presentation has no 'alphabet:' line")
    try:
        labels = _check_labels(alphabet)
    except DomainError as exc:
        raise ParseError(str(exc)) from None
    index = {lab: i for i, lab in enumerate(labels)}

    def to_word(s: str, lineno: int) -> Word:
        toks = s.split()
        if toks == ["1"]:
            return ()
        try:
            return tuple(index[t] for t in toks)
        except KeyError as exc:
            raise ParseError(f"line {lineno}: unknown generator {exc.args[0]!r}") from None

    rules = []
    for lineno, line in rule_lines:
        lhs_text, rhs_text = line.split("->", 1)
        lhs = to_word(lhs_text, lineno)
        if len(lhs) != 2:
            raise ParseError(f"line {lineno}: rule lhs must be two generators")
        pieces = []
        for piece in _split_top_level(rhs_text):
            if ":" not in piece:
                raise ParseError(f"line {lineno}: rhs term {piece.strip()!r} lacks 'coefficient : word'")
            ctext, wtext = piece.rsplit(":", 1)
            pieces.append((parse_scalar(ctext), to_word(wtext, lineno)))
        a, b = lhs
        if a >= b:
            raise ParseError(f"line {lineno}: lhs {lhs_text.strip()!r} is already in normal order")
        swap = ZERO
        lower = []
        for c, w in pieces:
            if w == (b, a):
                swap = swap + c
            else:
                lower.append((c, w))
        rules.append(RewriteRule((a, b), swap, tuple(lower)))
    try:
        return Presentation(labels, rules, name=name)
    except DomainError as exc:
        raise ParseError(str(exc)) from None


def uniform_q_presentation(alphabet: Sequence[str], name: str = "uniform-q", coeff=None) -> Presentation:
    """Every pair q-commutes: ``g_a g_b -> q g_b g_a`` for ``a < b``."""
    c = LaurentScalar.coerce(coeff) if coeff is not None else LaurentScalar({1: 1})
    n = len(alphabet)
    rules = [RewriteRule((a, b), c) for a in range(n) for b in range(a + 1, n)]
    return Presentation(alphabet, rules, name=name)


def commutative_presentation(alphabet: Sequence[str], name: str = "commutative") -> Presentation:
    return uniform_q_presentation(alphabet, name=name, coeff=ONE)


# -- normal ordering --------------------------------------------------------


def _find_pair(word: Word, leftmost: bool) -> Optional[int]:
    rng = range(len(word) - 1) if leftmost else range(len(word) - 2, -1, -1)
    for i in rng:
        if word[i] < word[i + 1]:
            return i
    return None


def _reduce_word(word: Word, pres: Presentation, leftmost: bool, cache) -> Dict[Word, LaurentScalar]:
    hit = cache.get(word)
    if hit is not None:
        return hit
    pos = _find_pair(word, leftmost)
    if pos is None:
        result = {word: ONE}
    else:
        a, b = word[pos], word[pos + 1]
        rule = pres.rules.get((a, b))
        if rule is None:
            raise MissingRelation(pres.alphabet[a], pres.alphabet[b])
        head, tail = word[:pos], word[pos + 2 :]
        result = {}
        pieces = [(rule.swap, (b, a))] + list(rule.lower)
        for c, w in pieces:
            if not c:
                continue
            for nw, nc in _reduce_word(head + w + tail, pres, leftmost, cache).items():
                s = result.get(nw, ZERO) + c * nc
                if s:
                    result[nw] = s
                else:
                    result.pop(nw, None)
    cache[word] = result
    return result


def normal_form(p, pres: Presentation, strategy: str = "leftmost") -> NCPolynomial:
    """Rewrite ``p`` until every word is in normal order.

    ``p`` may be an :class:`NCPolynomial` or a single word (sequence of
    indices or labels).  ``strategy`` picks which out-of-order pair is
    rewritten first; the result does not depend on it for confluent
    presentations.
    """
    if strategy not in STRATEGIES:
        raise DomainError(f"unknown strategy {strategy!r}")
    if not isinstance(p, NCPolynomial):
        p = NCPolynomial.from_word(pres.alphabet, p)
    if p.alphabet != pres.alphabet:
        raise DomainError(f"polynomial alphabet does not match presentation {pres.name!r}")
    cache = pres._caches[strategy]
    leftmost = strategy == "leftmost"
    out: Dict[Word, LaurentScalar] = {}
    for w, c in p._terms.items():
        for nw, nc in _reduce_word(w, pres, leftmost, cache).items():
            s = out.get(nw, ZERO) + c * nc
            if s:
                out[nw] = s
            else:
                out.pop(nw, None)
    return _raw(pres.alphabet, out)


def nc_mul(a: NCPolynomial, b: NCPolynomial, pres: Presentation, strategy: str = "leftmost") -> NCPolynomial:
    return normal_form(concat(a, b), pres, strategy)


def nc_product(factors: Sequence[NCPolynomial], pres: Presentation) -> NCPolynomial:
    out = NCPolynomial.one(pres.alphabet)
    for f in factors:
        out = nc_mul(out, f, pres)
    return out


def specialize_q(p: NCPolynomial, q0, commutative: bool = False) -> NCPolynomial:
    """Evaluate every coefficient at ``q = q0``.

    With ``commutative=True`` the words are also sorted into normal order
    (descending index), which is the right thing once the relations have
    degenerated to plain swaps.
    """
    out: Dict[Word, LaurentScalar] = {}
    for w, c in p._terms.items():
        v = eval_at(c, q0)
        if not v:
            continue
        if commutative:
            w = tuple(sorted(w, reverse=True))
        s = out.get(w, ZERO) + LaurentScalar({0: v})
        if s:
            out[w] = s
        else:
            out.pop(w, None)
    return _raw(p.alphabet, out)


# -- rendering --------------------------------------------------------------


def ascending_terms(p: NCPolynomial, pres: Presentation) -> List[Tuple[Word, LaurentScalar]]:
    """Re-express normal-ordered words in ascending letter order.

    Only meaningful for pure presentations, where ``g_b g_a = swap^-1 g_a g_b``
    for ``a < b``.  Returns terms sorted by ascending word.
    """
    out: Dict[Word, LaurentScalar] = {}
    for w, c in p._terms.items():
        factor = ONE
        n = len(w)
        for i in range(n):
            for j in range(i + 1, n):
                hi, lo = w[i], w[j]
                if hi > lo:
                    rule = pres.rules.get((lo, hi))
                    if rule is None:
                        raise MissingRelation(pres.alphabet[lo], pres.alphabet[hi])
                    if not rule.is_pure() or as_q_power(rule.swap) is None:
                        raise DomainError(
                            f"pair {pres.label_word((lo, hi))} has no invertible pure swap; ascending display unavailable"
                        )
                    factor = factor * rule.swap.inverse()
                elif hi < lo:
                    raise DomainError("ascending display expects normal-ordered input")
        aw = tuple(sorted(w))
        s = out.get(aw, ZERO) + c * factor
        if s:
            out[aw] = s
        else:
            out.pop(aw, None)
    return sorted(out.items())


def _latex_label(label: str) -> str:
    m = re.fullmatch(r"([A-Za-z]+)_?(\d+)", label)
    if m:
        return f"{m.group(1)}_{{{m.group(2)}}}"
    return label


def format_terms(terms: Sequence[Tuple[Word, LaurentScalar]], alphabet: Sequence[str], latex: bool = False) -> str:
    if not terms:
        return "0"
    labels = [_latex_label(l) for l in alphabet] if latex else list(alphabet)
    joiner = " " if latex else "*"
    parts = []
    for i, (w, c) in enumerate(terms):
        letters = [labels[g] for g in w]
        mono = as_q_power(c)
        if mono is not None:
            coeff, k = mono
            neg = coeff < 0
            mag = abs(coeff)
            factors = []
            if mag != 1 or (k == 0 and not letters):
                if latex and mag.denominator != 1:
                    factors.append(rf"\frac{{{mag.numerator}}}{{{mag.denominator}}}")
                else:
                    factors.append(str(mag))
            if k:
                factors.append(LaurentScalar({k: 1}).latex() if latex else LaurentScalar({k: 1}).compact())
            body = joiner.join(factors + letters)
        else:
            neg = False
            inner = c.latex() if latex else c.compact()
            body = joiner.join([f"({inner})"] + letters)
        if i == 0:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append(("- " if neg else "+ ") + body)
    return " ".join(parts)


def render(p: NCPolynomial, pres: Optional[Presentation] = None, order: str = "normal", latex: bool = False) -> str:
    """Text rendering of a polynomial.

    ``order="normal"`` prints the stored words; ``order="ascending"``
    rewrites them with ascending letters (needs a pure presentation), which
    is how the matching-sum formulas are usually written.
    """
    if order == "ascending":
        if pres is None:
            raise DomainError("ascending display needs a presentation")
        terms = ascending_terms(p, pres)
    elif order == "normal":
        terms = p.items()
    else:
        raise DomainError(f"unknown display order {order!r}")
    return format_terms(terms, p.alphabet, latex=latex)


# -- polynomial parsing -----------------------------------------------------



def parse_ncpoly(text: str, alphabet: Sequence[str]) -> NCPolynomial:
    """Parse ``"x*w - q*y*v + (q - q^-1)*c*b"`` style input.

    Factors are separated by ``*`` or whitespace; ``q``, numbers and
    parenthesised scalars are coefficients, everything else a generator.
    """
    alphabet = tuple(alphabet)
    index = {lab: i for i, lab in enumerate(alphabet)}
    src = text.strip()
    if src == "0":
        return NCPolynomial(alphabet)
    out = NCPolynomial(alphabet)
    for sign, term in _split_signed_terms(src):
        coeff = LaurentScalar.const(sign)
        word: List[int] = []
        pos = 0
        while pos < len(term):
            if term[pos].isspace() or term[pos] == "*":
                pos += 1
                continue
            if term[pos] == "(":
                depth, end = 0, pos
                while end < len(term):
                    if term[end] == "(":
                        depth += 1
                    elif term[end] == ")":
                        depth -= 1
                        if depth == 0:
                            break
                    end += 1
                if depth:
                    raise ParseError(f"unbalanced parentheses in {text!r}")
                coeff = coeff * parse_scalar(term[pos : end + 1])
                pos = end + 1
                continue
            m = re.match(r"(\d+(?:/\d+)?)|(q(?:\^[+-]?\d+)?)(?![A-Za-z0-9_])|([A-Za-z][A-Za-z0-9_]*)", term[pos:])
            if not m:
                raise ParseError(f"unexpected input {term[pos:]!r} in {text!r}")
            tok = m.group(0)
            if m.group(1) or m.group(2):
                coeff = coeff * parse_scalar(tok)
            else:
                if tok not in index:
                    raise ParseError(f"unknown generator {tok!r}")
                word.append(index[tok])
            pos += len(tok)
        out = out + NCPolynomial(alphabet, {tuple(word): coeff})
    return out


def _split_signed_terms(src: str) -> Iterator[Tuple[int, str]]:
    depth = 0
    sign = 1
    cur: List[str] = []
    prev = ""
    for ch in src:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        # a top-level +/- starts a new term unless it is an exponent sign
        if ch in "+-" and depth == 0 and prev != "^":
            body = "".join(cur).strip()
            if body:
                yield sign, body
                sign = 1
            cur = []
            if ch == "-":
                sign = -sign
        else:
            cur.append(ch)
        if not ch.isspace():
            prev = ch
    body = "".join(cur).strip()
    if not body:
        raise ParseError(f"malformed polynomial {src!r}")
    yield sign, body
