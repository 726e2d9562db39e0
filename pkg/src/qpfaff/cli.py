"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 input error, 3 algebra error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import random
import sys
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from . import __version__
from .combinat import double_factorial, enumerate_matchings
from .errors import DegenerateInput, DomainError, MissingRelation, NotOrientable, ParseError
from .extalg import omega_from_matrix, render_wedge, wedge_power_top
from .frt import (
    build_r_matrix,
    check_detq_central,
    check_ybe,
    extract_rtt_relations,
    presentation_from_relations,
    quantum_determinant_t,
    rtt_residual,
    t_labels,
)
from .ncpoly import NCPolynomial, Presentation, format_terms, parse_presentation, render, specialize_q
from .qlinalg import (
    SkewMatrixNum,
    SkewMatrixSym,
    classical_determinant,
    classical_pfaffian,
    cofactor_determinant,
    identity_scan,
    parse_matrix,
    quantum_determinant,
    quantum_pfaffian,
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_ALGEBRA = 0, 1, 2, 3
MAX_SYMBOLIC_DIM = 6
MAX_NUMERIC_DIM = 8
MAX_FRT_N = 3

EXAMPLE_NUMERIC_4 = "dim 4\nmode numeric\n1 2 3\n1 3 2\n1 4 5\n2 3 7\n2 4 4\n3 4 6\n"


class InputError(Exception):
    """Bad command-line input; mapped to exit code 2."""


@dataclass
class Check:
    name: str
    passed: bool
    expected: Any
    actual: Any


@dataclass
class RunReport:
    command: List[str]
    inputs_digest: str
    outputs: Dict[str, Any] = field(default_factory=dict)
    checks: List[Check] = field(default_factory=list)
    seconds: float = 0.0
    version: str = __version__

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self, timing: bool = True) -> Dict[str, Any]:
        d = asdict(self)
        d["ok"] = self.ok
        d["failures"] = [c.name for c in self.checks if not c.passed]
        if not timing:
            d.pop("seconds")
        return d

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing), indent=2, sort_keys=True, default=str)


def _digest(argv: Sequence[str], files: Sequence[str]) -> str:
    h = hashlib.sha256()
    for a in argv:
        h.update(a.encode() + b"\0")
    for f in files:
        h.update(Path(f).read_bytes())
    return h.hexdigest()[:16]


# -- argument helpers --------------------------------------------------------


def parse_q(text: str) -> Optional[Fraction]:
    if text == "symbolic":
        return None
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"--q must be 'symbolic' or a rational number, got {text!r}") from None


def parse_c_range(text: Optional[str]):
    if text is None:
        return None
    try:
        lo, hi = (int(x) for x in text.split(":"))
    except ValueError:
        raise InputError(f"--c-range must look like lo:hi, got {text!r}") from None
    if lo > hi:
        raise InputError(f"--c-range {text} is empty")
    return lo, hi


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def load_matrix(path: str, presentation: Optional[str] = None):
    A = parse_matrix(_read(path))
    if presentation is not None:
        if not isinstance(A, SkewMatrixSym):
            raise InputError("--presentation only applies to symbolic matrices")
        pres = parse_presentation(_read(presentation))
        if pres.alphabet != A.labels:
            raise InputError(
                f"presentation alphabet {' '.join(pres.alphabet)} does not match matrix labels {' '.join(A.labels)}"
            )
        A = A.with_presentation(pres)
    cap = MAX_SYMBOLIC_DIM if isinstance(A, SkewMatrixSym) else MAX_NUMERIC_DIM
    if A.dim > cap:
        raise InputError(f"dimension {A.dim} exceeds the desk-scale cap {cap}")
    return A


def _commutative_terms(p: NCPolynomial):
    """Terms of a q-specialized polynomial with letters in ascending order."""
    out: Dict[tuple, Any] = {}
    for w, c in p.items():
        k = tuple(sorted(w))
        out[k] = out[k] + c if k in out else c
    return sorted((k, v) for k, v in out.items() if v)


def render_value(p: NCPolynomial, pres: Presentation, q0, fmt: str) -> str:
    latex = fmt == "latex"
    if q0 is not None:
        return format_terms(_commutative_terms(p), p.alphabet, latex)
    order = "ascending" if pres.is_pure() else "normal"
    return render(p, pres, order=order, latex=latex)


def _fraction_text(x: Fraction, fmt: str) -> str:
    if fmt == "latex" and x.denominator != 1:
        return rf"\frac{{{x.numerator}}}{{{x.denominator}}}"
    return str(x)


# -- commands ----------------------------------------------------------------


def _matrix_value(args, report: RunReport, what: str) -> str:
    A = load_matrix(args.matrix, args.presentation)
    q0 = parse_q(args.q)
    mode = args.mode or ("classical" if isinstance(A, SkewMatrixNum) else "quantum")
    if mode == "classical":
        if not isinstance(A, SkewMatrixNum):
            raise InputError("classical mode needs a numeric matrix; use --mode quantum --q 1 for symbolic input")
        if what == "pf" and A.dim % 2:
            raise InputError(f"Pfaffian needs even dimension, got {A.dim}")
        value = classical_pfaffian(A) if what == "pf" else classical_determinant(A)
        report.outputs.update(mode=mode, dim=A.dim, value=str(value))
        return _fraction_text(value, args.format)
    if not isinstance(A, SkewMatrixSym):
        raise InputError("quantum mode needs a symbolic matrix")
    p = quantum_pfaffian(A) if what == "pf" else quantum_determinant(A)
    if q0 is not None:
        p = specialize_q(p, q0, commutative=True)
    text = render_value(p, A.presentation, q0, "plain")
    report.outputs.update(
        mode=mode, dim=A.dim, q="symbolic" if q0 is None else str(q0), presentation=A.presentation.name, value=text
    )
    return render_value(p, A.presentation, q0, args.format)


def cmd_pf(args, report: RunReport) -> str:
    return _matrix_value(args, report, "pf")


def cmd_det(args, report: RunReport) -> str:
    return _matrix_value(args, report, "det")


def cmd_wedge(args, report: RunReport) -> str:
    A = load_matrix(args.matrix, args.presentation)
    if not isinstance(A, SkewMatrixSym):
        raise InputError("wedge needs a symbolic matrix")
    q0 = parse_q(args.q)
    latex = args.format == "latex"
    omega = omega_from_matrix(A)
    top, ratio = wedge_power_top(A, q0=q0)
    top_text = render_value(top, A.presentation, q0, args.format)
    ratio_text = "none" if ratio is None else (ratio.latex() if latex else ratio.compact())
    n = A.dim // 2
    report.outputs.update(
        omega=render_wedge(omega), top=render_value(top, A.presentation, q0, "plain"), ratio=None if ratio is None else ratio.compact(), n=n
    )
    lines = [f"omega = {render_wedge(omega, latex)}", f"top coefficient of omega^{n} = {top_text}", f"ratio to Pf_q = {ratio_text}"]
    return "\n".join(lines)


def cmd_frt(args, report: RunReport) -> str:
    n = args.n
    if not 1 <= n <= MAX_FRT_N:
        raise InputError(f"n must be between 1 and {MAX_FRT_N}, got {n}")
    R = build_r_matrix(n)
    latex = args.format == "latex"
    if args.action == "r-matrix":
        out = R.render()
        report.outputs["r_matrix"] = R.to_text()
        return out
    if args.action == "ybe":
        res = check_ybe(R)
        report.checks.append(Check(f"ybe n={n}", res.ok, True, res.ok))
        return f"YBE: {'PASS' if res.ok else 'FAIL'}"
    if args.action == "relations":
        rels = extract_rtt_relations(R)
        report.outputs["relations"] = [str(r) for r in rels]
        return "\n".join(r.render(latex) for r in rels)
    if n != 2:
        raise InputError("the centrality check is available for n = 2 only")
    ok = check_detq_central(n)
    control = check_detq_central(n, quantum_determinant_t(n, with_q=False))
    report.checks.append(Check("det_q central", ok, True, ok))
    report.checks.append(Check("q-less control not central", not control, False, control))
    return f"det_q central: {'PASS' if ok else 'FAIL'}\nq-less control central: {control}"


# -- verify suites -----------------------------------------------------------


def _random_skew(rng: random.Random, dim: int) -> SkewMatrixNum:
    return SkewMatrixNum(dim, {(i, j): rng.randint(-9, 9) for i in range(1, dim + 1) for j in range(i + 1, dim + 1)})


def suite_classical_identity(args) -> List[Check]:
    A = load_matrix(args.matrix) if args.matrix else parse_matrix(EXAMPLE_NUMERIC_4)
    if not isinstance(A, SkewMatrixNum):
        raise InputError("classical-identity needs a numeric matrix")
    checks = []
    pf, det = classical_pfaffian(A), classical_determinant(A)
    checks.append(Check(f"pf^2 = det ({A.dim}x{A.dim})", pf * pf == det, str(det), str(pf * pf)))
    cof = cofactor_determinant(A.rows())
    checks.append(Check("bareiss = cofactor", cof == det, str(cof), str(det)))
    rng = random.Random(args.seed)
    for dim in (2, 4, 6):
        bad = 0
        for _ in range(args.samples):
            B = _random_skew(rng, dim)
            p = classical_pfaffian(B)
            bad += p * p != classical_determinant(B)
        checks.append(Check(f"random pf^2 = det (2n={dim})", bad == 0, 0, bad))
    return checks


def suite_quantum_scan(args) -> List[Check]:
    dim = args.dim
    if dim % 2 or not 2 <= dim <= MAX_SYMBOLIC_DIM:
        raise InputError(f"quantum-scan needs even 2 <= 2n <= {MAX_SYMBOLIC_DIM}, got {dim}")
    A = SkewMatrixSym.example_4x4() if dim == 4 else SkewMatrixSym(dim)
    if args.presentation:
        A = A.with_presentation(parse_presentation(_read(args.presentation)))
    c_range = parse_c_range(args.c_range)
    results = [identity_scan(A, c_range, strategy=s) for s in ("leftmost", "rightmost")]
    a, b = results
    stable = (a.status, a.sign, a.c, a.best_sign, a.best_c, a.residual) == (
        b.status, b.sign, b.c, b.best_sign, b.best_c, b.residual
    )
    checks = [Check(f"scan 2n={dim} strategy-stable", stable, a.summary(), b.summary())]
    classical = identity_scan(A, c_range, q0=1)
    checks.append(
        Check(
            f"scan 2n={dim} at q=1",
            classical.exact and classical.sign == 1 and classical.c == 0,
            "ExactPower sign=+1 c=0",
            classical.summary(),
        )
    )
    checks.append(Check(f"scan 2n={dim} report", True, "recorded", a.summary()))
    return checks


def suite_ybe(args) -> List[Check]:
    out = []
    for n in range(1, min(args.n, MAX_FRT_N) + 1):
        res = check_ybe(build_r_matrix(n))
        out.append(Check(f"ybe n={n}", res.ok, True, res.ok if res.ok else str(res.witness)))
    return out


def suite_centrality(args) -> List[Check]:
    R = build_r_matrix(2)
    rels = extract_rtt_relations(R)
    pres = presentation_from_relations(rels, t_labels(2))
    residual = rtt_residual(R, pres)
    ok = check_detq_central(2)
    control = check_detq_central(2, quantum_determinant_t(2, with_q=False))
    return [
        Check("rtt relation count n=2", len(rels) == 6, 6, len(rels)),
        Check("rtt back-substitution", not residual, 0, len(residual)),
        Check("det_q central", ok, True, ok),
        Check("q-less control not central", not control, False, control),
    ]


def suite_wedge(args) -> List[Check]:
    from math import factorial

    out = []
    for dim in (2, 4, 6) if args.dim >= 6 else (2, 4):
        A = SkewMatrixSym.example_4x4() if dim == 4 else SkewMatrixSym(dim)
        n = dim // 2
        _, r1 = wedge_power_top(A, q0=1)
        out.append(Check(f"wedge ratio 2n={dim} at q=1", r1 is not None and r1.constant_value() == factorial(n), factorial(n), None if r1 is None else str(r1)))
        if dim <= 4:
            _, r = wedge_power_top(A)
            good = r is not None and r.eval_at(1) == factorial(n)
            out.append(Check(f"wedge ratio 2n={dim} symbolic", good, f"s(q) with s(1)={factorial(n)}", None if r is None else r.compact()))
    return out


def suite_matching_counts(args) -> List[Check]:
    out = []
    for dim in range(2, min(args.dim, MAX_NUMERIC_DIM) + 1, 2):
        count = sum(1 for _ in enumerate_matchings(dim))
        out.append(Check(f"matchings 2n={dim}", count == double_factorial(dim - 1), double_factorial(dim - 1), count))
    return out


SUITES = {
    "classical-identity": suite_classical_identity,
    "quantum-scan": suite_quantum_scan,
    "ybe": suite_ybe,
    "centrality": suite_centrality,
    "wedge-cross-check": suite_wedge,
    "matching-counts": suite_matching_counts,
}


def cmd_verify(args, report: RunReport) -> str:
    report.checks.extend(SUITES[args.suite](args))
    lines = []
    for c in report.checks:
        lines.append(f"{'PASS' if c.passed else 'FAIL'} {c.name}: expected {c.expected}, got {c.actual}")
    return "\n".join(lines)


# -- entry point -------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qpfaff", description="Quantum Pfaffians, determinants and FRT checks.")
    p.add_argument("--version", action="version", version=f"qpfaff {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("plain", "latex", "json"), default="plain")
    common.add_argument("--q", default="symbolic", help="'symbolic' or a rational value such as 1 or 2/3")
    common.add_argument("--presentation", help="presentation file for the matrix entries")
    sub = p.add_subparsers(dest="command", required=True)

    for name, fn in (("pf", cmd_pf), ("det", cmd_det)):
        s = sub.add_parser(name, parents=[common], help=f"{'Pfaffian' if name == 'pf' else 'determinant'} of a matrix file")
        s.add_argument("matrix")
        s.add_argument("--mode", choices=("classical", "quantum"))
        s.set_defaults(func=fn)

    s = sub.add_parser("wedge", parents=[common], help="2-form and its top wedge power")
    s.add_argument("matrix")
    s.set_defaults(func=cmd_wedge)

    s = sub.add_parser("frt", parents=[common], help="R-matrix, YBE, RTT relations, centrality")
    s.add_argument("action", choices=("r-matrix", "ybe", "relations", "central"))
    s.add_argument("--n", type=int, default=2)
    s.set_defaults(func=cmd_frt)

    s = sub.add_parser("verify", parents=[common], help="run a verification suite")
    s.add_argument("suite", choices=sorted(SUITES))
    s.add_argument("--matrix", help="numeric matrix for classical-identity")
    s.add_argument("--dim", type=int, default=4, help="2n for scans, wedge and matching counts")
    s.add_argument("--n", type=int, default=3, help="largest n for the YBE suite")
    s.add_argument("--c-range", help="lo:hi exponent window for the scan")
    s.add_argument("--samples", type=int, default=50)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_verify)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    files = [f for f in (getattr(args, "matrix", None), args.presentation) if f]
    start = time.perf_counter()
    try:
        report = RunReport(command=argv, inputs_digest=_digest(argv, [f for f in files if Path(f).is_file()]))
        text = args.func(args, report)
    except (InputError, ParseError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except MissingRelation as exc:
        print(f"algebra error: missing relation for pair {exc.pair[0]} {exc.pair[1]}", file=sys.stderr)
        return EXIT_ALGEBRA
    except (NotOrientable, DegenerateInput) as exc:
        print(f"algebra error: {exc}", file=sys.stderr)
        return EXIT_ALGEBRA
    report.seconds = round(time.perf_counter() - start, 6)
    if args.format == "json":
        print(report.to_json())
    else:
        print(text)
    return EXIT_OK if report.ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
