"""Command-line front end and exact text formats.

Field file::

    degree 2
    poly 1 0 1          # f, constant term first, monic
    1 0 / 1             # d basis rows over the power basis: numerators / den
    0 1 / 2

Matrix file::

    pseudo 3 2          # or: bipseudo 2
    ideal hnf           # one block per row ideal (bipseudo: then col ideals)
    2 0
    1 1
    den 1
    ideal gens 1        # alternative block: generator count, then elements
    0 1 / 1
    ...
    1 0 / 1  0 1 / 1    # n matrix rows, m element groups "a1 .. ad / den"

Everything is exact integers; '#' starts a comment.  Output mirrors the input
grammar so results round-trip through the parser.

Exit codes: 0 success/PASS, 1 computation error, 2 parse error, 3 oracle FAIL.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import determinant, zlinalg
from .ideals import FractionalIdeal, IdealError
from .numberfield import FieldElement, FieldError, NumberField, build_field
from .pseudo_hnf import PseudoMatrix, canonicalize, module_hnf, pseudo_hnf, to_absolute
from .pseudo_snf import BiPseudoMatrix, DivisorChain, pseudo_snf, quotient_determinantal_ideal


class ParseError(ValueError):
    def __init__(self, msg: str, line: int):
        super().__init__(f"line {line}: {msg}")
        self.line = line


class _Tokens:
    def __init__(self, text: str):
        self.items: list[tuple[str, int]] = []
        for ln, raw in enumerate(text.splitlines(), 1):
            body = raw.split("#", 1)[0]
            for tok in body.split():
                self.items.append((tok, ln))
        self.pos = 0

    def peek(self):
        return self.items[self.pos][0] if self.pos < len(self.items) else None

    @property
    def line(self) -> int:
        if self.pos < len(self.items):
            return self.items[self.pos][1]
        return self.items[-1][1] if self.items else 0

    def take(self) -> str:
        if self.pos >= len(self.items):
            raise ParseError("unexpected end of file", self.line)
        tok, _ = self.items[self.pos]
        self.pos += 1
        return tok

    def expect(self, word: str) -> None:
        ln = self.line
        tok = self.take()
        if tok != word:
            raise ParseError(f"expected '{word}', found '{tok}'", ln)

    def take_int(self) -> int:
        ln = self.line
        tok = self.take()
        try:
            return int(tok)
        except ValueError:
            raise ParseError(f"expected an integer, found '{tok}'", ln) from None

    def done(self) -> bool:
        return self.pos >= len(self.items)


# ---------------------------------------------------------------------------
# Parsing


def parse_field_text(text: str) -> NumberField:
    ts = _Tokens(text)
    ts.expect("degree")
    d = ts.take_int()
    if d < 1:
        raise ParseError("degree must be positive", ts.line)
    ts.expect("poly")
    coeffs = [ts.take_int() for _ in range(d + 1)]
    basis = []
    for _ in range(d):
        nums = [ts.take_int() for _ in range(d)]
        ts.expect("/")
        ln = ts.line
        den = ts.take_int()
        if den <= 0:
            raise ParseError("basis row denominator must be positive", ln)
        basis.append([Fraction(x, den) for x in nums])
    if not ts.done():
        raise ParseError(f"trailing content '{ts.peek()}'", ts.line)
    try:
        return build_field(coeffs, basis)
    except FieldError as exc:
        raise ParseError(str(exc), 1) from exc


def parse_field_file(path: str) -> NumberField:
    with open(path, encoding="utf-8") as fh:
        return parse_field_text(fh.read())


def _parse_element(ts: _Tokens, field: NumberField) -> FieldElement:
    nums = [ts.take_int() for _ in range(field.degree)]
    ts.expect("/")
    ln = ts.line if ts.peek() is not None else 0
    den = ts.take_int()
    if den <= 0:
        raise ParseError("element denominator must be positive", ln)
    return field.element(nums, den)


def _parse_ideal(ts: _Tokens, field: NumberField) -> FractionalIdeal:
    ts.expect("ideal")
    ln = ts.line
    kind = ts.take()
    d = field.degree
    if kind == "hnf":
        rows = [[ts.take_int() for _ in range(d)] for _ in range(d)]
        ts.expect("den")
        den = ts.take_int()
        try:
            return FractionalIdeal(field, rows, den)
        except IdealError as exc:
            raise ParseError(str(exc), ln) from exc
    if kind == "gens":
        count = ts.take_int()
        if count < 1:
            raise ParseError("generator count must be positive", ln)
        gens = [_parse_element(ts, field) for _ in range(count)]
        try:
            return FractionalIdeal.from_generators(field, gens)
        except IdealError as exc:
            raise ParseError(str(exc), ln) from exc
    raise ParseError(f"unknown ideal kind '{kind}'", ln)


def parse_matrix_text(text: str, field: NumberField):
    ts = _Tokens(text)
    ln = ts.line
    kind = ts.take()
    if kind == "pseudo":
        n = ts.take_int()
        m = ts.take_int()
        if n < 1 or m < 1:
            raise ParseError("dimensions must be positive", ln)
        ideals = [_parse_ideal(ts, field) for _ in range(n)]
        rows = [[_parse_element(ts, field) for _ in range(m)] for _ in range(n)]
        if not ts.done():
            raise ParseError(f"trailing content '{ts.peek()}'", ts.line)
        return PseudoMatrix(field, rows, ideals)
    if kind == "bipseudo":
        n = ts.take_int()
        if n < 1:
            raise ParseError("dimension must be positive", ln)
        row_ideals = [_parse_ideal(ts, field) for _ in range(n)]
        col_ideals = [_parse_ideal(ts, field) for _ in range(n)]
        rows = [[_parse_element(ts, field) for _ in range(n)] for _ in range(n)]
        if not ts.done():
            raise ParseError(f"trailing content '{ts.peek()}'", ts.line)
        bp = BiPseudoMatrix(field, rows, row_ideals, col_ideals, validate=False)
        bad = bp.integrality_violation()
        if bad is not None:
            raise ParseError(f"entry {bad} violates b_i * a_j^-1 integrality", ln)
        return bp
    raise ParseError(f"unknown matrix header '{kind}'", ln)


def parse_matrix_file(path: str, field: NumberField):
    with open(path, encoding="utf-8") as fh:
        return parse_matrix_text(fh.read(), field)


def parse_ideal_file(path: str, field: NumberField) -> FractionalIdeal:
    with open(path, encoding="utf-8") as fh:
        ts = _Tokens(fh.read())
    out = _parse_ideal(ts, field)
    if not ts.done():
        raise ParseError(f"trailing content '{ts.peek()}'", ts.line)
    return out


# ---------------------------------------------------------------------------
# Serialization (mirrors the parser exactly)


def format_element(e: FieldElement) -> str:
    return " ".join(str(c) for c in e.coeffs) + f" / {e.den}"


def format_ideal(a: FractionalIdeal) -> str:
    lines = ["ideal hnf"]
    lines.extend(" ".join(str(x) for x in row) for row in a.num)
    lines.append(f"den {a.den}")
    return "\n".join(lines)


def format_pseudo(pm: PseudoMatrix) -> str:
    lines = [f"pseudo {pm.nrows} {pm.ncols}"]
    for a in pm.ideals:
        lines.append(format_ideal(a))
    for row in pm.rows:
        lines.append("  ".join(format_element(e) for e in row))
    return "\n".join(lines)


def format_bipseudo(bp: BiPseudoMatrix) -> str:
    lines = [f"bipseudo {bp.n}"]
    for a in bp.row_ideals:
        lines.append(format_ideal(a))
    for a in bp.col_ideals:
        lines.append(format_ideal(a))
    for row in bp.rows:
        lines.append("  ".join(format_element(e) for e in row))
    return "\n".join(lines)


def format_chain(chain: DivisorChain) -> str:
    return "\n".join(format_ideal(a) for a in chain)


def format_absolute(mat) -> str:
    lines = [f"matrix {len(mat)} {len(mat[0])}"]
    lines.extend(" ".join(str(x) for x in row) for row in mat)
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# Oracles for `check`


def _cofactor_det(field: NumberField, rows) -> FieldElement:
    n = len(rows)
    if n == 1:
        return rows[0][0]
    acc = field.zero()
    for j in range(n):
        if not rows[0][j]:
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = rows[0][j] * _cofactor_det(field, minor)
        acc = acc + (term if j % 2 == 0 else -term)
    return acc


def check_hnf(pm: PseudoMatrix, out: PseudoMatrix) -> bool:
    m = pm.ncols
    for r in range(m):
        if out.rows[r][r] != pm.field.one():
            return False
        if any(out.rows[r][t] for t in range(r + 1, m)):
            return False
    return module_hnf(pm) == module_hnf(out)


def check_snf_d1(bp: BiPseudoMatrix, chain: DivisorChain) -> bool:
    """Integer SNF oracle: valid for degree-1 fields (all ideals principal)."""
    field = bp.field
    n = bp.n
    mat = []
    for i in range(n):
        b_i = Fraction(bp.row_ideals[i].num[0][0], bp.row_ideals[i].den)
        row = []
        for j in range(n):
            a_j = Fraction(bp.col_ideals[j].num[0][0], bp.col_ideals[j].den)
            v = Fraction(bp.rows[i][j].coeffs[0], bp.rows[i][j].den) * a_j / b_i
            if v.denominator != 1:
                return False
            row.append(int(v))
        mat.append(row)
    s = zlinalg.z_snf(mat)
    expected = sorted(abs(s[i][i]) for i in range(n))
    got = sorted(Fraction(a.num[0][0], a.den) for a in chain)
    return [Fraction(x) for x in expected] == got


def check_snf_chain(bp: BiPseudoMatrix, chain: DivisorChain) -> bool:
    det_ideal = quotient_determinantal_ideal(bp)
    prod = chain[0]
    for a in chain.ideals[1:]:
        prod = prod * a
    if prod != det_ideal:
        return False
    for i in range(1, len(chain)):
        if not chain[i - 1].is_subset(chain[i]):
            return False
    return all(a.is_integral() for a in chain)


# ---------------------------------------------------------------------------
# Command driver


def _build_argparser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="okmod",
        description="Exact pseudo-Hermite/Smith normal forms over rings of integers")
    ap.add_argument("command",
                    choices=["hnf", "snf", "det", "detideal", "canonical",
                             "absolute", "check"])
    ap.add_argument("--field", required=True, help="field description file")
    ap.add_argument("--matrix", required=True, help="pseudo/bi-pseudo matrix file")
    ap.add_argument("--detideal", help="file with a multiple of the determinantal ideal")
    ap.add_argument("--canonical", action="store_true",
                    help="canonicalize the pseudo-Hermite output")
    ap.add_argument("--check", action="store_true",
                    help="run the matching oracle after computing")
    ap.add_argument("--jobs", type=int, default=1,
                    help="reserved concurrency knob; outputs are identical "
                         "and this build computes sequentially")
    ap.add_argument("--seed", type=int, default=None,
                    help="echoed for reproducibility bookkeeping; the "
                         "computations themselves are deterministic")
    ap.add_argument("--op", choices=["hnf", "snf", "det"], default=None,
                    help="oracle selection for the check command")
    return ap


def main(argv=None) -> int:
    args = _build_argparser().parse_args(argv)
    if args.jobs < 1:
        print("error: --jobs must be >= 1", file=sys.stderr)
        return 1
    if args.seed is not None:
        print(f"# seed {args.seed}")
    try:
        field = parse_field_file(args.field)
        matrix = parse_matrix_file(args.matrix, field)
        det_ideal = None
        if args.detideal:
            det_ideal = parse_ideal_file(args.detideal, field)
    except (ParseError, OSError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2

    command = args.command
    try:
        if command in ("hnf", "canonical"):
            if not isinstance(matrix, PseudoMatrix):
                raise ValueError("hnf expects a pseudo matrix file")
            if not matrix.module_in_ring_power():
                raise ValueError("module is not contained in O_K^m; scale the rows first")
            out = pseudo_hnf(matrix, det_ideal)
            if args.canonical or command == "canonical":
                out = canonicalize(out)
            print(format_pseudo(out))
            if args.check:
                ok = check_hnf(matrix, out)
                print("PASS" if ok else "FAIL")
                return 0 if ok else 3
            return 0
        if command == "snf":
            if not isinstance(matrix, BiPseudoMatrix):
                raise ValueError("snf expects a bi-pseudo matrix file")
            chain = pseudo_snf(matrix, det_ideal)
            print(format_chain(chain))
            if args.check:
                ok = check_snf_chain(matrix, chain)
                if field.degree == 1:
                    ok = ok and check_snf_d1(matrix, chain)
                print("PASS" if ok else "FAIL")
                return 0 if ok else 3
            return 0
        if command == "det":
            if not isinstance(matrix, PseudoMatrix):
                raise ValueError("det expects a pseudo matrix file")
            value = determinant.det(field, matrix.rows)
            print(format_element(value))
            if args.check:
                ok = value == _cofactor_det(field, matrix.rows)
                print("PASS" if ok else "FAIL")
                return 0 if ok else 3
            return 0
        if command == "detideal":
            if not isinstance(matrix, PseudoMatrix):
                raise ValueError("detideal expects a pseudo matrix file")
            if matrix.nrows == matrix.ncols:
                out_ideal = determinant.determinantal_ideal(matrix)
            else:
                out_ideal = determinant.determinantal_ideal_multiple(matrix)
            print(format_ideal(out_ideal))
            return 0
        if command == "absolute":
            if not isinstance(matrix, PseudoMatrix):
                raise ValueError("absolute expects a pseudo matrix file")
            print(format_absolute(to_absolute(matrix)))
            return 0
        # command == "check"
        op = args.op
        if op is None:
            op = "snf" if isinstance(matrix, BiPseudoMatrix) else "hnf"
        if op == "hnf":
            out = pseudo_hnf(matrix, det_ideal)
            if args.canonical:
                out = canonicalize(out)
            ok = check_hnf(matrix, out)
        elif op == "snf":
            chain = pseudo_snf(matrix, det_ideal)
            ok = check_snf_chain(matrix, chain)
            if field.degree == 1:
                ok = ok and check_snf_d1(matrix, chain)
        else:
            if matrix.nrows > 6:
                raise ValueError("det oracle limited to 6x6")
            value = determinant.det(field, matrix.rows)
            ok = value == _cofactor_det(field, matrix.rows)
        print("PASS" if ok else "FAIL")
        return 0 if ok else 3
    except (ValueError, ZeroDivisionError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
