"""
Reader/writer for a strict OpenQASM 2.0 subset.

Accepted: the ``OPENQASM 2.0;`` header, ``include "qelib1.inc";``, one
``qreg``, any number of ``creg``, the gates x/h/cx/swap/ccx, ``mcx`` with any
number of controls (non-standard extension, controls first), ``measure`` and
``barrier`` (ignored with a warning). Trojan roles travel in a trailing
``// role=...`` comment on the gate's line.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum

from .circuit import Circuit, Gate, GateKind, Role


class Severity(str, Enum):
    ERROR = "error"
    WARNING = "warning"


@dataclass(frozen=True)
class ParseDiagnostic:
    line: int
    column: int
    message: str
    severity: Severity = Severity.ERROR

    def __str__(self):
        return f"{self.line}:{self.column}: {self.severity.value}: {self.message}"


class QasmError(ValueError):
    def __init__(self, diagnostic: ParseDiagnostic):
        super().__init__(str(diagnostic))
        self.diagnostic = diagnostic


_TOKEN = re.compile(
    r"""
    (?P<comment>//[^\n]*)
  | (?P<header>OPENQASM\s+2\.0)
  | (?P<string>"[^"\n]*")
  | (?P<arrow>->)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<real>\d+\.\d*(?:[eE][-+]?\d+)?|\d+[eE][-+]?\d+)
  | (?P<int>\d+)
  | (?P<punct>[\[\];,(){}=+\-*/^<>!.])
  | (?P<ws>\s+)
  | (?P<bad>.)
    """,
    re.VERBOSE,
)
_ROLE = re.compile(r"//\s*role=([a-z-]+)")
_GATES = {k.value: k for k in GateKind}


@dataclass
class _Tok:
    kind: str
    text: str
    line: int
    col: int


def _tokenize(source: str) -> list[_Tok]:
    toks = []
    line, line_start = 1, 0
    for m in _TOKEN.finditer(source):
        kind, text = m.lastgroup, m.group()
        col = m.start() - line_start + 1
        if kind == "bad":
            raise QasmError(ParseDiagnostic(line, col, f"unexpected character {text!r}"))
        if kind != "ws":
            toks.append(_Tok(kind, text, line, col))
        nl = text.count("\n")
        if nl:
            line += nl
            line_start = m.start() + text.rindex("\n") + 1
    return toks


class _Parser:
    def __init__(self, source: str):
        self.toks = [t for t in _tokenize(source)]
        self.pos = 0
        self.end_line = source.count("\n") + 1
        self.warnings: list[ParseDiagnostic] = []
        self.qreg: tuple[str, int] | None = None
        self.cregs: dict[str, tuple[int, int]] = {}  # name -> (offset, size)
        self.ncbits = 0
        self.gates: list[Gate] = []
        self.measures: dict[int, int] = {}  # cbit -> qubit
        self.measured_q: set[int] = set()

    # token helpers; comments are skipped except where roles are read
    def _skip_comments(self):
        while self.pos < len(self.toks) and self.toks[self.pos].kind == "comment":
            self.pos += 1

    def peek(self) -> _Tok | None:
        self._skip_comments()
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def fail(self, msg: str, tok: _Tok | None = None):
        tok = tok or self.peek()
        if tok is None:
            raise QasmError(ParseDiagnostic(self.end_line, 1, msg + " (at end of input)"))
        raise QasmError(ParseDiagnostic(tok.line, tok.col, msg))

    def next(self, kind: str | None = None, text: str | None = None) -> _Tok:
        tok = self.peek()
        if tok is None or (kind and tok.kind != kind) or (text and tok.text != text):
            want = repr(text) if text else (kind or "token")
            got = repr(tok.text) if tok else "end of input"
            self.fail(f"expected {want}, got {got}", tok)
        self.pos += 1
        return tok

    def trailing_role(self, line: int) -> Role:
        if self.pos < len(self.toks):
            tok = self.toks[self.pos]
            if tok.kind == "comment" and tok.line == line:
                m = _ROLE.match(tok.text)
                if m:
                    try:
                        return Role(m.group(1))
                    except ValueError:
                        self.fail(f"unknown role {m.group(1)!r}", tok)
        return Role.ORIGINAL

    # grammar
    def parse(self) -> Circuit:
        tok = self.peek()
        if tok is None or tok.kind != "header":
            self.fail("program must start with 'OPENQASM 2.0;'")
        self.next("header")
        self.next("punct", ";")
        while (tok := self.peek()) is not None:
            if tok.kind != "ident":
                self.fail(f"unexpected {tok.text!r}")
            word = tok.text
            if word == "include":
                self.include()
            elif word == "qreg":
                self.qreg_decl()
            elif word == "creg":
                self.creg_decl()
            elif word == "measure":
                self.measure()
            elif word == "barrier":
                self.barrier()
            elif word in _GATES:
                self.gate()
            else:
                self.fail(f"unsupported statement or gate {word!r}")
        if self.qreg is None:
            self.fail("no qreg declared")
        n = self.qreg[1]
        if self.measures:
            measured = tuple(self.measures[c] for c in sorted(self.measures))
        else:
            measured = None
        try:
            return Circuit(n, tuple(self.gates), measured)
        except ValueError as exc:  # pragma: no cover - checks above are stricter
            raise QasmError(ParseDiagnostic(1, 1, str(exc))) from exc

    def include(self):
        self.next("ident")
        name = self.next("string")
        if name.text != '"qelib1.inc"':
            self.fail(f"only qelib1.inc may be included, got {name.text}", name)
        self.next("punct", ";")

    def qreg_decl(self):
        kw = self.next("ident")
        name = self.next("ident")
        self.next("punct", "[")
        size = self.next("int")
        self.next("punct", "]")
        self.next("punct", ";")
        if self.qreg is not None:
            self.fail("only one quantum register is supported", kw)
        if int(size.text) < 1:
            self.fail("qreg size must be positive", size)
        self.qreg = (name.text, int(size.text))

    def creg_decl(self):
        self.next("ident")
        name = self.next("ident")
        self.next("punct", "[")
        size = self.next("int")
        self.next("punct", "]")
        self.next("punct", ";")
        if name.text in self.cregs or (self.qreg and self.qreg[0] == name.text):
            self.fail(f"register {name.text!r} already declared", name)
        self.cregs[name.text] = (self.ncbits, int(size.text))
        self.ncbits += int(size.text)

    def _reg_arg(self, quantum: bool) -> tuple[_Tok, int | None]:
        """Return (name token, index or None for whole register)."""
        name = self.next("ident")
        if quantum:
            if self.qreg is None or name.text != self.qreg[0]:
                self.fail(f"unknown quantum register {name.text!r}", name)
            size = self.qreg[1]
        else:
            if name.text not in self.cregs:
                self.fail(f"unknown classical register {name.text!r}", name)
            size = self.cregs[name.text][1]
        tok = self.peek()
        if tok is not None and tok.text == "[":
            self.next()
            idx = self.next("int")
            self.next("punct", "]")
            if int(idx.text) >= size:
                self.fail(f"index {idx.text} out of bounds for {name.text}[{size}]", idx)
            return name, int(idx.text)
        return name, None

    def gate(self):
        kw = self.next("ident")
        kind = _GATES[kw.text]
        operands = []
        while True:
            name, idx = self._reg_arg(quantum=True)
            if idx is None:
                self.fail("whole-register gate arguments are not supported", name)
            operands.append((name, idx))
            if self.peek() is not None and self.peek().text == ",":
                self.next()
                continue
            break
        end = self.next("punct", ";")
        qubits = [i for _, i in operands]
        seen = set()
        for tok, q in operands:
            if q in seen:
                self.fail(f"duplicate operand q[{q}] in {kw.text}", tok)
            seen.add(q)
            if q in self.measured_q:
                self.fail(f"gate on q[{q}] after it was measured", tok)
        role = self.trailing_role(end.line)
        try:
            self.gates.append(Gate(kind, tuple(qubits), role))
        except ValueError as exc:
            self.fail(str(exc), kw)

    def measure(self):
        kw = self.next("ident")
        qname, q = self._reg_arg(quantum=True)
        self.next("arrow")
        cname, c = self._reg_arg(quantum=False)
        self.next("punct", ";")
        offset, csize = self.cregs[cname.text]
        if q is None and c is None:
            if csize != self.qreg[1]:
                self.fail("register sizes differ in measure", kw)
            pairs = [(i, offset + i) for i in range(csize)]
        elif q is None or c is None:
            self.fail("measure must map a qubit to a bit or a register to a register", kw)
        else:
            pairs = [(q, offset + c)]
        for qi, ci in pairs:
            if qi in self.measured_q:
                self.fail(f"q[{qi}] measured twice", qname)
            if ci in self.measures:
                self.fail(f"classical bit {ci} written twice", cname)
            self.measured_q.add(qi)
            self.measures[ci] = qi

    def barrier(self):
        kw = self.next("ident")
        while self.peek() is not None and self.peek().text != ";":
            self.next()
        self.next("punct", ";")
        self.warnings.append(
            ParseDiagnostic(kw.line, kw.col, "barrier ignored", Severity.WARNING)
        )


def parse_qasm(source: str, warnings: list[ParseDiagnostic] | None = None) -> Circuit:
    """Parse QASM text into a Circuit. Raises QasmError with line/column.

    Non-fatal diagnostics are appended to ``warnings`` when given.
    """
    p = _Parser(source)
    circuit = p.parse()
    if warnings is not None:
        warnings.extend(p.warnings)
    return circuit


def emit_qasm(circuit: Circuit) -> str:
    lines = [
        "OPENQASM 2.0;",
        'include "qelib1.inc";',
        f"qreg q[{circuit.num_qubits}];",
        f"creg c[{len(circuit.measured_qubits)}];",
    ]
    for g in circuit.gates:
        args = ",".join(f"q[{q}]" for q in g.qubits)
        stmt = f"{g.kind.value} {args};"
        if g.role is not Role.ORIGINAL:
            stmt += f" // role={g.role.value}"
        lines.append(stmt)
    for c, q in enumerate(circuit.measured_qubits):
        lines.append(f"measure q[{q}] -> c[{c}];")
    return "\n".join(lines) + "\n"
