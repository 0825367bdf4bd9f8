"""Lexer, AST and recursive-descent parser for the VHDL subset.

The parser never raises on user input: problems become diagnostics
with exact line/column positions and parsing recovers at the next
statement boundary, so one run can report several errors.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

KEYWORDS = {
    "after", "architecture", "begin", "case", "component", "downto", "else",
    "elsif", "end", "entity", "for", "if", "in", "is", "map", "null", "of",
    "open", "others", "out", "port", "process", "signal", "then", "to",
    "wait", "when", "work",
    "and", "or", "nand", "nor", "xor", "not",
}

TIME_UNITS = {"ns": 1, "us": 1_000, "ms": 1_000_000, "sec": 1_000_000_000, "s": 1_000_000_000}


@dataclass(frozen=True)
class VhdlUnit:
    source_name: str
    text: str
    kind: str = "ENTITY_ARCH"  # or TESTBENCH; informational


@dataclass(frozen=True)
class Loc:
    file: str
    line: int
    col: int

    def __str__(self) -> str:
        return f"{self.file}:{self.line}:{self.col}"


@dataclass(frozen=True)
class Diagnostic:
    severity: str  # ERROR | WARNING
    category: str  # LEX | SYNTAX | NAME | TYPE | ELABORATION
    file: str
    line: int
    column: int
    message: str

    def __str__(self) -> str:
        return f"{self.file}:{self.line}:{self.column}: {self.severity.lower()}: [{self.category}] {self.message}"


def error(category: str, loc: Loc, message: str) -> Diagnostic:
    return Diagnostic("ERROR", category, loc.file, loc.line, loc.col, message)


# ---------------------------------------------------------------------------
# tokens


@dataclass(frozen=True)
class Token:
    kind: str  # ID | KW | INT | CHAR | STRING | SYM | EOF
    value: str
    loc: Loc


_SYMBOLS = (":=", "<=", "=>", "/=", ">=", "(", ")", ";", ":", ",", ".",
            "=", "<", ">", "+", "-", "&", "|", "'")


def tokenize(unit: VhdlUnit, diags: list[Diagnostic]) -> list[Token]:
    text = unit.text
    tokens: list[Token] = []
    i, line, col = 0, 1, 1
    n = len(text)

    def loc() -> Loc:
        return Loc(unit.source_name, line, col)

    while i < n:
        ch = text[i]
        if ch == "\n":
            i, line, col = i + 1, line + 1, 1
            continue
        if ch in " \t\r":
            i, col = i + 1, col + 1
            continue
        if text.startswith("--", i):
            while i < n and text[i] != "\n":
                i += 1
            continue
        start = loc()
        if ch.isalpha():
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            word = text[i:j]
            low = word.lower()
            tokens.append(Token("KW" if low in KEYWORDS else "ID", low, start))
            col += j - i
            i = j
            continue
        if ch.isdigit():
            j = i
            while j < n and (text[j].isdigit() or text[j] == "_"):
                j += 1
            tokens.append(Token("INT", text[i:j].replace("_", ""), start))
            col += j - i
            i = j
            continue
        if ch == "'":
            if i + 2 < n and text[i + 2] == "'" and text[i + 1] != "'":
                tokens.append(Token("CHAR", text[i + 1], start))
                i += 3
                col += 3
                continue
            tokens.append(Token("SYM", "'", start))
            i += 1
            col += 1
            continue
        if ch == '"':
            j = i + 1
            while j < n and text[j] not in '"\n':
                j += 1
            if j >= n or text[j] != '"':
                diags.append(error("LEX", start, "unterminated string literal"))
                i = j
                col += j - i
                continue
            tokens.append(Token("STRING", text[i + 1 : j], start))
            col += j - i + 1
            i = j + 1
            continue
        for sym in _SYMBOLS:
            if text.startswith(sym, i):
                tokens.append(Token("SYM", sym, start))
                i += len(sym)
                col += len(sym)
                break
        else:
            diags.append(error("LEX", start, f"unexpected character {ch!r}"))
            i += 1
            col += 1
    tokens.append(Token("EOF", "", loc()))
    return tokens


# ---------------------------------------------------------------------------
# AST


@dataclass(frozen=True)
class TypeMark:
    name: str
    high: Optional[int] = None
    low: Optional[int] = None
    loc: Loc = None

    @property
    def is_vector(self) -> bool:
        return self.high is not None

    @property
    def width(self) -> int:
        return 1 if not self.is_vector else self.high - self.low + 1


@dataclass(frozen=True)
class Name:
    ident: str
    index: Optional["Expr"] = None
    loc: Loc = None


@dataclass(frozen=True)
class CharLit:
    value: str
    loc: Loc = None


@dataclass(frozen=True)
class StringLit:
    value: str
    loc: Loc = None


@dataclass(frozen=True)
class IntLit:
    value: int
    loc: Loc = None


@dataclass(frozen=True)
class Unary:
    op: str
    operand: "Expr"
    loc: Loc = None


@dataclass(frozen=True)
class Binary:
    op: str
    left: "Expr"
    right: "Expr"
    loc: Loc = None


@dataclass(frozen=True)
class EdgeCall:
    func: str  # rising_edge | falling_edge
    signal: Name
    loc: Loc = None


Expr = Union[Name, CharLit, StringLit, IntLit, Unary, Binary, EdgeCall]

OPEN = "open"


@dataclass(frozen=True)
class PortDecl:
    names: tuple[str, ...]
    direction: str  # in | out
    type: TypeMark
    loc: Loc = None


@dataclass(frozen=True)
class EntityDecl:
    name: str
    ports: tuple[PortDecl, ...]
    loc: Loc = None


@dataclass(frozen=True)
class SignalDecl:
    names: tuple[str, ...]
    type: TypeMark
    init: Optional[Expr] = None
    loc: Loc = None


@dataclass(frozen=True)
class ComponentDecl:
    name: str
    ports: tuple[PortDecl, ...]
    loc: Loc = None


@dataclass(frozen=True)
class Waveform:
    value: Expr
    after_ns: int = 0
    cond: Optional[Expr] = None  # None on the final else / unconditional branch


@dataclass(frozen=True)
class ConcurrentAssign:
    target: Name
    branches: tuple[Waveform, ...]
    loc: Loc = None


@dataclass(frozen=True)
class Instantiation:
    label: str
    unit: str
    assocs: tuple[tuple[str, Union[Expr, str]], ...]  # formal -> actual expr or OPEN
    loc: Loc = None


@dataclass(frozen=True)
class SeqAssign:
    target: Name
    value: Expr
    after_ns: int = 0
    loc: Loc = None


@dataclass(frozen=True)
class IfStmt:
    arms: tuple[tuple[Optional[Expr], tuple], ...]  # (cond or None for else, body)
    loc: Loc = None


@dataclass(frozen=True)
class CaseStmt:
    subject: Expr
    arms: tuple[tuple[Optional[tuple[Expr, ...]], tuple], ...]  # None choices = others
    loc: Loc = None


@dataclass(frozen=True)
class WaitStmt:
    duration_ns: Optional[int]  # None = wait forever
    loc: Loc = None


@dataclass(frozen=True)
class NullStmt:
    loc: Loc = None


@dataclass(frozen=True)
class ProcessStmt:
    label: Optional[str]
    sensitivity: Optional[tuple[Name, ...]]  # None when wait-driven
    body: tuple
    loc: Loc = None


@dataclass(frozen=True)
class ArchitectureBody:
    name: str
    entity: str
    decls: tuple
    stmts: tuple
    loc: Loc = None


@dataclass
class Ast:
    """All parsed design units, in source order."""

    entities: dict[str, EntityDecl] = field(default_factory=dict)
    architectures: dict[str, ArchitectureBody] = field(default_factory=dict)  # by entity name
    units: list = field(default_factory=list)


def parse_vhdl(units: list[VhdlUnit]) -> tuple[Ast, list[Diagnostic]]:
    """Parse every unit; diagnostics accumulate across files."""
    ast = Ast()
    diags: list[Diagnostic] = []
    for unit in units:
        tokens = tokenize(unit, diags)
        _Parser(tokens, diags).parse_file(ast)
    return ast, diags


class _Parser:
    def __init__(self, tokens: list[Token], diags: list[Diagnostic]):
        self.tokens = tokens
        self.pos = 0
        self.diags = diags

    # -- token helpers ------------------------------------------------------

    def peek(self, ahead: int = 0) -> Token:
        return self.tokens[min(self.pos + ahead, len(self.tokens) - 1)]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != "EOF":
            self.pos += 1
        return tok

    def at(self, kind: str, value: Optional[str] = None) -> bool:
        tok = self.peek()
        return tok.kind == kind and (value is None or tok.value == value)

    def accept(self, kind: str, value: Optional[str] = None) -> Optional[Token]:
        if self.at(kind, value):
            return self.advance()
        return None

    def expect(self, kind: str, value: Optional[str] = None, what: str = "") -> Optional[Token]:
        tok = self.accept(kind, value)
        if tok is None:
            got = self.peek()
            expected = what or value or kind.lower()
            self.err(got.loc, f"expected {expected}, found {got.value or got.kind.lower()!r}")
        return tok

    def err(self, loc: Loc, message: str, category: str = "SYNTAX") -> None:
        self.diags.append(error(category, loc, message))

    def recover_semicolon(self) -> None:
        while not self.at("EOF") and not self.at("SYM", ";"):
            self.advance()
        self.accept("SYM", ";")

    # -- design units -------------------------------------------------------

    def parse_file(self, ast: Ast) -> None:
        while not self.at("EOF"):
            if self.at("KW", "entity"):
                ent = self.parse_entity()
                if ent:
                    if ent.name in ast.entities:
                        self.err(ent.loc, f"entity {ent.name} is already defined")
                    else:
                        ast.entities[ent.name] = ent
                        ast.units.append(ent)
            elif self.at("KW", "architecture"):
                arch = self.parse_architecture()
                if arch:
                    if arch.entity in ast.architectures:
                        self.err(arch.loc, f"entity {arch.entity} already has an architecture")
                    else:
                        ast.architectures[arch.entity] = arch
                        ast.units.append(arch)
            else:
                tok = self.peek()
                self.err(tok.loc, f"expected a design unit, found {tok.value!r}")
                # skip forward to something that can start a unit
                while not self.at("EOF") and not self.at("KW", "entity") and not self.at("KW", "architecture"):
                    self.advance()

    def parse_entity(self) -> Optional[EntityDecl]:
        start = self.expect("KW", "entity").loc
        name_tok = self.expect("ID", what="entity name")
        if name_tok is None:
            self.recover_semicolon()
            return None
        self.expect("KW", "is")
        ports: tuple[PortDecl, ...] = ()
        if self.at("KW", "port"):
            ports = self.parse_port_clause()
        self.expect("KW", "end")
        self.accept("KW", "entity")
        self.accept("ID")
        self.expect("SYM", ";")
        return EntityDecl(name=name_tok.value, ports=ports, loc=start)

    def parse_port_clause(self) -> tuple[PortDecl, ...]:
        self.expect("KW", "port")
        self.expect("SYM", "(")
        ports = []
        while True:
            decl = self.parse_port_decl()
            if decl:
                ports.append(decl)
            if self.accept("SYM", ";"):
                continue
            break
        self.expect("SYM", ")")
        self.expect("SYM", ";")
        return tuple(ports)

    def parse_port_decl(self) -> Optional[PortDecl]:
        loc = self.peek().loc
        names = self.parse_id_list()
        if not names:
            return None
        self.expect("SYM", ":")
        direction = "in"
        if self.at("KW", "in") or self.at("KW", "out"):
            direction = self.advance().value
        else:
            tok = self.peek()
            self.err(tok.loc, f"expected port mode in or out, found {tok.value!r}")
        type_mark = self.parse_type_mark()
        return PortDecl(names=tuple(names), direction=direction, type=type_mark, loc=loc)

    def parse_id_list(self) -> list[str]:
        names = []
        tok = self.expect("ID", what="identifier")
        if tok is None:
            return names
        names.append(tok.value)
        while self.accept("SYM", ","):
            tok = self.expect("ID", what="identifier")
            if tok is None:
                break
            names.append(tok.value)
        return names

    def parse_type_mark(self) -> TypeMark:
        tok = self.peek()
        if tok.kind != "ID":
            self.err(tok.loc, f"expected a type name, found {tok.value!r}")
            return TypeMark(name="std_logic", loc=tok.loc)
        self.advance()
        name = tok.value
        if name == "std_logic_vector" and self.accept("SYM", "("):
            hi = self.expect("INT", what="vector bound")
            descending = True
            if self.accept("KW", "downto") is None:
                if self.accept("KW", "to"):
                    descending = False
                else:
                    self.err(self.peek().loc, "expected downto or to")
            lo = self.expect("INT", what="vector bound")
            self.expect("SYM", ")")
            if hi and lo:
                a, b = int(hi.value), int(lo.value)
                high, low = (a, b) if descending else (b, a)
                if high < low:
                    self.err(tok.loc, "vector range is empty")
                    high, low = low, high
                return TypeMark(name=name, high=high, low=low, loc=tok.loc)
        return TypeMark(name=name, loc=tok.loc)

    def parse_architecture(self) -> Optional[ArchitectureBody]:
        start = self.expect("KW", "architecture").loc
        name_tok = self.expect("ID", what="architecture name")
        self.expect("KW", "of")
        entity_tok = self.expect("ID", what="entity name")
        self.expect("KW", "is")
        if name_tok is None or entity_tok is None:
            self.recover_semicolon()
            return None
        decls = []
        while not self.at("KW", "begin") and not self.at("EOF"):
            if self.at("KW", "signal"):
                decl = self.parse_signal_decl()
                if decl:
                    decls.append(decl)
            elif self.at("KW", "component"):
                decl = self.parse_component_decl()
                if decl:
                    decls.append(decl)
            else:
                tok = self.peek()
                self.err(tok.loc, f"unsupported declaration starting at {tok.value!r}")
                self.recover_semicolon()
        self.expect("KW", "begin")
        stmts = []
        while not self.at("KW", "end") and not self.at("EOF"):
            stmt = self.parse_concurrent()
            if stmt:
                stmts.append(stmt)
        self.expect("KW", "end")
        self.accept("KW", "architecture")
        self.accept("ID")
        self.expect("SYM", ";")
        return ArchitectureBody(
            name=name_tok.value, entity=entity_tok.value, decls=tuple(decls),
            stmts=tuple(stmts), loc=start,
        )

    def parse_signal_decl(self) -> Optional[SignalDecl]:
        loc = self.expect("KW", "signal").loc
        names = self.parse_id_list()
        self.expect("SYM", ":")
        type_mark = self.parse_type_mark()
        init = None
        if self.accept("SYM", ":="):
            init = self.parse_expr()
        self.expect("SYM", ";")
        if not names:
            return None
        return SignalDecl(names=tuple(names), type=type_mark, init=init, loc=loc)

    def parse_component_decl(self) -> Optional[ComponentDecl]:
        loc = self.expect("KW", "component").loc
        name_tok = self.expect("ID", what="component name")
        self.accept("KW", "is")
        ports: tuple[PortDecl, ...] = ()
        if self.at("KW", "port"):
            ports = self.parse_port_clause()
        self.expect("KW", "end")
        self.expect("KW", "component")
        self.accept("ID")
        self.expect("SYM", ";")
        if name_tok is None:
            return None
        return ComponentDecl(name=name_tok.value, ports=ports, loc=loc)

    # -- concurrent statements ----------------------------------------------

    def parse_concurrent(self):
        tok = self.peek()
        if tok.kind == "KW" and tok.value == "process":
            return self.parse_process(label=None)
        if tok.kind == "ID" and self.peek(1).kind == "SYM" and self.peek(1).value == ":":
            label = self.advance().value
            self.advance()  # ':'
            if self.at("KW", "process"):
                return self.parse_process(label=label)
            return self.parse_instantiation(label, tok.loc)
        if tok.kind == "ID":
            return self.parse_concurrent_assign()
        self.err(tok.loc, f"expected a concurrent statement, found {tok.value or tok.kind.lower()!r}")
        self.recover_semicolon()
        return None

    def parse_instantiation(self, label: str, loc: Loc) -> Optional[Instantiation]:
        if self.accept("KW", "entity"):
            if self.accept("KW", "work"):
                self.expect("SYM", ".")
        unit_tok = self.expect("ID", what="entity or component name")
        if unit_tok is None:
            self.recover_semicolon()
            return None
        self.expect("KW", "port")
        self.expect("KW", "map")
        self.expect("SYM", "(")
        assocs = []
        while True:
            formal = self.expect("ID", what="formal port name")
            self.expect("SYM", "=>")
            if self.accept("KW", "open"):
                actual: Union[Expr, str] = OPEN
            else:
                actual = self.parse_expr()
            if formal is not None and actual is not None:
                assocs.append((formal.value, actual))
            if not self.accept("SYM", ","):
                break
        self.expect("SYM", ")")
        self.expect("SYM", ";")
        return Instantiation(label=label, unit=unit_tok.value, assocs=tuple(assocs), loc=loc)

    def parse_concurrent_assign(self) -> Optional[ConcurrentAssign]:
        target = self.parse_name()
        if target is None or self.expect("SYM", "<=", what='"<="') is None:
            self.recover_semicolon()
            return None
        branches = []
        while True:
            value = self.parse_expr()
            after = self.parse_after_clause()
            if self.accept("KW", "when"):
                cond = self.parse_expr()
                branches.append(Waveform(value=value, after_ns=after, cond=cond))
                if self.accept("KW", "else"):
                    continue
                break
            branches.append(Waveform(value=value, after_ns=after, cond=None))
            break
        self.expect("SYM", ";")
        return ConcurrentAssign(target=target, branches=tuple(branches), loc=target.loc)

    def parse_after_clause(self) -> int:
        if self.accept("KW", "after"):
            return self.parse_time()
        return 0

    def parse_time(self) -> int:
        amount = self.expect("INT", what="time value")
        unit_tok = self.peek()
        if unit_tok.kind == "ID" and unit_tok.value in TIME_UNITS:
            self.advance()
            scale = TIME_UNITS[unit_tok.value]
        else:
            self.err(unit_tok.loc, "expected a time unit (ns, us, ms, s)")
            scale = 1
        return int(amount.value) * scale if amount else 0

    # -- processes and sequential statements ---------------------------------

    def parse_process(self, label: Optional[str]) -> Optional[ProcessStmt]:
        start = self.expect("KW", "process").loc
        sensitivity = None
        if self.accept("SYM", "("):
            sensitivity = []
            while True:
                name = self.parse_name()
                if name is not None:
                    sensitivity.append(name)
                if not self.accept("SYM", ","):
                    break
            self.expect("SYM", ")")
        self.accept("KW", "is")
        self.expect("KW", "begin")
        body = self.parse_seq_body(("end",))
        self.expect("KW", "end")
        self.expect("KW", "process")
        self.accept("ID")
        self.expect("SYM", ";")
        return ProcessStmt(
            label=label,
            sensitivity=tuple(sensitivity) if sensitivity is not None else None,
            body=tuple(body),
            loc=start,
        )

    def parse_seq_body(self, stop_kws: tuple[str, ...]) -> list:
        body = []
        while not self.at("EOF"):
            tok = self.peek()
            if tok.kind == "KW" and tok.value in stop_kws:
                break
            stmt = self.parse_seq_stmt()
            if stmt is not None:
                body.append(stmt)
        return body

    def parse_seq_stmt(self):
        tok = self.peek()
        if tok.kind == "KW":
            if tok.value == "if":
                return self.parse_if()
            if tok.value == "case":
                return self.parse_case()
            if tok.value == "wait":
                return self.parse_wait()
            if tok.value == "null":
                self.advance()
                self.expect("SYM", ";")
                return NullStmt(loc=tok.loc)
            self.err(tok.loc, f"unsupported statement {tok.value!r}")
            self.recover_semicolon()
            return None
        if tok.kind == "ID":
            target = self.parse_name()
            if target is None:
                self.recover_semicolon()
                return None
            if self.accept("SYM", ":="):
                self.err(tok.loc, "variables are not supported; use a signal")
                self.recover_semicolon()
                return None
            if self.expect("SYM", "<=", what='"<="') is None:
                self.recover_semicolon()
                return None
            value = self.parse_expr()
            after = self.parse_after_clause()
            self.expect("SYM", ";")
            return SeqAssign(target=target, value=value, after_ns=after, loc=tok.loc)
        self.err(tok.loc, f"expected a statement, found {tok.value or tok.kind.lower()!r}")
        self.recover_semicolon()
        return None

    def parse_if(self) -> IfStmt:
        start = self.expect("KW", "if").loc
        arms = []
        cond = self.parse_expr()
        self.expect("KW", "then")
        arms.append((cond, tuple(self.parse_seq_body(("elsif", "else", "end")))))
        while self.accept("KW", "elsif"):
            cond = self.parse_expr()
            self.expect("KW", "then")
            arms.append((cond, tuple(self.parse_seq_body(("elsif", "else", "end")))))
        if self.accept("KW", "else"):
            arms.append((None, tuple(self.parse_seq_body(("end",)))))
        self.expect("KW", "end")
        self.expect("KW", "if")
        self.expect("SYM", ";")
        return IfStmt(arms=tuple(arms), loc=start)

    def parse_case(self) -> CaseStmt:
        start = self.expect("KW", "case").loc
        subject = self.parse_expr()
        self.expect("KW", "is")
        arms = []
        while self.accept("KW", "when"):
            if self.accept("KW", "others"):
                choices = None
            else:
                choices = [self.parse_expr()]
                while self.accept("SYM", "|"):
                    choices.append(self.parse_expr())
                choices = tuple(choices)
            self.expect("SYM", "=>")
            arms.append((choices, tuple(self.parse_seq_body(("when", "end")))))
        self.expect("KW", "end")
        self.expect("KW", "case")
        self.expect("SYM", ";")
        if not arms:
            self.err(start, "case statement has no alternatives")
        return CaseStmt(subject=subject, arms=tuple(arms), loc=start)

    def parse_wait(self) -> WaitStmt:
        start = self.expect("KW", "wait").loc
        duration = None
        if self.accept("KW", "for"):
            duration = self.parse_time()
        elif not self.at("SYM", ";"):
            self.err(self.peek().loc, "only plain wait and wait for <time> are supported")
            self.recover_semicolon()
            return WaitStmt(duration_ns=None, loc=start)
        self.expect("SYM", ";")
        return WaitStmt(duration_ns=duration, loc=start)

    # -- expressions ----------------------------------------------------------

    _LOGICAL = ("and", "or", "nand", "nor", "xor")
    _RELATIONAL = ("=", "/=", "<", "<=", ">", ">=")

    def parse_expr(self) -> Expr:
        left = self.parse_relation()
        op_tok = self.peek()
        if op_tok.kind == "KW" and op_tok.value in self._LOGICAL:
            op = op_tok.value
            while self.at("KW") and self.peek().value in self._LOGICAL:
                tok = self.advance()
                if tok.value != op:
                    self.err(tok.loc, f"mixing {op!r} and {tok.value!r} needs parentheses")
                right = self.parse_relation()
                left = Binary(op=op, left=left, right=right, loc=tok.loc)
        return left

    def parse_relation(self) -> Expr:
        left = self.parse_simple()
        tok = self.peek()
        if tok.kind == "SYM" and tok.value in self._RELATIONAL:
            self.advance()
            right = self.parse_simple()
            return Binary(op=tok.value, left=left, right=right, loc=tok.loc)
        return left

    def parse_simple(self) -> Expr:
        left = self.parse_factor()
        while self.at("SYM", "+") or self.at("SYM", "-") or self.at("SYM", "&"):
            tok = self.advance()
            right = self.parse_factor()
            left = Binary(op=tok.value, left=left, right=right, loc=tok.loc)
        return left

    def parse_factor(self) -> Expr:
        if self.at("KW", "not"):
            tok = self.advance()
            return Unary(op="not", operand=self.parse_factor(), loc=tok.loc)
        return self.parse_primary()

    def parse_primary(self) -> Expr:
        tok = self.peek()
        if tok.kind == "INT":
            self.advance()
            return IntLit(value=int(tok.value), loc=tok.loc)
        if tok.kind == "CHAR":
            self.advance()
            return CharLit(value=tok.value.upper(), loc=tok.loc)
        if tok.kind == "STRING":
            self.advance()
            return StringLit(value=tok.value.upper(), loc=tok.loc)
        if self.accept("SYM", "("):
            inner = self.parse_expr()
            self.expect("SYM", ")")
            return inner
        if tok.kind == "ID":
            if tok.value in ("rising_edge", "falling_edge"):
                self.advance()
                self.expect("SYM", "(")
                arg = self.parse_name()
                self.expect("SYM", ")")
                return EdgeCall(func=tok.value, signal=arg or Name("?", loc=tok.loc), loc=tok.loc)
            return self.parse_name()
        self.advance()
        self.err(tok.loc, f"expected an expression, found {tok.value or tok.kind.lower()!r}")
        return CharLit(value="X", loc=tok.loc)

    def parse_name(self) -> Optional[Name]:
        tok = self.expect("ID", what="identifier")
        if tok is None:
            return None
        index = None
        if self.accept("SYM", "("):
            index = self.parse_expr()
            self.expect("SYM", ")")
        if self.at("SYM", "'"):
            self.err(self.peek().loc, "attributes are not supported; use rising_edge()")
            self.advance()
            self.accept("ID")
        return Name(ident=tok.value, index=index, loc=tok.loc)
