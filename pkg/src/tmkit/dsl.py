"""Textual concrete syntax for static models, events, and chronologies.

The `.tm` format is the toolkit's interchange format. `->` declares a
flow, `-->` a trigger (`→` is accepted as an alias for `->` on input),
`#` starts a comment, and dotted paths resolve through thimac nesting.
parse/print round-trip: parse(print_text(m, ...)) equals canonicalize(m).
"""

from __future__ import annotations

import dataclasses
from typing import Optional

from . import expr as ex
from . import model as md
from .errors import TmError
from .events import (BehavioralModel, BehaviorEdge, EventRegion,
                     build_behavior, eventize)

_KEYWORD_KINDS = {k.value: k for k in md.ActionKind}

_PUNCT = ("-->", "->", ":=", "<=", ">=", "!=", "<", ">", "=", "{", "}",
          ";", ",", ".", "(", ")", "+", "-")


@dataclasses.dataclass
class SourceUnit:
    text: str
    origin: str = "<memory>"


class ParseError(TmError):
    def __init__(self, line: int, column: int, message: str, expected=()):
        self.line = line
        self.column = column
        self.message = message
        self.expected = list(expected)
        super().__init__(f"{line}:{column}: {message}")


@dataclasses.dataclass
class _Token:
    type: str  # NAME NUMBER STRING punct EOF
    value: object
    line: int
    col: int


def _tokenize(src: SourceUnit) -> list[_Token]:
    text = src.text
    tokens = []
    i, line, col = 0, 1, 1
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if ch == "→":  # arrow alias
            tokens.append(_Token("->", "->", line, col))
            i += 1
            col += 1
            continue
        if ch == '"':
            value, length = _scan_string(text, i, line, col)
            tokens.append(_Token("STRING", value, line, col))
            i += length
            col += length
            continue
        if ch.isdigit():
            j = i
            while j < n and (text[j].isdigit() or text[j] == "."):
                j += 1
            raw = text[i:j]
            value = float(raw) if "." in raw else int(raw)
            tokens.append(_Token("NUMBER", value, line, col))
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(_Token("NAME", text[i:j], line, col))
            col += j - i
            i = j
            continue
        for punct in _PUNCT:
            if text.startswith(punct, i):
                tokens.append(_Token(punct, punct, line, col))
                i += len(punct)
                col += len(punct)
                break
        else:
            raise ParseError(line, col, f"unexpected character {ch!r}")
    tokens.append(_Token("EOF", None, line, col))
    return tokens


def _scan_string(text, start, line, col):
    out = []
    i = start + 1
    while i < len(text):
        ch = text[i]
        if ch == '"':
            return "".join(out), i - start + 1
        if ch == "\n":
            break
        if ch == "\\" and i + 1 < len(text):
            out.append(text[i + 1])
            i += 2
            continue
        out.append(ch)
        i += 1
    raise ParseError(line, col, "unterminated string literal")


@dataclasses.dataclass
class _EventDecl:
    id: str
    label: str
    covers: list[str]
    input_path: Optional[str]
    guard: Optional[ex.Expr]


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.pos = 0

    # -- token plumbing --

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def next(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def at(self, type_: str, value=None) -> bool:
        tok = self.peek()
        return tok.type == type_ and (value is None or tok.value == value)

    def expect(self, type_: str, value=None) -> _Token:
        tok = self.peek()
        if not self.at(type_, value):
            want = value if value is not None else type_
            raise ParseError(tok.line, tok.col,
                             f"expected {want!r}, found {tok.value!r}",
                             expected=[want])
        return self.next()

    # -- grammar --

    def parse_file(self):
        thimacs, actions = [], []
        flows, triggers = [], []
        event_decls: list[_EventDecl] = []
        behavior_edges = None
        terminals, repeatable = [], []
        while not self.at("EOF"):
            tok = self.peek()
            if self.at("NAME", "thimac"):
                thimacs.append(self.parse_thimac("", actions))
            elif self.at("NAME", "flow"):
                flows.append(self.parse_edge("flow", "->", md.FlowEdge))
            elif self.at("NAME", "trigger"):
                triggers.append(
                    self.parse_edge("trigger", "-->", md.TriggerEdge))
            elif self.at("NAME", "event"):
                event_decls.append(self.parse_event())
            elif self.at("NAME", "behavior"):
                if behavior_edges is not None:
                    raise ParseError(tok.line, tok.col,
                                     "behavior block re-declared")
                behavior_edges = self.parse_behavior()
            elif self.at("NAME", "terminal"):
                terminals.extend(self.parse_event_list("terminal"))
            elif self.at("NAME", "repeatable"):
                repeatable.extend(self.parse_event_list("repeatable"))
            else:
                raise ParseError(
                    tok.line, tok.col,
                    f"expected a declaration, found {tok.value!r}",
                    expected=["thimac", "flow", "trigger", "event",
                              "behavior", "terminal", "repeatable"])
        self.expect("EOF")
        return (thimacs, actions, flows, triggers, event_decls,
                behavior_edges, terminals, repeatable)

    def parse_thimac(self, prefix: str, actions) -> md.Thimac:
        self.expect("NAME", "thimac")
        name = self.expect("NAME").value
        path = f"{prefix}.{name}" if prefix else name
        specializes = False
        if self.at("NAME", "specializes"):
            self.next()
            specializes = True
        self.expect("{")
        store = None
        action_ids = []
        subthimacs = []
        declared_kinds = set()
        while not self.at("}"):
            tok = self.peek()
            if self.at("NAME", "thimac"):
                subthimacs.append(self.parse_thimac(path, actions))
            elif self.at("NAME", "store"):
                if store is not None:
                    raise ParseError(tok.line, tok.col,
                                     f"store re-declared in '{path}'")
                self.next()
                value = None
                if self.at("="):
                    self.next()
                    value = self.parse_literal()
                self.expect(";")
                store = md.Store(value)
            elif tok.type == "NAME" and tok.value in _KEYWORD_KINDS:
                kind = _KEYWORD_KINDS[tok.value]
                if kind in declared_kinds:
                    raise ParseError(tok.line, tok.col,
                                     f"{tok.value} re-declared in '{path}'")
                declared_kinds.add(kind)
                self.next()
                update = None
                if self.at("="):
                    if kind is not md.ActionKind.PROCESS:
                        raise ParseError(
                            tok.line, tok.col,
                            "only process actions take an update rule")
                    self.next()
                    target = self.parse_path()
                    self.expect(":=")
                    update = (target, self.parse_additive())
                self.expect(";")
                aid = md.action_id(path, kind)
                actions.append(md.Action(aid, kind, path, update))
                action_ids.append(aid)
            else:
                raise ParseError(
                    tok.line, tok.col,
                    f"expected a thimac member, found {tok.value!r}",
                    expected=["thimac", "store",
                              *sorted(_KEYWORD_KINDS), "}"])
        self.expect("}")
        return md.Thimac(name, specializes, store, tuple(action_ids),
                         tuple(subthimacs))

    def parse_edge(self, keyword, arrow, factory):
        self.expect("NAME", keyword)
        src = self.parse_path()
        self.expect(arrow)
        dst = self.parse_path()
        self.expect(";")
        return factory(src, dst)

    def parse_event(self) -> _EventDecl:
        self.expect("NAME", "event")
        event_id = self.expect("NAME").value
        label = event_id
        if self.at("STRING"):
            label = self.next().value
        self.expect("NAME", "covers")
        self.expect("{")
        covers = [self.parse_path()]
        while self.at(","):
            self.next()
            if self.at("}"):
                break
            covers.append(self.parse_path())
        self.expect("}")
        input_path = None
        guard = None
        if self.at("NAME", "input"):
            self.next()
            input_path = self.parse_path()
        if self.at("NAME", "guard"):
            self.next()
            guard = self.parse_or()
        self.expect(";")
        return _EventDecl(event_id, label, covers, input_path, guard)

    def parse_behavior(self) -> list[BehaviorEdge]:
        self.expect("NAME", "behavior")
        self.expect("{")
        edges = []
        while not self.at("}"):
            src = self.expect("NAME").value
            self.expect("->")
            dst = self.expect("NAME").value
            guard = None
            if self.at("NAME", "guard"):
                self.next()
                guard = self.parse_or()
            self.expect(";")
            edges.append(BehaviorEdge(src, dst, guard))
        self.expect("}")
        return edges

    def parse_event_list(self, keyword) -> list[str]:
        self.expect("NAME", keyword)
        names = [self.expect("NAME").value]
        while self.at(","):
            self.next()
            names.append(self.expect("NAME").value)
        self.expect(";")
        return names

    def parse_path(self) -> str:
        parts = [self.expect("NAME").value]
        while self.at("."):
            self.next()
            parts.append(self.expect("NAME").value)
        return ".".join(parts)

    def parse_literal(self):
        tok = self.peek()
        if tok.type == "NUMBER":
            return self.next().value
        if tok.type == "STRING":
            return self.next().value
        if self.at("NAME", "true"):
            self.next()
            return True
        if self.at("NAME", "false"):
            self.next()
            return False
        if self.at("-"):
            self.next()
            return -self.expect("NUMBER").value
        raise ParseError(tok.line, tok.col,
                         f"expected a literal, found {tok.value!r}",
                         expected=["NUMBER", "STRING", "true", "false"])

    # -- expressions --

    def parse_or(self) -> ex.Expr:
        left = self.parse_and()
        while self.at("NAME", "or"):
            self.next()
            left = ex.Binary("or", left, self.parse_and())
        return left

    def parse_and(self) -> ex.Expr:
        left = self.parse_not()
        while self.at("NAME", "and"):
            self.next()
            left = ex.Binary("and", left, self.parse_not())
        return left

    def parse_not(self) -> ex.Expr:
        if self.at("NAME", "not"):
            self.next()
            return ex.Unary("not", self.parse_not())
        return self.parse_comparison()

    def parse_comparison(self) -> ex.Expr:
        left = self.parse_additive()
        for op in ("<=", ">=", "!=", "<", ">", "="):
            if self.at(op):
                self.next()
                return ex.Binary(op, left, self.parse_additive())
        return left

    def parse_additive(self) -> ex.Expr:
        left = self.parse_primary()
        while self.at("+") or self.at("-"):
            op = self.next().type
            left = ex.Binary(op, left, self.parse_primary())
        return left

    def parse_primary(self) -> ex.Expr:
        tok = self.peek()
        if tok.type in ("NUMBER", "STRING"):
            return ex.Lit(self.next().value)
        if self.at("NAME", "true"):
            self.next()
            return ex.Lit(True)
        if self.at("NAME", "false"):
            self.next()
            return ex.Lit(False)
        if self.at("-"):
            self.next()
            return ex.Lit(-self.expect("NUMBER").value)
        if self.at("("):
            self.next()
            inner = self.parse_or()
            self.expect(")")
            return inner
        if tok.type == "NAME":
            return ex.PathRef(self.parse_path())
        raise ParseError(tok.line, tok.col,
                         f"expected an expression, found {tok.value!r}",
                         expected=["NUMBER", "STRING", "NAME", "("])


def parse(src) -> tuple[md.StaticModel, list[EventRegion],
                        Optional[BehavioralModel]]:
    """Parse DSL text into a model, declared events, and a chronology."""
    if isinstance(src, str):
        src = SourceUnit(src)
    parser = _Parser(_tokenize(src))
    (thimacs, actions, flows, triggers, event_decls, behavior_edges,
     terminals, repeatable) = parser.parse_file()
    static = md.build_model(thimacs, actions, flows, triggers)

    events = [eventize(static, d.id, d.label, d.covers, d.input_path)
              for d in event_decls]
    behavior = None
    if behavior_edges is not None or terminals or repeatable:
        guards = {d.id: d.guard for d in event_decls}
        edges = [
            dataclasses.replace(e, guard=e.guard or guards.get(e.dst))
            for e in (behavior_edges or [])]
        behavior = build_behavior(events, edges, terminals, repeatable)
    return static, events, behavior


def print_text(static: md.StaticModel, events=(), behavior=None) -> str:
    """Emit canonical DSL text; deterministic and parse-stable."""
    static = md.canonicalize(static)
    blocks = []
    for thimac in static.thimacs:
        blocks.append("\n".join(_thimac_lines(thimac, static, "")))
    edge_lines = [f"flow {e.src} -> {e.dst};" for e in static.flows]
    if edge_lines:
        blocks.append("\n".join(edge_lines))
    trigger_lines = [f"trigger {e.src} --> {e.dst};"
                     for e in static.triggers]
    if trigger_lines:
        blocks.append("\n".join(trigger_lines))
    event_lines = [_event_line(ev) for ev in events]
    if event_lines:
        blocks.append("\n".join(event_lines))
    if behavior is not None:
        blocks.append(_behavior_block(behavior))
        if behavior.terminals:
            blocks.append(
                "terminal " + ", ".join(sorted(behavior.terminals)) + ";")
        if behavior.repeatable:
            blocks.append(
                "repeatable " + ", ".join(sorted(behavior.repeatable)) + ";")
    return "\n\n".join(blocks) + "\n"


def _thimac_lines(thimac: md.Thimac, static, indent):
    head = f"{indent}thimac {thimac.name}"
    if thimac.specializes:
        head += " specializes"
    lines = [head + " {"]
    inner = indent + "    "
    if thimac.store is not None:
        if thimac.store.value is None:
            lines.append(f"{inner}store;")
        else:
            lines.append(f"{inner}store = {ex._lit_text(thimac.store.value)};")
    for aid in thimac.action_ids:
        action = static.actions[aid]
        if action.update is not None:
            target, rule = action.update
            lines.append(f"{inner}{action.kind.value} = {target} := "
                         f"{ex.to_text(rule)};")
        else:
            lines.append(f"{inner}{action.kind.value};")
    for sub in thimac.subthimacs:
        lines.extend(_thimac_lines(sub, static, inner))
    lines.append(f"{indent}}}")
    return lines


def _event_line(event: EventRegion) -> str:
    covers = ", ".join(sorted(event.covers))
    line = f"event {event.id}"
    if event.label != event.id:
        line += f' "{event.label}"'
    line += f" covers {{ {covers} }}"
    if event.input_path is not None:
        line += f" input {event.input_path}"
    return line + ";"


def _behavior_block(behavior: BehavioralModel) -> str:
    lines = ["behavior {"]
    for edge in behavior.edges:
        line = f"    {edge.src} -> {edge.dst}"
        if edge.guard is not None:
            line += f" guard {ex.to_text(edge.guard)}"
        lines.append(line + ";")
    lines.append("}")
    return "\n".join(lines)
