"""Semantic LaTeX -> CAS translation by recursive per-node pattern substitution."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from .errors import (ArityMismatch, NoDirectTranslation, TranslationError,
                     UnknownMacro)
from .lexicon import Lexicon, LexiconEntry
from .scanner import DelimiterClass, PomTree, TermKind, scan


@dataclass(frozen=True)
class CASDialect:
    name: str
    mult_token: str
    call_delims: Tuple[str, str]
    greek_style: str  # bare-name | bracketed-name


MAPLE = CASDialect("maple", "*", ("(", ")"), "bare-name")
MATHEMATICA = CASDialect("mathematica", " ", ("[", "]"), "bracketed-name")

DIALECTS = {"maple": MAPLE, "mathematica": MATHEMATICA}


@dataclass
class InfoMessage:
    kind: str  # constant-suggestion | branch-cut | domain | dlmf-link | ...
    text: str


@dataclass
class TranslationResult:
    output: str
    infos: List[InfoMessage] = field(default_factory=list)


_ATOMIC_RE = re.compile(r"^(\d+(\.\d+)?|[A-Za-z][A-Za-z0-9_]*|\\\[[A-Za-z]+\])$")


@dataclass
class _Unit:
    text: str
    kind: str  # atom | call | group | power | frac | other
    frac: Optional[Tuple[str, str, bool]] = None  # (num, den, compact_ok)


class _Context:
    def __init__(self, lex: Lexicon, dialect: CASDialect):
        self.lex = lex
        self.dialect = dialect
        self.infos: List[InfoMessage] = []
        self._seen = set()

    def add_info(self, kind: str, text: str) -> None:
        if (kind, text) not in self._seen:
            self._seen.add((kind, text))
            self.infos.append(InfoMessage(kind, text))

    def note_entry(self, entry: LexiconEntry) -> None:
        if entry.dlmf_link:
            self.add_info("dlmf-link", f"{entry.macro_name}: {entry.dlmf_link}")
        for adv in entry.advisories:
            self.add_info(adv.kind, f"{entry.macro_name}: {adv.text}")


def translate_forward(tree: PomTree, lex: Lexicon, dialect: CASDialect) -> TranslationResult:
    """Translate a first-scan tree into a CAS expression string.

    Macros are rendered by placeholder substitution into their lexicon
    patterns; the tree hierarchy is preserved.  Bare Latin letters and generic
    Greek commands that could denote constants are passed through untouched
    with a constant-suggestion info.
    """
    if isinstance(dialect, str):
        dialect = DIALECTS[dialect]
    ctx = _Context(lex, dialect)
    children = tree.children if tree.is_sequence else [tree]
    output = _translate_sequence(children, ctx)
    return TranslationResult(output=output, infos=ctx.infos)


def translate_string(text: str, lex: Lexicon, dialect) -> TranslationResult:
    return translate_forward(scan(text, lex), lex, dialect)


# --- sequence translation ---------------------------------------------------

def _translate_sequence(children: List[PomTree], ctx: _Context) -> str:
    items = _build_items(children, ctx)
    items = _resolve_scripts(items, ctx)
    return _assemble(items, ctx)


def _translate_group(node: PomTree, ctx: _Context) -> str:
    return _translate_sequence(node.children, ctx)


def _build_items(children: List[PomTree], ctx: _Context) -> List[tuple]:
    items: List[tuple] = []
    i = 0
    n = len(children)
    while i < n:
        node = children[i]
        if node.is_group:
            inner = _translate_group(node, ctx)
            if node.delimiter_class is DelimiterClass.PAREN:
                items.append(("val", _Unit(f"({inner})", "group")))
            elif _ATOMIC_RE.match(inner):
                items.append(("val", _Unit(inner, "atom")))
            else:
                items.append(("val", _Unit(f"({inner})", "group")))
            i += 1
            continue

        term = node.term
        kind = term.kind
        if kind in (TermKind.MACRO_COMMAND, TermKind.GREEK_LETTER_COMMAND):
            unit, i = _translate_macro(children, i, ctx)
            items.append(("val", unit))
            continue
        if kind is TermKind.LATIN_LETTER:
            suggestion = ctx.lex.letter_suggestions.get(term.lexeme)
            if suggestion:
                ctx.add_info("constant-suggestion",
                             f"letter '{term.lexeme}' may denote the constant "
                             f"{suggestion}; it is translated as a plain letter")
            items.append(("val", _Unit(term.lexeme, "atom")))
            i += 1
            continue
        if kind is TermKind.DIGIT_SEQUENCE:
            text = term.lexeme
            # re-fuse decimal literals split by the shallow first scan
            if (i + 2 < n and children[i + 1].is_leaf
                    and children[i + 1].term.lexeme == "."
                    and children[i + 2].is_leaf
                    and children[i + 2].term.kind is TermKind.DIGIT_SEQUENCE):
                text = f"{text}.{children[i + 2].term.lexeme}"
                i += 2
            items.append(("val", _Unit(text, "atom")))
            i += 1
            continue
        if kind is TermKind.CARET:
            items.append(("caret", None))
            i += 1
            continue
        if kind is TermKind.UNDERSCORE:
            items.append(("subscript", None))
            i += 1
            continue
        if kind is TermKind.AT_MARKER:
            raise TranslationError(f"stray at-marker at position {term.position}")
        if kind is TermKind.RELATION_SYMBOL:
            items.append(("op", " = " if term.lexeme == "=" else term.lexeme))
            i += 1
            continue
        if kind is TermKind.OPERATOR_SYMBOL:
            lex = term.lexeme
            items.append(("op", ctx.dialect.mult_token if lex == "*" else lex))
            i += 1
            continue
        raise TranslationError(f"cannot translate reserved symbol {term.lexeme!r}")
    return items


def _translate_macro(children: List[PomTree], i: int, ctx: _Context) -> Tuple[_Unit, int]:
    term = children[i].term
    name = term.lexeme
    entry = ctx.lex.lookup(name)
    if entry is None:
        raise UnknownMacro(name)

    if entry.role == "operator":
        # \idt: multiplication with no presentation appearance
        return _OperatorUnit(ctx.dialect.mult_token), i + 1

    if entry.role == "greek-letter":
        text = entry.translations[ctx.dialect.name]
        suggestion = ctx.lex.command_suggestions.get(name)
        if suggestion:
            ctx.add_info("constant-suggestion",
                         f"command '{name}' may denote the constant {suggestion};"
                         f" it is translated as a Greek letter")
        return _Unit(text, "atom"), i + 1

    if entry.role == "constant":
        template = entry.translations.get(ctx.dialect.name)
        if template is None:
            raise NoDirectTranslation(name, ctx.dialect.name)
        ctx.note_entry(entry)
        kind = "call" if "(" in template or "[" in template else "atom"
        return _Unit(template, kind), i + 1

    # function role: consume parameter groups, at-marker, variable groups
    if name == "\\sqrt":
        return _translate_sqrt(children, i, ctx, entry)

    args: List[str] = []
    j = i + 1
    for _ in range(entry.num_params):
        if j >= len(children) or not _is_curly(children[j]):
            raise ArityMismatch(name, entry.num_params + entry.num_vars, len(args))
        args.append(_translate_group(children[j], ctx))
        j += 1
    if entry.num_vars > 0:
        has_at = (j < len(children) and children[j].is_leaf
                  and children[j].term.kind is TermKind.AT_MARKER)
        if has_at:
            j += 1  # all @-variants translate identically
        elif 0 not in entry.at_variants:
            raise ArityMismatch(name, entry.arity, len(args))
        for _ in range(entry.num_vars):
            if j >= len(children) or not _is_curly(children[j]):
                raise ArityMismatch(name, entry.arity, len(args))
            args.append(_translate_group(children[j], ctx))
            j += 1

    template = entry.translations.get(ctx.dialect.name)
    if template is None:
        raise NoDirectTranslation(name, ctx.dialect.name)
    ctx.note_entry(entry)

    if name == "\\frac":
        num, den = args
        compact = bool(_ATOMIC_RE.match(num) and _ATOMIC_RE.match(den))
        return _Unit("", "frac", frac=(num, den, compact)), j

    text = _substitute(template, args)
    return _Unit(text, "call"), j


class _OperatorUnit:
    """Marker wrapper so \\idt lands in the item stream as an explicit operator."""

    def __init__(self, token: str):
        self.token = token


def _translate_sqrt(children, i, ctx, entry) -> Tuple[_Unit, int]:
    j = i + 1
    order = None
    if (j < len(children) and children[j].is_group
            and children[j].delimiter_class is DelimiterClass.BRACKET_OPTIONAL):
        order = _translate_group(children[j], ctx)
        j += 1
    if j >= len(children) or not _is_curly(children[j]):
        raise ArityMismatch("\\sqrt", 1, 0)
    radicand = _translate_group(children[j], ctx)
    j += 1
    if order is None:
        template = entry.translations.get(ctx.dialect.name)
        args = [radicand]
    else:
        root_entry = ctx.lex.lookup("\\root")
        template = root_entry.translations.get(ctx.dialect.name)
        args = [radicand, order]
    if template is None:
        raise NoDirectTranslation("\\sqrt", ctx.dialect.name)
    ctx.note_entry(entry)
    return _Unit(_substitute(template, args), "call"), j


def _is_curly(node: PomTree) -> bool:
    return node.is_group and node.delimiter_class is DelimiterClass.CURLY


def _substitute(template: str, args: List[str]) -> str:
    return re.sub(r"\$(\d+)", lambda m: args[int(m.group(1))], template)


# --- caret / subscript resolution -------------------------------------------

def _resolve_scripts(items: List[tuple], ctx: _Context) -> List[tuple]:
    # normalize \idt operator units emitted by _translate_macro
    norm = []
    for tag, payload in items:
        if tag == "val" and isinstance(payload, _OperatorUnit):
            norm.append(("op", payload.token))
        else:
            norm.append((tag, payload))
    items = norm

    while True:
        idx = None
        for k in range(len(items) - 1, -1, -1):
            if items[k][0] in ("caret", "subscript"):
                idx = k
                break
        if idx is None:
            return items
        if idx == 0 or idx == len(items) - 1 \
                or items[idx - 1][0] != "val" or items[idx + 1][0] != "val":
            raise TranslationError("script symbol without base or argument")
        base = items[idx - 1][1]
        arg = items[idx + 1][1]
        if items[idx][0] == "caret":
            unit = _Unit(f"{_power_base(base)}^{_power_exponent(arg)}", "power")
        else:
            unit = _Unit(_subscripted(base, arg, ctx.dialect), "other")
        items[idx - 1:idx + 2] = [("val", unit)]


def _power_base(unit: _Unit) -> str:
    if unit.kind in ("atom", "call", "group"):
        return unit.text
    if unit.kind == "frac":
        return f"({_frac_text(unit, 'operator')})"
    return f"({unit.text})"


def _power_exponent(unit: _Unit) -> str:
    if unit.kind == "atom":
        return unit.text
    if unit.kind in ("call", "group"):
        return unit.text if unit.text.startswith("(") else f"({unit.text})"
    if unit.kind == "frac":
        return f"({_frac_text(unit, 'operator')})"
    return f"({unit.text})"


def _subscripted(base: _Unit, sub: _Unit, dialect: CASDialect) -> str:
    b = _power_base(base)
    s = sub.text
    if dialect.name == "mathematica":
        return f"Subscript[{b}, {s}]"
    return f"{b}[{s}]"


# --- assembly ---------------------------------------------------------------

def _frac_text(unit: _Unit, context: str) -> str:
    num, den, compact = unit.frac
    if context == "standalone":
        return f"{num}/{den}" if compact else f"({num})/({den})"
    if context == "juxtaposed":
        return f"({num}/{den})" if compact else f"(({num})/({den}))"
    return f"({num})/({den})"


def _assemble(items: List[tuple], ctx: _Context) -> str:
    parts: List[str] = []
    prev_value = False
    for k, (tag, payload) in enumerate(items):
        if tag == "op":
            parts.append(payload)
            prev_value = False
            continue
        unit = payload
        implicit = prev_value
        if unit.kind == "frac":
            if len(items) == 1:
                text = _frac_text(unit, "standalone")
            else:
                next_value = k + 1 < len(items) and items[k + 1][0] == "val"
                if implicit or next_value:
                    text = _frac_text(unit, "juxtaposed")
                else:
                    text = _frac_text(unit, "operator")
        else:
            text = unit.text
        if implicit:
            parts.append(ctx.dialect.mult_token)
        parts.append(text)
        prev_value = True
    out = "".join(parts).strip()
    if not out:
        raise TranslationError("translation produced empty output")
    return out
