"""Inert-form -> semantic LaTeX translation via reverse lexicon patterns."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from . import inert
from .errors import UnknownFunction, UnsupportedTag
from .forward import InfoMessage, TranslationResult
from .inert import InertForm
from .lexicon import Lexicon, LexiconEntry

_CALL_TEMPLATE_RE = re.compile(r"^([A-Za-z_]\w*)\((\$\d+(?:,\$\d+)*)\)$")


@dataclass
class ReverseRule:
    function_name: str
    arity: int
    latex_template: str
    advisories: list = field(default_factory=list)


def _macro_template(entry: LexiconEntry, permutation: List[int]) -> str:
    """Build the semantic-LaTeX template for a macro given the maple arg order.

    ``permutation[j]`` is the macro slot filled by maple argument j; the
    template's ``$i`` placeholders are maple argument positions.
    """
    slot_to_pos = {slot: pos for pos, slot in enumerate(permutation)}
    parts = [entry.macro_name]
    for s in range(entry.num_params):
        parts.append("{$%d}" % slot_to_pos[s])
    if entry.num_vars:
        if 0 not in entry.at_variants:
            parts.append("@")
        for s in range(entry.num_params, entry.arity):
            parts.append("{$%d}" % slot_to_pos[s])
    return "".join(parts)


def build_reverse_rules(lex: Lexicon) -> Dict[Tuple[str, int], ReverseRule]:
    """Derive CAS-function -> macro rules by inverting simple call patterns.

    Patterns that are not plain calls with distinct placeholders (argument
    compositions like EllipticF's sine-of-amplitude) come from a small
    special-case table.
    """
    rules: Dict[Tuple[str, int], ReverseRule] = {}
    for table in (lex.entries, lex.builtins):
        for entry in table.values():
            template = entry.translations.get("maple")
            if template is None or entry.role != "function":
                continue
            if entry.macro_name == "\\EllIntF":
                rules[("EllipticF", 2)] = ReverseRule(
                    "EllipticF", 2, "\\EllIntF@{\\asin@{$0}}{$1}",
                    advisories=entry.advisories)
                continue
            if entry.macro_name == "\\root":
                rules[("root", 2)] = ReverseRule(
                    "root", 2, "\\sqrt[$1]{$0}", advisories=entry.advisories)
                continue
            m = _CALL_TEMPLATE_RE.match(template)
            if m is None:
                continue
            fname = m.group(1)
            permutation = [int(p[1:]) for p in m.group(2).split(",")]
            if sorted(permutation) != list(range(entry.arity)):
                continue
            rules[(fname, entry.arity)] = ReverseRule(
                fname, entry.arity, _macro_template(entry, permutation),
                advisories=entry.advisories)
    return rules


class _Backward:
    def __init__(self, lex: Lexicon):
        self.lex = lex
        self.rules = build_reverse_rules(lex)
        # maple name -> semantic macro; constants shadow Greek letters (gamma)
        self.name_map: Dict[str, str] = {}
        for cmd, renderings in lex.greek.items():
            self.name_map[renderings["maple"]] = cmd
        for record in lex.constants:
            maple = record.translations.get("maple")
            if maple and re.fullmatch(r"[A-Za-z_]\w*", maple):
                self.name_map[maple] = record.semantic_macro
        self.infos: List[InfoMessage] = []
        self._seen = set()

    def note(self, rule: ReverseRule) -> None:
        for adv in rule.advisories:
            key = (adv.kind, adv.text)
            if key not in self._seen:
                self._seen.add(key)
                self.infos.append(InfoMessage(adv.kind, adv.text))

    # --- node renderers ----------------------------------------------------

    def render(self, t: InertForm) -> str:
        tag = t.tag
        if tag == inert.NAME:
            return self.name_map.get(t.payload, t.payload)
        if tag == inert.INTPOS:
            return str(t.payload)
        if tag == inert.INTNEG:
            return f"-{t.payload}"
        if tag == inert.FLOAT:
            return repr(t.payload)
        if tag == inert.RATIONAL:
            p, q = t.children
            sign = "-" if p.tag == inert.INTNEG else ""
            return sign + "\\frac{%d}{%d}" % (p.payload, q.payload)
        if tag == inert.SUM:
            return self.render_sum(t)
        if tag == inert.PROD:
            return self.render_prod(t)
        if tag == inert.DIVIDE:
            num, den = t.children
            return "\\frac{%s}{%s}" % (self.render(num), self.render(den))
        if tag == inert.POWER:
            return self.render_power(t)
        if tag == inert.FUNCTION:
            return self.render_function(t)
        if tag == inert.EQUATION:
            lhs, rhs = t.children
            return f"{self.render(lhs)} = {self.render(rhs)}"
        raise UnsupportedTag(tag)

    def render_sum(self, t: InertForm) -> str:
        parts = []
        for k, c in enumerate(t.children):
            piece = self.render(c)
            if c.tag == inert.SUM:
                piece = f"({piece})"
            if k > 0 and not piece.startswith("-"):
                parts.append("+")
            parts.append(piece)
        return "".join(parts)

    def render_prod(self, t: InertForm) -> str:
        children = t.children
        sign = ""
        parts: List[str] = []
        if children and children[0].tag == inert.INTNEG:
            sign = "-"
            if children[0].payload != 1:
                parts.append(str(children[0].payload))
            children = children[1:]
        for c in children:
            piece = self.render(c)
            if c.tag == inert.SUM or piece.startswith("-"):
                piece = f"({piece})"
            parts.append(piece)
        if not parts:
            return sign + "1"
        out = parts[0]
        for piece in parts[1:]:
            # a space keeps a following letter from extending the macro name
            sep = " " if piece[:1].isalpha() else ""
            out += "\\idt" + sep + piece
        return sign + out

    def render_power(self, t: InertForm) -> str:
        base, expo = t.children
        base_text = self.render(base)
        if base.tag in (inert.SUM, inert.PROD):
            base_text = f"({base_text})"
        elif base.tag in (inert.DIVIDE, inert.RATIONAL, inert.POWER):
            base_text = f"\\left({base_text}\\right)"
        elif base.tag in (inert.INTNEG, inert.FLOAT) and base_text.startswith("-"):
            base_text = f"({base_text})"
        return "%s^{%s}" % (base_text, self.render(expo))

    def render_function(self, t: InertForm) -> str:
        fname = t.children[0].payload
        args = t.children[1].children
        if fname == "sqrt" and len(args) == 1:
            return "\\sqrt{%s}" % self.render(args[0])
        rule = self.rules.get((fname, len(args)))
        if rule is None:
            raise UnknownFunction(fname)
        self.note(rule)
        rendered = [self.render(a) for a in args]
        return re.sub(r"\$(\d+)", lambda m: rendered[int(m.group(1))],
                      rule.latex_template)


def translate_backward(tree: InertForm, lex: Lexicon) -> TranslationResult:
    """Render a preprocessed inert tree as semantic LaTeX."""
    ctx = _Backward(lex)
    output = ctx.render(tree)
    return TranslationResult(output=output, infos=ctx.infos)


def backward_string(text: str, lex: Lexicon, use_divide: bool = True) -> TranslationResult:
    """Parse Maple 1D input, preprocess, and translate to semantic LaTeX."""
    tree = inert.preprocess(inert.parse_maple(text, use_divide=use_divide),
                            use_divide=use_divide)
    return translate_backward(tree, lex)
