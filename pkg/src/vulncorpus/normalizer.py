"""Function-level code normalization.

One function at a time: comments go away, whitespace collapses, string
literals become ``STR_i`` placeholders, and the function's own name plus
its parameters and locals become ``FUNC_i`` / ``VAR_i`` placeholders. The
result is a canonical single-line rendering whose equality is insensitive
to programmer-chosen names, which is what makes renamed duplicates
collide downstream.

Declaration detection is a token-level heuristic, not a parse: it handles
the common C and C++ definition shapes (qualified names, constructor
initializer lists, trailing return types, multi-declarator statements,
pointers, arrays, function pointers, ``for``-init declarations) and
deliberately gives up on K&R-style parameter declarations. Called
functions, types, struct fields, and globals are never renamed: the
corpus is isolated functions, so nothing outside the function can be
resolved.

Functions containing preprocessor directives, or whose braces or parens
never balance, are not rewritten: they pass through with only comments
and whitespace removed and are flagged ``MacroError``.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field

from .lexer import (
    Token,
    TokenKind,
    TokenStream,
    count_lexical_tokens,
    tokenize,
)


class MacroSuspect(Exception):
    """Raised when a stream cannot be safely rewritten.

    Triggers: any preprocessor directive in the stream, or brace/paren
    nesting that never balances (the classic symptom of macro-dependent
    code).
    """

    def __init__(self, reason: str, offset: int):
        super().__init__(f"{reason} at byte {offset}")
        self.reason = reason
        self.offset = offset


class NormalizationStatus(str, enum.Enum):
    OK = "Ok"
    COMMENT_ONLY = "CommentOnly"
    MACRO_ERROR = "MacroError"
    LEX_ERROR = "LexError"


@dataclass
class SymbolTable:
    """Names declared by the function itself, in first-occurrence order."""

    function_names: list[str] = field(default_factory=list)
    variable_names: list[str] = field(default_factory=list)


@dataclass
class NormalizationResult:
    normalized: str
    status: NormalizationStatus
    identifier_map: dict[str, str]
    orig_token_count: int
    norm_token_count: int
    subword_token_count: int | None = None


_WORD_KINDS = (TokenKind.IDENTIFIER, TokenKind.KEYWORD, TokenKind.NUMBER_LITERAL)

_TYPE_KEYWORDS = frozenset({
    "void", "char", "short", "int", "long", "float", "double", "signed",
    "unsigned", "bool", "auto", "wchar_t", "char16_t", "char32_t",
    "_Bool", "_Complex", "_Imaginary",
})
_QUALIFIER_KEYWORDS = frozenset({
    "const", "volatile", "static", "register", "extern", "inline",
    "restrict", "constexpr", "mutable", "thread_local", "typename",
    "_Thread_local", "_Atomic", "_Noreturn", "_Alignas",
})
_TAG_KEYWORDS = frozenset({"struct", "union", "enum", "class"})

_DECLARATOR_OPS = frozenset({"*", "&", "&&"})

_PLACEHOLDER_RE = re.compile(r"(FUNC|VAR|STR)_(0|[1-9][0-9]*)\Z")


def _match_forward(sig: list[Token], start: int, open_text: str, close_text: str) -> int | None:
    """Index of the token matching the opener at ``start``, else None."""
    depth = 0
    for i in range(start, len(sig)):
        t = sig[i]
        if t.kind is not TokenKind.PUNCTUATOR:
            continue
        if t.text == open_text:
            depth += 1
        elif t.text == close_text:
            depth -= 1
            if depth == 0:
                return i
    return None


def _group_declarator(group: list[Token]) -> str | None:
    """Declared name inside a parenthesized declarator like ``(*cb)``.

    Last identifier at the group's own nesting level, skipping struct
    tags and member/qualified accesses.
    """
    depth = 0
    last: str | None = None
    prev: Token | None = None
    for t in group:
        if t.kind is TokenKind.PUNCTUATOR and t.text in "([":
            depth += 1
        elif t.kind is TokenKind.PUNCTUATOR and t.text in ")]":
            depth -= 1
        elif depth == 0 and t.kind is TokenKind.IDENTIFIER:
            after_access = prev is not None and prev.kind is TokenKind.PUNCTUATOR \
                and prev.text in {".", "->", "::"}
            after_tag = prev is not None and prev.kind is TokenKind.KEYWORD \
                and prev.text in _TAG_KEYWORDS
            if not after_access and not after_tag:
                last = t.text
        prev = t
    return last


def _param_declarator(segment: list[Token]) -> str | None:
    """Declared parameter name in one comma-separated parameter segment."""
    # Cut a C++ default argument off at the first top-level '='.
    cut = []
    depth = 0
    for t in segment:
        if t.kind is TokenKind.PUNCTUATOR:
            if t.text in "([{":
                depth += 1
            elif t.text in ")]}":
                depth -= 1
            elif t.text == "=" and depth == 0:
                break
        cut.append(t)
    if not cut:
        return None
    if len(cut) == 1 and cut[0].text == "...":
        return None

    # Function-pointer parameters carry their name in the first group.
    depth = 0
    for i, t in enumerate(cut):
        if t.kind is TokenKind.PUNCTUATOR and t.text == "(":
            if depth == 0:
                close = _match_forward(cut, i, "(", ")")
                if close is None:
                    return None
                return _group_declarator(cut[i + 1:close])
            depth += 1
        elif t.kind is TokenKind.PUNCTUATOR and t.text == ")":
            depth -= 1

    return _group_declarator(cut)


def _statement_declarations(stmt: list[Token]) -> list[str]:
    """Names declared by one body statement, or [] if not a declaration."""
    n = len(stmt)
    j = 0
    saw_type = False
    while j < n:
        t = stmt[j]
        if t.kind is not TokenKind.KEYWORD:
            break
        if t.text in _TAG_KEYWORDS:
            j += 1
            if j < n and stmt[j].kind is TokenKind.IDENTIFIER:
                j += 1  # the tag names the type, not a variable
            saw_type = True
        elif t.text in _TYPE_KEYWORDS:
            saw_type = True
            j += 1
        elif t.text in _QUALIFIER_KEYWORDS:
            j += 1
        else:
            return []  # control-flow or operator keyword

    if not saw_type:
        type_end = _typedef_style_type_end(stmt, j)
        if type_end is None:
            return []
        j = type_end

    return _declarator_list(stmt, j)


def _typedef_style_type_end(stmt: list[Token], j: int) -> int | None:
    """End of an identifier-led type (``MyType``, ``ns::T``, ``T<...>``).

    Requires a following declarator (``[*&]* Identifier`` with a sane
    terminator) so that plain expressions are not mistaken for
    declarations.
    """
    n = len(stmt)
    if j >= n or stmt[j].kind is not TokenKind.IDENTIFIER:
        return None
    k = j + 1
    while k + 1 < n and stmt[k].kind is TokenKind.PUNCTUATOR and stmt[k].text == "::" \
            and stmt[k + 1].kind is TokenKind.IDENTIFIER:
        k += 2
    if k < n and stmt[k].kind is TokenKind.PUNCTUATOR and stmt[k].text == "<":
        depth = 0
        close = None
        for i in range(k, n):
            t = stmt[i]
            if t.kind is not TokenKind.PUNCTUATOR:
                continue
            if t.text == "<":
                depth += 1
            elif t.text == ">":
                depth -= 1
                if depth == 0:
                    close = i
                    break
            elif t.text in {"&&", "||", "?"}:
                break  # comparison chain, not template arguments
        if close is None:
            return None
        k = close + 1
    type_end = k
    while k < n and stmt[k].kind is TokenKind.PUNCTUATOR and stmt[k].text in _DECLARATOR_OPS:
        k += 1
    if k >= n or stmt[k].kind is not TokenKind.IDENTIFIER:
        return None
    nxt = stmt[k + 1] if k + 1 < n else None
    if nxt is not None and not (nxt.kind is TokenKind.PUNCTUATOR
                                and nxt.text in {",", "=", "[", "{", "("}):
        return None
    return type_end


def _declarator_list(stmt: list[Token], j: int) -> list[str]:
    """Parse ``decl opt-init (, decl opt-init)*`` from position ``j``."""
    declared: list[str] = []
    n = len(stmt)
    while j < n:
        while j < n and stmt[j].kind is TokenKind.PUNCTUATOR and stmt[j].text in _DECLARATOR_OPS:
            j += 1
        if j < n and stmt[j].kind is TokenKind.PUNCTUATOR and stmt[j].text == "(":
            close = _match_forward(stmt, j, "(", ")")
            if close is None:
                break
            name = _group_declarator(stmt[j + 1:close])
            if name:
                declared.append(name)
            j = close + 1
        elif j < n and stmt[j].kind is TokenKind.IDENTIFIER:
            declared.append(stmt[j].text)
            j += 1
        else:
            break
        # Skip the initializer/suffix up to the next top-level comma.
        depth = 0
        comma = None
        while j < n:
            t = stmt[j]
            if t.kind is TokenKind.PUNCTUATOR:
                if t.text in "([{":
                    depth += 1
                elif t.text in ")]}":
                    depth -= 1
                    if depth < 0:
                        return declared
                elif t.text == "," and depth == 0:
                    comma = j
                    break
            j += 1
        if comma is None:
            break
        j = comma + 1
    return declared


def _collect_body_locals(body: list[Token]) -> list[str]:
    """Declared names in a function body (all nesting levels)."""
    declared: list[str] = []
    boundaries = {";", "{", "}", ":"}
    n = len(body)
    start = 0
    i = 0
    while i <= n:
        at_boundary = i == n or (
            body[i].kind is TokenKind.PUNCTUATOR and body[i].text in boundaries
        )
        if at_boundary:
            stmt = body[start:i]
            if stmt:
                declared.extend(_statement_declarations(stmt))
            start = i + 1
        elif body[i].kind is TokenKind.KEYWORD and body[i].text == "for" \
                and i + 1 < n and body[i + 1].text == "(":
            # for-init declarations live between '(' and the first ';'
            stmt_from_for = body[start:i]
            if stmt_from_for:
                declared.extend(_statement_declarations(stmt_from_for))
            start = i + 2
            i += 1
        i += 1
    return declared


def _find_body_open(sig: list[Token], pos: int) -> int | None:
    """First '{' from ``pos`` that sits outside any parentheses."""
    depth = 0
    for i in range(pos, len(sig)):
        t = sig[i]
        if t.kind is not TokenKind.PUNCTUATOR:
            continue
        if t.text == "(":
            depth += 1
        elif t.text == ")":
            depth -= 1
        elif t.text == "{" and depth == 0:
            return i
    return None


def _select_function(sig: list[Token], pos: int, body_open: int) -> tuple[int, int, int] | None:
    """Pick the ``name ( params )`` group that owns the body at body_open.

    First candidate whose gap to the body contains no statement-level ';'
    or '=' wins; that tolerates cv-qualifiers, constructor initializer
    lists, and trailing return types while rejecting prototypes and
    initialized globals that precede the function.
    """
    candidates = []
    depth = 0
    for i in range(pos, body_open):
        t = sig[i]
        if t.kind is TokenKind.PUNCTUATOR:
            if t.text == "(":
                depth += 1
            elif t.text == ")":
                depth -= 1
        elif t.kind is TokenKind.IDENTIFIER and depth == 0 and i + 1 < body_open \
                and sig[i + 1].kind is TokenKind.PUNCTUATOR and sig[i + 1].text == "(":
            candidates.append(i)
    for ident in candidates:
        rparen = _match_forward(sig, ident + 1, "(", ")")
        if rparen is None or rparen >= body_open:
            continue
        gap = sig[rparen + 1:body_open]
        if any(t.kind is TokenKind.PUNCTUATOR and t.text in {";", "="} for t in gap):
            continue
        return ident, ident + 1, rparen
    return None


def build_symbol_table(stream: TokenStream) -> SymbolTable:
    """Detect the function name(s), parameters, and locals in a stream.

    Raises MacroSuspect when the stream contains a preprocessor directive
    or its brace/paren nesting never balances; callers mark such records
    MacroError and pass them through unrewritten.
    """
    sig = stream.significant()

    for t in sig:
        if t.kind is TokenKind.PREPROCESSOR_DIRECTIVE:
            raise MacroSuspect("preprocessor directive", t.start)

    parens = 0
    braces = 0
    for t in sig:
        if t.kind is not TokenKind.PUNCTUATOR:
            continue
        if t.text == "(":
            parens += 1
        elif t.text == ")":
            parens -= 1
            if parens < 0:
                raise MacroSuspect("unbalanced parentheses", t.start)
        elif t.text == "{":
            braces += 1
        elif t.text == "}":
            braces -= 1
            if braces < 0:
                raise MacroSuspect("unbalanced braces", t.start)
    if parens != 0 or braces != 0:
        last = sig[-1] if sig else None
        raise MacroSuspect("unbalanced nesting", last.end if last else 0)

    func_names: list[str] = []
    var_names: list[str] = []
    pos = 0
    while True:
        body_open = _find_body_open(sig, pos)
        if body_open is None:
            break
        body_close = _match_forward(sig, body_open, "{", "}")
        selected = _select_function(sig, pos, body_open)
        if selected is not None:
            ident, lparen, rparen = selected
            name = sig[ident].text
            if name not in func_names and name not in var_names:
                func_names.append(name)
            for segment in _split_parameters(sig[lparen + 1:rparen]):
                p = _param_declarator(segment)
                if p and p not in var_names and p not in func_names:
                    var_names.append(p)
        for v in _collect_body_locals(sig[body_open + 1:body_close]):
            if v not in var_names and v not in func_names:
                var_names.append(v)
        pos = body_close + 1

    table = SymbolTable(function_names=func_names, variable_names=var_names)
    _sort_by_first_occurrence(stream, table)
    return table


def _split_parameters(params: list[Token]) -> list[list[Token]]:
    segments: list[list[Token]] = []
    current: list[Token] = []
    depth = 0
    for t in params:
        if t.kind is TokenKind.PUNCTUATOR:
            if t.text in "([{":
                depth += 1
            elif t.text in ")]}":
                depth -= 1
            elif t.text == "," and depth == 0:
                segments.append(current)
                current = []
                continue
        current.append(t)
    if current:
        segments.append(current)
    return segments


def _sort_by_first_occurrence(stream: TokenStream, table: SymbolTable) -> None:
    first: dict[str, int] = {}
    for i, t in enumerate(stream.tokens):
        if t.kind is TokenKind.IDENTIFIER and t.text not in first:
            first[t.text] = i
    table.function_names.sort(key=lambda s: first.get(s, len(stream.tokens)))
    table.variable_names.sort(key=lambda s: first.get(s, len(stream.tokens)))


def _placeholder_plan(stream: TokenStream, symbols: SymbolTable) -> dict[str, str]:
    """Full identifier rewrite map: declared names plus collision fixes.

    Declared names get FUNC_i/VAR_i by first occurrence. Undeclared
    identifiers that literally equal a placeholder this run will emit
    (FUNC_i/VAR_i below the assigned count, STR_i below the distinct
    string-literal count) get an ``_X`` suffix so placeholders stay
    unambiguous.
    """
    fset = set(symbols.function_names)
    vset = set(symbols.variable_names)
    fmap: dict[str, str] = {}
    vmap: dict[str, str] = {}
    strings_seen: set[str] = set()
    for t in stream.tokens:
        if t.kind is TokenKind.IDENTIFIER:
            if t.text in fset and t.text not in fmap:
                fmap[t.text] = f"FUNC_{len(fmap)}"
            elif t.text in vset and t.text not in vmap:
                vmap[t.text] = f"VAR_{len(vmap)}"
        elif t.kind is TokenKind.STRING_LITERAL:
            strings_seen.add(t.text)

    emitted_counts = {"FUNC": len(fmap), "VAR": len(vmap), "STR": len(strings_seen)}
    plan = {**fmap, **vmap}
    for t in stream.tokens:
        if t.kind is not TokenKind.IDENTIFIER or t.text in plan:
            continue
        m = _PLACEHOLDER_RE.fullmatch(t.text)
        if m and int(m.group(2)) < emitted_counts[m.group(1)]:
            plan[t.text] = t.text + "_X"
    return plan


def _rewrite_identifiers(stream: TokenStream, mapping: dict[str, str]) -> TokenStream:
    if not mapping:
        return stream
    tokens: list[Token] = []
    offset = 0
    for t in stream.tokens:
        text = mapping.get(t.text, t.text) if t.kind is TokenKind.IDENTIFIER else t.text
        tokens.append(Token(t.kind, text, offset, offset + len(text)))
        offset += len(text)
    return TokenStream(tokens=tokens, source_len=offset, error=stream.error)


def anonymize(stream: TokenStream, symbols: SymbolTable) -> TokenStream:
    """Replace declared names with FUNC_i/VAR_i placeholders.

    Indices follow first-occurrence order in the stream, starting at 0.
    An empty symbol table is a no-op.
    """
    return _rewrite_identifiers(stream, _placeholder_plan(stream, symbols))


def substitute_strings(stream: TokenStream) -> TokenStream:
    """Replace the i-th distinct string literal with identifier STR_i.

    Identical literals share one placeholder; char literals are left
    alone.
    """
    mapping: dict[str, str] = {}
    tokens: list[Token] = []
    offset = 0
    changed = False
    for t in stream.tokens:
        kind, text = t.kind, t.text
        if kind is TokenKind.STRING_LITERAL:
            if text not in mapping:
                mapping[text] = f"STR_{len(mapping)}"
            kind, text = TokenKind.IDENTIFIER, mapping[text]
            changed = True
        tokens.append(Token(kind, text, offset, offset + len(text)))
        offset += len(text)
    if not changed:
        return stream
    return TokenStream(tokens=tokens, source_len=offset, error=stream.error)


def strip_and_collapse(stream: TokenStream) -> str:
    """Drop comments and squeeze whitespace to the minimum.

    One space separates adjacent word-like tokens (identifier, keyword,
    number); everything else abuts directly. Two safety exceptions keep
    the output re-lexable: a space is kept where gluing would spell a
    comment opener, and preprocessor directives keep a newline on each
    side so they stay line-shaped.
    """
    parts: list[str] = []
    prev: Token | None = None
    for t in stream.tokens:
        if t.kind in (TokenKind.WHITESPACE, TokenKind.COMMENT):
            continue
        if prev is not None:
            if t.kind is TokenKind.PREPROCESSOR_DIRECTIVE \
                    or prev.kind is TokenKind.PREPROCESSOR_DIRECTIVE:
                parts.append("\n")
            elif prev.kind in _WORD_KINDS and t.kind in _WORD_KINDS:
                parts.append(" ")
            elif prev.text.endswith("/") and t.text[:1] in ("/", "*"):
                parts.append(" ")
            elif prev.kind is TokenKind.NUMBER_LITERAL and t.text[:1] == "'":
                parts.append(" ")
        parts.append(t.text)
        prev = t
    return "".join(parts)


def normalize(source: str, subword_counter=None) -> NormalizationResult:
    """Run the full rewrite pipeline on one function's source.

    Never raises; problems surface through ``status``:

    * ``LexError``    — unterminated construct; source kept verbatim.
    * ``CommentOnly`` — nonempty source with no code tokens; output "".
    * ``MacroError``  — directives or unbalanced nesting; comments and
      whitespace stripped, nothing renamed.
    * ``Ok``          — fully rewritten.

    ``subword_counter``, when given, is called on the normalized text and
    its result stored as ``subword_token_count``.
    """
    stream = tokenize(source)
    orig_count = count_lexical_tokens(stream)

    if stream.error is not None:
        normalized = source
        status = NormalizationStatus.LEX_ERROR
        identifier_map: dict[str, str] = {}
        norm_count = orig_count
    elif orig_count == 0 and source:
        normalized = ""
        status = NormalizationStatus.COMMENT_ONLY
        identifier_map = {}
        norm_count = 0
    else:
        try:
            table = build_symbol_table(stream)
        except MacroSuspect:
            normalized = strip_and_collapse(stream)
            status = NormalizationStatus.MACRO_ERROR
            identifier_map = {}
        else:
            identifier_map = _placeholder_plan(stream, table)
            rewritten = substitute_strings(_rewrite_identifiers(stream, identifier_map))
            normalized = strip_and_collapse(rewritten)
            status = NormalizationStatus.OK
        norm_count = count_lexical_tokens(tokenize(normalized))

    return NormalizationResult(
        normalized=normalized,
        status=status,
        identifier_map=identifier_map,
        orig_token_count=orig_count,
        norm_token_count=norm_count,
        subword_token_count=subword_counter(normalized) if subword_counter else None,
    )
