"""Lossless heuristic lexer for C/C++ function fragments.

The corpus this package curates consists of isolated function bodies that
frequently do not compile on their own, so the lexer never raises: any
input splits into a token stream whose concatenated texts reproduce the
input byte for byte. Unterminated strings, chars, or block comments are
reported on the stream and the rest of the input becomes a single Raw
token.

Deliberately out of scope: trigraphs, digraphs, macro expansion, and full
grammar conformance. Raw strings (``R"delim(...)delim"``) are supported;
string/char prefixes (``L``, ``u8``, ``R``, ...) lex as separate
Identifier tokens so literal tokens always start and end with their quote
character.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field


class TokenKind(str, enum.Enum):
    IDENTIFIER = "Identifier"
    KEYWORD = "Keyword"
    NUMBER_LITERAL = "NumberLiteral"
    STRING_LITERAL = "StringLiteral"
    CHAR_LITERAL = "CharLiteral"
    PUNCTUATOR = "Punctuator"
    PREPROCESSOR_DIRECTIVE = "PreprocessorDirective"
    COMMENT = "Comment"
    WHITESPACE = "Whitespace"
    RAW = "Raw"


class LexErrorKind(str, enum.Enum):
    UNTERMINATED_LITERAL = "UnterminatedLiteral"
    UNTERMINATED_COMMENT = "UnterminatedComment"


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    text: str
    start: int
    end: int


@dataclass(frozen=True)
class LexDiagnostic:
    kind: LexErrorKind
    offset: int


@dataclass
class TokenStream:
    tokens: list[Token]
    source_len: int
    error: LexDiagnostic | None = field(default=None)

    def significant(self) -> list[Token]:
        """Tokens that carry code content (no whitespace, no comments)."""
        skip = (TokenKind.WHITESPACE, TokenKind.COMMENT)
        return [t for t in self.tokens if t.kind not in skip]


# Frozen keyword table: union of the C11 keyword set and the C++17 keyword
# set (including the alternative operator spellings `and`, `or`, ...).
KEYWORDS = frozenset({
    # C11
    "auto", "break", "case", "char", "const", "continue", "default", "do",
    "double", "else", "enum", "extern", "float", "for", "goto", "if",
    "inline", "int", "long", "register", "restrict", "return", "short",
    "signed", "sizeof", "static", "struct", "switch", "typedef", "union",
    "unsigned", "void", "volatile", "while",
    "_Alignas", "_Alignof", "_Atomic", "_Bool", "_Complex", "_Generic",
    "_Imaginary", "_Noreturn", "_Static_assert", "_Thread_local",
    # C++17 additions
    "alignas", "alignof", "asm", "bool", "catch", "char16_t", "char32_t",
    "class", "constexpr", "const_cast", "decltype", "delete",
    "dynamic_cast", "explicit", "export", "false", "friend", "mutable",
    "namespace", "new", "noexcept", "nullptr", "operator", "private",
    "protected", "public", "reinterpret_cast", "static_assert",
    "static_cast", "template", "this", "thread_local", "throw", "true",
    "try", "typeid", "typename", "using", "virtual", "wchar_t",
    "and", "and_eq", "bitand", "bitor", "compl", "not", "not_eq", "or",
    "or_eq", "xor", "xor_eq",
})

# Multi-character punctuators, longest first for maximal munch. Digraphs
# are intentionally absent; `<=>` is accepted for modern C++ sources.
_MULTI_PUNCTUATORS = (
    "<<=", ">>=", "...", "->*", "<=>",
    "->", "++", "--", "<<", ">>", "<=", ">=", "==", "!=", "&&", "||",
    "+=", "-=", "*=", "/=", "%=", "&=", "^=", "|=", "::", "##", ".*",
)

_WS_RE = re.compile(r"[ \t\r\n\v\f]+")
_LINE_COMMENT_RE = re.compile(r"//[^\n]*")
_BLOCK_COMMENT_RE = re.compile(r"/\*.*?\*/", re.DOTALL)
# A directive runs to end of line; a backslash immediately before the
# newline continues it onto the next line.
_DIRECTIVE_RE = re.compile(r"#(?:\\\r?\n|[^\n])*")
_IDENT_RE = re.compile(r"(?:[A-Za-z_]|[^\x00-\x7f])(?:[A-Za-z0-9_]|[^\x00-\x7f])*")
# pp-number shape: swallows suffixes, hex floats, exponents, and C++14
# digit separators without trying to validate the constant.
_NUMBER_RE = re.compile(r"\.?[0-9](?:[eEpP][+-]|'(?=[A-Za-z0-9_])|[A-Za-z0-9_.])*")
_STRING_RE = re.compile(r'"(?:\\.|[^"\\])*"', re.DOTALL)
_CHAR_RE = re.compile(r"'(?:\\.|[^'\\])*'", re.DOTALL)
_RAW_OPEN_RE = re.compile(r'"([^ ()\\\t\v\f\r\n]{0,16})\(')
_PUNCT_RE = re.compile("|".join(re.escape(p) for p in _MULTI_PUNCTUATORS))

# Identifiers that, when immediately followed by a quote, start a raw
# string literal.
_RAW_STRING_PREFIXES = frozenset({"R", "uR", "UR", "LR", "u8R"})


def tokenize(source: str) -> TokenStream:
    """Split ``source`` into a lossless token stream.

    Never raises; unterminated constructs set ``stream.error`` and the
    remaining input is emitted as one Raw token.
    """
    tokens: list[Token] = []
    error: LexDiagnostic | None = None
    i = 0
    n = len(source)
    at_line_start = True
    raw_string_next = False

    def emit(kind: TokenKind, end: int) -> None:
        tokens.append(Token(kind, source[i:end], i, end))

    while i < n:
        ch = source[i]
        was_raw_next = raw_string_next
        raw_string_next = False
        line_start = at_line_start
        at_line_start = False

        if ch in " \t\r\n\v\f":
            m = _WS_RE.match(source, i)
            end = m.end()
            emit(TokenKind.WHITESPACE, end)
            text = source[i:end]
            nl = text.rfind("\n")
            if nl >= 0:
                at_line_start = text[nl + 1:].strip(" \t") == ""
            else:
                at_line_start = line_start
            i = end
            continue

        if ch == "/" and source.startswith("//", i):
            end = _LINE_COMMENT_RE.match(source, i).end()
            emit(TokenKind.COMMENT, end)
            i = end
            continue

        if ch == "/" and source.startswith("/*", i):
            m = _BLOCK_COMMENT_RE.match(source, i)
            if m is None:
                error = LexDiagnostic(LexErrorKind.UNTERMINATED_COMMENT, i)
                emit(TokenKind.RAW, n)
                i = n
                break
            emit(TokenKind.COMMENT, m.end())
            i = m.end()
            continue

        if ch == "#" and line_start:
            end = _DIRECTIVE_RE.match(source, i).end()
            emit(TokenKind.PREPROCESSOR_DIRECTIVE, end)
            i = end
            continue

        if ch == '"':
            if was_raw_next:
                m = _RAW_OPEN_RE.match(source, i)
                if m is not None:
                    closer = ")" + m.group(1) + '"'
                    at = source.find(closer, m.end())
                    if at < 0:
                        error = LexDiagnostic(LexErrorKind.UNTERMINATED_LITERAL, i)
                        emit(TokenKind.RAW, n)
                        i = n
                        break
                    emit(TokenKind.STRING_LITERAL, at + len(closer))
                    i = at + len(closer)
                    continue
            m = _STRING_RE.match(source, i)
            if m is None:
                error = LexDiagnostic(LexErrorKind.UNTERMINATED_LITERAL, i)
                emit(TokenKind.RAW, n)
                i = n
                break
            emit(TokenKind.STRING_LITERAL, m.end())
            i = m.end()
            continue

        if ch == "'":
            m = _CHAR_RE.match(source, i)
            if m is None:
                error = LexDiagnostic(LexErrorKind.UNTERMINATED_LITERAL, i)
                emit(TokenKind.RAW, n)
                i = n
                break
            emit(TokenKind.CHAR_LITERAL, m.end())
            i = m.end()
            continue

        if ch == "_" or ("A" <= ch <= "Z") or ("a" <= ch <= "z") or ord(ch) > 127:
            end = _IDENT_RE.match(source, i).end()
            text = source[i:end]
            kind = TokenKind.KEYWORD if text in KEYWORDS else TokenKind.IDENTIFIER
            emit(kind, end)
            if text in _RAW_STRING_PREFIXES and end < n and source[end] == '"':
                raw_string_next = True
            i = end
            continue

        if ("0" <= ch <= "9") or (ch == "." and i + 1 < n and "0" <= source[i + 1] <= "9"):
            end = _NUMBER_RE.match(source, i).end()
            emit(TokenKind.NUMBER_LITERAL, end)
            i = end
            continue

        m = _PUNCT_RE.match(source, i)
        end = m.end() if m is not None else i + 1
        emit(TokenKind.PUNCTUATOR, end)
        i = end

    return TokenStream(tokens=tokens, source_len=n, error=error)


def count_lexical_tokens(stream: TokenStream) -> int:
    """Number of tokens excluding Whitespace and Comment kinds."""
    skip = (TokenKind.WHITESPACE, TokenKind.COMMENT)
    return sum(1 for t in stream.tokens if t.kind not in skip)
