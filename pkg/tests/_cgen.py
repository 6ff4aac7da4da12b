"""Deterministic generator of C-like function sources for tests.

Every structural choice is driven by one integer seed, so a given seed
always yields the same source. Declared names (function, parameters,
locals) are produced through an index->name table that callers can
override, which makes it trivial to build twins that differ only in
their declared identifiers.
"""

from __future__ import annotations

import random

_TYPES = ["int", "long", "unsigned", "char *", "const char *", "size_t", "short"]
_RET_TYPES = ["void", "int", "long", "unsigned", "char *", "static int"]
_DEFAULT_WORDS = ["count", "buf", "len", "tmp", "ptr", "val", "idx", "total",
                  "size", "data", "off", "ret"]
_CALLEES = ["do_work", "log_msg", "check_state", "process", "lookup_entry",
            "g_handler", "emit", "push_back"]
_GLOBALS = ["g_state", "MAX_SIZE", "table", "errno_like"]
_STRINGS = ['"ok"', '"fail: %d"', '"%s"', '"out of range"', '"ok"', '"retry"']
_CHARS = ["'a'", "'\\n'", "'0'", "'\\''"]
_NUMBERS = ["0", "1", "2", "10", "64", "0x7f", "100", "3"]
_CMP_OPS = ["<", ">", "<=", ">=", "==", "!="]
_BIN_OPS = ["+", "-", "*", "%", "&", "|", "^"]
_LINE_COMMENTS = ["// fast path", "// TODO: bounds", "// see rfc", "// note"]
_BLOCK_COMMENTS = ["/* check */", "/* legacy\n   behaviour */", "/* ok */"]


def default_name(i: int) -> str:
    word = _DEFAULT_WORDS[i % len(_DEFAULT_WORDS)]
    return word if i < len(_DEFAULT_WORDS) else f"{word}{i}"


class _Builder:
    def __init__(self, rng: random.Random, name_of, comment_prob: float):
        self.rng = rng
        self.name_of = name_of
        self.comment_prob = comment_prob
        self.names: list[str] = []   # declared names, by allocation order
        self.lines: list[str] = []

    def new_name(self) -> str:
        name = self.name_of(len(self.names))
        self.names.append(name)
        return name

    def known_name(self) -> str:
        return self.rng.choice(self.names) if self.names else self.rng.choice(_GLOBALS)

    def operand(self) -> str:
        roll = self.rng.random()
        if roll < 0.5:
            return self.known_name()
        if roll < 0.85:
            return self.rng.choice(_NUMBERS)
        return self.rng.choice(_GLOBALS)

    def expr(self) -> str:
        a = self.operand()
        if self.rng.random() < 0.5:
            return a
        return f"{a} {self.rng.choice(_BIN_OPS)} {self.operand()}"

    def maybe_comment(self) -> str:
        if self.rng.random() >= self.comment_prob:
            return ""
        if self.rng.random() < 0.6:
            return "  " + self.rng.choice(_LINE_COMMENTS)
        return "  " + self.rng.choice(_BLOCK_COMMENTS)

    def call_args(self) -> str:
        args = []
        for _ in range(self.rng.randrange(0, 3)):
            roll = self.rng.random()
            if roll < 0.4:
                args.append(self.known_name())
            elif roll < 0.7:
                args.append(self.rng.choice(_STRINGS))
            elif roll < 0.85:
                args.append(self.rng.choice(_NUMBERS))
            else:
                args.append(self.rng.choice(_CHARS))
        return ", ".join(args)

    def statement(self, indent: str, depth: int) -> None:
        rng = self.rng
        kind = rng.randrange(0, 6 if depth < 2 else 4)
        if kind == 0:  # declaration
            ty = rng.choice(_TYPES)
            name = self.new_name()
            suffix = ""
            if rng.random() < 0.2:
                suffix = f"[{rng.choice(_NUMBERS[3:])}]"
            init = f" = {self.expr()}" if not suffix and rng.random() < 0.6 else ""
            extra = ""
            if not suffix and not init and rng.random() < 0.3:
                extra = f", {self.new_name()}"
            self.lines.append(f"{indent}{ty} {name}{suffix}{init}{extra};{self.maybe_comment()}")
        elif kind == 1:  # assignment
            self.lines.append(f"{indent}{self.known_name()} = {self.expr()};{self.maybe_comment()}")
        elif kind == 2:  # call
            callee = rng.choice(_CALLEES)
            self.lines.append(f"{indent}{callee}({self.call_args()});{self.maybe_comment()}")
        elif kind == 3:  # compound assignment / member-ish use
            target = self.known_name()
            if rng.random() < 0.3:
                self.lines.append(f"{indent}{target} += {self.operand()};")
            else:
                self.lines.append(f"{indent}g_stats.hits = {self.operand()};")
        elif kind == 4:  # if block
            self.lines.append(
                f"{indent}if ({self.operand()} {rng.choice(_CMP_OPS)} {self.operand()}) {{")
            for _ in range(rng.randrange(1, 3)):
                self.statement(indent + "    ", depth + 1)
            self.lines.append(f"{indent}}}")
        else:  # for loop with its own induction variable
            i = self.new_name()
            self.lines.append(
                f"{indent}for (int {i} = 0; {i} < {rng.choice(_NUMBERS[2:])}; {i}++) {{")
            for _ in range(rng.randrange(1, 3)):
                self.statement(indent + "    ", depth + 1)
            self.lines.append(f"{indent}}}")


def gen_function(seed: int, name_of=None, comment_prob: float = 0.35) -> str:
    """One self-contained C-like function definition."""
    rng = random.Random(seed)
    b = _Builder(rng, name_of or default_name, comment_prob)

    fn_name = b.new_name()
    params = []
    for _ in range(rng.randrange(0, 4)):
        params.append(f"{rng.choice(_TYPES)} {b.new_name()}".replace("* ", "*"))
    ret = rng.choice(_RET_TYPES)
    header_comment = ""
    if rng.random() < comment_prob:
        header_comment = rng.choice(_BLOCK_COMMENTS) + "\n"

    b.lines.append(f"{header_comment}{ret} {fn_name}({', '.join(params) or 'void'}) {{")
    for _ in range(rng.randrange(1, 6)):
        b.statement("    ", 0)
    if ret != "void":
        b.lines.append(f"    return {b.expr()};")
    b.lines.append("}")
    out = "\n".join(b.lines)
    if rng.random() < 0.3:  # trailing noise whitespace
        out += "\n"
    return out


def gen_renamed_twin(seed: int, tag: str, comment_prob: float = 0.35) -> str:
    """Same structure as gen_function(seed) but fresh declared names."""
    return gen_function(seed, name_of=lambda i: f"rn{tag}_{i}", comment_prob=comment_prob)


def gen_comment_only(seed: int) -> str:
    rng = random.Random(seed)
    if rng.random() < 0.5:
        return rng.choice(_LINE_COMMENTS)
    return rng.choice(_BLOCK_COMMENTS) + "\n" + rng.choice(_LINE_COMMENTS)


def gen_macro_function(seed: int) -> str:
    rng = random.Random(seed)
    body = gen_function(seed)
    guard = rng.choice(["#ifdef DEBUG", "#if defined(FOO)", "#define LOCAL 1"])
    head, _, tail = body.partition("{")
    return head + "{\n" + guard + "\n" + tail
