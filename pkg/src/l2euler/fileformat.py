"""Text format for presentations and chain complexes.

A file is a sequence of directives, one per line::

    # comment
    name borromean
    source borromean-complex
    generators a b c
    relator c^-1 b^-1 c a c^-1 a^-1 b a c a^-1
    define X = a^2 c^-5 b^-3
    dims 1 3 2
    entry d1 1 1 = 1 - a
    complex fox

Group-ring expressions use ``+``, ``-``, ``*`` or juxtaposition for products,
``^`` for integer powers, parentheses or square brackets for grouping.
Lowercase letters are generators, an uppercase letter is the inverse of its
lowercase generator, and ``define`` introduces an abbreviation.  A line ending
in a backslash continues on the next line.
"""

import re
from dataclasses import dataclass, field

from .chain import ChainComplex, presentation_complex
from .group import Presentation
from .ring import GroupRingElement
from .words import word_to_str


class ParseError(ValueError):
    def __init__(self, msg, line=None, col=None):
        self.msg = msg
        self.line = line
        self.col = col
        where = ""
        if line is not None:
            where = "line %d" % line
            if col is not None:
                where += ", column %d" % col
            where += ": "
        super().__init__(where + msg)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z])|(\S))")


class _ExprParser:
    def __init__(self, text, gens, macros, line):
        self.text = text
        self.gens = gens
        self.macros = macros
        self.line = line
        self.toks = []
        for m in _TOKEN.finditer(text):
            if m.group(1):
                self.toks.append(("int", int(m.group(1)), m.start(1)))
            elif m.group(2):
                self.toks.append(("sym", m.group(2), m.start(2)))
            elif m.group(3):
                self.toks.append(("op", m.group(3), m.start(3)))
        self.pos = 0

    def error(self, msg, tok=None):
        if tok is None:
            tok = self.peek()
        col = tok[2] + 1 if tok else len(self.text) + 1
        raise ParseError(msg, self.line, col)

    def peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def is_op(self, *ops):
        tok = self.peek()
        return tok is not None and tok[0] == "op" and tok[1] in ops

    def parse(self):
        if not self.toks:
            self.error("empty expression")
        val = self.expr()
        if self.peek() is not None:
            self.error("unexpected %r" % (self.peek()[1],))
        return val

    def expr(self):
        sign = 1
        if self.is_op("+", "-"):
            sign = -1 if self.take()[1] == "-" else 1
        val = self.term()
        if sign < 0:
            val = -val
        while self.is_op("+", "-"):
            op = self.take()[1]
            t = self.term()
            val = val + t if op == "+" else val - t
        return val

    def starts_factor(self):
        tok = self.peek()
        if tok is None:
            return False
        if tok[0] in ("int", "sym"):
            return True
        return tok[1] in ("(", "[")

    def term(self):
        if not self.starts_factor():
            self.error("expected a factor")
        val = self.factor()
        while True:
            if self.is_op("*"):
                self.take()
                if not self.starts_factor():
                    self.error("expected a factor after '*'")
                val = val * self.factor()
            elif self.starts_factor():
                val = val * self.factor()
            else:
                return val

    def exponent(self):
        sign = 1
        if self.is_op("-"):
            self.take()
            sign = -1
        elif self.is_op("+"):
            self.take()
        tok = self.peek()
        if tok is None or tok[0] != "int":
            self.error("malformed exponent")
        self.take()
        return sign * tok[1]

    def factor(self):
        tok = self.take()
        kind, val, _ = tok
        if kind == "int":
            base = GroupRingElement.scalar(val)
        elif kind == "sym":
            base = self.symbol(tok)
        elif val in ("(", "["):
            close = ")" if val == "(" else "]"
            base = self.expr()
            if not self.is_op(close):
                self.error("expected %r" % close)
            self.take()
        else:
            self.error("unexpected %r" % val, tok)
        if self.is_op("^"):
            self.take()
            k = self.exponent()
            if kind == "int":
                if k < 0:
                    self.error("negative power of an integer", tok)
                base = GroupRingElement.scalar(val ** k)
            elif k < 0 and not base.is_monomial():
                self.error("negative power of a non-monomial expression", tok)
            else:
                base = base ** k
        return base

    def symbol(self, tok):
        s = tok[1]
        if s in self.macros:
            return self.macros[s]
        if s in self.gens:
            return GroupRingElement.word(((self.gens[s], 1),))
        if s.isupper() and s.lower() in self.gens:
            return GroupRingElement.word(((self.gens[s.lower()], -1),))
        self.error("unknown symbol %r" % s, tok)


def parse_expr(text, names, macros=None, line=None):
    gens = {n: i for i, n in enumerate(names)}
    return _ExprParser(text, gens, macros or {}, line).parse()


def parse_word(text, names, line=None, macros=None):
    x = parse_expr(text, names, macros, line=line)
    if not x.is_monomial() or next(iter(x.terms.values())) != 1:
        raise ParseError("relator must be a single group element", line)
    return next(iter(x.terms))


@dataclass
class InputFile:
    presentation: Presentation
    complex: ChainComplex = None
    name: str = None
    source: str = None
    fox: bool = False
    comments: list = field(default_factory=list)


def _logical_lines(text):
    buf, start = "", None
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        if start is None:
            start = no
        if line.endswith("\\"):
            buf += line[:-1] + " "
            continue
        buf += line
        if buf.strip():
            yield start, buf.strip()
        buf, start = "", None
    if buf.strip():
        yield start, buf.strip()


def parse_text(text):
    names = None
    relators = []
    macros = {}
    dims = None
    entries = []
    name = source = None
    fox = False
    comments = [l[1:].strip() for l in text.splitlines() if l.startswith("#")]
    for no, line in _logical_lines(text):
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if head == "name":
            name = rest
        elif head == "source":
            source = rest
        elif head == "generators":
            names = rest.split()
            for n in names:
                if not re.fullmatch(r"[a-z]", n):
                    raise ParseError("generator names must be single lowercase letters", no)
            if len(set(names)) != len(names):
                raise ParseError("duplicate generator name", no)
        elif head == "relator":
            if names is None:
                raise ParseError("relator before generators", no)
            relators.append(parse_word(rest, names, line=no, macros=macros))
        elif head == "define":
            if names is None:
                raise ParseError("define before generators", no)
            key, eq, body = rest.partition("=")
            key = key.strip()
            if not eq or not re.fullmatch(r"[A-Za-z]", key) or key.lower() in names:
                raise ParseError("bad define", no)
            macros[key] = parse_expr(body, names, macros, line=no)
        elif head == "dims":
            try:
                dims = [int(t) for t in rest.split()]
            except ValueError:
                raise ParseError("dims must be integers", no) from None
        elif head == "entry":
            m = re.fullmatch(r"d(\d+)\s+(\d+)\s+(\d+)\s*=\s*(.*)", rest)
            if not m:
                raise ParseError("malformed entry", no)
            if names is None:
                raise ParseError("entry before generators", no)
            k, i, j = int(m.group(1)), int(m.group(2)), int(m.group(3))
            entries.append((no, k, i, j, parse_expr(m.group(4), names, macros, line=no)))
        elif head == "complex":
            if rest != "fox":
                raise ParseError("only 'complex fox' is supported", no)
            fox = True
        else:
            raise ParseError("unknown directive %r" % head, no)
    if names is None:
        raise ParseError("missing generators line")
    pres = Presentation(len(names), tuple(relators), tuple(names))
    cx = None
    if fox:
        if dims is not None or entries:
            raise ParseError("'complex fox' cannot be combined with explicit entries")
        cx = presentation_complex(pres)
    elif dims is not None:
        mats = [[[None] * dims[k - 1] for _ in range(dims[k])] for k in range(1, len(dims))]
        for no, k, i, j, val in entries:
            if not 1 <= k < len(dims):
                raise ParseError("boundary d%d outside dims" % k, no)
            if not (1 <= i <= dims[k] and 1 <= j <= dims[k - 1]):
                raise ParseError("entry position outside %dx%d" % (dims[k], dims[k - 1]), no)
            if mats[k - 1][i - 1][j - 1] is not None:
                raise ParseError("duplicate entry", no)
            mats[k - 1][i - 1][j - 1] = val
        zero = GroupRingElement()
        mats = [[[zero if e is None else e for e in row] for row in M] for M in mats]
        cx = ChainComplex(dims, mats)
    elif entries:
        raise ParseError("entries given without dims")
    return InputFile(pres, cx, name, source, fox, comments)


def parse_input(path):
    with open(path) as fh:
        inp = parse_text(fh.read())
    return inp.presentation, inp.complex


def load(path):
    with open(path) as fh:
        return parse_text(fh.read())


def serialize(inp):
    """Canonical text: expanded entries, terms ordered by word length."""
    p = inp.presentation
    names = p.names
    out = []
    if inp.name:
        out.append("name %s" % inp.name)
    if inp.source:
        out.append("source %s" % inp.source)
    out.append("generators %s" % " ".join(names))
    for r in p.relators:
        out.append("relator %s" % word_to_str(r, names))
    if inp.fox:
        out.append("complex fox")
    elif inp.complex is not None:
        C = inp.complex
        out.append("dims %s" % " ".join(map(str, C.dims)))
        for k, M in enumerate(C.boundaries, 1):
            for i, row in enumerate(M, 1):
                for j, e in enumerate(row, 1):
                    if e.terms:
                        out.append("entry d%d %d %d = %s" % (k, i, j, e.to_str(names)))
    return "\n".join(out) + "\n"


def write_presentation(p, name=None, source=None, fox=True):
    return serialize(InputFile(p, None, name, source, fox))


def format_matrix(A, names):
    return [[e.to_str(names) for e in row] for row in A]

