"""Text syntax: field specs like ``Q``, ``F7``, ``F4[g^2+g+1]``; scalars like
``5/6`` or ``g+1``; polynomials over the jet ring grammar
(``+ - * ^``, parentheses, unary minus, no implicit products).

The polynomial parser is a hand-rolled recursive descent with exact error
positions.  Input is evaluated as an exact polynomial first; terms above the
truncation order are rejected unless truncation is requested explicitly.
"""

from __future__ import annotations

import re

from .errors import DegreeExceedsBeta, InvalidField, ParseError, UnknownVariable
from .fields import Field
from .trunc import PolySystem, RingSpec, TruncPoly, default_names

_FIELD_RE = re.compile(r"^\s*(Q|F(\d+)(\[([^\]]+)\])?)\s*$")
_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|([()+\-*/^]))")


def parse_field(text):
    """Parse a field spec string into a Field."""
    m = _FIELD_RE.match(text)
    if not m:
        raise InvalidField(f"cannot read field spec {text!r}; "
                           "expected Q, F<q>, or F<q>[modulus]")
    if m.group(1) == "Q":
        return Field(0)
    q = int(m.group(2))
    if q < 2:
        raise InvalidField(f"field order {q} is not a prime power")
    p = None
    for cand in range(2, q + 1):
        if q % cand == 0:
            p = cand
            break
    mdeg = 0
    qq = q
    while qq % p == 0:
        qq //= p
        mdeg += 1
    if qq != 1:
        raise InvalidField(f"field order {q} is not a prime power")
    if m.group(4) is None:
        return Field(p, mdeg)
    if mdeg == 1:
        raise InvalidField("modulus only allowed for extension fields")
    base = Field(p)
    spec = RingSpec(1, mdeg, base, names=("g",))
    poly = _parse_exact(m.group(4), spec, {"g": 0})
    coeffs = [0] * (mdeg + 1)
    for e, c in poly.items():
        if e[0] > mdeg:
            raise InvalidField("modulus degree exceeds the extension degree")
        coeffs[e[0]] = int(c.value[0])
    return Field(p, mdeg, tuple(coeffs))


class _Tokens:
    def __init__(self, text):
        self.text = text
        self.items = []
        pos = 0
        while pos < len(text):
            m = _TOKEN_RE.match(text, pos)
            if not m or m.end() == pos:
                stripped = text[pos:].lstrip()
                if not stripped:
                    break
                at = len(text) - len(stripped)
                raise ParseError(f"unexpected character {stripped[0]!r}",
                                 position=at)
            at = m.end() - len((m.group(1) or m.group(2) or m.group(3)))
            if m.group(1):
                self.items.append(("int", int(m.group(1)), at))
            elif m.group(2):
                self.items.append(("name", m.group(2), at))
            else:
                self.items.append(("op", m.group(3), at))
            pos = m.end()
        self.items.append(("end", None, len(text)))
        self.k = 0

    def peek(self):
        return self.items[self.k]

    def next(self):
        tok = self.items[self.k]
        self.k += 1
        return tok


def _parse_exact(text, spec, var_map):
    """Evaluate the expression to an exact coefficient dict (no truncation).

    ``var_map`` sends variable names to indices; the name ``g`` maps to the
    field generator when the base field is an extension.
    """
    field = spec.field
    toks = _Tokens(text)
    nvars = spec.nvars
    const_key = (0,) * nvars

    def add(a, b):
        out = dict(a)
        for e, c in b.items():
            s = out.get(e)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(e, None)
            else:
                out[e] = s
        return out

    def neg(a):
        return {e: -c for e, c in a.items()}

    def mul(a, b):
        out = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                s = out.get(e)
                prod = c1 * c2
                s = prod if s is None else s + prod
                if s.is_zero():
                    out.pop(e, None)
                else:
                    out[e] = s
        return out

    def power(a, k):
        result = {const_key: field.one}
        base = a
        while k:
            if k & 1:
                result = mul(result, base)
            base = mul(base, base)
            k >>= 1
        return result

    def parse_expr():
        kind, val, pos = toks.peek()
        if kind == "op" and val in "+-":
            toks.next()
            head = parse_factor()
            node = head if val == "+" else neg(head)
            node = tail_powers_and_products(node)
        else:
            node = parse_term()
        while True:
            kind, val, pos = toks.peek()
            if kind == "op" and val in "+-":
                toks.next()
                rhs = parse_term()
                node = add(node, rhs if val == "+" else neg(rhs))
            else:
                return node

    def tail_powers_and_products(node):
        while True:
            kind, val, pos = toks.peek()
            if kind == "op" and val == "*":
                toks.next()
                node = mul(node, parse_factor())
            else:
                return node

    def parse_term():
        node = parse_factor()
        while True:
            kind, val, pos = toks.peek()
            if kind == "op" and val == "*":
                toks.next()
                node = mul(node, parse_factor())
            else:
                return node

    def parse_factor():
        node = parse_atom()
        while True:
            kind, val, pos = toks.peek()
            if kind == "op" and val == "^":
                toks.next()
                kk, vv, pp = toks.next()
                if kk != "int":
                    raise ParseError("exponent must be a literal integer",
                                     position=pp)
                if vv > 512:
                    raise ParseError("exponent too large", position=pp)
                node = power(node, vv)
            else:
                return node

    def parse_atom():
        kind, val, pos = toks.next()
        if kind == "int":
            nk, nv, np_ = toks.peek()
            if nk == "op" and nv == "/":
                if field.p != 0:
                    raise ParseError(
                        "rational literals are only allowed over Q",
                        position=np_)
                toks.next()
                dk, dv, dp = toks.next()
                if dk != "int":
                    raise ParseError("denominator must be an integer",
                                     position=dp)
                if dv == 0:
                    raise ParseError("zero denominator", position=dp)
                return {const_key: field.from_fraction(val, dv)}
            return {const_key: field.from_int(val)}
        if kind == "name":
            if val == "g" and field.m > 1 and "g" not in var_map:
                return {const_key: field.generator}
            j = var_map.get(val)
            if j is None:
                raise UnknownVariable(f"unknown variable {val!r}",
                                      position=pos)
            e = tuple(1 if i == j else 0 for i in range(nvars))
            return {e: field.one}
        if kind == "op" and val == "(":
            node = parse_expr()
            kk, vv, pp = toks.next()
            if not (kk == "op" and vv == ")"):
                raise ParseError("expected ')'", position=pp)
            return node
        if kind == "op" and val in "+-":
            node = parse_factor()
            return node if val == "+" else neg(node)
        raise ParseError(f"unexpected token {val!r}" if val is not None
                         else "unexpected end of input", position=pos)

    result = parse_expr()
    kind, val, pos = toks.peek()
    if kind != "end":
        raise ParseError(f"trailing input at {val!r}", position=pos)
    return result


def parse_poly(text, spec, truncate=False):
    """Parse an expression into the jet ring.

    Terms above the truncation order are an error unless ``truncate`` is
    set; silently computing in a too-small jet ring is the most likely user
    mistake.
    """
    var_map = {name: j for j, name in enumerate(spec.names)}
    # x1..xN aliases are always accepted alongside the display names
    for j in range(spec.nvars):
        var_map.setdefault(f"x{j + 1}", j)
    raw = _parse_exact(text, spec, var_map)
    over = [e for e in raw if sum(e) > spec.beta]
    if over and not truncate:
        deg = max(sum(e) for e in over)
        raise DegreeExceedsBeta(
            f"term of degree {deg} exceeds beta = {spec.beta}; "
            "pass truncate to discard it", degree=deg, beta=spec.beta)
    return TruncPoly(spec, {e: c for e, c in raw.items()
                            if sum(e) <= spec.beta})


def parse_scalar(text, field):
    """Parse a scalar literal (rational, residue, or polynomial in g)."""
    spec = RingSpec(1, 0, field, names=("_t",))
    raw = _parse_exact(text, spec, {})
    return raw.get((0,), field.zero)


def parse_point(values, field):
    """Parse a point given as a list of scalar strings (or a comma list)."""
    if isinstance(values, str):
        values = [v for v in values.split(",") if v.strip()]
    return [parse_scalar(str(v), field) for v in values]


def parse_system(texts, spec, truncate=False):
    if isinstance(texts, str):
        texts = [t for t in texts.split(";") if t.strip()]
    return PolySystem(spec, [parse_poly(t, spec, truncate=truncate)
                             for t in texts])


def make_ring(field_text, nvars=None, beta=None, names=None):
    field = parse_field(field_text) if isinstance(field_text, str) \
        else field_text
    if names:
        nvars = len(names)
    if nvars is None:
        raise ParseError("number of variables is required")
    if beta is None:
        raise ParseError("truncation order beta is required")
    return RingSpec(nvars, beta, field,
                    names=tuple(names) if names else default_names(nvars))


def parse_vars(vars_arg):
    """--vars accepts a count, a comma-separated name list, or a list."""
    if vars_arg is None:
        return None, None
    if isinstance(vars_arg, (list, tuple)):
        names = tuple(str(s).strip() for s in vars_arg)
    else:
        text = str(vars_arg).strip()
        if text.isdigit():
            n = int(text)
            return n, default_names(n)
        names = tuple(s.strip() for s in text.split(",") if s.strip())
    for name in names:
        if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", name):
            raise ParseError(f"bad variable name {name!r}")
    return len(names), names
