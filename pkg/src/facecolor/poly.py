"""Exact sparse polynomials over the integers in the variables n and t.

Every invariant in this package is a polynomial in the color count n
(and, for the 2-variable total polynomial, a homological grading variable
t).  Coefficients are plain Python ints, so state sums over millions of
states never overflow.  Values are immutable and hashable; partial sums
produced by parallel workers are combined with ordinary addition.
"""

from __future__ import annotations

from typing import Iterator, Mapping


class IntPoly:
    """A polynomial sum(c * n^a * t^b) stored as {(a, b): c} with c != 0."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[tuple[int, int], int] | None = None):
        clean: dict[tuple[int, int], int] = {}
        if terms:
            for (dn, dt), coeff in terms.items():
                if dn < 0 or dt < 0:
                    raise ValueError("negative exponent in IntPoly")
                if coeff:
                    clean[(dn, dt)] = clean.get((dn, dt), 0) + coeff
                    if not clean[(dn, dt)]:
                        del clean[(dn, dt)]
        self._terms = clean

    @property
    def terms(self) -> dict[tuple[int, int], int]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = const(other)
        if not isinstance(other, IntPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: "IntPoly | int") -> "IntPoly":
        other = _coerce(other)
        out = dict(self._terms)
        for key, coeff in other._terms.items():
            new = out.get(key, 0) + coeff
            if new:
                out[key] = new
            else:
                out.pop(key, None)
        return _raw(out)

    __radd__ = __add__

    def __neg__(self) -> "IntPoly":
        return _raw({k: -c for k, c in self._terms.items()})

    def __sub__(self, other: "IntPoly | int") -> "IntPoly":
        return self + (-_coerce(other))

    def __rsub__(self, other: "IntPoly | int") -> "IntPoly":
        return _coerce(other) + (-self)

    def __mul__(self, other: "IntPoly | int") -> "IntPoly":
        other = _coerce(other)
        out: dict[tuple[int, int], int] = {}
        for (an, at), ac in self._terms.items():
            for (bn, bt), bc in other._terms.items():
                key = (an + bn, at + bt)
                new = out.get(key, 0) + ac * bc
                if new:
                    out[key] = new
                else:
                    del out[key]
        return _raw(out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "IntPoly":
        if exponent < 0:
            raise ValueError("negative power of IntPoly")
        result = ONE
        base = self
        k = exponent
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def evaluate(self, n_val: int, t_val: int = 1) -> int:
        """Exact integer evaluation at n = n_val, t = t_val."""
        total = 0
        for (dn, dt), coeff in self._terms.items():
            total += coeff * n_val**dn * t_val**dt
        return total

    def t_coefficient(self, dt: int) -> "IntPoly":
        """The coefficient of t^dt, as a polynomial in n."""
        return _raw({(dn, 0): c for (dn, dtt), c in self._terms.items() if dtt == dt})

    def max_t_degree(self) -> int:
        return max((dt for (_, dt) in self._terms), default=0)

    def sorted_terms(self) -> list[tuple[tuple[int, int], int]]:
        """Terms sorted by (deg_n, deg_t) descending — the canonical text order."""
        return sorted(self._terms.items(), key=lambda kv: kv[0], reverse=True)

    def render(self) -> str:
        """Expanded text form, e.g. ``n^4 - 6n^3 + 11n^2 - 6n``."""
        if not self._terms:
            return "0"
        parts: list[str] = []
        for (dn, dt), coeff in self.sorted_terms():
            mono = ""
            if dn == 1:
                mono += "n"
            elif dn > 1:
                mono += f"n^{dn}"
            if dt == 1:
                mono += "t"
            elif dt > 1:
                mono += f"t^{dt}"
            mag = abs(coeff)
            body = str(mag) + mono if (mag != 1 or not mono) else mono
            if not parts:
                parts.append(("-" if coeff < 0 else "") + body)
            else:
                parts.append(("- " if coeff < 0 else "+ ") + body)
        return " ".join(parts)

    def to_json(self) -> dict:
        """JSON form with decimal-string coefficients, sorted (n, t) descending."""
        return {
            "terms": [
                {"coeff": str(c), "n": dn, "t": dt}
                for (dn, dt), c in self.sorted_terms()
            ]
        }

    @classmethod
    def from_json(cls, data: dict) -> "IntPoly":
        terms: dict[tuple[int, int], int] = {}
        for item in data["terms"]:
            terms[(int(item["n"]), int(item["t"]))] = int(item["coeff"])
        return cls(terms)

    def __repr__(self) -> str:
        return f"IntPoly({self.render()!r})"


def _raw(terms: dict[tuple[int, int], int]) -> IntPoly:
    poly = IntPoly.__new__(IntPoly)
    poly._terms = terms
    return poly


def _coerce(value: "IntPoly | int") -> IntPoly:
    if isinstance(value, IntPoly):
        return value
    if isinstance(value, int):
        return const(value)
    raise TypeError(f"cannot combine IntPoly with {type(value).__name__}")


def const(c: int) -> IntPoly:
    return _raw({(0, 0): c} if c else {})


ZERO = const(0)
ONE = const(1)
N = _raw({(1, 0): 1})
T = _raw({(0, 1): 1})


# --- tiny expression parser -------------------------------------------------
#
# Accepts expanded or factored forms such as "n(n-1)^2", "2n^2 - 2n",
# "(n-4)(n-3)(n-2)(n-1)n(40+2n)", with optional '*' and whitespace.
# Used by the CLI --factor-check flag and by tests that compare against
# factored expected values.


class PolyParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


def _tokenize(text: str) -> Iterator[tuple[str, str, int]]:
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            yield ("int", text[i:j], i)
            i = j
        elif ch in "nt":
            yield ("var", ch, i)
            i += 1
        elif ch in "+-*^()":
            yield (ch, ch, i)
            i += 1
        else:
            raise PolyParseError(f"unexpected character {ch!r}", i)
    yield ("end", "", len(text))


class _PolyParser:
    def __init__(self, text: str):
        self.tokens = list(_tokenize(text))
        self.pos = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.pos]

    def take(self) -> tuple[str, str, int]:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expr(self) -> IntPoly:
        kind = self.peek()[0]
        negate = False
        if kind in "+-":
            negate = self.take()[0] == "-"
        result = self.term()
        if negate:
            result = -result
        while self.peek()[0] in "+-":
            op = self.take()[0]
            rhs = self.term()
            result = result - rhs if op == "-" else result + rhs
        return result

    def term(self) -> IntPoly:
        result = self.power()
        while True:
            kind = self.peek()[0]
            if kind == "*":
                self.take()
                result = result * self.power()
            elif kind in ("int", "var", "("):  # implicit multiplication
                result = result * self.power()
            else:
                return result

    def power(self) -> IntPoly:
        base = self.atom()
        if self.peek()[0] == "^":
            self.take()
            kind, value, pos = self.take()
            if kind != "int":
                raise PolyParseError("exponent must be a non-negative integer", pos)
            return base ** int(value)
        return base

    def atom(self) -> IntPoly:
        kind, value, pos = self.take()
        if kind == "int":
            return const(int(value))
        if kind == "var":
            return N if value == "n" else T
        if kind == "(":
            inner = self.expr()
            kind, _, pos = self.take()
            if kind != ")":
                raise PolyParseError("expected ')'", pos)
            return inner
        if kind == "-":
            return -self.atom()
        raise PolyParseError(f"unexpected token {value!r}", pos)


def parse_poly(text: str) -> IntPoly:
    """Parse an integer polynomial expression in n and t, expanding products."""
    parser = _PolyParser(text)
    result = parser.expr()
    kind, value, pos = parser.peek()
    if kind != "end":
        raise PolyParseError(f"trailing input {value!r}", pos)
    return result
