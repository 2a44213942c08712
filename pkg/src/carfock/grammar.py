"""Parser and renderer for textual state expressions.

Grammar (whitespace-insensitive)::

    state  := '-'? term (('+'|'-') term)*
    term   := coeff? '|' bits (';' order)? '>' (';' 'order'? order)?
    coeff  := integer | integer '/' integer | decimal
    order  := letter+                  (single-letter mode labels)
    bits   := ('0'|'1')+

All terms must share one order; if none is written, a default order must be
supplied (the CLI's --order flag).  ``render_state`` emits the in-ket form
``coeff|bits;order>`` and round-trips through ``parse_state``.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import ParseError, WidthError
from .fock import FockKet, make_ket


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def _linecol(self) -> tuple[int, int]:
        consumed = self.text[: self.pos]
        line = consumed.count("\n") + 1
        col = self.pos - (consumed.rfind("\n") + 1) + 1
        return line, col

    def error(self, message: str) -> ParseError:
        line, col = self._linecol()
        return ParseError(message, line, col)

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self) -> str:
        ch = self.peek()
        self.pos += 1
        return ch

    def expect(self, ch: str) -> None:
        got = self.peek()
        if got != ch:
            raise self.error(f"expected {ch!r}, found {got!r}" if got else f"expected {ch!r}, found end of input")
        self.pos += 1

    def run(self, predicate) -> str:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and predicate(self.text[self.pos]):
            self.pos += 1
        return self.text[start : self.pos]


def _parse_coeff(sc: _Scanner) -> float:
    digits = sc.run(str.isdigit)
    if sc.peek() == "." and digits is not None:
        sc.take()
        frac = sc.run(str.isdigit)
        if not digits and not frac:
            raise sc.error("malformed decimal coefficient")
        return float((digits or "0") + "." + (frac or "0"))
    if not digits:
        raise sc.error("malformed coefficient")
    if sc.peek() == "/":
        sc.take()
        denom = sc.run(str.isdigit)
        if not denom:
            raise sc.error("missing denominator")
        if int(denom) == 0:
            raise sc.error("zero denominator")
        return int(digits) / int(denom)
    return float(int(digits))


def _parse_order_run(sc: _Scanner) -> str:
    letters = sc.run(str.isalpha)
    if not letters:
        raise sc.error("expected a mode order (letters)")
    if letters == "order":
        # 'order' keyword form: "; order abc"
        after = sc.run(str.isalpha)
        if after:
            return after
    return letters


def _parse_term(sc: _Scanner) -> tuple[float, str, str | None]:
    coeff = 1.0
    if sc.peek().isdigit() or sc.peek() == ".":
        coeff = _parse_coeff(sc)
    sc.expect("|")
    bits = sc.run(lambda c: c in "01")
    if not bits:
        raise sc.error("expected occupation bits after '|'")
    order = None
    if sc.peek() == ";":
        sc.take()
        order = _parse_order_run(sc)
    sc.expect(">")
    if sc.peek() == ";":
        sc.take()
        suffix = _parse_order_run(sc)
        if order is not None and suffix != order:
            raise sc.error(f"conflicting orders {order!r} and {suffix!r}")
        order = suffix
    return coeff, bits, order


def parse_state(
    text: str,
    default_order: str | None = None,
    normalize: bool = True,
) -> tuple[FockKet, list[str]]:
    """Parse a state expression into a FockKet plus diagnostic notes."""
    sc = _Scanner(text)
    if not sc.peek():
        raise sc.error("empty state expression")
    raw_terms: list[tuple[float, str, str | None]] = []
    sign = 1.0
    if sc.peek() == "-":
        sc.take()
        sign = -1.0
    elif sc.peek() == "+":
        sc.take()
    while True:
        coeff, bits, order = _parse_term(sc)
        raw_terms.append((sign * coeff, bits, order))
        nxt = sc.peek()
        if nxt == "":
            break
        if nxt not in "+-":
            raise sc.error(f"expected '+', '-' or end of input, found {nxt!r}")
        sc.take()
        sign = 1.0 if nxt == "+" else -1.0

    diagnostics: list[str] = []
    orders = {o for _, _, o in raw_terms if o is not None}
    if len(orders) > 1:
        raise WidthError(f"terms carry inconsistent orders: {sorted(orders)}")
    if orders:
        order = orders.pop()
    elif default_order:
        order = default_order
        diagnostics.append(f"using default order {order!r}")
    else:
        raise WidthError("no mode order given and no default order set")

    labels = tuple(order)
    for coeff, bits, _ in raw_terms:
        if len(bits) != len(labels):
            raise WidthError(
                f"occupation string {bits!r} does not fit order {order!r}"
            )
    ket = make_ket(labels, [(bits, coeff) for coeff, bits, _ in raw_terms], normalize=False)
    if normalize:
        norm = math.sqrt(ket.squared_norm())
        if abs(norm - 1.0) > 1e-12:
            diagnostics.append(f"normalized (divided by {norm:.12g})")
        ket = make_ket(labels, list(ket.terms.items()), normalize=True)
    return ket, diagnostics


def _format_coefficient(value: float) -> str:
    frac = Fraction(value).limit_denominator(1_000_000)
    if float(frac) == value:
        if frac.denominator == 1:
            return str(frac.numerator)
        return f"{frac.numerator}/{frac.denominator}"
    return repr(value)


def render_state(ket: FockKet) -> str:
    """Textual form of a real-coefficient ket, parseable by ``parse_state``."""
    order = "".join(ket.order)
    pieces: list[str] = []
    for bits in sorted(ket.terms):
        amp = ket.terms[bits]
        if abs(amp.imag) > 1e-12:
            raise ValueError("the state grammar covers real coefficients only")
        coeff = amp.real
        sign = "-" if coeff < 0 else "+"
        body = f"{_format_coefficient(abs(coeff))}|{bits};{order}>"
        if not pieces:
            pieces.append(body if sign == "+" else f"-{body}")
        else:
            pieces.append(f" {sign} {body}")
    return "".join(pieces)
