"""NEC and Fuchsian signatures: parsing, area, presentations, genus relations.

Text form (whitespace-insensitive)::

    signature := "(" genus "," [ sign "," ] periods [ "," cycles ] ")"
    sign      := "+" | "-"
    periods   := "[" ( "-" | int ("," int)* ) "]"
    cycles    := "{" cycle ("," cycle)* "}"
    cycle     := "(" ( "-" | int ("," int)* ) ")"

A signature with no sign and no cycles is Fuchsian (orientable, k = 0).
Areas are exact rationals in units of 2*pi.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

__all__ = [
    "SignatureError",
    "SignatureSyntaxError",
    "NecSignature",
    "Generator",
    "CanonicalPresentation",
    "parse_signature",
    "format_signature",
    "area",
    "validate",
    "canonical_presentation",
    "rh_index",
    "cyclic_p_gonal_signature",
    "real_cyclic_signatures",
    "kernel_surface_genus",
    "is_prime",
]


class SignatureError(ValueError):
    pass


class SignatureSyntaxError(SignatureError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos}: {text!r}")
        self.text = text
        self.pos = pos


@dataclass(frozen=True)
class NecSignature:
    genus: int
    orientable: bool = True
    proper_periods: tuple[int, ...] = ()
    period_cycles: tuple[tuple[int, ...], ...] = ()
    fuchsian: bool = False

    def __post_init__(self):
        object.__setattr__(self, "proper_periods", tuple(self.proper_periods))
        object.__setattr__(
            self, "period_cycles", tuple(tuple(c) for c in self.period_cycles)
        )
        if self.fuchsian and (self.period_cycles or not self.orientable):
            raise SignatureError("a Fuchsian signature is orientable with no period cycles")

    @classmethod
    def make_fuchsian(cls, genus: int, periods=()) -> "NecSignature":
        return cls(genus, True, tuple(periods), (), fuchsian=True)

    @property
    def r(self) -> int:
        return len(self.proper_periods)

    @property
    def k(self) -> int:
        return len(self.period_cycles)

    def __str__(self) -> str:
        return format_signature(self)


class _Parser:
    def __init__(self, text: str):
        self.raw = text
        # positions refer to the whitespace-stripped text
        self.s = "".join(text.split())
        self.i = 0

    def error(self, message: str):
        raise SignatureSyntaxError(message, self.s, self.i)

    def peek(self) -> str:
        return self.s[self.i] if self.i < len(self.s) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            found = self.peek() or "end of input"
            self.error(f"expected {ch!r}, found {found!r}")
        self.i += 1

    def integer(self) -> int:
        start = self.i
        while self.peek().isdigit():
            self.i += 1
        if start == self.i:
            self.error("expected an integer")
        return int(self.s[start:self.i])

    def int_list(self, close: str) -> tuple[int, ...]:
        if self.peek() == "-":
            self.i += 1
            self.expect(close)
            return ()
        values = [self.period()]
        while self.peek() == ",":
            self.i += 1
            values.append(self.period())
        self.expect(close)
        return tuple(values)

    def period(self) -> int:
        pos = self.i
        value = self.integer()
        if value < 2:
            self.i = pos
            self.error(f"period {value} is below 2")
        return value

    def parse(self) -> NecSignature:
        self.expect("(")
        genus = self.integer()
        self.expect(",")
        sign = None
        if self.peek() in "+-" and self.peek():
            sign = self.peek()
            self.i += 1
            self.expect(",")
        self.expect("[")
        periods = self.int_list("]")
        cycles: list[tuple[int, ...]] = []
        if self.peek() == ",":
            self.i += 1
            self.expect("{")
            self.expect("(")
            cycles.append(self.int_list(")"))
            while self.peek() == ",":
                self.i += 1
                self.expect("(")
                cycles.append(self.int_list(")"))
            self.expect("}")
        self.expect(")")
        if self.i != len(self.s):
            self.error("trailing characters")
        if sign is None:
            if cycles:
                self.error("a signature with period cycles needs a sign")
            return NecSignature.make_fuchsian(genus, periods)
        return NecSignature(genus, sign == "+", periods, tuple(cycles))


def parse_signature(text: str) -> NecSignature:
    """Parse the canonical text form; raises SignatureSyntaxError with a position."""
    return _Parser(text).parse()


def _ints(values) -> str:
    return ",".join(str(v) for v in values) if values else "-"


def format_signature(sig: NecSignature) -> str:
    periods = f"[{_ints(sig.proper_periods)}]"
    if sig.fuchsian:
        return f"({sig.genus},{periods})"
    sign = "+" if sig.orientable else "-"
    text = f"({sig.genus},{sign},{periods}"
    if sig.period_cycles:
        cycles = ",".join(f"({_ints(c)})" for c in sig.period_cycles)
        text += f",{{{cycles}}}"
    return text + ")"


def area(sig: NecSignature) -> Fraction:
    """Orbifold area divided by 2*pi, exactly."""
    eps = 2 if sig.orientable else 1
    total = Fraction(eps * sig.genus - 2 + sig.k)
    total += sum((1 - Fraction(1, m) for m in sig.proper_periods), Fraction(0))
    links = sum(
        (1 - Fraction(1, n) for cycle in sig.period_cycles for n in cycle), Fraction(0)
    )
    return total + links / 2


def validate(sig: NecSignature) -> list[str]:
    """Return the list of violations; an empty list means the signature is valid."""
    problems = []
    if sig.genus < 0:
        problems.append(f"negative genus {sig.genus}")
    if not sig.orientable and sig.genus < 1:
        problems.append("non-orientable signature needs genus >= 1")
    for m in sig.proper_periods:
        if m < 2:
            problems.append(f"proper period {m} below 2")
    for cycle in sig.period_cycles:
        for n in cycle:
            if n < 2:
                problems.append(f"link period {n} below 2")
    a = area(sig)
    if a <= 0:
        problems.append(f"non-positive area {a}")
    return problems


@dataclass(frozen=True)
class Generator:
    """A canonical generator, e.g. ``x1``, ``e1``, ``c1,0``, ``a1``, ``d2``."""

    kind: str  # one of "x", "e", "c", "a", "b", "d"
    index: int
    sub: int | None = None

    @property
    def orientation_reversing(self) -> bool:
        return self.kind in ("c", "d")

    @property
    def name(self) -> str:
        if self.sub is None:
            return f"{self.kind}{self.index}"
        return f"{self.kind}{self.index},{self.sub}"

    def __str__(self) -> str:
        return self.name


# a relator is a tuple of (generator, exponent) letters
Word = tuple[tuple[Generator, int], ...]


@dataclass(frozen=True)
class CanonicalPresentation:
    generators: tuple[Generator, ...]
    relators: tuple[Word, ...]
    relator_labels: tuple[str, ...] = field(default=())

    def format_relator(self, word: Word) -> str:
        parts = []
        for g, e in word:
            parts.append(g.name if e == 1 else f"{g.name}^{e}")
        return " ".join(parts)


def canonical_presentation(sig: NecSignature) -> CanonicalPresentation:
    gens: list[Generator] = []
    rels: list[Word] = []
    labels: list[str] = []
    xs = [Generator("x", i + 1) for i in range(sig.r)]
    es = [Generator("e", i + 1) for i in range(sig.k)]
    gens += xs + es
    for x, m in zip(xs, sig.proper_periods):
        rels.append(((x, m),))
        labels.append(f"{x}^{m}")
    for i, cycle in enumerate(sig.period_cycles, start=1):
        cs = [Generator("c", i, j) for j in range(len(cycle) + 1)]
        gens += cs
        for c in cs:
            rels.append(((c, 2),))
            labels.append(f"{c}^2")
        for j, n in enumerate(cycle, start=1):
            rels.append(((cs[j - 1], 1), (cs[j], 1)) * n)
            labels.append(f"({cs[j - 1]} {cs[j]})^{n}")
        e = es[i - 1]
        rels.append(((cs[0], 1), (e, -1), (cs[-1], 1), (e, 1)))
        labels.append(f"{cs[0]} {e}^-1 {cs[-1]} {e}")
    long: list[tuple[Generator, int]] = [(x, 1) for x in xs] + [(e, 1) for e in es]
    if sig.orientable:
        for i in range(1, sig.genus + 1):
            a, b = Generator("a", i), Generator("b", i)
            gens += [a, b]
            long += [(a, 1), (b, 1), (a, -1), (b, -1)]
    else:
        for i in range(1, sig.genus + 1):
            d = Generator("d", i)
            gens.append(d)
            long.append((d, 2))
    rels.append(tuple(long))
    labels.append("long relator")
    return CanonicalPresentation(tuple(gens), tuple(rels), tuple(labels))


def rh_index(sub: Fraction, sup: Fraction) -> Fraction:
    """Index of a subgroup from the two areas (Riemann-Hurwitz)."""
    sup = Fraction(sup)
    if sup <= 0:
        raise SignatureError(f"super-group area must be positive, got {sup}")
    return Fraction(sub) / sup


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _check_odd_prime(p: int):
    if p % 2 == 0 or not is_prime(p):
        raise SignatureError(f"p = {p} is not an odd prime")


def cyclic_p_gonal_signature(p: int, g: int) -> NecSignature:
    """Fuchsian signature (0,[p,...,p]) with u periods, (p-1)(u-2) = 2g."""
    _check_odd_prime(p)
    if (2 * g) % (p - 1):
        raise SignatureError(f"no cyclic {p}-gonal signature for genus {g}: {p - 1} does not divide {2 * g}")
    u = 2 * g // (p - 1) + 2
    return NecSignature.make_fuchsian(0, (p,) * u)


def real_cyclic_signatures(p: int, g: int) -> list[tuple[NecSignature, str]]:
    """All real cyclic p-gonal NEC signatures of genus g, with the admissible targets.

    The tag is ``"D_p|C_2p"`` for the one-cycle family (v >= 1) and ``"C_2p"``
    for the empty-cycle signatures, which need g even and (p-1)(u-1) = g.
    """
    _check_odd_prime(p)
    out: list[tuple[NecSignature, str]] = []
    if (2 * g) % (p - 1) == 0:
        total = 2 * g // (p - 1) + 2  # 2u + v
        for u in range(total // 2 + 1):
            v = total - 2 * u
            if v >= 1:
                out.append((NecSignature(0, True, (p,) * u, ((p,) * v,)), "D_p|C_2p"))
    if g % 2 == 0 and g % (p - 1) == 0:
        u = g // (p - 1) + 1
        out.append((NecSignature(0, True, (p,) * u, ((),)), "C_2p"))
    return out


def kernel_surface_genus(sig: NecSignature, group_order: int) -> int:
    """Genus g with 2g - 2 = |G| * area(sig); raises if no surface kernel can exist."""
    a = area(sig)
    if a <= 0:
        raise SignatureError(f"signature {format_signature(sig)} has non-positive area")
    chi = group_order * a
    if chi.denominator != 1 or chi.numerator % 2:
        raise SignatureError(
            f"{group_order} * {a} = {chi} is not of the form 2g - 2"
        )
    return (chi.numerator + 2) // 2
