"""The cancellation monoid T and the product monoid W.

T is generated by nonterminal names and their primed copies, subject to
the single one-sided relation ``A A' = eps``.  The rewriting system with
rule ``A A' -> eps`` has no critical pairs, so every word has a unique
reduced form; we store only reduced words and compare them as sequences.

W pairs a terminal string with an element of T and multiplies
componentwise.

    >>> c, c_ = gen("C"), gen("C", primed=True)
    >>> p = w_mul(WPair("", reduce([c])), WPair("0", EPS))
    >>> w_mul(w_mul(p, WPair("", reduce([c_]))), WPair("1", EPS))
    WPair(alpha='01', omega=TWord(letters=()))
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


@dataclass(frozen=True, order=True)
class TGenerator:
    base: str
    primed: bool = False

    def __str__(self) -> str:
        return self.base + "'" if self.primed else self.base

    def cancels(self, other: TGenerator) -> bool:
        """True iff ``self other`` is a redex, i.e. ``A`` followed by ``A'``."""
        return not self.primed and other.primed and self.base == other.base


def gen(base: str, primed: bool = False) -> TGenerator:
    return TGenerator(base, primed)


def _has_redex(letters: Sequence[TGenerator]) -> bool:
    return any(x.cancels(y) for x, y in zip(letters, letters[1:]))


@dataclass(frozen=True)
class TWord:
    """A reduced element of T.  Build these with :func:`reduce`."""

    letters: tuple[TGenerator, ...] = ()

    def __post_init__(self):
        if _has_redex(self.letters):
            raise ValueError(f"not reduced: {render_letters(self.letters)}")

    def __len__(self) -> int:
        return len(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __str__(self) -> str:
        return render_letters(self.letters)

    @property
    def has_prime(self) -> bool:
        return any(x.primed for x in self.letters)


EPS = TWord()


def render_letters(letters: Sequence[TGenerator]) -> str:
    if not letters:
        return "eps"
    return " ".join(str(x) for x in letters)


def reduce(raw: Iterable[TGenerator]) -> TWord:
    """Return the normal form of `raw` under ``A A' -> eps``.

    One left-to-right pass: a primed letter pops the accumulator when the
    top is its unprimed partner, otherwise every letter is pushed.
    """
    acc: list[TGenerator] = []
    for x in raw:
        if acc and acc[-1].cancels(x):
            acc.pop()
        else:
            acc.append(x)
    return TWord(tuple(acc))


def t_mul(u: TWord, v: TWord) -> TWord:
    # u and v are reduced, so cancellation only happens across the seam
    i = 0
    left, right = u.letters, v.letters
    while i < len(left) and i < len(right) and left[len(left) - 1 - i].cancels(right[i]):
        i += 1
    return TWord(left[: len(left) - i] + right[i:])


@dataclass(frozen=True)
class WPair:
    """An element of W: a terminal string together with an element of T."""

    alpha: str = ""
    omega: TWord = EPS

    def __mul__(self, other: WPair) -> WPair:
        return w_mul(self, other)

    def __str__(self) -> str:
        return f"{self.alpha or 'eps'},{self.omega}"


W_ONE = WPair()


def w_mul(p: WPair, q: WPair) -> WPair:
    return WPair(p.alpha + q.alpha, t_mul(p.omega, q.omega))


def w_product(pairs: Iterable[WPair]) -> WPair:
    out = W_ONE
    for p in pairs:
        out = w_mul(out, p)
    return out


def is_identity(p: WPair) -> bool:
    return not p.alpha and not p.omega


# Shorthands for the three arc label shapes.

def emit(a: str) -> WPair:
    return WPair(a, EPS)


def push(c: str) -> WPair:
    return WPair("", TWord((TGenerator(c),)))


def pop(c: str) -> WPair:
    return WPair("", TWord((TGenerator(c, True),)))
