"""Finite words and substitution morphisms on small alphabets.

Words are plain Python strings. The alphabet string fixes the letter order
used by Parikh vectors and by index-based weightings, so ``"ab"``, ``"01"``
and ``"abcd"`` behave uniformly.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

TWO_LETTERS = "ab"
BINARY = "01"
FOUR_LETTERS = "abcd"


def reverse(word: str) -> str:
    """Mirror image of a word."""
    return word[::-1]


def parikh(word: str, alphabet: str) -> tuple[int, ...]:
    """Per-letter occurrence counts of ``word``, in alphabet order."""
    counts = tuple(word.count(ch) for ch in alphabet)
    if sum(counts) != len(word):
        stray = sorted(set(word) - set(alphabet))
        raise ValueError(f"letters {stray} are outside the alphabet {alphabet!r}")
    return counts


def add_parikh(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(a + b for a, b in zip(p, q, strict=True))


def _mat_mul(a: list[list[int]], b: list[list[int]]) -> list[list[int]]:
    n = len(a)
    return [[sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)] for i in range(n)]


@dataclass(frozen=True)
class Morphism:
    """Non-erasing letter substitution, applied by concatenating letter images.

    ``images[i]`` is the image of ``alphabet[i]``.
    """

    alphabet: str
    images: tuple[str, ...]

    def __post_init__(self):
        if len(self.alphabet) != len(set(self.alphabet)):
            raise ValueError("alphabet letters must be distinct")
        if len(self.images) != len(self.alphabet):
            raise ValueError("need exactly one image per alphabet letter")
        letters = set(self.alphabet)
        for ch, img in zip(self.alphabet, self.images):
            if not img:
                raise ValueError(f"image of {ch!r} is empty; erasing morphisms are unsupported")
            if not set(img) <= letters:
                raise ValueError(f"image of {ch!r} leaves the alphabet: {img!r}")

    @classmethod
    def from_dict(cls, images: dict[str, str]) -> "Morphism":
        alphabet = "".join(images)
        return cls(alphabet, tuple(images[ch] for ch in alphabet))

    def image(self, letter: str) -> str:
        return self.images[self.alphabet.index(letter)]

    @cached_property
    def _substitution_table(self) -> dict[int, str]:
        return str.maketrans(dict(zip(self.alphabet, self.images)))

    def __call__(self, word: str) -> str:
        if not set(word) <= set(self.alphabet):
            stray = sorted(set(word) - set(self.alphabet))
            raise ValueError(f"word uses letters {stray} outside the alphabet {self.alphabet!r}")
        return word.translate(self._substitution_table)

    def iterate(self, word: str, times: int) -> str:
        for _ in range(times):
            word = self(word)
        return word

    def is_prolongable_on(self, seed: str) -> bool:
        """True when the image of ``seed`` starts with ``seed`` and grows it."""
        img = self.image(seed)
        return len(img) >= 2 and img.startswith(seed)

    def fixed_point_prefix(self, seed: str, min_len: int) -> str:
        """Prefix of length ``min_len`` of the one-sided fixed point grown from ``seed``.

        Successive iterates extend each other, so the result does not depend
        on how many iterations were needed.
        """
        if min_len < 1:
            raise ValueError("min_len must be positive")
        if not self.is_prolongable_on(seed):
            raise ValueError(f"morphism is not prolongable on {seed!r}")
        w = seed
        while len(w) < min_len:
            w = self(w)
        return w[:min_len]

    def incidence_matrix(self) -> list[list[int]]:
        """Entry ``[i][j]`` counts occurrences of letter ``i`` in the image of letter ``j``."""
        return [[img.count(ch) for img in self.images] for ch in self.alphabet]

    def is_primitive(self) -> bool:
        """True when some power of the incidence matrix is strictly positive."""
        n = len(self.alphabet)
        m = self.incidence_matrix()
        power = m
        # Wielandt bound: it suffices to look at exponents up to n^2 - 2n + 2.
        for _ in range(n * n - 2 * n + 2):
            if all(entry > 0 for row in power for entry in row):
                return True
            power = _mat_mul(power, m)
        return False


FIBONACCI = Morphism(BINARY, ("01", "0"))
THUE_MORSE = Morphism(TWO_LETTERS, ("ab", "ba"))
FOLDING_5 = Morphism(FOUR_LETTERS, ("abcba", "bcdcb", "cdadc", "dabad"))
QUARTER_TURN = Morphism(FOUR_LETTERS, ("b", "c", "d", "a"))

BUILTIN_MORPHISMS: dict[str, Morphism] = {
    "fib": FIBONACCI,
    "tm": THUE_MORSE,
    "folding5": FOLDING_5,
}


def builtin_morphism(name: str) -> Morphism:
    try:
        return BUILTIN_MORPHISMS[name]
    except KeyError:
        known = ", ".join(sorted(BUILTIN_MORPHISMS))
        raise ValueError(f"unknown morphism {name!r} (known: {known})") from None
