"""Factor-set engines for the four language families handled by the package.

A language spec selects an engine:

* :class:`FullLanguage` - every word over a two-letter alphabet;
* :class:`ForbiddenFactors` - words over {a, b} avoiding a finite factor set,
  backed by a deterministic follower automaton;
* :class:`MorphicFixedPoint` - factors of the one-sided fixed point of a
  non-erasing substitution;
* :class:`SturmianLanguage` - factors of the characteristic word of an
  irrational slope in (0, 1), which has exactly n + 1 factors of length n.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import numpy as np

from .surds import Surd, floor_mul, floor_mul_range
from .words import BINARY, TWO_LETTERS, Morphism, parikh


class EmptyLanguageError(ValueError):
    """The forbidden factors block every letter."""


class StabilizationError(RuntimeError):
    """A factor set failed to stabilize below the configured prefix cap."""


_PREFIX_CAP_FACTOR = 1 << 20
_MAX_FULL_ENUMERATION = 22


@dataclass(frozen=True)
class FullLanguage:
    alphabet: str = TWO_LETTERS

    def __post_init__(self):
        if len(self.alphabet) != 2:
            raise ValueError("the full-language engine is two-letter only")


@dataclass(frozen=True)
class ForbiddenFactors:
    forbidden: tuple[str, ...]
    alphabet: str = TWO_LETTERS

    def __post_init__(self):
        if len(self.alphabet) != 2:
            raise ValueError("forbidden-factor languages are two-letter only")
        normalized = tuple(sorted(set(self.forbidden)))
        for word in normalized:
            if not word:
                raise ValueError("forbidden factors must be non-empty words")
            if not set(word) <= set(self.alphabet):
                raise ValueError(f"forbidden factor {word!r} leaves the alphabet {self.alphabet!r}")
        object.__setattr__(self, "forbidden", normalized)


@dataclass(frozen=True)
class MorphicFixedPoint:
    morphism: Morphism
    seed: str

    def __post_init__(self):
        if not self.morphism.is_prolongable_on(self.seed):
            raise ValueError(f"morphism is not prolongable on seed {self.seed!r}")


@dataclass(frozen=True)
class SturmianLanguage:
    alpha: Surd

    def __post_init__(self):
        if self.alpha.is_rational:
            raise ValueError("Sturmian slopes must be irrational")
        if not (self.alpha > 0 and self.alpha < 1):
            raise ValueError("Sturmian slopes must lie in (0, 1)")


LanguageSpec = Union[FullLanguage, ForbiddenFactors, MorphicFixedPoint, SturmianLanguage]


def golden_mean() -> ForbiddenFactors:
    """Words over {a, b} with no two adjacent b letters."""
    return ForbiddenFactors(("bb",))


def full_binary() -> FullLanguage:
    return FullLanguage()


def spec_alphabet(spec: LanguageSpec) -> str:
    if isinstance(spec, (FullLanguage, ForbiddenFactors)):
        return spec.alphabet
    if isinstance(spec, MorphicFixedPoint):
        return spec.morphism.alphabet
    if isinstance(spec, SturmianLanguage):
        return BINARY
    raise TypeError(f"not a language spec: {spec!r}")


# -- follower automaton ------------------------------------------------------


@dataclass(frozen=True)
class FollowerAutomaton:
    """Deterministic automaton whose path labels from the initial state are
    exactly the words avoiding the forbidden factors. Every state accepts."""

    alphabet: str
    transitions: tuple[tuple[int | None, ...], ...]
    initial: int = 0

    @property
    def num_states(self) -> int:
        return len(self.transitions)

    def step(self, state: int, letter_index: int) -> int | None:
        return self.transitions[state][letter_index]

    def absorbing_letters(self) -> str:
        """Letters with a transition out of every state; such a letter may be
        appended to any word of the language."""
        out = []
        for j, ch in enumerate(self.alphabet):
            if all(row[j] is not None for row in self.transitions):
                out.append(ch)
        return "".join(out)

    def accepts(self, word: str) -> bool:
        state = self.initial
        for ch in word:
            nxt = self.transitions[state][self.alphabet.index(ch)]
            if nxt is None:
                return False
            state = nxt
        return True


def follower_automaton(spec: ForbiddenFactors | FullLanguage) -> FollowerAutomaton:
    """Build the minimal follower automaton of a finite-type constraint set."""
    if isinstance(spec, FullLanguage):
        k = len(spec.alphabet)
        return FollowerAutomaton(spec.alphabet, (tuple(0 for _ in range(k)),))
    alphabet = spec.alphabet
    forbidden = spec.forbidden
    memory = max((len(f) for f in forbidden), default=1) - 1

    # Raw states are the trailing windows of clean words; a transition is
    # blocked when it completes a forbidden factor.
    raw: dict[str, dict[str, str]] = {"": {}}
    queue = [""]
    while queue:
        s = queue.pop()
        for ch in alphabet:
            ext = s + ch
            if any(ext.endswith(f) for f in forbidden):
                continue
            nxt = ext[len(ext) - memory :] if memory else ""
            if nxt not in raw:
                raw[nxt] = {}
                queue.append(nxt)
            raw[s][ch] = nxt
    if not raw[""]:
        raise EmptyLanguageError("every single letter is forbidden")

    # Moore minimization; all states accept, so states merge exactly when
    # their transition rows land in the same blocks.
    names = sorted(raw)
    block = {s: 0 for s in names}
    while True:
        signatures = {}
        for s in names:
            signatures[s] = tuple(
                block[raw[s][ch]] if ch in raw[s] else None for ch in alphabet
            )
        relabel: dict[tuple, int] = {}
        new_block = {}
        for s in names:
            key = (block[s], signatures[s])
            if key not in relabel:
                relabel[key] = len(relabel)
            new_block[s] = relabel[key]
        if new_block == block:
            break
        block = new_block

    # Quotient, ordered by breadth-first discovery from the initial class.
    initial_class = block[""]
    order = [initial_class]
    seen = {initial_class}
    representative = {}
    for s in names:
        representative.setdefault(block[s], s)
    i = 0
    while i < len(order):
        rep = representative[order[i]]
        for ch in alphabet:
            if ch in raw[rep]:
                target = block[raw[rep][ch]]
                if target not in seen:
                    seen.add(target)
                    order.append(target)
        i += 1
    position = {cls: idx for idx, cls in enumerate(order)}
    rows = []
    for cls in order:
        rep = representative[cls]
        rows.append(
            tuple(
                position[block[raw[rep][ch]]] if ch in raw[rep] else None for ch in alphabet
            )
        )
    return FollowerAutomaton(alphabet, tuple(rows))


# -- factor sets -------------------------------------------------------------

_PREFIX_CACHE: dict[tuple[Morphism, str], str] = {}
_CHAR_CACHE: dict[Surd, str] = {}


def _fixed_prefix(morphism: Morphism, seed: str, length: int) -> str:
    """Prefix of the fixed point, at least ``length`` long, grown incrementally."""
    key = (morphism, seed)
    w = _PREFIX_CACHE.get(key)
    if w is None:
        w = morphism.fixed_point_prefix(seed, 2)
    while len(w) < length:
        w = morphism(w)
    _PREFIX_CACHE[key] = w
    return w


def characteristic_word(alpha: Surd, length: int) -> str:
    """Prefix of the standard word of slope ``alpha``: letter n is
    ``floor((n+2)*alpha) - floor((n+1)*alpha)``, over the alphabet {0, 1}."""
    if alpha.is_rational or not (alpha > 0 and alpha < 1):
        raise ValueError("characteristic words need an irrational slope in (0, 1)")
    if length < 0:
        raise ValueError("length must be non-negative")
    cached = _CHAR_CACHE.get(alpha, "")
    if len(cached) < length:
        floors = floor_mul_range(alpha, length + 1)
        cached = "".join("01"[floors[n + 2] - floors[n + 1]] for n in range(length))
        _CHAR_CACHE[alpha] = cached
    return cached[:length]


def mechanical_word(alpha: Surd, rho, length: int, variant: str = "floor") -> str:
    """Prefix of the mechanical word of slope ``alpha`` and intercept ``rho``.

    The floor variant is ``floor((n+1)a+r) - floor(na+r)``; the ceiling variant
    replaces floors by ceilings. Intercepts may be rational or share the
    slope's radicand.
    """
    if alpha.is_rational or not (alpha > 0 and alpha < 1):
        raise ValueError("mechanical words need an irrational slope in (0, 1)")
    if variant not in ("floor", "ceiling"):
        raise ValueError("variant must be 'floor' or 'ceiling'")
    if not isinstance(rho, Surd):
        rho = Surd.rational(rho)
    out = []
    evaluate = Surd.floor if variant == "floor" else Surd.ceil
    prev = evaluate(rho)
    for n in range(1, length + 1):
        cur = evaluate(alpha * n + rho)
        out.append("01"[cur - prev])
        prev = cur
    return "".join(out)


def _window_set(text: str, n: int) -> set[str]:
    return {text[i : i + n] for i in range(len(text) - n + 1)}


def _morphic_factors(spec: MorphicFixedPoint, n: int) -> set[str]:
    # Doubling rule: accept once two successive prefix sizes produce the same
    # window set; primitive substitutions stabilize after a few rounds.
    length = 64 * n
    prev: set[str] | None = None
    while length <= _PREFIX_CAP_FACTOR * n:
        current = _window_set(_fixed_prefix(spec.morphism, spec.seed, length)[:length], n)
        if current == prev:
            return current
        prev = current
        length *= 2
    raise StabilizationError(
        f"factor set of length {n} did not stabilize below prefix length {_PREFIX_CAP_FACTOR * n}"
    )


def _sturmian_factors(spec: SturmianLanguage, n: int) -> set[str]:
    length = max(4 * n, 64)
    while True:
        windows = _window_set(characteristic_word(spec.alpha, length), n)
        if len(windows) == n + 1:
            return windows
        if len(windows) > n + 1:
            raise StabilizationError(
                f"{len(windows)} distinct windows of length {n}; slope is not Sturmian"
            )
        if length > _PREFIX_CAP_FACTOR * max(n, 1):
            raise StabilizationError(
                f"did not reach {n + 1} windows of length {n} below prefix length {length}"
            )
        length *= 2


def _sft_factors(spec: ForbiddenFactors, n: int) -> set[str]:
    auto = follower_automaton(spec)
    out: set[str] = set()
    stack = [(auto.initial, "")]
    while stack:
        state, word = stack.pop()
        if len(word) == n:
            out.add(word)
            continue
        for j, ch in enumerate(auto.alphabet):
            nxt = auto.transitions[state][j]
            if nxt is not None:
                stack.append((nxt, word + ch))
    return out


def factors(spec: LanguageSpec, n: int) -> set[str]:
    """The set of length-n factors of the language."""
    if n < 1:
        raise ValueError("factor length must be positive")
    if isinstance(spec, FullLanguage):
        if n > _MAX_FULL_ENUMERATION:
            raise ValueError(
                f"declining to materialize 2^{n} words; use parikh_set or the image routines"
            )
        return {"".join(t) for t in itertools.product(spec.alphabet, repeat=n)}
    if isinstance(spec, ForbiddenFactors):
        return _sft_factors(spec, n)
    if isinstance(spec, MorphicFixedPoint):
        return _morphic_factors(spec, n)
    if isinstance(spec, SturmianLanguage):
        return _sturmian_factors(spec, n)
    raise TypeError(f"not a language spec: {spec!r}")


# -- Parikh data -------------------------------------------------------------


def _sft_ones_bitmasks(auto: FollowerAutomaton, n_max: int) -> list[int]:
    """Entry n is an integer whose bit j says: the automaton accepts some
    length-n word containing exactly j copies of the second letter."""
    current = {auto.initial: 1}
    out = [0] * (n_max + 1)
    for n in range(1, n_max + 1):
        nxt: dict[int, int] = {}
        for state, bits in current.items():
            t0, t1 = auto.transitions[state]
            if t0 is not None:
                nxt[t0] = nxt.get(t0, 0) | bits
            if t1 is not None:
                nxt[t1] = nxt.get(t1, 0) | (bits << 1)
        current = nxt
        combined = 0
        for bits in current.values():
            combined |= bits
        out[n] = combined
    return out


def _bit_positions(bits: int) -> np.ndarray:
    if bits == 0:
        return np.empty(0, dtype=np.int64)
    reversed_bits = bin(bits)[2:][::-1].encode()
    return np.flatnonzero(np.frombuffer(reversed_bits, dtype=np.uint8) == ord("1")).astype(np.int64)


def parikh_set(spec: LanguageSpec, n: int) -> set[tuple[int, ...]]:
    """Parikh vectors (per-letter counts, alphabet order) of the length-n factors."""
    if n < 1:
        raise ValueError("length must be positive")
    if isinstance(spec, FullLanguage):
        return {(n - k, k) for k in range(n + 1)}
    if isinstance(spec, ForbiddenFactors):
        bits = _sft_ones_bitmasks(follower_automaton(spec), n)[n]
        return {(n - int(j), int(j)) for j in _bit_positions(bits)}
    alphabet = spec_alphabet(spec)
    return {parikh(w, alphabet) for w in factors(spec, n)}


_ONES_ARRAYS_CACHE: dict[LanguageSpec, tuple[int, np.ndarray, np.ndarray]] = {}


def ones_count_arrays(spec: LanguageSpec, n_max: int) -> tuple[np.ndarray, np.ndarray]:
    """Flattened Parikh table for a two-letter spec.

    Returns parallel int64 arrays ``(lengths, ones)``: for every word length n
    in 1..n_max and every achievable count c of the second letter among the
    length-n factors there is one entry with ``lengths == n`` and
    ``ones == c``. Lengths are non-decreasing.
    """
    if len(spec_alphabet(spec)) != 2:
        raise ValueError("Parikh tables are two-letter only")
    if n_max < 1:
        return np.empty(0, dtype=np.int64), np.empty(0, dtype=np.int64)
    cached = _ONES_ARRAYS_CACHE.get(spec)
    if cached is not None and cached[0] >= n_max:
        hi, lengths, ones = cached
        if hi == n_max:
            return lengths, ones
        cut = np.searchsorted(lengths, n_max + 1)
        return lengths[:cut], ones[:cut]
    lengths, ones = _build_ones_arrays(spec, n_max)
    _ONES_ARRAYS_CACHE[spec] = (n_max, lengths, ones)
    return lengths, ones


def _build_ones_arrays(spec: LanguageSpec, n_max: int) -> tuple[np.ndarray, np.ndarray]:
    if isinstance(spec, FullLanguage):
        sizes = np.arange(2, n_max + 2, dtype=np.int64)
        lengths = np.repeat(np.arange(1, n_max + 1, dtype=np.int64), sizes)
        ones = np.concatenate([np.arange(n + 1, dtype=np.int64) for n in range(1, n_max + 1)])
        return lengths, ones
    if isinstance(spec, ForbiddenFactors):
        masks = _sft_ones_bitmasks(follower_automaton(spec), n_max)
        per_n = [_bit_positions(masks[n]) for n in range(1, n_max + 1)]
        lengths = np.repeat(
            np.arange(1, n_max + 1, dtype=np.int64),
            np.fromiter((len(p) for p in per_n), dtype=np.int64, count=n_max),
        )
        ones = np.concatenate(per_n) if per_n else np.empty(0, dtype=np.int64)
        return lengths, ones
    if isinstance(spec, SturmianLanguage):
        # Balanced ones-counts: every length-n factor contains floor(n*alpha)
        # or floor(n*alpha) + 1 copies of letter 1, and both occur.
        floors = floor_mul_range(spec.alpha, n_max)
        base = np.fromiter(floors[1:], dtype=np.int64, count=n_max)
        lengths = np.repeat(np.arange(1, n_max + 1, dtype=np.int64), 2)
        ones = np.empty(2 * n_max, dtype=np.int64)
        ones[0::2] = base
        ones[1::2] = base + 1
        return lengths, ones
    if isinstance(spec, MorphicFixedPoint):
        return _morphic_ones_arrays(spec, n_max)
    raise TypeError(f"not a language spec: {spec!r}")


def _morphic_ones_arrays(spec: MorphicFixedPoint, n_max: int) -> tuple[np.ndarray, np.ndarray]:
    # One prefix, stabilized at the largest length, serves every n below it:
    # each shorter factor extends to a length-n_max factor, so its windows
    # already appear in the same prefix.
    length = 64 * n_max
    prefix = None
    prev: set[str] | None = None
    while length <= _PREFIX_CAP_FACTOR * n_max:
        prefix = _fixed_prefix(spec.morphism, spec.seed, length)[:length]
        current = _window_set(prefix, n_max)
        if current == prev:
            break
        prev = current
        length *= 2
    else:
        raise StabilizationError(f"factor set of length {n_max} did not stabilize")
    second = spec_alphabet(spec)[1]
    flags = np.frombuffer(prefix.encode(), dtype=np.uint8) == ord(second)
    sums = np.concatenate(([0], np.cumsum(flags, dtype=np.int64)))
    lengths_parts = []
    ones_parts = []
    for n in range(1, n_max + 1):
        counts = np.unique(sums[n:] - sums[:-n])
        lengths_parts.append(np.full(len(counts), n, dtype=np.int64))
        ones_parts.append(counts)
    return np.concatenate(lengths_parts), np.concatenate(ones_parts)
