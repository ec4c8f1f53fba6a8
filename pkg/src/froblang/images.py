"""Weighted images of two-letter languages inside the positive integers.

A weighting assigns a positive integer to each alphabet position; the weight
of a word is the sum over its letters, so weights of concatenations add. The
image set of a language is the set of weights of its non-empty words. Empty
words are excluded throughout: 0 is never a member.

Two backends compute image sets up to a bound and cross-validate each other:
a dynamic program over follower-automaton states (exact weight reachability),
and a Parikh enumeration that sums letter counts of the factor sets.

For automaton-backed languages, :func:`frobenius` turns the image sieve into
a certified answer: once some absorbing letter of weight t has a run of t
consecutive members above it, every larger integer is a member.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import formulas
from .languages import (
    ForbiddenFactors,
    FullLanguage,
    LanguageSpec,
    MorphicFixedPoint,
    SturmianLanguage,
    follower_automaton,
    ones_count_arrays,
    parikh_set,
    spec_alphabet,
)

DEFAULT_MAX_BOUND = 10**6


class CertificationError(RuntimeError):
    """No absorbing letter exists, so the sieve cannot be certified."""


def validate_weights(weights) -> tuple[int, int]:
    wa, wb = weights
    if not (isinstance(wa, int) and isinstance(wb, int)) or wa < 1 or wb < 1:
        raise ValueError(f"weights must be positive integers, got {weights!r}")
    return wa, wb


def gcd_normalize(weights) -> tuple[int, tuple[int, int]]:
    """Split ``weights`` into ``(r, reduced)`` with r the gcd."""
    wa, wb = validate_weights(weights)
    r = math.gcd(wa, wb)
    return r, (wa // r, wb // r)


def word_weight(word: str, alphabet: str, weights) -> int:
    wa, wb = validate_weights(weights)
    ones = word.count(alphabet[1])
    return wa * (len(word) - ones) + wb * ones


@dataclass
class ImageSet:
    """Membership bitmap of an image set over {1..bound}.

    Treat instances as immutable once returned.
    """

    bound: int
    mask: np.ndarray
    backend: str
    spec: LanguageSpec
    weights: tuple[int, int]

    def __contains__(self, m: int) -> bool:
        return 1 <= m <= self.bound and bool(self.mask[m])

    def members(self) -> np.ndarray:
        return np.flatnonzero(self.mask)

    def member_count(self) -> int:
        return int(np.count_nonzero(self.mask))

    def complement_list(self) -> list[int]:
        return [int(m) for m in np.flatnonzero(~self.mask[1:]) + 1]

    def window_density(self, window: int) -> Fraction:
        """Fraction of members in the window (bound - window, bound]."""
        if not 1 <= window <= self.bound:
            raise ValueError("window must lie within the bound")
        hits = int(np.count_nonzero(self.mask[self.bound - window + 1 :]))
        return Fraction(hits, window)

    def digest(self) -> str:
        return hashlib.sha256(np.packbits(self.mask).tobytes()).hexdigest()


def complement(img: ImageSet) -> list[int]:
    """Ascending non-members of the image within {1..bound}."""
    return img.complement_list()


# -- DP backend ---------------------------------------------------------------


def _letter_spreads(auto, max_states: int = 20):
    """Per letter, a table mapping a state bitmask to the bitmask of successors."""
    k = auto.num_states
    if k > max_states:
        raise ValueError(f"automaton too large for the bitmask sieve ({k} states)")
    spreads = []
    for j in range(len(auto.alphabet)):
        single = [0] * k
        for s in range(k):
            t = auto.transitions[s][j]
            if t is not None:
                single[s] = 1 << t
        table = [0] * (1 << k)
        for mask in range(1, 1 << k):
            low = mask & (-mask)
            table[mask] = table[mask ^ low] | single[low.bit_length() - 1]
        spreads.append(table)
    return spreads


def _image_dp(spec, weights, bound: int) -> np.ndarray:
    auto = follower_automaton(spec)
    wa, wb = weights
    spread_a, spread_b = _letter_spreads(auto)
    window = max(wa, wb) + 1
    ring = [0] * window
    ring[0] = 1 << auto.initial  # the empty word sits at weight 0
    mask = np.zeros(bound + 1, dtype=bool)
    for m in range(1, bound + 1):
        acc = 0
        if m >= wa:
            acc = spread_a[ring[(m - wa) % window]]
        if m >= wb:
            acc |= spread_b[ring[(m - wb) % window]]
        ring[m % window] = acc
        if acc:
            mask[m] = True
    return mask


# -- Parikh backend -----------------------------------------------------------


def _image_parikh(spec, weights, bound: int) -> np.ndarray:
    wa, wb = weights
    mask = np.zeros(bound + 1, dtype=bool)
    n_max = bound // min(wa, wb)
    if n_max >= 1:
        lengths, ones = ones_count_arrays(spec, n_max)
        values = ones * wb + (lengths - ones) * wa
        values = values[values <= bound]
        mask[values] = True
    return mask


def image_upto(spec: LanguageSpec, weights, bound: int, backend: str = "auto") -> ImageSet:
    """Membership bitmap of the weighted image restricted to {1..bound}."""
    weights = validate_weights(weights)
    if bound < 1:
        raise ValueError("bound must be positive")
    if len(spec_alphabet(spec)) != 2:
        raise ValueError("weighted images are two-letter only")
    automaton_backed = isinstance(spec, (FullLanguage, ForbiddenFactors))
    if backend == "auto":
        backend = "sft-dp" if automaton_backed else "parikh-enum"
    if backend == "sft-dp":
        if not automaton_backed:
            raise ValueError("the DP backend needs an automaton-backed spec")
        mask = _image_dp(spec, weights, bound)
    elif backend == "parikh-enum":
        mask = _image_parikh(spec, weights, bound)
    else:
        raise ValueError(f"unknown backend {backend!r}")
    return ImageSet(bound=bound, mask=mask, backend=backend, spec=spec, weights=weights)


# -- certified Frobenius -------------------------------------------------------


@dataclass(frozen=True)
class RunCertificate:
    """A run of ``run_length >= letter_weight`` consecutive members starting at
    ``run_start``; appending the absorbing letter pushes any member up by its
    weight, so everything from ``run_start`` on is a member."""

    run_start: int
    run_length: int
    letter: str
    letter_weight: int


@dataclass(frozen=True)
class FrobeniusResult:
    """Certified answer to the largest-non-member question.

    ``kind`` is one of ``complement-empty``, ``certified``,
    ``infinite-complement`` and ``undetermined``.
    """

    kind: str
    frobenius_number: int | None = None
    certificate: RunCertificate | None = None
    reason: str = ""
    searched_bound: int = 0


def _default_bound(spec, weights) -> int:
    wa, wb = weights
    prediction = None
    if math.gcd(wa, wb) == 1:
        if isinstance(spec, FullLanguage) and min(wa, wb) >= 2:
            prediction = formulas.sylvester(wa, wb)
        elif isinstance(spec, ForbiddenFactors) and spec.forbidden == ("bb",) and wa >= 2 and wb >= 2:
            prediction = formulas.golden_mean_frobenius(wa, wb)
    if isinstance(prediction, int) and prediction >= 1:
        return 4 * prediction + 4 * max(wa, wb)
    return DEFAULT_MAX_BOUND


def frobenius(spec: LanguageSpec, weights, max_bound: int | None = None) -> FrobeniusResult:
    """Certified largest non-member of the weighted image, for automaton-backed specs.

    With non-coprime weights the complement is trivially infinite. Otherwise
    the image is sieved upward; the first run of ``t`` consecutive members,
    ``t`` the weight of an absorbing letter, certifies every larger integer.
    """
    weights = validate_weights(weights)
    if not isinstance(spec, (FullLanguage, ForbiddenFactors)):
        raise TypeError("certified sieving needs an automaton-backed spec; "
                        "use image_upto plus the closed-form classifiers instead")
    r, _ = gcd_normalize(weights)
    if r > 1:
        return FrobeniusResult(kind="infinite-complement", reason=f"gcd={r}")

    auto = follower_automaton(spec)
    absorbing = auto.absorbing_letters()
    if not absorbing:
        raise CertificationError("no letter is allowed after every word; cannot certify")
    letter = min(absorbing, key=lambda ch: weights[auto.alphabet.index(ch)])
    needed = weights[auto.alphabet.index(letter)]

    if max_bound is None:
        max_bound = _default_bound(spec, weights)
    wa, wb = weights
    spread_a, spread_b = _letter_spreads(auto)
    window = max(wa, wb) + 1
    ring = [0] * window
    ring[0] = 1 << auto.initial
    member = bytearray(max_bound + 1)
    run = 0
    last_gap = 0
    for m in range(1, max_bound + 1):
        acc = 0
        if m >= wa:
            acc = spread_a[ring[(m - wa) % window]]
        if m >= wb:
            acc |= spread_b[ring[(m - wb) % window]]
        ring[m % window] = acc
        if acc:
            member[m] = 1
            run += 1
            if run >= needed:
                if last_gap == 0:
                    return FrobeniusResult(kind="complement-empty", searched_bound=m)
                certificate = RunCertificate(
                    run_start=last_gap + 1,
                    run_length=m - last_gap,
                    letter=letter,
                    letter_weight=needed,
                )
                return FrobeniusResult(
                    kind="certified",
                    frobenius_number=last_gap,
                    certificate=certificate,
                    searched_bound=m,
                )
        else:
            run = 0
            last_gap = m
    return FrobeniusResult(kind="undetermined", searched_bound=max_bound,
                           reason=f"no run of {needed} consecutive members up to {max_bound}")


# -- derived quantities --------------------------------------------------------


def additive_complexity(spec: LanguageSpec, weights, n: int) -> int:
    """Number of distinct weights over the length-n factors."""
    weights = validate_weights(weights)
    wa, wb = weights
    return len({wa * p[0] + wb * p[1] for p in parikh_set(spec, n)})


def empirical_density(img: ImageSet, window: int) -> Fraction:
    """Share of members in the trailing window of the sieved range."""
    return img.window_density(window)
