"""Approximate Binomial(k, a/b) sampling in O(max(ka/b, 1) log Q) time.

The output distribution is within total variation 1/Q of the exact
binomial.  Support is truncated to ``0..s`` and the ratios
``t_i = q_i / q_0`` are built by the recurrence

    t_i = t_{i-1} * (k + 1 - i) / i * a / (b - a)

in a significand/exponent representation with a fixed number of
significand bits, then aligned to the largest term so that sampling
reduces to picking an index proportionally to integer weights.
"""

from __future__ import annotations

import math
import random

# Constant bounding the relative error of one rounded ratio, in units of 2**-alpha.
ROUNDING_CONSTANT = 4


class SamplerInputError(ValueError):
    pass


def _check(k: int, a: int, b: int, quality: int) -> None:
    if k < 1:
        raise SamplerInputError("k must be positive")
    if not 1 <= a <= b:
        raise SamplerInputError(f"need 1 <= a <= b, got a={a}, b={b}")
    if quality <= 1:
        raise SamplerInputError("quality Q must exceed 1")


def support_size(k: int, a: int, b: int, quality: int) -> int:
    """Largest outcome the sampler can produce: min(ceil(6 ln(2Q) max(1, ka/b)), k)."""
    return min(math.ceil(6 * math.log(2 * quality) * max(1.0, k * a / b)), k)


def significand_bits(k: int, quality: int) -> int:
    """ceil(log2((3Ck + 2) * 4 (k+1)^2 Q)) with C = ROUNDING_CONSTANT."""
    x = (3 * ROUNDING_CONSTANT * k + 2) * 4 * (k + 1) ** 2 * math.ceil(quality)
    return (x - 1).bit_length()


def _normalize(sig: int, exp: int, alpha: int) -> tuple[int, int]:
    # Truncate to alpha+1 bits so that 2**alpha <= sig < 2**(alpha+1).
    extra = sig.bit_length() - (alpha + 1)
    if extra > 0:
        return sig >> extra, exp + extra
    return sig << -extra, exp + extra


def _ratio(num: int, den: int, alpha: int) -> tuple[int, int]:
    shift = alpha + 1 + den.bit_length() - num.bit_length()
    if shift >= 0:
        sig = (num << shift) // den
    else:
        sig = num // (den << -shift)
    return _normalize(sig, -shift, alpha)


def binomial_weights(k: int, a: int, b: int, quality: int) -> list[int]:
    """Integer weights ``W_0..W_s``; the sampler returns i with probability W_i / sum(W).

    Requires ``a < b`` (the ``a == b`` case is degenerate and handled by
    :func:`sample_binomial`).
    """
    _check(k, a, b, quality)
    if a == b:
        raise SamplerInputError("a == b has the point mass at k; no weights needed")
    s = support_size(k, a, b, quality)
    alpha = significand_bits(k, quality)
    terms = [(1 << alpha, -alpha)]
    sig, exp = terms[0]
    for i in range(1, s + 1):
        rs, re = _ratio((k + 1 - i) * a, i * (b - a), alpha)
        sig, exp = _normalize(sig * rs, exp + re, alpha)
        terms.append((sig, exp))
    top = max(e for _, e in terms)
    return [sg >> (top - e) for sg, e in terms]


def sample_binomial(k: int, a: int, b: int, quality: int, rng: random.Random) -> int:
    """Draw from a distribution within TV 1/Q of Binomial(k, a/b)."""
    _check(k, a, b, quality)
    if a == b:
        return k
    weights = binomial_weights(k, a, b, quality)
    u = rng.randrange(sum(weights))
    for i, w in enumerate(weights):
        if u < w:
            return i
        u -= w
    raise AssertionError("unreachable: weights exhausted")
