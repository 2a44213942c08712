"""Core state representation: ordered occupation-basis kets over fermionic modes.

A ket is presented relative to a *mode order* -- the sequence in which creation
operators were applied to the vacuum.  The same physical state has different
coefficient signs in different presentations; ``canonicalize`` moves any
presentation to the lexicographic ground-truth order so states can be compared.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Mapping

from .errors import ModeSetError, WidthError, ZeroStateError

#: Amplitudes with modulus below this are dropped from term maps.
PRUNE_TOL = 1e-12

_LABEL_RE = re.compile(r"^[A-Za-z][A-Za-z0-9_]*$")

ModeOrder = tuple[str, ...]


def mode_order(labels: Iterable[str]) -> ModeOrder:
    """Validate and freeze a sequence of mode labels into a ModeOrder."""
    labels = tuple(labels)
    for lab in labels:
        if not _LABEL_RE.match(lab):
            raise ModeSetError(f"invalid mode label {lab!r}")
    if len(set(labels)) != len(labels):
        raise ModeSetError(f"duplicate mode labels in {labels}")
    return labels


def canonical_order(labels: Iterable[str]) -> ModeOrder:
    """The lexicographically sorted order of the given labels."""
    return tuple(sorted(mode_order(labels)))


def weight(bits: str) -> int:
    """Number of occupied modes in an occupation string."""
    return bits.count("1")


def _check_bits(bits: str, width: int) -> None:
    if len(bits) != width or any(b not in "01" for b in bits):
        raise WidthError(f"occupation string {bits!r} does not fit width {width}")


@dataclass(frozen=True)
class FockKet:
    """Sparse linear combination of occupation strings in a fixed mode order.

    Immutable; ``terms`` maps bit strings (first character = first mode slot)
    to complex amplitudes.  An empty term map is the zero state, which is a
    legal *output* of operations but not a legal ``make_ket`` input.
    """

    order: ModeOrder
    terms: Mapping[str, complex] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "terms", MappingProxyType(dict(self.terms)))

    @property
    def width(self) -> int:
        return len(self.order)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def squared_norm(self) -> float:
        return sum(abs(a) ** 2 for a in self.terms.values())

    def amplitude(self, bits: str) -> complex:
        _check_bits(bits, self.width)
        return self.terms.get(bits, 0j)


def _prune(terms: dict[str, complex]) -> dict[str, complex]:
    return {s: a for s, a in terms.items() if abs(a) >= PRUNE_TOL}


def make_ket(
    order: Iterable[str],
    terms: Iterable[tuple[str, complex]],
    normalize: bool = False,
) -> FockKet:
    """Build a ket from (occupation string, amplitude) pairs.

    Duplicate strings are merged additively; amplitudes below ``PRUNE_TOL``
    are dropped.  Raises ``ZeroStateError`` if everything prunes away.
    """
    order = mode_order(order)
    merged: dict[str, complex] = {}
    empty = True
    for bits, amp in terms:
        empty = False
        _check_bits(bits, len(order))
        merged[bits] = merged.get(bits, 0j) + complex(amp)
    if empty:
        raise ZeroStateError("term list is empty")
    merged = _prune(merged)
    if not merged:
        raise ZeroStateError("all amplitudes pruned to zero")
    if normalize:
        norm = math.sqrt(sum(abs(a) ** 2 for a in merged.values()))
        merged = {s: a / norm for s, a in merged.items()}
    return FockKet(order, merged)


def vacuum(order: Iterable[str]) -> FockKet:
    """The all-unoccupied ket on the given modes."""
    order = mode_order(order)
    return FockKet(order, {"0" * len(order): 1.0 + 0j})


def zero_ket(order: Iterable[str]) -> FockKet:
    """The zero vector (empty term map)."""
    return FockKet(mode_order(order), {})


def permute_bits(bits: str, source: ModeOrder, target: ModeOrder) -> str:
    """Re-slot an occupation string from one mode order to another."""
    lookup = dict(zip(source, bits))
    return "".join(lookup[m] for m in target)


def occupied_inversions(bits: str, source: ModeOrder, target: ModeOrder) -> int:
    """Count mode pairs that are occupied in ``bits`` and whose relative
    order flips between ``source`` and ``target``.

    For the fermionic exchange phase the reorder sign is (-1) to this count;
    it depends only on the permutation, not on any swap decomposition.
    """
    pos = {m: i for i, m in enumerate(target)}
    occ = [pos[m] for m, b in zip(source, bits) if b == "1"]
    return sum(
        1 for i in range(len(occ)) for j in range(i + 1, len(occ)) if occ[i] > occ[j]
    )


def canonicalize(ket: FockKet) -> FockKet:
    """Re-express a ket in the canonical (sorted-label) mode order.

    Each term picks up the fermionic sign (-1)^k, k = occupied-pair
    inversions relative to the canonical order.  Idempotent and
    norm-preserving; the physical vector is unchanged.
    """
    target = tuple(sorted(ket.order))
    if target == ket.order:
        return ket
    terms: dict[str, complex] = {}
    for bits, amp in ket.terms.items():
        sign = -1.0 if occupied_inversions(bits, ket.order, target) % 2 else 1.0
        terms[permute_bits(bits, ket.order, target)] = sign * amp
    return FockKet(target, _prune(terms))


def inner_product(x: FockKet, y: FockKet) -> complex:
    """Hermitian inner product; both kets are canonicalized first.

    The kets must live on the same mode set (presentation orders may differ).
    """
    if set(x.order) != set(y.order):
        raise ModeSetError(f"mode sets differ: {x.order} vs {y.order}")
    xc, yc = canonicalize(x), canonicalize(y)
    return sum(xc.terms[s].conjugate() * a for s, a in yc.terms.items() if s in xc.terms)


def braided_pairing(bra_bits: str, ket_bits: str) -> int:
    """Pairing of a same-order braided bra string with a ket string.

    Zero unless the strings match; otherwise (-1)^(w(w-1)/2) with w the
    occupation weight.  Cancels the braided-adjoint sign so that norms
    come out positive.
    """
    if len(bra_bits) != len(ket_bits):
        raise WidthError("pairing of strings with different widths")
    if bra_bits != ket_bits:
        return 0
    w = weight(ket_bits)
    return -1 if (w * (w - 1) // 2) % 2 else 1
