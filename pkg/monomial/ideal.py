"""
Square-free monomial ideals and the ideal file format.

An ideal is stored as its minimal generating set: an antichain of vertex sets,
each set the support of one generator x_{i1}...x_{ik}. The ambient variable
count n is always declared, never inferred from the largest index used.

File format::

    # comments run to end of line
    n=5
    124 125 345 145 235        # compact digits, only when n <= 9
    x1*x2*x4, x10*x11           # explicit form, any n
"""
from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, List, Optional, Sequence

from monomial.errors import IdealFormatError
from monomial.vertexset import (
    VertexSet,
    check_n,
    full_mask,
    is_antichain,
    members_of,
    minimal_masks,
    popcount,
    sort_key,
)

log = logging.getLogger("fideals.ideal")

_HEADER = re.compile(r"^\s*n\s*=\s*(\S+?)\s*(?:[;,]|\s|$)", re.IGNORECASE)
_EXPLICIT = re.compile(r"x\d+(?:\*?x\d+)*", re.IGNORECASE)
_VARIABLE = re.compile(r"x(\d+)", re.IGNORECASE)
_SEPARATORS = re.compile(r"[\s,;]+")


@dataclass(frozen=True)
class SquareFreeIdeal:
    n: int
    generators: tuple[VertexSet, ...]

    def __post_init__(self) -> None:
        check_n(self.n)
        if not self.generators:
            raise ValueError("an ideal needs at least one generator (the zero ideal is not supported)")
        masks = []
        for g in self.generators:
            if g.n != self.n:
                raise ValueError(f"generator {g} declared on {g.n} vertices, ideal on {self.n}")
            if not g:
                raise ValueError("the empty generator gives the unit ideal, which is not supported")
            masks.append(g.bits)
        if not is_antichain(masks):
            raise ValueError("generators must form an antichain without duplicates")
        if masks != sorted(masks, key=sort_key):
            raise ValueError("generators must be in canonical order; build ideals with from_masks()")

    @classmethod
    def from_masks(cls, n: int, masks: Iterable[int]) -> "SquareFreeIdeal":
        ms = sorted(set(masks), key=sort_key)
        return cls(n, tuple(VertexSet(m, n) for m in ms))

    @classmethod
    def of(cls, n: int, *generators: Iterable[int]) -> "SquareFreeIdeal":
        """SquareFreeIdeal.of(3, [1, 2], [3]) is (x1x2, x3)."""
        return cls.from_masks(n, (VertexSet.of(n, g).bits for g in generators))

    @property
    def masks(self) -> tuple[int, ...]:
        return tuple(g.bits for g in self.generators)

    @property
    def s(self) -> int:
        return len(self.generators)

    def support(self) -> VertexSet:
        return support(self)

    def degree(self) -> int:
        return degree(self)

    def is_pure_of_degree(self, d: int) -> bool:
        return is_pure_of_degree(self, d)

    def pure_degree(self) -> Optional[int]:
        d = degree(self)
        return d if is_pure_of_degree(self, d) else None

    def __contains__(self, monomial: object) -> bool:
        """Membership of the square-free monomial with the given support."""
        if not isinstance(monomial, VertexSet) or monomial.n != self.n:
            return False
        return any(g & ~monomial.bits == 0 for g in self.masks)

    def render(self) -> str:
        return render_ideal(self)

    def __str__(self) -> str:
        return "(" + ", ".join(g.monomial().replace("*", "") for g in self.generators) + ")"


def minimalize(sets: Sequence[VertexSet]) -> List[VertexSet]:
    """Inclusion-minimal members of `sets`, duplicates dropped, canonical order."""
    if not sets:
        raise ValueError("cannot minimalize an empty family")
    n = sets[0].n
    if any(s.n != n for s in sets):
        raise ValueError("all sets must share the ambient vertex count")
    return [VertexSet(m, n) for m in minimal_masks(s.bits for s in sets)]


def support(ideal: SquareFreeIdeal) -> VertexSet:
    bits = 0
    for g in ideal.masks:
        bits |= g
    return VertexSet(bits, ideal.n)


def degree(ideal: SquareFreeIdeal) -> int:
    return max(popcount(g) for g in ideal.masks)


def is_pure_of_degree(ideal: SquareFreeIdeal, d: int) -> bool:
    if d < 1:
        raise ValueError(f"purity degree must be positive, got {d}")
    return all(popcount(g) == d for g in ideal.masks) and support(ideal).bits == full_mask(ideal.n)


def _parse_token(token: str, n: int) -> int:
    if token.isdigit():
        if n > 9:
            raise IdealFormatError(f"compact token {token!r} is ambiguous for n={n}; use x1*x2*... form")
        indices = [int(c) for c in token]
    elif _EXPLICIT.fullmatch(token):
        indices = [int(v) for v in _VARIABLE.findall(token)]
    else:
        raise IdealFormatError(f"malformed generator token {token!r}")
    bits = 0
    for i in indices:
        if not 1 <= i <= n:
            raise IdealFormatError(f"vertex {i} in {token!r} outside 1..{n}")
        if bits >> (i - 1) & 1:
            raise IdealFormatError(f"{token!r} repeats x{i}; only square-free monomials are supported")
        bits |= 1 << (i - 1)
    return bits


def parse_ideal(text: str, *, strict: bool = True) -> SquareFreeIdeal:
    """
    Read an ideal from text.

    strict: reject duplicated or non-minimal generators.
    lenient (strict=False): drop them with a warning and keep the minimal ones.
    """
    body = "\n".join(line.split("#", 1)[0] for line in text.splitlines()).strip()
    m = _HEADER.match(body)
    if not m:
        raise IdealFormatError("ideal text must start with a declaration 'n=<int>'")
    try:
        n = int(m.group(1))
    except ValueError as e:
        raise IdealFormatError(f"invalid vertex count {m.group(1)!r}") from e
    try:
        check_n(n)
    except ValueError as e:
        raise IdealFormatError(str(e)) from e

    tokens = [t for t in _SEPARATORS.split(body[m.end():]) if t]
    if not tokens:
        raise IdealFormatError("no generators given (the zero ideal is not supported)")
    masks = [_parse_token(t, n) for t in tokens]

    unique = list(dict.fromkeys(masks))
    if len(unique) != len(masks):
        dupes = sorted({members_of(b) for b in masks if masks.count(b) > 1})
        if strict:
            raise IdealFormatError(f"duplicate generators: {dupes}")
        log.warning("dropping duplicate generators %s", dupes)

    minimal = minimal_masks(unique)
    if len(minimal) != len(unique):
        redundant = sorted(members_of(b) for b in set(unique) - set(minimal))
        if strict:
            raise IdealFormatError(f"generating set is not minimal; redundant: {redundant}")
        log.warning("dropping non-minimal generators %s", redundant)

    return SquareFreeIdeal.from_masks(n, minimal)


def render_ideal(ideal: SquareFreeIdeal) -> str:
    return f"n={ideal.n}\n" + " ".join(g.monomial() for g in ideal.generators) + "\n"


def read_ideal(source: str, *, strict: bool = True) -> SquareFreeIdeal:
    """Parse inline text (anything containing 'n=') or the contents of a file path."""
    if _HEADER.match(source.split("#", 1)[0]) and not Path(source).is_file():
        return parse_ideal(source, strict=strict)
    path = Path(source)
    if not path.is_file():
        raise IdealFormatError(f"no such ideal file: {source}")
    return parse_ideal(path.read_text(encoding="utf-8"), strict=strict)
