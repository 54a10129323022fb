"""Partitions in the k x (n-k) box, Schubert classes and their products.

Partitions always carry exactly ``k`` parts (zero padded).  Products are
truncated to the box, which is the cohomology ring of G(k, n): a term whose
first part exceeds the width is dropped, not reported.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Iterator, Mapping


class PartitionError(ValueError):
    """Base class for rejected partitions."""


class WrongLengthError(PartitionError):
    pass


class NotDecreasingError(PartitionError):
    pass


class PartExceedsWidthError(PartitionError):
    pass


class NegativePartError(PartitionError):
    pass


@dataclass(frozen=True)
class BoxContext:
    """The k x (n-k) box for G(k, n); requires 1 < k < n-1."""

    k: int
    n: int

    def __post_init__(self):
        if not (1 < self.k < self.n - 1):
            raise ValueError(f"need 1 < k < n-1, got k={self.k}, n={self.n}")

    @property
    def width(self) -> int:
        return self.n - self.k

    @property
    def top_codimension(self) -> int:
        return self.k * self.width

    def partitions(self, size: int | None = None) -> Iterator["Partition"]:
        """All partitions in the box, optionally of a fixed size, in reverse lex order."""
        def rec(prefix, cap, remaining_rows):
            if remaining_rows == 0:
                if size is None or sum(prefix) == size:
                    yield Partition(tuple(prefix))
                return
            for p in range(cap, -1, -1):
                if size is not None and sum(prefix) + p > size:
                    continue
                yield from rec(prefix + [p], p, remaining_rows - 1)
        yield from rec([], self.width, self.k)


@dataclass(frozen=True, order=True)
class Partition:
    parts: tuple[int, ...]

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    @property
    def size(self) -> int:
        return sum(self.parts)

    def __str__(self):
        return "[" + ",".join(str(p) for p in self.parts) + "]"

    @classmethod
    def parse(cls, text: str, ctx: BoxContext) -> "Partition":
        body = text.strip()
        if not (body.startswith("[") and body.endswith("]")):
            raise ValueError(f"partition text must look like [3,3,2], got {text!r}")
        inner = body[1:-1].strip()
        parts = [int(x) for x in inner.split(",")] if inner else []
        return validate_partition(parts, ctx)


def validate_partition(parts: Iterable[int], ctx: BoxContext) -> Partition:
    parts = tuple(int(p) for p in parts)
    if len(parts) != ctx.k:
        raise WrongLengthError(f"expected {ctx.k} parts, got {len(parts)}")
    if any(p < 0 for p in parts):
        raise NegativePartError(f"negative part in {parts}")
    if any(a < b for a, b in zip(parts, parts[1:])):
        raise NotDecreasingError(f"{parts} is not weakly decreasing")
    if parts and parts[0] > ctx.width:
        raise PartExceedsWidthError(f"part {parts[0]} exceeds width {ctx.width}")
    return Partition(parts)


def codimension(a: Partition) -> int:
    return a.size


def _pad(parts: Iterable[int], k: int) -> tuple[int, ...]:
    parts = tuple(parts)
    return parts + (0,) * (k - len(parts))


@dataclass(frozen=True)
class SchubertClass:
    partition: Partition
    context: BoxContext

    def __post_init__(self):
        validate_partition(self.partition.parts, self.context)

    @classmethod
    def of(cls, parts: Iterable[int], ctx: BoxContext) -> "SchubertClass":
        return cls(validate_partition(_pad(parts, ctx.k), ctx), ctx)

    @property
    def codimension(self) -> int:
        return self.partition.size

    def as_sum(self) -> "ClassSum":
        return ClassSum({self.partition: 1}, self.context)

    def __str__(self):
        return "σ" + str(self.partition)


@dataclass(frozen=True)
class ClassSum:
    """Integer combination of Schubert classes in one box."""

    terms: Mapping[Partition, int]
    context: BoxContext = field(compare=True)

    def __post_init__(self):
        clean = {}
        for p, c in self.terms.items():
            validate_partition(p.parts, self.context)
            if c:
                clean[p] = c
        object.__setattr__(self, "terms", dict(sorted(clean.items(), reverse=True)))

    def __eq__(self, other):
        if not isinstance(other, ClassSum):
            return NotImplemented
        return self.context == other.context and self.terms == other.terms

    def __hash__(self):
        return hash((self.context, tuple(self.terms.items())))

    def __add__(self, other: "ClassSum") -> "ClassSum":
        self._check(other)
        out = dict(self.terms)
        for p, c in other.terms.items():
            out[p] = out.get(p, 0) + c
        return ClassSum(out, self.context)

    def __rmul__(self, scalar: int) -> "ClassSum":
        return ClassSum({p: scalar * c for p, c in self.terms.items()}, self.context)

    def __mul__(self, other):
        if isinstance(other, int):
            return other * self
        self._check(other)
        out: dict[Partition, int] = {}
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                for p, c in lr_multiply(a, b, self.context).terms.items():
                    out[p] = out.get(p, 0) + ca * cb * c
        return ClassSum(out, self.context)

    def _check(self, other):
        if self.context != other.context:
            raise ValueError("class sums live in different Grassmannians")

    def single_term(self) -> tuple[int, Partition] | None:
        if len(self.terms) != 1:
            return None
        (p, c), = self.terms.items()
        return c, p

    def __str__(self):
        if not self.terms:
            return "0"
        bits = []
        for p, c in self.terms.items():
            bits.append(("" if c == 1 else f"{c}*") + "σ" + str(p))
        return " + ".join(bits)


def pieri(h: int, a: Partition, ctx: BoxContext) -> ClassSum:
    """sigma_h * sigma_a: sum over b with width >= b_1 >= a_1 >= b_2 >= ... >= b_k >= a_k."""
    if not (1 <= h <= ctx.width):
        raise ValueError(f"Pieri degree h must lie in [1, {ctx.width}], got {h}")
    validate_partition(a.parts, ctx)
    k = ctx.k
    target = a.size + h
    ranges = [range(a[0], ctx.width + 1)] + [range(a[i], a[i - 1] + 1) for i in range(1, k)]
    out = {}
    for b in product(*ranges):
        if sum(b) == target:
            out[Partition(b)] = 1
    return ClassSum(out, ctx)


def _lr_count(outer: tuple[int, ...], inner: tuple[int, ...], content: tuple[int, ...]) -> int:
    """Number of LR tableaux of shape outer/inner with the given content.

    Cells are filled in reading order (rows top to bottom, right to left), so the
    lattice condition can be checked on every prefix.
    """
    k = len(outer)
    cells = [(r, c) for r in range(k) for c in range(outer[r] - 1, inner[r] - 1, -1)]
    labels = len(content)
    filling: dict[tuple[int, int], int] = {}
    counts = [0] * (labels + 1)

    def rec(idx):
        if idx == len(cells):
            return 1
        r, c = cells[idx]
        lo = 1
        if r > 0 and c < outer[r - 1] and c >= inner[r - 1]:
            lo = filling[(r - 1, c)] + 1
        hi = labels
        if c + 1 < outer[r]:
            hi = min(hi, filling[(r, c + 1)])
        total = 0
        for v in range(lo, hi + 1):
            if counts[v] >= content[v - 1]:
                continue
            if v > 1 and counts[v] + 1 > counts[v - 1]:
                continue
            counts[v] += 1
            filling[(r, c)] = v
            total += rec(idx + 1)
            counts[v] -= 1
            del filling[(r, c)]
        return total

    return rec(0)


def lr_multiply(a: Partition, b: Partition, ctx: BoxContext) -> ClassSum:
    """sigma_a * sigma_b with Littlewood-Richardson coefficients, truncated to the box."""
    validate_partition(a.parts, ctx)
    validate_partition(b.parts, ctx)
    content = tuple(p for p in b.parts if p)
    if not content:
        return ClassSum({a: 1}, ctx)
    out = {}
    for nu in ctx.partitions(a.size + b.size):
        if all(x >= y for x, y in zip(nu.parts, a.parts)):
            c = _lr_count(nu.parts, a.parts, content)
            if c:
                out[nu] = c
    return ClassSum(out, ctx)
