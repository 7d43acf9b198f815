"""Set expressions over spectrum kinds, and guard predicates on them."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from ..errors import UnsupportedConfiguration
from ..region import OpenRegion, SpectralRegion, union_with_open
from . import ops
from .kinds import SpectrumKind

Value = SpectralRegion | OpenRegion
Env = Mapping[SpectrumKind, SpectralRegion]


class Expr:
    def refs(self) -> frozenset[SpectrumKind]:
        raise NotImplementedError

    def evaluate(self, env: Env) -> Value:
        raise NotImplementedError

    def closed(self, env: Env) -> SpectralRegion:
        v = self.evaluate(env)
        if not isinstance(v, SpectralRegion):
            raise UnsupportedConfiguration(f"{self} is an open set, not a region")
        return v


@dataclass(frozen=True)
class Ref(Expr):
    kind: SpectrumKind

    def refs(self):
        return frozenset({self.kind})

    def evaluate(self, env):
        return env[self.kind]

    def __str__(self):
        return f"σ_{self.kind}"


@dataclass(frozen=True)
class Join(Expr):
    left: Expr
    right: Expr

    def refs(self):
        return self.left.refs() | self.right.refs()

    def evaluate(self, env):
        a, b = self.left.evaluate(env), self.right.evaluate(env)
        if isinstance(a, OpenRegion):
            a, b = b, a
        if isinstance(a, OpenRegion):
            return OpenRegion(a.closures + b.closures)
        if isinstance(b, OpenRegion):
            out = union_with_open(a, b)
            if out is None:
                raise UnsupportedConfiguration(f"{self} is not closed")
            return out
        return ops.union(a, b)

    def __str__(self):
        return f"{self.left} ∪ {self.right}"


@dataclass(frozen=True)
class Meet(Expr):
    left: Expr
    right: Expr

    def refs(self):
        return self.left.refs() | self.right.refs()

    def evaluate(self, env):
        return ops.intersection(self.left.closed(env), self.right.closed(env))

    def __str__(self):
        return f"({self.left}) ∩ ({self.right})"


@dataclass(frozen=True)
class _Unary(Expr):
    arg: Expr
    symbol = "?"

    def refs(self):
        return self.arg.refs()

    def __str__(self):
        return f"{self.symbol} {self.arg}"


class Acc(_Unary):
    symbol = "acc"

    def evaluate(self, env):
        return ops.accumulation(self.arg.closed(env))


class Int(_Unary):
    symbol = "int"

    def evaluate(self, env):
        return ops.interior(self.arg.closed(env))


class Bd(_Unary):
    symbol = "∂"

    def evaluate(self, env):
        return ops.boundary(self.arg.closed(env))


class Hull(_Unary):
    symbol = "η"

    def evaluate(self, env):
        return ops.hull(self.arg.closed(env))


# ---------------------------------------------------------------- guards


def _line(r: SpectralRegion) -> bool:
    return ops.is_line_contained(r)


def _line_or_countable(r: SpectralRegion) -> bool:
    return r.is_finite() or ops.is_line_contained(r)


def _in_own_boundary(r: SpectralRegion) -> bool:
    return ops.subset(r, ops.boundary(r))


def _equals_boundary(r: SpectralRegion) -> bool:
    return ops.boundary(r) == r


def _boundary_and_acc(r: SpectralRegion) -> bool:
    return ops.boundary(r) == r and ops.accumulation(r) == r


GUARD_TESTS = {
    "contained-in-line": (_line, "{} is contained in a line"),
    "countable-or-in-line": (_line_or_countable, "{} is countable or contained in a line"),
    "no-holes": (ops.has_no_holes, "the complement of {} has one component"),
    "inside-own-boundary": (_in_own_boundary, "{} ⊆ ∂{}"),
    "equals-boundary": (_equals_boundary, "{} = ∂{}"),
    "boundary-and-acc": (_boundary_and_acc, "{} = ∂{} = acc {}"),
    "countable": (SpectralRegion.is_finite, "{} is countable"),
}


@dataclass(frozen=True)
class Guard:
    test: str
    arg: Expr

    def __post_init__(self):
        if self.test not in GUARD_TESTS:
            raise ValueError(f"unknown guard test {self.test!r}")

    def refs(self):
        return self.arg.refs()

    def holds(self, env: Env) -> bool:
        return bool(GUARD_TESTS[self.test][0](self.arg.closed(env)))

    def __str__(self):
        text = GUARD_TESTS[self.test][1]
        return text.replace("{}", str(self.arg))
