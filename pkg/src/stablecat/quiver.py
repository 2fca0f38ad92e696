"""Bound quiver algebras kQ/I with monomial relations, their
representations and morphisms.

Composition convention: an arrow ``a: i -> j`` acts on a representation
by a matrix ``M_a: M_i -> M_j``.  A path ``(a1, a2, ..., ar)`` means
``a1`` first, then ``a2``; it acts by ``M_ar @ ... @ M_a1``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping, NamedTuple, Sequence

import numpy as np

from .exceptions import AlgebraMismatch, InfiniteDimensional, InvalidRelation, ValidationError
from .linalg import Field

DEFAULT_LENGTH_CAP = 64


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(str(v) for v in self.vertices))
        object.__setattr__(
            self,
            "arrows",
            tuple(a if isinstance(a, Arrow) else Arrow(*map(str, a)) for a in self.arrows),
        )
        if len(set(self.vertices)) != len(self.vertices):
            raise ValidationError("vertex labels must be unique")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise ValidationError("arrow names must be unique")
        vs = set(self.vertices)
        for a in self.arrows:
            if a.source not in vs or a.target not in vs:
                raise ValidationError(f"arrow {a.name!r} has an undeclared endpoint")

    def arrow(self, name: str) -> Arrow:
        for a in self.arrows:
            if a.name == name:
                return a
        raise KeyError(name)

    def arrows_from(self, v: str) -> list[Arrow]:
        return [a for a in self.arrows if a.source == v]

    def arrows_to(self, v: str) -> list[Arrow]:
        return [a for a in self.arrows if a.target == v]

    def opposite(self) -> "Quiver":
        return Quiver(self.vertices, tuple(Arrow(a.name, a.target, a.source) for a in self.arrows))


class Path(NamedTuple):
    source: str
    target: str
    arrows: tuple[str, ...]

    def label(self) -> str:
        return "".join(self.arrows) if self.arrows else f"e{self.source}"


class PathAlgebra:
    """kQ/I for a monomial ideal I, with its explicit path basis."""

    def __init__(
        self,
        quiver: Quiver,
        relations: Iterable[Sequence[str]] = (),
        field: Field | None = None,
        length_cap: int = DEFAULT_LENGTH_CAP,
    ):
        self.quiver = quiver
        self.field = field or Field()
        self.length_cap = length_cap
        self.relations = tuple(tuple(r) for r in relations)
        for rel in self.relations:
            self._check_relation(rel)
        self.paths = self._enumerate_paths()
        self._by_ends: dict[tuple[str, str], list[Path]] = {}
        for path in self.paths:
            self._by_ends.setdefault((path.source, path.target), []).append(path)
        self._index = {path: i for i, path in enumerate(self.paths)}
        self._opposite: PathAlgebra | None = None

    def _check_relation(self, rel):
        if len(rel) < 2:
            raise InvalidRelation(f"relation {rel!r} has length < 2")
        try:
            arrows = [self.quiver.arrow(a) for a in rel]
        except KeyError as e:
            raise InvalidRelation(f"relation {rel!r} uses unknown arrow {e.args[0]!r}") from None
        for a, b in zip(arrows, arrows[1:]):
            if a.target != b.source:
                raise InvalidRelation(f"relation {rel!r} is not composable at {a.name}{b.name}")

    def _has_relation_suffix(self, arrows: tuple[str, ...]) -> bool:
        for rel in self.relations:
            if len(rel) <= len(arrows) and arrows[len(arrows) - len(rel):] == rel:
                return True
        return False

    def _enumerate_paths(self) -> tuple[Path, ...]:
        out: list[Path] = []
        queue = deque(Path(v, v, ()) for v in self.quiver.vertices)
        while queue:
            path = queue.popleft()
            out.append(path)
            for a in self.quiver.arrows_from(path.target):
                arrows = path.arrows + (a.name,)
                if self._has_relation_suffix(arrows):
                    continue
                if len(arrows) > self.length_cap:
                    raise InfiniteDimensional(
                        f"a path of length > {self.length_cap} survives the relations; "
                        "the algebra looks infinite-dimensional"
                    )
                queue.append(Path(path.source, a.target, arrows))
        return tuple(out)

    # --- basis queries ---------------------------------------------------

    @property
    def vertices(self) -> tuple[str, ...]:
        return self.quiver.vertices

    @property
    def dim(self) -> int:
        return len(self.paths)

    def paths_between(self, i: str, j: str) -> list[Path]:
        return self._by_ends.get((i, j), [])

    def paths_from(self, i: str) -> list[Path]:
        return [p for p in self.paths if p.source == i]

    def paths_to(self, j: str) -> list[Path]:
        return [p for p in self.paths if p.target == j]

    def multiply(self, p: Path, q: Path) -> Path | None:
        """``p`` followed by ``q``; None when the product vanishes."""
        if p.target != q.source:
            return None
        arrows = p.arrows + q.arrows
        for rel in self.relations:
            n = len(rel)
            for k in range(len(arrows) - n + 1):
                if arrows[k:k + n] == rel:
                    return None
        return Path(p.source, q.target, arrows)

    def arrow_path(self, name: str) -> Path:
        a = self.quiver.arrow(name)
        return Path(a.source, a.target, (name,))

    def path(self, *arrows: str, start: str | None = None) -> Path:
        """Path from arrow names; ``start`` is needed only for the trivial path."""
        if not arrows:
            if start is None:
                raise ValueError("trivial path needs a start vertex")
            return Path(start, start, ())
        out = self.arrow_path(arrows[0])
        for name in arrows[1:]:
            nxt = self.multiply(out, self.arrow_path(name))
            if nxt is None:
                raise ValueError(f"path {''.join(arrows)} is zero in the algebra")
            out = nxt
        return out

    # --- identity and duality --------------------------------------------

    def key(self):
        return (self.quiver, self.relations, self.field.p)

    def __eq__(self, other):
        if not isinstance(other, PathAlgebra):
            return NotImplemented
        return self is other or self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def opposite(self) -> "PathAlgebra":
        """Arrows and relations reversed; ``alg.opposite().opposite() is alg``."""
        if self._opposite is None:
            op = PathAlgebra(
                self.quiver.opposite(),
                [tuple(reversed(r)) for r in self.relations],
                self.field,
                self.length_cap,
            )
            op._opposite = self
            self._opposite = op
        return self._opposite

    def with_field(self, field: Field) -> "PathAlgebra":
        return PathAlgebra(self.quiver, self.relations, field, self.length_cap)

    def __repr__(self):
        return (
            f"PathAlgebra(vertices={list(self.vertices)}, arrows={len(self.quiver.arrows)}, "
            f"relations={len(self.relations)}, dim={self.dim}, p={self.field.p})"
        )


def build_algebra(quiver: Quiver, relations=(), field: Field | None = None, length_cap: int = DEFAULT_LENGTH_CAP) -> PathAlgebra:
    return PathAlgebra(quiver, relations, field, length_cap)


class Representation:
    """A finite-dimensional module: one vector space per vertex and one
    matrix per arrow, with every relation acting as zero."""

    def __init__(
        self,
        algebra: PathAlgebra,
        dims: Mapping[str, int],
        maps: Mapping[str, object] | None = None,
        name: str | None = None,
        validate: bool = True,
    ):
        self.algebra = algebra
        self.name = name
        fld = algebra.field
        unknown = set(map(str, dims)) - set(algebra.vertices)
        if unknown:
            raise ValidationError(f"{self._label()}: unknown vertices {sorted(unknown)}")
        self.dims = {v: int(dims.get(v, 0)) for v in algebra.vertices}
        if any(d < 0 for d in self.dims.values()):
            raise ValidationError(f"{self._label()}: negative dimension")
        maps = dict(maps or {})
        unknown = set(maps) - {a.name for a in algebra.quiver.arrows}
        if unknown:
            raise ValidationError(f"{self._label()}: unknown arrows {sorted(unknown)}")
        self.maps: dict[str, np.ndarray] = {}
        for a in algebra.quiver.arrows:
            shape = (self.dims[a.target], self.dims[a.source])
            if a.name in maps and maps[a.name] is not None:
                m = np.array(maps[a.name], dtype=np.int64)
                if m.size == 0:
                    m = m.reshape(shape)
                if m.shape != shape:
                    raise ValidationError(
                        f"{self._label()}: arrow {a.name} ({a.source}->{a.target}) needs a "
                        f"{shape[0]}x{shape[1]} matrix, got {m.shape[0]}x{m.shape[1] if m.ndim > 1 else 0}"
                    )
                self.maps[a.name] = m % fld.p
            else:
                self.maps[a.name] = np.zeros(shape, dtype=np.int64)
        if validate:
            self.validate()

    def _label(self) -> str:
        return f"module {self.name!r}" if self.name else "module"

    def validate(self):
        for rel in self.algebra.relations:
            path = Path(self.algebra.quiver.arrow(rel[0]).source, self.algebra.quiver.arrow(rel[-1]).target, rel)
            if np.any(self.path_matrix(path)):
                raise ValidationError(f"{self._label()}: relation {''.join(rel)} does not act as zero")

    @property
    def field(self) -> Field:
        return self.algebra.field

    @property
    def total_dim(self) -> int:
        return sum(self.dims.values())

    def dim_vector(self) -> tuple[int, ...]:
        return tuple(self.dims[v] for v in self.algebra.vertices)

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def support(self) -> set[str]:
        return {v for v, d in self.dims.items() if d}

    def path_matrix(self, path: Path) -> np.ndarray:
        m = np.eye(self.dims[path.source], dtype=np.int64)
        for name in path.arrows:
            m = (self.maps[name] @ m) % self.field.p
        return m

    def equals(self, other: "Representation") -> bool:
        if self is other:
            return True
        return (
            self.algebra == other.algebra
            and self.dims == other.dims
            and all(np.array_equal(self.maps[a], other.maps[a]) for a in self.maps)
        )

    def renamed(self, name: str | None) -> "Representation":
        return Representation(self.algebra, self.dims, self.maps, name=name, validate=False)

    def __repr__(self):
        label = f"{self.name} " if self.name else ""
        return f"<Representation {label}dims={self.dim_vector()}>"


def check_same_algebra(*xs):
    algs = [x.algebra for x in xs]
    for a in algs[1:]:
        if a != algs[0]:
            raise AlgebraMismatch("objects live over different algebras")


class Morphism:
    """One matrix per vertex, intertwining the arrow actions."""

    def __init__(
        self,
        source: Representation,
        target: Representation,
        maps: Mapping[str, object] | None = None,
        validate: bool = True,
    ):
        check_same_algebra(source, target)
        self.source = source
        self.target = target
        fld = source.field
        maps = dict(maps or {})
        self.maps: dict[str, np.ndarray] = {}
        for v in source.algebra.vertices:
            shape = (target.dims[v], source.dims[v])
            if v in maps and maps[v] is not None:
                m = np.array(maps[v], dtype=np.int64)
                if m.size == 0:
                    m = m.reshape(shape)
                if m.shape != shape:
                    raise ValidationError(f"morphism at vertex {v}: expected shape {shape}, got {m.shape}")
                self.maps[v] = m % fld.p
            else:
                self.maps[v] = np.zeros(shape, dtype=np.int64)
        if validate:
            self.validate()

    @property
    def algebra(self) -> PathAlgebra:
        return self.source.algebra

    @property
    def field(self) -> Field:
        return self.source.field

    def validate(self):
        p = self.field.p
        for a in self.algebra.quiver.arrows:
            lhs = (self.maps[a.target] @ self.source.maps[a.name]) % p
            rhs = (self.target.maps[a.name] @ self.maps[a.source]) % p
            if not np.array_equal(lhs, rhs):
                raise ValidationError(f"morphism does not commute with arrow {a.name}")

    # --- arithmetic ------------------------------------------------------

    def __matmul__(self, other: "Morphism") -> "Morphism":
        """``g @ f`` is the composite g∘f (f first)."""
        if not (other.target is self.source or other.target.equals(self.source)):
            raise ValidationError("composition of non-composable morphisms")
        p = self.field.p
        return Morphism(
            other.source,
            self.target,
            {v: (self.maps[v] @ other.maps[v]) % p for v in self.maps},
            validate=False,
        )

    def _check_parallel(self, other):
        if not (self.source.equals(other.source) and self.target.equals(other.target)):
            raise ValidationError("morphisms are not parallel")

    def __add__(self, other: "Morphism") -> "Morphism":
        self._check_parallel(other)
        p = self.field.p
        return Morphism(self.source, self.target, {v: (self.maps[v] + other.maps[v]) % p for v in self.maps}, validate=False)

    def __sub__(self, other: "Morphism") -> "Morphism":
        return self + other.scale(-1)

    def __neg__(self) -> "Morphism":
        return self.scale(-1)

    def scale(self, c: int) -> "Morphism":
        p = self.field.p
        return Morphism(self.source, self.target, {v: (c * m) % p for v, m in self.maps.items()}, validate=False)

    def vector(self) -> np.ndarray:
        parts = [self.maps[v].reshape(-1) for v in self.algebra.vertices]
        return np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64)

    @classmethod
    def from_vector(cls, source, target, vec, validate: bool = False) -> "Morphism":
        vec = np.asarray(vec, dtype=np.int64)
        maps, k = {}, 0
        for v in source.algebra.vertices:
            n = target.dims[v] * source.dims[v]
            maps[v] = vec[k:k + n].reshape(target.dims[v], source.dims[v])
            k += n
        return cls(source, target, maps, validate=validate)

    @classmethod
    def identity(cls, m: Representation) -> "Morphism":
        return cls(m, m, {v: np.eye(d, dtype=np.int64) for v, d in m.dims.items()}, validate=False)

    @classmethod
    def zero(cls, source: Representation, target: Representation) -> "Morphism":
        return cls(source, target, None, validate=False)

    # --- predicates ------------------------------------------------------

    def is_zero(self) -> bool:
        return not any(np.any(m) for m in self.maps.values())

    def rank(self, v: str) -> int:
        return self.field.rank(self.maps[v])

    def is_mono(self) -> bool:
        return all(self.rank(v) == self.source.dims[v] for v in self.maps)

    def is_epi(self) -> bool:
        return all(self.rank(v) == self.target.dims[v] for v in self.maps)

    def is_iso(self) -> bool:
        return self.is_mono() and self.is_epi()

    def equals(self, other: "Morphism") -> bool:
        return (
            self.source.equals(other.source)
            and self.target.equals(other.target)
            and all(np.array_equal(self.maps[v], other.maps[v]) for v in self.maps)
        )

    def __repr__(self):
        return f"<Morphism {self.source.dim_vector()} -> {self.target.dim_vector()}>"


# --- standard modules ------------------------------------------------------


def projective(alg: PathAlgebra, v: str) -> Representation:
    """Paths starting at ``v``; arrows act by right concatenation."""
    bases = {w: alg.paths_between(v, w) for w in alg.vertices}
    maps = {}
    for a in alg.quiver.arrows:
        src, dst = bases[a.source], bases[a.target]
        index = {q: k for k, q in enumerate(dst)}
        m = np.zeros((len(dst), len(src)), dtype=np.int64)
        ap = alg.arrow_path(a.name)
        for k, path in enumerate(src):
            q = alg.multiply(path, ap)
            if q is not None:
                m[index[q], k] = 1
        maps[a.name] = m
    return Representation(alg, {w: len(b) for w, b in bases.items()}, maps, name=f"P{v}")


def injective(alg: PathAlgebra, v: str) -> Representation:
    """Dual of the paths ending at ``v``."""
    bases = {w: alg.paths_between(w, v) for w in alg.vertices}
    maps = {}
    for a in alg.quiver.arrows:
        src, dst = bases[a.source], bases[a.target]
        index = {p: k for k, p in enumerate(src)}
        m = np.zeros((len(dst), len(src)), dtype=np.int64)
        ap = alg.arrow_path(a.name)
        for k, q in enumerate(dst):
            prod = alg.multiply(ap, q)
            if prod is not None:
                m[k, index[prod]] = 1
        maps[a.name] = m
    return Representation(alg, {w: len(b) for w, b in bases.items()}, maps, name=f"I{v}")


def simple(alg: PathAlgebra, v: str) -> Representation:
    return Representation(alg, {v: 1}, name=f"S{v}")


def zero_module(alg: PathAlgebra) -> Representation:
    return Representation(alg, {}, name="0")


def standard_module(alg: PathAlgebra, kind: str, v: str) -> Representation:
    makers = {"projective": projective, "injective": injective, "simple": simple}
    if kind not in makers:
        raise ValueError(f"unknown standard module kind {kind!r}")
    if v not in alg.vertices:
        raise ValidationError(f"unknown vertex {v!r}")
    return makers[kind](alg, v)


def opposite(x):
    """Vector-space duality onto the opposite algebra.

    Representations keep their dimension vector and transpose every arrow
    matrix; a morphism M -> N becomes N^op -> M^op with transposed vertex
    maps.  Applying it twice returns an equal object.
    """
    if isinstance(x, Representation):
        op = x.algebra.opposite()
        return Representation(op, x.dims, {a: m.T.copy() for a, m in x.maps.items()}, name=x.name, validate=False)
    if isinstance(x, Morphism):
        return Morphism(opposite(x.target), opposite(x.source), {v: m.T.copy() for v, m in x.maps.items()}, validate=False)
    raise TypeError(f"cannot transport {type(x).__name__}")


opposite_transport = opposite
