"""Sparse multilinear data keyed by tuples of basis indices.

A :class:`SparseTensor` of arity ``k`` is either an element of ``H^{⊗k}``
(``ELEMENT``) or a functional on it (``FUNCTIONAL``).  Linear maps between
tensor powers are :class:`LinMap` objects whose entries are stored as one
tensor of arity ``source + target``.
"""
from __future__ import annotations

from collections import defaultdict

from .errors import ArityMismatch, CostExceeded

ELEMENT = "element"
FUNCTIONAL = "functional"

DEFAULT_CEILING = 10**6
_ceiling = DEFAULT_CEILING


def set_term_ceiling(n):
    """Change the global term-count ceiling for sparse expansions."""
    global _ceiling
    if n <= 0:
        raise ValueError("ceiling must be positive")
    _ceiling = n


def term_ceiling():
    return _ceiling


def check_cost(count, what="expansion"):
    if count > _ceiling:
        raise CostExceeded(f"{what} needs {count} terms, ceiling is {_ceiling}")


class SparseTensor:
    __slots__ = ("field", "dims", "variance", "_items", "_lookup")

    def __init__(self, field, dims, entries=(), variance=ELEMENT):
        if variance not in (ELEMENT, FUNCTIONAL):
            raise ValueError(f"bad variance {variance!r}")
        self.field = field
        self.dims = tuple(dims)
        self.variance = variance
        acc = {}
        pairs = entries.items() if isinstance(entries, dict) else entries
        for key, c in pairs:
            key = tuple(key)
            if len(key) != len(self.dims):
                raise ArityMismatch(f"index {key} for arity {len(self.dims)}")
            for i, d in zip(key, self.dims):
                if not 0 <= i < d:
                    raise IndexError(f"index {key} out of range for dims {self.dims}")
            c = field(c)
            acc[key] = acc[key] + c if key in acc else c
        self._items = tuple(sorted((k, v) for k, v in acc.items() if v))
        self._lookup = dict(self._items)

    @classmethod
    def from_dense(cls, field, vec, variance=ELEMENT):
        return cls(field, (len(vec),), {(i,): c for i, c in enumerate(vec)}, variance)

    @property
    def arity(self):
        return len(self.dims)

    def items(self):
        """Entries in lexicographic order of index tuples."""
        return self._items

    def __len__(self):
        return len(self._items)

    def __getitem__(self, key):
        key = (key,) if isinstance(key, int) else tuple(key)
        return self._lookup.get(key, self.field.zero)

    def dense(self):
        """Coordinate tuple of an arity-1 tensor."""
        if self.arity != 1:
            raise ArityMismatch("dense() needs arity 1")
        z = self.field.zero
        return tuple(self._lookup.get((i,), z) for i in range(self.dims[0]))

    def is_zero(self):
        return not self._items

    def _same_shape(self, other):
        if self.dims != other.dims or self.variance != other.variance:
            raise ArityMismatch(f"shape {self.dims}/{self.variance} vs {other.dims}/{other.variance}")

    def __add__(self, other):
        self._same_shape(other)
        return SparseTensor(self.field, self.dims, self._items + other._items, self.variance)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        c = self.field(c)
        return SparseTensor(self.field, self.dims, [(k, v * c) for k, v in self._items], self.variance)

    def __eq__(self, other):
        if not isinstance(other, SparseTensor):
            return NotImplemented
        return (self.dims == other.dims and self.variance == other.variance
                and self._items == other._items)

    def __hash__(self):
        return hash((self.dims, self.variance, self._items))

    def __repr__(self):
        body = " ".join(f"{','.join(map(str, k))}:{v}" for k, v in self._items)
        return f"SparseTensor({self.variance}, {self.dims}, [{body}])"


class LinMap:
    """Linear map ``H^{⊗s} → H^{⊗t}``; entry ``(src..., tgt...)`` is a coefficient.

    A map with ``target_arity == 0`` is a functional.  Maps whose values are
    read as functionals (``H^{⊗s} → H*``) use one target leg indexing the
    dual basis.
    """

    __slots__ = ("source_arity", "target_arity", "tensor", "_images")

    def __init__(self, source_arity, target_arity, tensor: SparseTensor):
        if tensor.arity != source_arity + target_arity:
            raise ArityMismatch("tensor arity must equal source + target arity")
        self.source_arity = source_arity
        self.target_arity = target_arity
        self.tensor = tensor
        images = defaultdict(list)
        for key, c in tensor.items():
            images[key[:source_arity]].append((key[source_arity:], c))
        self._images = dict(images)

    @classmethod
    def from_images(cls, field, source_dims, target_dims, images):
        """Build from ``{src tuple: {tgt tuple: coeff}}``."""
        entries = {}
        for src, img in images.items():
            for tgt, c in img.items():
                entries[tuple(src) + tuple(tgt)] = c
        t = SparseTensor(field, tuple(source_dims) + tuple(target_dims), entries)
        return cls(len(source_dims), len(target_dims), t)

    @classmethod
    def from_matrix(cls, m):
        """Square matrix with images in columns, as a 1 → 1 map."""
        return cls.from_images(m.field, (m.cols,), (m.rows,),
                               {(j,): {(i,): m[i, j] for i in range(m.rows)} for j in range(m.cols)})

    @property
    def field(self):
        return self.tensor.field

    @property
    def source_dims(self):
        return self.tensor.dims[:self.source_arity]

    @property
    def target_dims(self):
        return self.tensor.dims[self.source_arity:]

    def image(self, src):
        """List of ``(target tuple, coefficient)`` for a basis source tuple."""
        return self._images.get(tuple(src), [])

    def to_matrix(self):
        from .scalars import Matrix
        if self.source_arity != 1 or self.target_arity != 1:
            raise ArityMismatch("to_matrix needs a 1 → 1 map")
        (n,), (m,) = self.source_dims, self.target_dims
        cols = []
        for j in range(n):
            col = [self.field.zero] * m
            for (i,), c in self.image((j,)):
                col[i] = c
            cols.append(col)
        return Matrix.from_columns(self.field, cols, m)

    def __eq__(self, other):
        if not isinstance(other, LinMap):
            return NotImplemented
        return (self.source_arity == other.source_arity
                and self.target_arity == other.target_arity and self.tensor == other.tensor)

    def __hash__(self):
        return hash((self.source_arity, self.target_arity, self.tensor))

    def __repr__(self):
        return f"LinMap({self.source_arity}->{self.target_arity}, {self.tensor!r})"


def contract(f: SparseTensor, x: SparseTensor):
    """Evaluation pairing ``<f, x>`` of a functional with an element."""
    if f.variance != FUNCTIONAL or x.variance != ELEMENT:
        raise ArityMismatch("contract pairs a functional with an element")
    if f.dims != x.dims:
        raise ArityMismatch(f"dims {f.dims} vs {x.dims}")
    acc = f.field.zero
    small, big = (f, x) if len(f) <= len(x) else (x, f)
    for key, c in small.items():
        d = big._lookup.get(key)
        if d is not None:
            acc = acc + c * d
    return acc


def tensor_product(a: SparseTensor, b: SparseTensor):
    if a.variance != b.variance:
        raise ArityMismatch("tensor product of mixed variance")
    check_cost(len(a) * len(b), "tensor product")
    entries = [(ka + kb, ca * cb) for ka, ca in a.items() for kb, cb in b.items()]
    return SparseTensor(a.field, a.dims + b.dims, entries, a.variance)


def permute_legs(t: SparseTensor, perm):
    """Leg ``i`` of the result is leg ``perm[i]`` of ``t``."""
    if sorted(perm) != list(range(t.arity)):
        raise ArityMismatch(f"{perm} is not a permutation of {t.arity} legs")
    dims = tuple(t.dims[p] for p in perm)
    return SparseTensor(t.field, dims, [(tuple(k[p] for p in perm), c) for k, c in t.items()], t.variance)


def apply_leg(t: SparseTensor, leg, m: LinMap):
    """Apply a ``1 → r`` map to one leg of an element tensor.

    The leg is replaced by ``r`` legs; ``r == 0`` contracts it away.
    """
    if t.variance != ELEMENT:
        raise ArityMismatch("apply_leg acts on element tensors")
    if not 0 <= leg < t.arity:
        raise ArityMismatch(f"leg {leg} out of range for arity {t.arity}")
    if m.source_arity != 1:
        raise ArityMismatch("apply_leg needs a map with one source leg")
    if m.source_dims[0] != t.dims[leg]:
        raise ArityMismatch(f"map source dim {m.source_dims[0]} vs leg dim {t.dims[leg]}")
    acc = defaultdict(lambda: t.field.zero)
    count = 0
    for key, c in t.items():
        img = m.image((key[leg],))
        count += len(img)
        for tgt, d in img:
            new = key[:leg] + tgt + key[leg + 1:]
            acc[new] = acc[new] + c * d
    check_cost(count, "leg application")
    dims = t.dims[:leg] + m.target_dims + t.dims[leg + 1:]
    return SparseTensor(t.field, dims, acc, ELEMENT)


def basis_tensor(field, n, i):
    return SparseTensor(field, (n,), {(i,): 1})


def iterated_coproduct(H, m, i):
    """``Δ^(m)(e_i)`` as an element tensor of arity ``m + 1``.

    Δ is applied ``m`` times, always to the last leg.
    """
    if m < 0:
        raise ValueError("m must be non-negative")
    if not 0 <= i < H.n:
        raise IndexError(f"basis index {i} out of range")
    return _iterated(H, m)[i]


def _iterated(H, m):
    cache = H._coproduct_cache
    if m not in cache:
        if m == 0:
            cache[0] = [basis_tensor(H.field, H.n, i) for i in range(H.n)]
        else:
            prev = _iterated(H, m - 1)
            cache[m] = [apply_leg(t, m - 1, H.comult) for t in prev]
    return cache[m]
