"""Exact scalars, dense tensors and linear algebra over Q and F_p.

A :class:`Tensor` stores an integer numerator array together with a single
positive denominator (always 1 over a prime field).  Contractions run on
int64 whenever an a-priori bound rules out overflow and fall back to Python
integers otherwise, so every result is exact.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce

import numpy as np

from .errors import FieldMismatch, Inconsistent, NotInSubspace, ShapeMismatch, SingularMatrix

_SAFE = 2**62
MAX_AMBIENT_DIM = 4096


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


class Field:
    """The rationals (``p is None``) or the prime field F_p with p < 2**31."""

    __slots__ = ("p",)

    def __init__(self, p: int | None = None):
        if p is not None:
            p = int(p)
            if not (2 <= p < 2**31) or not is_prime(p):
                raise ValueError(f"F_p requires a prime p < 2**31, got {p}")
        object.__setattr__(self, "p", p)

    def __setattr__(self, name, value):
        raise AttributeError("Field is immutable")

    @classmethod
    def rationals(cls) -> Field:
        return cls(None)

    @classmethod
    def prime(cls, p: int) -> Field:
        return cls(p)

    @classmethod
    def from_string(cls, text: str) -> Field:
        text = text.strip().lower()
        if text in ("rational", "rationals", "q"):
            return cls(None)
        m = re.fullmatch(r"(?:fp|f|gf):?(\d+)", text)
        if not m:
            raise ValueError(f"unknown field {text!r}; use 'rational' or 'fp:<p>'")
        return cls(int(m.group(1)))

    @property
    def kind(self) -> str:
        return "rational" if self.p is None else "prime"

    @property
    def is_rational(self) -> bool:
        return self.p is None

    def __eq__(self, other):
        return isinstance(other, Field) and self.p == other.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "Field(Q)" if self.p is None else f"Field(F_{self.p})"

    def __str__(self):
        return "rational" if self.p is None else f"fp:{self.p}"

    def to_json(self) -> dict:
        return {"kind": "rational"} if self.p is None else {"kind": "prime", "p": self.p}

    # scalars -------------------------------------------------------------

    def __call__(self, x):
        """Coerce ``x`` (int, Fraction, or a "p/q" string) into the field."""
        if isinstance(x, str):
            x = Fraction(x.strip())
        if isinstance(x, (bool, np.bool_)):
            x = int(x)
        if isinstance(x, np.integer):
            x = int(x)
        if self.p is None:
            if isinstance(x, (int, Fraction)):
                return Fraction(x)
            raise TypeError(f"cannot coerce {type(x).__name__} exactly")
        if isinstance(x, int):
            return x % self.p
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"{x} has no image in F_{self.p}")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        raise TypeError(f"cannot coerce {type(x).__name__} exactly")

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def add(self, a, b):
        return a + b if self.p is None else (a + b) % self.p

    def sub(self, a, b):
        return a - b if self.p is None else (a - b) % self.p

    def mul(self, a, b):
        return a * b if self.p is None else (a * b) % self.p

    def neg(self, a):
        return -a if self.p is None else (-a) % self.p

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return Fraction(1) / a if self.p is None else pow(int(a), self.p - 2, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def format(self, x) -> str:
        return str(x)

    def random(self, rng, bound: int = 9):
        """A random scalar; rationals have numerators/denominators up to ``bound``."""
        if self.p is None:
            return Fraction(int(rng.integers(-bound, bound + 1)), int(rng.integers(1, bound + 1)))
        return int(rng.integers(0, self.p))


QQ = Field.rationals()


# ---------------------------------------------------------------------------
# tensors


def _maxabs(a: np.ndarray) -> int:
    if a.size == 0:
        return 0
    if a.dtype == object:
        return max(abs(int(x)) for x in a.flat)
    return int(np.abs(a).max())


def _gcd_all(a: np.ndarray, start: int) -> int:
    if a.size == 0:
        return start
    if a.dtype == object:
        return reduce(math.gcd, (int(x) for x in a.flat), start)
    return math.gcd(int(np.gcd.reduce(a, axis=None)), start)


def _as_int_array(num) -> np.ndarray:
    a = np.asarray(num)
    if a.dtype == object or a.dtype == np.uint64:
        return a.astype(object)
    if a.dtype.kind not in "iub":
        raise TypeError(f"exact tensors need integer numerators, got dtype {a.dtype}")
    return a.astype(np.int64)


def _shrink(a: np.ndarray) -> np.ndarray:
    if a.dtype == object and _maxabs(a) < _SAFE:
        return a.astype(np.int64)
    return a


class Tensor:
    """Dense exact tensor ``num / den`` over a :class:`Field`."""

    __slots__ = ("field", "num", "den")

    def __init__(self, field: Field, num, den: int = 1):
        num = _as_int_array(num)
        den = int(den)
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if field.p is not None:
            p = field.p
            if den != 1:
                num = num.astype(object) * pow(den % p, -1, p)
                den = 1
            num = np.asarray(np.mod(num, p))
            num = num.astype(np.int64)
        else:
            if den < 0:
                num, den = np.asarray(-num, dtype=num.dtype), -den
            g = _gcd_all(num, den)
            if g > 1:
                num = np.asarray(num // g, dtype=num.dtype)
                den //= g
            if num.size == 0 or not num.any():
                den = 1
            num = _shrink(num)
        self.field = field
        self.num = num
        self.den = den

    # construction ------------------------------------------------------------

    @classmethod
    def from_values(cls, field: Field, data, shape=None) -> Tensor:
        arr = np.array(data, dtype=object)
        if shape is not None:
            arr = arr.reshape(shape)
        vals = [field(x) for x in arr.flat]
        if field.p is not None:
            num = np.array(vals, dtype=object).reshape(arr.shape)
            return cls(field, num)
        den = reduce(math.lcm, (v.denominator for v in vals), 1)
        num = np.array([v.numerator * (den // v.denominator) for v in vals], dtype=object)
        return cls(field, num.reshape(arr.shape), den)

    @classmethod
    def zeros(cls, field: Field, shape) -> Tensor:
        return cls(field, np.zeros(shape, dtype=np.int64))

    @classmethod
    def eye(cls, field: Field, n: int) -> Tensor:
        return cls(field, np.eye(n, dtype=np.int64))

    @classmethod
    def unit_vector(cls, field: Field, n: int, i: int) -> Tensor:
        v = np.zeros(n, dtype=np.int64)
        v[i] = 1
        return cls(field, v)

    @classmethod
    def scalar(cls, field: Field, x) -> Tensor:
        return cls.from_values(field, x, shape=())

    # shape ----------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, ...]:
        return self.num.shape

    @property
    def ndim(self) -> int:
        return self.num.ndim

    @property
    def size(self) -> int:
        return self.num.size

    def reshape(self, *shape) -> Tensor:
        if len(shape) == 1 and isinstance(shape[0], (tuple, list)):
            shape = tuple(shape[0])
        return Tensor(self.field, self.num.reshape(shape), self.den)

    def transpose(self, *axes) -> Tensor:
        return Tensor(self.field, np.transpose(self.num, axes or None), self.den)

    @property
    def T(self) -> Tensor:
        return self.transpose()

    def __getitem__(self, key) -> Tensor:
        return Tensor(self.field, np.asarray(self.num[key], dtype=self.num.dtype), self.den)

    def item(self, *idx):
        """The scalar at ``idx`` as a Fraction (Q) or residue int (F_p)."""
        v = int(self.num[idx] if idx else self.num)
        if self.field.p is None:
            return Fraction(v, self.den)
        return v

    # arithmetic -----------------------------------------------------------

    def _check(self, other: Tensor):
        if not isinstance(other, Tensor):
            raise TypeError("expected a Tensor")
        if other.field != self.field:
            raise FieldMismatch(f"{self.field!r} vs {other.field!r}")
        if other.shape != self.shape:
            raise ShapeMismatch(f"{self.shape} vs {other.shape}")

    def _combine(self, other: Tensor, sign: int) -> Tensor:
        self._check(other)
        if self.field.p is not None:
            a = self.num.astype(np.int64)
            b = other.num.astype(np.int64)
            return Tensor(self.field, a + b if sign > 0 else a - b)
        L = math.lcm(self.den, other.den)
        fa, fb = L // self.den, L // other.den
        a, b = self.num, other.num
        if _maxabs(a) * fa + _maxabs(b) * fb >= _SAFE:
            a, b = a.astype(object), b.astype(object)
        out = a * fa + b * fb if sign > 0 else a * fa - b * fb
        return Tensor(self.field, out, L)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return Tensor(self.field, -self.num.astype(object), self.den)

    def scale(self, s) -> Tensor:
        s = self.field(s)
        if self.field.p is not None:
            return Tensor(self.field, self.num.astype(object) * int(s))
        return Tensor(self.field, self.num.astype(object) * s.numerator, self.den * s.denominator)

    def __mul__(self, s):
        if isinstance(s, Tensor):
            return NotImplemented
        return self.scale(s)

    __rmul__ = __mul__

    def __matmul__(self, other: Tensor) -> Tensor:
        if self.ndim == 2 and other.ndim == 2:
            return ein("ij,jk->ik", self, other)
        if self.ndim == 2 and other.ndim == 1:
            return ein("ij,j->i", self, other)
        return NotImplemented

    # comparison -----------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Tensor):
            return NotImplemented
        return (
            self.field == other.field
            and self.shape == other.shape
            and self.den == other.den
            and bool(np.all(self.num == other.num))
        )

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __hash__(self):
        return hash((self.field, self.shape, self.den, tuple(int(x) for x in self.num.flat)))

    def is_zero(self) -> bool:
        return not self.num.any()

    def first_nonzero(self) -> tuple[int, ...] | None:
        idx = np.argwhere(self.num != 0)
        if len(idx) == 0:
            return None
        return tuple(int(i) for i in idx[0])

    def count_nonzero(self) -> int:
        return int(np.count_nonzero(self.num != 0))

    # export -----------------------------------------------------------------

    def values(self) -> np.ndarray:
        out = np.empty(self.shape, dtype=object)
        for idx in np.ndindex(*self.shape):
            out[idx] = self.item(*idx)
        return out

    def tolist(self):
        return self.values().tolist()

    def to_strings(self):
        out = np.empty(self.shape, dtype=object)
        for idx in np.ndindex(*self.shape):
            out[idx] = str(self.item(*idx))
        return out.tolist()

    def __repr__(self):
        return f"Tensor({self.field}, shape={self.shape}, {self.to_strings()!r})"


def stack(tensors: list[Tensor], field: Field | None = None, shape=None) -> Tensor:
    """Stack tensors of equal shape along a new leading axis."""
    if not tensors:
        if field is None or shape is None:
            raise ValueError("empty stack needs field and shape")
        return Tensor.zeros(field, (0, *shape))
    f = tensors[0].field
    for t in tensors[1:]:
        if t.field != f:
            raise FieldMismatch("stack over mixed fields")
    if f.p is not None:
        return Tensor(f, np.stack([t.num.astype(np.int64) for t in tensors]))
    L = reduce(math.lcm, (t.den for t in tensors), 1)
    nums = [t.num.astype(object) * (L // t.den) for t in tensors]
    return Tensor(f, np.stack(nums), L)


def concat(tensors: list[Tensor], axis: int = 0) -> Tensor:
    f = tensors[0].field
    if f.p is not None:
        return Tensor(f, np.concatenate([t.num.astype(np.int64) for t in tensors], axis=axis))
    L = reduce(math.lcm, (t.den for t in tensors), 1)
    return Tensor(f, np.concatenate([t.num.astype(object) * (L // t.den) for t in tensors], axis=axis), L)


def _parse_subscripts(subscripts: str, tensors) -> tuple[list[str], str]:
    if "->" not in subscripts:
        raise ValueError("ein needs explicit output subscripts")
    lhs, out = subscripts.replace(" ", "").split("->")
    ins = lhs.split(",")
    if len(ins) != len(tensors):
        raise ValueError(f"{len(ins)} operands in {subscripts!r}, got {len(tensors)} tensors")
    return ins, out


def ein(subscripts: str, *tensors: Tensor) -> Tensor:
    """Exact ``numpy.einsum`` over tensors sharing one field."""
    field = tensors[0].field
    for t in tensors[1:]:
        if t.field != field:
            raise FieldMismatch(f"{field!r} vs {t.field!r}")
    ins, out = _parse_subscripts(subscripts, tensors)
    dims: dict[str, int] = {}
    for sub, t in zip(ins, tensors):
        letters = sub.replace("...", "")
        if "..." not in sub and len(letters) != t.ndim:
            raise ShapeMismatch(f"operand {sub!r} vs shape {t.shape}")
        if "..." in sub:
            continue
        for ch, n in zip(letters, t.shape):
            if dims.setdefault(ch, n) != n:
                raise ShapeMismatch(f"index {ch!r}: {dims[ch]} vs {n}")
    summed = 1
    for ch, n in dims.items():
        if ch not in out:
            summed *= n
    bound = summed
    for t in tensors:
        bound *= max(1, _maxabs(t.num))
    if bound >= _SAFE:
        nums = [t.num.astype(object) for t in tensors]
    else:
        nums = [t.num.astype(np.int64) for t in tensors]
    exact = nums[0].dtype == object
    res = np.einsum(subscripts, *nums, optimize=len(tensors) > 2)
    # a 0-d object result comes back as a Python int; keep it out of uint64
    res = np.asarray(res, dtype=object if exact else np.int64)
    den = 1
    for t in tensors:
        den *= t.den
    return Tensor(field, res, den)


def contract(t: Tensor, u: Tensor, axes: list[tuple[int, int]]) -> Tensor:
    """Contract axis pairs ``(i, j)`` of ``t`` and ``u``; free axes of ``t`` come first."""
    if t.field != u.field:
        raise FieldMismatch(f"{t.field!r} vs {u.field!r}")
    letters = iter("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ")
    ts = [next(letters) for _ in range(t.ndim)]
    us = [next(letters) for _ in range(u.ndim)]
    for i, j in axes:
        if t.shape[i] != u.shape[j]:
            raise ShapeMismatch(f"axis {i} of {t.shape} vs axis {j} of {u.shape}")
        us[j] = ts[i]
    paired_t = {i for i, _ in axes}
    paired_u = {j for _, j in axes}
    out = [c for k, c in enumerate(ts) if k not in paired_t] + [c for k, c in enumerate(us) if k not in paired_u]
    return ein(f"{''.join(ts)},{''.join(us)}->{''.join(out)}", t, u)


# ---------------------------------------------------------------------------
# elimination


def _sparse_rows(m: Tensor) -> list[dict[int, object]]:
    rows = []
    num = m.num
    for r in range(m.shape[0]):
        nz = np.nonzero(num[r])[0]
        if len(nz):
            rows.append({int(c): int(num[r, c]) for c in nz})
    return rows


def _rref_sparse(rows, p: int | None) -> dict[int, dict[int, object]]:
    """Gauss-Jordan on sparse rows; returns {pivot column: normalized row}."""
    piv: dict[int, dict[int, object]] = {}
    for row in rows:
        r = dict(row) if p is None else {c: v % p for c, v in row.items() if v % p}
        hits = [(c, r[c]) for c in r if c in piv]
        for c, coef in hits:
            for j, v in piv[c].items():
                nv = r.get(j, 0) - coef * v
                if p is not None:
                    nv %= p
                if nv:
                    r[j] = nv
                else:
                    r.pop(j, None)
        if not r:
            continue
        pc = min(r)
        if p is None:
            inv = Fraction(1) / r[pc]
            r = {j: Fraction(v) * inv for j, v in r.items()}
        else:
            inv = pow(r[pc], p - 2, p)
            r = {j: v * inv % p for j, v in r.items()}
        for other in piv.values():
            coef = other.get(pc)
            if coef:
                for j, v in r.items():
                    nv = other.get(j, 0) - coef * v
                    if p is not None:
                        nv %= p
                    if nv:
                        other[j] = nv
                    else:
                        other.pop(j, None)
        piv[pc] = r
    return piv


def _dense(field: Field, piv: dict[int, dict], ncols: int) -> tuple[Tensor, tuple[int, ...]]:
    pivots = tuple(sorted(piv))
    data = [[0] * ncols for _ in pivots]
    for i, pc in enumerate(pivots):
        for j, v in piv[pc].items():
            data[i][j] = v
    if not pivots:
        return Tensor.zeros(field, (0, ncols)), pivots
    return Tensor.from_values(field, data), pivots


def rref(m: Tensor) -> tuple[Tensor, tuple[int, ...]]:
    """Reduced row-echelon form (zero rows dropped) and pivot columns."""
    if m.ndim != 2:
        raise ShapeMismatch("rref needs a matrix")
    piv = _rref_sparse(_sparse_rows(m), m.field.p)
    return _dense(m.field, piv, m.shape[1])


def rank(m: Tensor) -> int:
    return len(_rref_sparse(_sparse_rows(m), m.field.p))


def inverse(m: Tensor) -> Tensor:
    n = m.shape[0]
    if m.shape != (n, n):
        raise ShapeMismatch("inverse needs a square matrix")
    aug = concat([m, Tensor.eye(m.field, n)], axis=1)
    r, pivots = rref(aug)
    if pivots[:n] != tuple(range(n)) or len(pivots) != n:
        raise SingularMatrix("matrix is singular")
    return r[:, n:]


# ---------------------------------------------------------------------------
# subspaces and maps


class Subspace:
    """A subspace of k^n held as a canonical reduced row-echelon basis."""

    __slots__ = ("basis", "pivots")

    def __init__(self, basis: Tensor, pivots: tuple[int, ...]):
        self.basis = basis
        self.pivots = tuple(pivots)

    @classmethod
    def span(cls, vectors: Tensor, ambient_dim: int | None = None) -> Subspace:
        if vectors.ndim == 1:
            vectors = vectors.reshape(1, -1)
        if ambient_dim is not None and vectors.shape[1] != ambient_dim:
            raise ShapeMismatch(f"vectors of length {vectors.shape[1]} in k^{ambient_dim}")
        return cls(*rref(vectors))

    @classmethod
    def zero(cls, field: Field, n: int) -> Subspace:
        return cls(Tensor.zeros(field, (0, n)), ())

    @classmethod
    def full(cls, field: Field, n: int) -> Subspace:
        return cls(Tensor.eye(field, n), tuple(range(n)))

    @property
    def field(self) -> Field:
        return self.basis.field

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    @property
    def ambient_dim(self) -> int:
        return self.basis.shape[1]

    def __eq__(self, other):
        return isinstance(other, Subspace) and self.basis == other.basis

    def __hash__(self):
        return hash(self.basis)

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim}, basis={self.basis.to_strings()})"

    def embedding(self) -> Tensor:
        """Matrix [ambient, dim] sending coordinates to ambient vectors."""
        return self.basis.T

    def coords(self, v: Tensor, axis: int = -1, check: bool = True) -> Tensor:
        """Coordinates of ``v`` (along ``axis``) in the echelon basis."""
        if v.shape[axis] != self.ambient_dim:
            raise ShapeMismatch(f"axis of length {v.shape[axis]} vs ambient {self.ambient_dim}")
        moved = Tensor(v.field, np.moveaxis(v.num, axis, -1), v.den)
        c = moved[..., list(self.pivots)] if self.pivots else Tensor.zeros(v.field, (*moved.shape[:-1], 0))
        if check:
            back = ein("...k,kn->...n", c, self.basis) if self.dim else Tensor.zeros(v.field, moved.shape)
            if back != moved:
                raise NotInSubspace("vector not in subspace")
        return Tensor(v.field, np.moveaxis(c.num, -1, axis), c.den)

    def contains(self, v: Tensor) -> bool:
        try:
            self.coords(v)
        except NotInSubspace:
            return False
        return True

    def contains_subspace(self, other: Subspace) -> bool:
        return all(self.contains(other.basis[i]) for i in range(other.dim))

    def __add__(self, other: Subspace) -> Subspace:
        return Subspace.span(concat([self.basis, other.basis]), self.ambient_dim)

    def intersect(self, other: Subspace) -> Subspace:
        # x = a B1 = b B2  <=>  (a, -b) in ker [B1; B2]^T
        stacked = concat([self.basis, -other.basis])
        ker = kernel_of(LinMap(stacked.T))
        vecs = ein("ka,an->kn", ker.basis[:, : self.dim], self.basis)
        return Subspace.span(vecs, self.ambient_dim)


@dataclass(frozen=True)
class LinMap:
    """Linear map with matrix of shape [codomain_dim, domain_dim]."""

    matrix: Tensor

    @classmethod
    def identity(cls, field: Field, n: int) -> LinMap:
        return cls(Tensor.eye(field, n))

    @classmethod
    def zero(cls, field: Field, cod: int, dom: int) -> LinMap:
        return cls(Tensor.zeros(field, (cod, dom)))

    @property
    def field(self) -> Field:
        return self.matrix.field

    @property
    def domain_dim(self) -> int:
        return self.matrix.shape[1]

    @property
    def codomain_dim(self) -> int:
        return self.matrix.shape[0]

    def __call__(self, v: Tensor) -> Tensor:
        return ein("ij,j->i", self.matrix, v)

    def __matmul__(self, other: LinMap) -> LinMap:
        if self.domain_dim != other.codomain_dim:
            raise ShapeMismatch("cannot compose")
        return LinMap(ein("ij,jk->ik", self.matrix, other.matrix))

    def kernel(self) -> Subspace:
        return kernel_of(self)

    def image(self) -> Subspace:
        return image_of(self)

    def rank(self) -> int:
        return rank(self.matrix)

    def is_bijective(self) -> bool:
        return self.domain_dim == self.codomain_dim == self.rank()

    def inverse(self) -> LinMap:
        return LinMap(inverse(self.matrix))


def kernel_of(f: LinMap | Tensor) -> Subspace:
    m = f.matrix if isinstance(f, LinMap) else f
    n = m.shape[1]
    r, pivots = rref(m)
    free = [j for j in range(n) if j not in set(pivots)]
    if not free:
        return Subspace.zero(m.field, n)
    vecs = []
    for j in free:
        v = [m.field.zero] * n
        v[j] = m.field.one
        for i, pc in enumerate(pivots):
            v[pc] = m.field.neg(r.item(i, j))
        vecs.append(v)
    return Subspace.span(Tensor.from_values(m.field, vecs), n)


def image_of(f: LinMap | Tensor) -> Subspace:
    m = f.matrix if isinstance(f, LinMap) else f
    return Subspace.span(m.T, m.shape[0])


def quotient(ambient_dim: int, relations: Subspace) -> tuple[LinMap, LinMap]:
    """Projection onto k^n / relations and a section, in complement coordinates."""
    if relations.ambient_dim != ambient_dim:
        raise ShapeMismatch("relations live in a different space")
    field = relations.field
    pivots = set(relations.pivots)
    free = [j for j in range(ambient_dim) if j not in pivots]
    proj = np.zeros((len(free), ambient_dim), dtype=object)
    sect = np.zeros((ambient_dim, len(free)), dtype=object)
    B = relations.basis.values()
    for t, j in enumerate(free):
        proj[t, j] = field.one
        sect[j, t] = field.one
        for i, pc in enumerate(relations.pivots):
            proj[t, pc] = field.neg(B[i, j])
    shape_p = (len(free), ambient_dim)
    shape_s = (ambient_dim, len(free))
    return (
        LinMap(Tensor.from_values(field, proj, shape=shape_p)),
        LinMap(Tensor.from_values(field, sect, shape=shape_s)),
    )


@dataclass(frozen=True)
class AffineSpace:
    """Solution set ``particular + homogeneous`` (particular is None when empty)."""

    particular: Tensor | None
    homogeneous: Subspace

    @property
    def is_empty(self) -> bool:
        return self.particular is None

    @property
    def is_unique(self) -> bool:
        return self.particular is not None and self.homogeneous.dim == 0

    def contains(self, v: Tensor) -> bool:
        return self.particular is not None and self.homogeneous.contains(v - self.particular)

    def __eq__(self, other):
        if not isinstance(other, AffineSpace):
            return NotImplemented
        if self.is_empty or other.is_empty:
            return self.is_empty and other.is_empty and self.homogeneous == other.homogeneous
        return self.homogeneous == other.homogeneous and self.contains(other.particular)


def solve_linear_system(constraints: list, rhs: list, *, allow_empty: bool = False) -> AffineSpace:
    """Solve the stacked system ``C_i x = b_i``.

    Raises :class:`Inconsistent` when no solution exists, unless ``allow_empty``
    is set, in which case the particular part is ``None``.
    """
    mats = [c.matrix if isinstance(c, LinMap) else c for c in constraints]
    if not mats:
        raise ValueError("no constraints")
    field = mats[0].field
    n = mats[0].shape[1]
    for m in mats:
        if m.shape[1] != n:
            raise ShapeMismatch("constraints act on different spaces")
    A = concat(mats, axis=0)
    b = concat([v.reshape(-1) for v in rhs], axis=0)
    if b.shape[0] != A.shape[0]:
        raise ShapeMismatch("rhs length does not match constraint rows")
    aug = concat([A, b.reshape(-1, 1)], axis=1)
    r, pivots = rref(aug)
    homogeneous = kernel_of(A)
    if n in pivots:
        if allow_empty:
            return AffineSpace(None, homogeneous)
        raise Inconsistent("linear system has no solution")
    x = [field.zero] * n
    for i, pc in enumerate(pivots):
        x[pc] = r.item(i, n)
    part = Tensor.from_values(field, x) if n else Tensor.zeros(field, (0,))
    if ein("ij,j->i", A, part) != b:
        raise AssertionError("particular solution failed substitution")
    return AffineSpace(part, homogeneous)


def linear_operator(fn, shape, field: Field) -> Tensor:
    """Matrix [len(residual), prod(shape)] of a linear ``fn`` on tensors of ``shape``.

    ``fn`` may return one Tensor or a list of Tensors (flattened and stacked).
    """
    size = int(np.prod(shape)) if shape else 1
    cols = []
    for k in range(size):
        e = np.zeros(size, dtype=np.int64)
        e[k] = 1
        out = fn(Tensor(field, e.reshape(shape)))
        if isinstance(out, Tensor):
            out = [out]
        cols.append(concat([o.reshape(-1) for o in out]) if out else Tensor.zeros(field, (0,)))
    if not cols:
        probe = fn(Tensor.zeros(field, shape))
        if isinstance(probe, Tensor):
            probe = [probe]
        rows = sum(o.size for o in probe)
        return Tensor.zeros(field, (rows, 0))
    return stack(cols).T


def solve_homogeneous(fn, shape, field: Field) -> Subspace:
    """All tensors ``x`` of ``shape`` with ``fn(x) == 0`` (flattened coordinates)."""
    return kernel_of(linear_operator(fn, shape, field))


def restrict(op: Tensor, dom: Subspace, cod: Subspace | None = None) -> Tensor:
    """Matrix of an ambient operator [n_out, n_in] restricted to subspaces."""
    cod = cod or dom
    images = ein("on,kn->ko", op, dom.basis)
    return cod.coords(images, axis=-1).T
