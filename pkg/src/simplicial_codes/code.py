"""Defining sets, the codes C_D they define, and exact weight enumeration.

A defining set D is an ordered list of m-tuples over GF(2^n), stored as a
``(|D|, m)`` uint8 array of coefficient integers.  The code C_D has the
``m x |D|`` generator matrix whose column j is the j-th element of D.

Weights are computed by enumerating every message.  GF(2^n)-linear
combinations are F_2-linear in the message bits, so a code with k generator
rows is enumerated as 2^(n k) XOR-combinations of n k packed bit-plane rows;
a coordinate of a codeword is nonzero iff any of its n bit-planes is set.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import CapacityError, UsageError
from .field import FieldSpec
from .simplicial import (
    SimplicialComplex,
    SupportVector,
    as_mask,
    mask_to_subset,
    phi,
    popcount,
    submasks,
)

MESSAGE_BUDGET = 1 << 24
STORE_BUDGET = 1 << 20
# entries of a materialized codeword store (words * length)
STORE_ENTRIES = 1 << 27
_BLOCK_BYTES = 1 << 25
# elements of GF(2^n)^m materialized when forming a complement
SET_BUDGET = 1 << 22
# uint64 word operations in one full message enumeration
WORK_BUDGET = 1 << 33


# ---------------------------------------------------------------------------
# element encoding


def element_keys(elements: np.ndarray, q: int) -> np.ndarray:
    """Canonical sort key: coordinates read left to right as base-q digits."""
    keys = np.zeros(len(elements), dtype=np.int64)
    for j in range(elements.shape[1]):
        keys = keys * q + elements[:, j]
    return keys


def decode_keys(keys: np.ndarray, q: int, m: int) -> np.ndarray:
    out = np.empty((len(keys), m), dtype=np.uint8)
    rest = np.asarray(keys, dtype=np.int64).copy()
    for j in range(m - 1, -1, -1):
        out[:, j] = rest % q
        rest //= q
    return out


def _canonical(elements: np.ndarray, q: int) -> np.ndarray:
    keys = element_keys(elements, q)
    order = np.argsort(keys, kind="stable")
    if len(keys) > 1 and np.any(np.diff(keys[order]) == 0):
        raise UsageError("defining set has duplicate elements")
    out = np.ascontiguousarray(elements[order])
    out.flags.writeable = False
    return out


def combine_parts(parts: Sequence[Sequence[int]], m: int) -> np.ndarray:
    """All elements d_1 + eta d_2 + ... with d_i drawn from parts[i] (masks)."""
    arrays = [np.asarray(sorted(p), dtype=np.int64) for p in parts]
    if any(len(a) == 0 for a in arrays):
        return np.zeros((0, m), dtype=np.uint8)
    grids = np.meshgrid(*arrays, indexing="ij")
    flat = [g.ravel() for g in grids]
    out = np.zeros((len(flat[0]), m), dtype=np.uint8)
    for j in range(m):
        col = np.zeros(len(flat[0]), dtype=np.int64)
        for i, d in enumerate(flat):
            col |= ((d >> j) & 1) << i
        out[:, j] = col
    return out


def _part_masks(part, m: int | None) -> tuple[tuple[int, ...], int | None]:
    if isinstance(part, SimplicialComplex):
        return part.members, part.m
    masks, dims = set(), set()
    for x in part:
        if isinstance(x, SupportVector):
            dims.add(x.m)
        masks.add(as_mask(x, m))
    if len(dims) > 1:
        raise UsageError("part mixes vectors of different dimension")
    return tuple(sorted(masks)), (dims.pop() if dims else None)


def part_text(masks: Sequence[int], m: int) -> str:
    """Compact text for a part: a simplex generator like '1,2', or explicit vectors."""
    top = 0
    for x in masks:
        top |= x
    if sorted(masks) == submasks(top):
        return ",".join(map(str, mask_to_subset(top))) or "{}"
    return "vectors:" + ",".join(
        "".join(str((x >> i) & 1) for i in range(m)) for x in masks
    )


@dataclass(frozen=True, eq=False)
class DefiningSet:
    field: FieldSpec
    m: int
    elements: np.ndarray
    kind: str = "explicit"  # parts | punctured | complement | explicit
    parts: tuple[tuple[int, ...], ...] | None = None
    base: DefiningSet | None = None

    def __len__(self):
        return len(self.elements)

    def keys(self) -> np.ndarray:
        return element_keys(self.elements, self.field.q)

    def tuples(self) -> list[tuple[int, ...]]:
        return [tuple(int(x) for x in row) for row in self.elements]

    def has_zero(self) -> bool:
        return bool(len(self.elements)) and not self.elements[0].any()

    def root_parts(self) -> tuple[tuple[int, ...], ...] | None:
        """Parts of the parts-built set this one was derived from, if any."""
        node = self
        while node is not None:
            if node.kind == "parts":
                return node.parts
            node = node.base
        return None

    def describe(self) -> str:
        f = self.field
        if self.kind == "parts":
            body = " | ".join(part_text(p, self.m) for p in self.parts)
            return f"parts[{body}] n={f.n} modulus={f.modulus} m={self.m}"
        if self.kind in ("punctured", "complement"):
            return f"{self.kind}({self.base.describe()})"
        return f"explicit({len(self)} elements) n={f.n} modulus={f.modulus} m={self.m}"


def defining_set_from_parts(parts: Sequence, field: FieldSpec, m: int | None = None) -> DefiningSet:
    """D = D_1 + eta D_2 + ... + eta^(n-1) D_n.

    Each part is a :class:`SimplicialComplex` or an iterable of vectors of F_2^m
    (masks or :class:`SupportVector`).
    """
    if len(parts) != field.n:
        raise UsageError(f"need {field.n} parts for {field}, got {len(parts)}")
    masks = []
    for p in parts:
        pm, pdim = _part_masks(p, m)
        if pdim is not None:
            if m is not None and pdim != m:
                raise UsageError(f"part lives in F_2^{pdim}, expected F_2^{m}")
            m = pdim
        if not pm:
            raise UsageError("defining-set parts must be nonempty")
        masks.append(pm)
    if m is None:
        raise UsageError("ambient dimension m is required")
    for pm in masks:
        if any(x >> m for x in pm):
            raise UsageError(f"part vector does not fit in F_2^{m}")
    elements = _canonical(combine_parts(masks, m), field.q)
    return DefiningSet(field, m, elements, "parts", tuple(masks))


def defining_set_from_elements(field: FieldSpec, elements: Iterable[Sequence], m: int | None = None) -> DefiningSet:
    rows = [[int(x) for x in e] for e in elements]
    if m is None:
        if not rows:
            raise UsageError("ambient dimension m is required for an empty set")
        m = len(rows[0])
    arr = np.asarray(rows, dtype=np.int64).reshape(len(rows), m)
    if arr.size and (arr.min() < 0 or arr.max() >= field.q):
        raise UsageError(f"entries must lie in 0..{field.q - 1}")
    return DefiningSet(field, m, _canonical(arr.astype(np.uint8), field.q))


def puncture(D: DefiningSet) -> DefiningSet:
    """D* = D without the zero tuple."""
    elements = D.elements[1:] if D.has_zero() else D.elements
    return DefiningSet(D.field, D.m, elements, "punctured", base=D)


def _full_space_size(field: FieldSpec, m: int) -> int:
    size = field.q ** m
    if size > SET_BUDGET:
        raise CapacityError(f"GF({field.q})^{m} as a set", size, SET_BUDGET)
    return size


def complement(D: DefiningSet) -> DefiningSet:
    """GF(2^n)^m minus D.

    For a parts-built D the result is assembled from the n disjoint strata
    D_1 x ... x D_{i-1} x D_i^c x F_2^m x ... x F_2^m and checked against the
    plain set difference.
    """
    q, m = D.field.q, D.m
    full = np.arange(_full_space_size(D.field, m), dtype=np.int64)
    plain = np.setdiff1d(full, D.keys(), assume_unique=True)
    if D.kind == "parts":
        everything = tuple(range(1 << m))
        strata = []
        for i, part in enumerate(D.parts):
            inside = set(part)
            rest = tuple(x for x in everything if x not in inside)
            pieces = list(D.parts[:i]) + [rest] + [everything] * (len(D.parts) - i - 1)
            strata.append(element_keys(combine_parts(pieces, m), q))
        joined = np.concatenate(strata) if strata else np.zeros(0, dtype=np.int64)
        if len(joined) != len(plain) or not np.array_equal(np.sort(joined), plain):
            raise AssertionError("structured complement disagrees with set difference")
    elements = decode_keys(plain, q, m)
    elements.flags.writeable = False
    return DefiningSet(D.field, m, elements, "complement", base=D)


# ---------------------------------------------------------------------------
# linear algebra over GF(2^n)


def row_reduce(matrix: np.ndarray, field: FieldSpec) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over GF(2^n); returns (nonzero rows, pivot columns)."""
    M = np.array(matrix, dtype=np.uint8, copy=True)
    mul, inv = field.mul_table, field.inv_table
    rows, cols = M.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(M[r:, c])
        if not len(nz):
            continue
        p = r + nz[0]
        if p != r:
            M[[r, p]] = M[[p, r]]
        M[r] = mul[inv[M[r, c]], M[r]]
        factors = M[:, c].copy()
        factors[r] = 0
        M ^= mul[factors[:, None], M[r][None, :]]
        pivots.append(c)
        r += 1
    return M[:r], pivots


def rank(matrix: np.ndarray, field: FieldSpec) -> int:
    return len(row_reduce(matrix, field)[1])


# ---------------------------------------------------------------------------
# codes


@dataclass(frozen=True)
class WeightDistribution:
    length: int
    A: dict[int, int]
    Z: dict[int, int]
    z0: int

    @property
    def nonzero_weights(self) -> list[int]:
        return sorted(w for w in self.A if w > 0)

    @property
    def num_weights(self) -> int:
        return len(self.nonzero_weights)

    def rows(self) -> list[dict]:
        return [{"w": w, "A": self.A[w], "Z": self.Z[w]} for w in sorted(self.A)]


@dataclass(eq=False)
class LinearCode:
    """Code spanned by the rows of ``gen_matrix`` over ``field``."""

    field: FieldSpec
    gen_matrix: np.ndarray
    label: str = ""
    defining_set: DefiningSet | None = dc_field(default=None, repr=False)
    budget: int = dc_field(default=MESSAGE_BUDGET, repr=False)

    def __post_init__(self):
        G = np.array(self.gen_matrix, dtype=np.uint8)
        if G.ndim != 2:
            raise UsageError("generator matrix must be 2-dimensional")
        if G.size and G.max() >= self.field.q:
            raise UsageError(f"generator entries must lie in 0..{self.field.q - 1}")
        G.flags.writeable = False
        self.gen_matrix = G
        self._store = None

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def length(self) -> int:
        return self.gen_matrix.shape[1]

    @property
    def rows(self) -> int:
        return self.gen_matrix.shape[0]

    @cached_property
    def dimension(self) -> int:
        return rank(self.gen_matrix, self.field)

    @cached_property
    def message_weights(self) -> np.ndarray:
        return message_weights(self, self.budget)

    @cached_property
    def distribution(self) -> WeightDistribution:
        return weight_distribution(self)

    @property
    def min_distance(self) -> int:
        return minimum_distance(self)

    @property
    def parameters(self) -> tuple[int, int, int]:
        return self.length, self.dimension, self.min_distance

    def codewords(self, budget: int = STORE_BUDGET) -> np.ndarray:
        """Every distinct codeword, one per row (spans a reduced basis)."""
        if self._store is None:
            basis, _ = row_reduce(self.gen_matrix, self.field)
            count = self.q ** len(basis)
            if count > budget:
                raise CapacityError("codeword store", count, budget)
            if count * max(self.length, 1) > STORE_ENTRIES:
                raise CapacityError("codeword store entries", count * self.length, STORE_ENTRIES)
            mul = self.field.mul_table
            words = np.zeros((1, self.length), dtype=np.uint8)
            for row in basis:
                words = np.concatenate([words ^ mul[lam][row] for lam in range(self.q)])
            words.flags.writeable = False
            self._store = words
        return self._store

    def __str__(self):
        d = self.min_distance if self.dimension else "-"
        return f"[{self.length}, {self.dimension}, {d}]_{self.q}"


def build_code(D: DefiningSet, budget: int = MESSAGE_BUDGET) -> LinearCode:
    if len(D) == 0:
        raise UsageError("cannot build a code from an empty defining set")
    return LinearCode(D.field, D.elements.T.copy(), label=D.describe(), defining_set=D,
                      budget=budget)


def codeword_weight(v: Sequence, D: DefiningSet) -> int:
    """Hamming weight of (v . d) over d in D, computed directly."""
    v = np.asarray([int(x) for x in v], dtype=np.uint8)
    if len(v) != D.m:
        raise UsageError(f"message must have {D.m} coordinates")
    if not len(D):
        return 0
    prods = D.field.mul_table[v[None, :], D.elements]
    return int(np.count_nonzero(np.bitwise_xor.reduce(prods, axis=1)))


def message_index(v: Sequence, q: int) -> int:
    """Position of message v in enumeration order (coordinate 1 least significant)."""
    idx = 0
    for x in reversed(list(v)):
        idx = idx * q + int(x)
    return idx


def message_at(index: int, q: int, k: int) -> tuple[int, ...]:
    out = []
    for _ in range(k):
        out.append(index % q)
        index //= q
    return tuple(out)


def _pack_bits(bits: np.ndarray) -> np.ndarray:
    """Pack 0/1 values along the last axis into uint64 words (little-endian bits)."""
    packed = np.packbits(bits.astype(np.uint8), axis=-1, bitorder="little")
    pad = (-packed.shape[-1]) % 8
    if pad or packed.shape[-1] == 0:
        pad = pad or 8
        widths = [(0, 0)] * (packed.ndim - 1) + [(0, pad)]
        packed = np.pad(packed, widths)
    return np.ascontiguousarray(packed).view(np.uint64)


def generator_planes(code: LinearCode) -> np.ndarray:
    """Packed bit-planes of eta^b * g_r, shape (n k, n, words); row t = r n + b."""
    n = code.field.n
    mul = code.field.mul_table
    G = code.gen_matrix
    scaled = np.stack([mul[1 << b][G] for b in range(n)], axis=1)  # (k, n_b, len)
    bits = np.stack([(scaled >> p) & 1 for p in range(n)], axis=2)  # (k, n_b, n_p, len)
    packed = _pack_bits(bits)
    return packed.reshape(G.shape[0] * n, n, packed.shape[-1])


def message_weights(code: LinearCode, budget: int = MESSAGE_BUDGET) -> np.ndarray:
    """Weight of c(v) for every message v, indexed by :func:`message_index`."""
    nbits = code.field.n * code.rows
    total = 1 << nbits
    if total > budget:
        raise CapacityError(f"message enumeration of {code.q}^{code.rows}", total, budget)
    n, words = code.field.n, (code.length + 63) // 64
    if total * n * words > WORK_BUDGET:
        raise CapacityError("enumeration work (messages x packed words)", total * n * words,
                            WORK_BUDGET)
    planes = generator_planes(code)
    inner = nbits
    while inner > 0 and (1 << inner) * n * words * 8 > _BLOCK_BYTES:
        inner -= 1
    block = np.zeros((1, n, words), dtype=np.uint64)
    for t in range(inner):
        block = np.concatenate([block, block ^ planes[t]])
    size = 1 << inner
    out = np.empty(total, dtype=np.int64)
    for outer in range(1 << (nbits - inner)):
        offset = np.zeros((n, words), dtype=np.uint64)
        for b in range(nbits - inner):
            if (outer >> b) & 1:
                offset ^= planes[inner + b]
        chunk = block ^ offset
        support = np.bitwise_or.reduce(chunk, axis=1) if n > 1 else chunk[:, 0]
        out[outer * size:(outer + 1) * size] = np.bitwise_count(support).sum(axis=1)
    return out


def packed_codeword_set(code: LinearCode, budget: int = MESSAGE_BUDGET) -> np.ndarray:
    """Sorted, deduplicated packed codewords of a binary code (all messages)."""
    if code.field.n != 1:
        raise UsageError("packed codeword sets are only defined for binary codes")
    nbits = code.rows
    if (1 << nbits) > budget:
        raise CapacityError("binary codeword set", 1 << nbits, budget)
    planes = generator_planes(code)[:, 0, :]
    words = np.zeros((1, planes.shape[1]), dtype=np.uint64)
    for t in range(nbits):
        words = np.concatenate([words, words ^ planes[t]])
    return np.unique(words, axis=0)


def weight_distribution(code: LinearCode) -> WeightDistribution:
    """A_i from Z_i / z0, where Z_i counts messages and z0 is the kernel size."""
    weights = code.message_weights
    values, counts = np.unique(weights, return_counts=True)
    Z = {int(w): int(c) for w, c in zip(values, counts)}
    z0 = code.q ** (code.rows - code.dimension)
    if Z.get(0) != z0:
        raise AssertionError(f"kernel size {Z.get(0)} != q^(rows - dim) = {z0}")
    A = {}
    for w, c in Z.items():
        if c % z0:
            raise AssertionError(f"Z_{w} = {c} is not a multiple of z0 = {z0}")
        A[w] = c // z0
    if sum(A.values()) != code.q ** code.dimension:
        raise AssertionError("sum of A_i differs from q^dim")
    if code._store is not None:
        direct = Counter(np.count_nonzero(code._store, axis=1).tolist())
        if dict(direct) != A:
            raise AssertionError("codeword store disagrees with message enumeration")
    return WeightDistribution(code.length, A, Z, z0)


def minimum_distance(code: LinearCode) -> int:
    nz = code.distribution.nonzero_weights
    if not nz:
        raise UsageError("minimum distance of the zero code is undefined")
    return nz[0]


# ---------------------------------------------------------------------------
# closed form over GF(8)


def theta_f8(alpha, beta, gamma, L, M, N) -> int:
    """Number of the seven phi-products that equal one."""
    a, b, c = as_mask(alpha), as_mask(beta), as_mask(gamma)
    L, M, N = as_mask(L), as_mask(M), as_mask(N)
    terms = (
        (a, c, b),
        (b, a ^ c, b ^ c),
        (c, b, a ^ c),
        (a ^ b, a, c),
        (a ^ c, b ^ c, a ^ b ^ c),
        (b ^ c, a ^ b ^ c, a ^ b),
        (a ^ b ^ c, a ^ b, a),
    )
    return sum(phi(x, L) * phi(y, M) * phi(z, N) for x, y, z in terms)


def exclusive_parts_condition(L, M, N) -> bool:
    """At least two of L-(M|N), M-(N|L), N-(L|M) are nonempty."""
    L, M, N = as_mask(L), as_mask(M), as_mask(N)
    own = [L & ~(M | N), M & ~(N | L), N & ~(L | M)]
    return sum(1 for x in own if x) >= 2


def closed_form_weight_f8(alpha, beta, gamma, L, M, N) -> tuple[int, int]:
    """Weight of c_{D*}(alpha + w beta + w^2 gamma) for D = Delta_L + w Delta_M + w^2 Delta_N.

    Returns ``(weight, theta)`` with weight = 2^(s-3) (7 - theta), s = |L|+|M|+|N|.
    """
    Lm, Mm, Nm = as_mask(L), as_mask(M), as_mask(N)
    if not (Lm and Mm and Nm):
        raise UsageError("L, M and N must be nonempty")
    theta = theta_f8(alpha, beta, gamma, Lm, Mm, Nm)
    if exclusive_parts_condition(Lm, Mm, Nm):
        assert theta in (0, 1, 3, 7), f"theta = {theta} is excluded under the hypothesis"
    s = popcount(Lm) + popcount(Mm) + popcount(Nm)
    return (7 - theta) << (s - 3), theta


# ---------------------------------------------------------------------------
# plain-text matrix export


def matrix_text(matrix: np.ndarray, field: FieldSpec) -> str:
    """Header line plus one row of space-separated element integers per line."""
    matrix = np.asarray(matrix)
    rows, cols = matrix.shape
    lines = [f"# GF(2^{field.n}) modulus={field.modulus} rows={rows} cols={cols}"]
    lines.extend(" ".join(str(int(x)) for x in row) for row in matrix)
    return "\n".join(lines) + "\n"


def parse_matrix_text(text: str) -> tuple[int, int, np.ndarray]:
    """Inverse of :func:`matrix_text`: returns (n, modulus, matrix)."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("# GF(2^"):
        raise UsageError("missing matrix header")
    head = lines[0][2:].split()
    n = int(head[0][len("GF(2^"):-1])
    fields = dict(tok.split("=", 1) for tok in head[1:])
    rows, cols = int(fields["rows"]), int(fields["cols"])
    body = [[int(x) for x in ln.split()] for ln in lines[1:]]
    matrix = np.asarray(body, dtype=np.uint8).reshape(rows, cols)
    return n, int(fields["modulus"]), matrix
