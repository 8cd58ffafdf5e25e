"""Binary subfield codes of codes over GF(2^n).

The binary generator is built from traces against the ordered basis
1, eta, ..., eta^(n-1).  Rows are grouped by basis element: block k holds
Tr(g_ij eta^k) for every parent row i, so a binary message is
(x_0, ..., x_{n-1}) with x_k paired against block k.  Over GF(8) with
y^3 + y + 1 this ordering is exactly the (G1; G3; G2) stacking.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .code import (
    MESSAGE_BUDGET,
    DefiningSet,
    LinearCode,
    build_code,
    packed_codeword_set,
)
from .errors import CapacityError, UsageError
from .field import FieldSpec, gf
from .simplicial import as_mask, phi, popcount

GF8_DEFAULT = 0b1011


def subfield_generator(G: np.ndarray, field: FieldSpec) -> np.ndarray:
    """Binary (n k) x len matrix with row k*rows + i equal to Tr(G[i] * eta^k)."""
    G = np.asarray(G, dtype=np.uint8)
    mul, tr = field.mul_table, field.trace_table
    blocks = [tr[mul[1 << k][G]] for k in range(field.n)]
    return np.concatenate(blocks, axis=0).astype(np.uint8)


def decompose_matrix(G: np.ndarray, field: FieldSpec) -> list[np.ndarray]:
    """Binary matrices G_1..G_n with G = G_1 + eta G_2 + ... + eta^(n-1) G_n."""
    G = np.asarray(G, dtype=np.uint8)
    return [((G >> i) & 1).astype(np.uint8) for i in range(field.n)]


def subfield_generator_f8_stack(G1, G2, G3) -> np.ndarray:
    """(G1; G3; G2): the GF(8) shortcut, valid only for the modulus y^3 + y + 1."""
    G1, G2, G3 = (np.asarray(g, dtype=np.uint8) for g in (G1, G2, G3))
    if not G1.shape == G2.shape == G3.shape:
        raise UsageError(f"shape mismatch: {G1.shape}, {G2.shape}, {G3.shape}")
    return np.concatenate([G1, G3, G2], axis=0)


def trace_defining_set(D: DefiningSet) -> np.ndarray:
    """Binary image of D: row j holds (Tr(d_j eta^k))_coords for k = 0..n-1, concatenated."""
    f = D.field
    mul, tr = f.mul_table, f.trace_table
    blocks = [tr[mul[1 << k][D.elements]] for k in range(f.n)]
    return np.concatenate(blocks, axis=1).astype(np.uint8)


def subfield_defining_set(D: DefiningSet) -> np.ndarray:
    """D^(2) = {(d_1, d_3, d_2)} for a parts-built D over GF(8), as 3m-bit rows.

    Rows follow the order of D, so column j of C_{D^(2)} matches column j of C_D.
    """
    f = D.field
    if f.n != 3 or f.modulus != GF8_DEFAULT:
        raise UsageError("the (d1, d3, d2) shortcut needs GF(8) with y^3 + y + 1")
    if D.kind != "parts":
        raise UsageError("subfield_defining_set needs a parts-built defining set")
    E = D.elements
    d1, d2, d3 = ((E >> i) & 1 for i in range(3))
    return np.concatenate([d1, d3, d2], axis=1).astype(np.uint8)


@dataclass(eq=False)
class SubfieldCode:
    parent: LinearCode
    gen_matrix_2: np.ndarray
    code: LinearCode

    @property
    def basis(self) -> tuple[int, ...]:
        n = self.parent.field.n
        return tuple(1 << k for k in range(n))

    def parent_ref(self) -> str:
        return f"{self.parent.label} over GF({self.parent.q})"


def build_subfield_code(D: DefiningSet, verify: bool = True,
                        budget: int = MESSAGE_BUDGET) -> SubfieldCode:
    """C_D^(2) from the trace generator, cross-checked against C_{D^(2)}.

    With ``verify`` the two binary codes are compared as codeword sets.
    """
    parent = build_code(D, budget)
    nbits = D.field.n * parent.rows
    if (1 << nbits) > budget:
        raise CapacityError(f"binary message space 2^{nbits}", 1 << nbits, budget)
    binary = gf(1)
    G2 = subfield_generator(parent.gen_matrix, D.field)
    code = LinearCode(binary, G2, label=f"subfield({D.describe()})",
                      defining_set=D, budget=budget)
    if verify:
        if D.kind == "parts" and D.field.n == 3 and D.field.modulus == GF8_DEFAULT:
            image = subfield_defining_set(D)
        else:
            image = trace_defining_set(D)
        other = LinearCode(binary, image.T.copy(), label="C_{D^(2)}")
        a = packed_codeword_set(code, budget)
        b = packed_codeword_set(other, budget)
        if a.shape != b.shape or not np.array_equal(a, b):
            raise AssertionError("trace-generated code differs from C_{D^(2)}")
    return SubfieldCode(parent, G2, code)


def subfield_weight(alpha, beta, gamma, L, M, N) -> int:
    """Weight of c^(2)_{D*}(alpha, beta, gamma): 2^(s-1) (1 - phi(a|L) phi(c|M) phi(b|N))."""
    Lm, Mm, Nm = as_mask(L), as_mask(M), as_mask(N)
    if not (Lm and Mm and Nm):
        raise UsageError("L, M and N must be nonempty")
    s = popcount(Lm) + popcount(Mm) + popcount(Nm)
    return (1 << (s - 1)) * (1 - phi(alpha, Lm) * phi(gamma, Mm) * phi(beta, Nm))


def binary_message_index(blocks, m: int) -> int:
    """Index of the binary message (x_0, ..., x_{n-1}) given as masks of F_2^m."""
    idx = 0
    for k, x in enumerate(blocks):
        idx |= as_mask(x, m) << (k * m)
    return idx
