"""Set partitions, partition-preserving permutation groups and ``f_sim``.

``f_sim(A, p1, p2)`` sums ``prod_i A[s1(i), s2(i)]`` over every ``s1`` that
preserves the blocks of ``p1`` and every ``s2`` that preserves the blocks of
``p2``.  With ``p1`` discrete and ``p2`` indiscrete it is the permanent.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import BudgetExceeded, DimensionMismatch, NotPSD, TooLarge

F_SIM_BUDGET = 10**7
PSD_FLOOR = -1e-10
CONJ_D_RTOL = 1e-9
MAX_PERMANENT_N = 20
INT64_MAX = 2**63 - 1


@dataclass(frozen=True)
class Partition:
    """A set partition of ``0..n-1``; blocks are sorted, ordered by minimum."""

    n: int
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        blocks = tuple(sorted((tuple(sorted(b)) for b in self.blocks if len(b)), key=lambda b: b[0]))
        flat = [i for b in blocks for i in b]
        if sorted(flat) != list(range(self.n)):
            raise ValueError(f"blocks {self.blocks} do not partition range({self.n})")
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def discrete(cls, n: int) -> Partition:
        return cls(n, tuple((i,) for i in range(n)))

    @classmethod
    def indiscrete(cls, n: int) -> Partition:
        return cls(n, (tuple(range(n)),) if n else ())

    @classmethod
    def from_labels(cls, labels) -> Partition:
        """Group indices by equal label."""
        groups: dict = {}
        for i, lab in enumerate(labels):
            groups.setdefault(lab, []).append(i)
        return cls(len(labels), tuple(tuple(g) for g in groups.values()))

    @classmethod
    def parse(cls, text: str, n: int | None = None) -> Partition:
        """Parse ``"0,1|2"`` style notation (blocks by ``|``, indices by ``,``)."""
        blocks = tuple(tuple(int(t) for t in part.split(",") if t.strip())
                       for part in text.split("|") if part.strip())
        if n is None:
            n = sum(len(b) for b in blocks)
        return cls(n, blocks)

    def __str__(self):
        return "|".join(",".join(str(i) for i in b) for b in self.blocks)

    def is_discrete(self) -> bool:
        return len(self.blocks) == self.n

    def is_indiscrete(self) -> bool:
        return len(self.blocks) <= 1


def group_order(p: Partition) -> int:
    order = math.prod(math.factorial(len(b)) for b in p.blocks)
    if order > INT64_MAX:
        raise OverflowError(f"|P| = {order} exceeds 2^63")
    return order


def meet(p1: Partition, p2: Partition) -> Partition:
    """Common refinement: nonempty pairwise block intersections."""
    if p1.n != p2.n:
        raise DimensionMismatch("partitions of different sizes")
    blocks = [tuple(sorted(set(a) & set(b))) for a in p1.blocks for b in p2.blocks]
    return Partition(p1.n, tuple(b for b in blocks if b))


def intersection_order(p1: Partition, p2: Partition) -> int:
    """``|P1 & P2|``: a permutation preserves both iff it preserves the meet."""
    return group_order(meet(p1, p2))


def group_elements(p: Partition) -> np.ndarray:
    """Every permutation preserving the blocks of ``p``, as rows ``sigma[i]``.

    Rows follow lexicographic order of the per-block permutations, blocks
    taken in order.
    """
    per_block = [list(itertools.permutations(b)) for b in p.blocks]
    rows = []
    for choice in itertools.product(*per_block):
        sigma = [0] * p.n
        for block, image in zip(p.blocks, choice):
            for i, j in zip(block, image):
                sigma[i] = j
        rows.append(sigma)
    return np.array(rows, dtype=np.int64).reshape(len(rows), p.n)


@lru_cache(maxsize=None)
def set_partitions(n: int) -> tuple[Partition, ...]:
    """All set partitions of ``0..n-1`` via restricted growth strings."""
    out = []

    def grow(prefix, top):
        if len(prefix) == n:
            out.append(Partition.from_labels(prefix))
            return
        for label in range(top + 2):
            grow(prefix + [label], max(top, label))

    grow([], -1)
    return tuple(out)


def random_partition(n: int, rng: np.random.Generator) -> Partition:
    """Uniformly random set partition of ``0..n-1``."""
    parts = set_partitions(n)
    return parts[int(rng.integers(len(parts)))]


def permanent(M) -> complex:
    """Permanent by Ryser's formula, visiting subsets in Gray-code order."""
    M = np.asarray(M, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise DimensionMismatch("permanent needs a square matrix")
    n = M.shape[0]
    if n > MAX_PERMANENT_N:
        raise TooLarge(f"permanent limited to n <= {MAX_PERMANENT_N}")
    if n == 0:
        return 1 + 0j
    row_sums = np.zeros(n, dtype=complex)
    total = 0j
    subset = 0
    for k in range(1, 2**n):
        # bit flipped between consecutive Gray codes
        j = (k & -k).bit_length() - 1
        if subset >> j & 1:
            row_sums -= M[:, j]
        else:
            row_sums += M[:, j]
        subset ^= 1 << j
        sign = -1 if (n - subset.bit_count()) % 2 else 1
        total += sign * np.prod(row_sums)
    return complex(total)


def _f_sim_bruteforce(A: np.ndarray, p1: Partition, p2: Partition) -> complex:
    g1 = group_elements(p1)
    g2 = group_elements(p2)
    n = A.shape[0]
    total = 0j
    chunk = max(1, 2**18 // max(1, len(g2) * max(n, 1)))
    for start in range(0, len(g1), chunk):
        s1 = g1[start:start + chunk]
        terms = A[s1[:, None, :], g2[None, :, :]]
        total += terms.prod(axis=-1).sum()
    return complex(total)


def f_sim(A, p1: Partition, p2: Partition, budget: int = F_SIM_BUDGET, fast: bool = True) -> complex:
    """The double sum over both block-preserving groups.

    When one partition is discrete the sum collapses to a product of block
    permanents; ``fast=False`` forces the literal double sum.
    """
    A = np.asarray(A, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] != p1.n or p1.n != p2.n:
        raise DimensionMismatch(f"matrix {A.shape} with partitions of size {p1.n}, {p2.n}")
    if fast and p1.is_discrete():
        return complex(math.prod(permanent(A[np.ix_(b, b)]) for b in p2.blocks))
    if fast and p2.is_discrete():
        # prod_i A[s1(i), i] runs over the transposed blocks; perm(B.T) = perm(B)
        return complex(math.prod(permanent(A[np.ix_(b, b)]) for b in p1.blocks))
    count = group_order(p1) * group_order(p2)
    if count > budget:
        raise BudgetExceeded(f"{count} terms exceed f_sim budget {budget}")
    return _f_sim_bruteforce(A, p1, p2)


def is_hermitian(A, tol: float = 1e-12) -> bool:
    A = np.asarray(A)
    return A.ndim == 2 and A.shape[0] == A.shape[1] and np.allclose(A, A.conj().T, rtol=0, atol=tol * max(1.0, np.abs(A).max(initial=0)))


def is_psd(A, floor: float = PSD_FLOOR) -> bool:
    A = np.asarray(A, dtype=complex)
    if not is_hermitian(A):
        return False
    if A.shape[0] == 0:
        return True
    return bool(np.linalg.eigvalsh(A).min() >= floor)


@dataclass(frozen=True)
class ConjectureDVerdict:
    f: complex
    bound: float
    margin: float
    holds: bool

    def to_json(self) -> dict:
        return {"f_re": self.f.real, "f_im": self.f.imag, "bound": self.bound,
                "margin": self.margin, "holds": self.holds}


def check_conjecture_d(A, p1: Partition, p2: Partition) -> ConjectureDVerdict:
    """Test ``Re f_sim(A) >= |P1 & P2| * prod_i A_ii`` for a PSD matrix ``A``."""
    A = np.asarray(A, dtype=complex)
    if not is_psd(A):
        raise NotPSD("matrix is not Hermitian positive semidefinite")
    f = f_sim(A, p1, p2)
    bound = float(intersection_order(p1, p2) * np.prod(np.real(np.diag(A))))
    margin = f.real - bound
    holds = f.real >= bound - CONJ_D_RTOL * max(1.0, bound)
    return ConjectureDVerdict(f, bound, margin, bool(holds))


def random_psd(n: int, seed=None) -> np.ndarray:
    """``B B^H`` with ``B`` standard complex Gaussian; ``seed`` may be a Generator."""
    rng = np.random.default_rng(seed)
    B = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2.0)
    A = B @ B.conj().T
    return (A + A.conj().T) / 2


def gram_matrix(spinors) -> np.ndarray:
    """``G[a, b] = <psi_a, psi_b>``, antilinear in the row spinor."""
    S = np.asarray(spinors, dtype=complex).reshape(-1, 2)
    return S.conj() @ S.T


def matrix_to_json(A) -> dict:
    A = np.asarray(A, dtype=complex)
    return {"n": int(A.shape[0]), "re": A.real.tolist(), "im": A.imag.tolist()}


def matrix_from_json(data: dict) -> np.ndarray:
    A = np.array(data["re"], dtype=float) + 1j * np.array(data.get("im", np.zeros_like(data["re"])), dtype=float)
    if A.shape != (int(data["n"]), int(data["n"])):
        raise DimensionMismatch(f"matrix shape {A.shape} does not match n={data['n']}")
    return A
