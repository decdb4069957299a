"""Single-qubit Clifford group (modulo global phase) and Pauli measurement effects.

Every element of the 24-element group is stored once, as an unnormalized
Gaussian-integer 2x2 matrix scaled so its first nonzero entry is 1.  All
products go through a precomputed multiplication table, so decoration
updates in the rewrite engine are exact table lookups.

Words are sequences of ``(axis, quarter_turns)`` with ``axis`` in
``{"Z", "X"}``; the first letter is applied first (it sits next to the
spider, the last letter next to the open wire).
"""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

Matrix = tuple[complex, complex, complex, complex]  # row-major a b / c d
Key = tuple[tuple[int, int], ...]

_I = 1j ** 1


def _mul(a: Matrix, b: Matrix) -> Matrix:
    return (
        a[0] * b[0] + a[1] * b[2],
        a[0] * b[1] + a[1] * b[3],
        a[2] * b[0] + a[3] * b[2],
        a[2] * b[1] + a[3] * b[3],
    )


def _gauss(z: complex) -> tuple[int, int]:
    re, im = int(round(z.real)), int(round(z.imag))
    if re != z.real or im != z.imag:
        raise ArithmeticError(f"non-integral entry {z}")
    return re, im


def _normalize(m: Matrix) -> Key:
    """Scale so the first nonzero entry is 1; exact on Clifford matrices."""
    ents = [_gauss(z) for z in m]
    g = next(e for e in ents if e != (0, 0))
    norm = g[0] * g[0] + g[1] * g[1]
    out = []
    for re, im in ents:
        # (re + i im) * conj(g)
        pr = re * g[0] + im * g[1]
        pi = im * g[0] - re * g[1]
        if pr % norm or pi % norm:
            raise ArithmeticError("matrix entries are not unit multiples of each other")
        out.append((pr // norm, pi // norm))
    return tuple(out)


def _z(k: int) -> Matrix:
    return (1, 0, 0, _I ** (k % 4))


def _x(k: int) -> Matrix:
    p = _I ** (k % 4)
    return (1 + p, 1 - p, 1 - p, 1 + p)


_GENERATORS: tuple[tuple[str, int], ...] = (("Z", 1), ("Z", 2), ("Z", 3), ("X", 1), ("X", 2), ("X", 3))


def _gen_matrix(axis: str, k: int) -> Matrix:
    if axis == "Z":
        return _z(k)
    if axis == "X":
        return _x(k)
    raise ValueError(f"unknown generator axis {axis!r}")


def _build_group():
    ident: Matrix = (1, 0, 0, 1)
    keys: list[Key] = [_normalize(ident)]
    words: list[tuple[tuple[str, int], ...]] = [()]
    mats: list[Matrix] = [ident]
    index = {keys[0]: 0}
    queue = deque([0])
    # BFS gives each element its shortest word, ties broken by generator order
    while queue:
        i = queue.popleft()
        for axis, k in _GENERATORS:
            m = _mul(_gen_matrix(axis, k), mats[i])
            key = _normalize(m)
            if key in index:
                continue
            index[key] = len(keys)
            keys.append(key)
            words.append(words[i] + ((axis, k),))
            mats.append(tuple(complex(*e) for e in key))
            queue.append(index[key])
    assert len(keys) == 24, len(keys)
    n = len(keys)
    table = [[index[_normalize(_mul(mats[a], mats[b]))] for b in range(n)] for a in range(n)]
    inverse = [next(b for b in range(n) if table[a][b] == 0) for a in range(n)]
    transpose = [index[_normalize((m[0], m[2], m[1], m[3]))] for m in mats]
    return keys, words, mats, index, table, inverse, transpose


_KEYS, _WORDS, _MATS, _INDEX, _TABLE, _INVERSE, _TRANSPOSE = _build_group()

PAULI_AXES = ("X", "Y", "Z")
_PAULI_MATS: dict[str, Matrix] = {"X": (0, 1, 1, 0), "Y": (0, -_I, _I, 0), "Z": (1, 0, 0, -1)}


def _conjugate(m: Matrix, axis: str) -> tuple[str, int]:
    """``M P M^-1`` as a signed Pauli, using ``M^-1 ~ M^dagger``."""
    dag = (m[0].conjugate(), m[2].conjugate(), m[1].conjugate(), m[3].conjugate())
    scale = (_mul(m, dag))[0].real  # M M^dagger = scale * I
    prod = _mul(_mul(m, _PAULI_MATS[axis]), dag)
    for q, pm in _PAULI_MATS.items():
        if all(abs(prod[i] - scale * pm[i]) < 1e-9 for i in range(4)):
            return q, 1
        if all(abs(prod[i] + scale * pm[i]) < 1e-9 for i in range(4)):
            return q, -1
    raise ArithmeticError("not a Clifford")


_CONJ = [{a: _conjugate(m, a) for a in PAULI_AXES} for m in _MATS]


@dataclass(frozen=True, order=True)
class Clifford:
    """Element of the single-qubit Clifford group modulo phase."""

    index: int

    def __post_init__(self):
        if not 0 <= self.index < 24:
            raise ValueError("Clifford index out of range")

    @classmethod
    def identity(cls) -> Clifford:
        return cls(0)

    @classmethod
    def z(cls, quarter_turns: int) -> Clifford:
        return cls(_INDEX[_normalize(_z(quarter_turns))])

    @classmethod
    def x(cls, quarter_turns: int) -> Clifford:
        return cls(_INDEX[_normalize(_x(quarter_turns))])

    @classmethod
    def h(cls) -> Clifford:
        return cls(_INDEX[_normalize((1, 1, 1, -1))])

    @classmethod
    def from_word(cls, word: Iterable[Sequence]) -> Clifford:
        c = cls.identity()
        for axis, k in word:
            c = cls(_INDEX[_normalize(_gen_matrix(str(axis), int(k)))]) @ c
        return c

    @classmethod
    def all(cls) -> list[Clifford]:
        return [cls(i) for i in range(24)]

    def __matmul__(self, other: Clifford) -> Clifford:
        """Operator product: ``(a @ b)`` applies ``b`` first."""
        return Clifford(_TABLE[self.index][other.index])

    def __pow__(self, k: int) -> Clifford:
        out = Clifford.identity()
        base = self if k >= 0 else self.inverse()
        for _ in range(abs(k)):
            out = base @ out
        return out

    def inverse(self) -> Clifford:
        return Clifford(_INVERSE[self.index])

    def transpose(self) -> Clifford:
        return Clifford(_TRANSPOSE[self.index])

    @property
    def word(self) -> tuple[tuple[str, int], ...]:
        return _WORDS[self.index]

    @property
    def matrix(self) -> tuple[complex, complex, complex, complex]:
        return _MATS[self.index]

    def conjugate(self, axis: str) -> tuple[str, int]:
        """Signed Pauli ``C P C^-1`` for ``P`` in X, Y, Z."""
        return _CONJ[self.index][axis]

    @property
    def is_diagonal(self) -> bool:
        m = _MATS[self.index]
        return m[1] == 0 and m[2] == 0

    def z_quarter_turns(self) -> int:
        """k with ``self == Z(k)``; requires a diagonal element."""
        if not self.is_diagonal:
            raise ValueError("not a Z phase")
        return _power_of_i(_MATS[self.index][3])

    def hadamard_phase(self) -> int | None:
        """a with ``self == H Z(a*pi)`` (Z phase applied first), else None."""
        for a in (0, 1):
            if self == Clifford.h() @ Clifford.z(2 * a):
                return a
        return None

    def __repr__(self) -> str:
        w = " ".join(f"{a}{k}" for a, k in self.word) or "I"
        return f"Clifford({w})"


def _power_of_i(z: complex) -> int:
    for k in range(4):
        if z == _I ** k:
            return k
    raise ValueError(f"{z} is not a power of i")


Z1 = Clifford.z(1)
Z2 = Clifford.z(2)
Z3 = Clifford.z(3)
X1 = Clifford.x(1)
H = Clifford.h()


@dataclass(frozen=True, order=True)
class Effect:
    """Pauli measurement effect: the bra of the ``sign`` eigenstate of ``basis``."""

    basis: str
    sign: int = 1

    def __post_init__(self):
        if self.basis not in PAULI_AXES:
            raise ValueError(f"Pauli basis expected, got {self.basis!r}")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")

    def then(self, c: Clifford) -> Effect:
        """Effect equal (up to scalar) to ``<self| C``."""
        # <m| C = (C^-1 |m>)^dagger and C^-1 |m> is an eigenstate of C^-1 P C
        axis, s = c.inverse().conjugate(self.basis)
        return Effect(axis, self.sign * s)

    @property
    def ket(self) -> tuple[complex, complex]:
        """Unnormalized eigenket; the effect is its conjugate transpose."""
        return _KETS[(self.basis, self.sign)]

    @property
    def bra(self) -> tuple[complex, complex]:
        a, b = self.ket
        return (a.conjugate(), b.conjugate())

    def __str__(self) -> str:
        return f"{self.basis}{'+' if self.sign > 0 else '-'}"


_KETS = {
    ("X", 1): (1 + 0j, 1 + 0j),
    ("X", -1): (1 + 0j, -1 + 0j),
    ("Y", 1): (1 + 0j, _I),
    ("Y", -1): (1 + 0j, -_I),
    ("Z", 1): (1 + 0j, 0j),
    ("Z", -1): (0j, 1 + 0j),
}
