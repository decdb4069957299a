"""Exact dense evaluation of small ZX networks.

Tensors hold Gaussian integers as pairs of int64 arrays; a shared power of
sqrt(2) sits at the vector level.  Unit global phases are dropped, so results
are meaningful up to a nonzero scalar, which is the only notion of equality
used anywhere in this package.
"""

from __future__ import annotations

import json
from collections.abc import Sequence
from dataclasses import dataclass, field
from itertools import count

import numpy as np

DEFAULT_WIRE_LIMIT = 12
_OVERFLOW_GUARD = 1 << 52


class SizeLimitError(ValueError):
    pass


@dataclass(eq=False)
class ExactState:
    """Amplitude vector ``(re + i*im) * sqrt(2)**sqrt2_exp`` over ``n`` qubits.

    Index ``k`` corresponds to the bit string ``x_1 ... x_n`` read big-endian.
    """

    n: int
    re: np.ndarray
    im: np.ndarray
    sqrt2_exp: int = 0

    def __post_init__(self):
        self.re = np.asarray(self.re, dtype=np.int64).reshape(-1)
        self.im = np.asarray(self.im, dtype=np.int64).reshape(-1)
        if self.re.shape != (1 << self.n,) or self.im.shape != self.re.shape:
            raise ValueError("amplitude arrays must have length 2**n")

    def __eq__(self, other: object) -> bool:
        """Exact equality of the stored representation (see :meth:`reduced`)."""
        if not isinstance(other, ExactState):
            return NotImplemented
        return (self.n == other.n and self.sqrt2_exp == other.sqrt2_exp
                and np.array_equal(self.re, other.re) and np.array_equal(self.im, other.im))

    __hash__ = None

    @classmethod
    def from_gaussian(cls, amps: Sequence[complex | tuple[int, int]], sqrt2_exp: int = 0) -> ExactState:
        pairs = [(int(a.real), int(a.imag)) if isinstance(a, (complex, int)) else (int(a[0]), int(a[1]))
                 for a in amps]
        n = max(len(pairs) - 1, 0).bit_length()
        if len(pairs) != 1 << n:
            raise ValueError("length must be a power of two")
        return cls(n, [p[0] for p in pairs], [p[1] for p in pairs], sqrt2_exp)

    @classmethod
    def from_kets(cls, n: int, terms: dict[str, complex]) -> ExactState:
        """Build from ``{"0010": 1, "1001": 1j, ...}``."""
        re = np.zeros(1 << n, dtype=np.int64)
        im = np.zeros(1 << n, dtype=np.int64)
        for bits, amp in terms.items():
            if len(bits) != n:
                raise ValueError(f"bit string {bits!r} has wrong length")
            re[int(bits, 2)] += int(amp.real) if isinstance(amp, complex) else int(amp)
            im[int(bits, 2)] += int(amp.imag) if isinstance(amp, complex) else 0
        return cls(n, re, im)

    def gaussian(self) -> list[tuple[int, int]]:
        return [(int(a), int(b)) for a, b in zip(self.re, self.im)]

    def support(self) -> list[int]:
        return [int(k) for k in np.flatnonzero((self.re != 0) | (self.im != 0))]

    def is_zero(self) -> bool:
        return not (self.re.any() or self.im.any())

    def to_complex(self) -> np.ndarray:
        return (self.re + 1j * self.im) * (2.0 ** (self.sqrt2_exp / 2))

    def reduced(self) -> ExactState:
        """Divide out common factors of 2 (exponent adjusted)."""
        re, im, e = self.re.copy(), self.im.copy(), self.sqrt2_exp
        if not (re.any() or im.any()):
            return ExactState(self.n, re, im, e)
        while not ((re | im) & 1).any():
            re >>= 1
            im >>= 1
            e += 2
        return ExactState(self.n, re, im, e)

    def to_json(self) -> dict:
        return {"qubits": self.n, "amplitudes": [list(p) for p in self.gaussian()], "sqrt2_exponent": self.sqrt2_exp}

    @classmethod
    def from_json(cls, data: dict) -> ExactState:
        state = cls.from_gaussian([tuple(p) for p in data["amplitudes"]], int(data.get("sqrt2_exponent", 0)))
        if "qubits" in data and state.n != data["qubits"]:
            raise ValueError("qubit count does not match amplitude length")
        return state

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))


def proportional(s: ExactState, t: ExactState) -> bool:
    """True iff ``t = z s`` for some nonzero complex ``z``; exact."""
    if s.n != t.n:
        raise ValueError(f"dimension mismatch: {s.n} vs {t.n} qubits")
    s_zero, t_zero = s.is_zero(), t.is_zero()
    if s_zero or t_zero:
        return s_zero and t_zero
    sr, si, tr, ti = (list(map(int, a)) for a in (s.re, s.im, t.re, t.im))
    k = next(j for j in range(len(sr)) if sr[j] or si[j])
    if not (tr[k] or ti[k]):
        return False
    a, b, c, d = sr[k], si[k], tr[k], ti[k]
    for j in range(len(sr)):
        # t_j * s_k == s_j * t_k
        lhs = (tr[j] * a - ti[j] * b, tr[j] * b + ti[j] * a)
        rhs = (sr[j] * c - si[j] * d, sr[j] * d + si[j] * c)
        if lhs != rhs:
            return False
    return True


@dataclass
class ZXNetwork:
    """Spiders joined by plain or Hadamard edges, with ordered open wires.

    ``spiders[i] = (colour, quarter_turns)`` with colour ``"Z"`` (green) or
    ``"X"`` (red).  ``boundary[w] = (spider, hadamard)`` attaches open wire
    ``w``.
    """

    spiders: list[tuple[str, int]] = field(default_factory=list)
    edges: list[tuple[int, int, bool]] = field(default_factory=list)
    boundary: list[tuple[int, bool]] = field(default_factory=list)

    def add_spider(self, colour: str, quarter_turns: int = 0) -> int:
        if colour not in ("Z", "X"):
            raise ValueError(colour)
        self.spiders.append((colour, quarter_turns % 4))
        return len(self.spiders) - 1

    def add_edge(self, a: int, b: int, hadamard: bool = False) -> None:
        self.edges.append((a, b, hadamard))

    def add_boundary(self, spider: int, hadamard: bool = False) -> None:
        self.boundary.append((spider, hadamard))


class _T:
    """Gaussian-integer tensor with named axes."""

    __slots__ = ("re", "im", "axes")

    def __init__(self, re, im, axes):
        self.re, self.im, self.axes = re, im, list(axes)


def _spider_tensor(colour: str, k: int, legs: list[int]) -> tuple[_T, int]:
    d = len(legs)
    phase_re, phase_im = ((1, 0), (0, 1), (-1, 0), (0, -1))[k % 4]
    shape = (2,) * d
    if colour == "Z":
        re = np.zeros(shape, dtype=np.int64)
        im = np.zeros(shape, dtype=np.int64)
        if d == 0:
            return _T(np.array(1 + phase_re), np.array(phase_im), []), 0
        re[(0,) * d] = 1
        re[(1,) * d] += phase_re
        im[(1,) * d] += phase_im
        return _T(re, im, legs), 0
    # X spider in the Z basis: 1 + e^{ik pi/2} (-1)^{|y|}, times 2^{-d/2}
    parity = np.indices(shape).sum(axis=0) if d else np.array(0)
    sign = 1 - 2 * (parity % 2)
    re = 1 + phase_re * sign
    im = phase_im * sign
    return _T(np.asarray(re, dtype=np.int64), np.asarray(im, dtype=np.int64), legs), -d


_LETTERS = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ"


def _contract(a: _T, b: _T) -> _T:
    shared = [x for x in a.axes if x in b.axes]
    out = [x for x in a.axes if x not in shared] + [x for x in b.axes if x not in shared]
    names = {x: _LETTERS[i] for i, x in enumerate(dict.fromkeys(a.axes + b.axes))}
    if len(names) > len(_LETTERS):
        raise SizeLimitError("too many open indices in one contraction")
    spec = "{},{}->{}".format("".join(names[x] for x in a.axes), "".join(names[x] for x in b.axes),
                              "".join(names[x] for x in out))
    rr = np.einsum(spec, a.re, b.re)
    ii = np.einsum(spec, a.im, b.im)
    ri = np.einsum(spec, a.re, b.im)
    ir = np.einsum(spec, a.im, b.re)
    return _T(np.asarray(rr - ii), np.asarray(ri + ir), out)


def _size(t: _T) -> int:
    return 1 << len(t.axes)


def evaluate_network(net: ZXNetwork, wire_limit: int = DEFAULT_WIRE_LIMIT) -> ExactState:
    """Dense state of ``net`` with open wires in ``net.boundary`` order."""
    n = len(net.boundary)
    if n > wire_limit:
        raise SizeLimitError(f"{n} open wires exceeds limit {wire_limit}")
    fresh = count()
    legs: list[list[int]] = [[] for _ in net.spiders]
    tensors: list[_T] = []
    exp = 0
    h_re = np.array([[1, 1], [1, -1]], dtype=np.int64)
    h_im = np.zeros((2, 2), dtype=np.int64)
    for a, b, had in net.edges:
        if had:
            i, j = next(fresh), next(fresh)
            legs[a].append(i)
            legs[b].append(j)
            tensors.append(_T(h_re, h_im, [i, j]))
            exp -= 1
        else:
            i = next(fresh)
            legs[a].append(i)
            legs[b].append(i)
    open_axes = []
    for spider, had in net.boundary:
        i = next(fresh)
        if had:
            j = next(fresh)
            legs[spider].append(j)
            tensors.append(_T(h_re, h_im, [j, i]))
            exp -= 1
        else:
            legs[spider].append(i)
        open_axes.append(i)
    for (colour, k), ls in zip(net.spiders, legs):
        if len(ls) != len(set(ls)):
            raise ValueError("self-loops are not supported")
        t, e = _spider_tensor(colour, k, ls)
        tensors.append(t)
        exp += e

    while len(tensors) > 1:
        best = None
        for x in range(len(tensors)):
            ax = set(tensors[x].axes)
            for y in range(x + 1, len(tensors)):
                shared = ax.intersection(tensors[y].axes)
                if not shared:
                    continue
                size = len(ax) + len(tensors[y].axes) - 2 * len(shared)
                if best is None or size < best[0]:
                    best = (size, x, y)
        if best is None:
            # disconnected pieces: outer product of the two smallest
            order = sorted(range(len(tensors)), key=lambda t: _size(tensors[t]))
            best = (None, *sorted(order[:2]))
        _, x, y = best
        t = _contract(tensors[x], tensors[y])
        exp += _reduce(t)
        tensors = [tt for k, tt in enumerate(tensors) if k not in (x, y)] + [t]

    t = tensors[0] if tensors else _T(np.array(1), np.array(0), [])
    if sorted(t.axes) != sorted(open_axes):
        raise AssertionError("contraction left dangling internal indices")
    perm = [t.axes.index(i) for i in open_axes]
    re = np.transpose(t.re, perm) if perm else t.re
    im = np.transpose(t.im, perm) if perm else t.im
    return ExactState(n, re.reshape(-1), im.reshape(-1), exp).reduced()


def _reduce(t: _T) -> int:
    if np.abs(t.re).max(initial=0) > _OVERFLOW_GUARD or np.abs(t.im).max(initial=0) > _OVERFLOW_GUARD:
        raise OverflowError("intermediate amplitudes too large for exact int64 contraction")
    e = 0
    if not (t.re.any() or t.im.any()):
        return 0
    while not ((t.re | t.im) & 1).any():
        t.re = t.re >> 1
        t.im = t.im >> 1
        e += 2
    return e
