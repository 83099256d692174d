"""Boolean functions, spectra, bent-function constructions and permutations.

Input index convention: for a function over variables x1..xn, input index
``b`` encodes x1 at bit 0 (least significant), x2 at bit 1, and so on.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

MAX_VARS = 16


class NotBent(ValueError):
    """Raised when an operation requires a bent function."""


class ExpressionSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


def _popcount(x: int) -> int:
    return bin(x).count("1")


@dataclass(frozen=True)
class TruthTable:
    """Complete single-output Boolean function as a 2^n-entry table."""

    n: int
    bits: tuple[int, ...]

    def __post_init__(self):
        if not 1 <= self.n <= MAX_VARS:
            raise ValueError(f"variable count must be in 1..{MAX_VARS}, got {self.n}")
        bits = tuple(int(b) for b in self.bits)
        if len(bits) != 1 << self.n:
            raise ValueError(f"expected {1 << self.n} bits, got {len(bits)}")
        if any(b not in (0, 1) for b in bits):
            raise ValueError("truth table entries must be 0 or 1")
        object.__setattr__(self, "bits", bits)

    @classmethod
    def from_array(cls, n: int, values) -> TruthTable:
        return cls(n, tuple(int(v) & 1 for v in np.asarray(values).ravel()))

    @classmethod
    def constant(cls, n: int, value: int = 0) -> TruthTable:
        return cls(n, (value & 1,) * (1 << n))

    @classmethod
    def from_function(cls, n: int, fn) -> TruthTable:
        return cls(n, tuple(int(bool(fn(x))) for x in range(1 << n)))

    def __call__(self, x: int) -> int:
        return self.bits[x]

    def __len__(self) -> int:
        return len(self.bits)

    def as_array(self) -> np.ndarray:
        return np.array(self.bits, dtype=np.uint8)

    def is_constant(self) -> bool:
        return len(set(self.bits)) == 1

    def __str__(self) -> str:
        return format_truth_table(self)


@dataclass(frozen=True)
class Spectrum:
    n: int
    values: tuple[int, ...]

    def __getitem__(self, w: int) -> int:
        return self.values[w]

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class Cube:
    """Product term; variables in ``positive_mask`` appear plain, in ``negative_mask`` complemented."""

    positive_mask: int = 0
    negative_mask: int = 0

    def __post_init__(self):
        if self.positive_mask < 0 or self.negative_mask < 0:
            raise ValueError("cube masks must be non-negative")
        if self.positive_mask & self.negative_mask:
            raise ValueError("a variable cannot appear with both polarities")

    @property
    def mask(self) -> int:
        return self.positive_mask | self.negative_mask

    @property
    def degree(self) -> int:
        return _popcount(self.mask)

    def evaluate(self, x: int) -> int:
        return int((x & self.positive_mask) == self.positive_mask and not (x & self.negative_mask))


@dataclass(frozen=True)
class Esop:
    n: int
    cubes: tuple[Cube, ...]

    def __post_init__(self):
        object.__setattr__(self, "cubes", tuple(self.cubes))
        limit = 1 << self.n
        for cube in self.cubes:
            if cube.mask >= limit:
                raise ValueError(f"cube {cube} does not fit in {self.n} variables")

    def evaluate(self, x: int) -> int:
        value = 0
        for cube in self.cubes:
            value ^= cube.evaluate(x)
        return value

    def to_truth_table(self) -> TruthTable:
        idx = np.arange(1 << self.n)
        out = np.zeros(1 << self.n, dtype=np.uint8)
        for cube in self.cubes:
            hit = ((idx & cube.positive_mask) == cube.positive_mask) & ((idx & cube.negative_mask) == 0)
            out ^= hit.astype(np.uint8)
        return TruthTable.from_array(self.n, out)


@dataclass(frozen=True)
class Permutation:
    """Bijection on {0, ..., 2^n - 1}; ``map[i]`` is the image of ``i``."""

    n: int
    map: tuple[int, ...]

    def __post_init__(self):
        if not 1 <= self.n <= MAX_VARS:
            raise ValueError(f"bit width must be in 1..{MAX_VARS}, got {self.n}")
        images = tuple(int(v) for v in self.map)
        size = 1 << self.n
        if len(images) != size:
            raise ValueError(f"expected {size} entries, got {len(images)}")
        if sorted(images) != list(range(size)):
            raise ValueError("map is not a bijection on 0..2^n-1")
        object.__setattr__(self, "map", images)

    @classmethod
    def from_list(cls, images: Sequence[int]) -> Permutation:
        size = len(images)
        if size < 2 or size & (size - 1):
            raise ValueError(f"permutation length must be a power of two >= 2, got {size}")
        return cls(size.bit_length() - 1, tuple(images))

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(n, tuple(range(1 << n)))

    def __call__(self, x: int) -> int:
        return self.map[x]

    def __len__(self) -> int:
        return len(self.map)

    def __str__(self) -> str:
        return format_permutation(self)


# --- expression parsing --------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<ident>[a-z][a-z0-9]*)|(?P<op>[\^|&~()]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if m is None:
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ExpressionSyntaxError(f"unexpected character {text[bad]!r}", bad)
        kind = "ident" if m.group("ident") else "op"
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    return tokens


class _Parser:
    # expr := term (('^'|'|') term)* ; term := factor ('&' factor)* ;
    # factor := '~' factor | '(' expr ')' | ident
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.names: list[str] = []

    def _peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def _error(self, message: str):
        tok = self._peek()
        raise ExpressionSyntaxError(message, tok[2] if tok else len(self.text))

    def parse(self):
        if not self.tokens:
            self._error("empty expression")
        node = self._expr()
        if self._peek() is not None:
            self._error(f"unexpected token {self._peek()[1]!r}")
        return node

    def _expr(self):
        node = self._term()
        while (tok := self._peek()) is not None and tok[1] in ("^", "|"):
            self.i += 1
            node = (tok[1], node, self._term())
        return node

    def _term(self):
        node = self._factor()
        while (tok := self._peek()) is not None and tok[1] == "&":
            self.i += 1
            node = ("&", node, self._factor())
        return node

    def _factor(self):
        tok = self._peek()
        if tok is None:
            self._error("unexpected end of expression")
        kind, value, _ = tok
        if value == "~":
            self.i += 1
            return ("~", self._factor())
        if value == "(":
            self.i += 1
            node = self._expr()
            if (close := self._peek()) is None or close[1] != ")":
                self._error("expected ')'")
            self.i += 1
            return node
        if kind == "ident":
            self.i += 1
            if value not in self.names:
                self.names.append(value)
            return ("var", value)
        self._error(f"unexpected token {value!r}")


def _evaluate(node, columns: dict[str, np.ndarray]) -> np.ndarray:
    op = node[0]
    if op == "var":
        return columns[node[1]]
    if op == "~":
        return 1 - _evaluate(node[1], columns)
    lhs = _evaluate(node[1], columns)
    rhs = _evaluate(node[2], columns)
    if op == "&":
        return lhs & rhs
    if op == "|":
        return lhs | rhs
    return lhs ^ rhs


def parse_expression(text: str, var_order: Sequence[str] | None = None) -> TruthTable:
    """Parse a Boolean expression over ``~ & ^ |`` into a truth table.

    Variables are ordered by ``var_order`` when given (extra names are allowed
    and become don't-care inputs), otherwise by first occurrence. Variable ``i``
    maps to input index bit ``i``.
    """
    parser = _Parser(text)
    tree = parser.parse()
    if var_order is None:
        names = list(parser.names)
    else:
        names = list(var_order)
        if len(set(names)) != len(names):
            raise ValueError("duplicate name in var_order")
        for name in names:
            if not re.fullmatch(r"[a-z][a-z0-9]*", name):
                raise ValueError(f"invalid variable name {name!r} in var_order")
        missing = [v for v in parser.names if v not in names]
        if missing:
            raise ValueError(f"unknown variable {missing[0]!r}: not listed in var_order")
    if len(names) > MAX_VARS:
        raise ValueError(f"expression uses more than {MAX_VARS} variables")
    n = max(len(names), 1)
    idx = np.arange(1 << n)
    columns = {name: (idx >> i) & 1 for i, name in enumerate(names)}
    values = _evaluate(tree, columns)
    return TruthTable.from_array(n, np.broadcast_to(values, idx.shape))


# --- text formats ----------------------------------------------------------------

def parse_truth_table(text: str) -> TruthTable:
    """Parse a '0'/'1' string (char i = f(i)) or a '0x' hex string (digit j covers f(4j)..f(4j+3))."""
    text = text.strip()
    if text.lower().startswith("0x"):
        digits = text[2:]
        if not digits:
            raise ValueError("empty hex truth table")
        try:
            nibbles = [int(d, 16) for d in digits]
        except ValueError:
            raise ValueError(f"invalid hex truth table {text!r}") from None
        bits = [(v >> k) & 1 for v in nibbles for k in range(4)]
    else:
        if not text or set(text) - {"0", "1"}:
            raise ValueError(f"invalid truth table string {text!r}")
        bits = [int(c) for c in text]
    size = len(bits)
    if size < 2 or size & (size - 1):
        raise ValueError(f"truth table length must be a power of two >= 2, got {size}")
    return TruthTable(size.bit_length() - 1, tuple(bits))


def format_truth_table(f: TruthTable, hex: bool = False) -> str:
    if not hex:
        return "".join(str(b) for b in f.bits)
    if f.n < 2:
        raise ValueError("hex format needs at least 2 variables")
    digits = []
    for j in range(len(f.bits) // 4):
        chunk = f.bits[4 * j: 4 * j + 4]
        digits.append("%x" % sum(b << k for k, b in enumerate(chunk)))
    return "0x" + "".join(digits)


def parse_permutation(text: str) -> Permutation:
    try:
        images = [int(tok) for tok in text.split()]
    except ValueError:
        raise ValueError(f"invalid permutation {text!r}") from None
    return Permutation.from_list(images)


def format_permutation(pi: Permutation) -> str:
    return " ".join(str(v) for v in pi.map)


# --- spectral analysis -----------------------------------------------------------

def _fwht(values: np.ndarray) -> np.ndarray:
    a = values.astype(np.int64).copy()
    h = 1
    size = len(a)
    while h < size:
        a = a.reshape(-1, 2, h)
        lo = a[:, 0, :].copy()
        hi = a[:, 1, :]
        a[:, 0, :] += hi
        a[:, 1, :] = lo - hi
        a = a.reshape(size)
        h *= 2
    return a


def walsh_hadamard(f: TruthTable) -> Spectrum:
    """Walsh-Hadamard spectrum W(w) = sum_x (-1)^(f(x) xor w.x), via the fast butterfly."""
    signs = 1 - 2 * f.as_array().astype(np.int64)
    return Spectrum(f.n, tuple(int(v) for v in _fwht(signs)))


def is_bent(f: TruthTable) -> bool:
    if f.n % 2:
        return False
    flat = 1 << (f.n // 2)
    return all(abs(v) == flat for v in walsh_hadamard(f).values)


def dual(f: TruthTable) -> TruthTable:
    """Dual bent function: the sign pattern of the (flat) spectrum."""
    if not is_bent(f):
        raise NotBent("dual is only defined for bent functions")
    return TruthTable(f.n, tuple(int(v < 0) for v in walsh_hadamard(f).values))


def shift(f: TruthTable, s: int) -> TruthTable:
    """g(x) = f(x xor s)."""
    if not 0 <= s < len(f.bits):
        raise ValueError(f"shift {s} out of range for {f.n} variables")
    arr = f.as_array()
    return TruthTable.from_array(f.n, arr[np.arange(len(arr)) ^ s])


def invert(pi: Permutation) -> Permutation:
    inv = [0] * len(pi.map)
    for i, v in enumerate(pi.map):
        inv[v] = i
    return Permutation(pi.n, tuple(inv))


def _check_mm_widths(pi: Permutation, h: TruthTable) -> None:
    if h.n != pi.n:
        raise ValueError(f"h has {h.n} variables but pi acts on {pi.n} bits")
    if 2 * pi.n > MAX_VARS:
        raise ValueError(f"result would have {2 * pi.n} > {MAX_VARS} variables")


def _inner_parity(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    v = a & b
    parity = np.zeros_like(v)
    while np.any(v):
        parity ^= v & 1
        v = v >> 1
    return parity


def mm_construct(pi: Permutation, h: TruthTable) -> TruthTable:
    """Maiorana-McFarland function f(x, y) = <x, pi(y)> xor h(y).

    x occupies input bits 0..n-1 and y bits n..2n-1.
    """
    _check_mm_widths(pi, h)
    n = pi.n
    idx = np.arange(1 << (2 * n))
    x = idx & ((1 << n) - 1)
    y = idx >> n
    pmap = np.array(pi.map)
    hbits = h.as_array().astype(np.int64)
    return TruthTable.from_array(2 * n, _inner_parity(x, pmap[y]) ^ hbits[y])


def mm_dual(pi: Permutation, h: TruthTable) -> TruthTable:
    """Closed-form dual of ``mm_construct(pi, h)``: <pi^-1(x), y> xor h(pi^-1(x))."""
    _check_mm_widths(pi, h)
    n = pi.n
    idx = np.arange(1 << (2 * n))
    x = idx & ((1 << n) - 1)
    y = idx >> n
    inv = np.array(invert(pi).map)
    hbits = h.as_array().astype(np.int64)
    px = inv[x]
    return TruthTable.from_array(2 * n, _inner_parity(px, y) ^ hbits[px])


# --- Reed-Muller ---------------------------------------------------------------

def pprm(f: TruthTable) -> Esop:
    """Positive-polarity Reed-Muller form via the binary Moebius transform.

    Cubes are returned in ascending monomial-mask order.
    """
    a = f.as_array().copy()
    size = len(a)
    h = 1
    while h < size:
        a = a.reshape(-1, 2, h)
        a[:, 1, :] ^= a[:, 0, :]
        a = a.reshape(size)
        h *= 2
    return Esop(f.n, tuple(Cube(int(m)) for m in np.flatnonzero(a)))


# --- generators ----------------------------------------------------------------

def hwb(n: int) -> Permutation:
    """Hidden-weighted-bit permutation: x rotated right by popcount(x) over n bits."""
    if not 1 <= n <= MAX_VARS:
        raise ValueError(f"n must be in 1..{MAX_VARS}, got {n}")
    full = (1 << n) - 1
    images = []
    for x in range(1 << n):
        r = _popcount(x) % n
        images.append(((x >> r) | (x << (n - r))) & full if r else x)
    return Permutation(n, tuple(images))


def random_permutation(n: int, rng: np.random.Generator) -> Permutation:
    return Permutation(n, tuple(int(v) for v in rng.permutation(1 << n)))


def random_truth_table(n: int, rng: np.random.Generator) -> TruthTable:
    return TruthTable.from_array(n, rng.integers(0, 2, size=1 << n))


def affine(n: int, mask: int, constant: int = 0) -> TruthTable:
    """XOR of the variables selected by ``mask`` plus a constant."""
    idx = np.arange(1 << n)
    return TruthTable.from_array(n, _inner_parity(idx, np.full_like(idx, mask)) ^ (constant & 1))


def variables_of(mask: int) -> Iterable[int]:
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1
