"""Dense state-vector simulation, verification oracles and seeded sampling.

Amplitude index ``b`` encodes qubit 0 as bit 0. Internally a state is held as
a tensor of shape ``(2,) * n`` (plus optional trailing batch axes) where
qubit ``q`` lives on axis ``n - 1 - q``.

Randomness comes from numpy's Philox4x64 counter-based generator keyed by a
single 64-bit seed, which gives identical streams on every platform.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass, field

import numpy as np

from .boolfn import Permutation, TruthTable
from .circuit import Circuit, Gate, GateKind

MAX_QUBITS = 22
MAX_UNITARY_QUBITS = 10
BASIS_TOL = 1e-9
NORM_TOL = 1e-9

_SQRT1_2 = 1 / math.sqrt(2)
_PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
# exponents of exp(i*pi/4) applied on |1>
_PHASE_STEPS = {GateKind.T: 1, GateKind.S: 2, GateKind.Z: 4, GateKind.SDG: 6, GateKind.TDG: 7}
_BASIS_PRESERVING = frozenset(_PHASE_STEPS) | {GateKind.X, GateKind.CX, GateKind.MCT,
                                               GateKind.CZ, GateKind.MCZ}


class NotClassical(ValueError):
    """Circuit maps some basis state to a superposition."""


class NotBijective(ValueError):
    pass


class NotDiagonal(ValueError):
    """Circuit moves a basis state or applies a non-real phase."""


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(int(seed)))


@dataclass(frozen=True, eq=False)
class StateVector:
    n: int
    amplitudes: np.ndarray

    def __post_init__(self):
        if not 1 <= self.n <= MAX_QUBITS:
            raise ValueError(f"qubit count must be in 1..{MAX_QUBITS}, got {self.n}")
        amps = np.array(self.amplitudes, dtype=np.complex128).ravel()
        if amps.shape != (1 << self.n,):
            raise ValueError(f"expected {1 << self.n} amplitudes, got {amps.size}")
        norm = float(np.vdot(amps, amps).real)
        if abs(norm - 1) > NORM_TOL:
            raise ValueError(f"state is not normalized (norm^2 = {norm})")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def basis(cls, n: int, index: int = 0) -> StateVector:
        if not 0 <= index < (1 << n):
            raise ValueError(f"basis index {index} out of range for {n} qubits")
        amps = np.zeros(1 << n, dtype=np.complex128)
        amps[index] = 1
        return cls(n, amps)

    @classmethod
    def random(cls, n: int, rng: np.random.Generator) -> StateVector:
        amps = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
        return cls(n, amps / np.linalg.norm(amps))

    @property
    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def allclose(self, other: StateVector, atol: float = 1e-10) -> bool:
        return self.n == other.n and np.allclose(self.amplitudes, other.amplitudes, atol=atol, rtol=0)


@dataclass(frozen=True)
class NoiseConfig:
    p1: float = 0.0
    p2: float = 0.0

    def __post_init__(self):
        for name in ("p1", "p2"):
            p = getattr(self, name)
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"{name} must be in [0, 1], got {p}")

    @property
    def is_noiseless(self) -> bool:
        return self.p1 == 0 and self.p2 == 0


@dataclass(frozen=True)
class Histogram:
    n: int
    counts: dict[int, int]
    shots: int
    seed: int | None = None
    probabilities: dict[int, float] = field(init=False, compare=False)

    def __post_init__(self):
        counts = {int(k): int(v) for k, v in sorted(self.counts.items()) if v}
        if sum(counts.values()) != self.shots:
            raise ValueError("counts do not sum to shots")
        object.__setattr__(self, "counts", counts)
        object.__setattr__(self, "probabilities", {k: v / self.shots for k, v in counts.items()})

    def bitstring(self, outcome: int) -> str:
        return format(outcome, f"0{self.n}b")

    def most_common(self) -> int:
        return max(self.counts, key=lambda k: (self.counts[k], -k))

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("outcome,count,probability\n")
        for outcome, count in self.counts.items():
            buf.write(f"{self.bitstring(outcome)},{count},{self.probabilities[outcome]!r}\n")
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str, seed: int | None = None) -> Histogram:
        lines = [ln.strip() for ln in text.strip().splitlines()]
        if not lines or lines[0] != "outcome,count,probability":
            raise ValueError("missing histogram header 'outcome,count,probability'")
        counts = {}
        width = None
        for ln in lines[1:]:
            bits, count, _ = ln.split(",")
            if width is None:
                width = len(bits)
            elif len(bits) != width:
                raise ValueError("inconsistent outcome widths")
            counts[int(bits, 2)] = int(count)
        if width is None:
            raise ValueError("histogram has no rows")
        return cls(width, counts, sum(counts.values()), seed)


# --- gate kernels --------------------------------------------------------------

def _index(n: int, ndim: int, fixed: dict[int, int]) -> tuple:
    idx = [slice(None)] * ndim
    for q, v in fixed.items():
        idx[n - 1 - q] = v
    return tuple(idx)


def _apply_matrix(psi: np.ndarray, n: int, q: int, m: np.ndarray) -> None:
    i0 = _index(n, psi.ndim, {q: 0})
    i1 = _index(n, psi.ndim, {q: 1})
    a0 = psi[i0].copy()
    a1 = psi[i1]
    psi[i0] = m[0, 0] * a0 + m[0, 1] * a1
    psi[i1] = m[1, 0] * a0 + m[1, 1] * a1


def _apply_gate(psi: np.ndarray, n: int, gate: Gate) -> None:
    kind = gate.kind
    if kind is GateKind.H:
        i0 = _index(n, psi.ndim, {gate.target: 0})
        i1 = _index(n, psi.ndim, {gate.target: 1})
        a0 = psi[i0].copy()
        a1 = psi[i1]
        psi[i0] = (a0 + a1) * _SQRT1_2
        psi[i1] = (a0 - a1) * _SQRT1_2
    elif kind in _PHASE_STEPS:
        psi[_index(n, psi.ndim, {gate.target: 1})] *= np.exp(1j * math.pi / 4 * _PHASE_STEPS[kind])
    elif kind in (GateKind.CZ, GateKind.MCZ):
        psi[_index(n, psi.ndim, {q: 1 for q in gate.qubits})] *= -1
    else:  # X, CX, MCT
        fixed = {c.qubit: int(c.positive) for c in gate.controls}
        i0 = _index(n, psi.ndim, {**fixed, gate.target: 0})
        i1 = _index(n, psi.ndim, {**fixed, gate.target: 1})
        tmp = psi[i0].copy()
        psi[i0] = psi[i1]
        psi[i1] = tmp


def _as_tensor(amplitudes: np.ndarray, n: int) -> np.ndarray:
    return np.array(amplitudes, dtype=np.complex128).reshape((2,) * n + amplitudes.shape[1:])


def _check_width(c: Circuit, limit: int = MAX_QUBITS) -> None:
    if c.num_qubits > limit:
        raise ValueError(f"{c.num_qubits} qubits exceeds the simulator limit of {limit}")


def run(c: Circuit, initial: StateVector | int = 0) -> StateVector:
    """Apply every gate of ``c`` to ``initial`` (a state or a basis index)."""
    _check_width(c)
    if not isinstance(initial, StateVector):
        initial = StateVector.basis(c.num_qubits, int(initial))
    if initial.n != c.num_qubits:
        raise ValueError(f"state has {initial.n} qubits but circuit has {c.num_qubits}")
    n = c.num_qubits
    psi = _as_tensor(initial.amplitudes, n)
    for gate in c.gates:
        _apply_gate(psi, n, gate)
    amps = psi.reshape(-1)
    if c.global_phase:
        amps *= np.exp(1j * c.global_phase)
    return StateVector(n, amps)


def _run_batch(c: Circuit, columns: np.ndarray) -> np.ndarray:
    """Simulate each column of a (2^n, k) array."""
    n = c.num_qubits
    psi = _as_tensor(columns, n)
    for gate in c.gates:
        _apply_gate(psi, n, gate)
    out = psi.reshape(1 << n, -1)
    if c.global_phase:
        out *= np.exp(1j * c.global_phase)
    return out


def build_unitary(c: Circuit) -> np.ndarray:
    """Matrix whose column b is ``run(c, b)``."""
    _check_width(c, MAX_UNITARY_QUBITS)
    return _run_batch(c, np.eye(1 << c.num_qubits, dtype=np.complex128))


def unitary_equiv(u: np.ndarray, v: np.ndarray, tol: float = 1e-8) -> bool:
    """True iff |tr(U^dagger V)| >= dim - tol, i.e. equal up to global phase."""
    u = np.asarray(u)
    v = np.asarray(v)
    if u.shape != v.shape or u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise ValueError(f"dimension mismatch: {u.shape} vs {v.shape}")
    return abs(np.vdot(u, v)) >= u.shape[0] - tol


def restrict_to_clean_ancillas(u: np.ndarray, num_qubits: int) -> np.ndarray:
    """Block of ``u`` where all qubits at index >= ``num_qubits`` are |0> on input and output."""
    dim = 1 << num_qubits
    return u[:dim, :dim]


# --- classical (basis-preserving) fast path ------------------------------------------

def _basis_images(c: Circuit):
    """For circuits of permutation and diagonal-phase gates only, track every basis state exactly.

    Returns ``(images, phases)`` or None if a non-basis-preserving gate occurs.
    """
    if any(g.kind not in _BASIS_PRESERVING for g in c.gates):
        return None
    idx = np.arange(1 << c.num_qubits, dtype=np.int64)
    steps = np.zeros_like(idx)
    for g in c.gates:
        kind = g.kind
        if kind in _PHASE_STEPS:
            steps[(idx >> g.target) & 1 == 1] += _PHASE_STEPS[kind]
        elif kind in (GateKind.CZ, GateKind.MCZ):
            mask = sum(1 << q for q in g.qubits)
            steps[(idx & mask) == mask] += 4
        else:
            pos = sum(1 << ctl.qubit for ctl in g.controls if ctl.positive)
            neg = sum(1 << ctl.qubit for ctl in g.controls if not ctl.positive)
            hit = ((idx & pos) == pos) & ((idx & neg) == 0)
            idx[hit] ^= 1 << g.target
    phases = np.exp(1j * (math.pi / 4 * (steps % 8) + c.global_phase))
    return idx, phases


def _dense_images(c: Circuit, batch_elems: int = 1 << 22):
    n = c.num_qubits
    dim = 1 << n
    per_batch = max(1, batch_elems // dim)
    images = np.empty(dim, dtype=np.int64)
    phases = np.empty(dim, dtype=np.complex128)
    for start in range(0, dim, per_batch):
        stop = min(dim, start + per_batch)
        cols = np.zeros((dim, stop - start), dtype=np.complex128)
        cols[np.arange(start, stop), np.arange(stop - start)] = 1
        out = _run_batch(c, cols)
        best = np.argmax(np.abs(out), axis=0)
        amp = out[best, np.arange(stop - start)]
        if np.any(np.abs(amp) < 1 - BASIS_TOL):
            bad = start + int(np.flatnonzero(np.abs(amp) < 1 - BASIS_TOL)[0])
            raise NotClassical(f"basis state {bad} is mapped to a superposition")
        images[start:stop] = best
        phases[start:stop] = amp
    return images, phases


def basis_images(c: Circuit) -> tuple[np.ndarray, np.ndarray]:
    """Image index and phase of every basis state; raises NotClassical on superpositions."""
    if c.num_qubits > 16:
        raise ValueError("exhaustive basis sweep is limited to 16 qubits")
    fast = _basis_images(c)
    return fast if fast is not None else _dense_images(c)


def extract_permutation(c: Circuit) -> Permutation:
    images, _ = basis_images(c)
    if len(np.unique(images)) != len(images):
        raise NotBijective("circuit maps two basis states to the same output")
    return Permutation(c.num_qubits, tuple(int(v) for v in images))


def extract_phase_function(c: Circuit) -> TruthTable:
    try:
        images, phases = basis_images(c)
    except NotClassical as exc:
        raise NotDiagonal(str(exc)) from None
    moved = np.flatnonzero(images != np.arange(len(images)))
    if moved.size:
        raise NotDiagonal(f"basis state {int(moved[0])} is moved")
    if np.any(np.abs(phases.imag) > BASIS_TOL) or np.any(np.abs(np.abs(phases.real) - 1) > BASIS_TOL):
        raise NotDiagonal("circuit applies a phase other than +1 or -1")
    return TruthTable.from_array(c.num_qubits, (phases.real < 0).astype(np.uint8))


# --- measurement -----------------------------------------------------------------

def _draw(probs: np.ndarray, u: np.ndarray) -> np.ndarray:
    cdf = np.cumsum(probs)
    picks = np.searchsorted(cdf, u * cdf[-1], side="right")
    return np.minimum(picks, len(probs) - 1)


def measure_all(s: StateVector, seed: int) -> int:
    """Sample a basis index with probability |amplitude|^2."""
    return int(_draw(s.probabilities, make_rng(seed).random(1))[0])


def sample_shots(s: StateVector, shots: int, seed: int) -> Histogram:
    if shots < 1:
        raise ValueError("shots must be >= 1")
    outcomes = _draw(s.probabilities, make_rng(seed).random(shots))
    values, counts = np.unique(outcomes, return_counts=True)
    return Histogram(s.n, dict(zip(values.tolist(), counts.tolist())), shots, seed)


def _trajectory(c: Circuit, noise: NoiseConfig, rng: np.random.Generator) -> np.ndarray:
    n = c.num_qubits
    psi = np.zeros((2,) * n, dtype=np.complex128)
    psi[(0,) * n] = 1
    for gate in c.gates:
        _apply_gate(psi, n, gate)
        qubits = gate.qubits
        p = noise.p1 if len(qubits) == 1 else noise.p2
        if p == 0:
            continue
        for q in qubits:
            if rng.random() < p:
                pauli = int(rng.integers(3))
                if pauli == 0:
                    _apply_gate(psi, n, Gate.x(q))
                elif pauli == 1:
                    _apply_matrix(psi, n, q, _PAULI_Y)
                else:
                    _apply_gate(psi, n, Gate.z(q))
    return psi.reshape(-1)


def _noise_rng(seed: int) -> np.random.Generator:
    # independent Philox stream so noise draws never shift the measurement draws
    return np.random.Generator(np.random.Philox(int(seed)).jumped())


def run_noisy(c: Circuit, noise: NoiseConfig, seed: int) -> int:
    """One depolarizing trajectory from |0...0> followed by a full measurement."""
    _check_width(c)
    amps = _trajectory(c, noise, _noise_rng(seed))
    return int(_draw(np.abs(amps) ** 2, make_rng(seed).random(1))[0])


def sample_noisy_shots(c: Circuit, noise: NoiseConfig, shots: int, seed: int) -> Histogram:
    """``shots`` independent trajectories; equals ``sample_shots(run(c), ...)`` when noiseless."""
    if shots < 1:
        raise ValueError("shots must be >= 1")
    _check_width(c)
    if noise.is_noiseless:
        return sample_shots(run(c), shots, seed)
    noise_rng = _noise_rng(seed)
    u = make_rng(seed).random(shots)
    outcomes = np.empty(shots, dtype=np.int64)
    for k in range(shots):
        amps = _trajectory(c, noise, noise_rng)
        outcomes[k] = _draw(np.abs(amps) ** 2, u[k:k + 1])[0]
    values, counts = np.unique(outcomes, return_counts=True)
    return Histogram(c.num_qubits, dict(zip(values.tolist(), counts.tolist())), shots, seed)


def basis_state_of(s: StateVector, tol: float = BASIS_TOL) -> int | None:
    """Index of the single populated basis state, or None for a superposition."""
    probs = s.probabilities
    b = int(np.argmax(probs))
    return b if probs[b] >= 1 - tol else None


def states_equal_up_to_phase(a: StateVector, b: StateVector, tol: float = 1e-9) -> bool:
    return a.n == b.n and abs(np.vdot(a.amplitudes, b.amplitudes)) >= 1 - tol

