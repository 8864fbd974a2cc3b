"""
Statevector-simulated variational eigensolver for diagonal Hamiltonians

The ansatz alternates a Y-rotation on every qubit with a CNOT chain
(k -> k+1) and ends with a final rotation layer. Probabilities are exact
(noiseless, no shot sampling). Basis index b has qubit 0 as its most
significant bit, the same convention as the polynomial diagonal.
"""
import dataclasses
import logging
import math
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
from scipy import optimize

from . import exceptions
from .bio_io import CodonTable
from .constants import (DEFAULT_LAYERS, DEFAULT_MAX_EVALUATIONS,
                        DEFAULT_RESTARTS, DEFAULT_SEED, DEFAULT_TAU,
                        LOGGER_NAME, MAX_VQE_QUBITS, NORM_TOLERANCE)
from .encoding import (Decoded, EncodingLayout, Fragment, Scheme, build_layout,
                       decode_bits, valid_mask)
from .files import utility as file_util
from .hamiltonian import HamiltonianWeights, build_total, resolve_weights
from .pbp import PBP, index_to_bits

logger = logging.getLogger(LOGGER_NAME)

CONFIG_KEYS = ('layers', 'restarts', 'max_evaluations', 'seed', 'tau', 'scheme')


@dataclass(frozen=True, eq=False)
class Statevector:
    """
    Amplitudes of an n-qubit register
    """
    amplitudes: np.ndarray
    n: int

    def __post_init__(self):
        if abs(self.norm() - 1.0) > NORM_TOLERANCE:
            raise exceptions.ValidationError(f"statevector norm {self.norm()} is not 1")

    def probabilities(self) -> np.ndarray:
        """
        Born probabilities of every basis state
        """
        return np.abs(self.amplitudes) ** 2

    def norm(self) -> float:
        """
        Euclidean norm of the amplitudes
        """
        return float(np.linalg.norm(self.amplitudes))


@dataclass(frozen=True)
class Ansatz:
    """
    Layered Y-rotation ansatz with a nearest-neighbour CNOT chain
    """
    n: int
    layers: int = DEFAULT_LAYERS

    def __post_init__(self):
        if self.n < 0:
            raise exceptions.ValidationError(f"qubit count {self.n} is negative")
        if self.layers < 1:
            raise exceptions.ValidationError(f"layers must be at least 1, got {self.layers}")

    @property
    def parameter_count(self) -> int:
        """
        One angle per qubit per rotation layer
        """
        return self.n * (self.layers + 1)

    def gates(self) -> List[Tuple]:
        """
        Gate sequence, ('ry', qubit, parameter index) or ('cx', control, target)
        """
        sequence = []
        for layer in range(self.layers + 1):
            sequence.extend(('ry', k, layer * self.n + k) for k in range(self.n))
            if layer < self.layers:
                sequence.extend(('cx', k, k + 1) for k in range(self.n - 1))
        return sequence


@dataclass(frozen=True)
class VQEConfig:
    """
    Variational run settings
    """
    layers: int = DEFAULT_LAYERS
    restarts: int = DEFAULT_RESTARTS
    max_evaluations: int = DEFAULT_MAX_EVALUATIONS
    seed: int = DEFAULT_SEED
    tau: float = DEFAULT_TAU
    scheme: Scheme = Scheme.DENSE

    def __post_init__(self):
        object.__setattr__(self, 'scheme', Scheme.parse(self.scheme))
        for name in ('layers', 'restarts', 'max_evaluations'):
            value = getattr(self, name)
            if not isinstance(value, int) or value < 1:
                raise exceptions.InvalidConfig(f"{name} must be a positive integer, got {value!r}")
        if not isinstance(self.seed, int) or self.seed < 0:
            raise exceptions.InvalidConfig(f"seed must be a non-negative integer, got {self.seed!r}")
        if not isinstance(self.tau, (int, float)) or not 0 < self.tau < 1:
            raise exceptions.InvalidConfig(f"tau must lie in (0, 1), got {self.tau!r}")

    @classmethod
    def from_dict(cls, data: dict):
        """
        Build from a configuration mapping
        """
        unknown = set(data) - set(CONFIG_KEYS)
        if unknown:
            raise exceptions.InvalidConfig(f"unknown VQE config keys: {sorted(unknown)}")
        return cls(**data)

    def to_dict(self):
        """
        JSON friendly view
        """
        data = dataclasses.asdict(self)
        data['scheme'] = self.scheme.value
        return data


def load_config(path) -> VQEConfig:
    """
    Read a VQE configuration JSON file
    """
    data = file_util.read_json(path)
    if not isinstance(data, dict):
        raise exceptions.InvalidConfig(f"VQE config {path} must hold a JSON object")
    return VQEConfig.from_dict(data)


@dataclass(frozen=True)
class Candidate:
    """
    Sampled basis state
    """
    bits: str
    probability: float
    energy: float
    valid: bool


@dataclass(frozen=True)
class BestValid:
    """
    Lowest-energy decodable state found
    """
    bits: str
    assignment: Tuple[int, ...]
    codons: Tuple[str, ...]
    energy: float
    probability: float

    @property
    def mrna(self) -> str:
        """
        Codons joined into an mRNA string
        """
        return ''.join(self.codons)


@dataclass(frozen=True)
class SampleOutcome:
    """
    Thresholded candidates and the decoded answer
    """
    candidates: Tuple[Candidate, ...]
    best_valid: Optional[BestValid]
    fallback: bool


@dataclass(frozen=True)
class OptimizationResult:
    """
    Best point of a derivative-free search
    """
    theta: np.ndarray = field(compare=False)
    value: float
    trace: Tuple[float, ...]
    evaluations: int


@dataclass(frozen=True)
class VQEResult:
    """
    Outcome of a variational run on one fragment
    """
    best_parameters: Tuple[float, ...]
    best_expectation: float
    energy_trace: Tuple[float, ...]
    candidates: Tuple[Candidate, ...]
    best_valid: Optional[BestValid]
    fallback: bool
    num_qubits: int
    evaluations: int
    weights: HamiltonianWeights
    config: VQEConfig

    def to_dict(self):
        """
        JSON friendly view
        """
        best = None
        if self.best_valid is not None:
            best = {
                'bits': self.best_valid.bits,
                'assignment': list(self.best_valid.assignment),
                'codons': list(self.best_valid.codons),
                'mrna': self.best_valid.mrna,
                'energy': self.best_valid.energy,
                'probability': self.best_valid.probability,
            }
        return {
            'best_parameters': list(self.best_parameters),
            'best_expectation': self.best_expectation,
            'energy_trace': list(self.energy_trace),
            'candidates': [dataclasses.asdict(c) for c in self.candidates],
            'best_valid': best,
            'fallback': self.fallback,
            'num_qubits': self.num_qubits,
            'evaluations': self.evaluations,
            'weights': self.weights.to_dict(),
            'config': self.config.to_dict(),
        }


def zero_state(n: int) -> np.ndarray:
    """
    |0...0>
    """
    amplitudes = np.zeros(1 << n, dtype=np.complex128)
    amplitudes[0] = 1.0
    return amplitudes


def apply_ry(amplitudes: np.ndarray, n: int, qubit: int, theta: float) -> np.ndarray:
    """
    In-place RY(theta) on one qubit
    """
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    view = amplitudes.reshape(1 << qubit, 2, -1)
    zero = view[:, 0, :].copy()
    one = view[:, 1, :].copy()
    view[:, 0, :] = c * zero - s * one
    view[:, 1, :] = s * zero + c * one
    return amplitudes


def apply_cx(amplitudes: np.ndarray, n: int, control: int, target: int) -> np.ndarray:
    """
    In-place CNOT
    """
    if control == target:
        raise exceptions.ValidationError('control and target must differ')
    cube = amplitudes.reshape((2,) * n)
    selection = [slice(None)] * n
    selection[control] = 1
    controlled = cube[tuple(selection)]
    axis = target - 1 if target > control else target
    controlled[...] = np.flip(controlled, axis=axis).copy()
    return amplitudes


def prepare_state(ansatz: Ansatz, theta: Sequence[float]) -> Statevector:
    """
    Run the ansatz on |0...0>
    """
    theta = np.asarray(theta, dtype=np.float64).ravel()
    if theta.size != ansatz.parameter_count:
        raise exceptions.ParameterCountMismatch(
            f"{theta.size} parameters for an ansatz with {ansatz.parameter_count}")
    amplitudes = zero_state(ansatz.n)
    for gate, a, b in ansatz.gates():
        if gate == 'ry':
            apply_ry(amplitudes, ansatz.n, a, theta[b])
        else:
            apply_cx(amplitudes, ansatz.n, a, b)
    return Statevector(amplitudes=amplitudes, n=ansatz.n)


def expectation(state, diagonal: np.ndarray) -> float:
    """
    <psi|H|psi> for a diagonal H
    """
    amplitudes = state.amplitudes if isinstance(state, Statevector) else np.asarray(state)
    diagonal = np.asarray(diagonal, dtype=np.float64)
    if amplitudes.shape != diagonal.shape:
        raise exceptions.LengthMismatch(
            f"statevector of length {amplitudes.size} against diagonal of length {diagonal.size}")
    return float(np.dot(np.abs(amplitudes) ** 2, diagonal))


class _BudgetExhausted(Exception):
    pass


def minimize(objective: Callable[[np.ndarray], float], theta0: Sequence[float], budget: int,
             seed: int = DEFAULT_SEED, restart_scale: float = 0.5) -> OptimizationResult:
    """
    Nelder-Mead simplex with restarts from perturbations of the best point,
    stops after exactly `budget` objective evaluations or earlier for an
    empty parameter vector
    """
    if budget < 1:
        raise exceptions.ValidationError(f"budget must be at least 1, got {budget}")
    rng = np.random.default_rng(seed)
    theta0 = np.asarray(theta0, dtype=np.float64).ravel()
    best = {'theta': theta0.copy(), 'value': math.inf}
    trace = []

    def tracked(theta):
        if len(trace) >= budget:
            raise _BudgetExhausted()
        value = float(objective(theta))
        if not math.isfinite(value):
            raise exceptions.NonFiniteObjective(f"objective returned {value}")
        if value < best['value']:
            best['value'], best['theta'] = value, np.array(theta, dtype=np.float64)
        trace.append(best['value'])
        return value

    tracked(theta0)
    start = theta0
    try:
        while theta0.size and len(trace) < budget:
            before = len(trace)
            optimize.minimize(tracked, start, method='Nelder-Mead',
                              options={'maxfev': budget - len(trace), 'xatol': 1e-8, 'fatol': 1e-12,
                                       'adaptive': theta0.size > 2})
            if len(trace) == before:
                break
            start = best['theta'] + rng.normal(scale=restart_scale, size=theta0.size)
    except _BudgetExhausted:
        pass
    return OptimizationResult(theta=best['theta'], value=best['value'], trace=tuple(trace), evaluations=len(trace))


def _best_valid_at(index: int, layout: EncodingLayout, table: CodonTable, hamiltonian: PBP,
                   probability: float) -> Optional[BestValid]:
    bits = index_to_bits(index, layout.total_qubits)
    decoded = decode_bits(bits, layout, table)
    if not isinstance(decoded, Decoded):
        return None
    return BestValid(bits=''.join(map(str, bits)), assignment=decoded.indices, codons=decoded.codons,
                     energy=hamiltonian.evaluate(bits), probability=probability)


def sample_decode(state: Statevector, layout: EncodingLayout, table: CodonTable, hamiltonian: PBP,
                  tau: float = DEFAULT_TAU, diagonal: np.ndarray = None) -> SampleOutcome:
    """
    List basis states with probability >= tau by energy, decode the best
    valid one; when none is valid scan every state with nonzero probability
    """
    n = layout.total_qubits
    if state.n != n or state.amplitudes.size != 1 << n:
        raise exceptions.DimensionMismatch(f"{state.n}-qubit state for a {n}-qubit layout")

    probabilities = state.probabilities()
    indices = np.flatnonzero(probabilities >= tau)
    entries = []
    for index in indices:
        bits = index_to_bits(int(index), n)
        energy = float(diagonal[index]) if diagonal is not None else hamiltonian.evaluate(bits)
        valid = isinstance(decode_bits(bits, layout, table), Decoded)
        entries.append((energy, int(index), Candidate(''.join(map(str, bits)), float(probabilities[index]),
                                                      energy, valid)))
    entries.sort(key=lambda entry: (entry[0], entry[1]))
    candidates = tuple(entry[2] for entry in entries)

    for _, index, candidate in entries:
        if candidate.valid:
            best = _best_valid_at(index, layout, table, hamiltonian, candidate.probability)
            return SampleOutcome(candidates=candidates, best_valid=best, fallback=False)

    logger.warning(f'no valid candidate above tau={tau} for {layout.fragment.sequence}, scanning all states')
    support = np.flatnonzero((probabilities > 0) & valid_mask(layout, np.arange(1 << n)))
    if support.size == 0:
        return SampleOutcome(candidates=candidates, best_valid=None, fallback=True)
    energies = diagonal if diagonal is not None else hamiltonian.to_diagonal(n)
    index = int(support[np.argmin(energies[support])])
    best = _best_valid_at(index, layout, table, hamiltonian, float(probabilities[index]))
    return SampleOutcome(candidates=candidates, best_valid=best, fallback=True)


def _restart_seed(seed: int, restart: int) -> np.random.SeedSequence:
    return np.random.SeedSequence([seed, restart])


def run_vqe(fragment: Fragment, table: CodonTable, weights: HamiltonianWeights, config: VQEConfig = None,
            previous_codon: str = None) -> VQEResult:
    """
    Minimize the fragment Hamiltonian with restarts and decode the best state
    """
    config = config or VQEConfig()
    layout = build_layout(fragment, table, config.scheme)
    n = layout.total_qubits
    if n > MAX_VQE_QUBITS:
        raise exceptions.TooManyQubits(n, MAX_VQE_QUBITS)

    weights = resolve_weights(fragment, table, weights, previous_codon)
    hamiltonian = build_total(layout, table, weights, previous_codon)

    if n == 0:
        decoded = decode_bits((), layout, table)
        energy = hamiltonian.constant_term
        best = BestValid(bits='', assignment=decoded.indices, codons=decoded.codons, energy=energy, probability=1.0)
        logger.info(f'{fragment.sequence} needs no qubits, energy {energy:.6f}')
        return VQEResult(best_parameters=(), best_expectation=energy, energy_trace=(energy,),
                         candidates=(Candidate('', 1.0, energy, True),), best_valid=best, fallback=False,
                         num_qubits=0, evaluations=0, weights=weights, config=config)

    diagonal = hamiltonian.to_diagonal(n)
    ansatz = Ansatz(n, config.layers)

    def objective(theta):
        return expectation(prepare_state(ansatz, theta), diagonal)

    best_theta, best_value = None, math.inf
    trace, evaluations = [], 0
    for restart in range(config.restarts):
        sequence = _restart_seed(config.seed, restart)
        rng = np.random.default_rng(sequence)
        theta0 = rng.uniform(-math.pi, math.pi, ansatz.parameter_count)
        result = minimize(objective, theta0, config.max_evaluations, seed=sequence.spawn(1)[0])
        evaluations += result.evaluations
        running = best_value
        for value in result.trace:
            running = min(running, value)
            trace.append(running)
        logger.debug(f'restart {restart} of {fragment.sequence}: {result.value:.6f}')
        if result.value < best_value:
            best_theta, best_value = result.theta, result.value

    state = prepare_state(ansatz, best_theta)
    outcome = sample_decode(state, layout, table, hamiltonian, config.tau, diagonal)
    if outcome.best_valid is None:
        logger.warning(f'VQE found no valid state for {fragment.sequence}')

    logger.info(f'VQE {fragment.sequence}: {n} qubits, <H>={best_value:.6f}, '
                f'{len(outcome.candidates)} candidates, fallback={outcome.fallback}')
    return VQEResult(best_parameters=tuple(float(t) for t in best_theta), best_expectation=best_value,
                     energy_trace=tuple(trace), candidates=outcome.candidates, best_valid=outcome.best_valid,
                     fallback=outcome.fallback, num_qubits=n, evaluations=evaluations,
                     weights=weights, config=config)
