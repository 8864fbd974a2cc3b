"""
Multilinear pseudo-Boolean polynomials over binary variables q_k

Terms are keyed by the ascending tuple of their variable indices; q*q = q is
applied on construction so every term stays multilinear. Basis index b of a
bitstring uses qubit 0 as the most significant bit.
"""
import logging
import math
from types import MappingProxyType
from typing import Iterable, Mapping, NamedTuple, Sequence, Tuple

import numpy as np

from . import exceptions
from .constants import LOGGER_NAME, MAX_DIAGONAL_VARIABLES, PRUNE_THRESHOLD

logger = logging.getLogger(LOGGER_NAME)

VariableSet = Tuple[int, ...]


class Monomial(NamedTuple):
    """
    Product of distinct binary variables times a coefficient
    """
    variables: VariableSet
    coefficient: float


def as_bits(bits) -> Tuple[int, ...]:
    """
    Normalize '0101' strings and 0/1 sequences to a tuple of ints
    """
    if isinstance(bits, str):
        bits = bits.replace('|', '').replace(' ', '')
        if any(b not in '01' for b in bits):
            raise exceptions.ValidationError(f"bitstring {bits!r} is not binary")
        return tuple(int(b) for b in bits)
    values = tuple(int(b) for b in bits)
    if any(b not in (0, 1) for b in values):
        raise exceptions.ValidationError(f"bit values {values!r} are not binary")
    return values


def bits_to_index(bits: Sequence[int]) -> int:
    """
    Big-endian basis index of a bitstring
    """
    index = 0
    for bit in bits:
        index = (index << 1) | int(bit)
    return index


def index_to_bits(index: int, n: int) -> Tuple[int, ...]:
    """
    Big-endian bitstring of a basis index
    """
    return tuple((index >> (n - 1 - k)) & 1 for k in range(n))


class PseudoBooleanPolynomial:
    """
    Immutable sparse multilinear polynomial
    """
    __slots__ = ('_terms', '_num_vars')

    def __init__(self, terms: Mapping[Iterable[int], float] = None, num_vars: int = 0):
        merged = {}
        for variables, coefficient in (terms or {}).items():
            key = tuple(sorted(set(variables)))
            if key and key[0] < 0:
                raise exceptions.ValidationError(f"negative variable index in {key}")
            merged[key] = merged.get(key, 0.0) + float(coefficient)

        pruned = {k: c for k, c in merged.items() if abs(c) >= PRUNE_THRESHOLD}
        highest = max((k[-1] + 1 for k in pruned if k), default=0)
        self._terms = MappingProxyType(pruned)
        self._num_vars = max(int(num_vars), highest)

    @classmethod
    def zero(cls, num_vars: int = 0):
        """
        Zero polynomial
        """
        return cls({}, num_vars)

    @classmethod
    def constant(cls, value: float, num_vars: int = 0):
        """
        Constant polynomial
        """
        return cls({(): value}, num_vars)

    @classmethod
    def variable(cls, index: int, num_vars: int = 0):
        """
        Single variable q_index
        """
        return cls({(index,): 1.0}, num_vars)

    @property
    def terms(self) -> Mapping[VariableSet, float]:
        """
        Read-only view of the terms
        """
        return self._terms

    @property
    def num_vars(self) -> int:
        """
        Number of binary variables
        """
        return self._num_vars

    @property
    def degree(self) -> int:
        """
        Size of the largest variable set
        """
        return max((len(k) for k in self._terms), default=0)

    @property
    def constant_term(self) -> float:
        """
        Coefficient of the empty product
        """
        return self._terms.get((), 0.0)

    def is_zero(self) -> bool:
        """
        True when no term survived pruning
        """
        return not self._terms

    def monomials(self):
        """
        Terms sorted by variable set
        """
        return [Monomial(k, self._terms[k]) for k in sorted(self._terms)]

    def add(self, other: 'PseudoBooleanPolynomial') -> 'PseudoBooleanPolynomial':
        """
        Coefficient-wise sum
        """
        terms = dict(self._terms)
        for key, coefficient in other.terms.items():
            terms[key] = terms.get(key, 0.0) + coefficient
        return PseudoBooleanPolynomial(terms, max(self._num_vars, other.num_vars))

    def multiply(self, other: 'PseudoBooleanPolynomial') -> 'PseudoBooleanPolynomial':
        """
        Distributive product reduced with q*q = q
        """
        terms = {}
        for key_a, coefficient_a in self._terms.items():
            for key_b, coefficient_b in other.terms.items():
                key = tuple(sorted(set(key_a).union(key_b)))
                terms[key] = terms.get(key, 0.0) + coefficient_a * coefficient_b
        return PseudoBooleanPolynomial(terms, max(self._num_vars, other.num_vars))

    def scale(self, k: float) -> 'PseudoBooleanPolynomial':
        """
        Multiply every coefficient by k
        """
        k = float(k)
        if not math.isfinite(k):
            raise exceptions.NonFiniteScalar(f"scale factor {k} is not finite")
        return PseudoBooleanPolynomial({key: c * k for key, c in self._terms.items()}, self._num_vars)

    def evaluate(self, bits) -> float:
        """
        Value at a bit assignment, bits[k] is q_k
        """
        bits = as_bits(bits)
        if len(bits) < self._num_vars:
            raise exceptions.LengthMismatch(
                f"{len(bits)} bits given for {self._num_vars} variables")
        return math.fsum(c for key, c in self._terms.items() if all(bits[k] for k in key))

    def to_diagonal(self, n: int = None) -> np.ndarray:
        """
        Energies of all 2^n basis states, qubit 0 most significant
        """
        n = self._num_vars if n is None else int(n)
        if n < self._num_vars:
            raise exceptions.LengthMismatch(f"{n} qubits given for {self._num_vars} variables")
        if n > MAX_DIAGONAL_VARIABLES:
            raise exceptions.TooManyVariables(n, MAX_DIAGONAL_VARIABLES)

        diagonal = np.zeros(1 << n, dtype=np.float64)
        cube = diagonal.reshape((2,) * n) if n else diagonal
        for key in sorted(self._terms):
            # all assignments with every variable of the term set to 1
            selection = tuple(1 if k in key else slice(None) for k in range(n))
            cube[selection] += self._terms[key]
        logger.debug(f'diagonal built over {n} qubits from {len(self._terms)} terms')
        return diagonal

    def to_dict(self):
        """
        JSON friendly dump, terms sorted by variable set
        """
        return {
            'num_vars': self._num_vars,
            'degree': self.degree,
            'terms': [{'variables': list(m.variables), 'coefficient': m.coefficient}
                      for m in self.monomials()],
        }

    def __add__(self, other):
        if isinstance(other, (int, float)):
            other = PseudoBooleanPolynomial.constant(other)
        return self.add(other)

    __radd__ = __add__

    def __mul__(self, other):
        if isinstance(other, (int, float)):
            return self.scale(other)
        return self.multiply(other)

    __rmul__ = __mul__

    def __neg__(self):
        return self.scale(-1.0)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __eq__(self, other):
        if not isinstance(other, PseudoBooleanPolynomial):
            return NotImplemented
        return dict(self._terms) == dict(other.terms)

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __repr__(self):
        parts = []
        for variables, coefficient in self.monomials():
            name = '*'.join(f'q{k}' for k in variables)
            parts.append(f'{coefficient:g}' + (f'*{name}' if name else ''))
        return 'PBP(' + (' + '.join(parts) or '0') + ')'


PBP = PseudoBooleanPolynomial


def add(p: PBP, q: PBP) -> PBP:
    """
    Sum of two polynomials
    """
    return p.add(q)


def multiply(p: PBP, q: PBP) -> PBP:
    """
    Product of two polynomials
    """
    return p.multiply(q)


def scale(p: PBP, k: float) -> PBP:
    """
    Scalar multiple
    """
    return p.scale(k)


def evaluate(p: PBP, bits) -> float:
    """
    Value at a bit assignment
    """
    return p.evaluate(bits)


def to_diagonal(p: PBP, n: int) -> np.ndarray:
    """
    Dense energy vector over 2^n basis states
    """
    return p.to_diagonal(n)
