"""
Exceptions raised by the codon optimization engine
"""


class QCodonError(Exception):
    """
    Base error, carries the CLI exit code
    """
    exit_code = 1


class ValidationError(QCodonError):
    """
    Invalid input or violated precondition
    """
    exit_code = 2


class ResourceLimitError(QCodonError):
    """
    Problem too large for the configured guards
    """
    exit_code = 3


class IoError(QCodonError):
    """
    File or network failure
    """
    exit_code = 4


class EmptySequence(ValidationError):
    """
    FASTA record without residues
    """


class MalformedHeader(ValidationError):
    """
    FASTA header missing or without an identifier
    """


class UnknownResidue(ValidationError):
    """
    Residue letter outside the codon table alphabet
    """

    def __init__(self, letter, position):
        super().__init__(f"unknown residue {letter!r} at position {position}")
        self.letter = letter
        self.position = position


class InvalidCodon(ValidationError):
    """
    Codon is not three A/C/G/U symbols
    """


class UnknownCodon(ValidationError):
    """
    Codon not present in the codon table
    """


class NegativeFrequency(ValidationError):
    """
    Negative codon usage frequency
    """


class AllZeroFamily(ValidationError):
    """
    Every codon of a synonymous family has zero frequency
    """

    def __init__(self, amino_acid):
        super().__init__(f"all codon frequencies of {amino_acid!r} are zero")
        self.amino_acid = amino_acid


class IndexOutOfRange(ValidationError):
    """
    Codon index outside its synonymous family
    """


class SchemeMismatch(ValidationError):
    """
    Operation not defined for the layout's encoding scheme
    """


class LengthMismatch(ValidationError):
    """
    Bitstring or vector has the wrong length
    """


class ParameterCountMismatch(ValidationError):
    """
    Parameter vector does not fit the ansatz
    """


class DimensionMismatch(ValidationError):
    """
    Statevector dimension does not fit the layout
    """


class NonFiniteScalar(ValidationError):
    """
    Scale factor is NaN or infinite
    """


class NonFiniteObjective(ValidationError):
    """
    Objective returned NaN or infinity
    """


class InvalidWeights(ValidationError):
    """
    Hamiltonian weights out of range
    """


class InvalidConfig(ValidationError):
    """
    VQE configuration out of range
    """


class ZeroQubits(ValidationError):
    """
    Gate estimate requested for an empty register
    """


class EmptyAfterTrim(ValidationError):
    """
    Nothing left to optimize after removing the leading Met
    """


class OracleViolation(ValidationError):
    """
    Variational energy below the exact optimum
    """


class TooManyVariables(ResourceLimitError):
    """
    Too many binary variables for a dense diagonal
    """

    def __init__(self, n, limit):
        super().__init__(f"{n} variables exceed the limit of {limit}")
        self.n = n


class TooManyQubits(ResourceLimitError):
    """
    Too many qubits for statevector simulation
    """

    def __init__(self, n, limit):
        super().__init__(f"{n} qubits exceed the limit of {limit}")
        self.n = n


class SearchSpaceTooLarge(ResourceLimitError):
    """
    Too many codon assignments to enumerate
    """

    def __init__(self, size, limit):
        super().__init__(f"search space of {size} assignments exceeds {limit}")
        self.size = size


class NetworkError(IoError):
    """
    Endpoint unreachable or transport failure
    """


class NotFound(IoError):
    """
    Accession unknown to the endpoint
    """

    def __init__(self, accession):
        super().__init__(f"accession {accession!r} not found")
        self.accession = accession


class NonFastaResponse(IoError):
    """
    Endpoint answered with something other than FASTA
    """
