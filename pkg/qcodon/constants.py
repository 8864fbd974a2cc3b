LOGGER_NAME = 'qcodon'

NUCLEOTIDES = 'ACGU'
GC_NUCLEOTIDES = frozenset('GC')
STOP = '*'
MET = 'M'
START_CODON = 'AUG'

# Synonymous codon families of the mRNA codon table. B and Z are the
# ambiguity residues (Asn/Asp, Gln/Glu) and reuse their members' codons.
GENETIC_CODE = {
    'A': ('GCU', 'GCC', 'GCA', 'GCG'),
    'R': ('CGU', 'CGC', 'CGA', 'CGG', 'AGA', 'AGG'),
    'N': ('AAU', 'AAC'),
    'D': ('GAU', 'GAC'),
    'B': ('AAU', 'AAC', 'GAU', 'GAC'),
    'C': ('UGU', 'UGC'),
    'Q': ('CAA', 'CAG'),
    'E': ('GAA', 'GAG'),
    'Z': ('CAA', 'CAG', 'GAA', 'GAG'),
    'G': ('GGU', 'GGC', 'GGA', 'GGG'),
    'H': ('CAU', 'CAC'),
    'I': ('AUU', 'AUC', 'AUA'),
    'L': ('CUU', 'CUC', 'CUA', 'CUG', 'UUA', 'UUG'),
    'K': ('AAA', 'AAG'),
    'M': ('AUG',),
    'F': ('UUU', 'UUC'),
    'P': ('CCU', 'CCC', 'CCA', 'CCG'),
    'S': ('UCU', 'UCC', 'UCA', 'UCG', 'AGU', 'AGC'),
    'T': ('ACU', 'ACC', 'ACA', 'ACG'),
    'W': ('UGG',),
    'Y': ('UAU', 'UAC'),
    'V': ('GUU', 'GUC', 'GUA', 'GUG'),
    STOP: ('UAA', 'UGA', 'UAG'),
}

AMBIGUOUS_RESIDUES = {
    'B': frozenset('ND'),
    'Z': frozenset('QE'),
}

# Hamiltonian defaults
DEFAULT_C_F = 1.0
DEFAULT_C_GC = 1.0
DEFAULT_C_R = 1.0
DEFAULT_EPS_F = 1e-6
DEFAULT_RHO_GC = 1.5
MAX_GC_PER_CODON = 3
MAX_REPEAT_SCORE = 4

# Polynomial / simulation limits
PRUNE_THRESHOLD = 1e-15
MAX_DIAGONAL_VARIABLES = 26
MAX_EXHAUSTIVE_VARIABLES = 24
MAX_VQE_QUBITS = 26
MAX_EXACT_SEARCH_SPACE = 10 ** 8
EXACT_CHUNK_SIZE = 1 << 20

# VQE defaults
DEFAULT_LAYERS = 2
DEFAULT_RESTARTS = 5
DEFAULT_MAX_EVALUATIONS = 500
DEFAULT_SEED = 0
DEFAULT_TAU = 1e-3
NORM_TOLERANCE = 1e-10

# Pipeline defaults
DEFAULT_FRAGMENT_LENGTH = 8
MAX_RESOURCE_LENGTH = 32
ENERGY_TOLERANCE = 1e-9

# Environment
ENV_FETCH_ENDPOINT = 'QCODON_FETCH_ENDPOINT'
ENV_FETCH_TIMEOUT = 'QCODON_FETCH_TIMEOUT'
ENV_WORKERS = 'QCODON_WORKERS'
DEFAULT_FETCH_ENDPOINT = 'https://rest.uniprot.org/uniprotkb/{accession}.fasta'
DEFAULT_FETCH_TIMEOUT = 30.0

# Report file names
SUMMARY_FILE = 'summary.json'
SCATTER_FILE = 'scatter.csv'
RESOURCES_FILE = 'resources.csv'
MRNA_FILE = 'mrna.fasta'
PARTIAL_FILE = 'partial.jsonl'
