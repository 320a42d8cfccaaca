#!/usr/bin/env python3
"""eaoaqec.py - entanglement-assisted operator algebra QEC toolkit

repo: https://github.com/shakfu/eaoaqec

features:

- Single module which represents Pauli subgroups in binary symplectic form,
  with GF(2) elimination from galois
- Abelian extension of arbitrary Pauli groups with ebits
- Correctability decisions for EA, EAOQEC, EACQ and OAQEC frameworks
- Dressed, bare and noisy-Bob distances by vectorised, threaded enumeration
- EACQ representability with classical/quantum stabilizer splits
- Gauge fixing, clean qubits, EA gauge fixing and general gauge fixing
- Plain-text code tables and a catalog of worked examples

class structure:

PauliOperator
GeneratorSet
SymplecticDecomposition
EaoaqecCode
WeightEnumerator
UncorrectableSet
Construction
    GaugeFixing
    CleanQubits
        CssCleanQubits
    EaGaugeFixing
    GeneralGaugeFixing
ReproductionSuite

"""

import argparse
import datetime
import functools
import itertools
import json
import logging
import os
import re
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Iterable, Iterator, Optional, Sequence, Union

import numpy as np
from galois import GF2

__version__ = "0.1.0"

# ----------------------------------------------------------------------------
# type aliases

Pathlike = Union[str, Path]
Matrix = np.ndarray
Predicate = Callable[[np.ndarray], np.ndarray]


# ----------------------------------------------------------------------------
# env helpers


def getenv(key: str, default: bool = False) -> bool:
    """convert '0','1' env values to bool {True, False}"""
    return bool(int(os.getenv(key, default)))


def getenv_int(key: str, default: int) -> int:
    """get integer environ variable or default"""
    value = os.getenv(key)
    if value is None or not value.strip():
        return default
    return int(value)


# ----------------------------------------------------------------------------
# constants

PY_VER_MINOR = sys.version_info.minor
SCHEMA_VERSION = 1
MODES = ("dressed", "bare", "noisy_bob")
PHASE_PREFIX = {0: "", 1: "i", 2: "-", 3: "-i"}
PREFIX_PHASE = {"": 0, "+": 0, "i": 1, "+i": 1, "-": 2, "-i": 3}
CELL_BITS = {"I": (0, 0), "X": (1, 0), "Z": (0, 1), "Y": (1, 1), "XZ": (1, 1)}
# Y = iXZ carries one extra power of i
CELL_PHASE = {"I": 0, "X": 0, "Z": 0, "Y": 1, "XZ": 0}
# per-qubit symbol order used by enumeration: X < Y < Z
SYMBOL_BITS = np.array([[1, 0], [1, 1], [0, 1]], dtype=np.uint8)

# ----------------------------------------------------------------------------
# envar options

DEBUG = getenv("DEBUG", default=False)
COLOR = getenv("COLOR", default=True)
THREADS = getenv_int("EAOAQEC_THREADS", os.cpu_count() or 1)
CUTOFF = getenv_int("EAOAQEC_CUTOFF", 6)
TRANSVERSAL_LIMIT = getenv_int("EAOAQEC_TRANSVERSAL_LIMIT", 20)
ENUM_BATCH = getenv_int("EAOAQEC_ENUM_BATCH", 1 << 15)

# ----------------------------------------------------------------------------
# logging config


class CustomFormatter(logging.Formatter):
    """custom logging formatting class"""

    white = "\x1b[97;20m"
    grey = "\x1b[38;20m"
    green = "\x1b[32;20m"
    cyan = "\x1b[36;20m"
    yellow = "\x1b[33;20m"
    red = "\x1b[31;20m"
    bold_red = "\x1b[31;1m"
    reset = "\x1b[0m"
    fmt = "%(delta)s - %(levelname)s - %(name)s.%(funcName)s - %(message)s"
    cfmt = (
        f"{white}%(delta)s{reset} - "
        f"{{}}%(levelname)s{{}} - "
        f"{white}%(name)s.%(funcName)s{reset} - "
        f"{grey}%(message)s{reset}"
    )

    FORMATS = {
        logging.DEBUG: cfmt.format(grey, reset),
        logging.INFO: cfmt.format(green, reset),
        logging.WARNING: cfmt.format(yellow, reset),
        logging.ERROR: cfmt.format(red, reset),
        logging.CRITICAL: cfmt.format(bold_red, reset),
    }

    def __init__(self, use_color: bool = COLOR) -> None:
        super().__init__()
        self.use_color = use_color

    def format(self, record: logging.LogRecord) -> str:
        """custom logger formatting method"""
        if not self.use_color:
            log_fmt: str = self.fmt
        else:
            log_fmt = self.FORMATS.get(record.levelno, self.fmt)
        if PY_VER_MINOR > 10:
            duration = datetime.datetime.fromtimestamp(
                record.relativeCreated / 1000, datetime.UTC
            )
        else:
            duration = datetime.datetime.fromtimestamp(record.relativeCreated / 1000)
        record.delta = duration.strftime("%H:%M:%S")
        formatter = logging.Formatter(log_fmt)
        return formatter.format(record)


strm_handler = logging.StreamHandler()
strm_handler.setFormatter(CustomFormatter())
logging.basicConfig(
    level=logging.DEBUG if DEBUG else logging.INFO,
    handlers=[strm_handler],
)


# ----------------------------------------------------------------------------
# custom exceptions


class CodeError(Exception):
    """Base exception for code errors"""

    pass


class PauliError(CodeError):
    """Exception for malformed or mismatched Pauli operators"""

    def __init__(self, message: str, offset: Optional[int] = None) -> None:
        super().__init__(message)
        self.offset = offset


class GroupError(CodeError):
    """Exception for invalid generating sets"""

    pass


class ValidationError(CodeError):
    """Exception for codes violating structural invariants"""

    def __init__(self, message: str, report: Optional["ValidationReport"] = None) -> None:
        super().__init__(message)
        self.report = report


class CutoffError(CodeError):
    """Exception for invalid enumeration cutoffs and limits"""

    pass


class EacqError(CodeError):
    """Exception for codes outside the EACQ setting"""

    pass


class ConstructionError(CodeError):
    """Exception for failed code constructions"""

    def __init__(
        self, message: str, diagnosis: Optional["PauliOperator"] = None
    ) -> None:
        super().__init__(message)
        self.diagnosis = diagnosis


class CodeFileError(CodeError):
    """Exception for malformed code files"""

    def __init__(
        self,
        message: str,
        path: Optional[Pathlike] = None,
        line: Optional[int] = None,
        column: Optional[int] = None,
    ) -> None:
        location = ":".join(
            str(part) for part in (path or "<string>", line, column) if part is not None
        )
        super().__init__(f"{location}: {message}")
        self.path = path
        self.line = line
        self.column = column


class CatalogError(CodeError):
    """Exception for unknown catalog entries"""

    pass


# ----------------------------------------------------------------------------
# pauli core


@dataclass(frozen=True)
class PauliOperator:
    """An n-qubit Pauli i^phase_exp * prod_q X^x_q Z^z_q.

    Bit q of `x` and `z` is qubit q; qubit 0 is the leftmost table column.
    """

    num_qubits: int
    x: int = 0
    z: int = 0
    phase_exp: int = 0

    def __post_init__(self) -> None:
        if self.num_qubits < 1:
            raise PauliError(f"num_qubits must be positive, got {self.num_qubits}")
        limit = 1 << self.num_qubits
        if not (0 <= self.x < limit and 0 <= self.z < limit):
            raise PauliError(f"bit-vectors exceed {self.num_qubits} qubits")
        object.__setattr__(self, "phase_exp", self.phase_exp % 4)

    def __str__(self) -> str:
        return format_pauli(self)

    def __repr__(self) -> str:
        return f"<{self.__class__.__name__} '{format_pauli(self)}'>"

    def __mul__(self, other: "PauliOperator") -> "PauliOperator":
        return multiply(self, other)

    @classmethod
    def identity(cls, num_qubits: int) -> "PauliOperator":
        """the identity on num_qubits"""
        return cls(num_qubits)

    @classmethod
    def from_support(
        cls, num_qubits: int, cells: dict[int, str]
    ) -> "PauliOperator":
        """build from {qubit: cell} with cells in I, X, Y, Z, XZ"""
        x = z = phase = 0
        for qubit, cell in cells.items():
            if cell not in CELL_BITS:
                raise PauliError(f"unknown symbol {cell!r}")
            if not 0 <= qubit < num_qubits:
                raise PauliError(f"qubit {qubit} out of range for {num_qubits} qubits")
            xb, zb = CELL_BITS[cell]
            x |= xb << qubit
            z |= zb << qubit
            phase += CELL_PHASE[cell]
        return cls(num_qubits, x, z, phase)

    @classmethod
    def from_vector(cls, vector: Sequence[int], phase_exp: int = 0) -> "PauliOperator":
        """build from a symplectic [x|z] vector of length 2n"""
        bits = np.asarray(vector, dtype=np.uint8) & 1
        n = bits.shape[0] // 2
        x = sum(1 << int(q) for q in np.flatnonzero(bits[:n]))
        z = sum(1 << int(q) for q in np.flatnonzero(bits[n:]))
        return cls(n, x, z, phase_exp)

    def to_vector(self) -> np.ndarray:
        """symplectic [x|z] vector as uint8"""
        n = self.num_qubits
        return np.array(
            [(self.x >> q) & 1 for q in range(n)] + [(self.z >> q) & 1 for q in range(n)],
            dtype=np.uint8,
        )

    @property
    def x_bits(self) -> tuple[int, ...]:
        """x bit-vector in qubit order"""
        return tuple((self.x >> q) & 1 for q in range(self.num_qubits))

    @property
    def z_bits(self) -> tuple[int, ...]:
        """z bit-vector in qubit order"""
        return tuple((self.z >> q) & 1 for q in range(self.num_qubits))

    @property
    def weight(self) -> int:
        """number of qubits acted on non-trivially"""
        return (self.x | self.z).bit_count()

    @property
    def is_identity(self) -> bool:
        """identity bit-pattern, any phase"""
        return self.x == 0 and self.z == 0

    @property
    def support(self) -> tuple[int, ...]:
        """qubits acted on non-trivially"""
        mask = self.x | self.z
        return tuple(q for q in range(self.num_qubits) if (mask >> q) & 1)

    def cell(self, qubit: int) -> str:
        """symbol acting on qubit, Y for an x and z bit"""
        xb, zb = (self.x >> qubit) & 1, (self.z >> qubit) & 1
        return {(0, 0): "I", (1, 0): "X", (0, 1): "Z", (1, 1): "Y"}[(xb, zb)]

    def same_bits(self, other: "PauliOperator") -> bool:
        """equality up to phase"""
        return (
            self.num_qubits == other.num_qubits
            and self.x == other.x
            and self.z == other.z
        )

    def commutes(self, other: "PauliOperator") -> bool:
        """True iff the symplectic inner product vanishes"""
        return commutes(self, other)

    def adjoint(self) -> "PauliOperator":
        """(i^p X^x Z^z)^dagger = i^-p (-1)^(x.z) X^x Z^z"""
        c = (self.x & self.z).bit_count()
        return PauliOperator(self.num_qubits, self.x, self.z, -self.phase_exp + 2 * c)

    def inverse(self) -> "PauliOperator":
        """Paulis are unitary: inverse is the adjoint"""
        return self.adjoint()

    def is_hermitian(self) -> bool:
        return (self.phase_exp - (self.x & self.z).bit_count()) % 2 == 0

    def canonical(self) -> "PauliOperator":
        """Hermitian representative with a + sign"""
        c = (self.x & self.z).bit_count()
        return PauliOperator(self.num_qubits, self.x, self.z, c)

    def embed(self, total_qubits: int, offset: int = 0) -> "PauliOperator":
        """pad with identity to total_qubits, placing self at offset"""
        return embed(self, total_qubits, offset)

    def restrict(self, indices: Iterable[int]) -> "PauliOperator":
        """keep the listed qubits in the listed order"""
        return restrict(self, indices)


def _check_sizes(a: PauliOperator, b: PauliOperator) -> None:
    if a.num_qubits != b.num_qubits:
        raise PauliError(
            f"size mismatch: {a.num_qubits} vs {b.num_qubits} qubits"
        )


def multiply(a: PauliOperator, b: PauliOperator) -> PauliOperator:
    """exact product a*b; moving Z^za past X^xb costs (-1)^(za.xb)"""
    _check_sizes(a, b)
    phase = a.phase_exp + b.phase_exp + 2 * (a.z & b.x).bit_count()
    return PauliOperator(a.num_qubits, a.x ^ b.x, a.z ^ b.z, phase)


def commutes(a: PauliOperator, b: PauliOperator) -> bool:
    _check_sizes(a, b)
    return ((a.x & b.z).bit_count() + (a.z & b.x).bit_count()) % 2 == 0


def weight(a: PauliOperator) -> int:
    return a.weight


def product(ops: Iterable[PauliOperator], num_qubits: int) -> PauliOperator:
    """ordered product, identity for an empty iterable"""
    result = PauliOperator.identity(num_qubits)
    for op in ops:
        result = multiply(result, op)
    return result


def embed(a: PauliOperator, total_qubits: int, offset: int = 0) -> PauliOperator:
    if offset < 0 or offset + a.num_qubits > total_qubits:
        raise PauliError(
            f"cannot embed {a.num_qubits} qubits at offset {offset} into {total_qubits}"
        )
    return PauliOperator(total_qubits, a.x << offset, a.z << offset, a.phase_exp)


def restrict(a: PauliOperator, indices: Iterable[int]) -> PauliOperator:
    qubits = list(indices)
    if not qubits:
        raise PauliError("cannot restrict to an empty qubit set")
    x = z = 0
    for j, q in enumerate(qubits):
        if not 0 <= q < a.num_qubits:
            raise PauliError(f"qubit {q} out of range for {a.num_qubits} qubits")
        x |= ((a.x >> q) & 1) << j
        z |= ((a.z >> q) & 1) << j
    return PauliOperator(len(qubits), x, z, a.phase_exp)


def lift(a: PauliOperator, total_qubits: int) -> PauliOperator:
    """embed at offset 0 unless already on total_qubits"""
    if a.num_qubits == total_qubits:
        return a
    return embed(a, total_qubits, 0)


_TOKEN_RE = re.compile(r"\S+")
_PREFIX_RE = re.compile(r"^[+-]?i?")
_PREFIX_TOKEN_RE = re.compile(r"^(?:[+-]i?|[+-]?i)$")


def parse_pauli(text: str, num_qubits: Optional[int] = None) -> PauliOperator:
    """Parse compact ("-iXYZ") or table ("- X XZ I | Z") Pauli text.

    Y cells carry phase i (Y = iXZ), XZ cells carry none. A single token is
    read per character, several tokens are read per cell. PauliError.offset
    points at the offending character.
    """
    tokens = [
        (m.group(), m.start()) for m in _TOKEN_RE.finditer(text) if m.group() != "|"
    ]
    phase = 0
    if tokens and len(tokens) > 1 and _PREFIX_TOKEN_RE.match(tokens[0][0]):
        phase += PREFIX_PHASE[tokens[0][0]]
        tokens = tokens[1:]
    if not tokens:
        raise PauliError("empty Pauli string", offset=0)

    cells: list[tuple[str, int]] = []
    if len(tokens) == 1 and not (num_qubits == 1 and tokens[0][0] in CELL_BITS):
        token, start = tokens[0]
        prefix = _PREFIX_RE.match(token)
        assert prefix is not None
        phase += PREFIX_PHASE[prefix.group()]
        for i, ch in enumerate(token[prefix.end():], start=start + prefix.end()):
            if ch != "|":
                cells.append((ch, i))
    else:
        cells = tokens

    x = z = 0
    for q, (cell, offset) in enumerate(cells):
        if cell not in CELL_BITS:
            raise PauliError(f"unknown symbol {cell!r}", offset=offset)
        xb, zb = CELL_BITS[cell]
        x |= xb << q
        z |= zb << q
        phase += CELL_PHASE[cell]
    if num_qubits is not None and len(cells) != num_qubits:
        raise PauliError(
            f"expected {num_qubits} qubits, got {len(cells)}", offset=tokens[0][1]
        )
    return PauliOperator(len(cells), x, z, phase)


def format_pauli(
    op: PauliOperator, style: str = "compact", split: Optional[int] = None
) -> str:
    """Format as compact text or as table cells.

    compact always writes Y with the prefix absorbing the Y phases; table
    writes Y only for the canonical phase, XZ cells with the raw prefix
    otherwise. `split` inserts a "|" before that column.
    """
    n = op.num_qubits
    ys = (op.x & op.z).bit_count()
    if style == "compact":
        symbols = [op.cell(q) for q in range(n)]
        if split is not None and 0 < split < n:
            symbols.insert(split, "|")
        return PHASE_PREFIX[(op.phase_exp - ys) % 4] + "".join(symbols)
    if style != "table":
        raise PauliError(f"unknown format style {style!r}")
    canonical = (op.phase_exp - ys) % 4 == 0
    cells = []
    for q in range(n):
        symbol = op.cell(q)
        cells.append("XZ" if symbol == "Y" and not canonical else symbol)
    if split is not None and 0 < split < n:
        cells.insert(split, "|")
    if not canonical and PHASE_PREFIX[op.phase_exp]:
        cells.insert(0, PHASE_PREFIX[op.phase_exp])
    return " ".join(cells)


# ----------------------------------------------------------------------------
# gf(2) linear algebra


def operator_matrix(ops: Sequence[PauliOperator], num_qubits: int) -> Matrix:
    """stack symplectic vectors row-wise, shape (len(ops), 2n)"""
    matrix = np.zeros((len(ops), 2 * num_qubits), dtype=np.uint8)
    for i, op in enumerate(ops):
        if op.num_qubits != num_qubits:
            raise PauliError(
                f"size mismatch: {op.num_qubits} vs {num_qubits} qubits"
            )
        matrix[i] = op.to_vector()
    return matrix


def gf2_rref(matrix: Matrix) -> tuple[Matrix, list[int]]:
    """reduced row-echelon form over GF(2); returns (nonzero rows, pivot columns)"""
    m = np.asarray(matrix, dtype=np.uint8) & 1
    if m.ndim != 2:
        raise ValueError("gf2_rref expects a 2-d matrix")
    if not m.size:
        return m[:0].copy(), []
    reduced = GF2(m).row_reduce().view(np.ndarray).astype(np.uint8)
    nonzero = reduced.any(axis=1)
    rref = reduced[nonzero]
    return rref, [int(c) for c in rref.argmax(axis=1)]


def gf2_rank(matrix: Matrix) -> int:
    m = np.asarray(matrix, dtype=np.uint8) & 1
    if not m.size:
        return 0
    return int(np.linalg.matrix_rank(GF2(m)))


def gf2_reduce(rref: Matrix, pivots: Sequence[int], vectors: Matrix) -> Matrix:
    """residues of row vectors modulo the rowspace of a reduced matrix"""
    residue = np.array(vectors, dtype=np.uint8, copy=True) & 1
    for row, col in zip(rref, pivots):
        mask = residue[:, col].astype(bool)
        residue[mask] ^= row
    return residue


def gf2_nullspace(matrix: Matrix) -> Matrix:
    """basis of {v : matrix @ v = 0}, one row per free column"""
    m = np.asarray(matrix, dtype=np.uint8)
    cols = m.shape[1]
    rref, pivots = gf2_rref(m)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = np.zeros((len(free), cols), dtype=np.uint8)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for row, p in zip(rref, pivots):
            basis[i, p] = row[f]
    return basis


def gf2_solve(matrix: Matrix, target: Sequence[int]) -> Optional[np.ndarray]:
    """one solution of matrix @ v = target with free variables 0, None if inconsistent"""
    m = np.asarray(matrix, dtype=np.uint8)
    rows, cols = m.shape
    augmented = np.zeros((rows, cols + 1), dtype=np.uint8)
    augmented[:, :cols] = m & 1
    augmented[:, cols] = np.asarray(target, dtype=np.uint8) & 1
    rref, pivots = gf2_rref(augmented)
    if pivots and pivots[-1] == cols:
        return None
    solution = np.zeros(cols, dtype=np.uint8)
    for row, p in zip(rref, pivots):
        solution[p] = row[cols]
    return solution


def commutation_matrix(a: Matrix, b: Matrix) -> Matrix:
    """entry (i, j) is 1 iff row i of a anticommutes with row j of b"""
    n = a.shape[1] // 2
    ai = a.astype(np.int64)
    bi = b.astype(np.int64)
    return ((ai[:, :n] @ bi[:, n:].T + ai[:, n:] @ bi[:, :n].T) & 1).astype(np.uint8)


def syndrome_keys(syndromes: Matrix) -> list[bytes]:
    """hashable key per syndrome row"""
    packed = np.packbits(syndromes, axis=1)
    return [row.tobytes() for row in packed]


# ----------------------------------------------------------------------------
# symplectic


class GeneratorSet:
    """Independent generators of a Pauli subgroup with a cached GF(2) rowspace."""

    def __init__(
        self, generators: Iterable[PauliOperator], num_qubits: Optional[int] = None
    ) -> None:
        gens = list(generators)
        if num_qubits is None:
            if not gens:
                raise GroupError("an empty generator set needs num_qubits")
            num_qubits = gens[0].num_qubits
        self.num_qubits = num_qubits
        self.generators = gens
        self.matrix = operator_matrix(gens, num_qubits)
        self.rref, self.pivots = gf2_rref(self.matrix)
        if any(op.is_identity for op in gens):
            raise GroupError("identity is not a valid generator")
        if len(self.pivots) != len(gens):
            raise GroupError(
                f"generators are not independent: rank {len(self.pivots)} of {len(gens)}"
            )

    @classmethod
    def spanning(
        cls, ops: Iterable[PauliOperator], num_qubits: int
    ) -> "GeneratorSet":
        """maximal independent subset keeping earliest operators, empty allowed"""
        kept: list[PauliOperator] = []
        # echelon rows in insertion order; each is clear at earlier pivots
        rows: list[np.ndarray] = []
        pivots: list[int] = []
        for op in ops:
            if op.num_qubits != num_qubits:
                raise PauliError(
                    f"size mismatch: {op.num_qubits} vs {num_qubits} qubits"
                )
            residue = op.to_vector().astype(np.uint8) & 1
            for row, col in zip(rows, pivots):
                if residue[col]:
                    residue ^= row
            if residue.any():
                kept.append(op)
                rows.append(residue)
                pivots.append(int(np.flatnonzero(residue)[0]))
        return cls(kept, num_qubits)

    def __repr__(self) -> str:
        return f"<{self.__class__.__name__} '{len(self)} generators on {self.num_qubits} qubits'>"

    def __len__(self) -> int:
        return len(self.generators)

    def __iter__(self) -> Iterator[PauliOperator]:
        return iter(self.generators)

    def __getitem__(self, index: int) -> PauliOperator:
        return self.generators[index]

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def contains(self, op: PauliOperator) -> bool:
        """membership up to phase"""
        return bool(self.contains_vectors(op.to_vector()[None, :])[0])

    def contains_vectors(self, vectors: Matrix) -> np.ndarray:
        """batched membership of symplectic row vectors"""
        residue = gf2_reduce(self.rref, self.pivots, vectors)
        return ~residue.any(axis=1)

    def syndrome(self, op: PauliOperator) -> np.ndarray:
        """anticommutation pattern of op against each generator"""
        return self.syndromes(op.to_vector()[None, :])[0]

    def syndromes(self, vectors: Matrix) -> Matrix:
        return commutation_matrix(vectors, self.matrix)

    def centralizes(self, op: PauliOperator) -> bool:
        """True iff op commutes with every generator"""
        return not self.syndrome(op).any()

    def is_abelian(self) -> bool:
        return not commutation_matrix(self.matrix, self.matrix).any()

    def same_span(self, other: "GeneratorSet") -> bool:
        return (
            self.num_qubits == other.num_qubits
            and self.rank == other.rank
            and bool(self.contains_vectors(other.matrix).all())
        )


def independent_generators(ops: Sequence[PauliOperator]) -> GeneratorSet:
    """maximal independent subset by row reduction, earliest operators win"""
    if not ops:
        raise GroupError("cannot build a generator set from an empty list")
    return GeneratorSet.spanning(ops, ops[0].num_qubits)


def in_span(op: PauliOperator, gens: GeneratorSet) -> bool:
    if op.num_qubits != gens.num_qubits:
        raise PauliError(f"size mismatch: {op.num_qubits} vs {gens.num_qubits} qubits")
    return gens.contains(op)


def in_centralizer(op: PauliOperator, gens: GeneratorSet) -> bool:
    if op.num_qubits != gens.num_qubits:
        raise PauliError(f"size mismatch: {op.num_qubits} vs {gens.num_qubits} qubits")
    return gens.centralizes(op)


def centralizer_generators(gens: GeneratorSet) -> list[PauliOperator]:
    """generators of the centralizer of gens in P_n"""
    n = gens.num_qubits
    if not len(gens):
        kernel = np.eye(2 * n, dtype=np.uint8)
    else:
        # row [g.z | g.x] dotted with [d.x | d.z] is the symplectic product
        swapped = np.hstack([gens.matrix[:, n:], gens.matrix[:, :n]])
        kernel = gf2_nullspace(swapped)
    return [PauliOperator.from_vector(v).canonical() for v in kernel]


def group_elements(
    gens: Sequence[PauliOperator], num_qubits: int, limit: Optional[int] = None
) -> list[PauliOperator]:
    """all 2^m products in binary counting order, canonical phase"""
    limit = TRANSVERSAL_LIMIT if limit is None else limit
    if len(gens) > limit:
        raise CutoffError(f"{len(gens)} generators exceed the enumeration limit {limit}")
    elements = []
    for mask in range(1 << len(gens)):
        chosen = [g for i, g in enumerate(gens) if (mask >> i) & 1]
        elements.append(product(chosen, num_qubits).canonical())
    return elements


def contains_minus_identity(ops: Sequence[PauliOperator]) -> bool:
    """True iff the group generated by ops (with exact phases) contains -I"""
    ops = list(ops)
    if not ops:
        return False
    if any(not op.is_hermitian() for op in ops):
        return True
    for i, a in enumerate(ops):
        if any(not a.commutes(b) for b in ops[i + 1 :]):
            return True
    n = ops[0].num_qubits
    basis: list[PauliOperator] = []
    for op in ops:
        if basis:
            columns = operator_matrix(basis, n).T
            coeffs = gf2_solve(columns, op.to_vector())
        else:
            coeffs = np.zeros(0, dtype=np.uint8) if op.is_identity else None
        if coeffs is None:
            basis.append(op)
            continue
        chosen = [b for b, c in zip(basis, coeffs) if c]
        residual = multiply(product(chosen, n), op.adjoint())
        if residual.phase_exp != 0:
            return True
    return False


@dataclass(frozen=True)
class SymplecticPair:
    """An anticommuting (x, z) pair of generators."""

    x: PauliOperator
    z: PauliOperator

    def __iter__(self) -> Iterator[PauliOperator]:
        return iter((self.x, self.z))

    def is_symplectic(self) -> bool:
        return not self.x.commutes(self.z)


@dataclass
class SymplecticDecomposition:
    """Symplectic pairs plus the commuting isotropic remainder."""

    pairs: list[SymplecticPair]
    isotropic: list[PauliOperator]
    num_qubits: int

    def generators(self) -> list[PauliOperator]:
        """[z1, x1, z2, x2, ..., isotropic...]"""
        gens: list[PauliOperator] = []
        for pair in self.pairs:
            gens.extend((pair.z, pair.x))
        return gens + list(self.isotropic)

    def commutation_matrix(self) -> Matrix:
        gens = self.generators()
        mat = operator_matrix(gens, self.num_qubits)
        return commutation_matrix(mat, mat)

    def expected_commutation(self) -> Matrix:
        """block-diagonal [[0,1],[1,0]] per pair, zero elsewhere"""
        size = 2 * len(self.pairs) + len(self.isotropic)
        expected = np.zeros((size, size), dtype=np.uint8)
        for j in range(len(self.pairs)):
            expected[2 * j, 2 * j + 1] = expected[2 * j + 1, 2 * j] = 1
        return expected

    def is_valid(self) -> bool:
        return bool((self.commutation_matrix() == self.expected_commutation()).all())


def decompose(gens: Union[GeneratorSet, Sequence[PauliOperator]]) -> SymplecticDecomposition:
    """Symplectic Gram-Schmidt in input order.

    The first remaining generator becomes the z-member of a pair, its first
    anticommuting successor the x-member; the rest are cleaned against both.
    """
    if isinstance(gens, GeneratorSet):
        n = gens.num_qubits
        remaining = list(gens.generators)
    else:
        remaining = list(gens)
        if not remaining:
            raise GroupError("an empty operator list needs a GeneratorSet")
        n = remaining[0].num_qubits
    pairs: list[SymplecticPair] = []
    isotropic: list[PauliOperator] = []
    while remaining:
        first = remaining.pop(0)
        idx = next(
            (i for i, g in enumerate(remaining) if not first.commutes(g)), None
        )
        if idx is None:
            isotropic.append(first)
            continue
        partner = remaining.pop(idx)
        cleaned = []
        for g in remaining:
            if not g.commutes(first):
                g = g * partner
            if not g.commutes(partner):
                g = g * first
            cleaned.append(g.canonical())
        remaining = cleaned
        pairs.append(SymplecticPair(x=partner, z=first))
    return SymplecticDecomposition(pairs, isotropic, n)


def destabilizers(decomp: SymplecticDecomposition) -> list[PauliOperator]:
    """one operator per isotropic generator anticommuting with it alone"""
    n = decomp.num_qubits
    gens = decomp.generators()
    if not decomp.isotropic:
        return []
    mat = operator_matrix(gens, n)
    system = np.hstack([mat[:, n:], mat[:, :n]])
    offset = 2 * len(decomp.pairs)
    result = []
    for j in range(len(decomp.isotropic)):
        target = np.zeros(len(gens), dtype=np.uint8)
        target[offset + j] = 1
        solution = gf2_solve(system, target)
        if solution is None:
            raise GroupError("destabilizer system is inconsistent")
        result.append(PauliOperator.from_vector(solution).canonical())
    return result


def pair_up(ops: Sequence[PauliOperator]) -> list[SymplecticPair]:
    """flat (x, z, x, z, ...) list to symplectic pairs, via decompose if needed"""
    ops = list(ops)
    if not ops:
        return []
    if len(ops) % 2 == 0:
        pairs = [SymplecticPair(ops[i], ops[i + 1]) for i in range(0, len(ops), 2)]
        candidate = SymplecticDecomposition(pairs, [], ops[0].num_qubits)
        if candidate.is_valid():
            return pairs
    decomp = decompose(GeneratorSet(ops))
    if decomp.isotropic:
        raise GroupError(
            f"{len(decomp.isotropic)} operators have no symplectic partner"
        )
    return decomp.pairs


def extend_decomposition(decomp: SymplecticDecomposition) -> list[PauliOperator]:
    """Abelian extension: pair j gains ebit n+j, Z on the z-member, X on the x-member"""
    n = decomp.num_qubits
    total = n + len(decomp.pairs)
    extended: list[PauliOperator] = []
    for j, pair in enumerate(decomp.pairs):
        ebit = 1 << (n + j)
        z, x = pair.z, pair.x
        extended.append(PauliOperator(total, z.x, z.z | ebit, z.phase_exp))
        extended.append(PauliOperator(total, x.x | ebit, x.z, x.phase_exp))
    extended.extend(embed(g, total) for g in decomp.isotropic)
    return extended


def extend_to_abelian(h: GeneratorSet) -> tuple[GeneratorSet, int]:
    """Abelian extension of h with the minimal number of ebits."""
    if not len(h):
        return GeneratorSet([], h.num_qubits), 0
    decomp = decompose(h)
    extended = extend_decomposition(decomp)
    if contains_minus_identity(extended):
        raise GroupError("extended group contains -I")
    return GeneratorSet(extended), len(decomp.pairs)


# ----------------------------------------------------------------------------
# code model


@dataclass
class ValidationCheck:
    """Outcome of one named structural check."""

    name: str
    passed: bool
    detail: str = ""


@dataclass
class ValidationReport:
    """Named checks run by validate()."""

    checks: list[ValidationCheck]

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def failures(self) -> list[ValidationCheck]:
        return [check for check in self.checks if not check.passed]

    def __getitem__(self, name: str) -> ValidationCheck:
        for check in self.checks:
            if check.name == name:
                return check
        raise KeyError(name)

    def to_dict(self) -> dict[str, Any]:
        return {
            "passed": self.passed,
            "checks": [
                {"name": c.name, "passed": c.passed, "detail": c.detail}
                for c in self.checks
            ],
        }


@dataclass
class CodeParameters:
    """[[n,k,d;r,e,c_b]] parameters; d is None when not computed or over the cutoff."""

    n: int
    k: int
    r: int
    e: int
    c_b: int
    d: Optional[int] = None
    exceeds_cutoff: bool = False
    cutoff: Optional[int] = None
    mode: Optional[str] = None

    def __str__(self) -> str:
        return self.format()

    def format(self) -> str:
        if self.d is not None:
            return f"[[{self.n},{self.k},{self.d};{self.r},{self.e},{self.c_b}]]"
        if self.exceeds_cutoff:
            return f"[[{self.n},{self.k},>{self.cutoff};{self.r},{self.e},{self.c_b}]]"
        return f"[[{self.n},{self.k};{self.r},{self.e},{self.c_b}]]"

    def to_dict(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "k": self.k,
            "d": self.d,
            "r": self.r,
            "e": self.e,
            "c_b": self.c_b,
            "exceeds_cutoff": self.exceeds_cutoff,
            "cutoff": self.cutoff,
            "mode": self.mode,
            "notation": self.format(),
        }


class EaoaqecCode:
    """An EAOAQEC code C(H, S, G_0, L_0, T_0).

    The first n qubits belong to Alice, the trailing e qubits are ebits.
    Gauge, logical and transversal operators live on n+e qubits; operators
    given on n qubits are padded with identity on the ebits.
    """

    def __init__(
        self,
        n: int,
        s_group: Union[GeneratorSet, Sequence[PauliOperator]],
        gauge_pairs: Sequence[Union[SymplecticPair, PauliOperator]] = (),
        logical_pairs: Sequence[Union[SymplecticPair, PauliOperator]] = (),
        transversal: Sequence[PauliOperator] = (),
        name: str = "code",
    ) -> None:
        if not isinstance(s_group, GeneratorSet):
            s_group = GeneratorSet(list(s_group))
        if not 1 <= n <= s_group.num_qubits:
            raise GroupError(
                f"n={n} is incompatible with a stabilizer on {s_group.num_qubits} qubits"
            )
        self.name = name
        self.n = n
        self.e = s_group.num_qubits - n
        self.s_group = s_group
        self.h_group = GeneratorSet.spanning(
            [g.restrict(range(n)) for g in s_group], n
        )
        self.gauge_pairs = self._pairs(gauge_pairs)
        self.logical_pairs = self._pairs(logical_pairs)
        self.transversal = self._transversal(transversal)
        self._uncorrectable: dict[str, "UncorrectableSet"] = {}
        self.log = logging.getLogger(self.__class__.__name__)

    def __repr__(self) -> str:
        return f"<{self.__class__.__name__} '{self.name}' {self.parameters()}>"

    def _lift(self, op: PauliOperator) -> PauliOperator:
        if op.num_qubits not in (self.n, self.num_qubits):
            raise PauliError(
                f"operator on {op.num_qubits} qubits fits neither n={self.n} "
                f"nor n+e={self.num_qubits}"
            )
        return lift(op, self.num_qubits)

    def _pairs(
        self, items: Sequence[Union[SymplecticPair, PauliOperator]]
    ) -> list[SymplecticPair]:
        items = list(items)
        if all(isinstance(item, SymplecticPair) for item in items):
            return [
                SymplecticPair(self._lift(p.x), self._lift(p.z))
                for p in items
                if isinstance(p, SymplecticPair)
            ]
        flat = [self._lift(op) for op in items if isinstance(op, PauliOperator)]
        if len(flat) != len(items):
            raise GroupError("cannot mix symplectic pairs and flat operators")
        return pair_up(flat)

    def _transversal(self, ops: Sequence[PauliOperator]) -> list[PauliOperator]:
        lifted = [self._lift(op) for op in ops]
        if not lifted or not lifted[0].is_identity:
            idx = next((i for i, op in enumerate(lifted) if op.is_identity), None)
            if idx is not None:
                lifted.pop(idx)
            lifted.insert(0, PauliOperator.identity(self.num_qubits))
        return lifted

    # factories

    @classmethod
    def from_group(
        cls,
        h_ops: Sequence[PauliOperator],
        gauge_pairs: Sequence[Union[SymplecticPair, PauliOperator]] = (),
        logical_pairs: Optional[Sequence[Union[SymplecticPair, PauliOperator]]] = None,
        transversal: Sequence[PauliOperator] = (),
        name: str = "code",
        num_qubits: Optional[int] = None,
    ) -> "EaoaqecCode":
        """extend H with ebits; logical pairs are completed when omitted"""
        h = GeneratorSet(h_ops, num_qubits)
        s_group, _ = extend_to_abelian(h)
        return cls._assemble(h.num_qubits, s_group, gauge_pairs, logical_pairs, transversal, name)

    @classmethod
    def from_stabilizers(
        cls,
        n: int,
        s_ops: Sequence[PauliOperator],
        gauge_pairs: Sequence[Union[SymplecticPair, PauliOperator]] = (),
        logical_pairs: Optional[Sequence[Union[SymplecticPair, PauliOperator]]] = None,
        transversal: Sequence[PauliOperator] = (),
        name: str = "code",
        num_qubits: Optional[int] = None,
    ) -> "EaoaqecCode":
        """explicit Abelian S on n+e qubits"""
        s_group = GeneratorSet(s_ops, num_qubits)
        return cls._assemble(n, s_group, gauge_pairs, logical_pairs, transversal, name)

    @classmethod
    def _assemble(
        cls,
        n: int,
        s_group: GeneratorSet,
        gauge_pairs: Sequence[Union[SymplecticPair, PauliOperator]],
        logical_pairs: Optional[Sequence[Union[SymplecticPair, PauliOperator]]],
        transversal: Sequence[PauliOperator],
        name: str,
    ) -> "EaoaqecCode":
        code = cls(n, s_group, gauge_pairs, (), transversal, name)
        if logical_pairs is None:
            logical_pairs = complete_logicals(code)
        return code.replace(logical_pairs=logical_pairs)

    def replace(self, **changes: Any) -> "EaoaqecCode":
        """copy with some constructor arguments changed"""
        args: dict[str, Any] = {
            "n": self.n,
            "s_group": self.s_group,
            "gauge_pairs": self.gauge_pairs,
            "logical_pairs": self.logical_pairs,
            "transversal": self.transversal,
            "name": self.name,
        }
        args.update(changes)
        return EaoaqecCode(**args)

    def with_transversal(self, ops: Sequence[PauliOperator]) -> "EaoaqecCode":
        return self.replace(transversal=ops)

    def uncorrectable_set(self, mode: str = "dressed") -> "UncorrectableSet":
        """UncorrectableSet of a mode, built once per code"""
        if mode not in self._uncorrectable:
            self._uncorrectable[mode] = UncorrectableSet(self, mode)
        return self._uncorrectable[mode]

    # structure

    @property
    def num_qubits(self) -> int:
        """n + e"""
        return self.s_group.num_qubits

    @functools.cached_property
    def decomposition(self) -> SymplecticDecomposition:
        """isotropic-symplectic decomposition of H"""
        if not len(self.h_group):
            return SymplecticDecomposition([], [], self.n)
        return decompose(self.h_group)

    @property
    def s(self) -> int:
        """isotropic generator count of H"""
        return len(self.decomposition.isotropic)

    @property
    def r(self) -> int:
        """gauge qubits"""
        return len(self.gauge_pairs)

    @property
    def k(self) -> int:
        """logical qubits"""
        return self.n - self.e - self.s - self.r

    @property
    def c_b(self) -> int:
        """classical bit strings"""
        return len(self.transversal)

    @property
    def is_subspace(self) -> bool:
        return self.r == 0

    @property
    def is_hybrid(self) -> bool:
        return self.c_b > 1

    @property
    def gauge_ops(self) -> list[PauliOperator]:
        return [op for pair in self.gauge_pairs for op in pair]

    @property
    def logical_ops(self) -> list[PauliOperator]:
        return [op for pair in self.logical_pairs for op in pair]

    def restricted(self, ops: Iterable[PauliOperator]) -> list[PauliOperator]:
        """operators on Alice's n qubits"""
        return [op.restrict(range(self.n)) for op in ops]

    @functools.cached_property
    def h_isotropic(self) -> GeneratorSet:
        """H_I on n qubits"""
        return GeneratorSet(self.decomposition.isotropic, self.n)

    def parameters(self) -> CodeParameters:
        return CodeParameters(n=self.n, k=self.k, r=self.r, e=self.e, c_b=self.c_b)


def complete_logicals(code: EaoaqecCode) -> list[SymplecticPair]:
    """Logical pairs spanning Z(<H, G_0^(n)>) modulo H_I, lifted to n+e qubits."""
    n = code.n
    gauge_n = code.restricted(code.gauge_ops)
    commuting = GeneratorSet.spanning(list(code.h_group) + gauge_n, n)
    centralizer = centralizer_generators(commuting)
    isotropic = list(code.decomposition.isotropic)
    basis = GeneratorSet.spanning(isotropic + centralizer, n)
    complement = basis.generators[len(isotropic):]
    if not complement:
        return []
    decomp = decompose(GeneratorSet(complement))
    if decomp.isotropic:
        raise GroupError("centralizer complement is degenerate")
    return [
        SymplecticPair(lift(p.x, code.num_qubits), lift(p.z, code.num_qubits))
        for p in decomp.pairs
    ]


def _identity_on_ebits(code: EaoaqecCode, op: PauliOperator) -> bool:
    ebits = ((1 << code.e) - 1) << code.n
    return not ((op.x | op.z) & ebits)


def _pairs_symplectic(pairs: Sequence[SymplecticPair], num_qubits: int) -> bool:
    if not pairs:
        return True
    return SymplecticDecomposition(list(pairs), [], num_qubits).is_valid()


def validate(code: EaoaqecCode) -> ValidationReport:
    """Run every structural check on a code; never raises."""
    checks: list[ValidationCheck] = []

    def check(name: str, passed: bool, detail: str = "") -> None:
        checks.append(ValidationCheck(name, bool(passed), detail))

    S = code.s_group
    N = code.num_qubits
    check("stabilizer-abelian", S.is_abelian())
    check("no-minus-identity", not contains_minus_identity(S.generators))
    check(
        "restriction-independent",
        len(code.h_group) == len(S),
        f"rank {len(code.h_group)} of {len(S)}",
    )
    check(
        "minimal-ebits",
        code.e == len(code.decomposition.pairs),
        f"e={code.e}, symplectic pairs={len(code.decomposition.pairs)}",
    )
    others = code.gauge_ops + code.logical_ops + code.transversal
    offenders = [format_pauli(op) for op in others if not _identity_on_ebits(code, op)]
    check("identity-on-ebits", not offenders, ", ".join(offenders))
    offenders = [
        format_pauli(op)
        for op in code.gauge_ops + code.logical_ops
        if not S.centralizes(op)
    ]
    check("commute-with-stabilizer", not offenders, ", ".join(offenders))
    check("gauge-pairs-symplectic", _pairs_symplectic(code.gauge_pairs, N))
    check("logical-pairs-symplectic", _pairs_symplectic(code.logical_pairs, N))
    check(
        "gauge-logical-commute",
        all(g.commutes(lo) for g in code.gauge_ops for lo in code.logical_ops),
    )
    combined = operator_matrix(list(S) + code.gauge_ops + code.logical_ops, N)
    expected = len(S) + len(code.gauge_ops) + len(code.logical_ops)
    rank = gf2_rank(combined)
    check("independence", rank == expected, f"rank {rank} of {expected}")
    check("nonnegative-logicals", code.k >= 0, f"k={code.k}")
    check(
        "logical-count",
        len(code.logical_pairs) == code.k,
        f"{len(code.logical_pairs)} pairs for k={code.k}",
    )
    check("transversal-identity-first", code.transversal[0].is_identity)
    keys = syndrome_keys(S.syndromes(operator_matrix(code.transversal, N)))
    check(
        "distinct-cosets",
        len(set(keys)) == len(keys),
        f"{len(keys) - len(set(keys))} duplicate cosets",
    )
    return ValidationReport(checks)


def require_valid(code: EaoaqecCode) -> EaoaqecCode:
    """raise ValidationError listing the failed checks"""
    report = validate(code)
    if not report.passed:
        names = ", ".join(c.name for c in report.failures)
        raise ValidationError(f"code '{code.name}' fails: {names}", report)
    return code


def full_transversal(
    code: EaoaqecCode, limit: Optional[int] = None
) -> list[PauliOperator]:
    """the 2^m transversal X^a Z^b D^c over pairs and destabilizers of H, lifted"""
    limit = TRANSVERSAL_LIMIT if limit is None else limit
    m = len(code.h_group)
    if m > limit:
        raise CutoffError(f"H has {m} generators, over the transversal limit {limit}")
    decomp = code.decomposition
    gens = [op for pair in decomp.pairs for op in (pair.x, pair.z)]
    gens += destabilizers(decomp)
    return [lift(op, code.num_qubits) for op in group_elements(gens, code.n, limit)]


def parameters(
    code: EaoaqecCode,
    with_distance: bool = False,
    mode: str = "dressed",
    cutoff: Optional[int] = None,
    threads: Optional[int] = None,
) -> CodeParameters:
    params = code.parameters()
    if with_distance:
        report = distance(code, mode, cutoff, threads)
        params.d = report.d
        params.exceeds_cutoff = report.d is None
        params.cutoff = report.cutoff
        params.mode = mode
    return params


def same_coset(code: EaoaqecCode, a: PauliOperator, b: PauliOperator) -> bool:
    """a and b lie in the same Z(S)-coset"""
    la, lb = lift(a, code.num_qubits), lift(b, code.num_qubits)
    return bool((code.s_group.syndrome(la) == code.s_group.syndrome(lb)).all())


def syndrome_table(code: EaoaqecCode, ops: Sequence[PauliOperator]) -> Matrix:
    """rows ops, columns S generators, 1 for anticommuting"""
    lifted = [lift(op, code.num_qubits) for op in ops]
    return code.s_group.syndromes(operator_matrix(lifted, code.num_qubits))


# ----------------------------------------------------------------------------
# error correction


# 3^w must fit an int64 symbol index
MAX_SYMBOL_WEIGHT = 39


def _symbols(w: int, start: int, stop: int) -> np.ndarray:
    """symbol tuples start..stop-1 of the 3^w, first qubit most significant"""
    index = np.arange(start, stop, dtype=np.int64)[:, None]
    return (index // 3 ** np.arange(w - 1, -1, -1, dtype=np.int64)) % 3


class WeightEnumerator:
    """Weight-ascending enumeration of Paulis against a vectorised predicate.

    Within a weight, supports come in lexicographic order and symbols in
    X < Y < Z order per qubit. Chunks of at most `batch` operators are
    evaluated in waves of `threads`; the earliest chunk with a hit wins, so
    the first hit in enumeration order is returned whatever the thread count.
    """

    def __init__(
        self, num_qubits: int, threads: Optional[int] = None, batch: Optional[int] = None
    ) -> None:
        self.num_qubits = num_qubits
        self.threads = max(1, threads or THREADS)
        self.batch = max(1, batch or ENUM_BATCH)
        self.log = logging.getLogger(self.__class__.__name__)

    def __repr__(self) -> str:
        return f"<{self.__class__.__name__} '{self.num_qubits} qubits, {self.threads} threads'>"

    def candidates(
        self, supports: np.ndarray, w: int, start: int = 0, stop: Optional[int] = None
    ) -> Matrix:
        """symplectic vectors for symbol assignments start..stop on every support row"""
        n = self.num_qubits
        symbols = _symbols(w, start, 3**w if stop is None else stop)
        c, t = supports.shape[0], symbols.shape[0]
        vectors = np.zeros((c, t, 2 * n), dtype=np.uint8)
        ci = np.arange(c)[:, None, None]
        ti = np.arange(t)[None, :, None]
        cols = supports[:, None, :]
        vectors[ci, ti, cols] = SYMBOL_BITS[symbols, 0][None, :, :]
        vectors[ci, ti, n + cols] = SYMBOL_BITS[symbols, 1][None, :, :]
        return vectors.reshape(c * t, 2 * n)

    def chunks(self, w: int) -> Iterator[tuple[np.ndarray, int, int]]:
        """(supports, start, stop) units in enumeration order"""
        if w > MAX_SYMBOL_WEIGHT:
            raise CutoffError(f"weight {w} exceeds the enumerable {MAX_SYMBOL_WEIGHT}")
        total = 3**w
        combos = itertools.combinations(range(self.num_qubits), w)
        if total <= self.batch:
            per_chunk = self.batch // total
            while True:
                block = list(itertools.islice(combos, per_chunk))
                if not block:
                    return
                yield np.array(block, dtype=np.intp).reshape(len(block), w), 0, total
        # one support at a time, its symbols split into batches
        for support in combos:
            row = np.array([support], dtype=np.intp)
            for start in range(0, total, self.batch):
                yield row, start, min(start + self.batch, total)

    def _scan(
        self, unit: tuple[np.ndarray, int, int], w: int, predicate: Predicate
    ) -> Optional[tuple[np.ndarray, int]]:
        vectors = self.candidates(unit[0], w, unit[1], unit[2])
        tags = predicate(vectors)
        hits = np.flatnonzero(tags)
        if hits.size == 0:
            return None
        first = int(hits[0])
        return vectors[first], int(tags[first])

    def _search_weight(
        self, predicate: Predicate, w: int
    ) -> Optional[tuple[np.ndarray, int]]:
        chunks = self.chunks(w)
        if self.threads == 1:
            for unit in chunks:
                hit = self._scan(unit, w, predicate)
                if hit is not None:
                    return hit
            return None
        with ThreadPoolExecutor(max_workers=self.threads) as pool:
            while True:
                wave = list(itertools.islice(chunks, self.threads))
                if not wave:
                    return None
                for hit in pool.map(lambda u: self._scan(u, w, predicate), wave):
                    if hit is not None:
                        return hit

    def search(
        self, predicate: Predicate, max_weight: int, min_weight: int = 1
    ) -> Optional[tuple[PauliOperator, int]]:
        """first (operator, tag) with a nonzero tag, or None up to max_weight"""
        for w in range(max(1, min_weight), min(max_weight, self.num_qubits) + 1):
            self.log.debug("searching weight %d on %d qubits", w, self.num_qubits)
            hit = self._search_weight(predicate, w)
            if hit is not None:
                vector, tag = hit
                return PauliOperator.from_vector(vector).canonical(), tag
        return None


def _syndrome_ints(syndromes: Matrix) -> np.ndarray:
    weights = np.left_shift(
        np.uint64(1), np.arange(syndromes.shape[1], dtype=np.uint64)
    )
    return (syndromes.astype(np.uint64) * weights).sum(axis=1, dtype=np.uint64)


class UncorrectableSet:
    """The set an error product must avoid, by distance mode.

    dressed:   (Z(H) - <H_I, G_0^(n)>) u coset union, on n qubits
    bare:      (<H_I, L_0^(n)> - <H_I>) u coset union, on n qubits
    noisy_bob: (Z(S) - <S, G_0>) u coset union, on n+e qubits

    The coset union holds E with syndrome(E) = syndrome(T_i) + syndrome(T_j), i != j.
    """

    BRANCHES = {
        "dressed": "normalizer-minus-gauge",
        "bare": "logical-minus-isotropic",
        "noisy_bob": "normalizer-minus-gauge",
    }
    COSET_BRANCH = "coset-union"

    def __init__(self, code: EaoaqecCode, mode: str = "dressed") -> None:
        if mode not in MODES:
            raise CodeError(f"unknown distance mode {mode!r}, expected one of {MODES}")
        self.code = code
        self.mode = mode
        isotropic = list(code.decomposition.isotropic)
        if mode == "noisy_bob":
            self.num_qubits = code.num_qubits
            self.reference = code.s_group
            self.included = GeneratorSet.spanning(
                list(code.s_group) + code.gauge_ops, self.num_qubits
            )
            transversal = code.transversal
        else:
            self.num_qubits = code.n
            self.reference = code.h_group
            extra = code.gauge_ops if mode == "dressed" else code.logical_ops
            self.included = GeneratorSet.spanning(
                isotropic + code.restricted(extra), code.n
            )
            transversal = code.restricted(code.transversal)
        self.isotropic = GeneratorSet(isotropic, code.n)
        syndromes = self.reference.syndromes(operator_matrix(transversal, self.num_qubits))
        rows = [
            syndromes[i] ^ syndromes[j]
            for i in range(len(transversal))
            for j in range(i + 1, len(transversal))
        ]
        self.packed = syndromes.shape[1] <= 63
        if rows:
            stacked = np.array(rows, dtype=np.uint8)
            self.target_ints = np.unique(_syndrome_ints(stacked)) if self.packed else None
            self.target_keys = set(syndrome_keys(stacked))
        else:
            self.target_ints = np.zeros(0, dtype=np.uint64)
            self.target_keys = set()

    def __repr__(self) -> str:
        return f"<{self.__class__.__name__} '{self.mode}' on '{self.code.name}'>"

    def classify(self, vectors: Matrix) -> np.ndarray:
        """0 outside the set, 1 for the first branch, 2 for the coset union"""
        syndromes = self.reference.syndromes(vectors)
        if self.mode == "bare":
            first = self.included.contains_vectors(vectors) & ~self.isotropic.contains_vectors(
                vectors
            )
        else:
            first = ~syndromes.any(axis=1) & ~self.included.contains_vectors(vectors)
        if not self.target_keys:
            coset = np.zeros(len(vectors), dtype=bool)
        elif self.packed:
            coset = np.isin(_syndrome_ints(syndromes), self.target_ints)
        else:
            keys = syndrome_keys(syndromes)
            coset = np.fromiter((k in self.target_keys for k in keys), bool, len(keys))
        return np.where(first, 1, np.where(coset, 2, 0)).astype(np.int8)

    def branch(self, tag: int) -> Optional[str]:
        if tag == 1:
            return self.BRANCHES[self.mode]
        if tag == 2:
            return self.COSET_BRANCH
        return None

    def tag(self, op: PauliOperator) -> Optional[str]:
        """branch holding op, None when op is outside the set"""
        if op.num_qubits != self.num_qubits:
            raise PauliError(
                f"size mismatch: {op.num_qubits} vs {self.num_qubits} qubits"
            )
        return self.branch(int(self.classify(op.to_vector()[None, :])[0]))


@dataclass
class CorrectabilityVerdict:
    """Verdict on an error set; the witness pair is set when not correctable."""

    correctable: bool
    pair: Optional[tuple[int, int]] = None
    product: Optional[PauliOperator] = None
    violated: Optional[str] = None

    def to_dict(self) -> dict[str, Any]:
        return {
            "correctable": self.correctable,
            "pair": list(self.pair) if self.pair else None,
            "product": format_pauli(self.product) if self.product else None,
            "violated": self.violated,
        }


@dataclass
class DistanceReport:
    """Minimum weight found in the distance set of a mode."""

    mode: str
    cutoff: int
    d: Optional[int] = None
    witness: Optional[PauliOperator] = None
    branch: Optional[str] = None

    @property
    def exceeds_cutoff(self) -> bool:
        return self.d is None

    def to_dict(self) -> dict[str, Any]:
        return {
            "mode": self.mode,
            "cutoff": self.cutoff,
            "d": self.d,
            "exceeds_cutoff": self.exceeds_cutoff,
            "witness": format_pauli(self.witness) if self.witness else None,
            "branch": self.branch,
        }


def _pairwise(
    errors: Sequence[PauliOperator],
    num_qubits: int,
    violated: Callable[[PauliOperator], Optional[str]],
) -> CorrectabilityVerdict:
    for op in errors:
        if op.num_qubits != num_qubits:
            raise PauliError(f"size mismatch: {op.num_qubits} vs {num_qubits} qubits")
    for a in range(len(errors)):
        for b in range(a, len(errors)):
            prod = multiply(errors[a].adjoint(), errors[b])
            tag = violated(prod)
            if tag is not None:
                return CorrectabilityVerdict(False, (a, b), prod, tag)
    return CorrectabilityVerdict(True)


def ea_correctable(
    code: EaoaqecCode, errors: Sequence[PauliOperator]
) -> CorrectabilityVerdict:
    """errors on Alice's n qubits, ebits noiseless"""
    return _pairwise(errors, code.n, code.uncorrectable_set("dressed").tag)


def oaqec_correctable(
    code: EaoaqecCode, errors: Sequence[PauliOperator]
) -> CorrectabilityVerdict:
    """errors on all n+e qubits of the extended stabilizer code"""
    return _pairwise(errors, code.num_qubits, code.uncorrectable_set("noisy_bob").tag)


def eaoqec_correctable(
    code: EaoaqecCode, errors: Sequence[PauliOperator]
) -> CorrectabilityVerdict:
    """E in <H_I, H_G> or outside Z(H); only for codes without classical bits"""
    if code.is_hybrid:
        raise ValidationError(
            f"code '{code.name}' carries {code.c_b} transversal elements, expected 1"
        )
    gauge = GeneratorSet.spanning(
        list(code.decomposition.isotropic) + code.restricted(code.gauge_ops), code.n
    )

    def violated(op: PauliOperator) -> Optional[str]:
        if in_centralizer(op, code.h_group) and not in_span(op, gauge):
            return UncorrectableSet.BRANCHES["dressed"]
        return None

    return _pairwise(errors, code.n, violated)


def eacq_correctable(
    code: EaoaqecCode,
    errors: Sequence[PauliOperator],
    split: Optional["EacqSplit"] = None,
) -> CorrectabilityVerdict:
    """E in <S_QI, S_CI> or outside N(S_Q), using a representable split"""
    if split is None:
        result = is_eacq_representable(code)
        if not result.representable or result.split is None:
            raise EacqError(
                f"code '{code.name}' is not EACQ representable ({result.obstruction})"
            )
        split = result.split
    n = code.n
    quantum = GeneratorSet(split.quantum_gens, n)
    quantum_iso = decompose(quantum).isotropic if len(quantum) else []
    classical_iso = (
        decompose(GeneratorSet(split.classical_gens, n)).isotropic
        if split.classical_gens
        else []
    )
    isotropic = GeneratorSet.spanning(quantum_iso + classical_iso, n)

    def violated(op: PauliOperator) -> Optional[str]:
        if in_centralizer(op, quantum) and not in_span(op, isotropic):
            return UncorrectableSet.BRANCHES["dressed"]
        return None

    return _pairwise(errors, n, violated)


def distance(
    code: EaoaqecCode,
    mode: str = "dressed",
    cutoff: Optional[int] = None,
    threads: Optional[int] = None,
) -> DistanceReport:
    """Minimum weight in the distance set of `mode`, searched up to cutoff."""
    uncorrectable = code.uncorrectable_set(mode)
    num_qubits = uncorrectable.num_qubits
    cutoff = min(num_qubits, CUTOFF) if cutoff is None else cutoff
    if cutoff < 1:
        raise CutoffError(f"cutoff must be at least 1, got {cutoff}")
    log = logging.getLogger("distance")
    log.debug("%s distance of '%s' up to weight %d", mode, code.name, cutoff)
    hit = WeightEnumerator(num_qubits, threads).search(uncorrectable.classify, cutoff)
    if hit is None:
        return DistanceReport(mode, cutoff)
    witness, tag = hit
    return DistanceReport(mode, cutoff, witness.weight, witness, uncorrectable.branch(tag))


def centralizer_min_weight(
    code: EaoaqecCode, cutoff: int, threads: Optional[int] = None
) -> Optional[int]:
    """minimum weight of a non-identity element of Z(S), None above cutoff"""
    reference = code.s_group

    def predicate(vectors: Matrix) -> np.ndarray:
        return (~reference.syndromes(vectors).any(axis=1)).astype(np.int8)

    hit = WeightEnumerator(code.num_qubits, threads).search(predicate, cutoff)
    return hit[0].weight if hit else None


# ----------------------------------------------------------------------------
# eacq


@dataclass
class EacqSplit:
    """Quantum and classical stabilizer generators of an EA hybrid subspace code."""

    quantum_gens: list[PauliOperator]
    classical_gens: list[PauliOperator]
    transversal_map: list[tuple[PauliOperator, PauliOperator]]
    transversal_gens: list[PauliOperator]

    def to_dict(self) -> dict[str, Any]:
        return {
            "quantum": [format_pauli(op) for op in self.quantum_gens],
            "classical": [format_pauli(op) for op in self.classical_gens],
            "transversal_map": [
                [format_pauli(c), format_pauli(t)] for c, t in self.transversal_map
            ],
        }


@dataclass
class RepresentabilityResult:
    """Outcome of the EACQ representability decision."""

    representable: bool
    obstruction: str
    split: Optional[EacqSplit] = None

    def describe(self) -> str:
        if self.representable:
            return "representable"
        reason = {
            "coset-not-group": "coset set not a group",
            "centralizer-condition-fails": "condition (8) fails",
        }[self.obstruction]
        return f"not representable ({reason})"

    def to_dict(self) -> dict[str, Any]:
        return {
            "representable": self.representable,
            "obstruction": self.obstruction,
            "split": self.split.to_dict() if self.split else None,
        }


@dataclass
class BoundCheck:
    """d(C) >= d(C_SQ); holds is None when both searches hit the cutoff."""

    d_code: Optional[int]
    d_sq: Optional[int]
    holds: Optional[bool]
    cutoff: int

    def to_dict(self) -> dict[str, Any]:
        return {
            "d_code": self.d_code,
            "d_sq": self.d_sq,
            "holds": self.holds,
            "cutoff": self.cutoff,
        }


def _require_subspace(code: EaoaqecCode) -> None:
    if code.r:
        raise EacqError(f"code '{code.name}' has {code.r} gauge pairs, expected none")


def transversal_generators(code: EaoaqecCode) -> list[PauliOperator]:
    """T_0^(n) elements independent modulo Z(H), greedy in transversal order"""
    chosen: list[PauliOperator] = []
    rows = np.zeros((0, len(code.h_group)), dtype=np.uint8)
    for op in code.restricted(code.transversal[1:]):
        candidate = np.vstack([rows, code.h_group.syndrome(op)[None, :]])
        if gf2_rank(candidate) > len(chosen):
            chosen.append(op)
            rows = candidate
    return chosen


def quantum_stabilizer_subgroup(code: EaoaqecCode) -> GeneratorSet:
    """S_Q = Z(<T_0^(n)>) n H via the kernel of the H-by-T commutation matrix"""
    _require_subspace(code)
    h = code.h_group
    tgens = transversal_generators(code)
    if not tgens or not len(h):
        return GeneratorSet(h.generators, code.n)
    commutation = commutation_matrix(h.matrix, operator_matrix(tgens, code.n))
    kernel = gf2_nullspace(commutation.T)
    ops = [
        product([g for g, bit in zip(h, row) if bit], code.n).canonical()
        for row in kernel
    ]
    return GeneratorSet(ops, code.n)


def _check_split(h: GeneratorSet, split: EacqSplit, t0_n: Sequence[PauliOperator]) -> None:
    n = h.num_qubits
    union = split.quantum_gens + split.classical_gens
    if len(union) != len(h) or gf2_rank(operator_matrix(union, n)) != len(h):
        raise EacqError("split does not regenerate H with trivially intersecting parts")
    if not GeneratorSet(union, n).same_span(h):
        raise EacqError("split spans a different group than H")
    if any(not q.commutes(t) for q in split.quantum_gens for t in t0_n):
        raise EacqError("a quantum generator anticommutes with a transversal generator")
    if split.classical_gens:
        mapped = commutation_matrix(
            operator_matrix(split.classical_gens, n),
            operator_matrix(split.transversal_gens, n),
        )
        if not (mapped == np.eye(len(split.classical_gens), dtype=np.uint8)).all():
            raise EacqError("classical generators do not pair one-to-one with transversal generators")


def extract_split(h: GeneratorSet, t0_n: Sequence[PauliOperator]) -> EacqSplit:
    """Classify each generator of H as quantum or classical.

    A generator is first cleaned against the recorded (classical, transversal)
    pairs; if it still anticommutes with a live transversal generator, that
    generator is consumed and the remaining live ones are cleaned by it.
    """
    live = list(t0_n)
    recorded: list[tuple[PauliOperator, PauliOperator]] = []
    quantum: list[PauliOperator] = []
    for g in h:
        for c, t in recorded:
            if not g.commutes(t):
                g = (g * c).canonical()
        idx = next((i for i, t in enumerate(live) if not g.commutes(t)), None)
        if idx is None:
            quantum.append(g)
            continue
        t = live.pop(idx)
        live = [u if u.commutes(g) else (u * t).canonical() for u in live]
        recorded.append((g, t))
    if live:
        raise EacqError(f"{len(live)} transversal generators commute with all of H")
    split = EacqSplit(
        quantum_gens=quantum,
        classical_gens=[c for c, _ in recorded],
        transversal_map=recorded,
        transversal_gens=[t for _, t in recorded],
    )
    _check_split(h, split, t0_n)
    return split


def coset_set_is_group(code: EaoaqecCode) -> bool:
    """T_0 cosets closed under multiplication modulo Z(S)"""
    syndromes = syndrome_table(code, code.transversal)
    keys = set(syndrome_keys(syndromes))
    return all(
        syndrome_keys((syndromes[i] ^ syndromes[j])[None, :])[0] in keys
        for i in range(len(syndromes))
        for j in range(i + 1, len(syndromes))
    )


def is_eacq_representable(code: EaoaqecCode) -> RepresentabilityResult:
    """Decide EACQ representability; the split is returned for both verdicts
    once the coset set is a group, cleaned into Z(S_Q) when representable.
    """
    _require_subspace(code)
    if not all(_identity_on_ebits(code, t) for t in code.transversal):
        raise EacqError("transversal elements must act as identity on ebits")
    if not coset_set_is_group(code):
        return RepresentabilityResult(False, "coset-not-group")
    split = extract_split(code.h_group, transversal_generators(code))
    n = code.n
    quantum = decompose(GeneratorSet(split.quantum_gens, n)) if split.quantum_gens else None
    quantum_iso = quantum.isotropic if quantum else []
    if any(not c.commutes(q) for c in split.classical_gens for q in quantum_iso):
        return RepresentabilityResult(False, "centralizer-condition-fails", split)
    cleaned_map = []
    for c, t in split.transversal_map:
        for pair in quantum.pairs if quantum else []:
            if not c.commutes(pair.x):
                c = c * pair.z
            if not c.commutes(pair.z):
                c = c * pair.x
        cleaned_map.append((c.canonical(), t))
    witness = EacqSplit(
        quantum_gens=split.quantum_gens,
        classical_gens=[c for c, _ in cleaned_map],
        transversal_map=cleaned_map,
        transversal_gens=split.transversal_gens,
    )
    return RepresentabilityResult(True, "representable", witness)


def sq_distance_bound_check(
    code: EaoaqecCode, cutoff: Optional[int] = None, threads: Optional[int] = None
) -> BoundCheck:
    """compare d(C) with the distance of the code defined by S_Q alone"""
    sq = quantum_stabilizer_subgroup(code)
    sq_code = EaoaqecCode.from_group(
        sq.generators, num_qubits=code.n, name=f"{code.name}-sq"
    )
    d_code = distance(code, "dressed", cutoff, threads)
    d_sq = distance(sq_code, "dressed", cutoff, threads)
    if d_code.d is None and d_sq.d is None:
        holds: Optional[bool] = None
    elif d_code.d is None:
        holds = True
    elif d_sq.d is None:
        holds = False
    else:
        holds = d_code.d >= d_sq.d
    return BoundCheck(d_code.d, d_sq.d, holds, d_code.cutoff)


def canonical_eacq_code(s: int, e: int, k: int, c1: int, c2: int) -> EaoaqecCode:
    """Canonical EACQ code on n = s+e+k qubits.

    Qubits [0, c1) carry classical isotropic Z_i with transversal X_i,
    [c1, s) quantum isotropic Z_i, [s, s+c2) classical symplectic pairs
    with transversal X_q and Z_q, [s+c2, s+e) quantum symplectic pairs and
    the last k qubits the logical pairs.
    """
    if not (0 <= c1 <= s and 0 <= c2 <= e and k >= 0):
        raise GroupError(f"invalid canonical parameters s={s} e={e} k={k} c1={c1} c2={c2}")
    n = s + e + k

    def op(q: int, cell: str) -> PauliOperator:
        return PauliOperator.from_support(n, {q: cell})

    h_ops = [op(i, "Z") for i in range(s)]
    for q in range(s, s + e):
        h_ops += [op(q, "Z"), op(q, "X")]
    tgens = [op(i, "X") for i in range(c1)]
    for q in range(s, s + c2):
        tgens += [op(q, "X"), op(q, "Z")]
    logicals = [SymplecticPair(op(q, "X"), op(q, "Z")) for q in range(s + e, n)]
    return EaoaqecCode.from_group(
        h_ops,
        logical_pairs=logicals,
        transversal=group_elements(tgens, n),
        name=f"canonical_eacq_s{s}_e{e}_k{k}_c{c1}_{c2}",
        num_qubits=n,
    )


# ----------------------------------------------------------------------------
# constructions

CONSTRUCTION_KINDS = ("gf", "cq", "css-cq", "eagf", "ggf")
TRANSVERSAL_POLICIES = ("full_product", "explicit_list")


@dataclass
class ConstructionRequest:
    """Selection for one construction.

    pair_indices are 0-based gauge pair indices (GF pairs for ggf),
    ea_pair_indices the pairs fixed with ebits in ggf, roles the member of
    each GF pair promoted to a stabilizer ("z" or "x"), e_q the 0-based
    qubits turned into ebits by cq, ebits the ebit count for css-cq, and
    gauge_pairs an optional symplectic re-pairing of the gauge group.
    allow_outside accepts explicit transversal elements outside the product
    cosets; they are reported and void the distance hypotheses.
    """

    kind: str
    pair_indices: list[int] = field(default_factory=list)
    ea_pair_indices: list[int] = field(default_factory=list)
    roles: Optional[list[str]] = None
    e_q: list[int] = field(default_factory=list)
    ebits: int = 0
    transversal_policy: str = "full_product"
    explicit_transversal: Optional[list[PauliOperator]] = None
    gauge_pairs: Optional[list[SymplecticPair]] = None
    allow_outside: bool = False
    with_distance: bool = True
    cutoff: Optional[int] = None
    threads: Optional[int] = None


@dataclass
class HypothesisCheck:
    """A distance-bound premise or consequence: pass, fail or inconclusive."""

    name: str
    status: str
    detail: str = ""


@dataclass
class ConstructionResult:
    """Constructed code with parameters before and after."""

    kind: str
    code: EaoaqecCode
    before: CodeParameters
    after: CodeParameters
    hypothesis_report: list[HypothesisCheck]
    collisions: int = 0

    def check(self, name: str) -> HypothesisCheck:
        for check in self.hypothesis_report:
            if check.name == name:
                return check
        raise KeyError(name)

    def status(self, name: str) -> str:
        """status of a hypothesis check, "not-run" when it was skipped"""
        try:
            return self.check(name).status
        except KeyError:
            return "not-run"

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": self.kind,
            "name": self.code.name,
            "before": self.before.to_dict(),
            "after": self.after.to_dict(),
            "collisions": self.collisions,
            "hypotheses": [
                {"name": c.name, "status": c.status, "detail": c.detail}
                for c in self.hypothesis_report
            ],
        }


class Construction:
    """Code-to-code transform: check, build, validate, report."""

    kind = "base"

    def __init__(self, code: EaoaqecCode, request: ConstructionRequest) -> None:
        self.code = code
        self.request = request
        self.checks: list[HypothesisCheck] = []
        self.outside = False
        self.collisions = 0
        self.log = logging.getLogger(self.__class__.__name__)

    def __repr__(self) -> str:
        return f"<{self.__class__.__name__} '{self.code.name}'>"

    def fail(self, message: str, diagnosis: Optional[PauliOperator] = None) -> None:
        """log critical and raise ConstructionError"""
        self.log.critical(message)
        raise ConstructionError(message, diagnosis)

    def report(self, name: str, status: str, detail: str = "") -> None:
        self.log.info("%s: %s %s", name, status, detail)
        self.checks.append(HypothesisCheck(name, status, detail))

    def transversal_within(self, outside: Sequence[str], products: str) -> None:
        """raise for explicit elements outside the product cosets unless allowed"""
        name = "transversal-within-product-cosets"
        if not outside:
            self.report(name, "pass")
            return
        message = f"explicit transversal outside {products}: {', '.join(outside)}"
        if not self.request.allow_outside:
            self.fail(message)
        self.log.warning(message)
        self.report(name, "fail", ", ".join(outside))
        self.outside = True

    def selected_pairs(self, indices: Sequence[int], code: Optional[EaoaqecCode] = None) -> list[int]:
        code = code or self.code
        chosen = list(indices)
        if len(set(chosen)) != len(chosen):
            self.fail(f"duplicate gauge pair indices {chosen}")
        for i in chosen:
            if not 0 <= i < code.r:
                self.fail(f"gauge pair index {i} out of range for r={code.r}")
        return chosen

    def measure(self, code: EaoaqecCode) -> CodeParameters:
        req = self.request
        return parameters(code, req.with_distance, "dressed", req.cutoff, req.threads)

    def check(self) -> None:
        """preconditions on the input"""
        pass

    def build(self) -> EaoaqecCode:
        raise NotImplementedError

    def table_row(
        self, before: CodeParameters, after: CodeParameters
    ) -> list[tuple[str, bool]]:
        """parameter relations the construction guarantees"""
        return []

    def hypotheses(
        self, built: EaoaqecCode, before: CodeParameters, after: CodeParameters
    ) -> None:
        pass

    def process(self) -> ConstructionResult:
        self.log.info("%s on '%s'", self.kind, self.code.name)
        report = validate(self.code)
        if not report.passed:
            self.fail(
                "input code fails: " + ", ".join(c.name for c in report.failures)
            )
        self.check()
        built = self.build()
        report = validate(built)
        if not report.passed:
            self.fail(
                "constructed code fails: " + ", ".join(c.name for c in report.failures)
            )
        before = self.measure(self.code)
        after = self.measure(built)
        for label, ok in self.table_row(before, after):
            if not ok:
                self.fail(f"parameter relation violated: {label}")
        self.hypotheses(built, before, after)
        self.log.info("%s -> %s", before, after)
        return ConstructionResult(
            self.kind, built, before, after, list(self.checks), self.collisions
        )

    # shared hypothesis helpers

    def distance_not_decreased(
        self, before: CodeParameters, after: CodeParameters, name: str = "distance-not-decreased"
    ) -> None:
        if before.d is None or after.d is None:
            self.report(name, "inconclusive", "distance not computed within the cutoff")
        elif after.d >= before.d:
            self.report(name, "pass", f"d'={after.d} >= d={before.d}")
        else:
            self.report(name, "fail", f"d'={after.d} < d={before.d}")

    def min_weight_gauge_transversal(
        self, built: EaoaqecCode, trans_gens: Sequence[PauliOperator], d: Optional[int]
    ) -> str:
        """min wt(G'^(n) G_XT^(n)*) >= d with G' = <H'_I, G_0'^(n)>"""
        name = "min-weight-gauge-transversal"
        if d is None:
            self.report(name, "inconclusive", "input distance not computed")
            return "inconclusive"
        n = built.n
        gauge = GeneratorSet.spanning(
            list(built.decomposition.isotropic) + built.restricted(built.gauge_ops), n
        )
        combined = GeneratorSet.spanning(
            list(gauge) + [op.restrict(range(n)) for op in trans_gens], n
        )

        def predicate(vectors: Matrix) -> np.ndarray:
            hit = combined.contains_vectors(vectors) & ~gauge.contains_vectors(vectors)
            return hit.astype(np.int8)

        hit = WeightEnumerator(n, self.request.threads).search(predicate, d - 1)
        if hit is None:
            self.report(name, "pass", f"no element below weight {d}")
            return "pass"
        self.report(name, "fail", f"{format_pauli(hit[0])} has weight {hit[0].weight} < {d}")
        return "fail"

    def equal_distance_criterion(self, code: EaoaqecCode, before: CodeParameters) -> str:
        """d of the hybrid subspace code with G_0 u L_0 as logicals equals d"""
        name = "equal-distance-criterion"
        if before.d is None:
            self.report(name, "inconclusive", "input distance not computed")
            return "inconclusive"
        promoted = code.replace(
            gauge_pairs=[], logical_pairs=code.gauge_pairs + code.logical_pairs
        )
        report = distance(promoted, "dressed", self.request.cutoff, self.request.threads)
        if report.d is None:
            status, detail = "inconclusive", "distance not computed within the cutoff"
        elif report.d == before.d:
            status, detail = "pass", f"d={report.d}"
        else:
            status, detail = "fail", f"subspace d={report.d}, subsystem d={before.d}"
        self.report(name, status, detail)
        return status


class GaugeFixing(Construction):
    """Promote one member of each selected gauge pair to a stabilizer; its
    partner generates new transversal elements."""

    kind = "gf"

    def check(self) -> None:
        self.indices = self.selected_pairs(self.request.pair_indices)
        roles = self.request.roles or ["z"] * len(self.indices)
        if len(roles) != len(self.indices) or any(r not in ("z", "x") for r in roles):
            self.fail(f"roles {roles} must give 'z' or 'x' per selected pair")
        self.roles = roles
        if self.request.transversal_policy not in TRANSVERSAL_POLICIES:
            self.fail(f"unknown transversal policy {self.request.transversal_policy!r}")

    def build(self) -> EaoaqecCode:
        code = self.code
        N = code.num_qubits
        stabilizers, trans_gens = [], []
        for i, role in zip(self.indices, self.roles):
            pair = code.gauge_pairs[i]
            stab, trans = (pair.z, pair.x) if role == "z" else (pair.x, pair.z)
            stabilizers.append(stab)
            trans_gens.append(trans)
        self.trans_gens = trans_gens
        remaining = [p for i, p in enumerate(code.gauge_pairs) if i not in self.indices]
        s_group = GeneratorSet(list(code.s_group) + stabilizers)
        fixed = code.replace(
            s_group=s_group,
            gauge_pairs=remaining,
            transversal=[],
            name=f"{code.name}-gf",
        )
        products = [
            (t * g).canonical()
            for t in code.transversal
            for g in group_elements(trans_gens, N)
        ]
        product_keys = syndrome_keys(syndrome_table(fixed, products))
        self.log.info("fixing pairs %s, %d product elements", self.indices, len(products))
        if self.request.transversal_policy == "full_product":
            seen: set[bytes] = set()
            chosen = []
            for op, key in zip(products, product_keys):
                if key in seen:
                    self.collisions += 1
                    continue
                seen.add(key)
                chosen.append(op)
            if self.collisions:
                self.log.warning("%d product elements collide by coset", self.collisions)
            return fixed.with_transversal(chosen)
        explicit = fixed.with_transversal(self.request.explicit_transversal or [])
        keys = syndrome_keys(syndrome_table(fixed, explicit.transversal))
        if len(set(keys)) != len(keys):
            self.fail("explicit transversal repeats a coset")
        allowed = set(product_keys)
        outside = [
            format_pauli(op)
            for op, key in zip(explicit.transversal, keys)
            if key not in allowed
        ]
        self.transversal_within(outside, "T_0 G_XT")
        return explicit

    def table_row(
        self, before: CodeParameters, after: CodeParameters
    ) -> list[tuple[str, bool]]:
        y = len(self.indices)
        return [
            ("n unchanged", after.n == before.n),
            ("k unchanged", after.k == before.k),
            ("r' = r - y", after.r == before.r - y),
            ("e unchanged", after.e == before.e),
            ("c_b' <= 2^y c_b", after.c_b <= (1 << y) * before.c_b),
        ]

    def hypotheses(
        self, built: EaoaqecCode, before: CodeParameters, after: CodeParameters
    ) -> None:
        if self.outside:
            self.report(
                "distance-not-decreased", "inconclusive", "transversal outside product cosets"
            )
            return
        condition = self.min_weight_gauge_transversal(built, self.trans_gens, before.d)
        criterion = self.equal_distance_criterion(self.code, before)
        # the criterion implies the weight condition
        if "pass" not in (condition, criterion):
            self.report("distance-not-decreased", "inconclusive", "premise not met")
            return
        self.distance_not_decreased(before, after)
        if (
            self.request.transversal_policy == "full_product"
            and coset_set_is_group(self.code)
            and before.d is not None
        ):
            status = "pass" if after.d == before.d else "fail"
            self.report("distance-equality", status, f"d'={after.d}, d={before.d}")


class CleanQubits(Construction):
    """Turn the qubits E_Q of an ebit-free code into ebits by partial
    elimination on their columns."""

    kind = "cq"

    def check(self) -> None:
        if self.code.e:
            self.fail(f"clean qubits needs a code without ebits, got e={self.code.e}")
        self.source = self.code
        self.e_q = list(self.request.e_q)
        if len(set(self.e_q)) != len(self.e_q):
            self.fail(f"duplicate qubits in E_Q {self.e_q}")
        if any(not 0 <= q < self.code.n for q in self.e_q):
            self.fail(f"E_Q {self.e_q} out of range for n={self.code.n}")
        if len(self.e_q) >= self.code.n:
            self.fail("E_Q must leave at least one qubit with Alice")

    def columns(self, qubits: Sequence[int], n: int) -> list[int]:
        cols: list[int] = []
        for q in qubits:
            cols += [q, n + q]
        return cols

    def build(self) -> EaoaqecCode:
        return self.clean(self.source, self.e_q)

    def clean(self, code: EaoaqecCode, e_q: Sequence[int]) -> EaoaqecCode:
        if not e_q:
            return code
        n = code.n
        sub = code.s_group.matrix[:, self.columns(e_q, n)]
        if gf2_rank(sub) < 2 * len(e_q):
            kernel = gf2_nullspace(sub)[0]
            cells = {}
            for j, q in enumerate(e_q):
                c_x, c_z = int(kernel[2 * j]), int(kernel[2 * j + 1])
                cell = {(0, 0): "I", (0, 1): "X", (1, 0): "Z", (1, 1): "Y"}[(c_x, c_z)]
                if cell != "I":
                    cells[q] = cell
            diagnosis = PauliOperator.from_support(n, cells).canonical()
            self.fail(
                f"columns of E_Q {list(e_q)} are dependent; "
                f"{format_pauli(diagnosis)} centralizes S inside E_Q",
                diagnosis,
            )
        rows = list(code.s_group.generators)
        used: set[int] = set()
        pivots: dict[tuple[int, str], int] = {}
        for q in e_q:
            for kind in ("x", "z"):

                def has_bit(op: PauliOperator, q: int = q, kind: str = kind) -> bool:
                    return bool(((op.x if kind == "x" else op.z) >> q) & 1)

                p = next(
                    (i for i, r in enumerate(rows) if i not in used and has_bit(r)), None
                )
                if p is None:
                    self.fail(f"no pivot for the {kind} column of qubit {q}")
                    return code
                used.add(p)
                pivots[(q, kind)] = p
                for i, r in enumerate(rows):
                    if i != p and has_bit(r):
                        rows[i] = r * rows[p]
                self.log.debug("pivot row %d for %s column of qubit %d", p, kind, q)

        def cleaned(op: PauliOperator) -> PauliOperator:
            for q in e_q:
                if (op.x >> q) & 1:
                    op = op * rows[pivots[(q, "x")]]
                if (op.z >> q) & 1:
                    op = op * rows[pivots[(q, "z")]]
            return op.canonical()

        eq_set = set(e_q)
        order = [q for q in range(n) if q not in eq_set] + list(e_q)
        self.order = order
        self.pivot_rows = [rows[i].restrict(order) for i in sorted(pivots.values())]

        def moved(op: PauliOperator) -> PauliOperator:
            return cleaned(op).restrict(order)

        return EaoaqecCode(
            n - len(e_q),
            GeneratorSet([r.restrict(order) for r in rows]),
            [SymplecticPair(moved(p.x), moved(p.z)) for p in code.gauge_pairs],
            [SymplecticPair(moved(p.x), moved(p.z)) for p in code.logical_pairs],
            [moved(t) for t in code.transversal],
            name=f"{self.code.name}-cq",
        )

    def table_row(
        self, before: CodeParameters, after: CodeParameters
    ) -> list[tuple[str, bool]]:
        e = len(self.e_q)
        return [
            ("n' = n - e", after.n == before.n - e),
            ("k unchanged", after.k == before.k),
            ("r unchanged", after.r == before.r),
            ("e' = |E_Q|", after.e == e),
            ("c_b unchanged", after.c_b == before.c_b),
        ]

    def hypotheses(
        self, built: EaoaqecCode, before: CodeParameters, after: CodeParameters
    ) -> None:
        self.distance_not_decreased(before, after)
        if not self.e_q:
            return
        source = [t.restrict(self.order) for t in self.source.transversal]
        same = all(
            same_coset(built, a, b) for a, b in zip(source, built.transversal)
        )
        self.report(
            "transversal-cosets-preserved",
            "pass" if same else "fail",
            f"{len(source)} transversal elements",
        )


class CssCleanQubits(CleanQubits):
    """Clean qubits on a CSS code with equal X and Z check matrices, taking
    E_Q from the first pivots of one elimination."""

    kind = "css-cq"

    def check(self) -> None:
        code = self.code
        if code.e:
            self.fail(f"clean qubits needs a code without ebits, got e={code.e}")
        n = code.n
        xs = [g for g in code.s_group if g.z == 0]
        zs = [g for g in code.s_group if g.x == 0]
        if len(xs) + len(zs) != len(code.s_group):
            self.fail("stabilizer generators are not all pure X or pure Z")
        hx = operator_matrix(xs, n)[:, :n]
        hz = operator_matrix(zs, n)[:, n:]
        rref_x, pivots = gf2_rref(hx)
        rref_z, _ = gf2_rref(hz)
        if rref_x.shape != rref_z.shape or not (rref_x == rref_z).all():
            self.fail("H_X and H_Z have different row spaces")
        e = self.request.ebits
        if not 0 <= e <= len(pivots):
            self.fail(f"e={e} exceeds rank(H)={len(pivots)}")
        x_rows = [PauliOperator.from_vector(np.concatenate([row, np.zeros(n, np.uint8)])) for row in rref_x]
        z_rows = [PauliOperator.from_vector(np.concatenate([np.zeros(n, np.uint8), row])) for row in rref_x]
        self.source = code.replace(s_group=GeneratorSet(x_rows + z_rows))
        self.e_q = list(pivots[:e])
        self.log.info("rank(H)=%d, E_Q=%s", len(pivots), self.e_q)


def find_valid_eq(
    code: EaoaqecCode, e: int, limit: Optional[int] = None, threads: Optional[int] = None
) -> list[tuple[int, ...]]:
    """0-based qubit subsets of size e usable as E_Q, up to limit"""
    if e < 1:
        raise ConstructionError(f"e must be at least 1, got {e}")
    n = code.num_qubits
    combos = itertools.combinations(range(n), e)
    if centralizer_min_weight(code, e, threads) is None:
        return list(itertools.islice(combos, limit))
    valid: list[tuple[int, ...]] = []
    for subset in combos:
        cols = [q for q in subset] + [n + q for q in subset]
        if gf2_rank(code.s_group.matrix[:, cols]) == 2 * e:
            valid.append(subset)
            if limit is not None and len(valid) >= limit:
                break
    return valid


class EaGaugeFixing(Construction):
    """Move selected gauge pairs into H, one new trailing ebit per pair."""

    kind = "eagf"

    def check(self) -> None:
        self.indices = self.selected_pairs(self.request.pair_indices)

    def build(self) -> EaoaqecCode:
        code = self.code
        if not self.indices:
            return code
        N = code.num_qubits
        total = N + len(self.indices)
        s_ops = [embed(g, total) for g in code.s_group]
        for j, i in enumerate(self.indices):
            pair = code.gauge_pairs[i]
            ebit = 1 << (N + j)
            s_ops.append(PauliOperator(total, pair.z.x, pair.z.z | ebit, pair.z.phase_exp))
            s_ops.append(PauliOperator(total, pair.x.x | ebit, pair.x.z, pair.x.phase_exp))
            self.log.info("gauge pair %d -> ebit %d", i, N + j)

        def pad(pairs: Iterable[SymplecticPair]) -> list[SymplecticPair]:
            return [SymplecticPair(embed(p.x, total), embed(p.z, total)) for p in pairs]

        return EaoaqecCode(
            code.n,
            GeneratorSet(s_ops),
            pad(p for i, p in enumerate(code.gauge_pairs) if i not in self.indices),
            pad(code.logical_pairs),
            [embed(t, total) for t in code.transversal],
            name=f"{code.name}-eagf",
        )

    def table_row(
        self, before: CodeParameters, after: CodeParameters
    ) -> list[tuple[str, bool]]:
        y = len(self.indices)
        return [
            ("n unchanged", after.n == before.n),
            ("k unchanged", after.k == before.k),
            ("r' = r - y", after.r == before.r - y),
            ("e' = e + y", after.e == before.e + y),
            ("c_b unchanged", after.c_b == before.c_b),
        ]

    def hypotheses(
        self, built: EaoaqecCode, before: CodeParameters, after: CodeParameters
    ) -> None:
        self.distance_not_decreased(before, after)


class GeneralGaugeFixing(Construction):
    """Gauge fixing on pair_indices followed by EA gauge fixing on
    ea_pair_indices, after an optional symplectic re-pairing."""

    kind = "ggf"

    def check(self) -> None:
        req = self.request
        if set(req.pair_indices) & set(req.ea_pair_indices):
            self.fail(
                f"pair assignments overlap: {req.pair_indices} and {req.ea_pair_indices}"
            )
        if req.transversal_policy not in TRANSVERSAL_POLICIES:
            self.fail(f"unknown transversal policy {req.transversal_policy!r}")
        self.source = self.regauged()
        self.selected_pairs(list(req.pair_indices) + list(req.ea_pair_indices), self.source)

    def regauged(self) -> EaoaqecCode:
        code = self.code
        if self.request.gauge_pairs is None:
            return code
        N = code.num_qubits
        pairs = [
            SymplecticPair(lift(p.x, N), lift(p.z, N)) for p in self.request.gauge_pairs
        ]
        if len(pairs) != code.r:
            self.fail(f"re-pairing gives {len(pairs)} pairs, expected {code.r}")
        if not SymplecticDecomposition(pairs, [], N).is_valid():
            self.fail("re-paired gauge operators are not symplectic pairs")
        old = GeneratorSet.spanning(list(code.s_group) + code.gauge_ops, N)
        new = GeneratorSet.spanning(
            list(code.s_group) + [op for p in pairs for op in p], N
        )
        if not old.same_span(new):
            self.fail("re-paired gauge group differs modulo S")
        self.log.info("re-paired %d gauge pairs", len(pairs))
        return code.replace(gauge_pairs=pairs)

    def build(self) -> EaoaqecCode:
        req = self.request
        gf = GaugeFixing(
            self.source,
            ConstructionRequest(
                kind="gf",
                pair_indices=list(req.pair_indices),
                roles=req.roles,
                threads=req.threads,
                cutoff=req.cutoff,
            ),
        )
        gf.check()
        fixed = gf.build()
        self.gf = gf
        self.collisions = gf.collisions
        survivors = [i for i in range(self.source.r) if i not in req.pair_indices]
        ea = EaGaugeFixing(
            fixed,
            ConstructionRequest(
                kind="eagf", pair_indices=[survivors.index(i) for i in req.ea_pair_indices]
            ),
        )
        ea.check()
        built = ea.build().replace(name=f"{self.code.name}-ggf")
        if req.transversal_policy == "full_product":
            return built
        N = built.num_qubits
        explicit = built.with_transversal(
            [lift(op, N) for op in req.explicit_transversal or []]
        )
        ea_members = [
            op for i in req.ea_pair_indices for op in self.source.gauge_pairs[i]
        ]
        products = [
            lift((t * g).canonical(), N)
            for t in self.source.transversal
            for g in group_elements(gf.trans_gens + ea_members, self.source.num_qubits)
        ]
        allowed = set(syndrome_keys(syndrome_table(built, products)))
        keys = syndrome_keys(syndrome_table(built, explicit.transversal))
        outside = [
            format_pauli(op, "table")
            for op, key in zip(explicit.transversal, keys)
            if key not in allowed
        ]
        self.transversal_within(outside, "T_0 <G_XT, EA pairs>")
        return explicit

    def table_row(
        self, before: CodeParameters, after: CodeParameters
    ) -> list[tuple[str, bool]]:
        y_i = len(self.request.pair_indices)
        y_s = len(self.request.ea_pair_indices)
        exponent = y_i if self.request.transversal_policy == "full_product" else y_i + 2 * y_s
        return [
            ("n unchanged", after.n == before.n),
            ("k unchanged", after.k == before.k),
            ("r' = r - y_I - y_S", after.r == before.r - y_i - y_s),
            ("e' = e + y_S", after.e == before.e + y_s),
            (f"c_b' <= 2^{exponent} c_b", after.c_b <= (1 << exponent) * before.c_b),
        ]

    def hypotheses(
        self, built: EaoaqecCode, before: CodeParameters, after: CodeParameters
    ) -> None:
        if self.outside:
            self.report(
                "distance-not-decreased", "inconclusive", "transversal outside product cosets"
            )
            return
        condition = self.min_weight_gauge_transversal(built, self.gf.trans_gens, before.d)
        criterion = self.equal_distance_criterion(self.source, before)
        if "pass" in (condition, criterion):
            self.distance_not_decreased(before, after)
        else:
            self.report("distance-not-decreased", "inconclusive", "premise not met")


CONSTRUCTIONS: dict[str, type[Construction]] = {
    "gf": GaugeFixing,
    "cq": CleanQubits,
    "css-cq": CssCleanQubits,
    "eagf": EaGaugeFixing,
    "ggf": GeneralGaugeFixing,
}


def construct(code: EaoaqecCode, request: ConstructionRequest) -> ConstructionResult:
    """run the construction named by request.kind"""
    if request.kind not in CONSTRUCTIONS:
        raise ConstructionError(
            f"unknown construction {request.kind!r}, expected one of {CONSTRUCTION_KINDS}"
        )
    return CONSTRUCTIONS[request.kind](code, request).process()


def gauge_fix(code: EaoaqecCode, request: ConstructionRequest) -> ConstructionResult:
    return GaugeFixing(code, request).process()


def clean_qubits(code: EaoaqecCode, e_q: Sequence[int], **options: Any) -> ConstructionResult:
    return CleanQubits(code, ConstructionRequest(kind="cq", e_q=list(e_q), **options)).process()


def css_clean_qubits(code: EaoaqecCode, e: int, **options: Any) -> ConstructionResult:
    return CssCleanQubits(code, ConstructionRequest(kind="css-cq", ebits=e, **options)).process()


def ea_gauge_fix(
    code: EaoaqecCode, pair_indices: Sequence[int], **options: Any
) -> ConstructionResult:
    return EaGaugeFixing(
        code, ConstructionRequest(kind="eagf", pair_indices=list(pair_indices), **options)
    ).process()


def general_gauge_fix(code: EaoaqecCode, request: ConstructionRequest) -> ConstructionResult:
    return GeneralGaugeFixing(code, request).process()


# ----------------------------------------------------------------------------
# code io

SECTIONS = ("META", "H", "S", "G", "L", "T", "E")
_SECTION_RE = re.compile(r"^\[(\w+)\]$")


@dataclass
class CodeFileEntry:
    """One labeled operator line."""

    label: str
    op: PauliOperator
    line: int
    column: int


@dataclass
class CodeFile:
    """Sections of a code table file, in file order."""

    meta: dict[str, str] = field(default_factory=dict)
    sections: dict[str, list[CodeFileEntry]] = field(default_factory=dict)
    headers: dict[str, int] = field(default_factory=dict)

    def ops(self, tag: str) -> list[PauliOperator]:
        return [entry.op for entry in self.sections.get(tag, [])]


def _section_width(meta: dict[str, str], section: str, single: bool) -> Optional[int]:
    """qubit count META fixes for a row of section, None when open"""
    try:
        n = int(meta["n"])
        e = int(meta.get("e", "0"))
    except (KeyError, ValueError):
        return None
    if section == "S":
        return n + e if "e" in meta else None
    if section in ("H", "E"):
        return n
    # G, L and T rows may span the ebits; a lone cell is ambiguous only for n = 1
    return 1 if single and n == 1 else None


def parse_code_file(text: str, path: Optional[Pathlike] = None) -> CodeFile:
    """Split text into META key/values and labeled operator sections.

    `#` starts a comment; every operator line is `LABEL cells...` with an
    optional "|" before the ebit columns.
    """
    result = CodeFile()
    section: Optional[str] = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        header = _SECTION_RE.match(line.strip())
        if header:
            section = header.group(1).upper()
            if section not in SECTIONS:
                raise CodeFileError(
                    f"unknown section [{header.group(1)}]", path, lineno, line.index("[") + 1
                )
            if section in result.headers:
                raise CodeFileError(f"repeated section [{section}]", path, lineno, 1)
            result.headers[section] = lineno
            result.sections.setdefault(section, [])
            continue
        if section is None:
            raise CodeFileError("content before the first section", path, lineno, 1)
        if section == "META":
            key, sep, value = line.partition("=")
            if not sep or not key.strip():
                raise CodeFileError("expected 'key = value'", path, lineno, 1)
            result.meta[key.strip().lower()] = value.strip()
            continue
        label = next(_TOKEN_RE.finditer(line))
        body = line[label.end():]
        if not body.strip():
            raise CodeFileError(
                f"operator {label.group()!r} has no cells", path, lineno, label.end() + 1
            )
        try:
            cells = [t for t in body.split() if t != "|"]
            single = len(cells) == 1 or (len(cells) == 2 and cells[0] in PREFIX_PHASE)
            op = parse_pauli(body, _section_width(result.meta, section, single))
        except PauliError as exc:
            raise CodeFileError(
                str(exc), path, lineno, label.end() + (exc.offset or 0) + 1
            ) from exc
        entries = result.sections[section]
        column = label.end() + len(body) - len(body.lstrip()) + 1
        if entries and entries[0].op.num_qubits != op.num_qubits:
            raise CodeFileError(
                f"[{section}] operators have {entries[0].op.num_qubits} qubits, "
                f"{label.group()} has {op.num_qubits}",
                path,
                lineno,
                column,
            )
        entries.append(CodeFileEntry(label.group(), op, lineno, column))
    return result


def _meta_int(parsed: CodeFile, key: str, path: Optional[Pathlike]) -> Optional[int]:
    value = parsed.meta.get(key)
    if value is None:
        return None
    try:
        return int(value)
    except ValueError:
        raise CodeFileError(f"META {key} must be an integer, got {value!r}", path) from None


def code_from_file(parsed: CodeFile, path: Optional[Pathlike] = None) -> EaoaqecCode:
    """Build a code from parsed sections; [S] wins over [H], a missing [L] is completed."""
    name = parsed.meta.get("name", Path(path).stem if path else "code")
    n = _meta_int(parsed, "n", path)
    e = _meta_int(parsed, "e", path)
    gauge = parsed.ops("G")
    if len(gauge) % 2:
        raise CodeFileError(
            "[G] needs an even number of operators (x, z pairs)", path, parsed.headers["G"]
        )
    logical = parsed.ops("L") if "L" in parsed.sections else None
    transversal = parsed.ops("T")
    try:
        if parsed.sections.get("S"):
            s_ops = parsed.ops("S")
            total = s_ops[0].num_qubits
            if n is None:
                if e is None:
                    raise CodeFileError("[S] needs META n or e", path, parsed.headers["S"])
                n = total - e
            code = EaoaqecCode.from_stabilizers(n, s_ops, gauge, logical, transversal, name)
            if parsed.sections.get("H"):
                h = GeneratorSet.spanning(parsed.ops("H"), n)
                if not h.same_span(code.h_group):
                    raise CodeFileError(
                        "[H] differs from the restriction of [S]", path, parsed.headers["H"]
                    )
        elif parsed.sections.get("H"):
            code = EaoaqecCode.from_group(
                parsed.ops("H"), gauge, logical, transversal, name
            )
        else:
            raise CodeFileError("a code needs an [S] or [H] section", path)
    except (GroupError, PauliError) as exc:
        raise CodeFileError(str(exc), path) from exc
    if n is not None and code.n != n:
        raise CodeFileError(f"META n={n} but [H] acts on {code.n} qubits", path)
    if e is not None and code.e != e:
        raise CodeFileError(f"META e={e} but the code needs {code.e} ebits", path)
    return code


def loads_code(text: str, path: Optional[Pathlike] = None) -> EaoaqecCode:
    return code_from_file(parse_code_file(text, path), path)


def read_code(path: Pathlike) -> EaoaqecCode:
    """read a code table file"""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise CodeFileError(f"cannot read file: {exc.strerror}", path) from exc
    return loads_code(text, path)


def loads_operators(text: str, path: Optional[Pathlike] = None) -> list[PauliOperator]:
    """Error sets: an [E] section of a code table, or one bare Pauli per line."""
    lines = [raw.split("#", 1)[0].strip() for raw in text.splitlines()]
    if any(_SECTION_RE.match(line) for line in lines):
        parsed = parse_code_file(text, path)
        if "E" not in parsed.sections:
            raise CodeFileError("no [E] section", path)
        return parsed.ops("E")
    ops: list[PauliOperator] = []
    for lineno, line in enumerate(lines, start=1):
        if not line:
            continue
        try:
            ops.append(parse_pauli(line))
        except PauliError as exc:
            raise CodeFileError(str(exc), path, lineno, (exc.offset or 0) + 1) from exc
        if ops[0].num_qubits != ops[-1].num_qubits:
            raise CodeFileError("operators differ in length", path, lineno, 1)
    return ops


def read_operators(path: Pathlike) -> list[PauliOperator]:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise CodeFileError(f"cannot read file: {exc.strerror}", path) from exc
    return loads_operators(text, path)


def dumps_code(code: EaoaqecCode) -> str:
    """code table text; G, L and T are written on Alice's qubits"""
    rows: list[tuple[str, list[tuple[str, str]]]] = []
    split = code.n if code.e else None
    rows.append(
        ("S", [(f"S{i}", format_pauli(g, "table", split)) for i, g in enumerate(code.s_group, 1)])
    )
    gauge = []
    for i, pair in enumerate(code.gauge_pairs, 1):
        x, z = code.restricted(pair)
        gauge += [(f"GX{i}", format_pauli(x, "table")), (f"GZ{i}", format_pauli(z, "table"))]
    rows.append(("G", gauge))
    logical = []
    for i, pair in enumerate(code.logical_pairs, 1):
        x, z = code.restricted(pair)
        logical += [(f"LX{i}", format_pauli(x, "table")), (f"LZ{i}", format_pauli(z, "table"))]
    rows.append(("L", logical))
    rows.append(
        (
            "T",
            [
                (f"T{i}", format_pauli(t, "table"))
                for i, t in enumerate(code.restricted(code.transversal))
            ],
        )
    )
    width = max(len(label) for _, entries in rows for label, _ in entries)
    lines = [
        "# eaoaqec code table",
        "[META]",
        f"name = {code.name}",
        f"n = {code.n}",
        f"e = {code.e}",
    ]
    for tag, entries in rows:
        lines += ["", f"[{tag}]"]
        lines += [f"{label.ljust(width)}  {cells}" for label, cells in entries]
    return "\n".join(lines) + "\n"


def write_code(code: EaoaqecCode, path: Pathlike) -> None:
    """write a code table file"""
    path = Path(path)
    try:
        path.write_text(dumps_code(code))
    except OSError as exc:
        raise CodeFileError(f"cannot write file: {exc.strerror}", path) from exc
    logging.getLogger("code_io").info("wrote '%s' to %s", code.name, path)


def request_to_dict(request: ConstructionRequest) -> dict[str, Any]:
    """JSON-ready construction request"""
    data: dict[str, Any] = {
        "kind": request.kind,
        "pair_indices": list(request.pair_indices),
        "ea_pair_indices": list(request.ea_pair_indices),
        "roles": request.roles,
        "e_q": list(request.e_q),
        "ebits": request.ebits,
        "transversal_policy": request.transversal_policy,
        "explicit_transversal": None,
        "gauge_pairs": None,
        "allow_outside": request.allow_outside,
    }
    if request.explicit_transversal is not None:
        data["explicit_transversal"] = [format_pauli(op) for op in request.explicit_transversal]
    if request.gauge_pairs is not None:
        data["gauge_pairs"] = [
            [format_pauli(p.x), format_pauli(p.z)] for p in request.gauge_pairs
        ]
    return data


def request_from_dict(data: dict[str, Any]) -> ConstructionRequest:
    try:
        explicit = data.get("explicit_transversal")
        pairs = data.get("gauge_pairs")
        return ConstructionRequest(
            kind=data["kind"],
            pair_indices=list(data.get("pair_indices", [])),
            ea_pair_indices=list(data.get("ea_pair_indices", [])),
            roles=data.get("roles"),
            e_q=list(data.get("e_q", [])),
            ebits=int(data.get("ebits", 0)),
            transversal_policy=data.get("transversal_policy", "full_product"),
            explicit_transversal=(
                [parse_pauli(s) for s in explicit] if explicit is not None else None
            ),
            gauge_pairs=(
                [SymplecticPair(parse_pauli(x), parse_pauli(z)) for x, z in pairs]
                if pairs is not None
                else None
            ),
            allow_outside=bool(data.get("allow_outside", False)),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ConstructionError(f"malformed construction request: {exc}") from exc


# ----------------------------------------------------------------------------
# catalog

CATALOG: dict[str, Callable[[], EaoaqecCode]] = {}

HAMMING_15 = np.array(
    [[(col >> bit) & 1 for col in range(1, 16)] for bit in (3, 2, 1, 0)], dtype=np.uint8
)


def shortened_hamming() -> tuple[Matrix, Matrix]:
    """H_HS (bits 1, 12-15 removed) and H_HS^(f) (last row added to the third)"""
    h_hs = np.delete(HAMMING_15, [0, 11, 12, 13, 14], axis=1)
    h_f = h_hs.copy()
    h_f[2] ^= h_f[3]
    return h_hs, h_f


def register(name: str) -> Callable[[Callable[[], EaoaqecCode]], Callable[[], EaoaqecCode]]:
    def decorator(func: Callable[[], EaoaqecCode]) -> Callable[[], EaoaqecCode]:
        CATALOG[name] = func
        return func

    return decorator


@functools.lru_cache(maxsize=None)
def catalog(name: str) -> EaoaqecCode:
    """a validated catalog code"""
    if name not in CATALOG:
        raise CatalogError(
            f"unknown catalog entry {name!r}, expected one of {', '.join(catalog_names())}"
        )
    return require_valid(CATALOG[name]())


def catalog_names() -> list[str]:
    return sorted(CATALOG)


def _op(num_qubits: int, cell: str, qubits: Iterable[int]) -> PauliOperator:
    """cell on each 1-based qubit"""
    return PauliOperator.from_support(num_qubits, {q - 1: cell for q in qubits})


def _cells(num_qubits: int, cells: dict[int, str]) -> PauliOperator:
    return PauliOperator.from_support(num_qubits, {q - 1: c for q, c in cells.items()})


@register("six_qubit_example")
def six_qubit_example() -> EaoaqecCode:
    n = 6
    h = [
        _op(n, "Z", [1]),
        _op(n, "X", [1]),
        _op(n, "Z", [2]),
        _op(n, "X", [2]),
        _op(n, "Z", [3]),
        _op(n, "Z", [4]),
    ]
    return EaoaqecCode.from_group(
        h,
        gauge_pairs=[SymplecticPair(_op(n, "X", [5]), _op(n, "Z", [5]))],
        logical_pairs=[SymplecticPair(_op(n, "X", [6]), _op(n, "Z", [6]))],
        transversal=[PauliOperator.identity(n), _op(n, "X", [3]), _op(n, "X", [4])],
        name="six_qubit_example",
    )


COLOR_SUPPORTS = (
    range(1, 16, 2),
    (1, 2, 5, 6, 9, 10, 13, 14),
    (4, 5, 6, 7, 12, 13, 14, 15),
    range(8, 16),
)
COLOR_GAUGE = (
    ((3, 7, 11, 15), (12, 13, 14, 15)),
    ((12, 13, 14, 15), (3, 7, 11, 15)),
    ((5, 7, 13, 15), (10, 11, 14, 15)),
    ((10, 11, 14, 15), (5, 7, 13, 15)),
    ((6, 7, 14, 15), (9, 11, 13, 15)),
    ((9, 11, 13, 15), (6, 7, 14, 15)),
)


def _color_code(transversal: Sequence[PauliOperator], name: str) -> EaoaqecCode:
    n = 15
    s = [_op(n, "X", q) for q in COLOR_SUPPORTS] + [_op(n, "Z", q) for q in COLOR_SUPPORTS]
    gauge = [SymplecticPair(_op(n, "X", x), _op(n, "Z", z)) for x, z in COLOR_GAUGE]
    everything = range(1, 16)
    logical = [SymplecticPair(_op(n, "X", everything), _op(n, "Z", everything))]
    return EaoaqecCode.from_stabilizers(n, s, gauge, logical, transversal, name)


@register("subsystem_color_code")
def subsystem_color_code() -> EaoaqecCode:
    return _color_code([], "subsystem_color_code")


@register("color_code_hybrid_x5z6")
def color_code_hybrid_x5z6() -> EaoaqecCode:
    n = 15
    return _color_code(
        [
            PauliOperator.identity(n),
            _cells(n, {5: "X", 6: "Z"}),
            _cells(n, {9: "X", 11: "Z"}),
        ],
        "color_code_hybrid_x5z6",
    )


@register("color_code_hybrid_z131415")
def color_code_hybrid_z131415() -> EaoaqecCode:
    n = 15
    return _color_code(
        [PauliOperator.identity(n), _op(n, "Z", [13, 14, 15])], "color_code_hybrid_z131415"
    )


@register("color_code_clean_qubits_input")
def color_code_clean_qubits_input() -> EaoaqecCode:
    n = 15
    return _color_code(
        [
            PauliOperator.identity(n),
            _cells(n, {3: "XZ", 4: "Z", 5: "Z"}),
            _cells(n, {3: "X", 4: "XZ", 5: "XZ"}),
        ],
        "color_code_clean_qubits_input",
    )


@register("seven_qubit_non_eacq")
def seven_qubit_non_eacq() -> EaoaqecCode:
    n = 7
    h = [
        _cells(n, {1: "Z", 2: "Z", 3: "Z", 4: "Z", 6: "X", 7: "X"}),
        _cells(n, {3: "Y", 4: "X", 5: "Y", 7: "Z"}).canonical(),
        _op(n, "X", [3, 4, 5]),
    ]
    tgens = [_op(n, "Z", [1, 4, 7]), _op(n, "X", [1, 3, 4, 6])]
    return EaoaqecCode.from_group(
        h, transversal=group_elements(tgens, n), name="seven_qubit_non_eacq"
    )


@register("canonical_eacq_small")
def canonical_eacq_small() -> EaoaqecCode:
    return canonical_eacq_code(2, 1, 2, 1, 1).replace(name="canonical_eacq_small")


@register("shortened_hamming_ea_subsystem")
def shortened_hamming_ea_subsystem() -> EaoaqecCode:
    """EA subsystem code from H_HS^(f): two ebits, three gauge pairs, one logical"""
    n, total = 10, 12
    _, h_f = shortened_hamming()

    def row(r: int, cell: str, ebit: Optional[int] = None) -> PauliOperator:
        qubits = [int(q) + 1 for q in np.flatnonzero(h_f[r])]
        if ebit is not None:
            qubits.append(ebit)
        return _op(total, cell, qubits)

    s = [
        row(2, "Z", 11),
        row(3, "Z", 12),
        row(1, "Z"),
        row(0, "Z"),
        row(2, "X", 11),
        row(3, "X", 12),
        row(0, "X"),
        row(1, "X"),
    ]
    gauge = [
        SymplecticPair(_op(n, "X", [2, 7, 10]), _op(n, "Z", [1, 2, 3, 4])),
        SymplecticPair(_op(n, "X", [1, 3, 5]), _op(n, "Z", [4, 5, 8, 9])),
        SymplecticPair(_op(n, "X", [2, 4, 5]), _op(n, "Z", [1, 3, 4, 8, 9])),
    ]
    support = [2, 3, 5, 7, 8]
    logical = [SymplecticPair(_op(n, "X", support), _op(n, "Z", support))]
    return EaoaqecCode.from_stabilizers(
        n, s, gauge, logical, name="shortened_hamming_ea_subsystem"
    )


def hamming_regauge() -> list[SymplecticPair]:
    """(G1, G2), (G3, G4 G6), (G3 G5, G6) of the shortened Hamming code"""
    n = 10
    return [
        SymplecticPair(_op(n, "X", [2, 7, 10]), _op(n, "Z", [1, 2, 3, 4])),
        SymplecticPair(_op(n, "X", [1, 3, 5]), _op(n, "Z", [1, 3, 5])),
        SymplecticPair(_op(n, "X", [1, 2, 3, 4]), _op(n, "Z", [1, 3, 4, 8, 9])),
    ]


def hamming_transversal(extra: Sequence[str] = ()) -> list[PauliOperator]:
    """T_1..T_3 of the general gauge fixing example, plus named extras T4, T5"""
    n = 10
    ops = [
        _op(n, "X", [2, 7, 10]),
        _op(n, "X", [1, 7, 9]),
        _op(n, "Z", [1, 7, 9]),
    ]
    extras = {
        "T4": _cells(n, {1: "XZ", 2: "X", 7: "Z", 9: "XZ", 10: "X"}),
        "T5": _op(n, "X", [1, 7, 8]),
    }
    return ops + [extras[name] for name in extra]


def hamming_ggf_request(
    extra: Sequence[str] = (), **options: Any
) -> ConstructionRequest:
    """GF on the first re-paired pair, EA gauge fixing on the second"""
    return ConstructionRequest(
        kind="ggf",
        pair_indices=[0],
        ea_pair_indices=[1],
        roles=["z"],
        transversal_policy="explicit_list",
        explicit_transversal=hamming_transversal(extra),
        gauge_pairs=hamming_regauge(),
        **options,
    )


# ----------------------------------------------------------------------------
# reproduction suite

# S' rows of the general gauge fixing example in published table order
GGF_TABLE_ORDER = (0, 1, 9, 4, 5, 10, 6, 7, 3, 2, 8)


@dataclass
class ReproductionCheck:
    """One published quantity compared with its recomputation."""

    example: str
    quantity: str
    expected: str
    actual: str

    @property
    def passed(self) -> bool:
        return self.expected == self.actual

    def to_dict(self) -> dict[str, Any]:
        return {
            "example": self.example,
            "quantity": self.quantity,
            "expected": self.expected,
            "actual": self.actual,
            "passed": self.passed,
        }


class ReproductionSuite:
    """Recompute the worked examples and compare with published values."""

    EXAMPLES = {
        "six-qubit": "six_qubit",
        "color-code": "color_code",
        "gauge-fixing": "gauge_fixing",
        "hybrid-gauge-fixing": "hybrid_gauge_fixing",
        "clean-qubits": "clean_qubits",
        "ea-gauge-fixing": "ea_gauge_fixing",
        "general-gauge-fixing": "general_gauge_fixing",
        "eacq": "eacq",
    }

    def __init__(self, cutoff: Optional[int] = None, threads: Optional[int] = None) -> None:
        self.cutoff = cutoff
        self.threads = threads
        self.checks: list[ReproductionCheck] = []
        self.log = logging.getLogger(self.__class__.__name__)

    def __repr__(self) -> str:
        return f"<{self.__class__.__name__} '{len(self.EXAMPLES)} examples'>"

    def expect(self, example: str, quantity: str, expected: str, actual: Any) -> None:
        check = ReproductionCheck(example, quantity, expected, str(actual))
        if not check.passed:
            self.log.warning("%s %s: expected %s, got %s", example, quantity, expected, actual)
        self.checks.append(check)

    def params(self, code: EaoaqecCode, mode: str = "dressed") -> str:
        return parameters(code, True, mode, self.cutoff, self.threads).format()

    def run(self, name: str = "all") -> list[ReproductionCheck]:
        if name != "all" and name not in self.EXAMPLES:
            raise CatalogError(
                f"unknown example {name!r}, expected 'all' or one of {', '.join(self.EXAMPLES)}"
            )
        self.checks = []
        names = list(self.EXAMPLES) if name == "all" else [name]
        for example in names:
            self.log.info("reproducing %s", example)
            getattr(self, self.EXAMPLES[example])(example)
        return list(self.checks)

    def six_qubit(self, example: str) -> None:
        code = catalog("six_qubit_example")
        n = code.n
        self.expect(example, "parameters", "[[6,1;1,2,3]]", code.parameters())
        singles = [
            _op(n, "Z", [3]),
            _op(n, "Z", [4]),
            _op(n, "X", [5]),
            _op(n, "Z", [5]),
            _op(n, "X", [1]),
            _op(n, "X", [2]),
        ]
        sets = [[op] for op in singles] + [list(p) for p in itertools.combinations(singles, 2)]
        good = sum(ea_correctable(code, errors).correctable for errors in sets)
        self.expect(example, "correctable small sets", f"{len(sets)} of {len(sets)}", f"{good} of {len(sets)}")
        identity = PauliOperator.identity(n)
        logical_x = code.restricted([code.logical_pairs[0].x])[0]
        bad = [[identity, _op(n, "X", [3])], [identity, _op(n, "X", [4])], [identity, logical_x]]
        good = sum(ea_correctable(code, errors).correctable for errors in bad)
        self.expect(example, "uncorrectable sets", "0 of 3", f"{good} of 3")

    def color_code(self, example: str) -> None:
        self.expect(example, "parameters", "[[15,1,3;6,0,1]]", self.params(catalog("subsystem_color_code")))

    def gauge_fixing(self, example: str) -> None:
        result = gauge_fix(
            catalog("subsystem_color_code"),
            ConstructionRequest(
                kind="gf", pair_indices=[0, 1], roles=["x", "x"],
                cutoff=self.cutoff, threads=self.threads,
            ),
        )
        self.expect(example, "parameters", "[[15,1,3;4,0,4]]", result.after)
        self.expect(example, "distance equality", "pass", result.status("distance-equality"))

    def hybrid_gauge_fixing(self, example: str) -> None:
        result = gauge_fix(
            catalog("color_code_hybrid_x5z6"),
            ConstructionRequest(
                kind="gf", pair_indices=[0, 1], roles=["x", "x"],
                cutoff=self.cutoff, threads=self.threads,
            ),
        )
        self.expect(example, "input parameters", "[[15,1,2;6,0,3]]", result.before)
        self.expect(example, "parameters", "[[15,1,2;4,0,12]]", result.after)

    def clean_qubits(self, example: str) -> None:
        code = catalog("color_code_clean_qubits_input")
        result = clean_qubits(code, [0, 1], cutoff=self.cutoff, threads=self.threads)
        self.expect(example, "input parameters", "[[15,1,2;6,0,3]]", result.before)
        self.expect(example, "parameters", "[[13,1,3;6,2,3]]", result.after)
        noisy = distance(result.code, "noisy_bob", self.cutoff, self.threads)
        self.expect(example, "noisy-Bob distance", "2", noisy.d)
        cleaned = [format_pauli(g.restrict(range(13))) for g in result.code.s_group]
        self.expect(example, "S2' on Alice", "XIIXXIIXXIIXX", cleaned[1])
        self.expect(example, "S6' on Alice", "ZIIZZIIZZIIZZ", cleaned[5])

    def ea_gauge_fixing(self, example: str) -> None:
        code = catalog("color_code_hybrid_z131415")
        report = distance(code, "dressed", self.cutoff, self.threads)
        self.expect(example, "input distance", "1", report.d)
        witness = format_pauli(report.witness) if report.witness else None
        self.expect(example, "input witness", "I" * 11 + "Z" + "I" * 3, witness)
        result = ea_gauge_fix(code, [0], cutoff=self.cutoff, threads=self.threads)
        self.expect(example, "parameters", "[[15,1,3;5,1,2]]", result.after)

    def general_gauge_fixing(self, example: str) -> None:
        code = catalog("shortened_hamming_ea_subsystem")
        options = {"cutoff": self.cutoff, "threads": self.threads}
        result = general_gauge_fix(code, hamming_ggf_request(**options))
        self.expect(example, "parameters", "[[10,1,3;1,3,4]]", result.after)
        ordered = [result.code.s_group[i] for i in GGF_TABLE_ORDER]
        table = GeneratorSet(ordered).syndromes(
            operator_matrix(result.code.transversal, result.code.num_qubits)
        )
        rows = " ".join("".join(str(b) for b in row) for row in table)
        self.expect(
            example,
            "transversal syndromes",
            "00000000000 00000000001 00100000001 00000100000",
            rows,
        )
        with_t4 = general_gauge_fix(code, hamming_ggf_request(["T4"], **options))
        self.expect(example, "parameters with T4", "[[10,1,3;1,3,5]]", with_t4.after)
        # T5 lies outside the product cosets
        with_t5 = general_gauge_fix(
            code, hamming_ggf_request(["T5"], allow_outside=True, **options)
        )
        self.expect(example, "parameters with T5", "[[10,1,2;1,3,5]]", with_t5.after)

    def eacq(self, example: str) -> None:
        verdict = is_eacq_representable(catalog("seven_qubit_non_eacq"))
        self.expect(
            example,
            "seven-qubit verdict",
            "not representable (condition (8) fails)",
            verdict.describe(),
        )
        verdict = is_eacq_representable(catalog("canonical_eacq_small"))
        self.expect(example, "canonical verdict", "representable", verdict.describe())


# ----------------------------------------------------------------------------
# main


FRAMEWORKS = ("auto", "eaqec", "eaoqec", "eacq", "eaoaqec", "oaqec")
DISTANCE_MODES = {"dressed": "dressed", "bare": "bare", "noisy-bob": "noisy_bob"}


def load_code(source: str) -> EaoaqecCode:
    """a code file path or catalog:NAME"""
    if source.startswith("catalog:"):
        return catalog(source.split(":", 1)[1])
    return read_code(source)


def emit(args: argparse.Namespace, command: str, payload: dict[str, Any], text: str) -> None:
    if args.json:
        report = {"schema_version": SCHEMA_VERSION, "command": command}
        report.update(payload)
        print(json.dumps(report, indent=2))
    else:
        print(text)


def choose_framework(code: EaoaqecCode) -> str:
    if not code.is_hybrid:
        return "eaqec" if code.is_subspace else "eaoqec"
    if code.is_subspace and is_eacq_representable(code).representable:
        return "eacq"
    return "eaoaqec"


def check_correctable(
    code: EaoaqecCode, errors: Sequence[PauliOperator], framework: str
) -> tuple[str, CorrectabilityVerdict]:
    if framework == "auto":
        framework = choose_framework(code)
    if framework == "eaqec":
        if not code.is_subspace or code.is_hybrid:
            raise ValidationError(f"code '{code.name}' is not an EA stabilizer code")
        return framework, ea_correctable(code, errors)
    if framework == "eaoqec":
        return framework, eaoqec_correctable(code, errors)
    if framework == "eacq":
        return framework, eacq_correctable(code, errors)
    if framework == "oaqec":
        lifted = [lift(op, code.num_qubits) for op in errors]
        return framework, oaqec_correctable(code, lifted)
    return framework, ea_correctable(code, errors)


def one_based(values: Optional[Sequence[int]], what: str) -> list[int]:
    values = list(values or [])
    if any(v < 1 for v in values):
        raise ConstructionError(f"{what} are 1-based, got {values}")
    return [v - 1 for v in values]


def build_request(args: argparse.Namespace) -> ConstructionRequest:
    if args.request:
        try:
            request = request_from_dict(json.loads(Path(args.request).read_text()))
        except (OSError, json.JSONDecodeError) as exc:
            raise ConstructionError(f"cannot load request {args.request}: {exc}") from exc
        request.kind = args.kind
    else:
        transversal = read_operators(args.transversal) if args.transversal else None
        regauge = None
        if args.regauge:
            ops = read_operators(args.regauge)
            if len(ops) % 2:
                raise ConstructionError("re-pairing needs an even number of operators")
            regauge = [SymplecticPair(ops[i], ops[i + 1]) for i in range(0, len(ops), 2)]
        request = ConstructionRequest(
            kind=args.kind,
            pair_indices=one_based(args.pairs, "pair indices"),
            ea_pair_indices=one_based(args.ea_pairs, "pair indices"),
            roles=args.roles,
            e_q=one_based(args.eq, "qubits"),
            ebits=args.ebits,
            transversal_policy="explicit_list" if transversal is not None else "full_product",
            explicit_transversal=transversal,
            gauge_pairs=regauge,
        )
    request.allow_outside = request.allow_outside or args.allow_outside
    request.with_distance = not args.no_distance
    request.cutoff = args.cutoff
    request.threads = args.threads
    return request


def run_command(args: argparse.Namespace) -> int:
    """dispatch a parsed command line; returns the exit code"""
    if args.command == "validate":
        code = load_code(args.file)
        report = validate(code)
        lines = [f"{'ok' if c.passed else 'FAIL'}  {c.name}  {c.detail}".rstrip() for c in report.checks]
        emit(args, "validate", {"name": code.name, **report.to_dict()}, "\n".join(lines))
        return 0 if report.passed else 1

    if args.command == "params":
        code = load_code(args.file)
        mode = DISTANCE_MODES[args.distance] if args.distance else "dressed"
        params = parameters(code, args.distance is not None, mode, args.cutoff, args.threads)
        emit(args, "params", {"name": code.name, **params.to_dict()}, params.format())
        return 0

    if args.command == "distance":
        code = load_code(args.file)
        report = distance(code, DISTANCE_MODES[args.mode], args.cutoff, args.threads)
        if report.witness is None:
            text = f"{report.mode} distance > {report.cutoff} (exceeds cutoff)"
        else:
            witness = format_pauli(report.witness)
            text = f"{report.mode} distance {report.d}, witness {witness} ({report.branch})"
        emit(args, "distance", {"name": code.name, **report.to_dict()}, text)
        return 0

    if args.command == "correctable":
        code = load_code(args.file)
        errors = read_operators(args.errors)
        framework, verdict = check_correctable(code, errors, args.framework)
        if verdict.correctable or verdict.product is None or verdict.pair is None:
            text = f"correctable ({framework})"
        else:
            a, b = verdict.pair
            text = (
                f"not correctable ({framework}): E{a}^dagger E{b} = "
                f"{format_pauli(verdict.product)} in {verdict.violated}"
            )
        emit(args, "correctable", {"framework": framework, **verdict.to_dict()}, text)
        return 0 if verdict.correctable else 1

    if args.command == "eacq-check":
        code = load_code(args.file)
        result = is_eacq_representable(code)
        lines = [result.describe()]
        if result.split:
            lines += [f"quantum    {format_pauli(op, 'table')}" for op in result.split.quantum_gens]
            lines += [f"classical  {format_pauli(op, 'table')}" for op in result.split.classical_gens]
        emit(args, "eacq-check", {"name": code.name, **result.to_dict()}, "\n".join(lines))
        return 0 if result.representable else 1

    if args.command == "construct":
        code = load_code(args.file)
        result = construct(code, build_request(args))
        table = dumps_code(result.code)
        if args.output:
            write_code(result.code, args.output)
        lines = [f"# {result.before} -> {result.after}"]
        if result.collisions:
            lines.append(f"# {result.collisions} transversal products collide by coset")
        lines += [f"# {c.name}: {c.status} {c.detail}".rstrip() for c in result.hypothesis_report]
        text = "\n".join(lines) if args.output else table + "\n".join(lines)
        emit(args, "construct", {**result.to_dict(), "code": table}, text)
        return 0

    if args.command == "reproduce":
        suite = ReproductionSuite(args.cutoff, args.threads)
        checks = suite.run(args.example)
        lines = [
            f"{'PASS' if c.passed else 'FAIL'}  {c.example:<22} {c.quantity:<26} {c.actual}"
            for c in checks
        ]
        passed = all(c.passed for c in checks)
        payload = {"passed": passed, "checks": [c.to_dict() for c in checks]}
        emit(args, "reproduce", payload, "\n".join(lines))
        return 0 if passed else 1

    if args.command == "catalog":
        if args.name:
            code = catalog(args.name)
            emit(args, "catalog", {"name": code.name, "code": dumps_code(code)}, dumps_code(code))
        else:
            entries = {name: catalog(name).parameters().format() for name in catalog_names()}
            text = "\n".join(f"{name:<34} {params}" for name, params in entries.items())
            emit(args, "catalog", {"entries": entries}, text)
        return 0

    raise CodeError(f"unknown command {args.command!r}")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eaoaqec",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        description="Entanglement-assisted operator algebra QEC toolkit",
        epilog="codes are table files or catalog:NAME",
    )
    opt = parser.add_argument

    # fmt: off
    opt("--json", help="machine-readable output", action="store_true")
    opt("-j", "--threads", help="enumeration threads (default: %(default)s)", type=int, default=THREADS)
    opt("-c", "--cutoff", help="distance search cutoff (default: min(n, %s))" % CUTOFF, type=int)
    opt("-V", "--version", action="version", version=f"%(prog)s {__version__}")

    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("validate", help="run the structural checks")
    p.add_argument("file")

    p = sub.add_parser("params", help="print [[n,k,d;r,e,c_b]]")
    p.add_argument("file")
    p.add_argument("--distance", choices=list(DISTANCE_MODES), help="also compute the distance")

    p = sub.add_parser("distance", help="distance with witness")
    p.add_argument("file")
    p.add_argument("-m", "--mode", choices=list(DISTANCE_MODES), default="dressed")

    p = sub.add_parser("correctable", help="decide correctability of an error set")
    p.add_argument("file")
    p.add_argument("-e", "--errors", required=True, help="error set file", metavar="FILE")
    p.add_argument("-f", "--framework", choices=FRAMEWORKS, default="auto")

    p = sub.add_parser("eacq-check", help="EACQ representability")
    p.add_argument("file")

    p = sub.add_parser("construct", help="apply a construction")
    p.add_argument("kind", choices=CONSTRUCTION_KINDS)
    p.add_argument("file")
    p.add_argument("-p", "--pairs", type=int, nargs="+", help="gauge pairs, 1-based", metavar="I")
    p.add_argument("-a", "--ea-pairs", type=int, nargs="+", help="ggf pairs fixed with ebits, 1-based", metavar="I")
    p.add_argument("-r", "--roles", nargs="+", choices=("z", "x"), help="member promoted per GF pair")
    p.add_argument("-q", "--eq", type=int, nargs="+", help="qubits to turn into ebits, 1-based", metavar="Q")
    p.add_argument("-e", "--ebits", type=int, default=0, help="ebit count for css-cq")
    p.add_argument("-t", "--transversal", help="explicit transversal operators", metavar="FILE")
    p.add_argument("-g", "--regauge", help="re-paired gauge operators (x, z, ...)", metavar="FILE")
    p.add_argument("--request", help="construction request as json", metavar="FILE")
    p.add_argument("--allow-outside", action="store_true", help="accept transversal elements outside the product cosets")
    p.add_argument("--no-distance", action="store_true", help="skip distances and distance checks")
    p.add_argument("-o", "--output", help="write the constructed code", metavar="FILE")

    p = sub.add_parser("reproduce", help="recompute the worked examples")
    p.add_argument("example", nargs="?", default="all", help="example id or 'all'")

    p = sub.add_parser("catalog", help="list or dump catalog codes")
    p.add_argument("name", nargs="?")
    # fmt: on

    return parser


def main(argv: Optional[Sequence[str]] = None) -> None:
    """commandline api entrypoint"""
    args = make_parser().parse_args(argv)
    try:
        status = run_command(args)
    except CodeError as exc:
        logging.getLogger("main").debug("failed", exc_info=True)
        print(f"error: {exc}", file=sys.stderr)
        sys.exit(2)
    sys.exit(status)


if __name__ == "__main__":
    main()
