"""NAE-CNF formulas: parsing, good-evaluation checks, brute force, occurrence bounding.

Assignments are plain ``dict[int, bool]`` keyed by 1-based variable index.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple

import numpy as np

DEFAULT_NAE_VAR_CAP = 24

Assignment = Dict[int, bool]


class FormulaError(ValueError):
    """Malformed formula or a DIMACS syntax error."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class AssignmentError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Literal:
    variable: int
    negated: bool = False

    def __post_init__(self):
        if self.variable < 1:
            raise FormulaError(f"variable index must be positive, got {self.variable}")

    @classmethod
    def from_int(cls, lit: int) -> "Literal":
        if lit == 0:
            raise FormulaError("0 is not a literal")
        return cls(abs(lit), lit < 0)

    def to_int(self) -> int:
        return -self.variable if self.negated else self.variable

    def __neg__(self) -> "Literal":
        return Literal(self.variable, not self.negated)

    def value(self, assignment: Mapping[int, bool]) -> bool:
        return assignment[self.variable] != self.negated

    def __str__(self) -> str:
        return f"{'~' if self.negated else ''}x{self.variable}"


Clause = Tuple["Literal", ...]


@dataclass(frozen=True)
class Formula:
    num_vars: int
    clauses: tuple = field(default=())

    def __post_init__(self):
        if self.num_vars < 0:
            raise FormulaError("num_vars must be nonnegative")
        clauses = tuple(tuple(c) for c in self.clauses)
        for j, clause in enumerate(clauses):
            if not clause:
                raise FormulaError(f"clause {j + 1} is empty")
            for lit in clause:
                if not isinstance(lit, Literal):
                    raise FormulaError(f"clause {j + 1} holds a non-literal {lit!r}")
                if lit.variable > self.num_vars:
                    raise FormulaError(
                        f"variable {lit.variable} exceeds declared {self.num_vars}"
                    )
        object.__setattr__(self, "clauses", clauses)

    @classmethod
    def from_ints(cls, num_vars: int, clauses: Iterable[Iterable[int]]) -> "Formula":
        return cls(num_vars, tuple(tuple(Literal.from_int(x) for x in c) for c in clauses))

    def to_ints(self) -> list:
        return [[lit.to_int() for lit in c] for c in self.clauses]

    @property
    def total_literals(self) -> int:
        return sum(len(c) for c in self.clauses)

    def occurrences(self) -> dict:
        """Count occurrences of each literal over all clause positions."""
        counts: dict = {}
        for clause in self.clauses:
            for lit in clause:
                counts[lit] = counts.get(lit, 0) + 1
        return counts

    def __str__(self) -> str:
        if not self.clauses:
            return "(empty)"
        return " & ".join("(" + " | ".join(map(str, c)) + ")" for c in self.clauses)


def parse_dimacs(text: str) -> Formula:
    """Parse DIMACS CNF text, preserving clause and literal order exactly.

    Clauses may span lines; each must end with ``0``. Errors carry the
    offending line number.
    """
    header = None
    clauses = []
    current: list = []
    current_line = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("%"):
            # some benchmark sets terminate the clause list with "%"
            break
        if line.startswith("p"):
            if header is not None:
                raise FormulaError("duplicate header", lineno)
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise FormulaError(f"malformed header {line!r}", lineno)
            try:
                n, m = int(parts[2]), int(parts[3])
            except ValueError:
                raise FormulaError(f"malformed header {line!r}", lineno) from None
            if n < 0 or m < 0:
                raise FormulaError(f"negative count in header {line!r}", lineno)
            header = (n, m, lineno)
            continue
        if header is None:
            raise FormulaError("clause data before the 'p cnf' header", lineno)
        n = header[0]
        for tok in line.split():
            try:
                x = int(tok)
            except ValueError:
                raise FormulaError(f"not an integer: {tok!r}", lineno) from None
            if x == 0:
                if not current:
                    raise FormulaError("empty clause", lineno)
                clauses.append(tuple(current))
                current = []
                current_line = None
                continue
            if abs(x) > n:
                raise FormulaError(f"variable {abs(x)} exceeds declared {n}", lineno)
            if current_line is None:
                current_line = lineno
            current.append(Literal.from_int(x))
    if header is None:
        raise FormulaError("missing 'p cnf' header")
    if current:
        raise FormulaError("clause missing its terminating 0", current_line)
    n, m, hline = header
    if len(clauses) != m:
        raise FormulaError(f"header declares {m} clauses, found {len(clauses)}", hline)
    return Formula(n, tuple(clauses))


def to_dimacs(formula: Formula, comments: Sequence[str] = ()) -> str:
    lines = [f"c {c}" for c in comments]
    lines.append(f"p cnf {formula.num_vars} {len(formula.clauses)}")
    lines.extend(" ".join(str(x) for x in c) + " 0" for c in formula.to_ints())
    return "\n".join(lines) + "\n"


def _check_total(formula: Formula, assignment: Mapping[int, bool]) -> None:
    missing = [i for i in range(1, formula.num_vars + 1) if i not in assignment]
    if missing:
        raise AssignmentError(f"assignment is partial: missing variables {missing}")
    extra = sorted(k for k in assignment if not 1 <= k <= formula.num_vars)
    if extra:
        raise AssignmentError(f"assignment names unknown variables {extra}")


def is_good(formula: Formula, assignment: Mapping[int, bool]) -> bool:
    """True iff every clause holds both a true and a false literal."""
    _check_total(formula, assignment)
    for clause in formula.clauses:
        values = {lit.value(assignment) for lit in clause}
        if len(values) < 2:
            return False
    return True


def _decode(index: int, num_vars: int) -> dict:
    return {i: bool((index >> (i - 1)) & 1) for i in range(1, num_vars + 1)}


def solve_nae_bruteforce(
    formula: Formula, var_cap: int = DEFAULT_NAE_VAR_CAP, chunk_bits: int = 16
) -> Optional[dict]:
    """Return the first good assignment in binary-counter order, or None.

    Assignment number ``a`` sets ``x_i = bit (i-1) of a``, so x1 is the least
    significant bit and all-false comes first. Evaluation is vectorised over
    chunks of ``2**chunk_bits`` assignments.
    """
    n = formula.num_vars
    if n > var_cap:
        raise FormulaError(
            f"{n} variables exceeds the brute-force cap of {var_cap}; "
            "raise it with --nae-var-cap"
        )
    if not formula.clauses:
        return _decode(0, n)
    total = 1 << n
    step = min(total, 1 << chunk_bits)
    shifts = [
        (np.array([lit.variable - 1 for lit in c], dtype=np.int64),
         np.array([lit.negated for lit in c], dtype=bool))
        for c in formula.clauses
    ]
    for start in range(0, total, step):
        idx = np.arange(start, min(start + step, total), dtype=np.int64)
        good = np.ones(idx.shape, dtype=bool)
        for var_shift, neg in shifts:
            vals = ((idx[:, None] >> var_shift[None, :]) & 1).astype(bool) ^ neg[None, :]
            good &= vals.any(axis=1) & ~vals.all(axis=1)
            if not good.any():
                break
        hits = np.flatnonzero(good)
        if hits.size:
            return _decode(int(idx[hits[0]]), n)
    return None


def bound_occurrences(formula: Formula) -> tuple:
    """Rewrite so that every literal occurs at most twice (NAE-equisatisfiable).

    While some literal ``l`` occurs three or more times, pick the smallest such
    literal (by variable, positive first), keep its first occurrence, replace its
    second and third occurrences in place with a fresh variable ``z`` and append
    the clause ``(l | ~z)``, which forces ``z == l`` under NAE semantics.

    Returns the new formula and the identity map on the original variables.
    """
    clauses = [list(c) for c in formula.clauses]
    n = formula.num_vars
    while True:
        positions: dict = {}
        for j, clause in enumerate(clauses):
            for m, lit in enumerate(clause):
                positions.setdefault(lit, []).append((j, m))
        heavy = sorted(lit for lit, pos in positions.items() if len(pos) >= 3)
        if not heavy:
            break
        lit = heavy[0]
        n += 1
        z = Literal(n)
        for j, m in positions[lit][1:3]:
            clauses[j][m] = z
        clauses.append([lit, -z])
    mapping = {i: i for i in range(1, formula.num_vars + 1)}
    return Formula(n, tuple(tuple(c) for c in clauses)), mapping


def random_formula(
    rng: random.Random,
    max_vars: int = 6,
    max_clauses: int = 8,
    sizes: Sequence[int] = (2, 3),
    min_vars: int = 1,
) -> Formula:
    """Draw a random formula; variables are sampled with replacement per literal."""
    n = rng.randint(min_vars, max_vars)
    m = rng.randint(0, max_clauses)
    clauses = []
    for _ in range(m):
        k = rng.choice(list(sizes))
        clauses.append([rng.randint(1, n) * rng.choice((1, -1)) for _ in range(k)])
    return Formula.from_ints(n, clauses)
