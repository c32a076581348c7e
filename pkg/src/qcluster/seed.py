"""Quantum seeds: exchange matrices, quasi-commutation matrices and mutation."""
from __future__ import annotations

from dataclasses import dataclass, field

from . import torus


class SeedError(ValueError):
    """Invalid seed data or a forbidden mutation request."""


class CompatibilityError(SeedError):
    def __init__(self, message, column=None, row=None, value=None):
        super().__init__(message)
        self.column = column
        self.row = row
        self.value = value


class ConsistencyError(RuntimeError):
    """Two constructions that must agree did not."""


def _matrix(rows):
    return tuple(tuple(int(x) for x in row) for row in rows)


@dataclass(frozen=True)
class ExchangeMatrix:
    """m x n integer matrix; column c belongs to the variable in row mutable_rows[c]."""

    entries: tuple
    mutable_rows: tuple

    def __post_init__(self):
        entries = _matrix(self.entries)
        rows = tuple(int(r) for r in self.mutable_rows)
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "mutable_rows", rows)
        m, n = len(entries), len(rows)
        if any(len(row) != n for row in entries):
            raise SeedError(f"exchange matrix rows must all have {n} entries")
        if len(set(rows)) != n or any(not 0 <= r < m for r in rows):
            raise SeedError(f"mutable_rows {rows} must be distinct row indices below {m}")
        for a in range(n):
            for b in range(n):
                if entries[rows[a]][b] != -entries[rows[b]][a]:
                    raise SeedError(
                        f"principal part is not skew-symmetric at columns ({a}, {b})"
                    )

    @property
    def m(self):
        return len(self.entries)

    @property
    def n(self):
        return len(self.mutable_rows)

    def __getitem__(self, i):
        return self.entries[i]

    def __len__(self):
        return len(self.entries)

    def principal_part(self):
        return tuple(tuple(self.entries[r][c] for c in range(self.n)) for r in self.mutable_rows)

    def column_of_row(self, i):
        try:
            return self.mutable_rows.index(i)
        except ValueError:
            return None

    def mutate(self, k):
        return mutate_B(self, k)


def _check_direction(B: ExchangeMatrix, k):
    if not isinstance(k, int) or not 0 <= k < B.n:
        raise SeedError(
            f"mutation direction {k!r} is not a mutable column (0..{B.n - 1}); "
            "frozen variables cannot be mutated"
        )


def mutate_B(B: ExchangeMatrix, k: int) -> ExchangeMatrix:
    _check_direction(B, k)
    r = B.mutable_rows[k]
    E = B.entries
    out = []
    for i in range(B.m):
        row = []
        for j in range(B.n):
            if i == r or j == k:
                row.append(-E[i][j])
                continue
            bik, bkj = E[i][k], E[r][j]
            # (|b_ik| b_kj + b_ik |b_kj|) / 2 is nonzero only for equal signs
            if bik > 0 and bkj > 0:
                row.append(E[i][j] + bik * bkj)
            elif bik < 0 and bkj < 0:
                row.append(E[i][j] - bik * bkj)
            else:
                row.append(E[i][j])
        out.append(tuple(row))
    return ExchangeMatrix(tuple(out), B.mutable_rows)


def check_skew(L):
    m = len(L)
    for i in range(m):
        if len(L[i]) != m:
            raise SeedError(f"quasi-commutation matrix row {i} has length {len(L[i])}, expected {m}")
        for j in range(i, m):
            if L[i][j] != -L[j][i]:
                raise SeedError(f"quasi-commutation matrix is not skew-symmetric at ({i}, {j})")


def check_compatibility(B: ExchangeMatrix, L) -> tuple:
    """Verify B^T L is a positive diagonal at mutable positions, zero elsewhere.

    Returns the diagonal entries (d_0, ..., d_{n-1}).
    """
    if len(L) != B.m:
        raise CompatibilityError(f"L has {len(L)} rows but B has {B.m}")
    diag = []
    for c in range(B.n):
        for j in range(B.m):
            v = sum(B.entries[i][c] * L[i][j] for i in range(B.m))
            if j == B.mutable_rows[c]:
                if v <= 0:
                    raise CompatibilityError(
                        f"(B^T L)[{c}][{j}] = {v} must be a positive diagonal entry",
                        column=c, row=j, value=v,
                    )
                diag.append(v)
            elif v:
                raise CompatibilityError(
                    f"(B^T L)[{c}][{j}] = {v} must be zero", column=c, row=j, value=v
                )
    return tuple(diag)


def _e_column(B: ExchangeMatrix, k, eps):
    """Column r of E; E is the identity elsewhere."""
    r = B.mutable_rows[k]
    return [-1 if i == r else max(0, -eps * B.entries[i][k]) for i in range(B.m)]


def _conjugate(v, r, L):
    """E^T L E where E is the identity with column r replaced by v.

    Only column r changes under L -> L E, E^T leaves rows other than r
    alone, and skew-symmetry then fixes row r.
    """
    nz = [(t, x) for t, x in enumerate(v) if x]
    Lv = [sum(row[t] * x for t, x in nz) for row in L]
    Lv[r] = 0
    out = []
    for i, row in enumerate(L):
        if i == r:
            out.append(tuple(-y for y in Lv))
        else:
            row = list(row)
            row[r] = Lv[i]
            out.append(tuple(row))
    return tuple(out)


def mutate_L(B: ExchangeMatrix, L, k: int, checked=False):
    """L' = E^T L E; the two sign choices for E must agree.

    ``checked`` skips the compatibility test for pairs already known to be
    compatible, such as mutations of a verified seed.
    """
    _check_direction(B, k)
    if not checked:
        check_compatibility(B, L)
    r = B.mutable_rows[k]
    plus = _conjugate(_e_column(B, k, +1), r, L)
    minus = _conjugate(_e_column(B, k, -1), r, L)
    if plus != minus:
        raise ConsistencyError(f"E-constructions disagree when mutating L in direction {k}")
    return plus


def quiver_of(B: ExchangeMatrix):
    """Weighted arrows (i, j, w) between rows, plus the frozen-row flags."""
    arrows = []
    mutable = set(B.mutable_rows)
    for c, j in enumerate(B.mutable_rows):
        for i in range(B.m):
            b = B.entries[i][c]
            if b > 0:
                arrows.append((i, j, b))
            elif b < 0 and i not in mutable:
                arrows.append((j, i, -b))
    arrows.sort()
    frozen = tuple(i not in mutable for i in range(B.m))
    return arrows, frozen


@dataclass(frozen=True)
class QuantumSeed:
    names: tuple
    B: ExchangeMatrix
    L: tuple
    expansions: tuple | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        if not isinstance(self.B, ExchangeMatrix):
            raise SeedError("B must be an ExchangeMatrix")
        object.__setattr__(self, "L", _matrix(self.L))
        m = self.B.m
        if len(self.names) != m:
            raise SeedError(f"{len(self.names)} names for {m} rows")
        check_skew(self.L)
        if len(self.L) != m:
            raise SeedError(f"L is {len(self.L)}x{len(self.L)} but B has {m} rows")
        if self.expansions is not None:
            object.__setattr__(self, "expansions", tuple(self.expansions))
            if len(self.expansions) != m:
                raise SeedError("one expansion per cluster variable is required")

    @classmethod
    def build(cls, names, B, L, mutable_rows, track=True):
        seed = cls(tuple(names), ExchangeMatrix(B, mutable_rows), L)
        return seed.with_initial_expansions() if track else seed

    @property
    def m(self):
        return self.B.m

    @property
    def n(self):
        return self.B.n

    @property
    def mutable_rows(self):
        return self.B.mutable_rows

    @property
    def frozen_rows(self):
        mutable = set(self.B.mutable_rows)
        return tuple(i for i in range(self.m) if i not in mutable)

    def with_initial_expansions(self):
        frame = self.L
        exps = tuple(
            torus.frame_monomial(torus.unit_vector(self.m, i), frame) for i in range(self.m)
        )
        return QuantumSeed(self.names, self.B, self.L, exps)

    def compatibility(self):
        return check_compatibility(self.B, self.L)

    def column_for(self, position):
        """Mutable column housing the variable at cluster position ``position``."""
        c = self.B.column_of_row(position)
        if c is None:
            raise SeedError(f"position {position} ({self.names[position]}) is frozen")
        return c

    def mutate(self, k, name=None):
        """Mutate in mutable column k; tracked expansions follow along."""
        _check_direction(self.B, k)
        if not self.__dict__.get("_compatible"):
            self.compatibility()
        L2 = mutate_L(self.B, self.L, k, checked=True)
        B2 = mutate_B(self.B, k)
        r = self.B.mutable_rows[k]
        names = list(self.names)
        names[r] = name if name is not None else names[r] + "'"
        exps = None
        if self.expansions is not None:
            exps = list(self.expansions)
            exps[r] = torus.mutated_expansion(self, k)
        child = QuantumSeed(tuple(names), B2, L2, None if exps is None else tuple(exps))
        # mutation preserves compatibility, so the child needs no re-check
        object.__setattr__(child, "_compatible", True)
        return child

    def mutate_sequence(self, directions):
        seed = self
        for k in directions:
            seed = seed.mutate(k)
        return seed

    def exchange_relation(self, k):
        return torus.exchange_relation(self, k)

    def format_relation(self, k, names=None):
        """Text such as ``X2*X2' = q^-1*X3*X7 + q*X1*X6``."""
        names = list(names or [f"X{i + 1}" for i in range(self.m)])
        r = self.mutable_rows[k]
        rhs = []
        for coeff, c in self.exchange_relation(k):
            mon = torus._format_monomial(c, names)
            rhs.append(torus._join_coeff(coeff, mon))
        return f"{names[r]}*{names[r]}' = " + " + ".join(rhs)

    def mutable_keys(self):
        if self.expansions is None:
            raise SeedError("seed does not track expansions")
        return tuple(sorted(self.expansions[r].key() for r in self.mutable_rows))

    def canonical(self):
        """Reorder mutable slots by expansion, permuting B and L in step."""
        if self.expansions is None:
            raise SeedError("canonical form needs tracked expansions")
        rows = self.B.mutable_rows
        order = sorted(range(self.n), key=lambda c: self.expansions[rows[c]].key())
        slots = sorted(rows)
        # variable of column order[t] moves to row slots[t] and becomes column t
        perm = list(range(self.m))
        for t, c in enumerate(order):
            perm[slots[t]] = rows[c]
        L = tuple(tuple(self.L[perm[i]][perm[j]] for j in range(self.m)) for i in range(self.m))
        Bm = tuple(
            tuple(self.B.entries[perm[i]][order[t]] for t in range(self.n)) for i in range(self.m)
        )
        return QuantumSeed(
            tuple(self.names[p] for p in perm),
            ExchangeMatrix(Bm, tuple(slots)),
            L,
            tuple(self.expansions[p] for p in perm),
        )
