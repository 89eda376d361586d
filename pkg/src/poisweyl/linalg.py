"""Exact linear algebra over Gaussian rationals.

Vectors are sparse dicts mapping hashable, mutually comparable keys to
GaussianRational entries.  Everything here is plain Gaussian elimination,
kept fully reduced so ranks, coordinates, kernels, and particular solutions
are exact.
"""

from __future__ import annotations

from typing import Hashable, Iterable, Mapping, Sequence

from .scalar import GR_ONE, GaussianRational

Vec = dict


def _clean(vec: Mapping) -> dict:
    out = {}
    for key, value in vec.items():
        coerced = GaussianRational._coerce(value)
        if coerced is None:
            raise TypeError(f"bad matrix entry {value!r}")
        if not coerced.is_zero():
            out[key] = coerced
    return out


def _axpy(target: dict, factor: GaussianRational, source: Mapping) -> None:
    """target -= factor * source, dropping zeros."""
    for key, value in source.items():
        cur = target.get(key)
        new = (cur - factor * value) if cur is not None else -(factor * value)
        if new.is_zero():
            target.pop(key, None)
        else:
            target[key] = new


class LinearSpan:
    """Row space maintained in reduced echelon form.

    Tracks, for every echelon row, its expression in the vectors passed to
    add(), so coordinates of a vector in the original spanning set can be
    read back exactly.
    """

    def __init__(self):
        self._rows: list[tuple[Hashable, dict, dict]] = []
        self._inserted = 0

    @property
    def rank(self) -> int:
        return len(self._rows)

    def _reduce(self, vec: Mapping):
        residual = _clean(vec)
        combo: dict[int, GaussianRational] = {}
        for pivot, row, rcombo in self._rows:
            coeff = residual.get(pivot)
            if coeff is None:
                continue
            _axpy(residual, coeff, row)
            _axpy(combo, coeff, rcombo)
        return residual, {k: -v for k, v in combo.items()}

    def add(self, vec: Mapping) -> bool:
        """Insert a vector; True when it enlarged the span."""
        residual, combo = self._reduce(vec)
        index = self._inserted
        self._inserted += 1
        if not residual:
            return False
        pivot = min(residual)
        lead = residual[pivot]
        row = {k: v / lead for k, v in residual.items()}
        ncombo = {k: -v for k, v in combo.items()}
        ncombo[index] = GR_ONE
        rcombo = {k: v / lead for k, v in ncombo.items() if not v.is_zero()}
        for _, other, ocombo in self._rows:
            coeff = other.get(pivot)
            if coeff is None:
                continue
            _axpy(other, coeff, row)
            _axpy(ocombo, coeff, rcombo)
        self._rows.append((pivot, row, rcombo))
        return True

    def contains(self, vec: Mapping) -> bool:
        residual, _ = self._reduce(vec)
        return not residual

    def coordinates(self, vec: Mapping):
        """Coefficients over the inserted vectors, or None if outside."""
        residual, combo = self._reduce(vec)
        if residual:
            return None
        return {k: v for k, v in combo.items() if not v.is_zero()}

    def basis_rows(self):
        return [dict(row) for _, row, _ in self._rows]


def rank_of(vectors: Iterable[Mapping]) -> int:
    span = LinearSpan()
    for vec in vectors:
        span.add(vec)
    return span.rank


def nullspace(rows: Iterable[Mapping], unknowns: Sequence[Hashable]) -> list[dict]:
    """Basis of {x : row . x = 0 for every row}, over the given unknowns."""
    index = {u: t for t, u in enumerate(unknowns)}
    pivots: dict[int, dict] = {}
    for raw in rows:
        row = {index[k]: v for k, v in _clean(raw).items()}
        while True:
            present = [col for col in row if col in pivots]
            if not present:
                break
            col = min(present)
            _axpy(row, row[col], pivots[col])
        if not row:
            continue
        lead = min(row)
        coeff = row[lead]
        row = {k: v / coeff for k, v in row.items()}
        for other in pivots.values():
            c = other.get(lead)
            if c is not None:
                _axpy(other, c, row)
        pivots[lead] = row
    basis = []
    for free in range(len(unknowns)):
        if free in pivots:
            continue
        vec = {unknowns[free]: GR_ONE}
        for p, row in pivots.items():
            c = row.get(free)
            if c is not None:
                vec[unknowns[p]] = -c
        basis.append(vec)
    return basis


def solve_linear(equations: Iterable[tuple[Mapping, GaussianRational]]):
    """Particular solution of row . x = rhs, or None when inconsistent.

    Free unknowns are set to zero, which makes the answer deterministic.
    """
    pivots: dict[Hashable, tuple[dict, GaussianRational]] = {}
    for raw, rhs in equations:
        row = _clean(raw)
        val = GaussianRational._coerce(rhs)
        while True:
            present = [col for col in row if col in pivots]
            if not present:
                break
            col = min(present)
            prow, pval = pivots[col]
            coeff = row[col]
            _axpy(row, coeff, prow)
            val = val - coeff * pval
        if not row:
            if not val.is_zero():
                return None
            continue
        lead = min(row)
        coeff = row[lead]
        row = {k: v / coeff for k, v in row.items()}
        val = val / coeff
        for key, (other, oval) in list(pivots.items()):
            c = other.get(lead)
            if c is not None:
                _axpy(other, c, row)
                pivots[key] = (other, oval - c * val)
        pivots[lead] = (row, val)
    return {
        key: val for key, (_, val) in pivots.items() if not val.is_zero()
    }
