"""Exact Gauss-Jordan elimination over the active scalar type.

This is the hot kernel of the package: every subspace, conductor, stabilizer
and truncation computation ends up here. Vectors are plain lists of scalars.
"""
from ._backend import Q, ZERO


class Echelon:
    """Incrementally maintained reduced row echelon form.

    The pivot of a row is its first nonzero column, normalized to 1; every
    other stored row is zero in that column.
    """

    __slots__ = ("ncols", "rows")

    def __init__(self, ncols, vectors=()):
        self.ncols = ncols
        self.rows = {}
        for v in vectors:
            self.add(v)

    def __len__(self):
        return len(self.rows)

    @property
    def rank(self):
        return len(self.rows)

    @property
    def pivots(self):
        return sorted(self.rows)

    def reduce(self, v):
        v = list(v)
        rows = self.rows
        for piv, row in rows.items():
            c = v[piv]
            if c:
                for k in range(piv, self.ncols):
                    rk = row[k]
                    if rk:
                        v[k] -= c * rk
        return v

    def contains(self, v):
        return not any(self.reduce(v))

    def add(self, v):
        """Insert ``v``; return True when it enlarged the span."""
        r = self.reduce(v)
        piv = next((k for k, c in enumerate(r) if c), None)
        if piv is None:
            return False
        inv = 1 / r[piv]
        r = [c * inv if c else c for c in r]
        r[piv] = Q(1)
        n = self.ncols
        for row in self.rows.values():
            c = row[piv]
            if c:
                for k in range(piv, n):
                    rk = r[k]
                    if rk:
                        row[k] -= c * rk
        self.rows[piv] = r
        return True

    def basis(self):
        return [list(self.rows[p]) for p in sorted(self.rows)]

    def nullspace(self):
        """Basis of {x : row . x = 0 for all rows}.

        Each returned vector has a 1 in its free column ``f`` and is
        otherwise supported on pivot columns < f.
        """
        piv_set = self.rows
        out = []
        for f in range(self.ncols):
            if f in piv_set:
                continue
            x = [ZERO] * self.ncols
            x[f] = Q(1)
            for p, row in piv_set.items():
                if row[f]:
                    x[p] = -row[f]
            out.append(x)
        return out


def nullspace(rows, ncols, stop_at_full_rank=True):
    """Kernel basis of the matrix given by ``rows`` (an iterable)."""
    ech = Echelon(ncols)
    for r in rows:
        ech.add(r)
        if stop_at_full_rank and ech.rank == ncols:
            break
    return ech.nullspace()


def rank(rows, ncols):
    return Echelon(ncols, rows).rank
