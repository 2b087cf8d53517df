"""Finite-dimensional representations of an acyclic quiver over F_q.

A representation assigns F_q-vector spaces to vertices and matrices to
arrows.  The context object enumerates isomorphism classes one dimension
vector at a time by partitioning the (finite) set of all matrix tuples
into orbits of the base-change group prod_v GL(d_v, F_q); the group is
generated by elementary transvections and one diagonal scaling per vertex
(q is prime, so this generates everything).  Orbit membership doubles as
an O(1) canonical-form test, which the cone-counting code leans on hard.

Classes are named by their Krull-Schmidt decomposition into labeled
indecomposables: an orbit not reachable as a direct sum of strictly
smaller classes is a new indecomposable and gets a fresh label (S/P/I
for simples, projectives and injectives, X... otherwise).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

import numpy as np

from . import linalg
from .errors import ParseError, ResourceLimitError, UsageError
from .scalar import is_prime

_PRESET = re.compile(r"^A(\d+)$", re.IGNORECASE)
_ctx_counter = 0


class Quiver:
    """Finite acyclic quiver: vertex count and a list of arrows (s, t).

    Vertices are 0-based internally and 1-based in literals and labels.
    """

    def __init__(self, n: int, arrows):
        if n < 1:
            raise UsageError("quiver needs at least one vertex")
        arrows = tuple((int(s), int(t)) for s, t in arrows)
        for s, t in arrows:
            if not (0 <= s < n and 0 <= t < n):
                raise UsageError(f"arrow ({s},{t}) out of range")
            if s == t:
                raise UsageError("loops are not allowed (quiver must be acyclic)")
        self.n = n
        self.arrows = arrows
        self._check_acyclic()
        # Euler matrix: <d, e> = d . E . e
        e = np.eye(n, dtype=np.int64)
        for s, t in arrows:
            e[s, t] -= 1
        self.euler_matrix = e

    def _check_acyclic(self):
        indeg = [0] * self.n
        for _, t in self.arrows:
            indeg[t] += 1
        queue = [v for v in range(self.n) if indeg[v] == 0]
        seen = 0
        while queue:
            v = queue.pop()
            seen += 1
            for s, t in self.arrows:
                if s == v:
                    indeg[t] -= 1
                    if indeg[t] == 0:
                        queue.append(t)
        if seen != self.n:
            raise UsageError("quiver has an oriented cycle")

    @staticmethod
    def parse(text: str) -> "Quiver":
        """Preset name ('A1', 'A2', 'A3', ...) or literal 'n; s->t, s->t'."""
        text = text.strip()
        m = _PRESET.match(text)
        if m:
            n = int(m.group(1))
            if n < 1:
                raise ParseError(f"bad preset {text!r}")
            return Quiver(n, [(i, i + 1) for i in range(n - 1)])
        if ";" not in text:
            raise ParseError(f"quiver literal {text!r} needs 'n; arrows'")
        head, _, tail = text.partition(";")
        try:
            n = int(head)
        except ValueError as exc:
            raise ParseError(f"bad vertex count {head!r}") from exc
        arrows = []
        tail = tail.strip()
        if tail:
            for part in tail.split(","):
                piece = part.strip()
                if "->" not in piece:
                    raise ParseError(f"bad arrow {piece!r}")
                s, _, t = piece.partition("->")
                try:
                    arrows.append((int(s) - 1, int(t) - 1))
                except ValueError as exc:
                    raise ParseError(f"bad arrow {piece!r}") from exc
        try:
            return Quiver(n, arrows)
        except UsageError as exc:
            raise ParseError(str(exc)) from exc

    def euler(self, d, e) -> int:
        d = np.asarray(d, dtype=np.int64)
        e = np.asarray(e, dtype=np.int64)
        return int(d @ self.euler_matrix @ e)

    def paths_from(self, v: int):
        """All paths starting at v as (endpoint, arrow-index tuple)."""
        out = [(v, ())]
        frontier = [(v, ())]
        while frontier:
            w, p = frontier.pop()
            for idx, (s, t) in enumerate(self.arrows):
                if s == w:
                    q = (t, p + (idx,))
                    out.append(q)
                    frontier.append(q)
        return out

    def __repr__(self):
        arrows = ", ".join(f"{s + 1}->{t + 1}" for s, t in self.arrows)
        return f"Quiver({self.n}; {arrows})"


class Rep:
    """Concrete representation: per-vertex dimensions, per-arrow matrices."""

    __slots__ = ("dims", "mats")

    def __init__(self, dims, mats):
        self.dims = tuple(int(d) for d in dims)
        self.mats = tuple(mats)

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def __repr__(self):
        return f"Rep(dims={self.dims})"


def make_rep(quiver: Quiver, q: int, dims, mats=None) -> Rep:
    """Validate shapes and reduce entries mod q."""
    dims = tuple(int(d) for d in dims)
    if len(dims) != quiver.n or any(d < 0 for d in dims):
        raise UsageError(f"bad dimension vector {dims}")
    out = []
    for idx, (s, t) in enumerate(quiver.arrows):
        shape = (dims[t], dims[s])
        if mats is None:
            out.append(linalg.zeros(*shape))
        else:
            m = np.asarray(mats[idx], dtype=np.int64) % q
            if m.shape != shape:
                raise UsageError(f"arrow {idx} matrix shape {m.shape} != {shape}")
            out.append(m)
    return Rep(dims, tuple(out))


def direct_sum_reps(quiver: Quiver, a: Rep, b: Rep) -> Rep:
    dims = tuple(x + y for x, y in zip(a.dims, b.dims))
    mats = []
    for idx, (s, t) in enumerate(quiver.arrows):
        m = linalg.zeros(dims[t], dims[s])
        m[: a.dims[t], : a.dims[s]] = a.mats[idx]
        m[a.dims[t] :, a.dims[s] :] = b.mats[idx]
        mats.append(m)
    return Rep(dims, tuple(mats))


@dataclass(frozen=True)
class IsoClass:
    """Isomorphism class: canonical multiset of indecomposable labels."""

    ctx: int
    key: tuple  # ((indec_id, multiplicity), ...) in display order
    name: str
    dims: tuple

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    @property
    def is_zero(self) -> bool:
        return not self.key

    def sort_key(self):
        return (self.total_dim, self.name)

    def __repr__(self):
        return self.name


@dataclass
class _Indec:
    id: int
    name: str
    dims: tuple
    rep: Rep


class _Cell:
    """Orbit decomposition of all representations with one dim vector."""

    __slots__ = ("dims", "shapes", "pows", "orbit_of", "first_code", "classes")

    def __init__(self, dims, shapes, pows, orbit_of, first_code):
        self.dims = dims
        self.shapes = shapes  # per-arrow (rows, cols)
        self.pows = pows  # base-q place values, one per matrix entry
        self.orbit_of = orbit_of  # code -> orbit id
        self.first_code = first_code  # orbit id -> smallest code
        self.classes = None  # orbit id -> IsoClass

    def encode(self, mats) -> int:
        if not len(self.pows):
            return 0
        flat = np.concatenate([m.reshape(-1) for m in mats])
        return int(flat @ self.pows)

    def decode(self, code: int, q: int):
        digits = (code // self.pows) % q if len(self.pows) else self.pows
        mats = []
        pos = 0
        for rows, cols in self.shapes:
            k = rows * cols
            mats.append(digits[pos : pos + k].reshape(rows, cols).astype(np.int64))
            pos += k
        return tuple(mats)


@lru_cache(maxsize=None)
def _primitive_root(q: int) -> int:
    if q == 2:
        return 1
    for g in range(2, q):
        seen, x = set(), 1
        for _ in range(q - 1):
            x = x * g % q
            seen.add(x)
        if len(seen) == q - 1:
            return g
    raise UsageError(f"no primitive root mod {q}")


class RepContext:
    """All per-(quiver, q) state: class registry, Hom/Ext tables, caches.

    Immutable from the caller's point of view; internal caches only grow.
    """

    def __init__(
        self,
        quiver: Quiver,
        q: int,
        *,
        max_cell_reps: int = 2_000_000,
        max_classes: int = 50_000,
        max_brute_force: int = 2_000_000,
    ):
        global _ctx_counter
        if not is_prime(q):
            raise UsageError(f"q must be prime, got {q}")
        self.quiver = quiver
        self.q = q
        self.max_cell_reps = max_cell_reps
        self.max_classes = max_classes
        self.max_brute_force = max_brute_force
        _ctx_counter += 1
        self.token = _ctx_counter
        self._cells: dict = {}
        self._classes: dict = {}
        self._indecs: list = []
        self._indec_by_name: dict = {}
        self._rep_cache: dict = {}
        self._hom_cache: dict = {}
        self._aut_cache: dict = {}
        self.zero_class = self._intern(())

    # -- class registry ---------------------------------------------------

    def _intern(self, key: tuple) -> IsoClass:
        cls = self._classes.get(key)
        if cls is None:
            dims = np.zeros(self.quiver.n, dtype=np.int64)
            for iid, mult in key:
                dims += mult * np.asarray(self._indecs[iid].dims, dtype=np.int64)
            name = (
                "+".join(
                    self._indecs[iid].name
                    for iid, mult in key
                    for _ in range(mult)
                )
                or "0"
            )
            cls = IsoClass(self.token, key, name, tuple(int(d) for d in dims))
            self._classes[key] = cls
            if len(self._classes) > self.max_classes:
                raise ResourceLimitError(
                    f"isomorphism-class registry exceeded {self.max_classes}"
                )
        return cls

    def _sorted_key(self, pairs) -> tuple:
        merged: dict = {}
        for iid, mult in pairs:
            merged[iid] = merged.get(iid, 0) + mult
        order = lambda item: (
            sum(self._indecs[item[0]].dims),
            self._indecs[item[0]].name,
        )
        return tuple(sorted(merged.items(), key=order))

    def direct_sum_class(self, a: IsoClass, b: IsoClass) -> IsoClass:
        return self._intern(self._sorted_key(a.key + b.key))

    # -- cell enumeration ---------------------------------------------------

    def _cell(self, dims: tuple) -> _Cell:
        dims = tuple(int(d) for d in dims)
        cell = self._cells.get(dims)
        if cell is not None:
            return cell
        for sub in self._subvectors(dims):
            if sub != dims:
                self._cell(sub)
        cell = self._build_cell(dims)
        self._cells[dims] = cell
        return cell

    @staticmethod
    def _subvectors(dims):
        return product(*(range(d + 1) for d in dims))

    def _build_cell(self, dims: tuple) -> _Cell:
        q = self.quiver
        shapes = [(dims[t], dims[s]) for s, t in q.arrows]
        n_entries = sum(r * c for r, c in shapes)
        n_reps = self.q**n_entries
        if n_reps > min(self.max_cell_reps, 2**60):  # 2^60 guards int64 codes
            raise ResourceLimitError(
                f"cell {dims} has {n_reps} representations "
                f"(cap {self.max_cell_reps}); lower the bound or raise the cap"
            )
        pows = self.q ** np.arange(n_entries, dtype=np.int64)
        cell = _Cell(dims, shapes, pows, None, None)

        if all(d == 0 for d in dims):
            cell.orbit_of = np.zeros(1, dtype=np.int64)
            cell.first_code = [0]
            cell.classes = [self.zero_class]
            return cell

        generators = self._base_change_generators(dims)
        orbit_of = np.full(n_reps, -1, dtype=np.int64)
        first_code = []
        for code in range(n_reps):
            if orbit_of[code] >= 0:
                continue
            oid = len(first_code)
            first_code.append(code)
            orbit_of[code] = oid
            stack = [cell.decode(code, self.q)]
            while stack:
                mats = stack.pop()
                for v, g, ginv in generators:
                    new = self._apply_base_change(mats, v, g, ginv)
                    c = cell.encode(new)
                    if orbit_of[c] < 0:
                        orbit_of[c] = oid
                        stack.append(new)
        cell.orbit_of = orbit_of
        cell.first_code = first_code
        cell.classes = [None] * len(first_code)

        # orbits of direct sums of strictly smaller classes are decomposable
        seen = set()
        for e in self._subvectors(dims):
            if all(x == 0 for x in e) or e == dims:
                continue
            f = tuple(a - b for a, b in zip(dims, e))
            for c1 in self._cells[e].classes:
                for c2 in self._cells[f].classes:
                    key = self._sorted_key(c1.key + c2.key)
                    if key in seen:
                        continue
                    seen.add(key)
                    rep = direct_sum_reps(
                        q, self.representative(c1), self.representative(c2)
                    )
                    oid = int(orbit_of[cell.encode(rep.mats)])
                    cls = self._intern(key)
                    if cell.classes[oid] not in (None, cls):
                        raise AssertionError(
                            f"orbit {oid} in cell {dims} matched two classes"
                        )
                    cell.classes[oid] = cls

        # whatever is left is a new indecomposable
        for oid, cls in enumerate(cell.classes):
            if cls is not None:
                continue
            rep = Rep(dims, cell.decode(first_code[oid], self.q))
            iid = len(self._indecs)
            name = self._indec_name(dims, cell, orbit_of[first_code[oid]])
            self._indecs.append(_Indec(iid, name, dims, rep))
            self._indec_by_name[name] = iid
            cell.classes[oid] = self._intern(((iid, 1),))
        return cell

    def _base_change_generators(self, dims):
        gens = []
        root = _primitive_root(self.q)
        for v, d in enumerate(dims):
            if d == 0:
                continue
            for i in range(d):
                for j in range(d):
                    if i == j:
                        continue
                    g = linalg.identity(d)
                    g[i, j] = 1
                    ginv = linalg.identity(d)
                    ginv[i, j] = (-1) % self.q
                    gens.append((v, g, ginv))
            if self.q > 2:
                g = linalg.identity(d)
                g[0, 0] = root
                ginv = linalg.identity(d)
                ginv[0, 0] = pow(root, self.q - 2, self.q)
                gens.append((v, g, ginv))
        return gens

    def _apply_base_change(self, mats, v, g, ginv):
        out = []
        for idx, (s, t) in enumerate(self.quiver.arrows):
            m = mats[idx]
            if t == v:
                m = (g @ m) % self.q
            if s == v:
                m = (m @ ginv) % self.q
            out.append(m)
        return tuple(out)

    # -- classification and enumeration ------------------------------------

    def classify_rep(self, rep: Rep) -> IsoClass:
        cell = self._cell(rep.dims)
        code = cell.encode(tuple(m % self.q for m in rep.mats))
        return cell.classes[int(cell.orbit_of[code])]

    def representative(self, cls: IsoClass) -> Rep:
        rep = self._rep_cache.get(cls.key)
        if rep is None:
            rep = make_rep(self.quiver, self.q, [0] * self.quiver.n)
            for iid, mult in cls.key:
                for _ in range(mult):
                    rep = direct_sum_reps(self.quiver, rep, self._indecs[iid].rep)
            self._rep_cache[cls.key] = rep
        return rep

    def iso_classes_with_dims(self, dims) -> list:
        """Classes with exactly this dimension vector, deterministically ordered."""
        return sorted(set(self._cell(tuple(dims)).classes), key=IsoClass.sort_key)

    def iso_classes_upto(self, bound) -> list:
        """All classes with dim vector <= bound, deterministically ordered."""
        bound = tuple(int(b) for b in bound)
        if len(bound) != self.quiver.n or any(b < 0 for b in bound):
            raise UsageError(f"bad bound {bound}")
        out = set()
        for dims in self._subvectors(bound):
            out.update(self._cell(dims).classes)
        return sorted(out, key=IsoClass.sort_key)

    def indecomposables_upto(self, bound) -> list:
        self.iso_classes_upto(bound)
        bound = tuple(bound)
        return [
            self._intern(((i.id, 1),))
            for i in sorted(self._indecs, key=lambda i: (sum(i.dims), i.name))
            if all(d <= b for d, b in zip(i.dims, bound))
        ]

    # -- named constructions -------------------------------------------------

    def simple_rep(self, v: int) -> Rep:
        dims = [0] * self.quiver.n
        dims[v] = 1
        return make_rep(self.quiver, self.q, dims)

    def projective_rep(self, v: int) -> Rep:
        """Paths out of v span the projective cover of the simple at v."""
        paths = self.quiver.paths_from(v)
        by_vertex = {w: [] for w in range(self.quiver.n)}
        for w, p in paths:
            by_vertex[w].append(p)
        dims = [len(by_vertex[w]) for w in range(self.quiver.n)]
        mats = []
        for idx, (s, t) in enumerate(self.quiver.arrows):
            m = linalg.zeros(dims[t], dims[s])
            for col, p in enumerate(by_vertex[s]):
                m[by_vertex[t].index(p + (idx,)), col] = 1
            mats.append(m)
        return Rep(tuple(dims), tuple(mats))

    def injective_rep(self, v: int) -> Rep:
        """Paths into v; arrow a acts by stripping a leading a."""
        by_vertex = {w: [] for w in range(self.quiver.n)}
        for w in range(self.quiver.n):
            for end, p in self.quiver.paths_from(w):
                if end == v:
                    by_vertex[w].append(p)
        dims = [len(by_vertex[w]) for w in range(self.quiver.n)]
        mats = []
        for idx, (s, t) in enumerate(self.quiver.arrows):
            m = linalg.zeros(dims[t], dims[s])
            for col, p in enumerate(by_vertex[s]):
                if p and p[0] == idx:
                    m[by_vertex[t].index(p[1:]), col] = 1
            mats.append(m)
        return Rep(tuple(dims), tuple(mats))

    def _indec_name(self, dims, cell: _Cell, oid: int) -> str:
        n = self.quiver.n
        for v in range(n):
            if dims == tuple(int(v == w) for w in range(n)):
                return f"S{v + 1}"
        for builder, prefix in ((self.projective_rep, "P"), (self.injective_rep, "I")):
            for v in range(n):
                rep = builder(v)
                if rep.dims != dims:
                    continue
                if int(cell.orbit_of[cell.encode(rep.mats)]) == oid:
                    name = f"{prefix}{v + 1}"
                    if name not in self._indec_by_name:
                        return name
        base = "X" + "x".join(str(d) for d in dims)
        k = 0
        while f"{base}n{k}" in self._indec_by_name:
            k += 1
        return f"{base}n{k}"

    def class_by_name(self, text: str) -> IsoClass:
        """Parse 'S1+P1'-style sums of indecomposable labels ('0' = zero)."""
        text = text.strip()
        if text == "0":
            return self.zero_class
        pairs = []
        for name in text.split("+"):
            name = name.strip()
            iid = self._indec_by_name.get(name)
            if iid is None:
                iid = self._find_named_indec(name)
            pairs.append((iid, 1))
        return self._intern(self._sorted_key(pairs))

    def _find_named_indec(self, name: str) -> int:
        m = re.match(r"^([SPI])(\d+)$", name)
        if m:
            v = int(m.group(2)) - 1
            if not 0 <= v < self.quiver.n:
                raise ParseError(f"vertex out of range in {name!r}")
            builder = {
                "S": self.simple_rep,
                "P": self.projective_rep,
                "I": self.injective_rep,
            }[m.group(1)]
            cls = self.classify_rep(builder(v))
            if len(cls.key) != 1 or cls.key[0][1] != 1:
                raise ParseError(f"{name!r} is not indecomposable here")
            return cls.key[0][0]
        m = re.match(r"^X([\dx]+)n\d+$", name)
        if m:
            dims = tuple(int(d) for d in m.group(1).split("x"))
            if len(dims) == self.quiver.n:
                self._cell(dims)
                iid = self._indec_by_name.get(name)
                if iid is not None:
                    return iid
        raise ParseError(f"unknown indecomposable label {name!r}")

    # -- Euler forms -----------------------------------------------------------

    def euler(self, d, e) -> int:
        return self.quiver.euler(d, e)

    def euler_t_units(self, a_dbl, b_dbl) -> int:
        """<a/2, b/2> as an integer multiple of 1/4 (doubled-vector inputs)."""
        return self.quiver.euler(a_dbl, b_dbl)

    def sym_t_units(self, a_dbl, b_dbl) -> int:
        """(a/2, b/2) in quarter units, symmetrized Euler form."""
        return self.quiver.euler(a_dbl, b_dbl) + self.quiver.euler(b_dbl, a_dbl)

    # -- Hom, Ext, Aut ---------------------------------------------------------

    def _intertwiner_matrix(self, repM: Rep, repN: Rep):
        """Constraint matrix whose kernel is Hom(M, N), plus variable slices.

        Unknowns are the entries of phi_v: M_v -> N_v, flattened per vertex.
        """
        n = self.quiver.n
        sizes = [repN.dims[v] * repM.dims[v] for v in range(n)]
        offsets = np.concatenate([[0], np.cumsum(sizes)])
        nvars = int(offsets[-1])
        rows = []
        for idx, (s, t) in enumerate(self.quiver.arrows):
            x = repM.mats[idx]
            y = repN.mats[idx]
            n_eq = repN.dims[t] * repM.dims[s]
            if n_eq == 0:
                continue
            block = linalg.zeros(n_eq, nvars)
            # phi_t @ x  contributes kron(I_{N_t}, x^T) on phi_t variables
            if sizes[t]:
                block[:, offsets[t] : offsets[t + 1]] = np.kron(
                    linalg.identity(repN.dims[t]), x.T
                )
            # -y @ phi_s contributes -kron(y, I_{M_s}) on phi_s variables
            if sizes[s]:
                block[:, offsets[s] : offsets[s + 1]] -= np.kron(
                    y, linalg.identity(repM.dims[s])
                )
            rows.append(block % self.q)
        if rows:
            a = np.concatenate(rows, axis=0)
        else:
            a = linalg.zeros(0, nvars)
        return a, offsets

    def hom_dim(self, M: IsoClass, N: IsoClass) -> int:
        key = (M.key, N.key)
        h = self._hom_cache.get(key)
        if h is None:
            a, _ = self._intertwiner_matrix(self.representative(M), self.representative(N))
            h = a.shape[1] - linalg.rank(a, self.q)
            self._hom_cache[key] = h
        return h

    def ext_dim(self, M: IsoClass, N: IsoClass) -> int:
        e = self.hom_dim(M, N) - self.euler(M.dims, N.dims)
        assert e >= 0, (M, N)
        return e

    def hom_ext_dim(self, M: IsoClass, N: IsoClass) -> tuple:
        return self.hom_dim(M, N), self.ext_dim(M, N)

    def hom_basis(self, repM: Rep, repN: Rep) -> list:
        """Basis of Hom(M, N) as tuples of per-vertex matrices."""
        a, offsets = self._intertwiner_matrix(repM, repN)
        ker = linalg.kernel(a, self.q)
        out = []
        for k in range(ker.shape[1]):
            vec = ker[:, k]
            out.append(self._unflatten_hom(vec, repM, repN, offsets))
        return out

    def _unflatten_hom(self, vec, repM, repN, offsets):
        mats = []
        for v in range(self.quiver.n):
            block = vec[offsets[v] : offsets[v + 1]]
            mats.append(block.reshape(repN.dims[v], repM.dims[v]))
        return tuple(mats)

    def is_isomorphic(self, repA: Rep, repB: Rep) -> bool:
        """Exhaustive invertible-intertwiner search; independent of orbits."""
        if repA.dims != repB.dims:
            return False
        if not any(repA.dims):
            return True
        basis = self.hom_basis(repA, repB)
        h = len(basis)
        if self.q**h > self.max_brute_force:
            raise ResourceLimitError(f"Hom space too large to search ({h} dims)")
        for coeffs in product(range(self.q), repeat=h):
            if not any(coeffs):
                continue
            ok = True
            for v in range(self.quiver.n):
                phi = sum(
                    (c * basis[k][v] for k, c in enumerate(coeffs) if c),
                    linalg.zeros(repB.dims[v], repA.dims[v]),
                )
                if not linalg.is_invertible(phi % self.q, self.q):
                    ok = False
                    break
            if ok:
                return True
        return False

    def aut_count(self, M: IsoClass) -> int:
        count = self._aut_cache.get(M.key)
        if count is not None:
            return count
        rep = self.representative(M)
        basis = self.hom_basis(rep, rep)
        h = len(basis)
        if self.q**h > self.max_brute_force:
            raise ResourceLimitError(f"End space too large to enumerate ({h} dims)")
        count = 0
        for coeffs in product(range(self.q), repeat=h):
            ok = True
            for v in range(self.quiver.n):
                if rep.dims[v] == 0:
                    continue
                phi = sum(
                    (c * basis[k][v] for k, c in enumerate(coeffs) if c),
                    linalg.zeros(rep.dims[v], rep.dims[v]),
                )
                if not linalg.is_invertible(phi % self.q, self.q):
                    ok = False
                    break
            if ok:
                count += 1
        self._aut_cache[M.key] = count
        return count

    # -- submodule Hall numbers (abelian-category oracle) -----------------------

    def submodule_hall_number(self, L: IsoClass, M: IsoClass, N: IsoClass) -> int:
        """Number of subrepresentations U of L with U = N and L/U = M."""
        if tuple(m + n for m, n in zip(M.dims, N.dims)) != L.dims:
            return 0
        repL = self.representative(L)
        q = self.q
        per_vertex = []
        total = 1
        for v in range(self.quiver.n):
            subs = list(linalg.subspaces(repL.dims[v], N.dims[v], q))
            total *= len(subs)
            per_vertex.append(subs)
        if total > self.max_brute_force:
            raise ResourceLimitError(
                f"{total} subspace tuples to scan (cap {self.max_brute_force})"
            )
        count = 0
        for rows in product(*per_vertex):
            sub = self._subrep(repL, rows)
            if sub is None:
                continue
            if self.classify_rep(sub) != N:
                continue
            if self.classify_rep(self._quotient_rep(repL, rows)) == M:
                count += 1
        return count

    def _subrep(self, repL: Rep, rows):
        """Restriction to span(rows) per vertex, or None if not arrow-closed."""
        q = self.q
        mats = []
        for idx, (s, t) in enumerate(self.quiver.arrows):
            image = (repL.mats[idx] @ rows[s].T) % q
            z = linalg.solve(rows[t].T, image, q)
            if z is None:
                return None
            mats.append(z)
        dims = tuple(rows[v].shape[0] for v in range(self.quiver.n))
        return Rep(dims, tuple(mats))

    def _quotient_rep(self, repL: Rep, rows):
        q = self.q
        n = self.quiver.n
        comp = []
        inv_basis = []
        for v in range(n):
            d = repL.dims[v]
            c = linalg.extend_row_basis(rows[v], linalg.identity(d), q)
            comp.append(c)
            w = np.concatenate([rows[v], c], axis=0)  # rows form a basis
            inv_basis.append(linalg.inverse(w.T, q))
        mats = []
        for idx, (s, t) in enumerate(self.quiver.arrows):
            k_t = rows[t].shape[0]
            image = (repL.mats[idx] @ comp[s].T) % q
            coords = (inv_basis[t] @ image) % q
            mats.append(coords[k_t:, :])
        dims = tuple(comp[v].shape[0] for v in range(n))
        return Rep(dims, tuple(mats))

    # -- misc -------------------------------------------------------------------

    def random_base_change(self, rep: Rep, rng) -> Rep:
        """Random isomorphic copy of rep (for invariance tests)."""
        q = self.q
        mats = list(rep.mats)
        gs = []
        for d in rep.dims:
            if d == 0:
                gs.append(linalg.zeros(0, 0))
                continue
            while True:
                g = np.array(
                    [[rng.randrange(q) for _ in range(d)] for _ in range(d)],
                    dtype=np.int64,
                )
                if linalg.is_invertible(g, q):
                    gs.append(g)
                    break
        out = []
        for idx, (s, t) in enumerate(self.quiver.arrows):
            ginv = linalg.inverse(gs[s], q)
            out.append((gs[t] @ mats[idx] @ ginv) % q)
        return Rep(rep.dims, tuple(out))
