"""Root-system combinatorics for the classical and exceptional families.

Roots live in simple-root coordinates: a positive root is an integer vector
of nonnegative coefficients.  The Cartan matrix rows are indexed by coroots,
`cartan[i][j] = 2(a_i, a_j)/(a_i, a_i)`, so the simple reflection s changes
only coordinate s of a root:

    sigma_s(b)_s = b_s - sum_j cartan[s][j] b_j.

Positive roots are generated by closing the simple roots under all simple
reflections and keeping the nonnegative vectors; counts, heights, and length
classes are then read off.  Lattices (character or cocharacter side) are
integer bases in fundamental-(co)weight coordinates: identity for the lattice
the side calls "full", Cartan rows/columns for the other extreme, arbitrary
integer bases for intermediate isogeny types.
"""

from dataclasses import dataclass
from fractions import Fraction
import math

from .errors import InputError
from .ffq import is_prime, prime_factors
from .invalg import EXTERIOR, POLYNOMIAL, AlgebraSpec, GeneratorSpec

LONG = "long"
SHORT = "short"

_RANK_RANGE = {
    "A": (1, None), "B": (2, None), "C": (2, None), "D": (3, None),
    "E": (6, 8), "F": (4, 4), "G": (2, 2),
}


@dataclass(frozen=True)
class Root:
    coords: tuple[int, ...]
    height: int
    length_class: str
    component: int


@dataclass(frozen=True)
class RootSystem:
    components: tuple[tuple[str, int], ...]
    cartan: tuple[tuple[int, ...], ...]
    positive_roots: tuple[Root, ...]
    simple_count: int
    ranges: tuple[tuple[int, int], ...]  # simple-index span per component

    def component_roots(self, ci: int):
        return [r for r in self.positive_roots if r.component == ci]

    def to_json_dict(self) -> dict:
        return {
            "components": [[t, n] for t, n in self.components],
            "cartan": [list(row) for row in self.cartan],
            "positive_roots": [list(r.coords) for r in self.positive_roots],
            "heights": [r.height for r in self.positive_roots],
            "length_classes": [r.length_class for r in self.positive_roots],
        }


def _component_cartan(ctype: str, rank: int):
    lo, hi = _RANK_RANGE.get(ctype, (None, None))
    if lo is None or rank < lo or (hi is not None and rank > hi):
        raise InputError(f"no root system of type {ctype}{rank}")
    a = [[2 * (i == j) for j in range(rank)] for i in range(rank)]

    def bond(i, j, aij=-1, aji=-1):
        a[i][j] = aij
        a[j][i] = aji

    if ctype in ("A", "B", "C"):
        for i in range(rank - 1):
            bond(i, i + 1)
        if ctype == "B" and rank >= 2:
            bond(rank - 2, rank - 1, -1, -2)   # last simple root short
        if ctype == "C" and rank >= 2:
            bond(rank - 2, rank - 1, -2, -1)   # last simple root long
    elif ctype == "D":
        for i in range(rank - 2):
            bond(i, i + 1)
        bond(rank - 3, rank - 1)
    elif ctype == "E":
        edges = [(0, 2), (1, 3), (2, 3), (3, 4), (4, 5)]
        if rank >= 7:
            edges.append((5, 6))
        if rank == 8:
            edges.append((6, 7))
        for i, j in edges:
            bond(i, j)
    elif ctype == "F":
        bond(0, 1)
        bond(1, 2, -1, -2)   # first two long, last two short
        bond(2, 3)
    elif ctype == "G":
        bond(0, 1, -3, -1)   # first simple root short
    return a


def _reflection_closure(cartan, n):
    roots = {tuple(int(i == s) for i in range(n)) for s in range(n)}
    frontier = list(roots)
    while frontier:
        fresh = []
        for beta in frontier:
            for s in range(n):
                coord = beta[s] - sum(cartan[s][j] * beta[j]
                                      for j in range(n))
                if coord == beta[s]:
                    continue
                img = beta[:s] + (coord,) + beta[s + 1:]
                if min(img) >= 0 and img not in roots:
                    roots.add(img)
                    fresh.append(img)
        frontier = fresh
    return sorted(roots, key=lambda c: (sum(c), c))


def _symmetrizer(cartan, n):
    """Minimal positive integers d with d_i*cartan[i][j] symmetric."""
    d = [None] * n
    d[0] = Fraction(1)
    queue = [0]
    while queue:
        i = queue.pop()
        for j in range(n):
            if i != j and cartan[i][j] and d[j] is None:
                d[j] = d[i] * Fraction(cartan[i][j], cartan[j][i])
                queue.append(j)
    scale = math.lcm(*(x.denominator for x in d))
    ints = [int(x * scale) for x in d]
    g = math.gcd(*ints)
    return [x // g for x in ints]


def build_root_system(components) -> RootSystem:
    """Direct sum of simple components, each given as a (type, rank) pair."""
    comps = [(str(t).upper(), int(n)) for t, n in components]
    if not comps:
        raise InputError("need at least one component")
    cartans = [_component_cartan(t, n) for t, n in comps]
    total = sum(n for _, n in comps)
    cartan = [[0] * total for _ in range(total)]
    roots = []
    ranges = []
    offset = 0
    for ci, ((_t, n), block) in enumerate(zip(comps, cartans)):
        for i in range(n):
            for j in range(n):
                cartan[offset + i][offset + j] = block[i][j]
        local = _reflection_closure(block, n)
        d = _symmetrizer(block, n)
        norms = []
        for c in local:
            norms.append(sum(c[i] * c[j] * d[i] * block[i][j]
                             for i in range(n) for j in range(n)))
        top = max(norms)
        for c, norm in zip(local, norms):
            coords = (0,) * offset + c + (0,) * (total - offset - n)
            roots.append(Root(coords, sum(c),
                              LONG if norm == top else SHORT, ci))
        ranges.append((offset, offset + n))
        offset += n
    return RootSystem(tuple(comps), tuple(tuple(row) for row in cartan),
                      tuple(roots), total, tuple(ranges))


def heights(rs: RootSystem):
    return [r.height for r in rs.positive_roots]


def highest_roots(rs: RootSystem):
    """The unique maximal-height root of each component."""
    out = []
    for ci in range(len(rs.components)):
        comp = rs.component_roots(ci)
        out.append(max(comp, key=lambda r: r.height))
    return out


def coxeter_number(rs: RootSystem):
    """Per component: one more than the height of the highest root."""
    return [hr.height + 1 for hr in highest_roots(rs)]


def is_good_prime(rs: RootSystem, p: int) -> bool:
    """True when p divides no (nonzero) coefficient of any positive root."""
    if not is_prime(p):
        raise InputError(f"{p} is not prime")
    return all(c % p for r in rs.positive_roots for c in r.coords if c)


def bad_primes(rs: RootSystem):
    top = max(c for r in rs.positive_roots for c in r.coords)
    return [p for p in range(2, top + 1)
            if is_prime(p) and not is_good_prime(rs, p)]


def coweight_one_witness(rs: RootSystem):
    """Per component: smallest simple index (1-based, global numbering)
    whose coefficient in the highest root is 1, or None."""
    out = []
    for hr, (lo, hi) in zip(highest_roots(rs), rs.ranges):
        found = None
        for s in range(lo, hi):
            if hr.coords[s] == 1:
                found = s + 1
                break
        out.append(found)
    return out


# ---------------------------------------------------------------------------
# lattices
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LatticeSpec:
    kind: str            # adjoint | simply_connected | custom
    side: str            # character | cocharacter
    basis: tuple[tuple[int, ...], ...]

    def to_json_dict(self) -> dict:
        return {"kind": self.kind, "side": self.side,
                "basis": [list(row) for row in self.basis]}


def _normalize_kind(kind):
    k = str(kind).lower()
    if k in ("sc", "simply_connected", "simplyconnected"):
        return "simply_connected"
    if k in ("adjoint", "custom"):
        return k
    raise InputError(f"unknown lattice kind {kind!r}")


def _custom_basis(rs, basis):
    if basis is None:
        raise InputError("custom lattice needs an explicit basis")
    rows = tuple(tuple(int(v) for v in row) for row in basis)
    if len(rows) != rs.simple_count or any(len(r) != rs.simple_count
                                           for r in rows):
        raise InputError("lattice basis must be square of full rank size")
    return rows


def cocharacter_lattice(rs: RootSystem, kind="adjoint",
                        basis=None) -> LatticeSpec:
    """Basis in fundamental-coweight coordinates: the adjoint group has the
    full coweight lattice (identity), the simply connected one the coroot
    lattice (Cartan rows)."""
    kind = _normalize_kind(kind)
    n = rs.simple_count
    if kind == "adjoint":
        rows = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    elif kind == "simply_connected":
        rows = rs.cartan
    else:
        rows = _custom_basis(rs, basis)
    return LatticeSpec(kind, "cocharacter", rows)


def character_lattice(rs: RootSystem, kind="adjoint",
                      basis=None) -> LatticeSpec:
    """Basis in fundamental-weight coordinates: the adjoint group has the
    root lattice (Cartan columns), the simply connected one the full weight
    lattice (identity)."""
    kind = _normalize_kind(kind)
    n = rs.simple_count
    if kind == "adjoint":
        rows = tuple(tuple(rs.cartan[i][j] for i in range(n))
                     for j in range(n))
    elif kind == "simply_connected":
        rows = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    else:
        rows = _custom_basis(rs, basis)
    return LatticeSpec(kind, "character", rows)


def smith_invariant_factors(mat):
    """Invariant factors d_1 | d_2 | ... of an integer matrix, by explicit
    row/column reduction (zeros at the end signal rank deficiency)."""
    a = [[int(v) for v in row] for row in mat]
    n = len(a)
    m = len(a[0]) if n else 0
    if any(len(row) != m for row in a):
        raise InputError("matrix rows must have equal length")
    size = min(n, m)
    factors = []
    top = 0
    while top < size:
        piv = None
        for i in range(top, n):
            for j in range(top, m):
                if a[i][j] and (piv is None
                                or abs(a[i][j]) < abs(a[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        a[top], a[piv[0]] = a[piv[0]], a[top]
        for row in a:
            row[top], row[piv[1]] = row[piv[1]], row[top]
        while True:
            if a[top][top] < 0:
                a[top] = [-v for v in a[top]]
            for i in range(top + 1, n):
                while a[i][top]:
                    q = a[i][top] // a[top][top]
                    for j in range(top, m):
                        a[i][j] -= q * a[top][j]
                    if a[i][top]:
                        a[top], a[i] = a[i], a[top]
            for j in range(top + 1, m):
                while a[top][j]:
                    q = a[top][j] // a[top][top]
                    for i in range(top, n):
                        a[i][j] -= q * a[i][top]
                    if a[top][j]:
                        for row in a:
                            row[top], row[j] = row[j], row[top]
            if any(a[i][top] for i in range(top + 1, n)):
                continue
            p = a[top][top]
            fix = next((i for i in range(top + 1, n)
                        if any(a[i][j] % p for j in range(top + 1, m))), None)
            if fix is None:
                break
            for j in range(top, m):
                a[top][j] += a[fix][j]
        factors.append(abs(a[top][top]))
        top += 1
    factors += [0] * (size - len(factors))
    return factors


def cofundamental_exponent(rs: RootSystem, lattice: LatticeSpec) -> int:
    """Exponent (largest invariant factor) of the quotient of the full
    fundamental-side lattice by the span of the given basis."""
    factors = smith_invariant_factors(lattice.basis)
    if not factors or factors[-1] == 0:
        raise InputError("lattice basis is singular")
    return factors[-1]


def _root_coords(rs: RootSystem, root):
    coords = tuple(int(c) for c in getattr(root, "coords", root))
    if len(coords) != rs.simple_count:
        raise InputError("root coordinate length mismatch")
    plus = {r.coords for r in rs.positive_roots}
    if coords not in plus and tuple(-c for c in coords) not in plus:
        raise InputError(f"{coords} is not a root of this system")
    return coords


def _solve_exact(rows, rhs):
    """Solve (rows)^T x = rhs exactly over the rationals."""
    n = len(rhs)
    aug = [[Fraction(rows[j][i]) for j in range(n)] + [Fraction(rhs[i])]
           for i in range(n)]
    for col in range(n):
        piv = next((i for i in range(col, n) if aug[i][col]), None)
        if piv is None:
            raise InputError("lattice basis is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [v / pv for v in aug[col]]
        for i in range(n):
            if i != col and aug[i][col]:
                f = aug[i][col]
                aug[i] = [v - f * w for v, w in zip(aug[i], aug[col])]
    return [aug[i][n] for i in range(n)]


def _root_lattice_coords(rs: RootSystem, lattice: LatticeSpec, root):
    """Coordinates of the root in the given lattice basis (integer), via its
    fundamental-weight vector cartan . c."""
    coords = _root_coords(rs, root)
    n = rs.simple_count
    fw = [sum(rs.cartan[i][s] * coords[s] for s in range(n))
          for i in range(n)]
    x = _solve_exact(lattice.basis, fw)
    if any(v.denominator != 1 for v in x):
        raise InputError(
            f"root {coords} is not in the given lattice (coords {x})")
    return [int(v) for v in x]


def root_divisibility(rs: RootSystem, char_lattice: LatticeSpec, root,
                      n: int) -> bool:
    """Is the root divisible by n in the given character lattice?"""
    if n < 1:
        raise InputError("divisor must be positive")
    x = _root_lattice_coords(rs, char_lattice, root)
    return all(v % n == 0 for v in x)


def root_action_index(rs: RootSystem, char_lattice: LatticeSpec, root,
                      q: int) -> int:
    """Index of the image of the root character on the F_q-points of the
    torus: gcd(q-1, gcd of the root's lattice coordinates)."""
    if q < 2 or len(prime_factors(q)) != 1:
        raise InputError(f"{q} is not a prime power")
    x = _root_lattice_coords(rs, char_lattice, root)
    g = 0
    for v in x:
        g = math.gcd(g, abs(v))
    return math.gcd(q - 1, g)


def char2_vanishing_bound(rs: RootSystem, lattice: LatticeSpec,
                          r: int) -> Fraction:
    """r / gcd(e, 2^r - 1) with e the cofundamental exponent.  Components of
    type E8, F4, G2 are rejected (no simple index pairs to 1 against the
    highest root there)."""
    if r < 1:
        raise InputError("r must be at least 1")
    for t, n in rs.components:
        if t in ("F", "G") or (t == "E" and n == 8):
            raise InputError(f"type {t}{n} component excluded")
    e = cofundamental_exponent(rs, lattice)
    return Fraction(r, math.gcd(e, 2 ** r - 1))


def lie_gr_algebra(rs: RootSystem, lattice: LatticeSpec, p: int,
                   r: int) -> AlgebraSpec:
    """Weighted algebra with one generator pair per positive root and twist:
    the torus coordinate i acts on the root-alpha, twist-k generators with
    weight p^k * <alpha, basis row i>, read modulo q-1."""
    q = p ** r
    rank = rs.simple_count
    modulus = q - 1 if q > 2 else 1
    base = []
    for root in rs.positive_roots:
        base.append(tuple(
            sum(lattice.basis[i][s] * root.coords[s] for s in range(rank))
            for i in range(rank)))
    gens = []
    for ridx, root in enumerate(rs.positive_roots):
        tag = "root=" + ",".join(map(str, root.coords))
        for k in range(r):
            weight = tuple(p ** k * w for w in base[ridx])
            if p == 2:
                gens.append(GeneratorSpec(
                    f"x[{ridx},{k}]", POLYNOMIAL, 1, weight, tag))
            else:
                gens.append(GeneratorSpec(
                    f"x[{ridx},{k}]", EXTERIOR, 1, weight, tag))
                gens.append(GeneratorSpec(
                    f"y[{ridx},{k}]", POLYNOMIAL, 2, weight, tag))
    return AlgebraSpec.make(p, r, rank, gens, (modulus,) * rank)
