"""Monomial bases of weighted free graded-commutative algebras and their
torus invariants.

An algebra is a tensor product of exterior generators (degree 1, exponent at
most 1) and polynomial generators (degree 2, or degree 1 in characteristic-2
mode, unbounded exponents).  Each generator carries an integer weight vector,
one coordinate per torus factor, read modulo that coordinate's modulus.  A
monomial is invariant when its total weight vanishes in every coordinate.

Two independent routes decide invariance:

* `invariant_monomials` sums weights coordinatewise and tests divisibility by
  the modulus;
* `invariant_monomials_oracle` realizes the action literally: it picks, for
  each coordinate, a field element whose multiplicative order is that
  coordinate's modulus, multiplies actual eigenvalues in F_q along the
  monomial, and accepts when every product is 1.

The two deliberately share no invariance logic, so each checks the other.

Enumeration is a recursive descent over the generator list with a
remaining-degree bound.  The invariant enumeration can additionally prune a
branch when the generators not yet visited are unable to move some coordinate
out of a nonzero residue class (a suffix-gcd criterion); pruning never changes
the result and can be switched off.  Monomial counts are capped (default 10^7)
and the cap fails loudly.

All list outputs are sorted in a canonical order (generator id ascending,
exponent descending) so repeated runs are byte-identical.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, replace

from .errors import InputError, ResourceGuardError
from .ffq import Fq, PrimePower, multiplicative_generator

EXTERIOR = "exterior"
POLYNOMIAL = "polynomial"
MONOMIAL_CAP = 10 ** 7

# fields at most this size use an integer multiplication table in the oracle
_TABLE_THRESHOLD = 512


@dataclass(frozen=True)
class GeneratorSpec:
    id: str
    parity: str
    degree: int
    weight: tuple[int, ...]
    tag: str = ""

    def __post_init__(self):
        if not self.id or not isinstance(self.id, str):
            raise InputError("generator id must be a nonempty string")
        if self.parity not in (EXTERIOR, POLYNOMIAL):
            raise InputError(f"unknown parity {self.parity!r}")
        object.__setattr__(self, "weight", tuple(int(w) for w in self.weight))


@dataclass(frozen=True)
class AlgebraSpec:
    field: PrimePower
    torus_rank: int
    moduli: tuple[int, ...]
    char2_mode: bool
    generators: tuple[GeneratorSpec, ...]

    def __post_init__(self):
        object.__setattr__(self, "moduli", tuple(int(m) for m in self.moduli))
        object.__setattr__(self, "generators", tuple(self.generators))
        if self.torus_rank < 1:
            raise InputError("torus rank must be at least 1")
        if len(self.moduli) != self.torus_rank:
            raise InputError("need one modulus per torus coordinate")
        qm1 = self.field.q - 1
        for m in self.moduli:
            if m < 1 or (qm1 % m if qm1 else m != 1):
                raise InputError(f"modulus {m} does not divide q-1 = {qm1}")
        if self.char2_mode != (self.field.p == 2):
            raise InputError("char2_mode must hold exactly when p = 2")
        seen = set()
        reduced = []
        for g in self.generators:
            if g.id in seen:
                raise InputError(f"duplicate generator id {g.id!r}")
            seen.add(g.id)
            if len(g.weight) != self.torus_rank:
                raise InputError(f"generator {g.id!r}: weight length mismatch")
            if g.parity == EXTERIOR:
                if self.char2_mode:
                    raise InputError("no exterior generators in char-2 mode")
                if g.degree != 1:
                    raise InputError("exterior generators have degree 1")
            else:
                want = 1 if self.char2_mode else 2
                if g.degree != want:
                    raise InputError(
                        f"polynomial generators have degree {want} here")
            reduced.append(replace(
                g, weight=tuple(w % m for w, m in zip(g.weight, self.moduli))))
        object.__setattr__(self, "generators", tuple(reduced))

    @classmethod
    def make(cls, p, r, torus_rank, generators, moduli=None):
        field = PrimePower(p, r)
        if moduli is None:
            moduli = (field.q - 1,) * torus_rank if field.q > 2 \
                else (1,) * torus_rank
        return cls(field=field, torus_rank=torus_rank, moduli=tuple(moduli),
                   char2_mode=(p == 2), generators=tuple(generators))

    @property
    def ids(self):
        return tuple(g.id for g in self.generators)

    def by_id(self, gid: str) -> GeneratorSpec:
        for g in self.generators:
            if g.id == gid:
                return g
        raise InputError(f"unknown generator id {gid!r}")

    def restrict(self, ids) -> "AlgebraSpec":
        """Sub-algebra on the given generator ids, order preserved."""
        keep = set(ids)
        unknown = keep - set(self.ids)
        if unknown:
            raise InputError(f"unknown generator ids {sorted(unknown)}")
        gens = tuple(g for g in self.generators if g.id in keep)
        return AlgebraSpec(self.field, self.torus_rank, self.moduli,
                           self.char2_mode, gens)

    def to_json_dict(self) -> dict:
        return {
            "field": {"p": self.field.p, "r": self.field.r},
            "torus_rank": self.torus_rank,
            "moduli": list(self.moduli),
            "char2_mode": self.char2_mode,
            "generators": [
                {"id": g.id, "parity": g.parity, "degree": g.degree,
                 "weight": list(g.weight), "tag": g.tag}
                for g in self.generators],
        }

    @classmethod
    def from_json_dict(cls, blob: dict) -> "AlgebraSpec":
        try:
            gens = tuple(
                GeneratorSpec(g["id"], g["parity"], g["degree"],
                              tuple(g["weight"]), g.get("tag", ""))
                for g in blob["generators"])
            return cls(PrimePower(blob["field"]["p"], blob["field"]["r"]),
                       blob["torus_rank"], tuple(blob["moduli"]),
                       blob["char2_mode"], gens)
        except (KeyError, TypeError) as exc:
            raise InputError(f"malformed algebra spec: {exc}") from exc

    def spec_hash(self) -> str:
        blob = canonical_json(self.to_json_dict())
        return hashlib.sha256(blob.encode()).hexdigest()[:12]


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


@dataclass(frozen=True)
class Monomial:
    exps: tuple[tuple[str, int], ...]

    def __post_init__(self):
        entries = tuple(sorted((str(i), int(e)) for i, e in self.exps))
        ids = [i for i, _ in entries]
        if len(set(ids)) != len(ids):
            raise InputError("repeated generator id in monomial")
        if any(e < 1 for _, e in entries):
            raise InputError("exponents must be positive")
        object.__setattr__(self, "exps", entries)

    @classmethod
    def from_dict(cls, blob: dict) -> "Monomial":
        return cls(tuple(blob.get("exps", {}).items()))

    def to_dict(self) -> dict:
        return {"exps": {i: e for i, e in self.exps}}

    def support(self) -> frozenset:
        return frozenset(i for i, _ in self.exps)

    def degree(self, alg: AlgebraSpec) -> int:
        return sum(e * alg.by_id(i).degree for i, e in self.exps)

    def sort_key(self):
        return tuple((i, -e) for i, e in self.exps)

    def format(self) -> str:
        if not self.exps:
            return "1"
        return "*".join(i if e == 1 else f"{i}^{e}" for i, e in self.exps)

    def __str__(self):
        return self.format()


def monomial_json(m: Monomial) -> dict:
    return {"exps": {i: e for i, e in m.exps}, "str": m.format()}


def canonical_sort(monomials) -> list[Monomial]:
    return sorted(monomials, key=Monomial.sort_key)


def _check_monomial(alg: AlgebraSpec, m: Monomial):
    for gid, e in m.exps:
        g = alg.by_id(gid)
        if g.parity == EXTERIOR and e > 1:
            raise InputError(f"exterior generator {gid!r} squares to zero")


def monomial_weight(alg: AlgebraSpec, m: Monomial) -> tuple[int, ...]:
    """Coordinatewise exponent-weighted sum of generator weights, reduced."""
    _check_monomial(alg, m)
    total = [0] * alg.torus_rank
    for gid, e in m.exps:
        g = alg.by_id(gid)
        for c, w in enumerate(g.weight):
            total[c] += e * w
    return tuple(t % m for t, m in zip(total, alg.moduli))


# ---------------------------------------------------------------------------
# enumeration engines
# ---------------------------------------------------------------------------

def _descent_tables(alg: AlgebraSpec):
    """Per-generator degree/cap arrays plus suffix feasibility data."""
    gens = alg.generators
    ngen = len(gens)
    degs = [g.degree for g in gens]
    caps = [1 if g.parity == EXTERIOR else None for g in gens]
    suffix_max = [0] * (ngen + 1)   # None = unbounded once a polynomial remains
    suffix_deg_gcd = [0] * (ngen + 1)
    for i in range(ngen - 1, -1, -1):
        above = suffix_max[i + 1]
        if caps[i] is None or above is None:
            suffix_max[i] = None
        else:
            suffix_max[i] = above + degs[i] * caps[i]
        suffix_deg_gcd[i] = math.gcd(suffix_deg_gcd[i + 1], degs[i])
    return gens, ngen, degs, caps, suffix_max, suffix_deg_gcd


def enumerate_monomials(alg: AlgebraSpec, degree: int,
                        max_count: int = MONOMIAL_CAP) -> list[Monomial]:
    """All monomials of total degree exactly `degree`, canonically sorted."""
    if degree < 0:
        raise InputError("degree must be nonnegative")
    gens, ngen, degs, caps, suffix_max, suffix_deg_gcd = _descent_tables(alg)
    out = []
    count = 0
    acc = []

    def rec(i, rem):
        nonlocal count
        if rem == 0:
            count += 1
            if count > max_count:
                raise ResourceGuardError(
                    f"more than {max_count} monomials in degree {degree}")
            out.append(Monomial(tuple(acc)))
            return
        if i == ngen:
            return
        smax = suffix_max[i]
        if smax is not None and rem > smax:
            return
        if rem % suffix_deg_gcd[i]:
            return
        d = degs[i]
        maxe = rem // d
        if caps[i] is not None:
            maxe = min(maxe, caps[i])
        rec(i + 1, rem)
        gid = gens[i].id
        for e in range(1, maxe + 1):
            acc.append((gid, e))
            rec(i + 1, rem - e * d)
            acc.pop()

    rec(0, degree)
    return canonical_sort(out)


def invariant_monomials(alg: AlgebraSpec, degree: int, prune: bool = True,
                        max_count: int = MONOMIAL_CAP) -> list[Monomial]:
    """Monomials of the given degree whose total weight is zero everywhere.

    Invariance is the divisibility test: each weight coordinate must vanish
    modulo that coordinate's modulus.  With `prune` a branch is abandoned as
    soon as some coordinate's residue lies outside the subgroup generated by
    the weights still ahead; this is exact, and switched off it degenerates to
    the plain filter over the full enumeration.
    """
    if degree < 0:
        raise InputError("degree must be nonnegative")
    gens, ngen, degs, caps, suffix_max, suffix_deg_gcd = _descent_tables(alg)
    rank = alg.torus_rank
    moduli = alg.moduli
    nz = [[(c, g.weight[c]) for c in range(rank) if g.weight[c] % moduli[c]]
          for g in gens]

    # suffix_gcd[i][c]: gcd of modulus c and all weights in coordinate c from
    # generator i on; a partial weight must be divisible by it to complete
    suffix_gcd = [[0] * rank for _ in range(ngen + 1)]
    suffix_gcd[ngen] = list(moduli)
    for i in range(ngen - 1, -1, -1):
        w = gens[i].weight
        suffix_gcd[i] = [math.gcd(suffix_gcd[i + 1][c], w[c])
                         for c in range(rank)]
    check_coords = [[(c, g) for c in range(rank)
                     if (g := suffix_gcd[i][c]) > 1]
                    for i in range(ngen + 1)]

    out = []
    count = 0
    acc = []
    wacc = [0] * rank

    def rec(i, rem):
        nonlocal count
        if rem == 0:
            count += 1
            if count > max_count:
                raise ResourceGuardError(
                    f"more than {max_count} monomials examined in degree {degree}")
            if not any(wacc):
                out.append(Monomial(tuple(acc)))
            return
        if i == ngen:
            return
        smax = suffix_max[i]
        if smax is not None and rem > smax:
            return
        if rem % suffix_deg_gcd[i]:
            return
        if prune:
            for c, g in check_coords[i]:
                if wacc[c] % g:
                    return
        d = degs[i]
        maxe = rem // d
        if caps[i] is not None:
            maxe = min(maxe, caps[i])
        rec(i + 1, rem)
        if maxe == 0:
            return
        gid = gens[i].id
        touched = nz[i]
        saved = [wacc[c] for c, _ in touched]
        for e in range(1, maxe + 1):
            for c, w in touched:
                wacc[c] = (wacc[c] + w) % moduli[c]
            acc.append((gid, e))
            rec(i + 1, rem - e * d)
            acc.pop()
        for (c, _), v in zip(touched, saved):
            wacc[c] = v

    rec(0, degree)
    return canonical_sort(out)


def invariant_monomials_oracle(alg: AlgebraSpec, degree: int,
                               max_count: int = MONOMIAL_CAP,
                               _table_threshold: int = _TABLE_THRESHOLD
                               ) -> list[Monomial]:
    """Invariant monomials found by acting with explicit field scalars.

    For each torus coordinate a scalar of multiplicative order equal to the
    coordinate's modulus is fixed (a power of the canonical generator of
    F_q^x).  Each generator then has a concrete eigenvalue per coordinate, and
    a monomial is kept exactly when multiplying its eigenvalues out in F_q
    gives 1 in every coordinate.  No weight-residue arithmetic is used.
    """
    if degree < 0:
        raise InputError("degree must be nonnegative")
    field = Fq(alg.field.p, alg.field.r)
    gen = multiplicative_generator(field)
    q = field.q
    scalars = [gen ** ((q - 1) // m if q > 2 else 0) for m in alg.moduli]

    gens, ngen, degs, caps, suffix_max, suffix_deg_gcd = _descent_tables(alg)
    rank = alg.torus_rank
    one = field.one()

    use_table = q <= _table_threshold
    if use_table:
        elems = [field.from_int(k) for k in range(q)]
        mul = [[(elems[a] * elems[b]).to_int() for b in range(q)]
               for a in range(q)]
        one_v = one.to_int()
        eig = [[(scalars[c] ** g.weight[c]).to_int() for c in range(rank)]
               for g in gens]
    else:
        one_v = one
        eig = [[scalars[c] ** g.weight[c] for c in range(rank)] for g in gens]

    nz = [[c for c in range(rank) if eig[i][c] != one_v] for i in range(ngen)]

    out = []
    count = 0
    acc = []
    eacc = [one_v] * rank

    def rec(i, rem):
        nonlocal count
        if rem == 0:
            count += 1
            if count > max_count:
                raise ResourceGuardError(
                    f"more than {max_count} monomials examined in degree {degree}")
            if all(v == one_v for v in eacc):
                out.append(Monomial(tuple(acc)))
            return
        if i == ngen:
            return
        smax = suffix_max[i]
        if smax is not None and rem > smax:
            return
        if rem % suffix_deg_gcd[i]:
            return
        d = degs[i]
        maxe = rem // d
        if caps[i] is not None:
            maxe = min(maxe, caps[i])
        rec(i + 1, rem)
        if maxe == 0:
            return
        gid = gens[i].id
        touched = nz[i]
        saved = [eacc[c] for c in touched]
        ev = eig[i]
        for e in range(1, maxe + 1):
            if use_table:
                for c in touched:
                    eacc[c] = mul[eacc[c]][ev[c]]
            else:
                for c in touched:
                    eacc[c] = eacc[c] * ev[c]
            acc.append((gid, e))
            rec(i + 1, rem - e * d)
            acc.pop()
        for c, v in zip(touched, saved):
            eacc[c] = v

    rec(0, degree)
    return canonical_sort(out)


# ---------------------------------------------------------------------------
# series, kernels, digit sums
# ---------------------------------------------------------------------------

FILTERS = ("all", "invariant", "invariant_nilpotent")


def dimension_series(alg: AlgebraSpec, max_degree: int, filter: str = "all",
                     prune: bool = True,
                     max_count: int = MONOMIAL_CAP) -> list[int]:
    """dims[d] = number of monomials passing the filter in degree d <= D."""
    if filter not in FILTERS:
        raise InputError(f"filter must be one of {FILTERS}")
    if max_degree < 0:
        raise InputError("max_degree must be nonnegative")
    exterior_ids = {g.id for g in alg.generators if g.parity == EXTERIOR}
    dims = []
    for d in range(max_degree + 1):
        if filter == "all":
            dims.append(len(enumerate_monomials(alg, d, max_count)))
        else:
            inv = invariant_monomials(alg, d, prune, max_count)
            if filter == "invariant":
                dims.append(len(inv))
            else:
                dims.append(sum(1 for m in inv
                                if m.support() & exterior_ids))
    return dims


def detection_kernel(alg: AlgebraSpec, degree: int, family,
                     prune: bool = True,
                     max_count: int = MONOMIAL_CAP) -> dict:
    """Invariant monomials supported inside no family member.

    Each family member is a set of generator ids (anything with an `ids`
    attribute is accepted too).  An invariant monomial restricts nontrivially
    to the member subalgebras containing its support; the kernel of the joint
    restriction is spanned by the monomials contained in none of them, and the
    cokernel of the corresponding sum-of-subspaces map has the same dimension.
    """
    known = set(alg.ids)
    id_sets = []
    for member in family:
        ids = set(getattr(member, "ids", member))
        unknown = ids - known
        if unknown:
            raise InputError(f"unknown generator ids {sorted(unknown)}")
        id_sets.append(ids)
    inv = invariant_monomials(alg, degree, prune, max_count)
    kernel = [m for m in inv
              if not any(m.support() <= ids for ids in id_sets)]
    return {
        "spec_hash": alg.spec_hash(),
        "degree": degree,
        "invariant_dim": len(inv),
        "kernel_dim": len(kernel),
        "cokernel_dim": len(kernel),
        "kernel_basis": [monomial_json(m) for m in kernel],
        "family": [sorted(ids) for ids in id_sets],
    }


def quillen_verify(p: int, r: int) -> dict:
    """Exhaustive check of the digit-sum divisibility bound.

    Over all tuples (a_0, ..., a_{r-1}) of nonnegative integers with
    0 < sum <= r(p-1): if (p^r - 1) divides sum a_k p^k then the digit sum is
    at least r(p-1), with equality exactly for the all-(p-1) tuple.
    """
    pp = PrimePower(p, r)
    modulus = pp.q - 1
    bound = r * (p - 1)
    failures = []
    equality_matches = 0
    checked = 0

    def tuples(prefix, remaining):
        if len(prefix) == r:
            yield tuple(prefix)
            return
        for a in range(remaining + 1):
            yield from tuples(prefix + [a], remaining - a)

    for a in tuples([], bound):
        s = sum(a)
        if s == 0:
            continue
        checked += 1
        value = sum(ak * p ** k for k, ak in enumerate(a))
        divisible = (modulus == 0) or value % modulus == 0
        if s < bound and divisible:
            failures.append({"tuple": list(a), "value": value})
        if s == bound:
            is_flat = all(ak == p - 1 for ak in a)
            if divisible != is_flat:
                failures.append({"tuple": list(a), "value": value})
            if divisible:
                equality_matches += 1
    return {
        "p": p, "r": r,
        "modulus": modulus,
        "weight_bound": bound,
        "tuples_checked": checked,
        "equality_matches": equality_matches,
        "equality_witness": [p - 1] * r,
        "failures": failures,
        "pass": not failures and equality_matches == 1,
    }


def random_algebra_spec(rng) -> AlgebraSpec:
    """Seeded random spec for cross-checking the two invariance routes."""
    p, r = rng.choice([(2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2),
                       (5, 1), (7, 1), (11, 1), (13, 1)])
    q = p ** r
    rank = rng.randint(1, 3)
    qm1 = q - 1
    divisors = [d for d in range(1, qm1 + 1) if qm1 % d == 0] or [1]
    moduli = tuple(rng.choice(divisors) for _ in range(rank))
    gens = []
    for i in range(rng.randint(1, 6)):
        weight = tuple(rng.randrange(m) for m in moduli)
        if p == 2:
            gens.append(GeneratorSpec(f"g{i}", POLYNOMIAL, 1, weight))
        elif rng.random() < 0.5:
            gens.append(GeneratorSpec(f"g{i}", EXTERIOR, 1, weight))
        else:
            gens.append(GeneratorSpec(f"g{i}", POLYNOMIAL, 2, weight))
    return AlgebraSpec.make(p, r, rank, gens, moduli)
