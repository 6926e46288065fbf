"""Nested chains of order ideals, their monomials, and linear-quotients checks.

A chain is a tuple (I_1, ..., I_{r-1}) with I_a an order ideal of level a
and I_1 ⊇ I_2 ⊇ ... ⊇ I_{r-1}.  Each chain yields a squarefree monomial of
degree n(r-1); together they generate the chain ideal of the family.

The partial order on chains is componentwise inclusion.  Conventions
I_0 = full ground set and I_r = ∅ are used throughout, so for every element
p_i there is exactly one level a with p_i in I_{a-1} but not I_a, and the
variable X[a,i] is exactly the one missing from the chain monomial.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import (
    BudgetError,
    ChainError,
    DegreeError,
    InternalMismatchError,
    RangeError,
)
from .monomials import Monomial, MonomialIdeal, sort_gens
from .posets import (
    RelationFamily,
    composite_relation,
    ideal_closure,
    order_ideals,
    validate_chain,
)


def _chain_sort_key(chain):
    return (sum(m.bit_count() for m in chain), chain)


def enumerate_chains(family: RelationFamily) -> list[tuple[int, ...]]:
    """All nested ideal chains of the family, canonically ordered.

    Built depth-first from the top level downward: choose I_{r-1}, then each
    I_a among the ideals of level a containing I_{a+1}.  Sorted by total
    cardinality, then by the bitmask tuple.
    """
    per_level = [order_ideals(family.level(a)) for a in range(1, family.r)]
    chains: list[tuple[int, ...]] = []
    top = family.r - 2  # per_level index of I_{r-1}

    # acc grows from I_{r-1} outward; each new component must contain the
    # previous one, so the J(P_1) x ... x J(P_{r-1}) product is never built
    def extend(depth: int, acc: list[int]) -> None:
        if depth > top:
            chains.append(tuple(reversed(acc)))
            return
        inner = acc[-1] if acc else 0
        for mask in per_level[top - depth]:
            if inner & ~mask == 0:
                acc.append(mask)
                extend(depth + 1, acc)
                acc.pop()

    extend(0, [])
    chains.sort(key=_chain_sort_key)
    return chains


def chain_monomial(family: RelationFamily, chain) -> Monomial:
    """The degree-n(r-1) squarefree monomial of a nested ideal chain.

    Support: X[a,i] for p_i in I_a, plus X[a+1,i] for p_i not in I_a,
    over a in [r-1].
    """
    chain = validate_chain(family, chain)
    n, r = family.n, family.r
    mask = 0
    for a, ideal in enumerate(chain, start=1):
        for i in range(n):
            if ideal >> i & 1:
                mask |= 1 << ((a - 1) * n + i)
            else:
                mask |= 1 << (a * n + i)
    mono = Monomial(r, n, mask)
    if mono.degree() != n * (r - 1):
        raise ChainError(
            f"chain monomial degree {mono.degree()} != n(r-1) = {n * (r - 1)}"
        )
    return mono


def build_hr(family: RelationFamily) -> MonomialIdeal:
    """The ideal generated by all chain monomials of the family.

    All generators share degree n(r-1), so distinct monomials are
    automatically minimal; the chain -> monomial map is checked injective.
    """
    chains = enumerate_chains(family)
    gens = [chain_monomial(family, c) for c in chains]
    if len({g.mask for g in gens}) != len(chains):
        raise InternalMismatchError(
            "chain -> monomial map failed to be injective; generators collide"
        )
    return MonomialIdeal(family.r, family.n, sort_gens(gens))


def chain_compare(chain_j, chain_i) -> str:
    """Componentwise-inclusion verdict: less, greater, equal or incomparable."""
    chain_j, chain_i = tuple(chain_j), tuple(chain_i)
    if len(chain_j) != len(chain_i):
        raise ChainError("cannot compare chains of different lengths")
    if chain_j == chain_i:
        return "equal"
    j_below = all(a & ~b == 0 for a, b in zip(chain_j, chain_i))
    i_below = all(b & ~a == 0 for a, b in zip(chain_j, chain_i))
    if j_below:
        return "less"
    if i_below:
        return "greater"
    return "incomparable"


@dataclass(frozen=True)
class ChainOrder:
    """A total order on a chain set extending componentwise inclusion.

    chains holds the chosen order; below[k] is the bitmask of positions
    holding chains strictly below chains[k] componentwise.
    """

    chains: tuple[tuple[int, ...], ...]
    below: tuple[int, ...]

    def is_linear_extension(self) -> bool:
        # all strict predecessors of position k must sit at positions < k
        return all(self.below[k] >> k == 0 for k in range(len(self.chains)))


def _below_masks(chains) -> tuple[int, ...]:
    m = len(chains)
    below = [0] * m
    for k in range(m):
        for j in range(m):
            if j != k and chain_compare(chains[j], chains[k]) == "less":
                below[k] |= 1 << j
    return tuple(below)


def linear_extension(chains) -> ChainOrder:
    """Canonical total order: total cardinality, then bitmask-tuple lex.

    Total cardinality strictly increases along componentwise strict
    inclusion, so this sort is always a linear extension.
    """
    ordered = tuple(sorted(chains, key=_chain_sort_key))
    order = ChainOrder(ordered, _below_masks(ordered))
    assert order.is_linear_extension()
    return order


def random_linear_extension(chains, rng: random.Random, below=None) -> ChainOrder:
    """A seeded random linear extension (random topological sort, not uniform).

    Incremental Kahn: track how many strict predecessors of each chain are
    unplaced and keep a pool of ready chains, picking randomly.  Pass the
    precomputed below masks when calling repeatedly on the same chain list.
    """
    chains = list(chains)
    m = len(chains)
    if below is None:
        below = _below_masks(chains)
    succs: list[list[int]] = [[] for _ in range(m)]
    counts = [0] * m
    for k in range(m):
        s = below[k]
        counts[k] = s.bit_count()
        while s:
            j = (s & -s).bit_length() - 1
            s &= s - 1
            succs[j].append(k)
    ready = [k for k in range(m) if counts[k] == 0]
    order: list[int] = []
    while ready:
        pos = rng.randrange(len(ready))
        ready[pos], ready[-1] = ready[-1], ready[pos]
        pick = ready.pop()
        order.append(pick)
        for k in succs[pick]:
            counts[k] -= 1
            if counts[k] == 0:
                ready.append(k)
    if len(order) != m:
        raise InternalMismatchError("componentwise inclusion has a cycle")
    # permute the below masks instead of recomparing all chain pairs
    new_pos = [0] * m
    for new_k, old_k in enumerate(order):
        new_pos[old_k] = new_k
    new_below = []
    for old_k in order:
        s = below[old_k]
        nb = 0
        while s:
            j = (s & -s).bit_length() - 1
            s &= s - 1
            nb |= 1 << new_pos[j]
        new_below.append(nb)
    out = ChainOrder(tuple(chains[k] for k in order), tuple(new_below))
    assert out.is_linear_extension()
    return out


@dataclass(frozen=True)
class LinearQuotientsVerdict:
    passed: bool
    witness: tuple[int, int] | None = None  # 1-based (j, i): u_j blocks u_i

    def __bool__(self) -> bool:
        return self.passed


def check_linear_quotients(gens) -> LinearQuotientsVerdict:
    """Check the linear-quotients condition for generators in the given order.

    Pass iff for every position i and every j < i some k < i has
    u_k/gcd(u_k,u_i) equal to a single variable dividing u_j/gcd(u_j,u_i).
    Positions are 1-based; on failure the first offending (j, i) is the
    witness.
    """
    gens = list(gens)
    if len({g.degree() for g in gens}) > 1:
        degs = sorted({g.degree() for g in gens})
        raise DegreeError(f"generators are not equigenerated: degrees {degs}")
    masks = [g.mask for g in gens]
    for i in range(1, len(masks)):
        singles = 0
        quotients = []
        for k in range(i):
            q = masks[k] & ~masks[i]
            quotients.append(q)
            if q.bit_count() == 1:
                singles |= q
        for j in range(i):
            if quotients[j] & singles == 0:
                return LinearQuotientsVerdict(False, (j + 1, i + 1))
    return LinearQuotientsVerdict(True)


def find_linear_quotients_order(
    ideal: MonomialIdeal, state_budget: int = 1 << 22
) -> tuple[Monomial, ...] | None:
    """Search for a generator ordering with linear quotients.

    Backtracking over placements, memoized on the set of already-placed
    generators: whether a generator may be appended depends only on that set,
    so a placed set that once failed to complete always fails.  Returns a
    passing order, or None when the search space is exhausted.  A None is
    only "no order exists", never "gave up": exceeding the state budget
    raises instead.
    """
    gens = ideal.gens
    if len({g.degree() for g in gens}) > 1:
        degs = sorted({g.degree() for g in gens})
        raise DegreeError(f"generators are not equigenerated: degrees {degs}")
    m = len(gens)
    if m <= 1:
        return tuple(gens)
    masks = [g.mask for g in gens]
    full = (1 << m) - 1
    dead: set[int] = set()
    states_seen = 0

    def may_append(placed: int, cand: int) -> bool:
        singles = 0
        quotients = []
        s = placed
        while s:
            k = (s & -s).bit_length() - 1
            s &= s - 1
            q = masks[k] & ~masks[cand]
            quotients.append(q)
            if q.bit_count() == 1:
                singles |= q
        return all(q & singles for q in quotients)

    def search(placed: int, order: list[int]) -> bool:
        nonlocal states_seen
        if placed == full:
            return True
        if placed in dead:
            return False
        states_seen += 1
        if states_seen > state_budget:
            raise BudgetError(
                f"linear-quotients search exceeded {state_budget} states"
            )
        for cand in range(m):
            if placed >> cand & 1:
                continue
            if may_append(placed, cand):
                order.append(cand)
                if search(placed | 1 << cand, order):
                    return True
                order.pop()
        dead.add(placed)
        return False

    order: list[int] = []
    if search(0, order):
        found = tuple(gens[k] for k in order)
        verdict = check_linear_quotients(found)
        if not verdict.passed:
            raise InternalMismatchError(
                f"search returned an order failing its own check at {verdict.witness}"
            )
        return found
    return None


def gamma_chain(family: RelationFamily, fset) -> tuple[int, ...]:
    """Chain of order ideals generated downward by a set of variables.

    fset is a collection of (level, index) variable pairs.  Working from the
    top: gamma_r = ∅, and gamma_{a-1} is the order ideal of level a-1
    generated by {p_i : (a, i) in fset} together with gamma_a.  Level-1
    variables never contribute.  The result is always a valid nested chain.
    """
    n, r = family.n, family.r
    per_level_gens = [0] * (r + 1)  # per_level_gens[a] = elements from X[a,*]
    for a, i in fset:
        if not 1 <= a <= r:
            raise RangeError(f"variable level {a} out of range 1..{r}")
        if not 1 <= i <= n:
            raise RangeError(f"variable index {i} out of range 1..{n}")
        per_level_gens[a] |= 1 << (i - 1)
    gammas = [0] * r  # gammas[a-1] = gamma_a for a in [r-1], plus scratch
    upper = 0  # gamma_r = ∅
    for a in range(r, 1, -1):
        upper = ideal_closure(family.level(a - 1), per_level_gens[a] | upper)
        gammas[a - 2] = upper
    chain = tuple(gammas[: r - 1])
    return validate_chain(family, chain)


def gamma_certificate(
    family: RelationFamily, fset, a: int, i: int
) -> tuple[int, int] | None:
    """Why p_i landed in gamma_a: a variable (b, j) in fset reaching it.

    Returns (b, j) with a+1 <= b <= r, (b, j) in fset and p_i related to p_j
    through levels a..b-1; None when p_i is not in gamma_a at all.  Raises
    when p_i is in gamma_a but no certificate exists, since the construction
    guarantees one.
    """
    chain = gamma_chain(family, fset)
    if not 1 <= a <= family.r - 1:
        raise RangeError(f"level {a} out of range 1..{family.r - 1}")
    if not chain[a - 1] >> (i - 1) & 1:
        return None
    fvars = sorted(set(fset))
    for b in range(a + 1, family.r + 1):
        comp = composite_relation(family, a, b - 1).rel
        for bb, j in fvars:
            if bb == b and comp.holds(i, j):
                return (b, j)
    raise InternalMismatchError(
        f"p_{i} is in gamma_{a} but no generating variable reaches it"
    )
