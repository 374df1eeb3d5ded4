"""Languages of units: the automaton, word counts, and the (mu, nu) law.

For s in F_p<x,y> the right action ``s . (i, j) = psi(s)[i, j]`` (a=1, b=0)
moves s through finitely many polynomials.  Taking those polynomials as
states gives a complete DFA over the four letters ``(i, j)`` whose accepted
words are the ones sending s to a unit.

Two notions of "unit" are offered, see :class:`UnitPolicy`.
"""

from __future__ import annotations

import csv
import enum
import io
import json
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Iterable, Iterator, Optional

from .arith.fields import GF2, Field, FieldMismatchError, PrimeField
from .freealg import NcPolynomial, format_poly, subst_xy_yx, swap_xy
from .selfsim import LETTERS, Letter, act, format_letter, psi

DEFAULT_MAX_STATES = 200_000
BRUTE_FORCE_MAX_K = 10


class UnitPolicy(str, enum.Enum):
    """Which automaton states accept.

    ``SCALAR``: the nonzero scalars, i.e. the units of a free algebra.
    ``RECURSIVE``: the greatest set U of nonzero states such that each
    member is a nonzero scalar or has a psi-image with one nonzero entry per
    row and column, all of them in U.  This also accepts x and y.
    """

    SCALAR = "scalar"
    RECURSIVE = "recursive"


class StateBudgetError(RuntimeError):
    pass


class ClosureError(RuntimeError):
    """The action does not reach the base set within the depth cap, or the
    reachable graph has a cycle outside it."""


class DepthCapError(ClosureError):
    """The depth cap ran out before the base set was reached."""


# ---------- automaton

@dataclass
class UnitAutomaton:
    field: Field
    policy: UnitPolicy
    states: list[NcPolynomial]
    depth: list[int]
    delta: list[tuple[int, int, int, int]]  # successor ids in LETTERS order
    accepting: frozenset[int]

    initial = 0

    def __post_init__(self):
        self.index = {p: i for i, p in enumerate(self.states)}

    def __len__(self):
        return len(self.states)

    def state_id(self, p: NcPolynomial) -> int:
        return self.index[p]

    def step(self, state: int, letter: Letter) -> int:
        return self.delta[state][LETTERS.index(letter)]

    def run(self, letters: Iterable[Letter], start: int = 0) -> int:
        q = start
        for letter in letters:
            q = self.step(q, letter)
        return q

    def accepts(self, letters: Iterable[Letter]) -> bool:
        return self.run(letters) in self.accepting

    def transfer_matrix(self) -> list[list[int]]:
        """Entry (u, v) counts the letters leading from state u to v."""
        n = len(self.states)
        t = [[0] * n for _ in range(n)]
        for u, succ in enumerate(self.delta):
            for v in succ:
                t[u][v] += 1
        return t

    def count_vector(self, k: int) -> list[int]:
        """Accepted words of length k from every state."""
        vec = [1 if q in self.accepting else 0 for q in range(len(self.states))]
        for _ in range(k):
            vec = [sum(vec[v] for v in succ) for succ in self.delta]
        return vec

    def count_series(self, kmax: int) -> list[int]:
        """Counts from the initial state for k = 0..kmax."""
        out = []
        vec = [1 if q in self.accepting else 0 for q in range(len(self.states))]
        for k in range(kmax + 1):
            out.append(vec[0])
            if k < kmax:
                vec = [sum(vec[v] for v in succ) for succ in self.delta]
        return out

    # exports
    def to_json_dict(self) -> dict:
        return {
            "field": self.field.characteristic,
            "initial": format_poly(self.states[0]),
            "policy": self.policy.value,
            "states": [{"id": i, "poly": format_poly(p), "accepting": i in self.accepting}
                       for i, p in enumerate(self.states)],
            "transitions": [{"from": u, "letter": list(letter), "to": v}
                            for u, succ in enumerate(self.delta)
                            for letter, v in zip(LETTERS, succ)],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2) + "\n"

    def to_dot(self) -> str:
        lines = ["digraph units {", "  rankdir=LR;"]
        for i, p in enumerate(self.states):
            shape = "doublecircle" if i in self.accepting else "circle"
            extra = ", penwidth=2" if i == 0 else ""
            label = format_poly(p).replace('"', '\\"')
            lines.append(f'  q{i} [label="{label}", shape={shape}{extra}];')
        for u, succ in enumerate(self.delta):
            for letter, v in zip(LETTERS, succ):
                lines.append(f'  q{u} -> q{v} [label="{format_letter(letter)}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def _require_prime_field(s: NcPolynomial):
    if not isinstance(s.field, PrimeField):
        raise FieldMismatchError("the unit automaton needs prime-field coefficients")


def build_automaton(s: NcPolynomial, policy: UnitPolicy = UnitPolicy.SCALAR,
                    max_states: int = DEFAULT_MAX_STATES) -> UnitAutomaton:
    """Breadth-first closure of ``{s}`` under the four letters.

    States are numbered by BFS depth, then by canonical text within a
    layer, so exports are reproducible.
    """
    _require_prime_field(s)
    if max_states < 1:
        raise ValueError("max_states must be >= 1")
    policy = UnitPolicy(policy)
    states = [s]
    depth = [0]
    index = {s: 0}
    succ_polys: list[tuple[NcPolynomial, ...]] = []
    layer = [s]
    d = 0
    while layer:
        fresh: dict[NcPolynomial, str] = {}
        for q in layer:
            m = psi(q)
            nxt = tuple(m[l] for l in LETTERS)
            succ_polys.append(nxt)
            for t in nxt:
                if t not in index and t not in fresh:
                    fresh[t] = format_poly(t)
        d += 1
        layer = sorted(fresh, key=lambda t: fresh[t])
        for t in layer:
            index[t] = len(states)
            states.append(t)
            depth.append(d)
        if len(states) > max_states:
            raise StateBudgetError(f"more than {max_states} states reachable from {format_poly(s)}")
    delta = [tuple(index[t] for t in nxt) for nxt in succ_polys]
    accepting = unit_set(states, policy)
    return UnitAutomaton(s.field, policy, states, depth, delta,
                         frozenset(index[t] for t in accepting))


def unit_set(states: Iterable[NcPolynomial], policy: UnitPolicy) -> set[NcPolynomial]:
    """The accepting subset of ``states`` under ``policy``."""
    states = list(states)
    policy = UnitPolicy(policy)
    if policy is UnitPolicy.SCALAR:
        return {q for q in states if q and q.is_scalar()}
    units = {q for q in states if q}
    images = {q: psi(q) for q in units if not q.is_scalar()}
    changed = True
    while changed:
        changed = False
        for q in list(units):
            if q.is_scalar():
                continue
            m = images[q]
            if not (m.is_monomial_pattern() and all(m[p] in units for p in m.nonzero_positions())):
                units.discard(q)
                changed = True
    return units


def count_words(aut: UnitAutomaton, k: int) -> int:
    """Number of accepted words of length k."""
    if k < 0:
        raise ValueError("k must be non-negative")
    return aut.count_vector(k)[0]


# ---------- brute-force oracle

def _closure(t: NcPolynomial) -> set[NcPolynomial]:
    seen = {t}
    stack = [t]
    while stack:
        q = stack.pop()
        for letter in LETTERS:
            r = act(q, letter)
            if r not in seen:
                seen.add(r)
                stack.append(r)
    return seen


class _UnitOracle:
    def __init__(self, policy: UnitPolicy):
        self.policy = UnitPolicy(policy)
        self.cache: dict[NcPolynomial, bool] = {}

    def __call__(self, t: NcPolynomial) -> bool:
        if not t:
            return False
        if self.policy is UnitPolicy.SCALAR:
            return t.is_scalar()
        hit = self.cache.get(t)
        if hit is None:
            # the fixpoint only looks forward, so t's own closure decides it
            units = unit_set(_closure(t), self.policy)
            for q in units:
                self.cache[q] = True
            hit = self.cache.setdefault(t, t in units)
        return hit


def accepted_words(s: NcPolynomial, policy: UnitPolicy, k: int) -> Iterator[tuple[Letter, ...]]:
    """Every length-k word sending s to a unit, by direct enumeration."""
    is_unit = _UnitOracle(policy)
    path: list[Letter] = []

    def walk(t: NcPolynomial, depth: int):
        if depth == k:
            if is_unit(t):
                yield tuple(path)
            return
        for letter in LETTERS:
            path.append(letter)
            yield from walk(act(t, letter), depth + 1)
            path.pop()

    yield from walk(s, 0)


def brute_force_count(s: NcPolynomial, policy: UnitPolicy, k: int,
                      max_k: int = BRUTE_FORCE_MAX_K) -> int:
    """Count by enumerating all 4^k letter words and applying the action.

    Prefixes are shared (the action is a right action) and the subtree
    under 0 is skipped, since 0 is fixed by every letter and never a unit.
    """
    if k > max_k:
        raise ValueError(f"brute force limited to k <= {max_k}")
    is_unit = _UnitOracle(policy)

    def walk(t: NcPolynomial, depth: int) -> int:
        if not t:
            return 0
        if depth == k:
            return 1 if is_unit(t) else 0
        m = psi(t)
        return sum(walk(m[l], depth + 1) for l in LETTERS)

    return walk(s, 0)


# ---------- asymptotic count law

# (mu, nu, k from which count(k) = 2^k mu - 2 nu holds) on the base set
BASE_VALUES = {
    UnitPolicy.SCALAR: {
        "zero": (Fraction(0), Fraction(0), 0),
        "scalar": (Fraction(1), Fraction(0), 0),
        "gx": (Fraction(1), Fraction(1), 1),
        "gy": (Fraction(1), Fraction(0), 1),
    },
    UnitPolicy.RECURSIVE: {
        "zero": (Fraction(0), Fraction(0), 0),
        "scalar": (Fraction(1), Fraction(0), 0),
        "gx": (Fraction(1), Fraction(0), 0),
        "gy": (Fraction(1), Fraction(0), 0),
    },
}


def base_kind(t: NcPolynomial) -> Optional[str]:
    """Classify t in {0} u {c} u {c x} u {c y} (c a nonzero scalar)."""
    if not t:
        return "zero"
    if len(t.terms) != 1:
        return None
    (w,) = t.terms
    return {"": "scalar", "x": "gx", "y": "gy"}.get(w)


def base_set(field: Field) -> list[NcPolynomial]:
    if not isinstance(field, PrimeField):
        raise FieldMismatchError("base set is defined over prime fields")
    out = [NcPolynomial.zero(field)]
    for w in ("", "x", "y"):
        out.extend(NcPolynomial.monomial(w, c, field) for c in range(1, field.p))
    return out


@dataclass
class CountModel:
    mu: Fraction
    nu: Fraction
    k_s: int
    closure_depth: int
    proven_from: int
    policy: UnitPolicy
    n_states: int
    validated: list[tuple[int, int, Fraction]] = dc_field(default_factory=list)

    @property
    def nu_integral(self) -> bool:
        return self.nu.denominator == 1 and self.nu >= 0

    @property
    def experimental(self) -> bool:
        return self.policy is not UnitPolicy.SCALAR

    @property
    def law_holds(self) -> bool:
        return all(c == p for _, c, p in self.validated)

    def predicted(self, k: int) -> Fraction:
        return 2 ** k * self.mu - 2 * self.nu

    def to_dict(self) -> dict:
        return {
            "mu": str(self.mu),
            "nu": str(self.nu),
            "k_s": self.k_s,
            "closure_depth": self.closure_depth,
            "proven_from": self.proven_from,
            "policy": self.policy.value,
            "states": self.n_states,
            "nu_integral": self.nu_integral,
            "experimental": self.experimental,
            "law_holds": self.law_holds,
        }


def default_depth_cap(s: NcPolynomial) -> int:
    d = s.degree()
    return 4 * ((0 if d == float("-inf") else d) + 1)


def compute_mu_nu(s: NcPolynomial, policy: UnitPolicy = UnitPolicy.SCALAR, *,
                  depth_cap: Optional[int] = None, max_states: int = DEFAULT_MAX_STATES,
                  span: int = 8, aut: Optional[UnitAutomaton] = None) -> CountModel:
    """Solve for mu(s), nu(s) with ``#accepted(k) = 2^k mu - 2 nu``.

    Values on the base set come from :data:`BASE_VALUES`; elsewhere they
    propagate backwards through ``mu(t) = sum mu(t.l) / 2`` and
    ``nu(t) = sum nu(t.l)`` over the four letters.  ``k_s`` is the least k
    from which the law holds: the propagation proves it from
    ``proven_from`` on, and the counts below that are checked directly.
    The law is then checked against the automaton counts on
    ``k_s..k_s+span``.
    """
    policy = UnitPolicy(policy)
    if aut is None:
        aut = build_automaton(s, policy, max_states)
    elif aut.policy is not policy or aut.states[0] != s:
        raise ValueError("automaton does not match s and policy")
    cap = default_depth_cap(s) if depth_cap is None else depth_cap
    base = BASE_VALUES[policy]
    kinds = [base_kind(q) for q in aut.states]

    layer = {0}
    closure_depth = 0
    while any(kinds[q] is None for q in layer):
        if closure_depth >= cap:
            raise DepthCapError(
                f"descendants of {format_poly(s)} not in the base set after {cap} letters")
        layer = {v for q in layer for v in aut.delta[q]}
        closure_depth += 1

    values: dict[int, tuple[Fraction, Fraction, int]] = {}
    on_stack: set[int] = set()

    def solve(root: int):
        # iterative post-order so deep chains do not hit the recursion limit
        stack = [(root, False)]
        while stack:
            q, done = stack.pop()
            if q in values:
                continue
            kind = kinds[q]
            if kind is not None:
                values[q] = base[kind]
                continue
            if done:
                on_stack.discard(q)
                kids = [values[v] for v in aut.delta[q]]
                values[q] = (sum((m for m, _, _ in kids), Fraction(0)) / 2,
                             sum((n for _, n, _ in kids), Fraction(0)),
                             1 + max(t for _, _, t in kids))
                continue
            if q in on_stack:
                raise ClosureError(f"cycle through {format_poly(aut.states[q])} outside the base set")
            on_stack.add(q)
            stack.append((q, True))
            for v in aut.delta[q]:
                if v not in values:
                    if v in on_stack:
                        raise ClosureError(
                            f"cycle through {format_poly(aut.states[v])} outside the base set")
                    stack.append((v, False))

    solve(0)
    mu, nu, proven = values[0]
    counts = aut.count_series(proven + span)
    k_s = proven
    while k_s > 0 and counts[k_s - 1] == 2 ** (k_s - 1) * mu - 2 * nu:
        k_s -= 1
    validated = [(k, counts[k], 2 ** k * mu - 2 * nu) for k in range(k_s, k_s + span + 1)]
    return CountModel(mu, nu, k_s, closure_depth, proven, policy, len(aut), validated)


def count_table_csv(model: CountModel, counts: Iterable[tuple[int, int]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["k", "count", "law", "match"])
    for k, c in counts:
        pred = model.predicted(k)
        law = pred.numerator if pred.denominator == 1 else str(pred)
        w.writerow([k, c, law, int(k >= model.k_s and c == pred)])
    return buf.getvalue()


# ---------- density construction

def sigma(r: NcPolynomial, s: NcPolynomial) -> NcPolynomial:
    """``(r + y s)`` followed by the substitution ``x -> xy, y -> yx``."""
    if r.field != s.field:
        raise FieldMismatchError(f"{r.field} vs {s.field}")
    y = NcPolynomial.gen("y", r.field)
    return subst_xy_yx(r + y * s)


def omega_base(k: int, field: Field = GF2, swapped: bool = False) -> NcPolynomial:
    """``1 - (xy)^(2^k)`` (or ``1 - (yx)^(2^k)``), whose mu is ``2^(1-k)``."""
    if k < 0:
        raise ValueError("k must be non-negative")
    w = ("yx" if swapped else "xy") * (1 << k)
    return NcPolynomial({"": 1, w: -1}, field)


def dyadic_exponents(alpha: Fraction) -> list[int]:
    """Write alpha as a sum of terms ``2^(1-k)``, k >= 0, largest first.

    Whole multiples of 2 repeat the k = 0 term; the remainder below 2 uses
    distinct terms from its binary expansion.
    """
    alpha = Fraction(alpha)
    if alpha < 0:
        raise ValueError("alpha must be non-negative")
    den = alpha.denominator
    if den & (den - 1):
        raise ValueError(f"alpha = {alpha} is not dyadic")
    twos, rest = divmod(alpha, 2)
    ks = [0] * int(twos)
    # rest < 2 has numerator n over 2^e; bit i of n (from the top) is term 2^(1-k)
    e = den.bit_length() - 1
    n = rest * den
    assert n.denominator == 1
    n = int(n)
    for k in range(0, e + 2):
        weight = 1 << (e + 1 - k)  # 2^(1-k) * 2^e
        if n >= weight:
            ks.append(k)
            n -= weight
    assert n == 0
    return ks


def omega_construct(alpha, field: Field = GF2) -> NcPolynomial:
    """An s with ``mu(s) == alpha`` for a dyadic alpha >= 0, folded with sigma
    from the elements ``1 - (xy)^(2^k)``."""
    ks = dyadic_exponents(Fraction(alpha))
    if not ks:
        return NcPolynomial.zero(field)
    acc = omega_base(ks[0], field)
    for k in ks[1:]:
        acc = sigma(acc, omega_base(k, field))
    return acc


def omega_level(n: int, ks: Iterable[int] = (0, 1), field: Field = GF2) -> list[NcPolynomial]:
    """The members of level n generated from ``1 - (xy)^(2^k)``,
    ``1 - (yx)^(2^k)`` for k in ``ks`` together with 0."""
    ks = list(ks)
    level = [NcPolynomial.zero(field)]
    for k in ks:
        level += [omega_base(k, field), omega_base(k, field, swapped=True)]
    for _ in range(n):
        nxt: dict[NcPolynomial, None] = {}
        for r in level:
            for s in level:
                t = sigma(r, s)
                nxt[t] = None
                nxt[swap_xy(t)] = None
        level = list(nxt)
    return level
