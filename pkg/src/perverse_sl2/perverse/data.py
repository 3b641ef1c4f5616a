"""Perversity data: filtrations or posets of simple labels with shift functions.

A profile records, for each source simple ``S``, the composition factors of
every homology group of its image.  The validators compare a profile with
filtered or poset data; the algebra (compose, reverse, refine) acts on the
data alone.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from graphlib import CycleError, TopologicalSorter
from typing import Hashable, Mapping

from ..report import FAIL, PASS, Report


class PerverseError(ValueError):
    pass


def _key(x):
    return (type(x).__name__, repr(x))


def _sorted(xs) -> list:
    return sorted(xs, key=_key)


def _fmt_set(xs) -> str:
    return "{" + ",".join(str(x) for x in _sorted(xs)) + "}"


@dataclass
class HomologyProfile:
    """label -> degree -> Counter of composition-factor labels."""
    data: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for S, degs in self.data.items():
            clean[S] = {int(m): Counter({x: n for x, n in Counter(c).items() if n})
                        for m, c in degs.items() if sum(Counter(c).values())}
        self.data = clean

    @property
    def labels(self) -> list:
        return _sorted(self.data)

    def degrees(self, S) -> list[int]:
        return sorted(self.data[S])

    def factors(self, S, m: int) -> Counter:
        return Counter(self.data.get(S, {}).get(m, {}))

    def total(self, S) -> Counter:
        out = Counter()
        for c in self.data[S].values():
            out.update(c)
        return out

    @classmethod
    def identity(cls, labels) -> "HomologyProfile":
        return cls({S: {0: Counter([S])} for S in labels})


def _check_beta(labels: frozenset, beta: dict) -> dict:
    beta = {S: beta.get(S, S) for S in labels}
    if len(set(beta.values())) != len(beta):
        raise PerverseError("beta is not injective")
    return beta


@dataclass
class FilteredPerverseData:
    """Ascending chain S_0 < ... < S_n = labels with shifts pi[i] and bijection beta."""
    labels: frozenset
    filtration: tuple
    pi: tuple
    beta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.labels = frozenset(self.labels)
        self.filtration = tuple(frozenset(s) for s in self.filtration)
        self.pi = tuple(int(x) for x in self.pi)
        if not self.filtration:
            raise PerverseError("empty filtration")
        prev = frozenset()
        for s in self.filtration:
            if not prev < s:
                raise PerverseError("filtration is not strictly ascending")
            prev = s
        if prev != self.labels:
            raise PerverseError("last filtrate must be the full label set")
        if len(self.pi) != len(self.filtration):
            raise PerverseError("pi must be defined on every filtrate index")
        self.beta = _check_beta(self.labels, dict(self.beta))

    @property
    def n(self) -> int:
        return len(self.filtration) - 1

    def index(self, S) -> int:
        for i, s in enumerate(self.filtration):
            if S in s:
                return i
        raise PerverseError(f"unknown label {S!r}")

    def lower(self, i: int) -> frozenset:
        return self.filtration[i - 1] if i > 0 else frozenset()

    def targets(self) -> frozenset:
        return frozenset(self.beta.values())

    def target_filtration(self) -> tuple:
        return tuple(frozenset(self.beta[x] for x in s) for s in self.filtration)

    def target_lower(self, i: int) -> frozenset:
        return frozenset(self.beta[x] for x in self.lower(i))

    def describe(self) -> str:
        chain = " < ".join(_fmt_set(s) for s in self.filtration)
        return f"{chain}, pi={self.pi}"


@dataclass
class PosetPerverseData:
    """Strict partial order given by edges (T, S) meaning T < S."""
    labels: frozenset
    order: frozenset
    pi: dict
    beta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.labels = frozenset(self.labels)
        self.order = frozenset((a, b) for a, b in self.order)
        for a, b in self.order:
            if a not in self.labels or b not in self.labels:
                raise PerverseError(f"edge {(a, b)!r} leaves the label set")
        self.pi = {S: int(self.pi[S]) for S in self.labels}
        self.beta = _check_beta(self.labels, dict(self.beta))
        topological_order(self.labels, self.order)

    def closure(self) -> frozenset:
        return transitive_closure(self.labels, self.order)

    def below(self, S) -> frozenset:
        return frozenset(a for a, b in self.closure() if b == S)


def topological_order(labels, edges) -> list:
    """A linear extension (ties broken by label order); raises on a cycle."""
    ts = TopologicalSorter({S: set() for S in labels})
    for a, b in edges:
        ts.add(b, a)
    try:
        ts.prepare()
    except CycleError as e:
        raise PerverseError(f"order has a cycle: {e.args[1]}") from None
    out = []
    while ts.is_active():
        ready = _sorted(ts.get_ready())
        out.extend(ready)
        ts.done(*ready)
    return out


def transitive_closure(labels, edges) -> frozenset:
    succ = {S: set() for S in labels}
    for a, b in edges:
        succ[a].add(b)
    out = set()
    for a in labels:
        stack, seen = list(succ[a]), set()
        while stack:
            b = stack.pop()
            if b in seen:
                continue
            seen.add(b)
            stack.extend(succ[b])
        out.update((a, b) for b in seen)
    return frozenset(out)


def transitive_reduction(labels, edges) -> frozenset:
    closed = transitive_closure(labels, edges)
    keep = set()
    for a, b in closed:
        if not any((a, c) in closed and (c, b) in closed for c in labels if c not in (a, b)):
            keep.add((a, b))
    return frozenset(keep)


# ---------------------------------------------------------------- validators

def _require_complete(profile: HomologyProfile, labels) -> None:
    missing = [S for S in labels if S not in profile.data]
    if missing:
        raise PerverseError(f"profile has no entry for {_fmt_set(missing)}")


def _check_label(rep: Report, profile: HomologyProfile, S, target, shift: int, lower: frozenset) -> None:
    bad_deg = {m: c for m, c in profile.data[S].items()
               if m != -shift and any(x not in lower for x in c)}
    rep.expect(f"{S}: off-degree factors lower", not bad_deg,
               "" if not bad_deg else f"degrees {sorted(bad_deg)} carry factors outside {_fmt_set(lower)}")
    rest = Counter({x: n for x, n in profile.factors(S, -shift).items() if x not in lower})
    ok = rest == Counter([target])
    rep.expect(f"{S}: degree {-shift} head", ok,
               "" if ok else f"non-lower factors {dict(rest)} instead of one {target}")


def validate_filtered(profile: HomologyProfile, data: FilteredPerverseData) -> Report:
    """Compare each image with the filtrate conditions (multiset form).

    Given exactly one non-lower factor in degree -pi(i), the sandwich
    L1 < L2 always exists at module level: take L1 largest with lower
    factors, then L2/L1 is the socle of H/L1.  So the multiset test is
    exact, not only necessary.
    """
    _require_complete(profile, data.labels)
    rep = Report(f"filtered perversity ({data.describe()})")
    for S in _sorted(data.labels):
        i = data.index(S)
        _check_label(rep, profile, S, data.beta[S], data.pi[i], data.target_lower(i))
    return rep


def validate_poset(profile: HomologyProfile, data: PosetPerverseData) -> Report:
    _require_complete(profile, data.labels)
    rep = Report("poset perversity")
    closed = data.closure()
    for S in _sorted(data.labels):
        lower = frozenset(data.beta[a] for a, b in closed if b == S)
        _check_label(rep, profile, S, data.beta[S], data.pi[S], lower)
    return rep


# ----------------------------------------------------------------- algebra

def identity_data(labels, filtration) -> FilteredPerverseData:
    filtration = tuple(filtration)
    return FilteredPerverseData(labels, filtration, (0,) * len(filtration))


def compose(d1, d2):
    """Data of the composite: first d1, then d2 (on the targets of d1)."""
    if isinstance(d1, FilteredPerverseData) and isinstance(d2, FilteredPerverseData):
        if d2.labels != d1.targets() or d2.filtration != d1.target_filtration():
            raise PerverseError("second filtration is not the image of the first")
        beta = {S: d2.beta[d1.beta[S]] for S in d1.labels}
        pi = tuple(a + b for a, b in zip(d1.pi, d2.pi))
        return FilteredPerverseData(d1.labels, d1.filtration, pi, beta)
    if isinstance(d1, PosetPerverseData) and isinstance(d2, PosetPerverseData):
        moved = frozenset((d1.beta[a], d1.beta[b]) for a, b in d1.closure())
        if d2.labels != frozenset(d1.beta.values()):
            raise PerverseError("label sets do not match")
        if d2.closure() != moved:
            raise PerverseError("second order is not the image of the first")
        beta = {S: d2.beta[d1.beta[S]] for S in d1.labels}
        pi = {S: d1.pi[S] + d2.pi[d1.beta[S]] for S in d1.labels}
        return PosetPerverseData(d1.labels, d1.order, pi, beta)
    raise PerverseError("cannot compose filtered and poset data")


def reverse(d):
    inv = {v: k for k, v in d.beta.items()}
    if isinstance(d, FilteredPerverseData):
        return FilteredPerverseData(d.targets(), d.target_filtration(), tuple(-x for x in d.pi), inv)
    order = frozenset((d.beta[a], d.beta[b]) for a, b in d.order)
    return PosetPerverseData(frozenset(inv), order, {d.beta[S]: -p for S, p in d.pi.items()}, inv)


def refine_filtration(d: FilteredPerverseData, finer_chain, f=None) -> FilteredPerverseData:
    """Pass to a finer chain containing every old filtrate; pi becomes pi o f."""
    finer = tuple(frozenset(s) for s in finer_chain)
    missing = [s for s in d.filtration if s not in finer]
    if missing:
        raise PerverseError(f"finer chain omits the filtrate {_fmt_set(missing[0])}")
    derived = tuple(min(i for i, s in enumerate(d.filtration) if t <= s) for t in finer)
    if f is not None and tuple(f) != derived:
        raise PerverseError(f"collapse map {tuple(f)} does not match the chains ({derived})")
    return FilteredPerverseData(d.labels, finer, tuple(d.pi[i] for i in derived), d.beta)


def refine_order(d: PosetPerverseData, finer_order) -> PosetPerverseData:
    new = PosetPerverseData(d.labels, finer_order, d.pi, d.beta)
    if not d.closure() <= new.closure():
        raise PerverseError("the new order does not refine the old one")
    return new


def to_poset(d: FilteredPerverseData) -> PosetPerverseData:
    order = {(a, b) for a in d.labels for b in d.labels if d.index(a) < d.index(b)}
    return PosetPerverseData(d.labels, transitive_reduction(d.labels, order),
                             {S: d.pi[d.index(S)] for S in d.labels}, d.beta)


def linear_filtration(d: PosetPerverseData, total=None) -> FilteredPerverseData:
    """Filtered data along a linear extension of the order (one label per step)."""
    total = list(total) if total is not None else topological_order(d.labels, d.order)
    pos = {S: k for k, S in enumerate(total)}
    if set(total) != set(d.labels) or len(total) != len(d.labels):
        raise PerverseError("total order must list every label once")
    if any(pos[a] > pos[b] for a, b in d.order):
        raise PerverseError("total order is not compatible with the poset")
    chain = [frozenset(total[:k + 1]) for k in range(len(total))]
    return FilteredPerverseData(d.labels, chain, [d.pi[S] for S in total], d.beta)


def coarsest_poset(profile: HomologyProfile, pi: Mapping[Hashable, int], beta=None) -> PosetPerverseData:
    """The smallest order for which the profile is perverse with shifts pi."""
    labels = frozenset(profile.data)
    beta = _check_beta(labels, dict(beta or {}))
    inv = {v: k for k, v in beta.items()}
    edges = set()
    for S in labels:
        degs = {m: Counter(c) for m, c in profile.data[S].items()}
        head = degs.get(-pi[S], Counter())
        if not head[beta[S]]:
            raise PerverseError(f"{S}: no copy of {beta[S]} in degree {-pi[S]}")
        head[beta[S]] -= 1
        for c in degs.values():
            for x, n in c.items():
                if n <= 0:
                    continue
                T = inv.get(x)
                if T is None:
                    raise PerverseError(f"factor {x!r} is not a target label")
                if T == S:
                    raise PerverseError(f"{S} occurs twice in its own image: no order exists")
                edges.add((T, S))
    topological_order(labels, edges)
    return PosetPerverseData(labels, transitive_reduction(labels, edges), dict(pi), beta)
