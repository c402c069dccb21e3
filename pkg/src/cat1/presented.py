"""Categories given by generators and relations, with bounded normalization.

A morphism is a typed word ``(src, tgt, word)`` where ``word`` lists
generator ids in traversal order (first arrow first); the empty word is an
identity. Relations are oriented by shortlex order into rewrite rules.
When the rule set passes a critical-pair check, normal forms are unique and
every equality question is answered exactly; otherwise equality falls back
to a bounded breadth-first search over both directions of the relations.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional, Sequence

from .errors import BudgetExceeded, UnknownResult
from .fincat import FinCat, IdKey, build_category
from .verdict import DEFAULT_LIMITS, Limits, Verdict


def _shortlex(w: tuple):
    return (len(w), w)


def _orient(rules: dict, x: tuple, y: tuple) -> None:
    if x == y:
        return
    big, small = sorted((x, y), key=_shortlex, reverse=True)
    old = rules.get(big)
    if old == small:
        return
    if old is None or _shortlex(small) < _shortlex(old):
        rules[big] = small
    if old is not None:
        # both right sides equal the left side, so they equal each other
        _orient(rules, old, small)


def _sorted_rules(rules: dict) -> list:
    return sorted(rules.items(), key=lambda kv: _shortlex(kv[0]))


def _normalize(rules: dict, w: tuple, budget: int = 100_000) -> tuple:
    lens = sorted({len(k) for k in rules})
    steps = 0
    changed = True
    while changed:
        changed = False
        for i in range(len(w)):
            for n in lens:
                rhs = rules.get(w[i:i + n])
                if rhs is not None and n:
                    w = w[:i] + rhs + w[i + n:]
                    changed = True
                    break
            if changed:
                break
        steps += 1
        if steps > budget:
            raise BudgetExceeded("rewriting did not terminate within budget", used=steps, limit=budget)
    return w


def _critical_pairs(rules: dict):
    items = list(rules.items())
    for l1, r1 in items:
        for l2, r2 in items:
            # suffix of l1 overlaps prefix of l2
            for k in range(1, min(len(l1), len(l2)) + (0 if l1 == l2 else 1)):
                if l1[-k:] == l2[:k]:
                    yield r1 + l2[k:], l1[:-k] + r2
            # l2 strictly inside l1
            if len(l2) < len(l1):
                for i in range(len(l1) - len(l2) + 1):
                    if l1[i:i + len(l2)] == l2:
                        yield r1, l1[:i] + r2 + l1[i + len(l2):]


def _interreduce(rules: dict) -> dict:
    """Drop rules whose left side is reducible by another rule; normalize right sides."""
    out = {}
    for lhs, rhs in rules.items():
        others = {k: v for k, v in rules.items() if k != lhs}
        if any(len(k) <= len(lhs) and _contains(lhs, k) for k in others):
            _orient(out, _normalize(others, lhs), _normalize(others, rhs))
        else:
            out[lhs] = rhs
    return {k: _normalize(out, v) for k, v in out.items()}


def _contains(w: tuple, sub: tuple) -> bool:
    n = len(sub)
    return any(w[i:i + n] == sub for i in range(len(w) - n + 1))


@dataclass(frozen=True)
class Relation:
    src: int
    tgt: int
    lhs: tuple
    rhs: tuple


@dataclass
class PresentedCategory:
    obj_names: list
    gens: list  # (name, src, tgt)
    relations: list = field(default_factory=list)
    completion_rounds: int = 20
    completion_rules: int = 500

    def add_relation(self, src: int, tgt: int, lhs: Sequence[int], rhs: Sequence[int]) -> None:
        lhs, rhs = tuple(lhs), tuple(rhs)
        if lhs == rhs:
            return
        for w in (lhs, rhs):
            self._check_word(src, tgt, w)
        self.relations.append(Relation(src, tgt, lhs, rhs))
        self.__dict__.pop("_completion", None)

    def _check_word(self, src, tgt, w):
        o = src
        for g in w:
            if self.gens[g][1] != o:
                raise ValueError(f"word {w} is not composable")
            o = self.gens[g][2]
        if o != tgt:
            raise ValueError(f"word {w} does not end at object {tgt}")

    @property
    def n_obj(self) -> int:
        return len(self.obj_names)

    def endpoints(self, src: int, w: tuple) -> int:
        self._check_word(src, self.gens[w[-1]][2] if w else src, w)
        return self.gens[w[-1]][2] if w else src

    # -- rewriting ---------------------------------------------------------
    @cached_property
    def _completion(self) -> tuple:
        """Bounded Knuth-Bendix completion under shortlex.

        Returns ``(rules, complete)``. Every rule is a consequence of the
        relations, so rewriting stays sound even when completion gives up.
        """
        rules = {}
        for r in self.relations:
            _orient(rules, r.lhs, r.rhs)
        for _ in range(self.completion_rounds):
            fresh = []
            for a, b in _critical_pairs(rules):
                na, nb = _normalize(rules, a), _normalize(rules, b)
                if na != nb:
                    fresh.append((na, nb))
            if not fresh:
                return _sorted_rules(rules), True
            for a, b in fresh:
                _orient(rules, _normalize(rules, a), _normalize(rules, b))
            rules = _interreduce(rules)
            if len(rules) > self.completion_rules:
                break
        return _sorted_rules(rules), False

    @property
    def rules(self) -> list:
        return self._completion[0]

    @property
    def confluent(self) -> bool:
        """True when completion produced a confluent system, so normal forms are unique."""
        return self._completion[1]

    def reduce(self, w: Sequence[int], budget: int = 100_000) -> tuple:
        """Rewrite with the oriented rules until irreducible."""
        return _normalize(dict(self.rules), tuple(w), budget)

    def _neighbours(self, w: tuple, src: int, cap: int):
        out = []
        truncated = False
        objs = [src] + [self.gens[g][2] for g in w]
        for r in self.relations:
            for a, b in ((r.lhs, r.rhs), (r.rhs, r.lhs)):
                if not a:
                    # a word equal to an identity may be inserted where it types
                    for i in range(len(w) + 1):
                        if objs[i] != r.src:
                            continue
                        if len(w) + len(b) > cap:
                            truncated = True
                            continue
                        out.append(w[:i] + b + w[i:])
                    continue
                for i in range(len(w) - len(a) + 1):
                    if w[i:i + len(a)] == a:
                        if len(w) - len(a) + len(b) > cap:
                            truncated = True
                            continue
                        out.append(w[:i] + b + w[i + len(a):])
        return out, truncated

    def equal(self, src: int, w1: Sequence[int], w2: Sequence[int],
              limits: Limits = DEFAULT_LIMITS, cap: Optional[int] = None) -> Verdict:
        w1, w2 = tuple(w1), tuple(w2)
        t1, t2 = self.endpoints(src, w1), self.endpoints(src, w2)
        if t1 != t2:
            return Verdict.false({"reason": "different targets"})
        if self.confluent:
            n1, n2 = self.reduce(w1), self.reduce(w2)
            return Verdict.true({"normal_form": n1}) if n1 == n2 else Verdict.false(
                {"normal_forms": (n1, n2)})
        cap = cap or max(len(w1), len(w2), max((max(len(r.lhs), len(r.rhs)) for r in self.relations), default=0)) + 2
        seen = {w1: None}
        queue = deque([w1])
        truncated = False
        while queue:
            w = queue.popleft()
            if w == w2:
                trace = []
                while w is not None:
                    trace.append(w)
                    w = seen[w]
                return Verdict.true({"trace": trace[::-1]})
            nbrs, cut = self._neighbours(w, src, cap)
            truncated |= cut
            for y in nbrs:
                if y not in seen:
                    seen[y] = w
                    if len(seen) > limits.rewrite_nodes:
                        return Verdict.unknown({"explored": len(seen)}, note="rewrite budget exhausted")
                    queue.append(y)
        if not truncated:
            return Verdict.false({"class_size": len(seen)})
        return Verdict.unknown({"explored": len(seen), "length_cap": cap}, note="class truncated by length cap")

    # -- materialization -----------------------------------------------------
    def materialize(self, limits: Limits = DEFAULT_LIMITS) -> "Materialized":
        """Enumerate all morphisms; requires decisive equality throughout."""
        reps = []  # (src, tgt, word)
        index = {}

        def lookup(src, w):
            tgt = self.endpoints(src, w)
            if self.confluent:
                nf = self.reduce(w)
                return index.get((src, nf)), (src, tgt, nf)
            for k, (s, t, r) in enumerate(reps):
                if s == src and t == tgt:
                    v = self.equal(src, r, w, limits)
                    if v.is_unknown:
                        raise UnknownResult(f"cannot decide equality of {r} and {w}: {v.note}")
                    if v.is_true:
                        return k, None
            return None, (src, tgt, w)

        queue = deque()
        for o in range(self.n_obj):
            _, key = lookup(o, ())
            index[(o, key[2])] = len(reps)
            reps.append(key)
            queue.append(len(reps) - 1)
        out_gens = [[g for g, (_, s, _) in enumerate(self.gens) if s == o] for o in range(self.n_obj)]
        while queue:
            k = queue.popleft()
            s, t, w = reps[k]
            for g in out_gens[t]:
                found, key = lookup(s, w + (g,))
                if found is None:
                    index[(key[0], key[2])] = len(reps)
                    reps.append(key)
                    if len(reps) > limits.max_morphisms:
                        raise BudgetExceeded("presented category exceeds the morphism cap",
                                             used=len(reps), limit=limits.max_morphisms)
                    queue.append(len(reps) - 1)
        return Materialized(self, reps, limits)


@dataclass
class Materialized:
    """A presented category made finite: one representative word per morphism."""

    presented: PresentedCategory
    reps: list  # (src, tgt, word); identities first
    limits: Limits = DEFAULT_LIMITS

    def find(self, src: int, w: Sequence[int]) -> int:
        P = self.presented
        w = tuple(w)
        tgt = P.endpoints(src, w)
        if P.confluent:
            nf = P.reduce(w)
            for k, (s, t, r) in enumerate(self.reps):
                if s == src and r == nf:
                    return k
        for k, (s, t, r) in enumerate(self.reps):
            if s == src and t == tgt and P.equal(src, r, w, self.limits).is_true:
                return k
        raise UnknownResult(f"word {w} not matched to a morphism")

    @cached_property
    def category(self) -> FinCat:
        P = self.presented
        n = P.n_obj
        keys = list(range(len(self.reps)))

        def comp(g, f):
            s = self.reps[f][0]
            h = self.find(s, self.reps[f][2] + self.reps[g][2])
            return IdKey(s) if h < n else h

        def name(k):
            w = self.reps[k][2]
            return ".".join(P.gens[g][0] for g in w) if w else f"id_{P.obj_names[self.reps[k][0]]}"

        mors = [(k, self.reps[k][0], self.reps[k][1]) for k in keys[n:]]
        return build_category(list(range(n)), mors, comp, identity_key=IdKey,
                              obj_name=lambda o: P.obj_names[o], mor_name=name)

    def generator_morphism(self, g: int) -> int:
        return self.find(self.presented.gens[g][1], (g,))
