"""Reduction systems on the free algebra and their ambiguities.

A system is a priority-ordered list of concrete rules ``W -> f`` plus
parametric families whose patterns are ``prefix letter^k suffix``.  Family
occurrences are found by content, so normalization needs no bound on k; the
bound only matters when ambiguities are enumerated.

Termination is witnessed by the metric (degree, inversion count), compared
lexicographically, where inversions are counted with the alphabet's letter
ranks.  Every rule is checked against it at construction.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .coeffs import ONE, RatFunc
from .freealg import Alphabet, NCPoly, Word, add_term

DEFAULT_STEP_BUDGET = 10**7
STRATEGIES = ("leftmost", "rightmost")


class StepBudgetExceeded(RuntimeError):
    """Normalization ran past its step budget; the termination metric is broken."""


class MetricViolation(AssertionError):
    pass


def inversions(w: Word, alphabet: Alphabet) -> int:
    rank = alphabet.rank
    seen = [0] * len(alphabet.letters)
    count = 0
    # count pairs i < j with rank(w[i]) > rank(w[j])
    for ch in w:
        r = rank[ch]
        count += sum(seen[r + 1 :])
        seen[r] += 1
    return count


def metric(w: Word, alphabet: Alphabet) -> tuple[int, int]:
    return (len(w), inversions(w, alphabet))


def strictly_smaller(u: Word, w: Word, alphabet: Alphabet) -> bool:
    """True if replacing ``w`` by ``u`` inside any context lowers the metric.

    Equal-length replacements must permute the same letters, otherwise the
    inversions against the context could grow.
    """
    if len(u) != len(w):
        return len(u) < len(w)
    return sorted(u) == sorted(w) and inversions(u, alphabet) < inversions(w, alphabet)


@dataclass(frozen=True)
class ReductionRule:
    name: str
    pattern: Word
    replacement: NCPoly
    family: str | None = None
    k: int | None = None

    def __post_init__(self):
        if not self.pattern:
            raise ValueError(f"rule {self.name}: empty pattern")
        self.replacement.alphabet.check_word(self.pattern)
        for w in self.replacement.terms:
            if self.pattern in w:
                raise ValueError(f"rule {self.name}: replacement contains its own pattern")

    def __str__(self):
        return self.name


@dataclass
class RuleFamily:
    """Rules ``prefix letter^k suffix -> make(k)`` for every ``k >= 1``."""

    name: str
    prefix: Word
    letter: str
    suffix: Word
    make: Callable[[int], NCPoly]
    _instances: dict[int, ReductionRule] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.regex = re.compile(
            re.escape(self.prefix) + f"({re.escape(self.letter)}+)" + re.escape(self.suffix)
        )

    def pattern(self, k: int) -> Word:
        return self.prefix + self.letter * k + self.suffix

    def instance(self, k: int) -> ReductionRule:
        if k < 1:
            raise ValueError("family parameter must be positive")
        rule = self._instances.get(k)
        if rule is None:
            rule = ReductionRule(f"{self.name}_{k}", self.pattern(k), self.make(k), self.name, k)
            self._instances[k] = rule
        return rule

    def matches(self, w: Word) -> list[tuple[int, int]]:
        """All (position, k) occurrences in ``w``."""
        out = []
        for m in self.regex.finditer(w):
            out.append((m.start(), len(m.group(1))))
        return out


@dataclass(frozen=True)
class Ambiguity:
    kind: str  # "overlap" or "inclusion"
    first: ReductionRule
    second: ReductionRule
    w1: Word
    w2: Word
    w3: Word

    @property
    def k(self) -> int | None:
        ks = [r.k for r in (self.first, self.second) if r.k is not None]
        return ks[0] if len(ks) == 1 else (tuple(ks) if ks else None)

    @property
    def word(self) -> Word:
        if self.kind == "overlap":
            return self.w1 + self.w2 + self.w3
        return self.second.pattern

    def label(self) -> str:
        from .freealg import render_word

        parts = ", ".join(render_word(w) for w in (self.w1, self.w2, self.w3))
        return f"({self.first.name}, {self.second.name}, {parts})"

    __str__ = label


@dataclass
class ResolvabilityReport:
    ambiguity: Ambiguity
    left: NCPoly
    right: NCPoly
    left_trace: list[str] = field(default_factory=list)
    right_trace: list[str] = field(default_factory=list)

    @property
    def resolved(self) -> bool:
        return self.left == self.right


class ReductionSystem:
    """Priority-ordered concrete rules plus rule families.

    Normal forms of single words are memoized per strategy; the system is
    otherwise immutable.
    """

    def __init__(
        self,
        alphabet: Alphabet,
        rules: Sequence[ReductionRule],
        families: Sequence[RuleFamily] = (),
        *,
        name: str = "",
        metric_check_k: int = 8,
    ):
        self.alphabet = alphabet
        self.rules = tuple(rules)
        self.families = tuple(families)
        self.name = name
        for rule in self.rules:
            self._check_rule(rule)
        for fam in self.families:
            for k in range(1, metric_check_k + 1):
                self._check_rule(fam.instance(k))
        self._cache: dict[str, dict[Word, dict[Word, RatFunc]]] = {s: {} for s in STRATEGIES}

    def _check_rule(self, rule: ReductionRule) -> None:
        if rule.replacement.alphabet != self.alphabet:
            raise ValueError(f"rule {rule.name} is over a different alphabet")
        for u in rule.replacement.terms:
            if not strictly_smaller(u, rule.pattern, self.alphabet):
                raise MetricViolation(
                    f"rule {rule.name}: {u!r} does not decrease (degree, inversions) from {rule.pattern!r}"
                )

    def rule(self, name: str) -> ReductionRule:
        for r in self.rules:
            if r.name == name:
                return r
        for fam in self.families:
            if name.startswith(fam.name + "_"):
                return fam.instance(int(name[len(fam.name) + 1 :]))
        raise KeyError(name)

    def clear_cache(self) -> None:
        for c in self._cache.values():
            c.clear()

    # matching

    def find_redex(self, w: Word, strategy: str = "leftmost") -> tuple[ReductionRule, int] | None:
        """Highest-priority rule occurring in ``w`` and the chosen occurrence."""
        rightmost = strategy == "rightmost"
        for rule in self.rules:
            pos = w.rfind(rule.pattern) if rightmost else w.find(rule.pattern)
            if pos >= 0:
                return rule, pos
        for fam in self.families:
            hits = fam.matches(w)
            if hits:
                k = min(k for _, k in hits)
                positions = [p for p, kk in hits if kk == k]
                pos = positions[-1] if rightmost else positions[0]
                return fam.instance(k), pos
        return None

    def is_irreducible(self, w: Word) -> bool:
        return self.find_redex(w) is None

    # normalization

    def _expand(self, w: Word, rule: ReductionRule, pos: int) -> list[tuple[RatFunc, Word]]:
        left, right = w[:pos], w[pos + len(rule.pattern) :]
        return [(c, left + u + right) for u, c in rule.replacement.terms.items()]

    def word_normal_form(
        self,
        w: Word,
        strategy: str = "leftmost",
        *,
        check_metric: bool = False,
        budget: int = DEFAULT_STEP_BUDGET,
    ) -> dict[Word, RatFunc]:
        if strategy not in STRATEGIES:
            raise ValueError(f"unknown strategy {strategy!r}")
        cache = self._cache[strategy]
        hit = cache.get(w)
        if hit is not None:
            return hit
        steps = 0
        pending: dict[Word, list[tuple[RatFunc, Word]]] = {}
        stack = [w]
        while stack:
            u = stack[-1]
            if u in cache:
                stack.pop()
                continue
            expansion = pending.get(u)
            if expansion is None:
                redex = self.find_redex(u, strategy)
                if redex is None:
                    cache[u] = {u: ONE}
                    stack.pop()
                    continue
                steps += 1
                if steps > budget:
                    raise StepBudgetExceeded(f"more than {budget} reduction steps normalizing {w!r}")
                expansion = self._expand(u, *redex)
                if check_metric:
                    for _, v in expansion:
                        if metric(v, self.alphabet) >= metric(u, self.alphabet):
                            raise MetricViolation(f"{redex[0].name}: {u!r} -> {v!r} does not decrease")
                pending[u] = expansion
            missing = [v for _, v in expansion if v not in cache]
            if missing:
                stack.extend(missing)
                continue
            acc: dict[Word, RatFunc] = {}
            for c, v in expansion:
                for x, d in cache[v].items():
                    add_term(acc, x, c * d)
            cache[u] = acc
            del pending[u]
            stack.pop()
        return cache[w]

    def normal_form(
        self,
        p: NCPoly,
        strategy: str = "leftmost",
        *,
        trace: list[str] | None = None,
        check_metric: bool = False,
        budget: int = DEFAULT_STEP_BUDGET,
    ) -> NCPoly:
        if p.alphabet != self.alphabet:
            raise ValueError("polynomial and reduction system use different alphabets")
        if trace is not None:
            return self._stepwise_normal_form(p, strategy, trace, check_metric, budget)
        acc: dict[Word, RatFunc] = {}
        for w, c in p.terms.items():
            for x, d in self.word_normal_form(w, strategy, check_metric=check_metric, budget=budget).items():
                add_term(acc, x, c * d)
        return NCPoly._raw(self.alphabet, acc)

    def _stepwise_normal_form(self, p, strategy, trace, check_metric, budget) -> NCPoly:
        # literal strategy: first reducible word in canonical order, one step at a time
        current = p
        steps = 0
        while True:
            for idx, (w, _) in enumerate(current.items()):
                redex = self.find_redex(w, strategy)
                if redex is not None:
                    break
            else:
                return current
            rule, pos = redex
            steps += 1
            if steps > budget:
                raise StepBudgetExceeded(f"more than {budget} reduction steps")
            if check_metric:
                for _, v in self._expand(w, rule, pos):
                    if metric(v, self.alphabet) >= metric(w, self.alphabet):
                        raise MetricViolation(f"{rule.name}: {w!r} -> {v!r} does not decrease")
            trace.append(f"{rule.name} @ {idx}/{pos}")
            current = apply_reduction(current, rule, pos, word=w)


def apply_reduction(p: NCPoly, rule: ReductionRule, position: int, word: Word | None = None) -> NCPoly:
    """Replace one occurrence ``L W R`` by ``L f R``, leaving other terms alone.

    Without ``word``, the first support word (canonical order) carrying the
    pattern at ``position`` is used.
    """
    n = len(rule.pattern)
    if word is None:
        for w, _ in p.items():
            if w[position : position + n] == rule.pattern and position >= 0:
                word = w
                break
        else:
            raise ValueError(f"no support word has {rule.pattern!r} at position {position}")
    elif word not in p.terms or word[position : position + n] != rule.pattern or position < 0:
        raise ValueError(f"{rule.pattern!r} does not occur in {word!r} at position {position}")
    c = p.terms[word]
    out = dict(p.terms)
    del out[word]
    left, right = word[:position], word[position + n :]
    for u, d in rule.replacement.terms.items():
        add_term(out, left + u + right, c * d)
    return NCPoly._raw(p.alphabet, out)


def normal_form(p: NCPoly, sys: ReductionSystem, strategy: str = "leftmost", **kwargs) -> NCPoly:
    return sys.normal_form(p, strategy, **kwargs)


def is_irreducible(w: Word, sys: ReductionSystem) -> bool:
    return sys.is_irreducible(w)


def _all_rules(sys: ReductionSystem, k_max: int) -> list[ReductionRule]:
    rules = list(sys.rules)
    for fam in sys.families:
        rules.extend(fam.instance(k) for k in range(1, k_max + 1))
    return rules


def enumerate_ambiguities(sys: ReductionSystem, k_max: int) -> list[Ambiguity]:
    """Every overlap and inclusion ambiguity among rules with parameter <= k_max."""
    if k_max < 1:
        raise ValueError("k_max must be at least 1")
    rules = _all_rules(sys, k_max)
    found = []
    for lam in rules:
        for tau in rules:
            a, b = lam.pattern, tau.pattern
            for n in range(1, min(len(a), len(b))):
                if a[-n:] == b[:n]:
                    found.append(Ambiguity("overlap", lam, tau, a[:-n], a[-n:], b[n:]))
            if lam is not tau:
                start = b.find(a)
                while start >= 0:
                    found.append(Ambiguity("inclusion", lam, tau, b[:start], a, b[start + len(a) :]))
                    start = b.find(a, start + 1)
    return found


def check_resolvable(
    a: Ambiguity, sys: ReductionSystem, strategy: str = "leftmost", with_trace: bool = False
) -> ResolvabilityReport:
    """Reduce both sides of an ambiguity to normal form and compare."""
    alphabet = sys.alphabet
    if a.kind == "overlap":
        left_start = a.first.replacement * NCPoly.word(alphabet, a.w3)
        right_start = NCPoly.word(alphabet, a.w1) * a.second.replacement
    else:
        left_start = a.second.replacement
        right_start = NCPoly.word(alphabet, a.w1) * a.first.replacement * NCPoly.word(alphabet, a.w3)
    lt: list[str] | None = [] if with_trace else None
    rt: list[str] | None = [] if with_trace else None
    left = sys.normal_form(left_start, strategy, trace=lt)
    right = sys.normal_form(right_start, strategy, trace=rt)
    return ResolvabilityReport(a, left, right, lt or [], rt or [])


def check_all(sys: ReductionSystem, k_max: int, **kwargs) -> list[ResolvabilityReport]:
    return [check_resolvable(a, sys, **kwargs) for a in enumerate_ambiguities(sys, k_max)]


def sandwich(left: Word, p: NCPoly, right: Word) -> NCPoly:
    out = {left + w + right: c for w, c in p.terms.items()}
    return NCPoly._raw(p.alphabet, out)

