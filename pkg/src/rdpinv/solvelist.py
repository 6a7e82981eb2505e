"""Substitution rule sets and the solve-list elimination engine.

A :class:`RuleSet` is an ordered collection of rules ``variable -> value``
applied simultaneously.  A :class:`SolveList` packages a rule set, a
template polynomial and an ordered list of (monomial, unknown) pairs; it
determines further rules lazily: substitute the base rules into the
template, then walk the pairs in order, each time reading off the
coefficient of the monomial, solving it for the unknown (which must occur
linearly with a nonzero rational constant coefficient) and eliminating
that unknown from the remaining coefficients.

Expanded rule sets can be persisted in a content-addressed cache keyed by
a hash of (base, template, pairs, extraction variables), so repeated runs
of the heavy eliminations are free.
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Optional

from .poly import (
    AbsentVariableError,
    NonLinearError,
    Polynomial,
    VarTable,
    parse,
)


class ValidityViolation(Exception):
    """A solve-list pair failed the linearity or ordering condition."""

    def __init__(self, index: int, variable: str, reason: str):
        super().__init__(f"pair {index} ({variable}): {reason}")
        self.index = index
        self.variable = variable
        self.reason = reason


@dataclass(frozen=True)
class RuleSet:
    """Ordered substitution rules; no variable is defined twice."""

    rules: tuple[tuple[str, Polynomial], ...]

    def __post_init__(self):
        names = [v for v, _ in self.rules]
        if len(set(names)) != len(names):
            raise ValueError(f"variable defined twice in rule set: {names}")

    @staticmethod
    def of(items: "Mapping[str, Polynomial] | Iterable[tuple[str, Polynomial]]") -> "RuleSet":
        if isinstance(items, Mapping):
            items = items.items()
        return RuleSet(tuple(items))

    @staticmethod
    def identity() -> "RuleSet":
        return RuleSet(())

    def mapping(self) -> dict[str, Polynomial]:
        return dict(self.rules)

    def domain(self) -> tuple[str, ...]:
        return tuple(v for v, _ in self.rules)

    def __len__(self) -> int:
        return len(self.rules)

    def __getitem__(self, name: str) -> Polynomial:
        for v, p in self.rules:
            if v == name:
                return p
        raise KeyError(name)

    def __contains__(self, name: str) -> bool:
        return any(v == name for v, _ in self.rules)

    def apply(self, p: Polynomial) -> Polynomial:
        return p.substitute(self.mapping())

    def compose(self, inner: "RuleSet") -> "RuleSet":
        """Rules whose application equals: apply ``inner``, then ``self``."""
        m = self.mapping()
        out: list[tuple[str, Polynomial]] = []
        seen = set()
        for v, p in inner.rules:
            out.append((v, p.substitute(m)))
            seen.add(v)
        for v, p in self.rules:
            if v not in seen:
                out.append((v, p))
        return RuleSet(tuple(out))

    def restricted(self, names: Iterable[str]) -> "RuleSet":
        names = set(names)
        return RuleSet(tuple((v, p) for v, p in self.rules if v in names))

    def to_json(self) -> dict:
        tables: list[VarTable] = []
        for _, p in self.rules:
            if p.table not in tables:
                tables.append(p.table)
        table = tables[0] if tables else VarTable((), ())
        for t in tables[1:]:
            table = table.merged(t)
        return {
            "format": "rdpinv-rules-v1",
            "vars": list(table.names),
            "weights": list(table.weights),
            "rules": [[v, p.to_table(table).serialize()] for v, p in self.rules],
        }

    @staticmethod
    def from_json(data: dict) -> "RuleSet":
        table = VarTable(data["vars"], data["weights"])
        return RuleSet(tuple((v, parse(text, table)) for v, text in data["rules"]))

    def canonical_bytes(self) -> bytes:
        return json.dumps(self.to_json(), sort_keys=True).encode()

    def content_key(self) -> str:
        return hashlib.sha256(self.canonical_bytes()).hexdigest()


def compose(outer: RuleSet, inner: RuleSet) -> RuleSet:
    return outer.compose(inner)


MonoSpec = tuple[tuple[str, int], ...]


def _mono_spec(mono: "Mapping[str, int] | MonoSpec") -> MonoSpec:
    if isinstance(mono, Mapping):
        return tuple(sorted((v, int(e)) for v, e in mono.items() if e))
    return tuple(sorted((v, int(e)) for v, e in mono if e))


@dataclass(frozen=True)
class SolveList:
    """Base rules + template + ordered (monomial, unknown) pairs."""

    base: RuleSet
    template: Polynomial
    pairs: tuple[tuple[MonoSpec, str], ...]
    monomial_vars: tuple[str, ...]

    @staticmethod
    def of(base, template, pairs, monomial_vars) -> "SolveList":
        pairs = tuple((_mono_spec(m), v) for m, v in pairs)
        return SolveList(base, template, pairs, tuple(monomial_vars))

    def unknowns(self) -> tuple[str, ...]:
        return tuple(v for _, v in self.pairs)

    def pull_back(self, param: RuleSet) -> "SolveList":
        """Rewrite base and template by ``param`` (typically rules on the
        coefficient parameters), leaving the pair structure alone."""
        m = param.mapping()
        base = RuleSet(tuple((v, p.substitute(m)) for v, p in self.base.rules))
        return SolveList(base, self.template.substitute(m), self.pairs, self.monomial_vars)

    def coefficient_equations(self) -> list[Polynomial]:
        """The raw coefficients c_i before any unknown is eliminated."""
        work = self.base.apply(self.template)
        grouped = work.coefficients_over(self.monomial_vars)
        table = work.table
        keyed = {}
        for m, p in grouped.items():
            keyed[tuple(sorted((table.names[i], e) for i, e in m))] = p
        zero = table.zero()
        return [keyed.get(m, zero) for m, _ in self.pairs]

    def expand(self, upto: Optional[int] = None) -> RuleSet:
        """Solve the pairs in order, eliminating each unknown as found.

        ``upto`` solves only the first ``upto`` pairs (partial expansion).
        Raises :class:`ValidityViolation` naming the first offending pair.
        """
        coeffs = self.coefficient_equations()
        pairs = self.pairs if upto is None else self.pairs[:upto]
        coeffs = coeffs[: len(pairs)]
        solved: list[tuple[str, Polynomial]] = []
        for i, (mono, var) in enumerate(pairs):
            ci = coeffs[i]
            try:
                value = ci.solve_linear(var)
            except (NonLinearError, AbsentVariableError) as exc:
                raise ValidityViolation(i, var, str(exc)) from exc
            for w, wval in solved:
                if wval.contains_var(var):
                    raise ValidityViolation(
                        i, var, f"already occurs in the coefficient solved for {w}"
                    )
            solved.append((var, value))
            sub = {var: value}
            for j in range(i + 1, len(coeffs)):
                if coeffs[j].contains_var(var):
                    coeffs[j] = coeffs[j].substitute(sub)
        # late pairs may appear in earlier solutions; clean in reverse order
        for i in range(len(solved) - 2, -1, -1):
            var, value = solved[i]
            later = {w: wval for w, wval in solved[i + 1:] if value.contains_var(w)}
            if later:
                solved[i] = (var, value.substitute(later))
        return RuleSet(tuple(solved))

    def to_json(self) -> dict:
        return {
            "format": "rdpinv-solvelist-v1",
            "base": self.base.to_json(),
            "template": self.template.to_json(),
            "pairs": [[list(map(list, m)), v] for m, v in self.pairs],
            "monomial_vars": list(self.monomial_vars),
        }

    def content_key(self, upto: Optional[int] = None) -> str:
        payload = json.dumps(self.to_json(), sort_keys=True) + f"|upto={upto}"
        return hashlib.sha256(payload.encode()).hexdigest()


def expand(sl: SolveList, upto: Optional[int] = None) -> RuleSet:
    return sl.expand(upto=upto)


def pull_back(sl: SolveList, param: RuleSet) -> SolveList:
    return sl.pull_back(param)


# -- cache --------------------------------------------------------------------


def default_cache_dir() -> Path:
    env = os.environ.get("CACHE_DIR")
    if env:
        return Path(env)
    return Path.home() / ".cache" / "rdpinv"


class RuleCache:
    """File-backed store of expanded rule sets, keyed by content hash."""

    def __init__(self, directory: "Path | str | None" = None):
        self.directory = Path(directory) if directory is not None else default_cache_dir()
        self._memory: dict[str, RuleSet] = {}

    def path_for(self, key: str) -> Path:
        return self.directory / f"{key}.json"

    def get(self, key: str) -> Optional[RuleSet]:
        hit = self._memory.get(key)
        if hit is not None:
            return hit
        path = self.path_for(key)
        if not path.exists():
            return None
        data = json.loads(path.read_text())
        if data.get("key") != key:
            return None
        rules = RuleSet.from_json(data["rules"])
        self._memory[key] = rules
        return rules

    def put(self, key: str, rules: RuleSet) -> None:
        self._memory[key] = rules
        self.directory.mkdir(parents=True, exist_ok=True)
        payload = {"format": "rdpinv-cache-v1", "key": key, "rules": rules.to_json()}
        tmp = self.path_for(key).with_suffix(".tmp")
        tmp.write_text(json.dumps(payload, sort_keys=True))
        tmp.replace(self.path_for(key))

    def expand(self, sl: SolveList, upto: Optional[int] = None) -> RuleSet:
        key = sl.content_key(upto=upto)
        hit = self.get(key)
        if hit is not None:
            return hit
        rules = sl.expand(upto=upto)
        self.put(key, rules)
        return rules


_DEFAULT_CACHE = None


def get_cache(directory: "Path | str | None" = None) -> RuleCache:
    global _DEFAULT_CACHE
    if directory is not None:
        return RuleCache(directory)
    if _DEFAULT_CACHE is None:
        _DEFAULT_CACHE = RuleCache()
    return _DEFAULT_CACHE
