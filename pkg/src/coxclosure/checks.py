"""
Verification sweeps and golden scenarios, each producing a :class:`CheckReport`.

Sweeps run on finite groups through the element table: elements are table
indices and reflection sets are root bitmasks.  Inputs are processed in a
fixed canonical order, and sharded runs are merged back into that order, so
reports do not depend on scheduling.
"""
from __future__ import annotations

import itertools
import json
import os
import random
import time
from math import comb
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterable, Iterator

from .closure import (bruhat_preclosure, infinite_closure_mask, iterate_preclosure, preclosure_mask)
from .errors import CoxeterError
from .matrix import CoxeterMatrix, preset
from .orders import join_index
from .system import CoxeterSystem, build_system, bits
from .twisted import TwistDescriptor, Verdict, check_acyclic, twisted_edge, twisted_leq, twisted_length

__all__ = [
    "CheckReport",
    "RNG_NAME",
    "parse_sampling",
    "check_closure_theorem",
    "check_dyer",
    "scan_idempotence",
    "find_counterexample",
    "reproduce",
    "REPRODUCTIONS",
]

RNG_NAME = "python-random-mt19937"


@dataclass
class CheckReport:
    check_name: str
    group: str
    instances_checked: int = 0
    failures: list[dict] = field(default_factory=list)
    elapsed: float = 0.0
    truncated_any: bool = False
    seed: int | None = None
    rng: str | None = None
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        out = asdict(self)
        out["passed"] = self.passed
        return out

    @classmethod
    def from_json(cls, data: dict) -> "CheckReport":
        data = dict(data)
        data.pop("passed", None)
        return cls(**data)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)


def _require_table(W: CoxeterSystem):
    if W.table is None:
        raise CoxeterError(f"{W.name}: exhaustive sweeps need a finite group")
    return W.table


def _words(W: CoxeterSystem, mask: int) -> list[str]:
    return W.format_reflection_set(bits(mask))


def parse_sampling(spec: str) -> tuple[str, int, int]:
    """'all' / 'exhaustive' -> (mode, 0, 0); 'sample:k:seed' or 'random:k:seed' -> ('sample', k, seed)."""
    if spec in ("all", "exhaustive"):
        return ("all", 0, 0)
    parts = spec.split(":")
    if len(parts) == 3 and parts[0] in ("sample", "random"):
        try:
            return ("sample", int(parts[1]), int(parts[2]))
        except ValueError:
            pass
    raise ValueError(f"bad sampling spec {spec!r}; use all, exhaustive, sample:K:SEED or random:K:SEED")


# -- sharded execution ---------------------------------------------------------

_WORKER: dict = {}


def _init_worker(matrix_json: dict, name: str, depth_cap: int):
    _WORKER["W"] = build_system(CoxeterMatrix.from_json(matrix_json, name), depth_cap)


def _run_shard(args):
    fn, items = args
    return fn(_WORKER["W"], items)


def _sharded(W: CoxeterSystem, fn: Callable, items: list, jobs: int) -> list:
    """Apply ``fn(W, chunk)`` (returning a list per chunk) and concatenate in input order."""
    if jobs <= 1 or len(items) < 2 * jobs:
        return fn(W, items)
    size = (len(items) + jobs * 4 - 1) // (jobs * 4)
    chunks = [items[i:i + size] for i in range(0, len(items), size)]
    out = []
    with ProcessPoolExecutor(jobs, initializer=_init_worker,
                             initargs=(W.matrix.to_json(), W.name, W.depth_cap)) as pool:
        for part in pool.map(_run_shard, [(fn, c) for c in chunks]):
            out.extend(part)
    return out


# -- closure of inversion sets ----------------------------------------------------


def _closure_theorem_chunk(W: CoxeterSystem, indices: list[int]) -> list[dict]:
    tab = W.table
    out = []
    for i in indices:
        n = tab.inv_mask[i]
        got = preclosure_mask(W, n)
        if got != n:
            out.append({"w": W.format_word(tab.words[i]), "expected": _words(W, n), "got": _words(W, got)})
    return out


def check_closure_theorem(W: CoxeterSystem, jobs: int = 1) -> CheckReport:
    """[N(w)] = N(w) for every element w."""
    tab = _require_table(W)
    start = time.perf_counter()
    failures = _sharded(W, _closure_theorem_chunk, list(range(tab.size)), jobs)
    return CheckReport("closure-theorem", W.name, tab.size, failures, time.perf_counter() - start)


# -- joins versus closures -----------------------------------------------------------


def _pairs(W: CoxeterSystem, spec: str) -> tuple[list[tuple[int, int]], int | None]:
    tab = _require_table(W)
    mode, k, seed = parse_sampling(spec)
    if mode == "all":
        return [(u, v) for u in range(tab.size) for v in range(tab.size)], None
    rng = random.Random(seed)
    return [(rng.randrange(tab.size), rng.randrange(tab.size)) for _ in range(k)], seed


def _dyer_chunk_infinite(W: CoxeterSystem, pairs: list[tuple[int, int]]) -> list[dict]:
    return _dyer_chunk(W, pairs, True)


def _dyer_chunk_pre(W: CoxeterSystem, pairs: list[tuple[int, int]]) -> list[dict]:
    return _dyer_chunk(W, pairs, False)


def _dyer_chunk(W: CoxeterSystem, pairs, infinite: bool) -> list[dict]:
    tab = W.table
    inv = tab.inv_mask
    nT = W.num_roots
    out = []
    for u, v in pairs:
        j = join_index(W, u, v)
        union = inv[u] | inv[v]
        if infinite:
            got, iterations = infinite_closure_mask(W, union)
        else:
            got, iterations = preclosure_mask(W, union), 1
        bound = nT - bin(union).count("1") + 1
        record = {"iterations": iterations, "bound": bound}
        if got != inv[j] or iterations > bound:
            record.update({
                "u": W.format_word(tab.words[u]), "v": W.format_word(tab.words[v]),
                "join": W.format_word(tab.words[j]), "expected": _words(W, inv[j]), "got": _words(W, got),
            })
        out.append(record)
    return out


def check_dyer(W: CoxeterSystem, mode: str = "infinite", pairs: str = "all", jobs: int = 1) -> CheckReport:
    """N(join(u, v)) against the closure of N(u) | N(v) over a set of pairs.

    ``mode`` is ``infinite`` (iterate to the fixpoint) or ``preclosure`` (one
    application).  In infinite mode the iteration count, including the
    confirming pass, must not exceed |T| - |N(u) | N(v)| + 1.
    """
    if mode not in ("infinite", "preclosure"):
        raise ValueError("mode must be 'infinite' or 'preclosure'")
    start = time.perf_counter()
    todo, seed = _pairs(W, pairs)
    fn = _dyer_chunk_infinite if mode == "infinite" else _dyer_chunk_pre
    records = _sharded(W, fn, todo, jobs)
    failures = [r for r in records if "u" in r]
    max_iter = max((r["iterations"] for r in records), default=0)
    slack = min((r["bound"] - r["iterations"] for r in records), default=0)
    return CheckReport(f"dyer-{mode}", W.name, len(todo), failures, time.perf_counter() - start, False, seed,
                       RNG_NAME if seed is not None else None,
                       {"pairs": pairs, "max_iterations": max_iter, "min_bound_slack": slack})


# -- idempotence of the preclosure ----------------------------------------------------


def _reflection_order(W: CoxeterSystem) -> list[int]:
    return W.sorted_reflections(W.reflection_ids)


def _subsets(W: CoxeterSystem, strategy: str, max_size: int | None) -> tuple[Iterator[int], int | None, int]:
    """Yield subset masks in size-then-lex order (exhaustive) or seeded uniform order."""
    order = _reflection_order(W)
    nT = len(order)
    top = nT if max_size is None else min(max_size, nT)
    mode, k, seed = parse_sampling(strategy)
    if mode == "all":
        def gen():
            for size in range(top + 1):
                for combo in itertools.combinations(order, size):
                    m = 0
                    for r in combo:
                        m |= 1 << r
                    yield m
        total = sum(comb(nT, s) for s in range(top + 1))
        return gen(), None, total

    rng = random.Random(seed)

    def gen_random():
        produced = 0
        while produced < k:
            m = 0
            for r in order:
                if rng.getrandbits(1):
                    m |= 1 << r
            if max_size is not None and bin(m).count("1") > max_size:
                continue
            produced += 1
            yield m
    return gen_random(), seed, k


def _idempotence_failure(W: CoxeterSystem, mask: int) -> dict | None:
    once = preclosure_mask(W, mask)
    twice = preclosure_mask(W, once)
    if once == twice:
        return None
    return {"A": _words(W, mask), "closure": _words(W, once), "closure_twice": _words(W, twice),
            "added_by_second": _words(W, twice & ~once)}


def _idempotence_chunk(W: CoxeterSystem, masks: list[int]) -> list[dict | None]:
    return [_idempotence_failure(W, m) for m in masks]


def scan_idempotence(W: CoxeterSystem, strategy: str = "exhaustive", max_size: int | None = None,
                     jobs: int = 1) -> CheckReport:
    """Every subset A (or a seeded sample) with [[A]] != [A] is a failure."""
    _require_table(W)
    start = time.perf_counter()
    gen, seed, total = _subsets(W, strategy, max_size)
    masks = list(gen)
    results = _sharded(W, _idempotence_chunk, masks, jobs)
    failures = [r for r in results if r is not None]
    return CheckReport("scan-idempotence", W.name, len(masks), failures, time.perf_counter() - start, False,
                       seed, RNG_NAME if seed is not None else None, {"strategy": strategy, "max_size": max_size})


def find_counterexample(W: CoxeterSystem, strategy: str = "exhaustive", max_size: int | None = None,
                        count: bool = False, budget: int | None = None, checkpoint: str | None = None,
                        candidates: Iterable[frozenset[int]] | None = None) -> CheckReport:
    """Search for A with [[A]] != [A].

    Stops at the first hit unless ``count`` is set.  ``budget`` caps the
    number of subsets examined in this run; with ``checkpoint`` the position
    is saved so a later run resumes where this one stopped.  ``candidates``
    replaces the search space with explicit sets.
    """
    _require_table(W)
    start = time.perf_counter()
    seed = None
    if candidates is not None:
        masks: Iterator[int] = iter([W.mask_of(c) for c in candidates])
        total = None
    else:
        masks, seed, total = _subsets(W, strategy, max_size)
    resume = {"position": 0, "failures": 0, "first": None}
    if checkpoint and os.path.exists(checkpoint):
        with open(checkpoint) as fh:
            saved = json.load(fh)
        if saved.get("group") == W.name and saved.get("strategy") == strategy and saved.get("max_size") == max_size:
            resume.update(saved)
    masks = itertools.islice(masks, resume["position"], None)
    failures = []
    examined = 0
    hits = resume["failures"]
    exhausted = True
    for m in masks:
        if budget is not None and examined >= budget:
            exhausted = False
            break
        examined += 1
        fail = _idempotence_failure(W, m)
        if fail is not None:
            hits += 1
            failures.append(fail)
            if not count:
                exhausted = False
                break
    position = resume["position"] + examined
    if checkpoint:
        with open(checkpoint, "w") as fh:
            json.dump({"group": W.name, "strategy": strategy, "max_size": max_size, "position": position,
                       "failures": hits, "complete": exhausted}, fh)
    details = {"strategy": strategy, "max_size": max_size, "examined_total": position, "search_space": total,
               "complete": exhausted, "failures_total": hits}
    return CheckReport("find-counterexample", W.name, examined, failures, time.perf_counter() - start,
                       False, seed, RNG_NAME if seed is not None else None, details)


# -- golden scenarios -----------------------------------------------------------------

# Expected sets are written as they are usually printed; they are parsed into
# canonical elements before comparison, so any reduced word for a reflection works.
GOLDEN_A3 = {
    "group": "A3",
    "set": "r, rstsr, t",
    "closure": "r, rstsr, t",
    "reachable": "e, r, t, rt, str, stsr, rstr, rstsr",
}
GOLDEN_H3 = {
    "group": "H3",
    "set": "r, srs, tsrsrst, strstrstrstrs",
    "added_first": "srsrs",
    "added_second": "rstrsrstrsr",
}
GOLDEN_F4 = {
    "group": "F4",
    "set": "utstu, sts, usrtsrtsu, utu, u, tsrutsrtsut, rstsrutsrtsutsr",
    "added_first": "ustsu, tsutsut",
    "added_second": "utsrtsutsrutstu",
}
GOLDEN_A2_TWISTED = {
    "group": "A2",
    "witness": "st",
    "explicit": "s, t",
    "elements": ["e", "s", "t", "st", "ts", "sts"],
    "lengths_witness": [0, -1, 1, 0, -2, -1],
    "lengths_explicit": [0, -1, -1, 0, 0, -1],
    "bottom": "ts",
    "top": "t",
    "cycle": ["e", "sts", "ts", "t", "e"],
}
GOLDEN_AINF = {
    "group": "AINF",
    "generator": "s",
    "lengths": {"e": 0, "s": -1, "ts": -2, "sts": -3, "t": 1, "st": 2, "tst": 3, "stst": 4},
}


def _canon_set(W: CoxeterSystem, text: str) -> list[str]:
    return W.format_reflection_set(W.parse_reflection_set(text))


def _canon_elements(W: CoxeterSystem, words: Iterable[str]) -> list[str]:
    els = sorted({W.element(w) for w in words}, key=lambda x: x.sort_key)
    return [W.format(x) for x in els]


def _compare(report: CheckReport, what: str, expected, got):
    report.instances_checked += 1
    if json.dumps(expected, sort_keys=True) != json.dumps(got, sort_keys=True):
        report.failures.append({"check": what, "expected": expected, "got": got})


def _reproduce_a3(report: CheckReport):
    g = GOLDEN_A3
    W = build_system(preset(g["group"]))
    res = bruhat_preclosure(W, W.parse_reflection_set(g["set"]))
    _compare(report, "closure", _canon_set(W, g["closure"]), W.format_reflection_set(res.closure))
    _compare(report, "reachable", _canon_elements(W, g["reachable"].split(", ")),
             _canon_elements(W, [W.format(x) for x in res.reachable]))


def _reproduce_iterates(report: CheckReport, g: dict):
    W = build_system(preset(g["group"]))
    A = W.parse_reflection_set(g["set"])
    res = iterate_preclosure(W, A, 2)
    first, second = res.history[1], res.history[2]
    _compare(report, "added by first iterate", _canon_set(W, g["added_first"]),
             W.format_reflection_set(first - A))
    _compare(report, "added by second iterate", _canon_set(W, g["added_second"]),
             W.format_reflection_set(second - first))
    report.truncated_any |= res.truncated


def _reproduce_a2_twisted(report: CheckReport):
    g = GOLDEN_A2_TWISTED
    W = build_system(preset(g["group"]))
    els = [W.element(x) for x in g["elements"]]
    A = TwistDescriptor.finite(W.element(g["witness"]))
    B = TwistDescriptor.explicit(W.parse_reflection_set(g["explicit"]))
    e = W.identity
    _compare(report, "twisted lengths, inversion-set twist", g["lengths_witness"],
             [twisted_length(W, A, e, w) for w in els])
    _compare(report, "twisted lengths, explicit twist", g["lengths_explicit"],
             [twisted_length(W, B, e, w) for w in els])
    bottoms = [W.format(x) for x in els if all(twisted_leq(W, A, x, y) is Verdict.YES for y in els)]
    tops = [W.format(x) for x in els if all(twisted_leq(W, A, y, x) is Verdict.YES for y in els)]
    _compare(report, "bottom", [W.format(W.element(g["bottom"]))], bottoms)
    _compare(report, "top", [W.format(W.element(g["top"]))], tops)
    _compare(report, "inversion-set twist is acyclic", "acyclic", check_acyclic(W, A).verdict)
    cyc = [W.element(x) for x in g["cycle"]]
    _compare(report, "cycle edges present", [True] * (len(cyc) - 1),
             [twisted_edge(W, B, x, y) for x, y in zip(cyc, cyc[1:])])
    found = check_acyclic(W, B)
    _compare(report, "explicit twist has a cycle", "cycle", found.verdict)


def _reproduce_ainf(report: CheckReport):
    g = GOLDEN_AINF
    W = build_system(preset(g["group"]), depth_cap=16)
    A = TwistDescriptor.infinite_dihedral(W, W.parse_word(g["generator"])[0], truncation_length=16)
    got = {w: twisted_length(W, A, W.identity, W.element(w)) for w in g["lengths"]}
    _compare(report, "twisted lengths", g["lengths"], got)


REPRODUCTIONS: dict[str, Callable[[CheckReport], None]] = {
    "a3": _reproduce_a3,
    "h3": lambda rep: _reproduce_iterates(rep, GOLDEN_H3),
    "f4": lambda rep: _reproduce_iterates(rep, GOLDEN_F4),
    "a2-twisted": _reproduce_a2_twisted,
    "ainf": _reproduce_ainf,
}

_REPRO_GROUP = {"a3": "A3", "h3": "H3", "f4": "F4", "a2-twisted": "A2", "ainf": "AINF"}


def reproduce(name: str) -> CheckReport:
    key = name.lower()
    if key not in REPRODUCTIONS:
        raise ValueError(f"unknown scenario {name!r}; choose from {sorted(REPRODUCTIONS)}")
    report = CheckReport(f"reproduce-{key}", _REPRO_GROUP[key])
    start = time.perf_counter()
    REPRODUCTIONS[key](report)
    report.elapsed = time.perf_counter() - start
    return report
