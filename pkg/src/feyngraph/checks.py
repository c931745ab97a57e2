"""Cross-oracle self checks run by ``feyngraph check``.

Each check compares two independent computations on seeded random data
and raises :class:`InvariantViolation` on the first disagreement.
"""

from __future__ import annotations

import random
from collections.abc import Callable
from fractions import Fraction
from math import prod

from .algebra import SymAlgebra
from .canonical import canonical_form
from .enumerate import (
    ValenceProfile, alpha_coefficient, double_factorial, graphs_with_profile, pairings, profiles_up_to,
)
from .errors import InvariantViolation
from .evaluate import evaluate_closed, random_schedule
from .expansion import ExpansionRequest, free_energy, partition_function, partition_function_oracle
from .generators import random_graph, random_invariant_tensor, random_metric
from .graphs import ORDINARY, RibbonGraph, compose, tensor
from .kontsevich import KontsevichSpectrum, euler_oracle, euler_series, z_gamma_coloring, z_gamma_contraction

__all__ = ["CHECKS", "run_checks"]


def _expect(name: str, left, right):
    if left != right:
        raise InvariantViolation(f"{name}: {left} != {right}")


def check_moments(rng: random.Random):
    for dim in (1, 2, 3):
        m = random_metric(rng, dim)
        for degree in (2, 4):
            idx = tuple(rng.randrange(dim) for _ in range(degree))
            brute = sum(
                (prod(m.inverse[idx[a], idx[b]] for a, b in p.blocks) for p in pairings(degree)),
                Fraction(0),
            )
            _expect(f"moment {idx}", m.moment(idx), brute)


def check_alpha(rng: random.Random):
    for mode in ("ribbon", "ordinary"):
        for prof in profiles_up_to(6, [(k, ORDINARY) for k in range(1, 7)]):
            classes = graphs_with_profile(prof, mode)
            _expect(f"pairing total {prof}", sum(c.count for c in classes), double_factorial(prof.slots - 1))
            for c in classes:
                _expect(f"alpha {prof}", alpha_coefficient(c.graph, prof, mode), c.count)


def check_expansion(rng: random.Random):
    for kind, mode in (("cyclic", "ribbon"), ("symmetric", "ordinary")):
        for dim in (1, 2):
            m = random_metric(rng, dim)
            a = SymAlgebra(m, kind, {k: random_invariant_tensor(rng, dim, k, kind) for k in range(1, 5)})
            req = ExpansionRequest(a, mode, 6)
            _expect(f"partition function {mode} dim {dim}", partition_function(req), partition_function_oracle(req))
            free_energy(req)


def check_schedules(rng: random.Random):
    m = random_metric(rng, 2)
    a = SymAlgebra(m, "cyclic", {k: random_invariant_tensor(rng, 2, k, "cyclic") for k in range(1, 5)})
    for _ in range(5):
        g = random_graph(rng, 0, 0)
        base = evaluate_closed(g, a)
        for _ in range(3):
            _expect("schedule independence", evaluate_closed(g, a, random_schedule(g, rng)), base)


def check_prop_laws(rng: random.Random):
    for _ in range(20):
        a, b, c = random_graph(rng, 2, 1), random_graph(rng, 1, 2), random_graph(rng, 2, 1)
        left, right = compose(compose(a, b), c), compose(a, compose(b, c))
        _expect("associativity", canonical_form(left), canonical_form(right))
        x, y = random_graph(rng, 1, 1), random_graph(rng, 0, 2)
        _expect("tensor associativity", canonical_form(tensor(tensor(x, y), a)), canonical_form(tensor(x, tensor(y, a))))


def check_lemma_z1(rng: random.Random):
    for prof in profiles_up_to(6, [(k, ORDINARY) for k in range(1, 7)], min_slots=2):
        for cl in graphs_with_profile(prof, "ribbon"):
            spec = KontsevichSpectrum([Fraction(rng.randint(1, 5), rng.randint(1, 3)) for _ in range(2)])
            _expect(f"Z1 {prof}", z_gamma_coloring(cl.graph, spec), z_gamma_contraction(cl.graph, spec))


def check_euler(rng: random.Random):
    series = euler_series(1)
    for n in (1, 2):
        oracle = euler_oracle(n, 1)
        _expect(f"euler N={n}", series.substitute({"N": n}, oracle), oracle)


CHECKS: dict[str, Callable[[random.Random], None]] = {
    "moments": check_moments,
    "alpha": check_alpha,
    "expansion": check_expansion,
    "schedules": check_schedules,
    "prop-laws": check_prop_laws,
    "lemma-z1": check_lemma_z1,
    "euler": check_euler,
}


def run_checks(seed: int = 0, names=None) -> list[str]:
    done = []
    for name, fn in CHECKS.items():
        if names and name not in names:
            continue
        fn(random.Random(f"{seed}:{name}"))
        done.append(name)
    return done
