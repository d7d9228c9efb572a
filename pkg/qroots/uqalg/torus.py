"""
The Cartan part of the Lusztig form.

U^0_𝔸 is free over 𝔸 on k_μ ∏_i [K_i;0,t_i] where K_i = k_{α_i}, t_i ≥ 0 and
μ = ν + Σ δ_i α_i with ν the fractional representative of λ + Q in P and
δ_i ∈ {0, 1}. A Laurent polynomial in the k_λ is rewritten in this basis one
simple root at a time.
"""

from functools import lru_cache
from typing import Dict, NamedTuple, Tuple

from ..qscalars import ONE, QScalar, V, ZERO
from ..rootdata import RootDatum, WeightVec

Laurent = Dict[int, QScalar]


class TorusLabel(NamedTuple):
    """k_μ ∏_i [K_i;0,t_i]."""

    mu: WeightVec
    t: Tuple[int, ...]

    def is_zero(self) -> bool:
        return self.mu.is_zero() and not any(self.t)


def unit_label(datum: RootDatum) -> TorusLabel:
    return TorusLabel(datum.zero(), (0,) * datum.rank)


def _qi(datum: RootDatum, i: int) -> QScalar:
    return V ** datum.qi_vexp(i)


@lru_cache(maxsize=None)
def binomial(datum: RootDatum, i: int, t: int) -> Tuple[Tuple[int, QScalar], ...]:
    """[K_i;0,t] = ∏_{s=1}^{t} (K_i q_i^{1−s} − K_i^{−1} q_i^{s−1}) / (q_i^s − q_i^{−s})."""
    q = _qi(datum, i)
    poly: Laurent = {0: ONE}
    for s in range(1, t + 1):
        den = q**s - q ** (-s)
        step = {1: q ** (1 - s) / den, -1: -(q ** (s - 1)) / den}
        out: Laurent = {}
        for a, ca in poly.items():
            for b, cb in step.items():
                out[a + b] = out.get(a + b, ZERO) + ca * cb
        poly = {e: c for e, c in out.items() if c}
    return tuple(sorted(poly.items()))


def _peel(datum: RootDatum, i: int, poly: Laurent) -> Dict[Tuple[int, int], QScalar]:
    # Support of K^δ[K;0,n] is [−n+δ, n+δ]; the extreme exponents −n and n+1
    # each belong to a single basis element.
    rest = {e: c for e, c in poly.items() if c}
    out: Dict[Tuple[int, int], QScalar] = {}
    if not rest:
        return out
    n = max(max(-e, e - 1) for e in rest)
    n = max(n, 0)
    while n >= 0:
        expansion = dict(binomial(datum, i, n))
        top = rest.get(n + 1, ZERO)
        if top:
            c = top / expansion[n]
            out[(1, n)] = c
            for e, b in expansion.items():
                rest[e + 1] = rest.get(e + 1, ZERO) - c * b
        bottom = rest.get(-n, ZERO)
        if bottom:
            c = bottom / expansion[-n]
            out[(0, n)] = c
            for e, b in expansion.items():
                rest[e] = rest.get(e, ZERO) - c * b
        rest = {e: c for e, c in rest.items() if c}
        n -= 1
    if rest:
        raise ArithmeticError(f"torus decomposition left a remainder {rest}")
    return out


@lru_cache(maxsize=None)
def power_in_basis(datum: RootDatum, i: int, n: int) -> Tuple[Tuple[Tuple[int, int], QScalar], ...]:
    """K_i^n = Σ c K_i^δ [K_i;0,t], as ((δ, t), c) pairs."""
    return tuple(sorted(_peel(datum, i, {n: ONE}).items()))


@lru_cache(maxsize=None)
def weight_in_basis(datum: RootDatum, lam: WeightVec) -> Tuple[Tuple[TorusLabel, QScalar], ...]:
    """k_λ in the Lusztig basis of U^0."""
    nu, powers = datum.coset_split(lam)
    labels: Dict[TorusLabel, QScalar] = {unit_label(datum)._replace(mu=nu): ONE}
    for i, n in enumerate(powers):
        step = power_in_basis(datum, i, n)
        grown: Dict[TorusLabel, QScalar] = {}
        for label, c in labels.items():
            for (delta, t), b in step:
                mu = label.mu + datum.alpha(i) * delta if delta else label.mu
                ts = label.t[:i] + (t,) + label.t[i + 1:]
                key = TorusLabel(mu, ts)
                grown[key] = grown.get(key, ZERO) + c * b
        labels = {k: c for k, c in grown.items() if c}
    return tuple(labels.items())


@lru_cache(maxsize=None)
def label_in_weights(datum: RootDatum, label: TorusLabel) -> Tuple[Tuple[WeightVec, QScalar], ...]:
    """k_μ ∏ [K_i;0,t_i] as a Laurent polynomial in the k_λ."""
    terms: Dict[WeightVec, QScalar] = {label.mu: ONE}
    for i, t in enumerate(label.t):
        if not t:
            continue
        grown: Dict[WeightVec, QScalar] = {}
        for lam, c in terms.items():
            for e, b in binomial(datum, i, t):
                key = lam + datum.alpha(i) * e
                grown[key] = grown.get(key, ZERO) + c * b
        terms = {k: c for k, c in grown.items() if c}
    return tuple(terms.items())
