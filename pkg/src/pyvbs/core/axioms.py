"""
Randomized conformance kit for valuation instances

Each law of the valuation algebra is a named check. ``run_axiom_suite`` draws
random valuations from a sampler, runs every applicable check and reports a
witness for the first failing case of each law.
"""
import logging
from dataclasses import dataclass, field
from typing import Callable, Iterator, List, Optional, Sequence, Tuple, Type

import numpy as np

from .frames import Domain, Variable
from .settings import Presets, Settings
from .valuation import Valuation

logger = logging.getLogger(__name__)

Sampler = Callable[[Domain, np.random.Generator], Valuation]


# ============================================================================
# Report
# ============================================================================

@dataclass
class AxiomResult:
    """Outcome of one law over all of its random cases"""
    name: str
    law: str
    passed: bool
    cases: int
    counterexample: Optional[str] = None

    def __str__(self) -> str:
        status = "pass" if self.passed else "FAIL"
        text = f"{status:4}  {self.name:<34} {self.cases:>5} cases  {self.law}"
        if self.counterexample:
            text += f"\n      witness: {self.counterexample}"
        return text


@dataclass
class AxiomReport:
    instance: str
    results: List[AxiomResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def failures(self) -> List[AxiomResult]:
        return [r for r in self.results if not r.passed]

    def __getitem__(self, name: str) -> AxiomResult:
        for result in self.results:
            if result.name == name:
                return result
        raise KeyError(name)

    def names(self) -> List[str]:
        return [r.name for r in self.results]

    def __str__(self) -> str:
        lines = [f"{self.instance}: {'all laws hold' if self.passed else 'failures found'}"]
        lines.extend(str(r) for r in self.results)
        return "\n".join(lines)


# ============================================================================
# Random case generation
# ============================================================================

class _Cases:
    """Random scopes and valuations for one suite run"""

    def __init__(self, instance: Type[Valuation], sampler: Sampler,
                 variables: Sequence[Variable], rng: np.random.Generator,
                 settings: Settings, max_scope: int):
        self.instance = instance
        self.sampler = sampler
        self.variables = list(variables)
        self.rng = rng
        self.settings = settings
        self.max_scope = min(max_scope, len(self.variables))

    def domain(self, min_size: int = 0, include: Sequence[Variable] = (),
               exclude: Sequence[Variable] = ()) -> Domain:
        pool = [v for v in self.variables if v not in include and v not in exclude]
        low = max(min_size - len(include), 0)
        high = max(min(self.max_scope - len(include), len(pool)), low)
        count = int(self.rng.integers(low, high + 1))
        chosen = []
        if count:
            chosen = [pool[k] for k in self.rng.choice(len(pool), size=count, replace=False)]
        return Domain(list(include) + chosen)

    def sample(self, domain: Domain) -> Valuation:
        return self.sampler(domain, self.rng)

    def pick(self, domain: Domain) -> Variable:
        return domain.variables[int(self.rng.integers(len(domain)))]

    def subscope(self, domain: Domain) -> Domain:
        keep = self.rng.random(len(domain)) < 0.5
        return Domain(v for v, k in zip(domain.variables, keep) if k)

    def close(self, left: Valuation, right: Valuation) -> Tuple[bool, float]:
        deviation = left.deviation(right)
        scale = max(float(np.max(np.abs(left.table), initial=0.0)),
                    float(np.max(np.abs(right.table), initial=0.0)))
        limit = self.settings.tolerance + self.settings.relative_tolerance * scale
        return deviation <= limit and left.scope == right.scope, deviation


def _mismatch(deviation: float, **operands: Valuation) -> str:
    parts = [f"{name}={value!r}" for name, value in operands.items()]
    return ", ".join(parts) + f", deviation={deviation:.3g}"


# ============================================================================
# Laws
# ============================================================================

Check = Callable[[_Cases], Optional[str]]
_LAWS: List[Tuple[str, str, bool, Check]] = []


def _law(name: str, law: str, removal: bool = False) -> Callable[[Check], Check]:
    def register(check: Check) -> Check:
        _LAWS.append((name, law, removal, check))
        return check
    return register


@_law("scope-union", "scope(ρ ⊗ σ) = r ∪ s")
def _scope_union(c: _Cases) -> Optional[str]:
    rho, sigma = c.sample(c.domain()), c.sample(c.domain())
    result = rho.combine(sigma)
    if result.scope != rho.scope | sigma.scope:
        return f"ρ={rho!r}, σ={sigma!r}, scope={result.scope}"
    return None


@_law("associativity", "ρ ⊗ (σ ⊗ τ) = (ρ ⊗ σ) ⊗ τ")
def _associativity(c: _Cases) -> Optional[str]:
    rho, sigma, tau = (c.sample(c.domain()) for _ in range(3))
    ok, deviation = c.close(rho.combine(sigma.combine(tau)), rho.combine(sigma).combine(tau))
    return None if ok else _mismatch(deviation, ρ=rho, σ=sigma, τ=tau)


@_law("commutativity", "ρ ⊗ σ = σ ⊗ ρ")
def _commutativity(c: _Cases) -> Optional[str]:
    rho, sigma = c.sample(c.domain()), c.sample(c.domain())
    ok, deviation = c.close(rho.combine(sigma), sigma.combine(rho))
    return None if ok else _mismatch(deviation, ρ=rho, σ=sigma)


@_law("zero-absorption", "ρ ⊗ ζ_s = ζ_{r∪s}")
def _zero_absorption(c: _Cases) -> Optional[str]:
    rho = c.sample(c.domain())
    zero = c.instance.zero(c.domain())
    result = rho.combine(zero)
    if result.scope != rho.scope | zero.scope or not result.is_zero():
        return f"ρ={rho!r}, result={result!r}"
    return None


@_law("identity", "σ ⊗ ι_s = σ for σ normal or zero")
def _identity(c: _Cases) -> Optional[str]:
    domain = c.domain()
    for sigma in (c.sample(domain), c.instance.zero(domain)):
        ok, deviation = c.close(sigma.combine(c.instance.identity(domain)), sigma)
        if not ok:
            return _mismatch(deviation, σ=sigma)
    return None


@_law("empty-scope-identity", "every normal σ marginalizes to the unique ι_∅")
def _empty_scope_identity(c: _Cases) -> Optional[str]:
    sigma = c.sample(c.domain())
    if not sigma.is_normal(c.settings):
        return None
    ok, deviation = c.close(sigma.marginalize(()), c.instance.identity(Domain()))
    return None if ok else _mismatch(deviation, σ=sigma)


@_law("deletion-order", "(σ↓s−X)↓s−X−Y = (σ↓s−Y)↓s−X−Y")
def _deletion_order(c: _Cases) -> Optional[str]:
    sigma = c.sample(c.domain(min_size=2))
    x, y = (sigma.domain.variables[k] for k in c.rng.choice(len(sigma.domain), 2, replace=False))
    ok, deviation = c.close(sigma.delete(x.id).delete(y.id), sigma.delete(y.id).delete(x.id))
    return None if ok else _mismatch(deviation, σ=sigma)


@_law("zero-marginal", "ζ_s↓s−X = ζ_{s−X}")
def _zero_marginal(c: _Cases) -> Optional[str]:
    zero = c.instance.zero(c.domain(min_size=1))
    result = zero.delete(c.pick(zero.domain).id)
    if not result.is_zero() or len(result.scope) != len(zero.scope) - 1:
        return f"ζ={zero!r}, result={result!r}"
    return None


@_law("normality-preserved", "σ↓s−X normal ⇔ σ normal")
def _normality_preserved(c: _Cases) -> Optional[str]:
    domain = c.domain(min_size=1)
    sigma = c.sample(domain)
    for candidate in (sigma, sigma.combine(c.sample(domain))):
        marginal = candidate.delete(c.pick(domain).id)
        if marginal.is_normal(c.settings) != candidate.is_normal(c.settings):
            return f"σ={candidate!r}, marginal={marginal!r}"
    return None


@_law("positive-normality-preserved", "σ positive normal ⇒ σ↓s−X positive normal")
def _positive_normality_preserved(c: _Cases) -> Optional[str]:
    sigma = c.sample(c.domain(min_size=1))
    if not sigma.is_positive_normal(c.settings):
        return None
    marginal = sigma.delete(c.pick(sigma.domain).id)
    if not marginal.is_positive_normal(c.settings):
        return f"σ={sigma!r}, marginal={marginal!r}"
    return None


@_law("combination-locality", "X ∉ r ⇒ (ρ ⊗ σ)↓(r∪s)−X = ρ ⊗ σ↓s−X")
def _combination_locality(c: _Cases) -> Optional[str]:
    s = c.domain(min_size=1)
    x = c.pick(s)
    rho = c.sample(c.domain(exclude=[x]))
    sigma = c.sample(s)
    ok, deviation = c.close(rho.combine(sigma).delete(x.id), rho.combine(sigma.delete(x.id)))
    return None if ok else _mismatch(deviation, ρ=rho, σ=sigma)


@_law("marginal-identity", "σ ⊗ ι = σ for an identity ι of σ↓r")
def _marginal_identity(c: _Cases) -> Optional[str]:
    sigma = c.sample(c.domain())
    r = c.subscope(sigma.domain)
    identities = [c.instance.identity(r)]
    if c.instance.supports_removal:
        marginal = sigma.marginalize(r.scope)
        identities.append(marginal.remove(marginal))
    for iota in identities:
        ok, deviation = c.close(sigma.combine(iota), sigma)
        if not ok:
            return _mismatch(deviation, σ=sigma, ι=iota)
    return None


@_law("identity-union", "ι_s ⊗ ι_r = ι_{s∪r}")
def _identity_union(c: _Cases) -> Optional[str]:
    s, r = c.domain(), c.domain()
    ok, deviation = c.close(c.instance.identity(s).combine(c.instance.identity(r)),
                            c.instance.identity(s.union(r)))
    return None if ok else f"s={s}, r={r}, deviation={deviation:.3g}"


@_law("identity-marginal", "ι_s↓r = ι_r")
def _identity_marginal(c: _Cases) -> Optional[str]:
    s = c.domain()
    r = c.subscope(s)
    ok, deviation = c.close(c.instance.identity(s).marginalize(r.scope), c.instance.identity(r))
    return None if ok else f"s={s}, r={r}, deviation={deviation:.3g}"


@_law("removal-scope", "scope(σ Ⓡ ρ) = r ∪ s with a well-formed table", removal=True)
def _removal_scope(c: _Cases) -> Optional[str]:
    sigma, rho = c.sample(c.domain()), c.sample(c.domain())
    result = sigma.remove(rho)
    if result.scope != sigma.scope | rho.scope or not np.all(np.isfinite(result.table)):
        return f"σ={sigma!r}, ρ={rho!r}, result={result!r}"
    return None


@_law("self-removal-identity", "ρ Ⓡ ρ is an identity for ρ", removal=True)
def _self_removal_identity(c: _Cases) -> Optional[str]:
    rho = c.sample(c.domain())
    iota = rho.remove(rho)
    ok_neutral, deviation = c.close(iota.combine(rho), rho)
    ok_idempotent, _ = c.close(iota.combine(iota), iota)
    if iota.scope != rho.scope or not (ok_neutral and ok_idempotent):
        return _mismatch(deviation, ρ=rho, ι=iota)
    return None


@_law("removal-distributivity", "(σ ⊗ τ) Ⓡ ρ = σ ⊗ (τ Ⓡ ρ)", removal=True)
def _removal_distributivity(c: _Cases) -> Optional[str]:
    sigma, tau, rho = (c.sample(c.domain()) for _ in range(3))
    ok, deviation = c.close(sigma.combine(tau).remove(rho), sigma.combine(tau.remove(rho)))
    return None if ok else _mismatch(deviation, σ=sigma, τ=tau, ρ=rho)


@_law("removal-by-identity", "σ Ⓡ ι_r = σ for r ⊆ s", removal=True)
def _removal_by_identity(c: _Cases) -> Optional[str]:
    sigma = c.sample(c.domain())
    iota = c.instance.identity(c.subscope(sigma.domain))
    ok, deviation = c.close(sigma.remove(iota), sigma)
    return None if ok else _mismatch(deviation, σ=sigma)


@_law("removal-cancels", "[(σ ⊗ ρ) Ⓡ ρ] ⊗ ρ = σ ⊗ ρ", removal=True)
def _removal_cancels(c: _Cases) -> Optional[str]:
    sigma, rho = c.sample(c.domain()), c.sample(c.domain())
    joint = sigma.combine(rho)
    ok, deviation = c.close(joint.remove(rho).combine(rho), joint)
    return None if ok else _mismatch(deviation, σ=sigma, ρ=rho)


@_law("inverse-commutes", "ρ⁻¹ ⊗ ρ = ρ ⊗ ρ⁻¹", removal=True)
def _inverse_commutes(c: _Cases) -> Optional[str]:
    rho = c.sample(c.domain())
    ok, deviation = c.close(rho.inverse().combine(rho), rho.combine(rho.inverse()))
    return None if ok else _mismatch(deviation, ρ=rho)


@_law("removal-is-inverse-combination", "σ Ⓡ ρ = σ ⊗ ρ⁻¹", removal=True)
def _removal_is_inverse_combination(c: _Cases) -> Optional[str]:
    sigma, rho = c.sample(c.domain()), c.sample(c.domain())
    ok, deviation = c.close(sigma.remove(rho), sigma.combine(rho.inverse()))
    return None if ok else _mismatch(deviation, σ=sigma, ρ=rho)


@_law("marginal-removal-roundtrip", "(ρ Ⓡ ρ↓r) ⊗ ρ↓r = ρ", removal=True)
def _marginal_removal_roundtrip(c: _Cases) -> Optional[str]:
    rho = c.sample(c.domain())
    marginal = rho.marginalize(c.subscope(rho.domain).scope)
    ok, deviation = c.close(rho.remove(marginal).combine(marginal), rho)
    return None if ok else _mismatch(deviation, ρ=rho)


# ============================================================================
# Runner
# ============================================================================

def laws(removal: bool = True) -> Iterator[Tuple[str, str]]:
    """(name, statement) of every registered law"""
    for name, law, needs_removal, _ in _LAWS:
        if removal or not needs_removal:
            yield name, law


def _default_variables() -> List[Variable]:
    return [Variable(k, name, ("0", "1")) for k, name in enumerate("ABC")]


def run_axiom_suite(instance: Type[Valuation], sampler: Optional[Sampler] = None, *,
                    variables: Optional[Sequence[Variable]] = None, cases: int = 200,
                    seed: int = 0, max_scope: int = 2,
                    settings: Settings = Presets.default) -> AxiomReport:
    """
    Check every law of the algebra on ``cases`` random cases.

    Removal laws run only for instances that support removal. Exceptions are
    reported as failures with the exception as the witness.
    """
    if sampler is None:
        sampler = instance.random  # type: ignore[attr-defined]
    rng = np.random.default_rng(seed)
    context = _Cases(instance, sampler, variables or _default_variables(), rng,
                     settings, max_scope)
    report = AxiomReport(instance.__name__)
    for name, law, needs_removal, check in _LAWS:
        if needs_removal and not instance.supports_removal:
            continue
        witness = None
        done = 0
        for _ in range(cases):
            done += 1
            try:
                witness = check(context)
            except Exception as error:  # failures are report entries
                witness = f"{type(error).__name__}: {error}"
            if witness is not None:
                break
        report.results.append(AxiomResult(name, law, witness is None, done, witness))
        logger.debug("%s %s after %d cases", name, "holds" if witness is None else "fails", done)
    logger.info("axiom suite for %s: %d laws, %d failures", instance.__name__,
                len(report.results), len(report.failures()))
    return report
