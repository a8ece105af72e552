"""Successive-quotient orbit classification of U acting on itself by conjugation.

The state after step i is a list of families (c, d).  A family stands for the
elements prod_{j in c or d} x_j(a_j) modulo M_i with a_j nonzero for j in c
and arbitrary for j in d, together with a generic element of an
approximation D(y M_i) of the centralizer, written as a vector of symbolic
coordinates in the indeterminates t_1..t_N.

Step i -> i+1 conjugates the family template by the generic centralizer
element and inspects coordinate i+1:

* zero: ramification, the family splits into (c + {i+1}, d) and (c, d);
* a variable t_l occurring once, linearly, with a monomial coefficient:
  inert, t_l is solved for and eliminated from the centralizer;
* otherwise: unresolved, i+1 joins d and the coordinate is kept as a
  residual for the final analysis.

Indices in the public data (c, d, normalized, residual keys, trace) are
1-based, as in the class tables.  Internally the engine is 0-based.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Union

from .engine import formulas_for
from .roots import RootSystem, check_supported
from .snf import unit_invariant_factors
from .symbolic import SingleLinearTerm, SymbolicElement, SymbolicRing, analyze_linear_occurrence


class CentralizerViolation(AssertionError):
    """The generic centralizer element failed to fix the truncated template."""


@dataclass(frozen=True)
class Ramification:
    pass


@dataclass(frozen=True)
class Inert:
    l: int  # 1-based index of the eliminated t-variable
    h: SymbolicElement


@dataclass(frozen=True)
class Unresolved:
    pass


ClassificationOutcome = Union[Ramification, Inert, Unresolved]


@dataclass(frozen=True)
class StepRecord:
    step: int
    g: SymbolicElement
    outcome: ClassificationOutcome
    substitution: tuple[int, SymbolicElement] | None = None


@dataclass(frozen=True, eq=False)
class Family:
    c: frozenset[int]
    d: frozenset[int]
    normalized: frozenset[int]
    centralizer_params: tuple[SymbolicElement, ...]
    residuals: dict[int, SymbolicElement]
    step: int
    trace: tuple[StepRecord, ...] = ()

    @property
    def support(self) -> frozenset[int]:
        return self.c | self.d

    def sort_key(self):
        return (len(self.support), sorted(self.c), sorted(self.d))

    def representative(self) -> str:
        """Template such as 'x_2(a_2) x_3(a_3) x_7(b_7)'."""
        parts = []
        for j in sorted(self.support):
            sym = "a" if j in self.c else "b"
            parts.append(f"x_{j}({sym}_{j})")
        return " ".join(parts) if parts else "1"

    def free_t(self) -> set[int]:
        """1-based indices of t-variables still present in the centralizer."""
        out = set()
        for f in self.centralizer_params:
            out |= f.t_variables()
        return {l + 1 for l in out}


@dataclass(frozen=True)
class ClassifierConfig:
    normalize: bool = True
    check_centralizer: bool = True
    record_trace: bool = False


def initial_family(rs: RootSystem, ring: SymbolicRing) -> Family:
    params = tuple(ring.t(j) for j in range(rs.N))
    return Family(frozenset(), frozenset(), frozenset(), params, {}, 0)


def template(fam: Family, ring: SymbolicRing) -> list:
    """Coordinates of y: a_j (or 1 once normalized) on the support, None elsewhere."""
    out: list = [None] * ring.N
    for j in fam.support:
        out[j - 1] = ring.one() if j in fam.normalized else ring.a(j - 1)
    return out


def step_conjugate(fam: Family, rs: RootSystem, p: int, ring: SymbolicRing | None = None,
                   *, check: bool = True) -> list[SymbolicElement]:
    """Coordinates g_1..g_{i+1} of x y x^{-1} modulo M_{i+1}.

    With ``check`` the coordinates up to i are compared against the template:
    they must reproduce a_j on c, vanish off c and d, and on d they define the
    current residuals.
    """
    ring = ring or SymbolicRing(p, rs.N)
    i = fam.step
    if i >= rs.N:
        raise ValueError("family already processed through the last step")
    _, _, conj = formulas_for(rs).reduced(p)
    y = template(fam, ring)
    values = list(fam.centralizer_params) + y
    one = ring.one()
    lo = 0 if check else i
    g = []
    for k in range(lo, i + 1):
        g.append(conj[k].evaluate(values, one, ring.from_int))
    if not check:
        return [None] * i + g  # type: ignore[list-item]
    for k in range(i):
        j = k + 1
        if j in fam.d:
            continue
        expect = y[k] if y[k] is not None else ring.zero()
        if g[k] != expect:
            raise CentralizerViolation(
                f"coordinate {j} of the conjugate is {g[k]}, expected {expect}"
            )
    return g


def detect_case(g_next: SymbolicElement, fam: Family) -> ClassificationOutcome:
    if g_next.is_zero():
        return Ramification()
    for l in sorted(g_next.t_variables(), reverse=True):
        occ = analyze_linear_occurrence(g_next, l)
        if not isinstance(occ, SingleLinearTerm):
            continue
        # the coefficient may only involve coordinates known to be nonzero
        if not all(k + 1 in fam.c for k in occ.h.a_variables()):
            continue
        if any(r.involves_t(l) for r in fam.residuals.values()):
            continue
        return Inert(l + 1, occ.h)
    return Unresolved()


def torus_normalizable(rs: RootSystem, indices) -> bool:
    rows = [list(rs.positive_roots[j - 1].coeffs) for j in sorted(indices)]
    return unit_invariant_factors(rows)


def torus_normalize(fam: Family, rs: RootSystem) -> Family:
    """Greedily extend the normalized set, scanning c in ascending order."""
    chosen = set()
    for j in sorted(fam.c):
        if torus_normalizable(rs, chosen | {j}):
            chosen.add(j)
    new = frozenset(chosen)
    if new == fam.normalized:
        return fam
    params = fam.centralizer_params
    residuals = dict(fam.residuals)
    for j in new - fam.normalized:
        params = tuple(f.specialize_a(j - 1) for f in params)
        residuals = {k: r.specialize_a(j - 1) for k, r in residuals.items()}
    return replace(fam, normalized=new, centralizer_params=params, residuals=residuals)


def apply_outcome(fam: Family, outcome: ClassificationOutcome, g_next: SymbolicElement,
                  rs: RootSystem, config: ClassifierConfig = ClassifierConfig()) -> list[Family]:
    nxt = fam.step + 1
    record = (StepRecord(nxt, g_next, outcome),) if config.record_trace else ()
    if isinstance(outcome, Ramification):
        grown = replace(fam, c=fam.c | {nxt}, step=nxt, trace=fam.trace + record)
        if config.normalize:
            grown = torus_normalize(grown, rs)
        same = replace(fam, step=nxt, trace=fam.trace + record)
        return [grown, same]
    if isinstance(outcome, Inert):
        l = outcome.l - 1
        ring = g_next.ring
        h = outcome.h
        repl = (h * ring.t(l) - g_next) / h
        params = tuple(f.substitute(l, repl) for f in fam.centralizer_params)
        if config.record_trace:
            record = (StepRecord(nxt, g_next, outcome, (outcome.l, repl)),)
        return [replace(fam, centralizer_params=params, step=nxt, trace=fam.trace + record)]
    residuals = dict(fam.residuals)
    residuals[nxt] = g_next
    return [replace(fam, d=fam.d | {nxt}, residuals=residuals, step=nxt, trace=fam.trace + record)]


def classify(rs: RootSystem, p: int, config: ClassifierConfig = ClassifierConfig()) -> list[Family]:
    """Run all N steps and return the final families in canonical order."""
    check_supported(rs.type_label, rs.rank)
    ring = SymbolicRing(p, rs.N)
    queue = [initial_family(rs, ring)]
    for _ in range(rs.N):
        nxt_queue = []
        for fam in queue:
            g = step_conjugate(fam, rs, p, ring, check=config.check_centralizer)
            g_next = g[fam.step]
            if config.check_centralizer and fam.d:
                # residuals follow the current centralizer parameterization
                y = template(fam, ring)
                residuals = {j: g[j - 1] - y[j - 1] for j in fam.d}
                fam = replace(fam, residuals=residuals)
            outcome = detect_case(g_next, fam)
            nxt_queue.extend(apply_outcome(fam, outcome, g_next, rs, config))
        queue = nxt_queue
    return sorted(queue, key=Family.sort_key)


def unresolved_steps(families: list[Family]) -> int:
    return sum(len(f.d) for f in families)
