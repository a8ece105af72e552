"""Counting the conjugacy classes inside each family left by the classifier.

For a family (c, d) the coordinates j in d are processed in ascending
order.  The set K of centralizer parameters t that fix everything seen so far
acts on coordinate j by translation with the residual R_j(t), so the class
representatives for that coordinate are the cosets of R_j(K):

* R_j = 0 on K: b_j is arbitrary (kind B) and K is unchanged;
* R_j surjective: b_j can be taken to be 0 and K shrinks by one dimension;
* R_j(K) of index p: b_j is one of p coset representatives (kind C) and the
  kernel is p q^(dim K - 1).

Surjectivity is recognised from a t-variable occurring only linearly (or
only as a p-th power) with a coefficient known to be nonzero, and otherwise
from the adjoint of the additive map: for R = sum_l alpha_l t_l^p + beta_l t_l
the image has index |{y : alpha_l y = (-beta_l)^p y^p for all l}|.  When the
decision depends on whether a coefficient vanishes, the analysis branches on
that condition.  Anything outside these forms is reported as a manual
family and kept out of automatic totals.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction

from .classifier import Family
from .polys import Poly
from .symbolic import SymbolicElement, SymbolicRing, exact_quotient
from .vpoly import ClassCountPolynomial

V = ClassCountPolynomial.v()


class ParameterKind(Enum):
    A = "a"  # any element of F_q^x
    B = "b"  # any element of F_q
    C = "c"  # one of p coset representatives
    D = "d"  # F_q^x minus one value
    E = "e"  # one determined nonzero value
    F = "f"  # zero or one determined nonzero value
    G = "g"  # one of q/p cosets of a subgroup of order p
    ZERO = "0"  # coordinate absent from the representative

    def factor(self, p: int) -> ClassCountPolynomial:
        return {
            ParameterKind.A: V,
            ParameterKind.B: ClassCountPolynomial.v_plus(1),
            ParameterKind.C: ClassCountPolynomial.const(p),
            ParameterKind.D: ClassCountPolynomial.v_plus(-1),
            ParameterKind.E: ClassCountPolynomial.const(1),
            ParameterKind.F: ClassCountPolynomial.const(2),
            ParameterKind.G: ClassCountPolynomial((Fraction(1, p), Fraction(1, p))),
            ParameterKind.ZERO: ClassCountPolynomial.const(1),
        }[self]


class UnhandledResidualForm(Exception):
    def __init__(self, family: Family, j: int, residual: SymbolicElement, reason: str = ""):
        super().__init__(f"family {family.representative()}: residual {j} = {residual} ({reason})")
        self.family = family
        self.j = j
        self.residual = residual
        self.reason = reason


class ManualFamiliesPresent(Exception):
    def __init__(self, families):
        names = ", ".join(f.representative() for f in families)
        super().__init__(f"{len(families)} families need manual analysis: {names}")
        self.families = families


@dataclass(frozen=True)
class Branch:
    conditions: tuple[str, ...]
    kinds: tuple[tuple[int, ParameterKind], ...]
    count: ClassCountPolynomial
    centralizer: tuple[int, int]  # (constant factor m, exponent e): |C_U(y)| = m q^e

    def kind_map(self) -> dict[int, ParameterKind]:
        return dict(self.kinds)

    def representative(self) -> str:
        parts = []
        for j, kind in self.kinds:
            if kind is not ParameterKind.ZERO:
                parts.append(f"x_{j}({kind.value}_{j})")
        return "".join(parts) if parts else "1"

    def centralizer_str(self) -> str:
        m, e = self.centralizer
        q = "q" if e == 1 else f"q^{e}"
        if e == 0:
            return str(m)
        return q if m == 1 else f"{m}{q}"


@dataclass(frozen=True)
class CountExpression:
    family: Family
    branches: tuple[Branch, ...]
    manual: str | None = None

    @property
    def total(self) -> ClassCountPolynomial:
        out = ClassCountPolynomial(())
        for b in self.branches:
            out = out + b.count
        return out


@dataclass
class _State:
    kinds: dict[int, ParameterKind]
    nonzero_vars: set[int]  # 0-based a-variable indices known to be nonzero
    nonzero_exprs: list[SymbolicElement]
    pending: list[tuple[int, SymbolicElement]]
    dim: int
    mult: int
    conditions: list[str]
    # t-slots reused for discrete kernel parameters ranging over F_p
    discrete: set[int] = field(default_factory=set)

    def copy(self) -> "_State":
        return _State(dict(self.kinds), set(self.nonzero_vars), list(self.nonzero_exprs),
                      list(self.pending), self.dim, self.mult, list(self.conditions),
                      set(self.discrete))


class _Manual(Exception):
    def __init__(self, j: int, residual: SymbolicElement, reason: str):
        super().__init__(reason)
        self.j, self.residual, self.reason = j, residual, reason


class _Branch(Exception):
    def __init__(self, states):
        super().__init__("branch")
        self.states = states


def _known_nonzero(h: SymbolicElement, st: _State, depth: int = 0) -> bool:
    if h.is_zero():
        return False
    ring = h.ring
    pr = ring.poly_ring
    num = h.num
    # positive monomial content must consist of nonzero variables
    for v in num.variables():
        if min(pr.exponent(m, v) for m in num.terms) > 0 and v not in st.nonzero_vars:
            return False
    num = _radical_form(num, ring.p)
    if num.is_constant():
        return True
    if depth > 4:
        return False
    for e in st.nonzero_exprs:
        en = _radical_form(e.num, ring.p)
        if en.is_constant():
            continue
        qt = exact_quotient(num, en)
        if qt is not None and _known_nonzero(SymbolicElement(ring, qt), st, depth + 1):
            return True
    return False


def _radical_form(num: Poly, p: int) -> Poly:
    """Strip the monomial content and every p-th power (Frobenius is injective)."""
    num = num.without_content()
    while not num.is_constant() and (root := num.pth_root(p)) is not None:
        num = root
    return num


def _drop_known_factors(num: Poly, st: _State, p: int) -> Poly:
    ring = num.ring
    changed = True
    while changed:
        changed = False
        for e in st.nonzero_exprs:
            en = _radical_form(e.num, p)
            if en.is_constant():
                continue
            qt = exact_quotient(num, en)
            if qt is not None:
                num = _radical_form(qt, p)
                changed = True
    return num


def _var_name(k: int, st: _State, family: Family) -> str:
    j = k + 1
    return f"a_{j}" if j in family.c else f"b_{j}"


def _subst_pending_t(st: _State, l: int, repl: SymbolicElement) -> None:
    st.pending = [(j, r.substitute(l, repl)) for j, r in st.pending]


def _subst_a(st: _State, k: int, repl: SymbolicElement) -> None:
    st.pending = [(j, r.substitute_a(k, repl)) for j, r in st.pending]
    st.nonzero_exprs = [e.substitute_a(k, repl) for e in st.nonzero_exprs]
    st.nonzero_exprs = [e for e in st.nonzero_exprs if not e.t_free() or not e.num.is_constant()]


def _set_zero(st: _State, j: int, ring: SymbolicRing) -> None:
    """Coordinate j is dropped from the representative, so b_j := 0 downstream."""
    st.kinds[j] = ParameterKind.ZERO
    _subst_a(st, j - 1, ring.zero())


def _reduce_discrete(R: SymbolicElement, st: _State, p: int) -> SymbolicElement:
    """Apply e^p = e for the discrete kernel parameters."""
    ring = R.ring
    vs = [ring.t_var(l) for l in st.discrete if R.involves_t(l)]
    if not vs:
        return R
    pr = ring.poly_ring
    terms: dict[int, int] = {}
    for m, c in R.num.terms.items():
        exps = list(pr.exponents(m))
        for v in vs:
            if exps[v] > 0:
                exps[v] = (exps[v] - 1) % (p - 1) + 1
        mm = pr.pack(exps)
        terms[mm] = (terms.get(mm, 0) + c) % p
    num = Poly(pr, {m: c for m, c in terms.items() if c})
    return SymbolicElement(ring, num, R.den if R.has_denominator else None)


def _frobenius(elem: SymbolicElement, keep: set[int]) -> SymbolicElement:
    """Reparametrize x -> x^p for every variable except ``keep``.

    Frobenius is a bijection of F_q, so this changes neither the solution
    sets of the branch conditions nor the images of the residuals.
    """
    ring = elem.ring
    vs = [v for v in range(2 * ring.N) if v not in keep]
    num = elem.num.raise_vars(vs, ring.p)
    den = elem.den.raise_vars(vs, ring.p) if elem.has_denominator else None
    return SymbolicElement(ring, num, den)


def _reparametrize(st: _State, keep: set[int], times: int) -> None:
    for _ in range(times):
        st.pending = [(j, _frobenius(r, keep)) for j, r in st.pending]
        st.nonzero_exprs = [_frobenius(e, keep) for e in st.nonzero_exprs]


def _p_adic_exponent(e: int, p: int) -> int | None:
    """k with e = p^k, or None."""
    k = 0
    while e % p == 0:
        e //= p
        k += 1
    return k if e == 1 else None


def _strip_power(st: _State, p: int) -> None:
    """Replace the head residual S^(p^k) by S, reparametrizing everything else.

    The equation S^(p^k) = 0 and the index of the image are unchanged.
    """
    j, R = st.pending[0]
    ring = R.ring
    tv = R.t_variables()
    if not tv or tv & st.discrete:
        return
    pr = ring.poly_ring
    tvars = [ring.t_var(l) for l in tv]
    k = min(_valuation(pr.exponent(m, v), p) for m in R.num.terms for v in tvars if pr.exponent(m, v))
    if k == 0:
        return
    _reparametrize(st, set(tvars), k)
    _, R = st.pending[0]
    num, den = R.num, R.den
    for _ in range(k):
        num = num.pth_root(p)
        den = den.pth_root(p) if den is not None else None
        if num is None or den is None:
            raise AssertionError("reparametrized residual is not a p-th power")
    st.pending[0] = (j, SymbolicElement(ring, num, den if R.has_denominator else None))


def _valuation(e: int, p: int) -> int:
    k = 0
    while e % p == 0:
        e //= p
        k += 1
    return k


def _tail(st: _State) -> _State:
    out = st.copy()
    out.pending = out.pending[1:]
    return out


def _easy_surjective(R: SymbolicElement, st: _State, p: int) -> bool:
    for l in R.t_variables():
        if l in st.discrete:
            continue
        g = {e: c for e, c in R.coefficients_in_t(l).items() if e}
        if len(g) == 1:
            (e, h), = g.items()
            if _p_adic_exponent(e, p) is not None and h.t_free() and _known_nonzero(h, st):
                return True
    return False


def _promote_surjective(st: _State) -> bool:
    """Move a later residual that is onto by itself to the front.

    K acts on the free coordinates by translation through an additive map,
    so the orbit count does not depend on the order in which coordinates are
    fixed, provided a residual never refers to an undecided coordinate.
    """
    p = st.pending[0][1].ring.p
    undecided = {j - 1 for j, _ in st.pending}
    for idx in range(1, len(st.pending)):
        _, R = st.pending[idx]
        if R.a_variables() & undecided:
            continue
        if _easy_surjective(_reduce_discrete(R, st, p), st, p):
            st.pending.insert(0, st.pending.pop(idx))
            return True
    return False


def _discrete_image(st: _State, j: int, R: SymbolicElement, tvars, groups, p: int) -> None:
    """R = sum_k w_k e_k over discrete parameters: image F_p w when all w_k are F_p-multiples."""
    ring = R.ring
    if any(set(groups[l]) != {1} for l in tvars):
        raise _Manual(j, R, "nonlinear in discrete kernel parameters")
    w = [groups[l][1] for l in tvars]
    if not all(x.t_free() for x in w) or not _known_nonzero(w[0], st):
        raise _Manual(j, R, "discrete kernel image not decided")
    ratios = [x / w[0] for x in w]
    if not all(r.num.is_constant() and not r.has_denominator for r in ratios):
        raise _Manual(j, R, "discrete kernel image of F_p-rank above one")
    st.pending.pop(0)
    st.kinds[j] = ParameterKind.G
    st.mult //= p
    # kernel: solve for the first discrete parameter
    l0 = tvars[0]
    acc = ring.zero()
    for l, r in zip(tvars[1:], ratios[1:]):
        acc = acc - r * ring.t(l)
    _subst_pending_t(st, l0, acc)
    st.discrete.discard(l0)


def _free_slot(st: _State, family: Family) -> int | None:
    used = {l - 1 for l in family.free_t()} | st.discrete
    for _, r in st.pending:
        used |= r.t_variables()
    return next((l for l in range(family.centralizer_params[0].ring.N) if l not in used), None)


def _inverse_sqrt(k: SymbolicElement) -> SymbolicElement:
    ring = k.ring
    pr = ring.poly_ring
    (m, _), = k.num.terms.items()
    exps = {i: -e // 2 for i, e in enumerate(pr.exponents(m)) if e}
    return SymbolicElement(ring, pr.monomial(exps))


def _pending_involves(st: _State, ls) -> bool:
    return any(r.involves_t(l) for _, r in st.pending for l in ls)


def _branch_on_free_b(st: _State, k: int, family: Family, j: int, R: SymbolicElement):
    ring = R.ring
    zero = st.copy()
    zero.kinds[k + 1] = ParameterKind.ZERO
    _subst_a(zero, k, ring.zero())
    zero.conditions.append(f"b_{k + 1} = 0")
    nonzero = st.copy()
    nonzero.kinds[k + 1] = ParameterKind.A
    nonzero.nonzero_vars.add(k)
    nonzero.conditions.append(f"b_{k + 1} != 0")
    raise _Branch([zero, nonzero])


def _branch_on_coset_rep(st: _State, k: int, family: Family, j: int, R: SymbolicElement, p: int):
    if p != 2:
        raise _Manual(j, R, f"residual depends on the coset representative c_{k + 1} with p = {p}")
    ring = R.ring
    zero = st.copy()
    zero.kinds[k + 1] = ParameterKind.ZERO
    _subst_a(zero, k, ring.zero())
    zero.conditions.append(f"c_{k + 1} = 0")
    nonzero = st.copy()
    nonzero.kinds[k + 1] = ParameterKind.E
    nonzero.nonzero_vars.add(k)
    nonzero.conditions.append(f"c_{k + 1} != 0")
    raise _Branch([zero, nonzero])


def _branch_on_expression(st: _State, E: SymbolicElement, family: Family, j: int, R: SymbolicElement, p: int):
    """Split on E = 0 versus E != 0 by solving E for one of its variables."""
    ring = E.ring
    pr = ring.poly_ring
    num = E.num
    for v in num.variables():
        if min(pr.exponent(m, v) for m in num.terms) > 0 and v not in st.nonzero_vars:
            raise _Manual(j, R, f"cannot split on the vanishing of {E}")
    num = _drop_known_factors(_radical_form(num, p), st, p)
    E = SymbolicElement(ring, num)
    for v in sorted(E.a_variables(), reverse=True):
        kind = st.kinds.get(v + 1)
        if kind not in (ParameterKind.A,):
            continue
        groups = num.coefficients_in(v)
        if len(groups) != 2:
            continue
        e0, e1 = sorted(groups)
        k = e1 - e0
        c = SymbolicElement(ring, groups[e1])
        d = SymbolicElement(ring, groups[e0])
        if not _known_nonzero(c, st):
            continue
        sol = -d / c
        if k != 1:
            if k % p or not _is_p_power(k, p) or not sol.num.is_constant() or sol.has_denominator:
                continue
            # x^(p^e) = s with s in F_p has the unique solution x = s
        if not _known_nonzero(sol, st):
            continue
        name = _var_name(v, st, family)
        equal = st.copy()
        equal.kinds[v + 1] = ParameterKind.E
        _subst_a(equal, v, sol)
        equal.conditions.append(f"{name} = {sol}")
        differ = st.copy()
        differ.kinds[v + 1] = ParameterKind.D
        differ.nonzero_exprs.append(SymbolicElement(ring, num))
        differ.conditions.append(f"{name} != {sol}")
        raise _Branch([equal, differ])
    raise _Manual(j, R, f"cannot split on the vanishing of {E}")


def _is_p_power(k: int, p: int) -> bool:
    while k % p == 0:
        k //= p
    return k == 1


def _process(st: _State, family: Family, p: int) -> None:
    """Consume pending residuals in place; raises _Branch or _Manual."""
    while st.pending:
        j, R = st.pending[0]
        st.pending[0] = (j, _reduce_discrete(R, st, p))
        _strip_power(st, p)
        j, R = st.pending[0]
        ring = R.ring
        if R.is_zero():
            st.pending.pop(0)
            st.kinds[j] = ParameterKind.B
            continue
        tvars = sorted(R.t_variables(), reverse=True)
        groups = {l: {e: c for e, c in R.coefficients_in_t(l).items() if e} for l in tvars}
        # a variable occurring only linearly with a nonzero t-free coefficient
        unknown_coeffs = []
        for l in tvars:
            g = groups[l]
            if l not in st.discrete and set(g) == {1} and g[1].t_free():
                h = g[1]
                if _known_nonzero(h, st):
                    st.pending.pop(0)
                    st.dim -= 1
                    repl = (h * ring.t(l) - R) / h
                    _subst_pending_t(st, l, repl)
                    _set_zero(st, j, ring)
                    break
                unknown_coeffs.append(h)
        else:
            _decide_nonlinear(st, family, p, j, R, tvars, groups, unknown_coeffs)
            continue
        continue


def _free_parameters(st: _State, R: SymbolicElement):
    """0-based indices of parameters of R whose zero/nonzero status is open."""
    free_b, coset = [], []
    for v in sorted(R.a_variables(), reverse=True):
        kind = st.kinds.get(v + 1)
        if kind is ParameterKind.B:
            free_b.append(v)
        elif kind is ParameterKind.C:
            coset.append(v)
    return free_b, coset


def _decide_nonlinear(st, family, p, j, R, tvars, groups, unknown_coeffs):
    ring = R.ring
    free_b, coset = _free_parameters(st, R)
    if free_b:
        _branch_on_free_b(st, free_b[0], family, j, R)
    if coset:
        _branch_on_coset_rep(st, coset[0], family, j, R, p)
    # a variable occurring only as a p^k-th power with nonzero coefficient
    for l in tvars:
        g = groups[l]
        if l in st.discrete or len(g) != 1:
            continue
        (e, alpha), = g.items()
        k = _p_adic_exponent(e, p)
        if k and alpha.t_free() and _known_nonzero(alpha, st):
            rest = R - alpha * ring.t(l) ** e
            st.pending.pop(0)
            st.dim -= 1
            if _pending_involves(st, [l]):
                # alpha^q t^q = -rest^q after x -> x^q (q = p^k), so t = -rest/alpha
                _reparametrize(st, {ring.t_var(l)}, k)
                _subst_pending_t(st, l, -rest / alpha)
            _set_zero(st, j, ring)
            return
    if unknown_coeffs:
        _branch_on_expression(st, unknown_coeffs[0], family, j, R, p)
    # additive map sum_l alpha_l t_l^p + beta_l t_l
    if any(l in st.discrete for l in tvars):
        if all(l in st.discrete for l in tvars):
            _discrete_image(st, j, R, tvars, groups, p)
            return
        raise _Manual(j, R, "residual mixes discrete and free kernel parameters")
    # R = sum_l sum_i c_{l,i} t_l^(p^i).  Its image has index |Y| where Y is the
    # set of y with sum_i (c_{l,i} y)^(p^(m_l - i)) = 0 for every l (m_l the top
    # exponent), i.e. the kernel of the adjoint under the trace form.
    terms = {}
    for l in tvars:
        g = groups[l]
        ks = [_p_adic_exponent(e, p) for e in g]
        if None in ks or not all(x.t_free() for x in g.values()):
            raise _Manual(j, R, "residual is not an additive polynomial")
        terms[l] = {_p_adic_exponent(e, p): c for e, c in g.items()}
    # a pivot alpha t^(p^(k+1)) + beta t^(p^k) with alpha, beta nonzero; other
    # coefficients may vanish without changing the test below
    pivots = [l for l in tvars if len(terms[l]) == 2 and max(terms[l]) - min(terms[l]) == 1]
    if not pivots:
        raise _Manual(j, R, "no two-term variable to locate the adjoint kernel")
    known = [l for l in pivots if all(_known_nonzero(c, st) for c in terms[l].values())]
    if not known:
        coeff = next(c for c in terms[pivots[0]].values() if not _known_nonzero(c, st))
        _branch_on_expression(st, coeff, family, j, R, p)
    l0 = known[0]
    k = min(terms[l0])
    beta, alpha = terms[l0][k], terms[l0][k + 1]
    # nonzero y in Y satisfy y^(p-1) = -alpha/beta^p
    kappa = -alpha / beta**p
    if p == 2:
        y0 = kappa
    elif p == 3 and _is_square_monomial(kappa):
        y0 = ring.one() / _inverse_sqrt(kappa)
    else:
        raise _Manual(j, R, f"image index depends on whether {kappa} is a square in F_q")
    for l in tvars:
        if l == l0:
            continue
        top = max(terms[l])
        val = ring.zero()
        for i, c in terms[l].items():
            val = val + (c * y0) ** (p ** (top - i))
        if val.is_zero():
            continue
        val = SymbolicElement(ring, val.num)
        if _known_nonzero(val, st):
            # y0 is not in Y, so Y = {0} and the map is onto
            if _pending_involves(_tail(st), tvars):
                if _promote_surjective(st):
                    return
                raise _Manual(j, R, "kernel of a surjective additive map feeds a later residual")
            st.pending.pop(0)
            st.dim -= 1
            _set_zero(st, j, ring)
            return
        _branch_on_expression(st, val, family, j, R, p)
    # Y = F_p y0: the image has index p
    if _pending_involves(_tail(st), tvars) and _promote_surjective(st):
        return
    st.pending.pop(0)
    st.kinds[j] = ParameterKind.C
    st.dim -= 1
    st.mult *= p
    if not _pending_involves(st, tvars):
        return
    if any(sorted(terms[l]) != [0, 1] for l in tvars):
        raise _Manual(j, R, "kernel of an index-p map with Frobenius-twisted terms feeds a later residual")
    # phi_l(t) = alpha_l t^p + beta_l t = psi(beta_l t) with psi(s) = s - s^p / y0^(p-1)
    # (common adjoint kernel), so the kernel is sum_l beta_l t_l = e / y0, e in F_p
    slot = _free_slot(st, family)
    if slot is None:
        raise _Manual(j, R, "no spare parameter slot for the kernel of an index-p map")
    acc = ring.t(slot) / y0
    for l in tvars[1:]:
        acc = acc - terms[l][0] * ring.t(l)
    _subst_pending_t(st, tvars[0], acc / terms[tvars[0]][0])
    st.discrete.add(slot)


def _is_square_monomial(k: SymbolicElement) -> bool:
    """Nonzero square in every F_q: coefficient 1 (a square in F_3) and even exponents."""
    if k.has_denominator or not k.num.is_monomial():
        return False
    (m, c), = k.num.terms.items()
    if c != 1:
        return False
    pr = k.ring.poly_ring
    return all(e % 2 == 0 for e in pr.exponents(m))


def analyze_family(fam: Family, p: int) -> CountExpression:
    """Branches, class counts and centralizer orders for one family."""
    kinds = {j: ParameterKind.A for j in fam.c}
    start = _State(
        kinds=kinds,
        nonzero_vars={j - 1 for j in fam.c},
        nonzero_exprs=[],
        pending=[(j, fam.residuals[j]) for j in sorted(fam.d)],
        dim=len(fam.free_t()),
        mult=1,
        conditions=[],
    )
    done: list[_State] = []
    stack = [start]
    while stack:
        st = stack.pop()
        try:
            _process(st, fam, p)
        except _Branch as br:
            stack.extend(reversed(br.states))
            continue
        except _Manual as m:
            return CountExpression(fam, (), manual=f"residual {m.j} = {m.residual}: {m.reason}")
        done.append(st)
    branches = []
    for st in done:
        count = ClassCountPolynomial.const(1)
        for j in sorted(st.kinds):
            count = count * st.kinds[j].factor(p)
        branches.append(
            Branch(tuple(st.conditions), tuple(sorted(st.kinds.items())), count, (st.mult, st.dim))
        )
    return CountExpression(fam, tuple(branches))


def centralizer_order(fam: Family, branch: Branch) -> tuple[int, int]:
    """(m, e) with |C_U(y)| = m q^e for representatives in the branch."""
    return branch.centralizer


def total_count(expressions: list[CountExpression]) -> ClassCountPolynomial:
    manual = [e.family for e in expressions if e.manual]
    if manual:
        raise ManualFamiliesPresent(manual)
    out = ClassCountPolynomial(())
    for e in expressions:
        out = out + e.total
    return out


def mass_formula_holds(expressions: list[CountExpression], N: int) -> bool:
    """sum size * q^N / |C| == q^N as a polynomial identity in v."""
    total = [Fraction(0)]
    for e in expressions:
        for b in e.branches:
            m, ex = b.centralizer
            term = b.count * ClassCountPolynomial.q_power(N - ex)
            coeffs = [Fraction(c, m) for c in term.coeffs]
            if len(coeffs) > len(total):
                total += [Fraction(0)] * (len(coeffs) - len(total))
            for i, c in enumerate(coeffs):
                total[i] += c
    target = ClassCountPolynomial.q_power(N).coeffs
    total += [Fraction(0)] * max(0, len(target) - len(total))
    target = list(target) + [0] * (len(total) - len(target))
    return all(a == b for a, b in zip(total, target))
