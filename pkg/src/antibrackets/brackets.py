"""The hierarchy of higher antibrackets of a linear operator.

Four independent constructions of the same operators are provided:

* ``direct`` -- the signed shuffle sum over f(product of a block) times the
  complementary product;
* ``recursion`` -- the two-argument recursion expanding the last slot;
* ``bracket`` -- the bracket recursion (1/n) sum_h (-1)^h [mu_h, .], which
  also serves as the definition on associative noncommutative signatures;
* ``exponential`` -- the gauge-trivialization exp(-sum K_n rho_n) applied to
  the lifted operator, with the Koszul numbers K_n.

On top of the constructions live the identity checks: the inversion formula,
the generalized Jacobi identities, the L-infinity property of square-zero odd
operators, and the order-of-differential-operator vanishing criterion.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .combinatorics import koszul_numbers_recursive
from .multilinear import (
    MultiOp,
    canonical_tuples,
    is_zero_op,
    lift_endo,
    mu_for,
    nr_bracket,
    op_add,
    op_scale,
    op_sum,
    ops_equal,
)
from .rational import format_rational, rat
from .superalgebra import (
    AlgebraElement,
    EndoOp,
    Signature,
    identity_endo,
    koszul_sign,
    shuffles,
    supercommutator,
)

__all__ = [
    "AntibracketHierarchy",
    "phi_direct",
    "phi_direct_op",
    "phi_recursion",
    "phi_bracket_recursion",
    "phi_exponential",
    "phi_hierarchy",
    "exp_rho_family",
    "inversion_check",
    "jacobi_operators",
    "jacobi_check",
    "linfinity_check",
    "identity_hierarchy",
    "differential_order_check",
    "hierarchy_to_json",
]


@dataclass
class AntibracketHierarchy:
    """Brackets n -> Phi^n of one source operator, up to a maximum degree."""

    source: EndoOp
    max_degree: int
    brackets: dict = field(default_factory=dict)
    method: str = "direct"

    def __getitem__(self, n: int) -> MultiOp:
        return self.brackets[n]


def phi_direct_op(f: EndoOp, n: int) -> MultiOp:
    """Phi^n_f by the defining shuffle formula (commutative signatures)."""
    sig = f.signature
    if not sig.commutative:
        raise ValueError("the shuffle formula needs a commutative signature")
    if n < 1:
        raise ValueError("n must be >= 1")

    def eval_basis(tup):
        parities = [sig.parity(m) for m in tup]
        acc = {}
        positions = range(n)
        mul = sig.mul_monomials
        for k in range(1, n + 1):
            outer_sign = (-1) ** (n - k)
            for block in itertools.combinations(positions, k):
                rest = tuple(i for i in positions if i not in block)
                prod = _monomial_product(sig, tup, block)
                if prod is None:
                    continue
                psign, pmono = prod
                val = f.apply(pmono)
                if val.is_zero():
                    continue
                if rest:
                    rprod = _monomial_product(sig, tup, rest)
                    if rprod is None:
                        continue
                    rsign, rmono = rprod
                else:
                    rsign, rmono = 1, None
                total = (
                    outer_sign * psign * rsign
                    * koszul_sign(block + rest, parities)
                )
                for mono, c in val.terms.items():
                    if rmono is None:
                        s, out = 1, mono
                    else:
                        s, out = mul(mono, rmono)
                        if not s:
                            continue
                    acc[out] = acc.get(out, 0) + total * s * c
        return AlgebraElement(sig, acc)

    return MultiOp(sig, n - 1, f.parity, eval_basis)


def _monomial_product(sig, tup, indices):
    sign = 1
    acc = tup[indices[0]]
    for i in indices[1:]:
        s, acc = sig.mul_monomials(acc, tup[i])
        if not s:
            return None
        sign *= s
    return (sign, acc)


def phi_direct(f: EndoOp, args) -> AlgebraElement:
    """Phi^n_f evaluated on a tuple of monomials or elements, n = len(args)."""
    return phi_direct_op(f, len(args))(*args)


def _recursion_ops(f: EndoOp, N: int) -> dict:
    sig = f.signature
    if not sig.commutative:
        raise ValueError("the recursive formula needs a commutative signature")
    ops = {1: lift_endo(f)}
    for r in range(2, N + 1):
        prev = ops[r - 1]

        def eval_basis(tup, prev=prev):
            front, b, c = tup[:-2], tup[-2], tup[-1]
            s, bc = sig.mul_monomials(b, c)
            t1 = prev.value(front + (bc,)).scale(s) if s else sig.element()
            t2 = prev.value(front + (b,)).mul_monomial(c)
            t3 = prev.value(front + (c,)).mul_monomial(b)
            swap = (-1) ** (sig.parity(b) * sig.parity(c))
            return t1 - t2 - t3.scale(swap)

        ops[r] = MultiOp(sig, r - 1, f.parity, eval_basis)
    return ops


def phi_recursion(f: EndoOp, n: int) -> MultiOp:
    """Phi^n_f by the last-slot recursion."""
    return _recursion_ops(f, n)[n]


def _bracket_ops(f: EndoOp, N: int) -> dict:
    sig = f.signature
    mus = {h: mu_for(sig, h) for h in range(1, N)}
    ops = {1: lift_endo(f)}
    for n in range(1, N):
        terms = [
            op_scale(nr_bracket(mus[h], ops[n - h + 1]), (-1) ** h)
            for h in range(1, n + 1)
        ]
        ops[n + 1] = op_scale(op_sum(terms), rat(1, n))
    return ops


def phi_bracket_recursion(f: EndoOp, n: int) -> MultiOp:
    """Phi^n_f by the bracket recursion; the definition in the associative case."""
    return _bracket_ops(f, n)[n]


def exp_rho_family(base: MultiOp, coefficients: dict, max_degree: int) -> dict:
    """Components of exp(sum_n coefficients[n] * rho_n) applied to ``base``.

    Returns a map from operator degree to component.  Each rho_n raises the
    degree by n, so only finitely many words contribute below the cutoff and
    no convergence argument is needed.
    """
    sig = base.signature
    mus = {n: mu_for(sig, n) for n in coefficients}
    result = {base.degree: base}
    term = {base.degree: base}
    k = 1
    while term and min(term) < max_degree:
        new = {}
        for d, op in term.items():
            for n, c in coefficients.items():
                if d + n > max_degree or not c:
                    continue
                piece = op_scale(nr_bracket(mus[n], op), rat(c, k))
                key = d + n
                new[key] = op_add(new[key], piece) if key in new else piece
        term = new
        for d, op in term.items():
            result[d] = op_add(result[d], op) if d in result else op
        k += 1
    return result


def phi_exponential(f: EndoOp, N: int) -> AntibracketHierarchy:
    """The whole hierarchy from the gauge trivialization exp(-sum K_n rho_n) f."""
    if N < 1:
        raise ValueError("N must be >= 1")
    koszul = koszul_numbers_recursive(max(N - 1, 1))
    coeffs = {n: -koszul[n] for n in range(1, N)}
    components = exp_rho_family(lift_endo(f), coeffs, N - 1)
    brackets = {n: components[n - 1] for n in range(1, N + 1)}
    return AntibracketHierarchy(f, N, brackets, method="exponential")


_METHODS = {
    "direct": lambda f, N: {n: phi_direct_op(f, n) for n in range(1, N + 1)},
    "recursion": _recursion_ops,
    "bracket": _bracket_ops,
    "exponential": lambda f, N: phi_exponential(f, N).brackets,
}


def phi_hierarchy(f: EndoOp, N: int, method: str = "direct") -> AntibracketHierarchy:
    """Hierarchy up to degree N by the chosen construction."""
    if method not in _METHODS:
        raise ValueError(f"unknown method {method!r}")
    return AntibracketHierarchy(f, N, _METHODS[method](f, N), method=method)


def default_method(signature: Signature) -> str:
    return "direct" if signature.commutative else "bracket"


def inversion_check(f: EndoOp, n: int, args) -> bool:
    """f(a_1...a_n) == sum over shuffles of Phi^k_f(block) * rest, exactly."""
    sig = f.signature
    args = [
        a if isinstance(a, AlgebraElement) else sig.monomial_element(a)
        for a in args
    ]
    if len(args) != n:
        raise ValueError("argument count must equal n")
    parities = []
    for a in args:
        p = a.parity()
        if p is None:
            raise ValueError("inversion check needs homogeneous arguments")
        parities.append(p)
    prod = args[0]
    for a in args[1:]:
        prod = prod * a
    lhs = f.apply(prod)
    phis = {k: phi_direct_op(f, k) for k in range(1, n + 1)}
    rhs = sig.element()
    for k in range(1, n + 1):
        for perm in shuffles(k, n - k):
            sign = koszul_sign(perm, parities)
            val = phis[k](*(args[i] for i in perm[:k]))
            for i in perm[k:]:
                val = val * args[i]
            rhs = rhs + val.scale(sign)
    return lhs == rhs


def jacobi_operators(f: EndoOp, g: EndoOp, n: int, method=None):
    """Both sides of the generalized Jacobi identity, as operators."""
    sig = f.signature
    if method is None:
        method = default_method(sig)
    build = _METHODS[method]
    h = supercommutator(f, g)
    lhs = build(h, n)[n]
    phis_f = build(f, n)
    phis_g = build(g, n)
    rhs = op_sum(
        nr_bracket(phis_f[i], phis_g[n + 1 - i]) for i in range(1, n + 1)
    )
    return lhs, rhs


def jacobi_check(
    f: EndoOp, g: EndoOp, n: int, method=None, max_total_degree=None
) -> bool:
    """Phi^n_[f,g] == sum_i [Phi^i_f, Phi^(n+1-i)_g] as operator tables."""
    lhs, rhs = jacobi_operators(f, g, n, method)
    return ops_equal(lhs, rhs, max_total_degree)


def linfinity_check(delta: EndoOp, N: int, max_total_degree=None) -> bool:
    """Vanishing of every generalized Jacobi sum of a square-zero odd operator."""
    if delta.parity != 1:
        raise ValueError("operator must be odd")
    if not delta.compose(delta).is_zero():
        raise ValueError("operator must be square-zero")
    phis = _METHODS[default_method(delta.signature)](delta, N)
    for n in range(1, N + 1):
        total = op_sum(
            nr_bracket(phis[i], phis[n + 1 - i]) for i in range(1, n + 1)
        )
        if not is_zero_op(total, max_total_degree):
            return False
    return True


def identity_hierarchy(signature: Signature, N: int) -> AntibracketHierarchy:
    """Hierarchy of the identity operator; components equal (-1)^n mu_n."""
    return phi_hierarchy(identity_endo(signature), N, method="bracket")


def differential_order_check(f: EndoOp, n: int, max_total_degree=None) -> bool:
    """Whether Phi^(n+1)_f vanishes, i.e., f(1) = 0 and f has order <= n."""
    sig = f.signature
    if not sig.unital:
        raise ValueError("the order criterion needs a unital signature")
    if not sig.commutative:
        raise ValueError("the order criterion needs a commutative signature")
    return is_zero_op(phi_direct_op(f, n + 1), max_total_degree)


def hierarchy_to_json(h: AntibracketHierarchy, max_total_degree=None) -> list:
    """JSON-ready tables: [{"n": k, "table": [[tuple, element], ...]}, ...]."""
    sig = h.source.signature
    out = []
    for n in sorted(h.brackets):
        op = h.brackets[n]
        table = []
        for tup in canonical_tuples(sig, op.arity, max_total_degree):
            val = op.value(tup)
            if val.is_zero():
                continue
            table.append(
                [
                    [sig.monomial_str(m) for m in tup],
                    {
                        sig.monomial_str(m): format_rational(c)
                        for m, c in sorted(
                            val.terms.items(), key=lambda kv: sig.index_of(kv[0])
                        )
                    },
                ]
            )
        out.append({"n": n, "table": table})
    return out
