"""Operators on polynomials and the universal standard-form coefficients.

The ambient space is the algebra of linear operators on rational polynomials
that kill constants.  The rank-one operators Phi(n, i) sending x^i to
x^(n-i)/(n-i)! span the spaces V^n, the Witt-type generators act on them by
an explicit two-term rule, and expressing the alternating sum
Phi^(n+1) = sum_i (-1)^(n+1-i) Phi(n+1, i) in the induction basis yields the
universal coefficients c_i^n together with the auxiliary coefficient b_n,
which must vanish.  A matrix realization on truncated polynomials is kept as
an independent oracle for the abstract computation, and the module also
hosts the coderivation and duality checks on polynomials.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, factorial

from .combinatorics import koszul_numbers_recursive
from .rational import rat

__all__ = [
    "QxOperator",
    "AbstractPhiCombination",
    "UniversalCoefficients",
    "DegreeOverflowError",
    "SingularMatrixError",
    "phi_ni",
    "phi_n_signed_sum",
    "rho_action",
    "rho_on_phi_ni",
    "rho_abstract",
    "solve_coefficients",
    "conjecture_formula",
    "coefficient_table_entry",
    "bn_zero_witness",
    "coderivation_dn",
    "coderivation_check",
    "duality_check",
    "witt_phi_check",
    "witt_psi_check",
    "rho_bracket_check",
    "solve_linear",
]


class DegreeOverflowError(Exception):
    """A polynomial operation left the degree truncation."""


class SingularMatrixError(Exception):
    """The linear system for the induction-basis coordinates degenerated."""


def _poly_trim(coeffs):
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return coeffs


class QxOperator:
    """Linear operator on polynomials of degree <= bound, killing constants.

    Stored column-wise: ``columns[s]`` is the coefficient list of the image
    of x^s.  Membership in the constants-killing algebra means columns[0] = 0.
    """

    __slots__ = ("bound", "columns")

    def __init__(self, bound: int, columns=None):
        self.bound = bound
        cols = [[] for _ in range(bound + 1)]
        if columns:
            for s, poly in columns.items() if isinstance(columns, dict) else enumerate(columns):
                if s > bound:
                    raise DegreeOverflowError(f"input power {s} exceeds bound {bound}")
                poly = _poly_trim(list(poly))
                if len(poly) > bound + 1:
                    raise DegreeOverflowError(
                        f"image of x^{s} has degree {len(poly) - 1} > {bound}"
                    )
                cols[s] = poly
        if cols[0]:
            raise ValueError("operator must vanish on constants")
        self.columns = cols

    @classmethod
    def zero(cls, bound: int) -> "QxOperator":
        return cls(bound)

    def image(self, s: int):
        """Image of x^s, padded to full length."""
        col = self.columns[s]
        return col + [rat(0)] * (self.bound + 1 - len(col))

    def apply(self, poly):
        out = [rat(0)] * (self.bound + 1)
        for s, c in enumerate(poly):
            if not c:
                continue
            for j, v in enumerate(self.columns[s]):
                if v:
                    out[j] += c * v
        return out

    def __add__(self, other: "QxOperator") -> "QxOperator":
        self._check(other)
        cols = []
        for s in range(self.bound + 1):
            a, b = self.image(s), other.image(s)
            cols.append([x + y for x, y in zip(a, b)])
        return QxOperator(self.bound, cols)

    def __sub__(self, other: "QxOperator") -> "QxOperator":
        return self + other.scale(-1)

    def scale(self, c) -> "QxOperator":
        return QxOperator(
            self.bound, [[c * v for v in col] for col in self.columns]
        )

    def compose(self, other: "QxOperator") -> "QxOperator":
        """self after other."""
        self._check(other)
        return QxOperator(
            self.bound, [self.apply(other.image(s)) for s in range(self.bound + 1)]
        )

    def _check(self, other):
        if self.bound != other.bound:
            raise ValueError("bound mismatch")

    def __eq__(self, other):
        if not isinstance(other, QxOperator):
            return NotImplemented
        return self.bound == other.bound and all(
            _poly_trim(self.image(s)) == _poly_trim(other.image(s))
            for s in range(self.bound + 1)
        )

    def is_zero(self) -> bool:
        return all(not col for col in self.columns)

    def __repr__(self):
        return f"QxOperator(bound={self.bound})"


def phi_ni(n: int, i: int, bound: int) -> QxOperator:
    """The rank-one operator x^i -> x^(n-i)/(n-i)!, zero elsewhere."""
    if not 1 <= i <= n:
        raise ValueError("need 1 <= i <= n")
    if i > bound or n - i > bound:
        raise DegreeOverflowError("bound too small for this operator")
    poly = [rat(0)] * (n - i) + [rat(1, factorial(n - i))]
    return QxOperator(bound, {i: poly})


def phi_n_signed_sum(n: int, bound: int) -> QxOperator:
    """Phi^n = sum_i (-1)^(n-i) Phi(n, i)."""
    out = QxOperator.zero(bound)
    for i in range(1, n + 1):
        out = out + phi_ni(n, i, bound).scale((-1) ** (n - i))
    return out


def _mul_by_x_power(poly, k: int, bound: int):
    poly = _poly_trim(list(poly))
    if poly and len(poly) - 1 + k > bound:
        raise DegreeOverflowError(
            f"degree {len(poly) - 1 + k} exceeds bound {bound}"
        )
    return [rat(0)] * k + poly


def _derivative(poly):
    return [j * poly[j] for j in range(1, len(poly))]


def _x_dk(poly, k: int, bound: int):
    """x * d^k/dx^k applied to a polynomial (degree drops by k - 1)."""
    out = list(poly)
    for _ in range(k):
        out = _derivative(out)
    return _mul_by_x_power(out, 1, bound)


def rho_action(k: int, psi: QxOperator) -> QxOperator:
    """(x^k/k! - x^(k+1) d/dx /(k+1)!) psi  -  psi (x d^(k+1)/dx^(k+1) /(k+1)!)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    bound = psi.bound
    cols = {}
    for s in range(bound + 1):
        img = psi.columns[s]
        left = [rat(0)] * (bound + 1)
        if img:
            a = _mul_by_x_power(img, k, bound)
            b = _mul_by_x_power(_derivative(img), k + 1, bound)
            for j, v in enumerate(a):
                left[j] += rat(v, factorial(k))
            for j, v in enumerate(b):
                left[j] -= rat(v, factorial(k + 1))
        mono = [rat(0)] * s + [rat(1)]
        shifted = _x_dk(mono, k + 1, bound)
        right = psi.apply(shifted)
        cols[s] = [
            left[j] - rat(right[j], factorial(k + 1)) for j in range(bound + 1)
        ]
    return QxOperator(bound, cols)


@dataclass(frozen=True)
class AbstractPhiCombination:
    """Element of V^n in Phi(n, i) coordinates: a map i -> coefficient."""

    degree: int
    coeffs: tuple  # tuple of (i, coefficient) pairs, i strictly increasing

    @classmethod
    def from_dict(cls, degree: int, mapping) -> "AbstractPhiCombination":
        items = tuple(
            (i, c) for i, c in sorted(mapping.items()) if c
        )
        for i, _ in items:
            if not 1 <= i <= degree:
                raise ValueError("index outside 1..n")
        return cls(degree, items)

    def as_dict(self) -> dict:
        return dict(self.coeffs)

    def to_operator(self, bound: int) -> QxOperator:
        out = QxOperator.zero(bound)
        for i, c in self.coeffs:
            out = out + phi_ni(self.degree, i, bound).scale(c)
        return out

    def vector(self) -> list:
        """Coordinates against Phi(n, 1)..Phi(n, n)."""
        d = self.as_dict()
        return [d.get(i, rat(0)) for i in range(1, self.degree + 1)]


def rho_on_phi_ni(k: int, n: int, i: int) -> AbstractPhiCombination:
    """Closed form of the Witt generator action on a single Phi(n, i)."""
    if k < 1 or not 1 <= i <= n:
        raise ValueError("need k >= 1 and 1 <= i <= n")
    out = {}
    c1 = comb(n - i + k, k) - comb(n - i + k, k + 1)
    if c1:
        out[i] = rat(c1)
    c2 = -comb(k + i, k + 1)
    if c2:
        out[i + k] = out.get(i + k, rat(0)) + rat(c2)
    return AbstractPhiCombination.from_dict(n + k, out)


def rho_abstract(k: int, comb_: AbstractPhiCombination) -> AbstractPhiCombination:
    out = {}
    for i, c in comb_.coeffs:
        for j, v in rho_on_phi_ni(k, comb_.degree, i).coeffs:
            out[j] = out.get(j, rat(0)) + c * v
    return AbstractPhiCombination.from_dict(comb_.degree + k, out)


def solve_linear(matrix, rhs):
    """Exact Gaussian elimination; raises SingularMatrixError if degenerate."""
    n = len(matrix)
    aug = [list(row) + [rhs[r]] for r, row in enumerate(matrix)]
    for col in range(n):
        pivot = next(
            (r for r in range(col, n) if aug[r][col]), None
        )
        if pivot is None:
            raise SingularMatrixError(f"no pivot in column {col}")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = rat(1) / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                factor = aug[r][col]
                aug[r] = [v - factor * w for v, w in zip(aug[r], aug[col])]
    return [aug[r][n] for r in range(n)]


@dataclass(frozen=True)
class UniversalCoefficients:
    """The c_1^n..c_n^n of the standard form, plus the auxiliary b_n."""

    degree: int
    c: tuple
    b: object


def solve_coefficients(n: int) -> UniversalCoefficients:
    """Coefficients with Phi^(n+1) = (c_1 rho_1^n + sum_i c_i rho_1^(n-i) rho_i) Phi^1.

    Solved exactly in V^(n+1) coordinates against the induction basis
    rho_1^(n-i) rho_i (Phi(1,1)) for i = 1..n together with
    rho_1^(n-1)(Phi(2,2)); the coefficient b_n of the latter must vanish.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    phi11 = AbstractPhiCombination.from_dict(1, {1: rat(1)})
    phi22 = AbstractPhiCombination.from_dict(2, {2: rat(1)})
    columns = []
    for i in range(1, n + 1):
        vec = rho_abstract(i, phi11)
        for _ in range(n - i):
            vec = rho_abstract(1, vec)
        columns.append(vec.vector())
    extra = phi22
    for _ in range(n - 1):
        extra = rho_abstract(1, extra)
    columns.append(extra.vector())
    target = [rat((-1) ** (n + 1 - i)) for i in range(1, n + 2)]
    matrix = [[columns[c][r] for c in range(n + 1)] for r in range(n + 1)]
    solution = solve_linear(matrix, target)
    b = solution[n]
    if b:
        raise ArithmeticError(f"auxiliary coefficient b_{n} = {b} != 0")
    return UniversalCoefficients(n, tuple(solution[:n]), b)


def conjecture_formula(n: int, i: int):
    """The conjectured closed form for c_i^n (empty products are 1)."""
    if n < 2 or not 1 <= i <= n:
        raise ValueError("need n >= 2 and 1 <= i <= n")

    def top_product(upto):
        prod = rat(1)
        for j in range(2, upto + 1):
            prod *= rat(n * (n - 1) - (j - 1) * (j - 2), 2)
        return prod

    numerator = rat((-1) ** n) * top_product(i)
    denominator = rat(0)
    for h in range(2, n + 1):
        tail = rat(1)
        for j in range(h, n):
            tail *= rat((1 - j) * (j + 2), 2)
        denominator += h * top_product(h) * tail
    if not denominator:
        raise ZeroDivisionError(f"conjecture denominator vanishes at n = {n}")
    return numerator / denominator


def coefficient_table_entry(n: int, i: int, coefficients=None):
    """x_i^n = (-1)^n n! c_i^n, the published normalization."""
    if coefficients is None:
        coefficients = solve_coefficients(n)
    return rat((-1) ** n * factorial(n)) * coefficients.c[i - 1]


def bn_zero_witness(n: int, degree_bound=None) -> dict:
    """Check the closed form of rho_1^(n-2)(Phi(2,2)_d/dx) on monomial tuples.

    Builds the one-even-generator commutative algebra, realizes
    Phi(2,2)_f = mu_0 insertion (f insertion mu_1) for f = d/dx, applies
    rho_1 repeatedly, and compares against the product-of-binomials closed
    form; also confirms Phi^(n+1) of the derivation vanishes.
    """
    from .brackets import phi_direct_op
    from .multilinear import (
        canonical_tuples,
        is_zero_op,
        lift_endo,
        mu,
        nr_product,
        rho,
    )
    from .superalgebra import Signature, derivation_endo

    if n < 2:
        raise ValueError("n must be >= 2")
    D = degree_bound if degree_bound is not None else n + 2
    sig = Signature(even=1, odd=0, degree_bound=D)
    partial = derivation_endo(sig)
    op = nr_product(mu(sig, 0), nr_product(lift_endo(partial), mu(sig, 1)))
    for _ in range(n - 2):
        op = rho(1, op)
    prefactor = (-1) ** (n - 2)
    for i in range(3, n + 1):
        prefactor *= comb(i - 1, 2)
    checked = 0
    closed_form_ok = True
    for tup in canonical_tuples(sig, n, D):
        exponents = [m[0][0] for m in tup]
        if any(a < 1 for a in exponents):
            continue
        total = sum(exponents)
        expected = sig.monomial_element(((total - 1,), ()), prefactor * total)
        if op.value(tup) != expected:
            closed_form_ok = False
            break
        checked += 1
    phi_vanishes = is_zero_op(phi_direct_op(partial, n + 1))
    return {
        "n": n,
        "closed_form_ok": closed_form_ok,
        "tuples_checked": checked,
        "derivation_bracket_vanishes": phi_vanishes,
    }


def _dn_monomial(n: int, m: int):
    """d_n(x^m) = C(m, n+1) x^(m-n) symbolically: (coefficient, power)."""
    c = comb(m, n + 1) if m >= n + 1 else 0
    return (c, m - n) if c else (0, None)


def coderivation_dn(n: int, bound: int) -> QxOperator:
    """Matrix of d_n = x d^(n+1)/dx^(n+1) /(n+1)! on degrees <= bound."""
    if n < -1:
        raise ValueError("n must be >= -1")
    cols = {}
    for m in range(bound + 1):
        c, p = _dn_monomial(n, m)
        if c:
            if p > bound:
                raise DegreeOverflowError(f"d_{n}(x^{m}) leaves the bound")
            cols[m] = [rat(0)] * p + [rat(c)]
    return QxOperator(bound, cols)


def coderivation_check(n: int, m: int, max_power: int = 8) -> bool:
    """Bracket relation and coproduct compatibility of d_n, d_m, symbolically."""

    def apply_dn(k, terms):
        out = {}
        for p, c in terms.items():
            cc, q = _dn_monomial(k, p)
            if cc:
                out[q] = out.get(q, 0) + c * cc
        return {p: c for p, c in out.items() if c}

    expected_factor = rat(
        (n - m) * factorial(n + m + 1), factorial(n + 1) * factorial(m + 1)
    )
    for s in range(max_power + 1):
        start = {s: rat(1)}
        lhs = _dict_sub(
            apply_dn(n, apply_dn(m, start)), apply_dn(m, apply_dn(n, start))
        )
        rhs = {
            p: expected_factor * c
            for p, c in apply_dn(n + m, start).items()
        }
        if lhs != {p: c for p, c in rhs.items() if c}:
            return False
    # coproduct compatibility of d_n alone on x^s, s <= max_power
    for s in range(max_power + 1):
        coproduct = {
            (k, s - k): rat(comb(s, k)) for k in range(s + 1)
        }
        c, p = _dn_monomial(n, s)
        lhs_tensor = {}
        if c:
            for k in range(p + 1):
                lhs_tensor[(k, p - k)] = rat(c * comb(p, k))
        rhs_tensor = {}
        for (a, b), v in coproduct.items():
            ca, pa = _dn_monomial(n, a)
            if ca:
                key = (pa, b)
                rhs_tensor[key] = rhs_tensor.get(key, rat(0)) + v * ca
            cb, pb = _dn_monomial(n, b)
            if cb:
                key = (a, pb)
                rhs_tensor[key] = rhs_tensor.get(key, rat(0)) + v * cb
        rhs_tensor = {k: v for k, v in rhs_tensor.items() if v}
        if lhs_tensor != rhs_tensor:
            return False
    return True


def _dict_sub(a, b):
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) - v
    return {k: v for k, v in out.items() if v}


def duality_check(h: int, N: int, koszul=None) -> bool:
    """Coefficient of x in exp(sum K_n x d^(n+1)/dx^(n+1) /(n+1)!)(x^h) is 1.

    Each generator lowers the degree by n >= 1, so the exponential truncates
    on polynomials of degree <= N.
    """
    if not 1 <= h <= N:
        raise ValueError("need 1 <= h <= N")
    if koszul is None:
        koszul = koszul_numbers_recursive(max(N - 1, 1))

    def generator_sum(poly):
        out = [rat(0)] * (N + 1)
        for s, c in enumerate(poly):
            if not c:
                continue
            for n in range(1, s):
                cc, p = _dn_monomial(n, s)
                if cc:
                    out[p] += koszul[n] * cc * c
        return out

    poly = [rat(0)] * (N + 1)
    poly[h] = rat(1)
    result = list(poly)
    term = poly
    k = 1
    while True:
        term = generator_sum(term)
        if all(not c for c in term):
            break
        for j in range(N + 1):
            result[j] += rat(term[j], factorial(k))
        k += 1
    return result[1] == 1


def witt_phi_check(n: int, m: int, max_power: int = 10) -> bool:
    """[phi(L_n), phi(L_m)] = (n-m) phi(L_(n+m)) with phi(L_n) = x d^(n+1)."""

    def act(k, terms):
        # x d^(k+1) on monomials, symbolically
        out = {}
        for p, c in terms.items():
            if p >= k + 1:
                coeff = 1
                for i in range(k + 1):
                    coeff *= p - i
                out[p - k] = out.get(p - k, 0) + c * coeff
        return {p: c for p, c in out.items() if c}

    for s in range(max_power + 1):
        start = {s: 1}
        lhs = _dict_sub(act(n, act(m, start)), act(m, act(n, start)))
        rhs = {p: (n - m) * c for p, c in act(n + m, start).items() if c}
        if lhs != {p: c for p, c in rhs.items() if c}:
            return False
    return True


def witt_psi_check(n: int, m: int, max_power: int = 10) -> bool:
    """Same relation for psi(L_n) x^s = (n + 1 - s) x^(n+s)."""

    def act(k, terms):
        out = {}
        for p, c in terms.items():
            v = (k + 1 - p) * c
            if v:
                out[p + k] = out.get(p + k, 0) + v
        return out

    for s in range(max_power + 1):
        start = {s: 1}
        lhs = _dict_sub(act(n, act(m, start)), act(m, act(n, start)))
        rhs = {p: (n - m) * c for p, c in act(n + m, start).items() if c}
        if lhs != {p: c for p, c in rhs.items() if c}:
            return False
    return True


def rho_bracket_check(n: int, m: int, psi: QxOperator) -> bool:
    """[rho(l_n), rho(l_m)] psi = (n-m)(n+m+1)!/((n+1)!(m+1)!) rho(l_(n+m)) psi."""
    lhs = rho_action(n, rho_action(m, psi)) - rho_action(m, rho_action(n, psi))
    factor = rat(
        (n - m) * factorial(n + m + 1), factorial(n + 1) * factorial(m + 1)
    )
    rhs = rho_action(n + m, psi).scale(factor)
    return lhs == rhs
