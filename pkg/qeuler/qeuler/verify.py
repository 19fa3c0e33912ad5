"""Identity suite: re-checks every structural identity on the configured space.

Each check compares two independent computations exactly and records a
CheckResult; a check that raises is recorded as failed with the exception
text, the remaining checks still run.
"""
import logging
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, List, Tuple

from .euler import (
    corollary_scalar,
    diagonal_sums,
    euler_closed,
    euler_constructive,
    euler_shifted,
    euler_shifted_expected,
    gamma_class,
    gamma_residual,
)
from .gw import GWTable, default_k_max, denominator_divides_power
from .qring import (
    basis_identity_sums,
    classical_powers,
    hstar_coeff_closed_form,
    hstar_top_closed_form,
    hstar_top_coefficients,
    magic_top_coefficients,
    shift_basis,
    star_mul,
)
from .render import format_rational
from .session import Session
from .tevelev import evaluate, valid_queries

logger = logging.getLogger(__name__)

COMBINATORIAL_MAX_R = 20
SYMMETRY_MAX_K = 3


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ''

    def as_dict(self) -> Dict[str, Any]:
        return {'name': self.name, 'passed': self.passed, 'detail': self.detail}


@dataclass
class VerifyReport:
    checks: List[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> List[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def as_dict(self) -> Dict[str, Any]:
        return {
            'passed': self.passed,
            'total': len(self.checks),
            'failed': len(self.failures()),
            'checks': [c.as_dict() for c in self.checks],
        }


def _mismatch(label: str, got, expected) -> str:
    return f'{label}: got {got}, expected {expected}'


class IdentitySuite:
    def __init__(self, session: Session, max_genus: int = 2, max_points: int = 4, max_workers: int = 4):
        self.session = session
        self.space = session.space
        self.table = session.table
        self.context = session.hstar
        self.max_genus = max_genus
        self.max_points = max_points
        self.max_workers = max_workers

    def checks(self) -> List[Tuple[str, Callable[[], str]]]:
        """(name, check) pairs; a check returns '' on success or a mismatch description."""
        items = [
            ('givental_consistency', self.check_givental_consistency),
            ('top_coefficient_closed_form', self.check_top_closed_form),
            ('classical_power_closed_form', self.check_classical_closed_form),
            ('alpha_symmetry', self.check_alpha_symmetry),
            ('memo_determinism', self.check_memo_determinism),
            ('denominators_divide_deg_x', self.check_denominators),
            ('ring_axioms', self.check_ring_axioms),
            ('combinatorial_identities', self.check_combinatorial_identities),
            ('euler_routes_agree', self.check_euler_routes),
            ('euler_leading_coefficient', self.check_euler_leading),
            ('gamma_annihilated_by_H', self.check_gamma_annihilated),
            ('diagonal_sum_identity', self.check_diagonal_sums),
            ('tevelev_routes_agree', self.check_tevelev_routes),
        ]
        if self.space.borderline:
            items += [
                ('shift_round_trip', self.check_shift_round_trip),
                ('shift_multiplicative', self.check_shift_multiplicative),
                ('euler_shifted_coefficients', self.check_euler_shifted),
                ('euler_corollary_scalar', self.check_euler_corollary),
            ]
        return items

    def run(self) -> VerifyReport:
        report = VerifyReport()
        for name, check in self.checks():
            try:
                detail = check()
                report.checks.append(CheckResult(name, not detail, detail))
            except Exception as e:
                logger.exception(f"Check {name} raised")
                report.checks.append(CheckResult(name, False, f'{type(e).__name__}: {e}'))
        for failure in report.failures():
            logger.error(f"Identity check failed on {self.space.label}: {failure.name} ({failure.detail})")
        logger.info(f"Verify on {self.space.label}: {len(report.checks) - len(report.failures())}"
                    f"/{len(report.checks)} checks passed")
        return report

    # ---- quantum ring ----

    def check_givental_consistency(self) -> str:
        got = hstar_top_coefficients(self.context, self.table)
        expected = magic_top_coefficients(self.space)
        return '' if got == expected else _mismatch('H^{*(r+1)} coefficients', got, expected)

    def check_top_closed_form(self) -> str:
        got = hstar_top_coefficients(self.context, self.table)
        closed = [hstar_top_closed_form(self.context, self.table, j) for j in range(1, len(got) + 1)]
        return '' if got == closed else _mismatch('nested-sum top coefficients', closed, got)

    def check_classical_closed_form(self) -> str:
        r, d = self.space.r, self.space.d
        powers = classical_powers(self.context, self.table, r)
        for i in range(r + 1):
            for j in range(1, i // d + 1):
                closed = hstar_coeff_closed_form(self.context, self.table, i, j)
                direct = powers[i].coefficient(i - j * d, j)
                if closed != direct:
                    return _mismatch(f'Coeff(H^{i}, q^{j})', closed, direct)
        return ''

    def check_ring_axioms(self) -> str:
        ctx = self.context
        r = self.space.r
        basis = [ctx.basis_element(i) for i in range(r + 1)]
        one = ctx.one()
        for x in basis:
            if star_mul(one, x) != x:
                return f'unit fails on {x}'
        for a in basis:
            for b in basis:
                ab = star_mul(a, b)
                if ab != star_mul(b, a):
                    return f'commutativity fails on {a}, {b}'
                if not ab.is_homogeneous():
                    return f'{a} * {b} is not homogeneous'
                for c in basis:
                    if star_mul(ab, c) != star_mul(a, star_mul(b, c)):
                        return f'associativity fails on {a}, {b}, {c}'
        got = star_mul(basis[r], basis[r]).graded_degrees()
        if got and got != {2 * r}:
            return _mismatch('grading of e_r * e_r', got, {2 * r})
        return ''

    def check_combinatorial_identities(self) -> str:
        for r in range(2, COMBINATORIAL_MAX_R + 1):
            for j in range(2, r + 1):
                got = basis_identity_sums(r, j)
                if got != (1, r + 1):
                    return _mismatch(f'binomial sums (r={r}, j={j})', got, (1, r + 1))
        return ''

    def check_shift_round_trip(self) -> str:
        ctx = self.context
        for i in range(self.space.r + 1):
            for p in range(2):
                x = ctx.basis_element(i, Fraction(i + 1, p + 2), p)
                if shift_basis(shift_basis(x)) != x:
                    return f'round trip fails on {x}'
        return ''

    def check_shift_multiplicative(self) -> str:
        ctx = self.context
        basis = [ctx.basis_element(i) for i in range(self.space.r + 1)]
        for a in basis:
            for b in basis:
                if shift_basis(star_mul(a, b)) != star_mul(shift_basis(a), shift_basis(b)):
                    return f'shift(a*b) != shift(a)*shift(b) for {a}, {b}'
        return ''

    # ---- GW table ----

    def check_alpha_symmetry(self) -> str:
        r, d = self.space.r, self.space.d
        self.table.grow(SYMMETRY_MAX_K)
        for k in range(1, self.table.k_max + 1):
            for s in range(r + 1):
                partner = k * d + r - s - 1
                if not 0 <= partner <= r:
                    continue
                left, right = self.table.alpha(k, s), self.table.alpha(k, partner)
                if left != right:
                    return _mismatch(f'alpha^{k}_{s} vs alpha^{k}_{partner}', left, right)
        return ''

    def check_memo_determinism(self) -> str:
        fresh = GWTable(self.space, self.table.k_max)
        for key, value in self.table.items():
            again = fresh.descendant(key)
            if again != value:
                return _mismatch(f'recomputed {key.as_string()}', again, value)
        return ''

    def check_denominators(self) -> str:
        """Primary invariants and the Euler class live in Z[1/deg_X].

        Descendant entries with a psi insertion are excluded: they carry the
        1/(k!)^{r+L+1} denominators of the hypergeometric base case.
        """
        r, m = self.space.r, self.space.deg_x
        values = [
            (f'alpha^{k}_{s}', self.table.alpha(k, s))
            for k in range(1, default_k_max(self.space) + 1)
            for s in range(r + 1)
        ]
        values += [
            (f'Coeff(E, q^{p} e_{i})', v) for i, p, v in euler_closed(self.context, self.table).terms()
        ]
        bad = [f'{label} = {value}' for label, value in values if not denominator_divides_power(value, m)]
        return '; '.join(bad)

    # ---- Euler class ----

    def check_euler_routes(self) -> str:
        closed = euler_closed(self.context, self.table)
        constructive = euler_constructive(self.context, self.table)
        return '' if closed == constructive else _mismatch('E', constructive, closed)

    def check_euler_leading(self) -> str:
        got = euler_closed(self.context, self.table).coefficient(self.space.r, 0)
        expected = Fraction(self.space.euler_char, self.space.deg_x)
        return '' if got == expected else _mismatch('Coeff(E, e_r)', got, expected)

    def check_gamma_annihilated(self) -> str:
        product = star_mul(self.context.basis_element(1), gamma_class(self.context, self.table))
        residual = gamma_residual(self.context, self.table)
        return '' if product == residual else _mismatch('H * Gamma', product, residual)

    def check_diagonal_sums(self) -> str:
        r, d = self.space.r, self.space.d
        top = hstar_top_coefficients(self.context, self.table)
        got = diagonal_sums(self.context, self.table)
        expected = [-(r - j * d + 1) * top[j - 1] for j in range(1, r // d + 1)]
        return '' if got == expected else _mismatch('diagonal sums', got, expected)

    def check_euler_shifted(self) -> str:
        shifted = euler_shifted(self.context, self.table)
        r = self.space.r
        got = [shifted.coefficient(r - j, j) for j in range(r + 1)]
        expected = euler_shifted_expected(self.space)
        return '' if got == expected else _mismatch('shifted E', got, expected)

    def check_euler_corollary(self) -> str:
        shifted_ctx = self.context.shifted()
        f_r = shifted_ctx.basis_element(self.space.r)
        lhs = star_mul(f_r, euler_shifted(self.context, self.table))
        rhs = star_mul(f_r, f_r).scale(corollary_scalar(self.space))
        return '' if lhs == rhs else _mismatch('(H+m!q)^r * E', lhs, rhs)

    # ---- Tevelev ----

    def check_tevelev_routes(self) -> str:
        queries = valid_queries(self.space, self.max_genus, self.max_points)
        if queries:
            self.table.grow(max(q.k for q in queries))
        problems = []
        r = self.space.r
        with ThreadPoolExecutor(max_workers=self.max_workers) as ex:
            futures = {ex.submit(evaluate, self.context, self.table, q): q for q in queries}
            for fut in as_completed(futures):
                q = futures[fut]
                try:
                    breakdown = fut.result()
                except Exception as e:
                    problems.append(f'(g={q.g}, n={q.n}): {e}')
                    continue
                target = r * (q.n + q.g)
                if breakdown.grading not in ((), (target,)) or r + q.k * self.space.d != target:
                    problems.append(f'(g={q.g}, n={q.n}): grading {breakdown.grading} != ({target},)')
                if not all(denominator_divides_power(v, self.space.deg_x) for v in breakdown.values()):
                    problems.append(f'(g={q.g}, n={q.n}): denominator outside Z[1/{self.space.deg_x}]')
                logger.debug(f"vTev(g={q.g}, n={q.n}) = {format_rational(breakdown.value_direct)}")
        return '; '.join(sorted(problems))


def run_suite(session: Session, **options) -> VerifyReport:
    return IdentitySuite(session, **options).run()
