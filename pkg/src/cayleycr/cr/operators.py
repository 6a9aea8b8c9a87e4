"""First-order Dirac-type operators as matrices over the ring of partials.

An operator is an N x N matrix whose entries are polynomials in the
commuting symbols ``d_0 .. d_{N-1}``.  Two variants exist:

* ``analytic``:     ``D U = sum_nu e_nu d_nu U``        (kernel = left analytic)
* ``antianalytic``: ``D U = sum_nu conj(e_nu) d_nu U``  (kernel = left antianalytic)

so entry ``(rho, sigma)`` is ``sum_nu C^rho_{nu sigma} s_nu d_nu`` with
``s_nu = 1`` or ``s_nu = g_nu``.
"""
from __future__ import annotations

from typing import Sequence

from ..algebra import AlgebraSpec, metric, structure_tensor
from ..expr import ComponentPolynomial
from ..poly import Poly

VARIANTS = ("analytic", "antianalytic")
CR_DIMENSIONS = (2, 4, 8)


def check_dimension(n: int, allowed: Sequence[int] = CR_DIMENSIONS):
    if n not in allowed:
        raise ValueError(f"unsupported dimension {n}; expected one of {tuple(allowed)}")


def variant_signs(n: int, variant: str) -> tuple[int, ...]:
    if variant == "analytic":
        return (1,) * n
    if variant == "antianalytic":
        return metric(n)
    raise ValueError(f"unknown variant {variant!r}; expected 'analytic' or 'antianalytic'")


class SymbolicOperator:
    """N x N matrix of polynomials in the partial symbols."""

    __slots__ = ("entries",)

    def __init__(self, entries: Sequence[Sequence[Poly]]):
        self.entries = tuple(tuple(row) for row in entries)

    @property
    def N(self) -> int:
        return len(self.entries)

    def __getitem__(self, rc):
        r, c = rc
        return self.entries[r][c]

    def __eq__(self, other):
        if not isinstance(other, SymbolicOperator):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __matmul__(self, other: "SymbolicOperator") -> "SymbolicOperator":
        n = self.N
        return SymbolicOperator(
            [[sum((self[r, k] * other[k, c] for k in range(n)), Poly(n)) for c in range(n)] for r in range(n)]
        )

    def apply(self, u: ComponentPolynomial) -> ComponentPolynomial:
        n = self.N
        if u.N != n:
            raise ValueError(f"operator has N={n}, function has N={u.N}")
        return ComponentPolynomial(
            [sum((self[r, c].apply_as_operator(u[c]) for c in range(n)), Poly(n)) for r in range(n)]
        )

    def to_strings(self) -> list[list[str]]:
        """Signed symbol strings such as ``"+d3"`` for first-order monomial entries."""
        out = []
        for row in self.entries:
            cells = []
            for p in row:
                if p.is_zero():
                    cells.append("0")
                    continue
                parts = []
                for e, c in p:
                    mono = "*".join(f"d{i}" if k == 1 else f"d{i}^{k}" for i, k in enumerate(e) if k)
                    sign = "+" if c > 0 else "-"
                    mag = "" if abs(c) == 1 else f"{abs(c)}*"
                    parts.append(f"{sign}{mag}{mono or '1'}")
                cells.append("".join(parts))
            out.append(cells)
        return out

    def __repr__(self):
        return f"SymbolicOperator({self.to_strings()})"


def dirac_matrix(n: int, variant: str = "analytic", alg: AlgebraSpec | None = None) -> SymbolicOperator:
    check_dimension(n)
    alg = alg or structure_tensor(n)
    s = variant_signs(n, variant)
    c = alg.structure
    d = [Poly.var(n, i) for i in range(n)]
    return SymbolicOperator(
        [[sum((d[nu] * (c[rho][nu][sg] * s[nu]) for nu in range(n) if c[rho][nu][sg]), Poly(n))
          for sg in range(n)] for rho in range(n)]
    )


def laplacian_operator(n: int) -> SymbolicOperator:
    lap = sum((Poly.var(n, i) ** 2 for i in range(n)), Poly(n))
    return SymbolicOperator([[lap if r == c else Poly(n) for c in range(n)] for r in range(n)])


def factorization_check(n: int) -> bool:
    """Both compositions of the analytic and antianalytic operators equal the Laplacian times identity."""
    check_dimension(n)
    a = dirac_matrix(n, "analytic")
    b = dirac_matrix(n, "antianalytic")
    lap = laplacian_operator(n)
    return a @ b == lap and b @ a == lap


def lemma2_identity_check(n: int, alg: AlgebraSpec | None = None) -> bool:
    """``c^nu_{sigma mu} d_sigma == 2 delta_{mu 0} d_nu - c^sigma_{nu mu} d_sigma`` for all (mu, nu).

    Compared as coefficient tensors: the coefficient of ``d_sigma`` on each side.
    """
    check_dimension(n)
    alg = alg or structure_tensor(n)
    c = alg.structure
    r = range(n)
    for mu in r:
        for nu in r:
            for sg in r:
                lhs = c[nu][sg][mu]
                rhs = (2 if mu == 0 and nu == sg else 0) - c[sg][nu][mu]
                if lhs != rhs:
                    return False
    return True
