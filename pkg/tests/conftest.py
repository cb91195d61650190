"""Shared fixtures and brute-force oracle helpers for the test suite."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from pathlib import Path

import pytest

from absinv import const_domain as cd
from absinv import programs as pg
from absinv.affine import AffSubspace
from absinv.finite import FiniteGI, FiniteLattice

PROGRAMS_DIR = Path(__file__).resolve().parent.parent / "programs"


@pytest.fixture(scope="session")
def const_demo() -> pg.Program:
    return pg.parse_program((PROGRAMS_DIR / "const_demo.prog").read_text())


@pytest.fixture(scope="session")
def affine_demo() -> pg.Program:
    return pg.parse_program((PROGRAMS_DIR / "affine_demo.prog").read_text())


# ---------------------------------------------------------------------------
# Small explicit instances used across modules
# ---------------------------------------------------------------------------


@pytest.fixture(scope="session")
def four_chain_gi() -> tuple[FiniteGI, tuple[int, ...]]:
    """The 4-element chain with abstraction image {2, 4} (1-based values).

    Returns the insertion and the monotone table {1->1, 2->2, 3->4, 4->4}
    in element indices (0-based).
    """
    chain = FiniteLattice.chain(4)
    gi = FiniteGI.from_closure_image(chain, [1, 3])
    f = (0, 1, 3, 3)
    return gi, f


@pytest.fixture(scope="session")
def three_chain() -> FiniteLattice:
    return FiniteLattice.chain(3)


def three_chain_f() -> tuple[int, ...]:
    """{1 -> 1, 2 -> 3, 3 -> 3} in 0-based indices."""
    return (0, 2, 2)


# ---------------------------------------------------------------------------
# Constant-domain brute-force oracle
# ---------------------------------------------------------------------------


def box_points(n: int, bound: int):
    return itertools.product(range(-bound, bound + 1), repeat=n)


def gamma_box(a: cd.ConstVec, bound: int) -> list[tuple[int, ...]]:
    """All points of the concretization with coordinates in [-bound, bound]."""
    if a.is_bottom:
        return []
    axes = []
    for s in a.comps:
        if s is cd.TOP:
            axes.append(range(-bound, bound + 1))
        else:
            assert abs(s) <= bound, "constant outside sampling box"
            axes.append([s])
    return [tuple(p) for p in itertools.product(*axes)]


def random_const_vec(rng: random.Random, n: int, lo: int = -5, hi: int = 5) -> cd.ConstVec:
    if rng.random() < 0.1:
        return cd.ConstVec.bottom(n)
    slots = tuple(
        cd.TOP if rng.random() < 0.4 else rng.randint(lo, hi) for _ in range(n)
    )
    return cd.ConstVec(n, slots)


def random_linexpr_int(rng: random.Random, n: int, coeff: int = 3) -> pg.LinExpr:
    return pg.LinExpr(
        tuple(rng.randint(-coeff, coeff) for _ in range(n)),
        rng.randint(-coeff, coeff),
    )


# ---------------------------------------------------------------------------
# Affine-domain helpers
# ---------------------------------------------------------------------------


def frac_point(*coords) -> tuple[Fraction, ...]:
    return tuple(Fraction(c) for c in coords)


def subspace_samples(a: AffSubspace, rng: random.Random, count: int) -> list[tuple[Fraction, ...]]:
    """Random rational points inside a nonempty subspace."""
    out = []
    for _ in range(count):
        pt = list(a.point)
        for b in a.basis:
            c = Fraction(rng.randint(-6, 6), rng.randint(1, 4))
            pt = [x + c * y for x, y in zip(pt, b)]
        out.append(tuple(pt))
    return out


def random_rat_points(rng: random.Random, n: int, count: int) -> list[tuple[Fraction, ...]]:
    return [
        tuple(Fraction(rng.randint(-10, 10)) for _ in range(n)) for _ in range(count)
    ]


def random_affine_rows(rng: random.Random, n: int) -> tuple[pg.LinExpr, ...]:
    return tuple(
        pg.LinExpr(
            tuple(Fraction(rng.randint(-3, 3)) for _ in range(n)),
            Fraction(rng.randint(-3, 3)),
        )
        for _ in range(n)
    )


def solve_square_system(rows: list[tuple[list[Fraction], Fraction]], n: int):
    """Independent dense solver for  coeffs · x + const = 0  (None if singular).

    Deliberately separate from the library's elimination code: used as the
    second route when checking exact analysis values.
    """
    aug = [[Fraction(c) for c in coeffs] + [Fraction(const)] for coeffs, const in rows]
    for col in range(n):
        piv = next((r for r in range(col, len(aug)) if aug[r][col] != 0), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        aug[col] = [v / aug[col][col] for v in aug[col]]
        for r in range(len(aug)):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [v - f * w for v, w in zip(aug[r], aug[col])]
    for r in range(n, len(aug)):
        if aug[r][n] != 0:
            return None
    return tuple(-aug[i][n] for i in range(n))


# ---------------------------------------------------------------------------
# Random program generation (termination-bound tests)
# ---------------------------------------------------------------------------


def random_program(rng: random.Random, sort: str, max_vars: int = 5, max_nodes: int = 10) -> pg.Program:
    n = rng.randint(1, max_vars)
    k = rng.randint(2, max_nodes)
    nodes = tuple(f"q{i + 1}" for i in range(k))

    def num(v: int):
        return Fraction(v) if sort == "rat" else v

    def rand_expr() -> pg.LinExpr:
        return pg.LinExpr(
            tuple(num(rng.randint(-2, 2)) for _ in range(n)),
            num(rng.randint(-3, 3)),
        )

    def rand_transfer() -> pg.TransferFunction:
        kind = rng.random()
        if kind < 0.45:
            rows = tuple(
                rand_expr()
                if rng.random() < 0.5
                else pg.identity_row(i, n, num(0), num(1))
                for i in range(n)
            )
            return pg.ParallelAffineAssign(rows)
        if kind < 0.6:
            return pg.NondetAssign(rng.randint(1, n))
        if kind < 0.7:
            return pg.Identity()
        mode = rng.choice(["conj", "disj"])
        rows = tuple(rand_expr() for _ in range(rng.randint(1, 2)))
        if sort == "int" and kind < 0.85:
            rel = rng.choice(["<", "<=", ">", ">=", "!="])
            return pg.RelGuard(rows, rel, mode)
        if sort == "rat" and kind < 0.8:
            return pg.RelGuard(rows, "!=", mode)
        return pg.EqGuard(rows, mode)

    edges = tuple(
        pg.Edge(rng.choice(nodes), rand_transfer(), rng.choice(nodes))
        for _ in range(rng.randint(k - 1, 2 * k))
    )
    inits: dict[str, pg.InitDecl] = {}
    for q in rng.sample(nodes, rng.randint(1, min(2, k))):
        style = rng.random()
        if style < 0.4:
            inits[q] = pg.InitTop()
        elif style < 0.8:
            pts = frozenset(
                tuple(num(rng.randint(-4, 4)) for _ in range(n))
                for _ in range(rng.randint(1, 3))
            )
            inits[q] = pg.InitPoints(pts)
        else:
            inits[q] = pg.InitVector(
                tuple(
                    pg.TOP_ENTRY if rng.random() < 0.3 else num(rng.randint(-4, 4))
                    for _ in range(n)
                )
            )
    return pg.Program(nodes, n, sort, edges, inits)
