"""Inductive-invariant synthesis over CFG programs with pluggable domains.

Two engines over the node-indexed product lattice:

- ``ainv_forward``: ascending Kleene iteration of the best transformer
  joined with the initial abstraction.  Returns the least abstract
  inductive invariant entailing the safety vector, or the first iterate
  that escapes it.
- ``backward_gfp``: descending co-inductive iteration of an abstract
  weakest-precondition transformer meeting the safety vector (constants
  domain only).  The stabilized iterate is re-verified with the forward
  transformer before being reported — the domain's join is not exact on
  unions, so the descending recipe alone is not a proof.

Both are deterministic: nodes are processed in declaration order and every
iterate is canonical, so traces are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from . import affine as aff
from . import const_domain as cd
from .finite import AlgoResult, ClosureFamily, FiniteTS, run_algorithm4
from .lattice import AbstractDomain
from .programs import (
    EqGuard,
    Identity,
    InitBot,
    InitConstraints,
    InitDecl,
    InitPoints,
    InitTop,
    InitVector,
    LinExpr,
    NondetAssign,
    ParallelAffineAssign,
    Program,
    RelGuard,
    StateVector,
    TOP_ENTRY,
    TransferFunction,
    out_edges,
    post_edges_into,
)


class UnsupportedDomain(ValueError):
    """The requested algorithm/domain combination is not implemented."""


class HeightBudgetExceeded(RuntimeError):
    """Defensive guard: iteration exceeded the product-lattice height bound."""


# ---------------------------------------------------------------------------
# Domain adapters
# ---------------------------------------------------------------------------


class ConstAdapter:
    """Constant-propagation domain bound to an n-variable integer program."""

    name = "const"
    sort = "int"

    def __init__(self, n: int):
        self.n = n
        self.domain: AbstractDomain = cd.ConstDomain(n)

    def transfer(self, t: TransferFunction, a: cd.ConstVec) -> cd.ConstVec:
        if isinstance(t, Identity):
            return a
        if isinstance(t, ParallelAffineAssign):
            return cd.bca_parallel_assign(t.rows, a)
        if isinstance(t, NondetAssign):
            return cd.bca_nondet_assign(t.target, a)
        if isinstance(t, EqGuard):
            return cd.bca_guard(t.rows, "=", t.mode, a)
        if isinstance(t, RelGuard):
            return cd.bca_guard(t.rows, t.rel, t.mode, a)
        raise TypeError(f"unknown transfer function {t!r}")

    def wp(self, t: TransferFunction, target: cd.ConstVec) -> cd.ConstVec:
        """Sound abstraction of the weakest precondition of one edge.

        Assignments turn each constant target slot into an equality
        constraint on the old values (exact for single-constant targets);
        guards are approximated by the full space unless decided.
        """
        if isinstance(t, Identity):
            return target
        if isinstance(t, ParallelAffineAssign):
            if target.is_bottom:
                return target
            w = cd.ConstVec.top(self.n)
            for row, slot in zip(t.rows, target.comps):
                if slot is cd.TOP:
                    continue
                w = cd.bca_eq_guard(LinExpr(row.coeffs, row.const - slot), w)
                if w.is_bottom:
                    break
            return w
        if isinstance(t, NondetAssign):
            if target.is_bottom:
                return target
            if target.comps[t.target - 1] is cd.TOP:
                return target
            return cd.ConstVec.bottom(self.n)
        if isinstance(t, (EqGuard, RelGuard)):
            rel = "=" if isinstance(t, EqGuard) else t.rel
            if all(r.is_constant() for r in t.rows):
                from .programs import relation_holds

                outcomes = [relation_holds(r.const, rel) for r in t.rows]
                holds = all(outcomes) if t.mode == "conj" else any(outcomes)
                return target if holds else cd.ConstVec.top(self.n)
            return cd.ConstVec.top(self.n)
        raise TypeError(f"unknown transfer function {t!r}")

    def from_init(self, decl: InitDecl) -> cd.ConstVec:
        if isinstance(decl, InitTop):
            return cd.ConstVec.top(self.n)
        if isinstance(decl, InitBot):
            return cd.ConstVec.bottom(self.n)
        if isinstance(decl, InitVector):
            slots = tuple(cd.TOP if e == TOP_ENTRY else int(e) for e in decl.entries)
            return cd.ConstVec(self.n, slots)
        if isinstance(decl, InitPoints):
            return cd.alpha_points(decl.points, self.n)
        raise UnsupportedDomain("constraint literals are not constant-domain elements")

    def render(self, a: cd.ConstVec) -> str:
        return cd.render_const(a)


class AffAdapter:
    """Affine-equalities domain bound to an n-variable rational program."""

    name = "affine"
    sort = "rat"

    def __init__(self, n: int):
        self.n = n
        self.domain: AbstractDomain = aff.AffDomain(n)

    def transfer(self, t: TransferFunction, a: aff.AffSubspace) -> aff.AffSubspace:
        if isinstance(t, Identity):
            return a
        if isinstance(t, ParallelAffineAssign):
            return aff.bca_parallel_assign(t.rows, a)
        if isinstance(t, NondetAssign):
            return aff.bca_nondet_assign(t.target, a)
        if isinstance(t, EqGuard):
            return aff.bca_eq_guard(t.rows, t.mode, a)
        if isinstance(t, RelGuard):
            if t.rel != "!=":
                raise UnsupportedDomain(f"guard relation {t.rel!r} has no affine approximation")
            return aff.guard_neq_identity(a)
        raise TypeError(f"unknown transfer function {t!r}")

    def wp(self, t: TransferFunction, target: aff.AffSubspace) -> aff.AffSubspace:
        raise UnsupportedDomain("backward synthesis is not supported for the affine domain")

    def from_init(self, decl: InitDecl) -> aff.AffSubspace:
        if isinstance(decl, InitTop):
            return aff.AffSubspace.full(self.n)
        if isinstance(decl, InitBot):
            return aff.AffSubspace.empty(self.n)
        if isinstance(decl, InitVector):
            from fractions import Fraction

            rows = []
            for i, e in enumerate(decl.entries):
                if e == TOP_ENTRY:
                    continue
                coeffs = [Fraction(0)] * self.n
                coeffs[i] = Fraction(1)
                rows.append(LinExpr(tuple(coeffs), -Fraction(e)))
            return aff.from_equalities(rows, self.n)
        if isinstance(decl, InitPoints):
            return aff.hull_points(decl.points, self.n)
        if isinstance(decl, InitConstraints):
            return aff.from_equalities(decl.rows, self.n)
        raise TypeError(f"unknown init declaration {decl!r}")

    def render(self, a: aff.AffSubspace) -> str:
        text = aff.render_affine(a)
        return text if text in ("top", "bot") else "{" + text + "}"


Adapter = ConstAdapter | AffAdapter


def make_adapter(program: Program, domain: str) -> Adapter:
    if domain == "const":
        adapter: Adapter = ConstAdapter(program.n)
    elif domain == "affine":
        adapter = AffAdapter(program.n)
    else:
        raise UnsupportedDomain(f"unknown domain {domain!r}")
    if program.sort != adapter.sort:
        raise UnsupportedDomain(
            f"domain {domain!r} requires sort {adapter.sort!r}, program has {program.sort!r}"
        )
    return adapter


# ---------------------------------------------------------------------------
# Analysis problems and results
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AnalysisProblem:
    """A program, a domain, the abstracted initial states, and a safety vector."""

    program: Program
    adapter: Adapter
    init: StateVector  # alpha of the declared initial states
    safety: StateVector

    @classmethod
    def build(
        cls,
        program: Program,
        domain: str,
        prop: dict[str, InitDecl] | None = None,
    ) -> "AnalysisProblem":
        adapter = make_adapter(program, domain)
        init = StateVector(
            program.nodes,
            tuple(adapter.from_init(program.init_decl(q)) for q in program.nodes),
        )
        top = adapter.domain.top()
        prop = prop or {}
        safety = StateVector(
            program.nodes,
            tuple(adapter.from_init(prop[q]) if q in prop else top for q in program.nodes),
        )
        return cls(program, adapter, init, safety)

    def leq(self, u: StateVector, v: StateVector) -> bool:
        dom = self.adapter.domain
        return all(dom.leq(a, b) for a, b in zip(u.values, v.values))

    def max_trace_len(self) -> int:
        h = self.adapter.domain.height()
        assert h is not None
        return h * len(self.program.nodes) + 1


@dataclass(frozen=True)
class SynthesisResult:
    """Outcome of a synthesis run, with the full iterate trace."""

    found: bool
    kind: str | None  # "least" | "greatest"
    invariant: StateVector | None
    trace: tuple[StateVector, ...]
    step: int | None = None  # failing step index for a negative outcome
    violating: StateVector | None = None
    reason: str | None = None  # "property-violated" | "init-not-entailed" | "verification-failed"


# ---------------------------------------------------------------------------
# Transformers on state vectors
# ---------------------------------------------------------------------------


def pure_post_step(problem: AnalysisProblem, v: StateVector) -> StateVector:
    """Best abstract successor: at q', the join of edge images from all sources."""
    adapter = problem.adapter
    dom = adapter.domain
    out = []
    for q in problem.program.nodes:
        acc = dom.bottom()
        for src, t in post_edges_into(problem.program, q):
            acc = dom.join(acc, adapter.transfer(t, v[src]))
        out.append(acc)
    return v.with_values(out)


def abstract_post_step(problem: AnalysisProblem, v: StateVector) -> StateVector:
    """One forward iteration step: initial abstraction joined with the post image."""
    stepped = pure_post_step(problem, v)
    dom = problem.adapter.domain
    return v.with_values(
        tuple(dom.join(i, s) for i, s in zip(problem.init.values, stepped.values))
    )


def abstract_pret_step(problem: AnalysisProblem, v: StateVector) -> StateVector:
    """One backward iteration step: wp-meet over outgoing edges, then ∩ v ∩ safety.

    At a node with no outgoing edges the wp contribution is the full space.
    """
    adapter = problem.adapter
    dom = adapter.domain
    out = []
    for q, current, safe in zip(problem.program.nodes, v.values, problem.safety.values):
        acc = dom.top()
        for t, dst in out_edges(problem.program, q):
            acc = dom.meet(acc, adapter.wp(t, v[dst]))
        out.append(dom.meet(dom.meet(acc, current), safe))
    return v.with_values(out)


def verify_invariant(problem: AnalysisProblem, candidate: StateVector) -> bool:
    """Abstract inductiveness: init ≤ I, post(I) ≤ I, I ≤ safety."""
    return (
        problem.leq(problem.init, candidate)
        and problem.leq(pure_post_step(problem, candidate), candidate)
        and problem.leq(candidate, problem.safety)
    )


# ---------------------------------------------------------------------------
# Synthesis algorithms
# ---------------------------------------------------------------------------


def ainv_forward(problem: AnalysisProblem) -> SynthesisResult:
    """Least-fixpoint synthesis: ascend from the initial abstraction.

    Checks the safety vector before each step (the first violating iterate
    disproves the existence of any abstract inductive invariant below the
    property); stabilization yields the least abstract inductive invariant.
    """
    current = problem.init
    trace = [current]
    budget = problem.max_trace_len() + 1
    for step in range(budget):
        if not problem.leq(current, problem.safety):
            return SynthesisResult(
                False, None, None, tuple(trace), step=step, violating=current,
                reason="property-violated",
            )
        stepped = abstract_post_step(problem, current)
        if stepped == current:
            return SynthesisResult(True, "least", current, tuple(trace))
        current = stepped
        trace.append(current)
    raise HeightBudgetExceeded("forward iteration exceeded the product height bound")


def backward_gfp(problem: AnalysisProblem) -> SynthesisResult:
    """Greatest-fixpoint synthesis: descend from the full vector by wp-meets.

    The stabilized iterate is the greatest candidate; it is re-verified with
    the forward transformer before being reported (the wp abstraction is
    sound but the domain is not union-closed, so verification is what makes
    the certificate unconditional).
    """
    top_vec = StateVector.uniform(problem.program.nodes, problem.adapter.domain.top())
    current = top_vec
    trace = [current]
    budget = problem.max_trace_len() + 1
    for step in range(budget):
        if not problem.leq(problem.init, current):
            return SynthesisResult(
                False, None, None, tuple(trace), step=step, violating=current,
                reason="init-not-entailed",
            )
        stepped = abstract_pret_step(problem, current)
        if stepped == current:
            if verify_invariant(problem, current):
                return SynthesisResult(True, "greatest", current, tuple(trace))
            return SynthesisResult(
                False, None, None, tuple(trace), step=step, violating=current,
                reason="verification-failed",
            )
        current = stepped
        trace.append(current)
    raise HeightBudgetExceeded("backward iteration exceeded the product height bound")


def synthesize(problem: AnalysisProblem, algorithm: str) -> SynthesisResult:
    if algorithm == "forward":
        return ainv_forward(problem)
    if algorithm == "backward":
        if isinstance(problem.adapter, AffAdapter):
            raise UnsupportedDomain("backward synthesis is not supported for the affine domain")
        return backward_gfp(problem)
    raise ValueError(f"unknown algorithm {algorithm!r}")


def forward_gfp_finite(
    ts: FiniteTS,
    fam: ClosureFamily,
    init: int | None = None,
    safe: int | None = None,
) -> AlgoResult:
    """Co-inductive forward synthesis on an explicit finite instance.

    Delegates to the finite harness; the family must be intersection- and
    union-closed (validated there).  ``init``/``safe`` masks override the
    ones stored in the transition system.
    """
    if init is not None or safe is not None:
        ts = FiniteTS(
            ts.size,
            ts.transitions,
            ts.init if init is None else init,
            ts.safe if safe is None else safe,
        )
    return run_algorithm4(ts, fam)


def render_state_vector(adapter: Adapter, v: StateVector) -> str:
    return " ".join(f"{q}={adapter.render(x)}" for q, x in zip(v.nodes, v.values))
