"""Substrates, attributes, variables and tasks.

The kernel is backend-neutral: it knows how to form and validate these
objects and how to combine them, but possibility itself is decided by a
model object (classical or quantum) that the kernel merely dispatches to.

A classical substrate carries an explicit finite universe of labels; a
composite classical substrate's universe is the set of flat tuples of leaf
labels, so composition is associative up to factor-list flattening.  A
quantum substrate carries a Hilbert-space dimension.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import prod
from numbers import Real
from typing import Any

import numpy as np

from .errors import (
    DisjointnessError,
    DispatchError,
    InvalidCompositionError,
    LabelArithmeticError,
    RepresentationError,
    StateError,
)
from .states import MixedState, PureState, State, basis_state, states_equal, tensor
from .tolerance import tol

CLASSICAL = "classical"
QUANTUM = "quantum"


@dataclass(frozen=True)
class SubstrateSpec:
    """A physical system: finite label universe or Hilbert dimension."""

    id: str
    kind: str
    labels: tuple = ()          # classical leaf universe
    dimension: int = 0          # quantum leaf dimension
    factors: tuple["SubstrateSpec", ...] = ()

    def __post_init__(self):
        if self.kind not in (CLASSICAL, QUANTUM):
            raise InvalidCompositionError(f"unknown substrate kind {self.kind!r}")
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "factors", tuple(self.factors))
        if not self.factors:
            if self.kind == CLASSICAL:
                if not self.labels:
                    raise InvalidCompositionError(f"substrate {self.id!r} has an empty universe")
                if len(set(self.labels)) != len(self.labels):
                    raise InvalidCompositionError(f"substrate {self.id!r} has duplicate labels")
            elif self.dimension < 1:
                raise InvalidCompositionError(f"substrate {self.id!r} needs dimension >= 1")

    def leaves(self) -> tuple["SubstrateSpec", ...]:
        if not self.factors:
            return (self,)
        return tuple(leaf for f in self.factors for leaf in f.leaves())

    @property
    def leaf_dims(self) -> tuple[int, ...]:
        return tuple(f.dimension for f in self.leaves())

    @property
    def dim(self) -> int:
        if self.kind != QUANTUM:
            raise RepresentationError(f"substrate {self.id!r} is not quantum")
        return prod(self.leaf_dims) if self.factors else self.dimension

    def universe(self) -> tuple:
        """All states of a classical substrate; flat tuples when composite."""
        if self.kind != CLASSICAL:
            raise RepresentationError(f"substrate {self.id!r} has no finite universe")
        if not self.factors:
            return self.labels
        pools = [leaf.labels for leaf in self.leaves()]
        return tuple(itertools.product(*pools))

    def size(self) -> int:
        if self.kind == CLASSICAL:
            return prod(len(leaf.labels) for leaf in self.leaves())
        return self.dim


def classical_substrate(id: str, labels) -> SubstrateSpec:
    return SubstrateSpec(id=id, kind=CLASSICAL, labels=tuple(labels))


def quantum_substrate(id: str, dimension: int) -> SubstrateSpec:
    return SubstrateSpec(id=id, kind=QUANTUM, dimension=dimension)


def compose_substrates(a: SubstrateSpec, b: SubstrateSpec) -> SubstrateSpec:
    """Joint substrate of two systems of the same kind."""
    if a.kind != b.kind:
        raise InvalidCompositionError(f"cannot compose {a.kind} with {b.kind}")
    return SubstrateSpec(id=f"({a.id}+{b.id})", kind=a.kind, factors=(a, b))


# ---------------------------------------------------------------------------
# Attributes


@dataclass(frozen=True)
class ExtensionalSet:
    """An attribute given by listing its states outright."""

    states: tuple

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))


@dataclass(frozen=True)
class Subspace:
    """An attribute holding every state of a subspace (quantum only).

    The basis may be empty: that is the zero subspace, which contains no
    state at all and shows up as the orthogonal rest of a full variable.
    """

    basis: tuple

    def __post_init__(self):
        object.__setattr__(self, "basis", tuple(self.basis))
        t = tol()
        for i, u in enumerate(self.basis):
            for j, v in enumerate(self.basis):
                ip = abs(np.vdot(u.vector, v.vector))
                want = 1.0 if i == j else 0.0
                if abs(ip - want) > t:
                    raise StateError("subspace basis is not orthonormal")


@dataclass(frozen=True)
class Attribute:
    """A set of states of one substrate."""

    substrate: SubstrateSpec
    representation: ExtensionalSet | Subspace

    def __post_init__(self):
        rep = self.representation
        if isinstance(rep, Subspace):
            if self.substrate.kind != QUANTUM:
                raise RepresentationError("subspace attributes require a quantum substrate")
            for v in rep.basis:
                if v.dim != self.substrate.dim:
                    raise StateError("subspace basis dimension does not match substrate")
        else:
            if not rep.states:
                raise StateError("an extensional attribute cannot be empty")
            if self.substrate.kind == CLASSICAL:
                universe = set(self.substrate.universe())
                for s in rep.states:
                    if s not in universe:
                        raise StateError(f"state {s!r} is not in the universe of {self.substrate.id!r}")
                if len(set(rep.states)) != len(rep.states):
                    raise StateError("duplicate states in attribute")
            else:
                for s in rep.states:
                    if not isinstance(s, (PureState, MixedState)):
                        raise RepresentationError("quantum attribute states must be PureState or MixedState")
                    if s.dim != self.substrate.dim:
                        raise StateError("state dimension does not match substrate")
                for i, s in enumerate(rep.states):
                    for r in rep.states[i + 1:]:
                        if states_equal(s, r):
                            raise StateError("duplicate states in attribute (up to phase)")

    @property
    def is_subspace(self) -> bool:
        return isinstance(self.representation, Subspace)

    @property
    def states(self) -> tuple:
        if self.is_subspace:
            raise RepresentationError("a subspace attribute has no finite state list")
        return self.representation.states

    @property
    def basis(self) -> tuple:
        if not self.is_subspace:
            raise RepresentationError("not a subspace attribute")
        return self.representation.basis


def extensional_attribute(substrate: SubstrateSpec, states) -> Attribute:
    return Attribute(substrate, ExtensionalSet(tuple(states)))


def subspace_attribute(substrate: SubstrateSpec, basis) -> Attribute:
    return Attribute(substrate, Subspace(tuple(basis)))


def attribute_span(attr: Attribute) -> np.ndarray:
    """Orthonormal basis (rows) of the span of a quantum attribute's states."""
    if attr.substrate.kind != QUANTUM:
        raise RepresentationError("span is a quantum notion")
    if attr.is_subspace:
        if not attr.basis:
            return np.zeros((0, attr.substrate.dim), dtype=complex)
        return np.array([v.vector for v in attr.basis])
    rows = []
    for s in attr.states:
        if isinstance(s, PureState):
            rows.append(s.vector)
        else:
            vals, vecs = np.linalg.eigh(s.matrix)
            for val, col in zip(vals, vecs.T):
                if val > tol():
                    rows.append(col)
    mat = np.array(rows)
    u, sing, vh = np.linalg.svd(mat, full_matrices=False)
    rank = int(np.sum(sing > 1e-12))
    return vh[:rank]


def attribute_projector(attr: Attribute) -> np.ndarray:
    basis = attribute_span(attr)
    return basis.conj().T @ basis


def contains_state(attr: Attribute, state: State, atol: float | None = None) -> bool:
    """Membership of a single state in an attribute."""
    atol = tol() if atol is None else atol
    if attr.is_subspace:
        proj = attribute_projector(attr)
        if isinstance(state, PureState):
            return float(np.linalg.norm(proj @ state.vector)) >= 1.0 - atol
        # a mixture belongs to a subspace attribute only if it is pure within it
        mat = state.density().matrix
        if float(np.real(np.trace(proj @ mat))) < 1.0 - atol:
            return False
        return float(np.linalg.eigvalsh(mat).max()) >= 1.0 - atol
    if attr.substrate.kind == CLASSICAL:
        return state in attr.states
    return any(states_equal(s, state, atol) for s in attr.states)


def attributes_disjoint(a: Attribute, b: Attribute) -> tuple[bool, Any]:
    """Whether two attributes share no state; returns (flag, witness)."""
    if a.substrate.kind == CLASSICAL:
        shared = set(a.states) & set(b.states)
        return (not shared, next(iter(shared)) if shared else None)
    if a.is_subspace and b.is_subspace:
        # disjoint as state sets iff the subspaces meet only in the zero vector
        sa, sb = attribute_span(a), attribute_span(b)
        if sa.size == 0 or sb.size == 0:
            return True, None
        stacked = np.vstack([sa, sb])
        rank = int(np.linalg.matrix_rank(stacked, tol=1e-9))
        if rank == sa.shape[0] + sb.shape[0]:
            return True, None
        return False, "subspaces intersect nontrivially"
    if a.is_subspace or b.is_subspace:
        ext, sub = (b, a) if a.is_subspace else (a, b)
        for s in ext.states:
            if contains_state(sub, s):
                return False, s
        return True, None
    for s in a.states:
        for r in b.states:
            if states_equal(s, r):
                return False, s
    return True, None


def attribute_subset(a: Attribute, b: Attribute) -> bool:
    """Every state of a is a state of b."""
    if a.substrate.kind == CLASSICAL:
        return set(a.states) <= set(b.states)
    if a.is_subspace:
        if not b.is_subspace:
            return False
        proj = attribute_projector(b)
        return all(
            float(np.linalg.norm(proj @ v.vector)) >= 1.0 - tol() for v in a.basis
        ) if a.basis else True
    return all(contains_state(b, s) for s in a.states)


def attribute_equal(a: Attribute, b: Attribute) -> bool:
    return attribute_subset(a, b) and attribute_subset(b, a)


def product_attribute(a: Attribute, b: Attribute) -> Attribute:
    """Attribute of the composite substrate with each factor in its own attribute."""
    substrate = compose_substrates(a.substrate, b.substrate)
    if a.substrate.kind == CLASSICAL:
        def flat(state, sub):
            return state if sub.factors else (state,)
        states = tuple(
            flat(s, a.substrate) + flat(r, b.substrate)
            for s in a.states
            for r in b.states
        )
        return extensional_attribute(substrate, states)
    if a.is_subspace or b.is_subspace:
        if not (a.is_subspace and b.is_subspace):
            raise RepresentationError("cannot mix subspace and extensional factors in a product")
        basis = tuple(tensor(u, v) for u in a.basis for v in b.basis)
        return subspace_attribute(substrate, basis)
    states = tuple(tensor(s, r) for s in a.states for r in b.states)
    return extensional_attribute(substrate, states)


def attribute_union(parts) -> Attribute:
    """Union of extensional attributes on a common substrate."""
    parts = list(parts)
    substrate = parts[0].substrate
    merged: list = []
    for p in parts:
        if p.is_subspace:
            raise RepresentationError("union of subspace attributes is not supported")
        for s in p.states:
            if substrate.kind == CLASSICAL:
                if s not in merged:
                    merged.append(s)
            elif not any(states_equal(s, q) for q in merged):
                merged.append(s)
    return extensional_attribute(substrate, merged)


# ---------------------------------------------------------------------------
# Variables


@dataclass(frozen=True)
class Variable:
    """An ordered set of pairwise disjoint attributes with distinct labels."""

    substrate: SubstrateSpec
    members: tuple  # of (label, Attribute)

    def __post_init__(self):
        object.__setattr__(self, "members", tuple((l, a) for l, a in self.members))
        validate_variable(self.members, substrate=self.substrate)

    @property
    def labels(self) -> tuple:
        return tuple(l for l, _ in self.members)

    @property
    def attributes(self) -> tuple[Attribute, ...]:
        return tuple(a for _, a in self.members)

    def attribute(self, label) -> Attribute:
        for l, a in self.members:
            if l == label:
                return a
        raise KeyError(label)

    def __len__(self) -> int:
        return len(self.members)


def validate_variable(members, substrate: SubstrateSpec | None = None) -> None:
    """Reject duplicate labels and overlapping attributes, naming offenders."""
    members = tuple(members)
    if not members:
        raise DisjointnessError("a variable needs at least one member")
    labels = [l for l, _ in members]
    if len(set(labels)) != len(labels):
        dupe = next(l for l in labels if labels.count(l) > 1)
        raise DisjointnessError(f"duplicate label {dupe!r} in variable")
    if substrate is not None:
        for label, attr in members:
            if attr.substrate.kind != substrate.kind or attr.substrate.size() != substrate.size():
                raise DisjointnessError(f"attribute {label!r} lives on a different substrate")
    for i, (la, a) in enumerate(members):
        for lb, b in members[i + 1:]:
            ok, witness = attributes_disjoint(a, b)
            if not ok:
                raise DisjointnessError(
                    f"attributes {la!r} and {lb!r} overlap (shared state: {witness!r})"
                )


def variable(substrate: SubstrateSpec, members) -> Variable:
    return Variable(substrate, tuple(members))


def union_attribute_of(var: Variable) -> Attribute:
    return attribute_union(var.attributes)


def coarsen_variable(x1: Variable, x2: Variable, mode: str = "sum") -> Variable:
    """Joint variable on the composite substrate whose labels are sums or
    products of the factor labels; equal values merge into one attribute."""
    if mode not in ("sum", "product"):
        raise LabelArithmeticError(f"unknown coarsening mode {mode!r}")
    for v in (x1, x2):
        for label in v.labels:
            if not isinstance(label, Real) or isinstance(label, bool):
                raise LabelArithmeticError(f"label {label!r} does not support arithmetic")
    substrate = compose_substrates(x1.substrate, x2.substrate)
    buckets: dict = {}
    order: list = []
    for l1, a1 in x1.members:
        for l2, a2 in x2.members:
            value = l1 + l2 if mode == "sum" else l1 * l2
            if value not in buckets:
                buckets[value] = []
                order.append(value)
            buckets[value].append(product_attribute(a1, a2))
    members = tuple((value, attribute_union(buckets[value])) for value in order)
    return Variable(substrate, members)


# ---------------------------------------------------------------------------
# Tasks


@dataclass(frozen=True)
class Task:
    """A finite set of input -> output attribute pairs on one substrate."""

    substrate: SubstrateSpec
    pairs: tuple  # of (Attribute, Attribute)
    side_effects: bool = False

    def __post_init__(self):
        object.__setattr__(self, "pairs", tuple((i, o) for i, o in self.pairs))
        for attr_in, attr_out in self.pairs:
            for attr in (attr_in, attr_out):
                if attr.substrate.kind != self.substrate.kind or attr.substrate.size() != self.substrate.size():
                    raise InvalidCompositionError("task attribute on a different substrate")
        ins = [p[0] for p in self.pairs]
        for i, a in enumerate(ins):
            for b in ins[i + 1:]:
                ok, witness = attributes_disjoint(a, b)
                if not ok:
                    raise DisjointnessError(
                        f"task input attributes overlap (shared state: {witness!r})"
                    )


def task(substrate: SubstrateSpec, pairs, side_effects: bool = False) -> Task:
    return Task(substrate, tuple(pairs), side_effects)


def identity_task(substrate: SubstrateSpec) -> Task:
    """The do-nothing task: every state back to itself."""
    if substrate.kind == CLASSICAL:
        u = extensional_attribute(substrate, substrate.universe())
    else:
        d = substrate.dim
        u = extensional_attribute(substrate, [basis_state(d, k) for k in range(d)])
    return Task(substrate, ((u, u),))


def parallel_task(a: Task, b: Task) -> Task:
    """Both tasks side by side on the composite substrate."""
    substrate = compose_substrates(a.substrate, b.substrate)
    pairs = tuple(
        (product_attribute(ai, bi), product_attribute(ao, bo))
        for ai, ao in a.pairs
        for bi, bo in b.pairs
    )
    return Task(substrate, pairs, side_effects=a.side_effects or b.side_effects)


# ---------------------------------------------------------------------------
# Possibility verdicts


POSSIBLE = "possible"
IMPOSSIBLE = "impossible"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class PossibilityVerdict:
    status: str
    witness: Any = None
    certificate: str | None = None
    backend: str = ""

    def __post_init__(self):
        if self.status not in (POSSIBLE, IMPOSSIBLE, UNKNOWN):
            raise StateError(f"unknown verdict status {self.status!r}")

    @property
    def possible(self) -> bool:
        return self.status == POSSIBLE


def is_task_possible(task: Task, model) -> PossibilityVerdict:
    """Dispatch to the model's possibility oracle; kinds must match."""
    if task.substrate.kind != model.kind:
        raise DispatchError(
            f"task on a {task.substrate.kind} substrate cannot run on a {model.kind} model"
        )
    if not task.pairs:
        return PossibilityVerdict(POSSIBLE, witness="identity", backend=model.kind)
    return model.possible(task)


def replay_witness(task: Task, model, verdict: PossibilityVerdict) -> bool:
    """Check a stored witness against the backend it came from."""
    if verdict.status != POSSIBLE:
        return False
    if not task.pairs:
        return verdict.witness == "identity"
    return model.check_witness(task, verdict.witness)
