"""Quantum backend: exact feasibility oracle and the standard constructions.

Possibility of a finite task under unitary dynamics is a property of pairwise
overlaps only.  Without side effects a unitary realizing the task exists iff
some choice of output states reproduces the input Gram matrix entrywise.
With side effects an ancilla may soak up the difference: the task is possible
iff the entrywise ratio of input to output overlaps can be completed to a
positive semidefinite matrix with unit diagonal (the Gram matrix of the
garbage states).  Forced entries decide most cases outright; when only the
free entries are in doubt the oracle says so instead of guessing.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import prod

import numpy as np

from .errors import (
    NotMeasurableError,
    PreconditionError,
    ReceptiveStateError,
    RepresentationError,
    SizeLimitError,
    StateError,
    TransformError,
)
from .kernel import (
    IMPOSSIBLE,
    POSSIBLE,
    QUANTUM,
    UNKNOWN,
    Attribute,
    PossibilityVerdict,
    SubstrateSpec,
    Task,
    Variable,
    attribute_projector,
    attribute_span,
)
from .states import (
    MixedState,
    PureState,
    State,
    apply_unitary,
    basis_state,
    expectation,
    partial_trace,
    tensor,
)
from .tolerance import tol

BACKEND = "quantum"

SHARP_YES = "sharp-yes"
SHARP_NO = "sharp-no"
NON_SHARP = "non-sharp"


@dataclass(frozen=True)
class QuantumModel:
    substrate: SubstrateSpec
    assignment_guard: int = 10**6

    kind = QUANTUM

    def possible(self, task: Task) -> PossibilityVerdict:
        return unitary_task_feasible(task, self)

    def check_witness(self, task: Task, witness) -> bool:
        return _witness_ok(task, witness)


# ---------------------------------------------------------------------------
# Gram matrices and the feasibility oracle


@dataclass(frozen=True)
class GramMatrix:
    """Pairwise overlaps <s_i|s_j> of a list of pure states."""

    matrix: np.ndarray

    def __post_init__(self):
        mat = np.array(self.matrix, dtype=complex)
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)


def gram(states) -> GramMatrix:
    states = list(states)
    if not states:
        return GramMatrix(np.zeros((0, 0)))
    dim = states[0].dim
    for s in states:
        if not isinstance(s, PureState):
            raise RepresentationError("gram matrices are defined for pure states")
        if s.dim != dim:
            raise StateError("gram inputs must share one dimension")
    vecs = np.array([s.vector for s in states])
    return GramMatrix(vecs.conj() @ vecs.T)


def _pure_states_of(attr: Attribute):
    if attr.is_subspace:
        raise RepresentationError(
            "subspace attribute given to the pure-state oracle; "
            "convert via explicit basis enumeration first"
        )
    for s in attr.states:
        if not isinstance(s, PureState):
            raise RepresentationError("the feasibility oracle handles pure states only")
    return attr.states


def _ratio_matrix(g_in: np.ndarray, g_out: np.ndarray, atol: float):
    """Forced completion of the garbage Gram matrix, or the reason none exists.

    Returns (status, matrix_or_none, certificate, had_free_entries).
    """
    n = g_in.shape[0]
    a = np.eye(n, dtype=complex)
    free = False
    for i in range(n):
        for j in range(i + 1, n):
            go, gi = g_out[i, j], g_in[i, j]
            if abs(go) > atol:
                ratio = gi / go
                if abs(ratio) > 1.0 + atol:
                    cert = (
                        f"inputs {i},{j}: garbage overlap ratio |{ratio:.6g}| "
                        "exceeds 1, no unit vectors can carry it"
                    )
                    return IMPOSSIBLE, None, cert, free
                a[i, j], a[j, i] = ratio, np.conj(ratio)
            elif abs(gi) > atol:
                cert = (
                    f"inputs {i},{j}: outputs are orthogonal but inputs "
                    f"overlap by {abs(gi):.6g}"
                )
                return IMPOSSIBLE, None, cert, free
            else:
                free = True  # both overlaps vanish; entry left at zero
    if float(np.linalg.eigvalsh(a).min()) < -atol:
        if free:
            cert = "zero completion of the garbage Gram matrix is not PSD"
            return UNKNOWN, a, cert, free
        cert = "forced garbage Gram matrix is not PSD"
        return UNKNOWN, a, cert, free
    return POSSIBLE, a, None, free


def _task_demands(task: Task):
    ins, outs = [], []
    for attr_in, attr_out in task.pairs:
        out_states = _pure_states_of(attr_out)
        for s in _pure_states_of(attr_in):
            ins.append(s)
            outs.append(out_states)
    return ins, outs


def unitary_task_feasible(task: Task, model: QuantumModel) -> PossibilityVerdict:
    """Exact possibility of a finite quantum task, by Gram comparison."""
    atol = tol()
    ins, outs = _task_demands(task)
    total = 1
    for options in outs:
        total *= len(options)
        if total > model.assignment_guard:
            raise SizeLimitError(
                f"choice-function space exceeds the guard of {model.assignment_guard}"
            )
    g_in = gram(ins).matrix

    first_cert = None
    saw_unknown = None
    for choice in itertools.product(*(range(len(o)) for o in outs)):
        chosen = [outs[k][c] for k, c in enumerate(choice)]
        g_out = gram(chosen).matrix
        if not task.side_effects:
            dev = float(np.abs(g_in - g_out).max()) if len(ins) else 0.0
            if dev <= atol:
                return PossibilityVerdict(
                    POSSIBLE, witness={"choice": choice}, backend=BACKEND
                )
            if first_cert is None:
                i, j = divmod(int(np.abs(g_in - g_out).argmax()), len(ins))
                first_cert = (
                    f"no choice preserves the Gram matrix; e.g. inputs {i},{j} "
                    f"need overlap {g_in[i, j]:.6g} but outputs give {g_out[i, j]:.6g}"
                )
            continue
        status, a, cert, _ = _ratio_matrix(g_in, g_out, atol)
        if status == POSSIBLE:
            return PossibilityVerdict(
                POSSIBLE, witness={"choice": choice, "garbage_gram": a}, backend=BACKEND
            )
        if status == UNKNOWN:
            saw_unknown = cert
        elif first_cert is None:
            first_cert = cert
    if saw_unknown is not None:
        return PossibilityVerdict(UNKNOWN, certificate=saw_unknown, backend=BACKEND)
    return PossibilityVerdict(IMPOSSIBLE, certificate=first_cert, backend=BACKEND)


def _witness_ok(task: Task, witness) -> bool:
    if not isinstance(witness, dict) or "choice" not in witness:
        return False
    atol = tol()
    ins, outs = _task_demands(task)
    choice = witness["choice"]
    if len(choice) != len(ins):
        return False
    try:
        chosen = [outs[k][c] for k, c in enumerate(choice)]
    except IndexError:
        return False
    g_in = gram(ins).matrix
    g_out = gram(chosen).matrix
    if not task.side_effects:
        return float(np.abs(g_in - g_out).max()) <= atol
    status, _, _, _ = _ratio_matrix(g_in, g_out, atol)
    return status == POSSIBLE


# ---------------------------------------------------------------------------
# Measurers


def _completion_unitary(first_col: np.ndarray, dim: int, recv: int) -> np.ndarray:
    """Deterministic unitary with column `recv` equal to first_col; the rest
    is filled by Gram-Schmidt over the standard basis in index order."""
    cols: list = [None] * dim
    cols[recv] = first_col
    basis = [first_col]
    slots = [j for j in range(dim) if j != recv]
    filled = 0
    for cand in range(dim):
        if filled >= len(slots):
            break
        v = np.zeros(dim, dtype=complex)
        v[cand] = 1.0
        for b in basis:
            v = v - np.vdot(b, v) * b
        norm = float(np.linalg.norm(v))
        if norm > 1e-9:
            v = v / norm
            basis.append(v)
            cols[slots[filled]] = v
            filled += 1
    return np.column_stack(cols)


@dataclass(frozen=True)
class MeasurerSpec:
    """A measurement interaction: source states tagged onto a fresh target.

    The unitary acts on source (x) target and sends |v>|recv> to |v>|flag_k>
    for any v in the k-th attribute's span.  Off the measured subspace and
    off the receptive target state the action is an arbitrary but fixed
    deterministic completion.
    """

    source_dim: int
    target_dim: int
    labels: tuple
    projectors: tuple          # span projector per label, on the source
    flags: tuple               # flag vector per label, on the target
    unitary: np.ndarray
    receptive_index: int = 0

    def flag_state(self, label) -> PureState:
        return PureState(self.flags[self.labels.index(label)])

    def flag_projector(self, label) -> np.ndarray:
        v = self.flags[self.labels.index(label)]
        return np.outer(v, v.conj())

    def receptive_state(self) -> PureState:
        return basis_state(self.target_dim, self.receptive_index)


def build_measurer(
    x: Variable,
    target_dim: int | None = None,
    labeling: dict | None = None,
    flag_states: dict | None = None,
) -> MeasurerSpec:
    """Measurer of a variable whose attribute spans are pairwise orthogonal.

    labeling maps each label to a target basis index; flag_states may instead
    map labels to arbitrary orthonormal target vectors (used where the output
    alphabet is itself structured).  Defaults: label k of the variable gets
    target basis index k.
    """
    atol = tol()
    spans = [attribute_span(a) for a in x.attributes]
    for i, si in enumerate(spans):
        for j in range(i + 1, len(spans)):
            sj = spans[j]
            if si.size and sj.size:
                overlap = float(np.abs(si.conj() @ sj.T).max())
                if overlap > atol:
                    raise NotMeasurableError(
                        f"attributes {x.labels[i]!r} and {x.labels[j]!r} have "
                        f"non-orthogonal spans (overlap {overlap:.6g})"
                    )
    n = len(x.members)
    if target_dim is None:
        if flag_states is None:
            target_dim = n
        else:
            sample = next(iter(flag_states.values()))
            target_dim = sample.dim if isinstance(sample, PureState) else len(sample)
    if flag_states is not None:
        flags = []
        for label in x.labels:
            v = flag_states[label]
            flags.append(v.vector if isinstance(v, PureState) else np.asarray(v, dtype=complex))
        for i, u in enumerate(flags):
            for j in range(i + 1, len(flags)):
                if abs(np.vdot(u, flags[j])) > atol:
                    raise NotMeasurableError("flag states must be pairwise orthogonal")
    else:
        if target_dim < n:
            raise PreconditionError(
                f"target dimension {target_dim} cannot hold {n} outcome flags"
            )
        labeling = labeling or {label: k for k, label in enumerate(x.labels)}
        indices = [labeling[label] for label in x.labels]
        if len(set(indices)) != n or any(k < 0 or k >= target_dim for k in indices):
            raise PreconditionError("labeling must assign distinct in-range flags")
        flags = [basis_state(target_dim, k).vector for k in indices]

    source_dim = x.substrate.dim
    recv = 0
    projectors = []
    total = np.zeros((source_dim, source_dim), dtype=complex)
    for span in spans:
        p = span.conj().T @ span
        projectors.append(p)
        total = total + p
    unitary = np.zeros((source_dim * target_dim,) * 2, dtype=complex)
    for p, flag in zip(projectors, flags):
        t_k = _completion_unitary(np.asarray(flag), target_dim, recv)
        unitary += np.kron(p, t_k)
    rest = np.eye(source_dim) - total
    if float(np.abs(rest).max()) > 1e-12:
        unitary += np.kron(rest, np.eye(target_dim))
    dev = float(np.abs(unitary.conj().T @ unitary - np.eye(source_dim * target_dim)).max())
    if dev > 1e-9:
        raise NotMeasurableError(f"measurer construction lost unitarity (deviation {dev:.3g})")
    return MeasurerSpec(
        source_dim=source_dim,
        target_dim=target_dim,
        labels=x.labels,
        projectors=tuple(projectors),
        flags=tuple(np.asarray(f) for f in flags),
        unitary=unitary,
        receptive_index=recv,
    )


def apply_measurer(m: MeasurerSpec, joint: State, factors: tuple[int, int] = (0, 1)) -> State:
    """Run the measurement unitary; the target factor must be receptive."""
    src_f, tgt_f = factors
    dims = joint.dims
    if dims[src_f] != m.source_dim or dims[tgt_f] != m.target_dim:
        raise PreconditionError(
            f"joint dims {dims} do not expose a ({m.source_dim},{m.target_dim}) "
            f"pair at factors {factors}"
        )
    rho_t = partial_trace(joint, tgt_f)
    recv = m.receptive_state()
    if expectation(rho_t, np.outer(recv.vector, recv.vector.conj())) < 1.0 - tol():
        raise ReceptiveStateError("target factor is not in the receptive state")
    return apply_unitary(joint, m.unitary, factors=factors)


def intrinsic_part(joint: State, factor) -> MixedState:
    """What the joint state looks like from one factor alone."""
    return partial_trace(joint, factor)


# ---------------------------------------------------------------------------
# Comparers


@dataclass(frozen=True)
class ComparisonOutcome:
    verdict: str
    expectation: float


@dataclass(frozen=True)
class ComparerSpec:
    """Two-outcome check of 'same value on both factors'.

    The yes outcome is the projector onto span{|x>_a |x>_b} over the shared
    label set, with each factor contributing its own basis vector for x.
    """

    labels: tuple
    dim_a: int
    dim_b: int
    basis_a: tuple
    basis_b: tuple
    projector: np.ndarray

    def compare(self, state: State) -> ComparisonOutcome:
        if prod(state.dims) != self.dim_a * self.dim_b:
            raise PreconditionError("state size does not match the compared factors")
        value = expectation(state, self.projector)
        atol = tol()
        if value >= 1.0 - atol:
            return ComparisonOutcome(SHARP_YES, value)
        if value <= atol:
            return ComparisonOutcome(SHARP_NO, value)
        return ComparisonOutcome(NON_SHARP, value)


def build_comparer(labels, basis_a=None, basis_b=None, dim_a=None, dim_b=None) -> ComparerSpec:
    """Comparer over a shared label set; default bases are the standard ones."""
    labels = tuple(labels)
    n = len(labels)
    dim_a = dim_a if dim_a is not None else (basis_a[0].dim if basis_a else n)
    dim_b = dim_b if dim_b is not None else (basis_b[0].dim if basis_b else n)

    def default_basis(dim):
        return tuple(basis_state(dim, k) for k in range(n))

    basis_a = tuple(basis_a) if basis_a is not None else default_basis(dim_a)
    basis_b = tuple(basis_b) if basis_b is not None else default_basis(dim_b)
    if len(basis_a) != n or len(basis_b) != n:
        raise PreconditionError("need one basis vector per label on each factor")
    atol = tol()
    for basis in (basis_a, basis_b):
        for i, u in enumerate(basis):
            for j in range(i + 1, n):
                if abs(np.vdot(u.vector, basis[j].vector)) > atol:
                    raise PreconditionError("comparer bases must be orthonormal")
    projector = np.zeros((dim_a * dim_b,) * 2, dtype=complex)
    for u, v in zip(basis_a, basis_b):
        w = np.kron(u.vector, v.vector)
        projector += np.outer(w, w.conj())
    return ComparerSpec(labels, dim_a, dim_b, basis_a, basis_b, projector)


def comparer_for_measurers(m1: MeasurerSpec, m2: MeasurerSpec, labels=None) -> ComparerSpec:
    """Comparer of the targets of two measurers over their shared labels."""
    labels = tuple(labels) if labels is not None else tuple(
        l for l in m1.labels if l in m2.labels
    )
    basis_a = tuple(m1.flag_state(l) for l in labels)
    basis_b = tuple(m2.flag_state(l) for l in labels)
    return build_comparer(labels, basis_a, basis_b, m1.target_dim, m2.target_dim)


# ---------------------------------------------------------------------------
# Permutations acting as computations


def permutation_computation(mapping: dict, members) -> np.ndarray:
    """Unitary sending the state for label x to the state for mapping[x].

    members: ordered (label, PureState) pairs with orthonormal vectors.  The
    unitary acts as the identity on the orthogonal rest of the space.
    """
    members = tuple(members)
    labels = [l for l, _ in members]
    if set(mapping) != set(labels) or set(mapping.values()) != set(labels):
        missing = set(mapping.values()) - set(labels) or set(labels) - set(mapping)
        raise TransformError(f"permutation is not closed on the label set: {sorted(map(repr, missing))}")
    vec = {l: s.vector for l, s in members}
    atol = tol()
    for i, (li, _) in enumerate(members):
        for lj, _ in members[i + 1:]:
            if abs(np.vdot(vec[li], vec[lj])) > atol:
                raise PreconditionError("permutation members must be orthonormal")
    dim = members[0][1].dim
    u = np.zeros((dim, dim), dtype=complex)
    covered = np.zeros((dim, dim), dtype=complex)
    for label in labels:
        u += np.outer(vec[mapping[label]], vec[label].conj())
        covered += np.outer(vec[label], vec[label].conj())
    return u + (np.eye(dim) - covered)


def transposition_map(labels, a, b) -> dict:
    mapping = {l: l for l in labels}
    mapping[a], mapping[b] = b, a
    return mapping


def cyclic_shift_map(labels, k: int) -> dict:
    """Shift each label k places along the given cyclic order."""
    labels = tuple(labels)
    n = len(labels)
    return {labels[i]: labels[(i + k) % n] for i in range(n)}


def negation_map(labels) -> dict:
    """x -> -x; every negated label must itself be a label."""
    labels = tuple(labels)
    mapping = {}
    for x in labels:
        if -x not in labels:
            raise TransformError(f"label set is not closed under negation: {x!r}")
        mapping[x] = -x
    return mapping


def basis_members(labels, dim: int | None = None):
    """Standard-basis (label, state) pairs, in label order."""
    labels = tuple(labels)
    dim = dim if dim is not None else len(labels)
    return tuple((label, basis_state(dim, k)) for k, label in enumerate(labels))


# ---------------------------------------------------------------------------
# Sharpness


def sharp_value(state: State, x: Variable, atol: float | None = None):
    """The label whose attribute holds the whole state, or None."""
    atol = tol() if atol is None else atol
    for label, attr in x.members:
        if expectation(state, attribute_projector(attr)) >= 1.0 - atol:
            return label
    return None
