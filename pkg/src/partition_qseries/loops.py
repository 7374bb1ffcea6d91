"""Mutation sequences with relabelling steps, normal forms and pentagon moves."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

from .quiver import (
    Permutation,
    Quiver,
    QuiverError,
    check_permutation,
    compose,
    identity_permutation,
    invert,
    transposition,
)


class NotALoopError(ValueError):
    def __init__(self, final: Quiver, initial: Quiver):
        self.final = final
        self.initial = initial
        super().__init__(f"final quiver {list(map(list, final.b))} differs from the initial one")


class PentagonError(ValueError):
    pass


@dataclass(frozen=True)
class Mutate:
    vertex: int


@dataclass(frozen=True)
class Relabel:
    sigma: Permutation

    def __post_init__(self):
        object.__setattr__(self, "sigma", check_permutation(self.sigma))


Step = Union[Mutate, Relabel]


def _check_steps(n: int, steps: Iterable[Step]) -> list[Step]:
    out = []
    for st in steps:
        if isinstance(st, Mutate):
            if not 1 <= st.vertex <= n:
                raise QuiverError(f"mutation at {st.vertex} out of range 1..{n}")
        elif isinstance(st, Relabel):
            if len(st.sigma) != n:
                raise QuiverError(f"relabelling {st.sigma} has wrong size for n={n}")
        else:
            raise TypeError(f"not a step: {st!r}")
        out.append(st)
    return out


def apply_steps(q: Quiver, steps: Iterable[Step]) -> Quiver:
    for st in _check_steps(q.n, steps):
        q = q.mutate(st.vertex) if isinstance(st, Mutate) else q.relabel(st.sigma)
    return q


def normalize(steps: Sequence[Step], n: int) -> tuple[tuple[int, ...], Permutation]:
    """Rewrite a step list as ``(mu_{m_1}, ..., mu_{m_T}, phi)``.

    A relabelling ``sigma`` followed by ``mu_j`` is the same as ``mu_{sigma^-1(j)}``
    followed by ``sigma``; consecutive relabellings compose.
    """
    steps = _check_steps(n, steps)
    # pending permutation pushed rightwards through the list
    pending = identity_permutation(n)
    pending_inv = pending
    muts = []
    for st in steps:
        if isinstance(st, Mutate):
            muts.append(pending_inv[st.vertex - 1])
        else:
            pending = compose(st.sigma, pending)
            pending_inv = invert(pending)
    return tuple(muts), pending


def loop_steps(mutations: Iterable[int], phi: Sequence[int] | None = None) -> list[Step]:
    steps: list[Step] = [Mutate(int(v)) for v in mutations]
    if phi is not None:
        steps.append(Relabel(tuple(phi)))
    return steps


@dataclass(frozen=True)
class MutationLoop:
    """A validated loop ``(Q; steps)`` together with its normal form ``(m, phi)``."""

    quiver: Quiver
    steps: tuple[Step, ...]
    mutations: tuple[int, ...] = field(init=False)
    phi: Permutation = field(init=False)

    def __post_init__(self):
        steps = tuple(_check_steps(self.quiver.n, self.steps))
        object.__setattr__(self, "steps", steps)
        m, phi = normalize(steps, self.quiver.n)
        object.__setattr__(self, "mutations", m)
        object.__setattr__(self, "phi", phi)
        final = apply_steps(self.quiver, steps)
        if final != self.quiver:
            raise NotALoopError(final, self.quiver)

    @classmethod
    def from_normal_form(cls, q: Quiver, mutations: Iterable[int], phi: Sequence[int] | None = None):
        if phi is None:
            phi = identity_permutation(q.n)
        return cls(q, tuple(loop_steps(mutations, phi)))

    @property
    def n(self) -> int:
        return self.quiver.n

    @property
    def length(self) -> int:
        return len(self.mutations)

    def normal_steps(self) -> list[Step]:
        return loop_steps(self.mutations, self.phi)

    def quiver_before(self, pos: int) -> Quiver:
        """Quiver reached after the first ``pos`` mutations of the normal form."""
        q = self.quiver
        for v in self.mutations[:pos]:
            q = q.mutate(v)
        return q

    def to_json(self) -> dict:
        return {
            "quiver": self.quiver.to_json(),
            "steps": [step_to_json(st) for st in self.steps],
        }

    def normal_form_json(self) -> dict:
        return {"mutations": list(self.mutations), "phi": list(self.phi)}


def validate_loop(q: Quiver, steps: Iterable[Step]) -> MutationLoop:
    return MutationLoop(q, tuple(steps))


def step_to_json(st: Step) -> dict:
    if isinstance(st, Mutate):
        return {"mutate": st.vertex}
    return {"relabel": list(st.sigma)}


def step_from_json(data: dict) -> Step:
    if not isinstance(data, dict) or len(data) != 1:
        raise QuiverError(f"bad step {data!r}")
    if "mutate" in data:
        return Mutate(int(data["mutate"]))
    if "relabel" in data:
        return Relabel(tuple(int(x) for x in data["relabel"]))
    raise QuiverError(f"bad step {data!r}")


def loop_from_json(data: dict) -> MutationLoop:
    if not isinstance(data, dict) or "quiver" not in data or "steps" not in data:
        raise QuiverError("loop JSON needs 'quiver' and 'steps'")
    q = Quiver.from_json(data["quiver"])
    return MutationLoop(q, tuple(step_from_json(s) for s in data["steps"]))


def _arrow_between(loop: MutationLoop, pos: int, x: int, y: int) -> None:
    b = loop.quiver_before(pos).entry(x, y)
    if b != 1:
        raise PentagonError(
            f"pentagon move at position {pos} needs a single arrow {x}->{y}, found b[{x}][{y}] = {b}"
        )


def pentagon_expand(loop: MutationLoop, pos: int) -> MutationLoop:
    """Replace ``(mu_x, mu_y)`` at ``pos`` of the normal form by ``(mu_y, mu_x, mu_y, (xy))``."""
    m = loop.mutations
    if not 0 <= pos < len(m) - 1:
        raise PentagonError(f"position {pos} does not index a pair of mutations (T={len(m)})")
    x, y = m[pos], m[pos + 1]
    _arrow_between(loop, pos, x, y)
    steps = (
        loop_steps(m[:pos])
        + [Mutate(y), Mutate(x), Mutate(y), Relabel(transposition(loop.n, x, y))]
        + loop_steps(m[pos + 2 :], loop.phi)
    )
    return MutationLoop(loop.quiver, tuple(steps))


def pentagon_contract(loop: MutationLoop, pos: int) -> MutationLoop:
    """Inverse of :func:`pentagon_expand`.

    Looks for ``(mu_y, mu_x, mu_y)`` at ``pos`` of the normal form. The
    transposition ``(xy)`` that follows it in the unnormalized move has been
    pushed into the tail and ``phi``; it is pulled back out here.
    """
    m = loop.mutations
    if not 0 <= pos < len(m) - 2:
        raise PentagonError(f"position {pos} does not index three mutations (T={len(m)})")
    y, x, y2 = m[pos : pos + 3]
    if y != y2 or x == y:
        raise PentagonError(f"mutations {m[pos:pos + 3]} at position {pos} are not of the form (y, x, y)")
    _arrow_between(loop, pos, x, y)
    t = transposition(loop.n, x, y)
    # (mu_y, mu_x, mu_y) == (mu_y, mu_x, mu_y, (xy), (xy)); contract the first four
    steps = loop_steps(m[:pos]) + [Mutate(x), Mutate(y), Relabel(t)] + loop_steps(m[pos + 3 :], loop.phi)
    return MutationLoop(loop.quiver, tuple(steps))


def pentagon_positions(loop: MutationLoop) -> list[int]:
    """Positions where :func:`pentagon_expand` applies."""
    out = []
    q = loop.quiver
    m = loop.mutations
    for pos in range(len(m) - 1):
        if q.entry(m[pos], m[pos + 1]) == 1:
            out.append(pos)
        q = q.mutate(m[pos])
    return out
