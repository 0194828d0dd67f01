"""Nonnegative tables over ordered variable scopes.

Values are stored as a numpy array with one axis per scope variable, axes in
scope order, so "row-major with the last scope variable varying fastest"
is exactly C order of the flattened array.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import UnknownStateError, VarNotInScopeError
from .network import Network


@dataclass(frozen=True)
class Factor:
    scope: tuple[str, ...]
    states: tuple[tuple[str, ...], ...]  # state labels, one tuple per scope var
    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "scope", tuple(self.scope))
        object.__setattr__(self, "states", tuple(tuple(s) for s in self.states))
        arr = np.asarray(self.values, dtype=float)
        shape = tuple(len(s) for s in self.states)
        object.__setattr__(self, "values", arr.reshape(shape))
        if len(set(self.scope)) != len(self.scope):
            raise ValueError("factor scope variables must be distinct")
        if np.any(self.values < 0):
            raise ValueError("factor values must be nonnegative")

    @staticmethod
    def unit() -> "Factor":
        return Factor((), (), np.array(1.0))

    def flat(self) -> np.ndarray:
        return self.values.reshape(-1)

    def total(self) -> float:
        return float(self.values.sum())

    def _axis(self, var: str) -> int:
        try:
            return self.scope.index(var)
        except ValueError:
            raise VarNotInScopeError(f"{var!r} not in scope {list(self.scope)}")

    def transpose(self, order: list[str] | tuple[str, ...]) -> "Factor":
        """Reorder the scope; `order` must be a permutation of it."""
        axes = [self._axis(v) for v in order]
        if sorted(axes) != list(range(len(self.scope))):
            raise ValueError("order must be a permutation of the scope")
        return Factor(
            tuple(order),
            tuple(self.states[a] for a in axes),
            np.transpose(self.values, axes),
        )

    def product(self, other: "Factor") -> "Factor":
        """Pointwise product; result scope is self's order followed by
        other's variables not already present."""
        new_vars = [v for v in other.scope if v not in self.scope]
        scope = self.scope + tuple(new_vars)
        states = dict(zip(self.scope, self.states))
        for v, s in zip(other.scope, other.states):
            if v in states and states[v] != s:
                raise ValueError(f"state labels for {v!r} disagree between factors")
            states[v] = s
        out_states = tuple(states[v] for v in scope)

        a = self.values.reshape(self.values.shape + (1,) * len(new_vars))
        # permute other's axes into result order, adding length-1 axes for
        # result variables other doesn't carry
        b_shape = []
        b_axes = []
        for v in scope:
            if v in other.scope:
                b_axes.append(other.scope.index(v))
                b_shape.append(len(states[v]))
            else:
                b_shape.append(1)
        b = np.transpose(other.values, b_axes).reshape(b_shape) if other.scope else other.values
        return Factor(scope, out_states, a * b)

    def sum_out(self, var: str) -> "Factor":
        ax = self._axis(var)
        return Factor(
            self.scope[:ax] + self.scope[ax + 1 :],
            self.states[:ax] + self.states[ax + 1 :],
            self.values.sum(axis=ax),
        )

    def reduce(self, evidence: dict[str, str]) -> "Factor":
        """Select the slices consistent with evidence; evidence variables
        leave the scope. Variables absent from the scope are ignored."""
        f = self
        for var, state in evidence.items():
            if var not in f.scope:
                continue
            ax = f._axis(var)
            try:
                idx = f.states[ax].index(state)
            except ValueError:
                raise UnknownStateError(f"variable {var!r} has no state {state!r}")
            f = Factor(
                f.scope[:ax] + f.scope[ax + 1 :],
                f.states[:ax] + f.states[ax + 1 :],
                np.take(f.values, idx, axis=ax),
            )
        return f


def cpt_factor(network: Network, var: str) -> Factor:
    """The CPT of `var` as a factor over (parents..., var)."""
    cpt = network.cpts[var]
    scope = cpt.parents + (var,)
    states = tuple(network.states(v) for v in scope)
    return Factor(scope, states, np.array(cpt.rows, dtype=float))
