"""Built models together with the index of their variable blocks."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from ..graphs import Edge
from ..ratlp import Model, Optimal


def ename(e: Edge) -> str:
    """Edge fragment used inside variable names."""
    return f"{e[0]},{e[1]}"


@dataclass(frozen=True)
class FormulationHandle:
    """A model plus ``blocks``: symbol -> ``range`` of variable indices.

    The blocks partition the model's variables.  ``keys`` maps each symbol to
    the per-variable labels (an edge, an (edge, node, node) triple, ...) in
    block order; ``meta`` carries designated endpoints, the root, node and
    edge orders and similar data needed to read solutions.
    """

    model: Model
    blocks: dict
    keys: dict = field(default_factory=dict)
    meta: dict = field(default_factory=dict)

    def block(self, symbol: str) -> range:
        return self.blocks[symbol]

    def values(self, sol: Sequence[Fraction] | Optimal, symbol: str) -> dict:
        """Block values keyed by the block's labels."""
        x = sol.primal if isinstance(sol, Optimal) else sol
        rng = self.blocks[symbol]
        labels = self.keys.get(symbol, list(range(len(rng))))
        return {lab: x[j] for lab, j in zip(labels, rng)}

    def index_of(self, symbol: str, label) -> int:
        labels = self.keys[symbol]
        return self.blocks[symbol][labels.index(label)]

    def check_partition(self) -> bool:
        seen = sorted(j for r in self.blocks.values() for j in r)
        return seen == list(range(self.model.num_vars))

    def sidecar(self) -> dict:
        """JSON-ready block index: symbol -> first/last variable name and count."""
        out = {}
        names = [v.name for v in self.model.variables]
        for sym, rng in self.blocks.items():
            if len(rng):
                out[sym] = {"first": names[rng.start], "last": names[rng.stop - 1], "count": len(rng), "start": rng.start}
            else:
                out[sym] = {"first": None, "last": None, "count": 0, "start": rng.start}
        return out

    def sidecar_json(self) -> str:
        return json.dumps(self.sidecar(), indent=2, sort_keys=True)


class BlockRecorder:
    """Tracks contiguous index ranges while variables are added to a builder."""

    def __init__(self, builder):
        self.b = builder
        self.blocks: dict = {}
        self.keys: dict = {}
        self._open = None

    def start(self, symbol: str) -> None:
        self.close()
        self._open = (symbol, len(self.b.variables))
        self.keys.setdefault(symbol, [])

    def add(self, label, name: str, lower=0, upper=None) -> int:
        self.keys[self._open[0]].append(label)
        return self.b.add_var(name, lower, upper)

    def close(self) -> None:
        if self._open is not None:
            sym, start = self._open
            self.blocks[sym] = range(start, len(self.b.variables))
            self._open = None

    def adopt(self, blocks: dict, keys: dict) -> None:
        self.blocks.update(blocks)
        self.keys.update(keys)
