"""Named random substreams.

Every stochastic entity owns an independent ``numpy.random.Generator``
derived from ``SeedSequence(master_seed, spawn_key=(label_code, entity_id))``.
Streams are keyed by entity id rather than array position, so pruning one
lab never shifts the draws of another, and consumers that only read state
(metrics, logging) cannot perturb trajectories.
"""

import numpy as np

STREAM_LABELS = {
    "lab": 1,
    "reviewer": 2,
    "lifecycle": 3,
    "init": 4,
}


def substream(seed: int, label: str, entity_id: int = 0) -> np.random.Generator:
    if label not in STREAM_LABELS:
        raise KeyError(f"unknown stream label {label!r}")
    if not 0 <= seed < 2**64:
        raise ValueError("seed must be a 64-bit unsigned integer")
    ss = np.random.SeedSequence(seed, spawn_key=(STREAM_LABELS[label], int(entity_id)))
    return np.random.Generator(np.random.PCG64(ss))


class StreamBank:
    """Lazily created, cached substreams for one run."""

    def __init__(self, seed: int):
        self.seed = seed
        self._streams: dict[tuple[str, int], np.random.Generator] = {}

    def get(self, label: str, entity_id: int = 0) -> np.random.Generator:
        key = (label, entity_id)
        if key not in self._streams:
            self._streams[key] = substream(self.seed, label, entity_id)
        return self._streams[key]

    def lab(self, lab_id: int) -> np.random.Generator:
        return self.get("lab", lab_id)

    def reviewer(self, index: int) -> np.random.Generator:
        return self.get("reviewer", index)
