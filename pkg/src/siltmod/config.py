"""Process-wide defaults: field modulus, RNG seed and sampling budgets."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

DEFAULT_P = 10007
# "S1LT" read digit-wise (S->5, L->1, T->7).
DEFAULT_SEED = 0x5117
DIMENSION_CAP = 1000


@dataclass
class Settings:
    seed: int = DEFAULT_SEED
    knitting_cap: int = 200
    witness_samples: int = 16
    indec_samples: int = 8
    cocycle_samples: int = 8


settings = Settings()


def rng(*keys: int) -> np.random.Generator:
    """Deterministic generator derived from the global seed and call-site keys.

    Every randomized search builds its own generator, so results do not depend
    on the order in which independent searches run.
    """
    return np.random.default_rng([settings.seed, *[int(k) & 0xFFFFFFFF for k in keys]])
