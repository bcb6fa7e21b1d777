"""Reproducible random-number streams.

Every stochastic routine in the package draws from a counter-based generator
(Philox 4x64) keyed by ``(master_seed, stream_index)``.  Streams with distinct
keys are statistically independent, and a stream's output depends only on its
key, never on how many other streams were consumed before it.  That is what
makes results bit-identical whether work units run sequentially or on any
number of threads: work unit ``i`` always owns stream ``i``.

The generator identity, including the numpy version that produced the stream,
is recorded in every report so a reader can tell exactly which bit stream a
result came from.
"""

from __future__ import annotations

import numpy as np

from .errors import DomainError

_U64_MAX = 2**64 - 1

GENERATOR_ID = f"numpy.random.Philox-4x64 (numpy {np.__version__})"


def substream(master_seed: int, stream_index: int) -> np.random.Generator:
    """Return the generator for one work unit.

    Parameters
    ----------
    master_seed:
        User-chosen seed, an unsigned 64-bit integer.  Selects the family of
        streams for a whole run.
    stream_index:
        Index of the work unit (bootstrap replicate, Monte Carlo trial, table
        row).  Selects one member of the family.

    Returns
    -------
    numpy.random.Generator
        A fresh generator positioned at the start of the stream.
    """
    for name, value in (("master_seed", master_seed), ("stream_index", stream_index)):
        if not isinstance(value, (int, np.integer)) or isinstance(value, bool):
            raise DomainError(f"{name} must be an integer, got {value!r}")
        if not 0 <= int(value) <= _U64_MAX:
            raise DomainError(f"{name} must fit in an unsigned 64-bit integer, got {value}")
    key = np.array([master_seed, stream_index], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))
