"""Vectorised numpy kernels; used when the compiled extension is unavailable."""

import numpy as np


def single_run(n0, energies, k0_scale):
    """Discharge ``n0`` electrons with the photon energies in ``energies``.

    Processing stops after the photon that empties the cathode, or when the
    photons run out.  Returns the ledger columns ``(n_before, n_after,
    emitted, field_work, k0_residual, ke_delivered, cumulative)``.
    """
    energies = np.ascontiguousarray(energies, dtype=np.float64)
    if n0 == 0:
        energies = energies[:0]
    emitted = energies >= 1.0
    emissions = np.cumsum(emitted, dtype=np.int64)
    hit = np.flatnonzero(emissions >= n0)
    if hit.size:
        used = int(hit[0]) + 1
        energies, emitted, emissions = energies[:used], emitted[:used], emissions[:used]
    n_after = n0 - emissions
    n_before = n_after + emitted
    field_work = np.where(emitted, 2 * n_before - 1, 0).astype(np.int64)
    k0 = np.where(emitted, (energies - 1.0) * k0_scale, 0.0)
    ke = field_work.astype(np.float64) + k0
    cumulative = np.cumsum(field_work, dtype=np.int64)
    return n_before, n_after, emitted, field_work, k0, ke, cumulative


def twin_run(n1, n2):
    """Move electrons from plate 1 to plate 2 while each move releases energy.

    Returns ``(n1_before, field_work, cumulative)``.
    """
    steps = (n1 - n2) // 2 if n1 - n2 >= 2 else 0
    k = np.arange(steps, dtype=np.int64)
    n1_before = n1 - k
    field_work = 2 * ((n1_before - 1) - (n2 + k))
    cumulative = np.cumsum(field_work, dtype=np.int64)
    return n1_before, field_work, cumulative
