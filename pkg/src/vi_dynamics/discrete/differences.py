'''Forward/backward differences of vector sequences and their identities.

For a sequence ``z`` stored as rows of an array:

    z^Delta(n) = z(n+1) - z(n),     z^Nabla(n) = z(n) - z(n-1)

and, for sequences ``h`` and ``g``,

    <h,g>^Delta = <h^Delta, g> + <h, g^Delta> + <h^Delta, g^Delta>
    <h,g>^Nabla = <h^Nabla, g> + <h, g^Nabla> - <h^Nabla, g^Nabla>
    z^{Delta Nabla} = z^{Nabla Delta} = z(n+1) - 2 z(n) + z(n-1) = z^Delta - z^Nabla
'''

from __future__ import annotations

import logging

import numpy as np

from .._errors import ConfigurationError

log = logging.getLogger(__name__)

IDENTITY_TOL = 1e-12


def _aligned(z: np.ndarray) -> np.ndarray:
    return np.full(np.shape(z), np.nan, dtype=float)


def forward_difference(z: np.ndarray) -> np.ndarray:
    '''``z^Delta(n) = z(n+1) - z(n)`` at row ``n``; the last row is NaN.'''
    z = np.asarray(z, dtype=float)
    out = _aligned(z)
    out[:-1] = z[1:] - z[:-1]
    return out


def backward_difference(z: np.ndarray) -> np.ndarray:
    '''``z^Nabla(n) = z(n) - z(n-1)`` at row ``n``; the first row is NaN.'''
    z = np.asarray(z, dtype=float)
    out = _aligned(z)
    out[1:] = z[1:] - z[:-1]
    return out


def second_difference(z: np.ndarray) -> np.ndarray:
    '''``z(n+1) - 2 z(n) + z(n-1)`` at row ``n``; the first and last rows are NaN.'''
    z = np.asarray(z, dtype=float)
    out = _aligned(z)
    out[1:-1] = z[2:] - 2 * z[1:-1] + z[:-2]
    return out


def _inner(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.einsum('ij,ij->i', a, b)


def identity_gaps(h: np.ndarray, g: np.ndarray, z: np.ndarray) -> dict[str, float]:
    '''Largest relative violation of each identity on the given sequences.

    All three arrays have shape ``(N, d)`` with ``N >= 3``; the identities
    are evaluated at the interior indices ``n = 1 .. N-2``.
    '''
    n = slice(1, -1)
    fh, fg = h[2:] - h[1:-1], g[2:] - g[1:-1]
    bh, bg = h[1:-1] - h[:-2], g[1:-1] - g[:-2]
    hg = _inner(h, g)

    lhs_f = hg[2:] - hg[1:-1]
    rhs_f = _inner(fh, g[n]) + _inner(h[n], fg) + _inner(fh, fg)
    lhs_b = hg[1:-1] - hg[:-2]
    rhs_b = _inner(bh, g[n]) + _inner(h[n], bg) - _inner(bh, bg)

    fz = forward_difference(z)
    bz = backward_difference(z)
    # both evaluated at the interior rows n
    delta_nabla = bz[2:] - bz[1:-1]
    nabla_delta = fz[1:-1] - fz[:-2]
    second = second_difference(z)[n]
    split = fz[n] - bz[n]

    def gap(a: np.ndarray, b: np.ndarray) -> float:
        scale = max(1.0, float(np.max(np.abs(a))), float(np.max(np.abs(b))))
        return float(np.max(np.abs(a - b))) / scale

    return {
        'forward_product': gap(lhs_f, rhs_f),
        'backward_product': gap(lhs_b, rhs_b),
        'second_difference': max(gap(delta_nabla, second), gap(nabla_delta, second), gap(split, second)),
    }


def difference_identities_check(seed: int = 0, trials: int = 1000, length: int = 8, dimension: int = 3) -> bool:
    '''Check the three identities on *trials* random sequence triples.

    Returns:
        True when every identity holds to ``IDENTITY_TOL`` (relative to the
        magnitude of the compared terms) on every trial.
    '''
    if trials < 1:
        raise ConfigurationError(f'trials must be >= 1, got {trials}', key='trials')
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(trials):
        h, g, z = rng.standard_normal((3, length, dimension))
        worst = max(worst, *identity_gaps(h, g, z).values())
    log.debug('difference identities: worst relative gap %.3e over %d trials', worst, trials)
    return worst <= IDENTITY_TOL
