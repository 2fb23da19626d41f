"""Compiled inner loops for the pollination sweeps.

Each sweep visits the pollen in index order and updates the population in
place, so a later pollen's local move sees partners already updated in the
same generation.  All randomness is drawn by the caller beforehand.
"""

import math

import numpy as np
from numba import njit


@njit(cache=True)
def fitness_one(test, cols, strides, offsets, flags):
    total = 0
    for c in range(cols.shape[0]):
        idx = offsets[c]
        for j in range(cols.shape[1]):
            idx += test[cols[c, j]] * strides[c, j]
        total += flags[idx]
    return total


@njit(cache=True)
def _candidate_fitness(tst, fit, i, ctest, cols, strides, offsets, flags):
    # fitness depends only on the discrete test; skip the lookup when unchanged
    for d in range(ctest.shape[0]):
        if ctest[d] != tst[i, d]:
            return fitness_one(ctest, cols, strides, offsets, flags)
    return fit[i]


@njit(cache=True)
def accept_p(f_old, f_new, s, s0):
    delta = (f_old - f_new) / max(f_old, 1)
    return math.exp(-delta * (1.0 + s / s0))


@njit(cache=True)
def _propose(pos, i, direction, scale, upper, hi, cand, ctest):
    for d in range(pos.shape[1]):
        x = pos[i, d]
        if direction[d] != 0.0:
            x = x + scale[d] * direction[d]
        if x < 0.0:
            x = 0.0
        elif x > upper[d]:
            x = upper[d]
        cand[d] = x
        c = math.floor(x)
        if c < 0:
            c = 0
        elif c > hi[d]:
            c = hi[d]
        ctest[d] = c


@njit(cache=True)
def _commit(pos, tst, fit, i, cand, ctest, f_new):
    for d in range(pos.shape[1]):
        pos[i, d] = cand[d]
        tst[i, d] = ctest[d]
    fit[i] = f_new


@njit(cache=True)
def imfpa_sweep(pos, tst, fit, gbest, steps, acc_g, jk, rho, acc_l,
                upper, hi, cols, strides, offsets, flags, counters, base, s0):
    """counters = [global attempts, global successes, local attempts, local successes]."""
    n, k = pos.shape
    cand = np.empty(k)
    ctest = np.empty(k, np.int64)
    direction = np.empty(k)
    rvec = np.empty(k)
    for i in range(n):
        for d in range(k):
            direction[d] = gbest[d] - pos[i, d]
        _propose(pos, i, direction, steps[i], upper, hi, cand, ctest)
        f_new = _candidate_fitness(tst, fit, i, ctest, cols, strides, offsets, flags)
        counters[0] += 1
        if f_new > fit[i]:
            _commit(pos, tst, fit, i, cand, ctest, f_new)
            counters[1] += 1
        elif acc_g[i] < accept_p(fit[i], f_new, base[0] + counters[1], s0):
            _commit(pos, tst, fit, i, cand, ctest, f_new)

        j = jk[i, 0]
        kk = jk[i, 1]
        for d in range(k):
            direction[d] = pos[j, d] - pos[kk, d]
            rvec[d] = rho[i]
        _propose(pos, i, direction, rvec, upper, hi, cand, ctest)
        f_new = _candidate_fitness(tst, fit, i, ctest, cols, strides, offsets, flags)
        counters[2] += 1
        if f_new > fit[i]:
            _commit(pos, tst, fit, i, cand, ctest, f_new)
            counters[3] += 1
        elif acc_l[i] < accept_p(fit[i], f_new, base[1] + counters[3], s0):
            _commit(pos, tst, fit, i, cand, ctest, f_new)


@njit(cache=True)
def fpa_sweep(pos, tst, fit, gbest, switch, switch_p, steps, jk, rho,
              upper, hi, cols, strides, offsets, flags, counters):
    n, k = pos.shape
    cand = np.empty(k)
    ctest = np.empty(k, np.int64)
    direction = np.empty(k)
    rvec = np.empty(k)
    for i in range(n):
        if switch[i] < switch_p:
            for d in range(k):
                direction[d] = gbest[d] - pos[i, d]
            _propose(pos, i, direction, steps[i], upper, hi, cand, ctest)
            slot = 0
        else:
            j = jk[i, 0]
            kk = jk[i, 1]
            for d in range(k):
                direction[d] = pos[j, d] - pos[kk, d]
                rvec[d] = rho[i]
            _propose(pos, i, direction, rvec, upper, hi, cand, ctest)
            slot = 2
        f_new = _candidate_fitness(tst, fit, i, ctest, cols, strides, offsets, flags)
        counters[slot] += 1
        if f_new > fit[i]:
            _commit(pos, tst, fit, i, cand, ctest, f_new)
            counters[slot + 1] += 1
