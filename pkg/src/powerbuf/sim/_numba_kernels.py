"""Numba-compiled simulation kernels.

Mirrors the numpy kernel contracts (lens, taus, cats) with straight
event loops.  Kernels seed numba's internal generator, so runs are
bit-reproducible per seed on this backend; importing this module
requires numba.
"""

from __future__ import annotations

import numpy as np
from numba import njit

N_CATS = 7
WAKEUP, IDLE, READ, WRITE, TX, RX, RESYNC = range(N_CATS)


@njit(cache=True)
def _draw_size(code, p0, p1, p2):
    if code == 0:
        return p0
    if code == 1:
        return np.random.exponential(p0)
    if code == 2:
        return np.random.gamma(p0, p1)
    if np.random.random() < p0:
        return np.random.exponential(p1)
    return np.random.exponential(p2)


@njit(cache=True)
def _bank_bytes(y, b_size, quantized):
    if quantized:
        return np.ceil(y / b_size) * b_size
    return y


@njit(cache=True)
def fixed_size_cycles(n_cycles, rate, b, code, p0, p1, p2,
                      e_wu, e_tx, e_rx, e_r, e_w, e_resyn, p_idle, b_size,
                      quantized, seed):
    np.random.seed(seed)
    inv_rate = 1.0 / rate
    lens = np.empty(n_cycles)
    taus = np.empty(n_cycles)
    cats = np.zeros((n_cycles, N_CATS))
    for c in range(n_cycles):
        t = 0.0
        acc = 0.0
        sum_y = 0.0
        sum_w = 0.0
        sum_tw = 0.0
        tau = 0
        while acc < b:
            t += np.random.exponential(inv_rate)
            y = _draw_size(code, p0, p1, p2)
            acc += y
            tau += 1
            sum_y += y
            w = _bank_bytes(y, b_size, quantized)
            sum_w += w
            sum_tw += t * w
        cats[c, WAKEUP] = e_wu * (tau + 1.0)
        cats[c, IDLE] = p_idle / b_size * (t * sum_w - sum_tw)
        cats[c, READ] = e_r * sum_y
        cats[c, WRITE] = e_w * sum_y
        cats[c, TX] = e_tx * sum_y
        cats[c, RX] = e_rx * sum_y
        cats[c, RESYNC] = 2.0 * e_resyn * tau
        lens[c] = t
        taus[c] = tau
    return lens, taus, cats


@njit(cache=True)
def fixed_interval_cycles(n_cycles, rate, T, code, p0, p1, p2,
                          e_wu, e_tx, e_rx, e_r, e_w, e_resyn, p_idle,
                          b_size, quantized, seed):
    np.random.seed(seed)
    inv_rate = 1.0 / rate
    lens = np.empty(n_cycles)
    taus = np.empty(n_cycles)
    cats = np.zeros((n_cycles, N_CATS))
    for c in range(n_cycles):
        # interarrivals are memoryless, so restarting the clock each
        # cycle leaves the arrival process unchanged
        t = np.random.exponential(inv_rate)
        sum_y = 0.0
        idle = 0.0
        tau = 0
        while t < T:
            y = _draw_size(code, p0, p1, p2)
            tau += 1
            sum_y += y
            idle += (T - t) * _bank_bytes(y, b_size, quantized)
            t += np.random.exponential(inv_rate)
        cats[c, WAKEUP] = e_wu * (tau + 1.0)
        cats[c, IDLE] = p_idle / b_size * idle
        cats[c, READ] = e_r * sum_y
        cats[c, WRITE] = e_w * sum_y
        cats[c, TX] = e_tx * sum_y
        cats[c, RX] = e_rx * sum_y
        cats[c, RESYNC] = 2.0 * e_resyn * tau
        lens[c] = T
        taus[c] = tau
    return lens, taus, cats


@njit(cache=True)
def no_buffer_cycles(n_cycles, rate, code, p0, p1, p2,
                     e_wu, e_tx, e_rx, e_r, e_w, e_resyn, seed):
    np.random.seed(seed)
    inv_rate = 1.0 / rate
    lens = np.empty(n_cycles)
    taus = np.ones(n_cycles)
    cats = np.zeros((n_cycles, N_CATS))
    for c in range(n_cycles):
        y = _draw_size(code, p0, p1, p2)
        cats[c, WAKEUP] = 2.0 * e_wu
        cats[c, READ] = e_r * y
        cats[c, WRITE] = e_w * y
        cats[c, TX] = e_tx * y
        cats[c, RX] = e_rx * y
        cats[c, RESYNC] = 2.0 * e_resyn
        lens[c] = np.random.exponential(inv_rate)
    return lens, taus, cats


@njit(cache=True)
def stopping_taus(code, p0, p1, p2, b, reps, seed):
    np.random.seed(seed)
    out = np.empty(reps, dtype=np.int64)
    for r in range(reps):
        acc = 0.0
        tau = 0
        while acc < b:
            acc += _draw_size(code, p0, p1, p2)
            tau += 1
        out[r] = tau
    return out
