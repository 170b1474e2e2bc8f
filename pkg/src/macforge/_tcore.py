"""Inner state machine of the coset enumeration.

One array-based implementation, written so numba can compile it; without
numba the identical functions run under plain CPython (slow but exact).
The surrounding module owns presentation parsing, compaction and
verification.

Layout: cosets are 1-based; cols[ci, c] = image of coset c under column
ci (2g forward, 2g+1 inverse), 0 = undefined.  parent is a union-find
forest.  ctr packs the counters: [defined, live, merges, ded_top,
pend_top, cap_hit].
"""

from __future__ import annotations

import numpy as np

DEFINED, LIVE, MERGES, DED_TOP, PEND_TOP, CAP_HIT = 0, 1, 2, 3, 4, 5


def _find(parent, c):
    root = c
    while parent[root] != root:
        root = parent[root]
    while parent[c] != root:
        nxt = parent[c]
        parent[c] = root
        c = nxt
    return root


def _merge(parent, pending, ctr, a, b):
    a = _find(parent, a)
    b = _find(parent, b)
    if a == b:
        return
    if b < a:
        a, b = b, a
    parent[b] = a
    ctr[MERGES] += 1
    ctr[LIVE] -= 1
    pending[ctr[PEND_TOP]] = b
    ctr[PEND_TOP] += 1


def _push_ded(ded_a, ded_x, ctr, a, x):
    if ctr[DED_TOP] < ded_a.shape[0]:
        ded_a[ctr[DED_TOP]] = a
        ded_x[ctr[DED_TOP]] = x
        ctr[DED_TOP] += 1
    else:
        # overflow: drop the stack; the outer fixpoint sweep recovers
        ctr[DED_TOP] = 0


def _process_pending(cols, parent, pending, ded_a, ded_x, ctr):
    ncols = cols.shape[0]
    while ctr[PEND_TOP] > 0:
        ctr[PEND_TOP] -= 1
        dead = pending[ctr[PEND_TOP]]
        for ci in range(ncols):
            d = cols[ci, dead]
            if d == 0:
                continue
            cols[ci, dead] = 0
            a = _find(parent, dead)
            d = _find(parent, d)
            ex = cols[ci, a]
            if ex != 0:
                ex = _find(parent, ex)
                if ex != d:
                    _merge(parent, pending, ctr, ex, d)
            else:
                cols[ci, a] = d
                back = ci ^ 1
                ex2 = cols[back, d]
                if ex2 != 0:
                    ex2 = _find(parent, ex2)
                    if ex2 != a:
                        _merge(parent, pending, ctr, ex2, a)
                else:
                    cols[back, d] = a
                _push_ded(ded_a, ded_x, ctr, a, ci)


def _define(cols, parent, ded_a, ded_x, ctr, c, ci, max_cosets):
    ctr[DEFINED] += 1
    ctr[LIVE] += 1
    if ctr[DEFINED] > max_cosets:
        ctr[CAP_HIT] = 1
        return 0
    new = ctr[DEFINED]
    parent[new] = new
    cols[ci, c] = new
    cols[ci ^ 1, new] = c
    _push_ded(ded_a, ded_x, ctr, c, ci)
    return new


def _deduce(cols, parent, pending, ded_a, ded_x, ctr, f, ci, b):
    cols[ci, f] = b
    _push_ded(ded_a, ded_x, ctr, f, ci)
    back = ci ^ 1
    ex = cols[back, b]
    if ex != 0:
        ex = _find(parent, ex)
        if ex != f:
            _merge(parent, pending, ctr, ex, f)
    else:
        cols[back, b] = f


def _scan_word(cols, parent, pending, ded_a, ded_x, ctr,
               rot_flat, w0, w1, start, fill, max_cosets):
    """Two-sided scan of rot_flat[w0:w1] at start; fill defines forward gaps."""
    f = start
    i = w0
    b = start
    j = w1 - 1
    while True:
        while i <= j:
            ci = rot_flat[i]
            nxt = cols[ci, f]
            if nxt == 0:
                break
            if parent[nxt] != nxt:
                nxt = _find(parent, nxt)
                cols[ci, f] = nxt
            f = nxt
            i += 1
            if parent[start] != start:
                return
        if i > j:
            if f != b:
                _merge(parent, pending, ctr, f, b)
            return
        while j >= i:
            ci = rot_flat[j] ^ 1
            prv = cols[ci, b]
            if prv == 0:
                break
            if parent[prv] != prv:
                prv = _find(parent, prv)
                cols[ci, b] = prv
            b = prv
            j -= 1
            if parent[start] != start:
                return
        if j < i:
            if f != b:
                _merge(parent, pending, ctr, f, b)
            return
        if j == i:
            _deduce(cols, parent, pending, ded_a, ded_x, ctr, f, rot_flat[i], b)
            return
        if fill == 0:
            return
        new = _define(cols, parent, ded_a, ded_x, ctr, f, rot_flat[i], max_cosets)
        if new == 0:
            return


def _scan_cycle(cols, parent, pending, ded_a, ded_x, ctr, a, ci, e):
    """Propagate the power relator g^e through the fragment at a (no fill)."""
    steps = 0
    cur = a
    while steps < e:
        nxt = cols[ci, cur]
        if nxt == 0:
            break
        if parent[nxt] != nxt:
            nxt = _find(parent, nxt)
            cols[ci, cur] = nxt
        cur = nxt
        steps += 1
        if cur == a:
            tail = e % steps
            if tail != 0:
                tcur = a
                for _ in range(tail):
                    tn = cols[ci, tcur]
                    if parent[tn] != tn:
                        tn = _find(parent, tn)
                        cols[ci, tcur] = tn
                    tcur = tn
                _merge(parent, pending, ctr, tcur, a)
            return steps
        if parent[a] != a:
            return 0
    if steps >= e:
        _merge(parent, pending, ctr, cur, a)
        return 0
    # gap at (cur, ci): walk backward from a to localize a single hole
    bcol = ci ^ 1
    b = a
    bsteps = 0
    while steps + bsteps < e - 1:
        prv = cols[bcol, b]
        if prv == 0:
            return 0
        if parent[prv] != prv:
            prv = _find(parent, prv)
            cols[bcol, b] = prv
        b = prv
        bsteps += 1
        if b == a or parent[a] != a:
            return 0
    _deduce(cols, parent, pending, ded_a, ded_x, ctr, cur, ci, b)
    return 0


def _drain(cols, parent, pending, ded_a, ded_x, ctr,
           rot_flat, rot_start, bycol_flat, bycol_start,
           pcols, pexps, max_cosets):
    while ctr[PEND_TOP] > 0 or ctr[DED_TOP] > 0:
        if ctr[PEND_TOP] > 0:
            _process_pending(cols, parent, pending, ded_a, ded_x, ctr)
            continue
        ctr[DED_TOP] -= 1
        a = ded_a[ctr[DED_TOP]]
        x = ded_x[ctr[DED_TOP]]
        if parent[a] != a:
            continue
        b = cols[x, a]
        if b == 0:
            continue
        if parent[b] != b:
            b = _find(parent, b)
            cols[x, a] = b
        for pi in range(pcols.shape[0]):
            pc = pcols[pi]
            if x == pc or x == (pc ^ 1):
                ci = pc if pc % 2 == 0 else pc ^ 1
                _scan_cycle(cols, parent, pending, ded_a, ded_x, ctr, a, ci,
                            pexps[pi])
                break
        if parent[a] != a:
            continue
        ok = True
        for rr in range(bycol_start[x], bycol_start[x + 1]):
            widx = bycol_flat[rr]
            _scan_word(cols, parent, pending, ded_a, ded_x, ctr,
                       rot_flat, rot_start[widx], rot_start[widx + 1],
                       a, 0, max_cosets)
            if parent[a] != a:
                ok = False
                break
        if not ok or parent[b] != b:
            continue
        x1 = x ^ 1
        for rr in range(bycol_start[x1], bycol_start[x1 + 1]):
            widx = bycol_flat[rr]
            _scan_word(cols, parent, pending, ded_a, ded_x, ctr,
                       rot_flat, rot_start[widx], rot_start[widx + 1],
                       b, 0, max_cosets)
            if parent[b] != b:
                break


def _enum_main(cols, parent, marks_val, marks_rel, pending, ded_a, ded_x,
               rot_flat, rot_start, bycol_flat, bycol_start, sweep_rots,
               pcols, pexps, ctr, max_cosets):
    while True:
        defined0 = ctr[DEFINED]
        merges0 = ctr[MERGES]
        gamma = 1
        while gamma <= ctr[DEFINED]:
            if parent[gamma] != gamma:
                gamma += 1
                continue
            for si in range(sweep_rots.shape[0]):
                if parent[gamma] != gamma:
                    break
                widx = sweep_rots[si]
                _scan_word(cols, parent, pending, ded_a, ded_x, ctr,
                           rot_flat, rot_start[widx], rot_start[widx + 1],
                           gamma, 1, max_cosets)
                if ctr[CAP_HIT] != 0:
                    return 1
                _drain(cols, parent, pending, ded_a, ded_x, ctr,
                       rot_flat, rot_start, bycol_flat, bycol_start,
                       pcols, pexps, max_cosets)
            if parent[gamma] == gamma:
                for pi in range(pcols.shape[0]):
                    if parent[gamma] != gamma:
                        break
                    if marks_val[gamma] == ctr[MERGES] and marks_rel[gamma] == pi:
                        continue
                    pc = pcols[pi]
                    ci = pc if pc % 2 == 0 else pc ^ 1
                    closed_len = _scan_cycle(cols, parent, pending, ded_a, ded_x,
                                             ctr, gamma, ci, pexps[pi])
                    if closed_len > 0 and ctr[PEND_TOP] == 0:
                        mcur = gamma
                        for _ in range(closed_len):
                            marks_val[mcur] = ctr[MERGES]
                            marks_rel[mcur] = pi
                            mn = cols[ci, mcur]
                            if parent[mn] != mn:
                                mn = _find(parent, mn)
                            mcur = mn
                    _drain(cols, parent, pending, ded_a, ded_x, ctr,
                           rot_flat, rot_start, bycol_flat, bycol_start,
                           pcols, pexps, max_cosets)
            gamma += 1
        if ctr[DEFINED] == defined0 and ctr[MERGES] == merges0:
            # quiet pass: define the first hole, if any, else we are done
            hole_c = 0
            hole_ci = 0
            g2 = 1
            while g2 <= ctr[DEFINED]:
                if parent[g2] == g2:
                    for cc in range(cols.shape[0]):
                        if cols[cc, g2] == 0:
                            hole_c = g2
                            hole_ci = cc
                            break
                    if hole_c != 0:
                        break
                g2 += 1
            if hole_c == 0:
                break
            new = _define(cols, parent, ded_a, ded_x, ctr, hole_c, hole_ci,
                          max_cosets)
            if new == 0:
                return 1
            _drain(cols, parent, pending, ded_a, ded_x, ctr,
                   rot_flat, rot_start, bycol_flat, bycol_start,
                   pcols, pexps, max_cosets)
    return 0


try:  # pragma: no cover - compilation is environment dependent
    from numba import njit

    _find = njit(cache=True)(_find)
    _merge = njit(cache=True)(_merge)
    _push_ded = njit(cache=True)(_push_ded)
    _process_pending = njit(cache=True)(_process_pending)
    _define = njit(cache=True)(_define)
    _deduce = njit(cache=True)(_deduce)
    _scan_word = njit(cache=True)(_scan_word)
    _scan_cycle = njit(cache=True)(_scan_cycle)
    _drain = njit(cache=True)(_drain)
    enum_main = njit(cache=True)(_enum_main)
    HAVE_NUMBA = True
except Exception:  # pragma: no cover
    enum_main = _enum_main
    HAVE_NUMBA = False
