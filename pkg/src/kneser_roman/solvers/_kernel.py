"""Compiled branch-and-bound kernel.

A node stores one domain code per vertex (bit 0: low label, bit 1: label 1,
bit 2: label 2).  The search runs on an explicit stack that survives between
calls, so the Python driver can check the clock between chunks of nodes and
report the open frames when the budget runs out.

Completion bound: the cheaper of the covering ratios from the partial
assignment, then a Lagrangian relaxation of the neighbourhood constraints
solved by subgradient steps, warm-started from the parent's multipliers.  Any
nonnegative multipliers give a valid bound, so early stopping is safe.  The
reduced costs at the final multipliers also remove labels that cannot lead
below the incumbent.
"""

from __future__ import annotations

import numpy as np
from numba import njit

RDN, TRDN, SRDN = 0, 1, 2
BL, B1, B2 = 1, 2, 4
EPS = 1e-7
U1 = np.uint64(1)
U0 = np.uint64(0)
_M1 = np.uint64(0x5555555555555555)
_M2 = np.uint64(0x3333333333333333)
_M4 = np.uint64(0x0F0F0F0F0F0F0F0F)
_H01 = np.uint64(0x0101010101010101)


@njit(inline="always", cache=True)
def popcount(x):
    x = x - ((x >> U1) & _M1)
    x = (x & _M2) + ((x >> np.uint64(2)) & _M2)
    x = (x + (x >> np.uint64(4))) & _M4
    return np.int64((x * _H01) >> np.uint64(56))


@njit(inline="always", cache=True)
def single(d):
    return d == BL or d == B1 or d == B2


@njit(inline="always", cache=True)
def lab(code, low):
    if code == 0:
        return low
    return code


@njit(inline="always", cache=True)
def maxlab(d, low):
    if d & B2:
        return 2
    if d & B1:
        return 1
    return low


@njit(inline="always", cache=True)
def minlab(d, low):
    if d & BL:
        return low
    if d & B1:
        return 1
    return 2


@njit(cache=True)
def propagate(dom, ptr, idx, n, inv, low):
    """Shrink ``dom`` in place to the propagation fixpoint; False on a wipe-out."""
    changed = True
    while changed:
        changed = False
        for v in range(n):
            if dom[v] == 0:
                return False
        # a low vertex needs a 2-neighbour
        for v in range(n):
            if not dom[v] & BL:
                continue
            cnt = 0
            last = -1
            defended = False
            for j in range(ptr[v], ptr[v + 1]):
                u = idx[j]
                if dom[u] == B2:
                    defended = True
                    break
                if dom[u] & B2:
                    cnt += 1
                    last = u
            if defended:
                continue
            if cnt == 0:
                dom[v] &= ~BL
                changed = True
                if dom[v] == 0:
                    return False
            elif cnt == 1 and dom[v] == BL:
                dom[last] = B2
                changed = True
        if inv == TRDN:
            for v in range(n):
                cnt = 0
                last = -1
                done = False
                for j in range(ptr[v], ptr[v + 1]):
                    u = idx[j]
                    d = dom[u]
                    if d & BL == 0:
                        done = True
                        break
                    if d & (B1 | B2):
                        cnt += 1
                        last = u
                if done:
                    continue
                if cnt == 0:
                    return False
                if cnt == 1:
                    dom[last] &= ~BL
                    changed = True
        elif inv == SRDN:
            for v in range(n):
                hi = maxlab(dom[v], low)
                for j in range(ptr[v], ptr[v + 1]):
                    hi += maxlab(dom[idx[j]], low)
                if hi < 1:
                    return False
                slack = hi - 1
                if slack >= 3:
                    continue
                for j in range(ptr[v], ptr[v + 1] + 1):
                    u = v if j == ptr[v + 1] else idx[j]
                    d = dom[u]
                    if single(d):
                        continue
                    top = maxlab(d, low)
                    nd = d
                    if d & BL and slack < top - low:
                        nd &= ~BL
                    if d & B1 and slack < top - 1:
                        nd &= ~B1
                    if nd != d:
                        dom[u] = nd
                        changed = True
    return True


@njit(cache=True)
def cheap_bound(dom, ptr, idx, n, inv, low, mark):
    """(partial weight + covering completion bound, feasible flag)."""
    base = 0
    for v in range(n):
        base += minlab(dom[v], low)
    extra = 0.0
    # undefended vertices that may still take the low label
    needy = 0
    for v in range(n):
        mark[v] = 0
        if dom[v] & BL:
            ok = False
            for j in range(ptr[v], ptr[v + 1]):
                if dom[idx[j]] == B2:
                    ok = True
                    break
            if not ok:
                mark[v] = 1
                needy += 1
    if needy:
        best = 0.0
        for w in range(n):
            d = dom[w]
            if d & B2 and not single(d):
                cov = mark[w]
                for j in range(ptr[w], ptr[w + 1]):
                    cov += mark[idx[j]]
                r = cov / (2 - minlab(d, low))
                if r > best:
                    best = r
            if mark[w] and d & B1:
                r = 1.0 / (1 - low)
                if r > best:
                    best = r
        if best <= 0.0:
            return base, False
        extra = needy / best
    if inv == TRDN:
        lacking = 0
        for v in range(n):
            mark[v] = 0
            ok = False
            for j in range(ptr[v], ptr[v + 1]):
                if dom[idx[j]] & BL == 0:
                    ok = True
                    break
            if not ok:
                mark[v] = 1
                lacking += 1
        if lacking:
            best = 0
            for w in range(n):
                d = dom[w]
                if d & BL and d & (B1 | B2):
                    cov = 0
                    for j in range(ptr[w], ptr[w + 1]):
                        cov += mark[idx[j]]
                    if cov > best:
                        best = cov
            if best == 0:
                return base, False
            e = lacking / best
            if e > extra:
                extra = e
    elif inv == SRDN:
        total = 0
        dmax = 0
        for v in range(n):
            lo = minlab(dom[v], low)
            for j in range(ptr[v], ptr[v + 1]):
                lo += minlab(dom[idx[j]], low)
            mark[v] = 0
            if lo < 1:
                mark[v] = 1
                total += 1 - lo
                if 1 - lo > dmax:
                    dmax = 1 - lo
        if total:
            best = 0
            for w in range(n):
                if single(dom[w]):
                    continue
                cov = mark[w]
                for j in range(ptr[w], ptr[w + 1]):
                    cov += mark[idx[j]]
                if cov > best:
                    best = cov
            if best == 0:
                return base, False
            e = total / best
            if dmax > e:
                e = dmax
            if e > extra:
                extra = e
    return base + np.int64(np.ceil(extra - EPS)), True


@njit(cache=True)
def _costs(dom, ptr, idx, n, inv, low, lam, mu, cost):
    """Per-vertex label costs under the multipliers; returns the constant part."""
    use_lam = inv != RDN
    const = 0.0
    for v in range(n):
        const += mu[v]
        if use_lam:
            const += lam[v]
    for w in range(n):
        s = 0.0
        m = 0.0
        for j in range(ptr[w], ptr[w + 1]):
            u = idx[j]
            s += lam[u]
            m += mu[u]
        if inv == SRDN:
            s += lam[w]
        a = 1.0 - (s if use_lam else 0.0)
        d = dom[w]
        cost[w, 0] = low * a if d & BL else np.inf
        cost[w, 1] = a - mu[w] if d & B1 else np.inf
        cost[w, 2] = 2.0 * a - mu[w] - m if d & B2 else np.inf
    return const


@njit(cache=True)
def lagrangian(dom, ptr, idx, n, inv, low, lam, mu, target, iters, cost, fstar, g_l, g_m, best_lam, best_mu):
    """Best dual value found; leaves the best multipliers in ``lam``/``mu`` and
    the reduced costs (cost minus per-vertex minimum) in ``cost``."""
    use_lam = inv != RDN
    best = -1e18
    theta = 1.0
    stall = 0
    for it in range(iters + 1):
        val = _costs(dom, ptr, idx, n, inv, low, lam, mu, cost)
        for w in range(n):
            c0 = cost[w, 0]
            c1 = cost[w, 1]
            c2 = cost[w, 2]
            if c0 <= c1 and c0 <= c2:
                fstar[w] = 0
                val += c0
            elif c1 <= c2:
                fstar[w] = 1
                val += c1
            else:
                fstar[w] = 2
                val += c2
        if val > best + 1e-9:
            best = val
            best_lam[:] = lam
            best_mu[:] = mu
            stall = 0
        else:
            stall += 1
            if stall >= 3:
                theta *= 0.5
                stall = 0
        if best >= target - EPS or it == iters or theta < 1e-3:
            break
        norm = 0.0
        for v in range(n):
            sf = 0.0
            n2 = 0
            for j in range(ptr[v], ptr[v + 1]):
                c = fstar[idx[j]]
                sf += lab(c, low)
                if c == 2:
                    n2 += 1
            if inv == SRDN:
                sf += lab(fstar[v], low)
            gm = 1.0 - (1.0 if fstar[v] != 0 else 0.0) - n2
            gl = (1.0 - sf) if use_lam else 0.0
            if gm < 0 and mu[v] <= 0:
                gm = 0.0
            if gl < 0 and lam[v] <= 0:
                gl = 0.0
            g_l[v] = gl
            g_m[v] = gm
            norm += gl * gl + gm * gm
        if norm <= 0.0:
            break
        step = theta * (target - val) / norm
        if step <= 0:
            step = theta * 0.05
        for v in range(n):
            x = lam[v] + step * g_l[v]
            lam[v] = x if x > 0 else 0.0
            y = mu[v] + step * g_m[v]
            mu[v] = y if y > 0 else 0.0
    lam[:] = best_lam
    mu[:] = best_mu
    _costs(dom, ptr, idx, n, inv, low, lam, mu, cost)
    for w in range(n):
        mn = min(cost[w, 0], min(cost[w, 1], cost[w, 2]))
        cost[w, 0] -= mn
        cost[w, 1] -= mn
        cost[w, 2] -= mn
    return best


@njit(cache=True)
def pick(dom, ptr, idx, n):
    """Free vertex with the most free neighbours (lowest index on ties), or -1."""
    best = -1
    best_deg = -1
    for v in range(n):
        if single(dom[v]):
            continue
        deg = 0
        for j in range(ptr[v], ptr[v + 1]):
            if not single(dom[idx[j]]):
                deg += 1
        if deg > best_deg:
            best = v
            best_deg = deg
    return best


@njit(cache=True)
def evaluate(dom, ptr, idx, n, inv, low, iters, inc, lam, mu, mark, cost, fstar, g_l, g_m, best_lam, best_mu):
    """Propagate, bound and filter ``dom`` in place.  Returns the node's lower
    bound, or ``inc`` when the node cannot beat the incumbent."""
    while True:
        if not propagate(dom, ptr, idx, n, inv, low):
            return inc
        lb, ok = cheap_bound(dom, ptr, idx, n, inv, low, mark)
        if not ok or lb >= inc:
            return inc
        nfree = 0
        for v in range(n):
            if not single(dom[v]):
                nfree += 1
        if nfree == 0 or iters <= 0:
            return lb
        val = lagrangian(dom, ptr, idx, n, inv, low, lam, mu, float(inc), iters, cost, fstar, g_l, g_m, best_lam, best_mu)
        lag = np.int64(np.ceil(val - EPS))
        if lag > lb:
            lb = lag
        if lb >= inc:
            return inc
        changed = False
        for w in range(n):
            d = dom[w]
            if single(d):
                continue
            nd = d
            if d & B2 and np.ceil(val + cost[w, 2] - EPS) >= inc:
                nd &= ~B2
            if d & B1 and np.ceil(val + cost[w, 1] - EPS) >= inc:
                nd &= ~B1
            if d & BL and np.ceil(val + cost[w, 0] - EPS) >= inc:
                nd &= ~BL
            if nd != d:
                dom[w] = nd
                changed = True
        if not changed:
            return lb


@njit(cache=True)
def orbit_mark(v, dom, elem, classes, ncls, n, out):
    """Flag every vertex that a permutation fixing each element class maps ``v`` to."""
    ev = elem[v]
    dv = dom[v]
    for w in range(n):
        out[w] = 0
        if dom[w] != dv:
            continue
        ew = elem[w]
        same = True
        for i in range(ncls):
            if popcount(ew & classes[i]) != popcount(ev & classes[i]):
                same = False
                break
        if same:
            out[w] = 1


@njit(nogil=True, cache=True)
def run(
    ptr, idx, elem, use_orbits, n, inv, low, iters,
    st_dom, st_cls, st_ncls, st_lb, st_lam, st_mu, warm, sp,
    shared_best, own_best, own_vals, max_nodes,
):
    """Process up to ``max_nodes`` stack frames.  Returns (nodes, finished)."""
    dom = np.empty(n, dtype=np.int8)
    mark = np.zeros(n, dtype=np.int64)
    cost = np.empty((n, 3))
    fstar = np.zeros(n, dtype=np.int64)
    lam = np.zeros(n)
    mu = np.zeros(n)
    g_l = np.empty(n)
    g_m = np.empty(n)
    best_lam = np.empty(n)
    best_mu = np.empty(n)
    orb = np.zeros(n, dtype=np.int64)
    nodes = 0
    while sp[0] > 0:
        if nodes >= max_nodes:
            return nodes, False
        nodes += 1
        sp[0] -= 1
        f = sp[0]
        inc = shared_best[0]
        if own_best[0] < inc:
            inc = own_best[0]
        if st_lb[f] >= inc:
            continue
        dom[:] = st_dom[f]
        if warm:
            lam[:] = st_lam[f]
            mu[:] = st_mu[f]
        else:
            lam[:] = 0.0
            mu[:] = 0.0
        lb = evaluate(dom, ptr, idx, n, inv, low, iters, inc, lam, mu, mark, cost, fstar, g_l, g_m, best_lam, best_mu)
        if lb >= inc:
            continue
        v = pick(dom, ptr, idx, n)
        if v < 0:
            own_best[0] = lb
            for u in range(n):
                d = dom[u]
                own_vals[u] = 2 if d == B2 else (1 if d == B1 else low)
            if lb < shared_best[0]:
                shared_best[0] = lb
            continue
        d = dom[v]
        x = B2 if d & B2 else (B1 if d & B1 else BL)
        ncls = st_ncls[f]
        # right child reuses frame f: v and its orbit lose label x
        r = f
        st_dom[r] = dom
        if use_orbits:
            orbit_mark(v, dom, elem, st_cls[f], ncls, n, orb)
            for w in range(n):
                if orb[w]:
                    st_dom[r, w] &= ~x
        else:
            st_dom[r, v] &= ~x
        st_lb[r] = lb
        if warm:
            st_lam[r] = lam
            st_mu[r] = mu
        # left child: v takes x; split each element class by v's elements
        c = r + 1
        st_dom[c] = dom
        st_dom[c, v] = x
        st_lb[c] = lb
        k = 0
        if use_orbits:
            ev = elem[v]
            for i in range(ncls):
                cl = st_cls[r, i]
                a = cl & ev
                z = cl & ~ev
                if a != U0:
                    st_cls[c, k] = a
                    k += 1
                if z != U0:
                    st_cls[c, k] = z
                    k += 1
        st_ncls[c] = k
        if warm:
            st_lam[c] = lam
            st_mu[c] = mu
        sp[0] = c + 1
    return nodes, True
