"""Compiled search kernels.

Hot loops (A*, breadth-first sweeps, bitmask dynamic programs) live here
as numba-jitted functions over plain int64/float64 numpy arrays.  The
code avoids jit-only containers on purpose: hash maps are open-addressed
numpy arrays and the priority queue is a packed-int64 binary heap, so
every kernel also runs unmodified under plain CPython when numba is not
importable (much slower, same results).

Layout conventions shared by all kernels:

* a box is six ints ``lox, loy, hix, hiy, vmx, vmy`` (inclusive position
  range, per-axis speed cap);
* a configuration id packs position and velocity into one int64;
* an ordered-search state id is ``config_id * (m + 1) + visited`` where
  ``m`` is the number of tour entries;
* visit parameters travel as ``nu2`` (squared speed cap, -1 = none),
  ``alpha2`` (squared distance cap) and ``beta`` (0/1).
"""

from __future__ import annotations

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]

        def wrap(f):
            return f

        return wrap


_HASH_MIX = 0x9E3779B97F4A7C15
_MAXG = 16383  # costs and f-values must stay below this for key packing


# ---------------------------------------------------------------------------
# integer square roots


@njit(cache=True)
def _isqrt(n):
    if n < 2:
        return n
    x = np.int64(np.sqrt(np.float64(n)))
    while x * x > n:
        x -= 1
    while (x + 1) * (x + 1) <= n:
        x += 1
    return x


@njit(cache=True)
def _ceil2sqrt(d):
    """Least m with m*m >= 4*d, i.e. ceil(2*sqrt(d))."""
    r = _isqrt(4 * d)
    if r * r == 4 * d:
        return r
    return r + 1


# ---------------------------------------------------------------------------
# open-addressed int64 -> int64 map (key -1 means empty)


@njit(cache=True)
def _map_new(cap):
    keys = np.full(cap, -1, np.int64)
    vals = np.zeros(cap, np.int64)
    return keys, vals


@njit(cache=True)
def _map_slot(keys, key):
    mask = keys.shape[0] - 1
    i = (key * _HASH_MIX) & mask
    while True:
        k = keys[i]
        if k == key or k == -1:
            return i
        i = (i + 1) & mask


@njit(cache=True)
def _map_get(keys, vals, key, default):
    i = _map_slot(keys, key)
    if keys[i] == key:
        return vals[i]
    return default


@njit(cache=True)
def _map_grow(keys, vals):
    nkeys, nvals = _map_new(keys.shape[0] * 2)
    for i in range(keys.shape[0]):
        if keys[i] != -1:
            j = _map_slot(nkeys, keys[i])
            nkeys[j] = keys[i]
            nvals[j] = vals[i]
    return nkeys, nvals


# ---------------------------------------------------------------------------
# binary min-heap of packed int64 keys


@njit(cache=True)
def _heap_push(heap, n, key):
    heap[n] = key
    i = n
    while i > 0:
        p = (i - 1) >> 1
        if heap[p] > heap[i]:
            heap[p], heap[i] = heap[i], heap[p]
            i = p
        else:
            break
    return n + 1


@njit(cache=True)
def _heap_pop(heap, n):
    top = heap[0]
    n -= 1
    heap[0] = heap[n]
    i = 0
    while True:
        l = 2 * i + 1
        if l >= n:
            break
        m = l
        r = l + 1
        if r < n and heap[r] < heap[l]:
            m = r
        if heap[m] < heap[i]:
            heap[i], heap[m] = heap[m], heap[i]
            i = m
        else:
            break
    return top, n


# ---------------------------------------------------------------------------
# successor deltas and visit predicates


@njit(cache=True)
def _deltas(model):
    """Velocity-change offsets in a fixed lexicographic order.

    model 9: both components may change; model 5: at most one."""
    if model == 9:
        out = np.empty((9, 2), np.int64)
        i = 0
        for a in range(-1, 2):
            for b in range(-1, 2):
                out[i, 0] = a
                out[i, 1] = b
                i += 1
        return out
    out = np.empty((5, 2), np.int64)
    out[0, 0], out[0, 1] = -1, 0
    out[1, 0], out[1, 1] = 0, -1
    out[2, 0], out[2, 1] = 0, 0
    out[3, 0], out[3, 1] = 0, 1
    out[4, 0], out[4, 1] = 1, 0
    return out


@njit(cache=True)
def _visits(ax, ay, bx, by, vx, vy, cx, cy, nu2, alpha2, beta):
    """Does the vector from (ax,ay) to (bx,by) with velocity (vx,vy)
    collect the city (cx,cy)?  Exact squared-integer comparisons."""
    if nu2 >= 0 and vx * vx + vy * vy > nu2:
        return False
    if beta == 1:
        dx = cx - bx
        dy = cy - by
        return dx * dx + dy * dy <= alpha2
    apx = cx - ax
    apy = cy - ay
    seg2 = vx * vx + vy * vy
    if seg2 == 0:
        return apx * apx + apy * apy <= alpha2
    t = apx * vx + apy * vy
    if t <= 0:
        return apx * apx + apy * apy <= alpha2
    if t >= seg2:
        bpx = cx - bx
        bpy = cy - by
        return bpx * bpx + bpy * bpy <= alpha2
    cross = apx * vy - apy * vx
    return cross * cross <= alpha2 * seg2


@njit(cache=True)
def _advance(ax, ay, bx, by, vx, vy, tour, k, m, nu2, alpha2, beta):
    """Consume ordered tour entries collected by one vector; returns the
    new visited count.  Mirrors kinematics.advance_visits exactly,
    including the non-decreasing projection rule when beta is unset."""
    if nu2 >= 0 and vx * vx + vy * vy > nu2:
        return k
    seg2 = vx * vx + vy * vy
    tp_n = np.int64(0)
    tp_d = np.int64(1)
    while k < m:
        cx = tour[k, 0]
        cy = tour[k, 1]
        if beta == 1:
            dx = cx - bx
            dy = cy - by
            if dx * dx + dy * dy > alpha2:
                break
        else:
            apx = cx - ax
            apy = cy - ay
            if seg2 == 0:
                if apx * apx + apy * apy > alpha2:
                    break
                tc_n = np.int64(0)
                tc_d = np.int64(1)
            else:
                t = apx * vx + apy * vy
                if t <= 0:
                    if apx * apx + apy * apy > alpha2:
                        break
                    tcl = np.int64(0)
                elif t >= seg2:
                    bpx = cx - bx
                    bpy = cy - by
                    if bpx * bpx + bpy * bpy > alpha2:
                        break
                    tcl = seg2
                else:
                    cross = apx * vy - apy * vx
                    if cross * cross > alpha2 * seg2:
                        break
                    tcl = t
                tc_n = tcl
                tc_d = seg2
            if tc_n * tp_d < tp_n * tc_d:
                break
            tp_n = tc_n
            tp_d = tc_d
        k += 1
    return k


@njit(cache=True)
def _mask_after(ax, ay, bx, by, vx, vy, cities, mask, nu2, alpha2, beta):
    """Unordered variant: OR in every not-yet-visited city the vector
    collects (used by the exact bitmask search)."""
    if nu2 >= 0 and vx * vx + vy * vy > nu2:
        return mask
    for i in range(cities.shape[0]):
        if mask >> i & 1:
            continue
        if _visits(ax, ay, bx, by, vx, vy, cities[i, 0], cities[i, 1],
                   nu2, alpha2, beta):
            mask |= 1 << i
    return mask


# ---------------------------------------------------------------------------
# per-axis cost lower bounds


@njit(cache=True)
def _leg_final(x, dx, p):
    """Lower bound to reach coordinate p with axis speed 0, starting at
    x with axis speed dx (the three braking/overshoot/approach cases)."""
    if p == x and dx == 0:
        return np.int64(0)
    if p > x:
        o = np.int64(1)
    elif p < x:
        o = np.int64(-1)
    else:
        o = np.int64(-1) if dx > 0 else np.int64(1)
    xo = o * x
    dxo = o * dx
    po = o * p
    if dxo < 0:
        stop = xo - dxo * (dxo + 1) // 2
        return -dxo + _ceil2sqrt(po - stop)
    over = xo + dxo * (dxo - 1) // 2
    if dxo > 0 and over > po:
        return dxo + _ceil2sqrt(over - po)
    virt = xo - dxo * (dxo + 1) // 2
    return _ceil2sqrt(po - virt) - dxo


@njit(cache=True)
def _est_axis(x, dx, tour, k, m, axis):
    """Turning-point decomposition of the remaining entries, projected on
    one axis: first leg via the speed-aware cases, later legs from rest."""
    i = k
    while i < m and tour[i, axis] == x:
        i += 1
    if i == m:
        if dx == 0:
            return np.int64(0)
        a = dx if dx > 0 else -dx
        return a + _ceil2sqrt(a * (a - 1) // 2)
    t1 = tour[i, axis]
    o = np.int64(1) if t1 > x else np.int64(-1)
    j = i + 1
    while j < m:
        q = tour[j, axis]
        if (q - t1) * o >= 0:
            if (q - t1) * o > 0:
                t1 = q
            j += 1
        else:
            break
    xo = o * x
    dxo = o * dx
    po = o * t1
    cur = t1
    if dxo < 0:
        stop = xo - dxo * (dxo + 1) // 2
        cost = -dxo + _ceil2sqrt(po - stop)
    else:
        over = xo + dxo * (dxo - 1) // 2
        if dxo > 0 and over > po:
            cost = dxo
            cur = o * over
            if j == m:
                return cost + _ceil2sqrt(over - po)
        else:
            virt = xo - dxo * (dxo + 1) // 2
            cost = _ceil2sqrt(po - virt) - dxo
    d = -o
    while j < m:
        t2 = tour[j, axis]
        jj = j + 1
        while jj < m:
            q = tour[jj, axis]
            if (q - t2) * d >= 0:
                if (q - t2) * d > 0:
                    t2 = q
                jj += 1
            else:
                break
        cost += _ceil2sqrt((t2 - cur) * d)
        cur = t2
        d = -d
        j = jj
    return cost


@njit(cache=True)
def _h_state(x, y, vx, vy, tour, k, m, gx, gy, exact):
    """Admissible remaining-cost estimate for an ordered-search state.

    With everything consumed only the parking constraint remains; with a
    positive visit distance (exact == 0) the turning-point argument does
    not apply and only the final anchor is counted."""
    if k >= m or exact == 0:
        a = _leg_final(x, vx, gx)
        b = _leg_final(y, vy, gy)
        return a if a > b else b
    a = _est_axis(x, vx, tour, k, m, 0)
    b = _est_axis(y, vy, tour, k, m, 1)
    return a if a > b else b


# ---------------------------------------------------------------------------
# multipoint A* over (configuration, visited) states


@njit(cache=True)
def astar_ordered(lox, loy, hix, hiy, vmx, vmy, model, tour,
                  nu2, alpha2, beta,
                  sx, sy, svx, svy, sk, gx, gy, fbound, collect):
    """Best-first search for a cheapest trajectory consuming the tour
    entries in order and parking on (gx, gy).

    Returns (status, cost, path, expanded, reopened, popped):
    status 0 found, 1 exhausted, 2 proven >= fbound.  path rows are
    (x, y, vx, vy); expanded rows are (x, y, vx, vy, visited) for every
    settled state when collect is on.
    """
    H = hiy - loy + 1
    nvx = 2 * vmx + 1
    nvy = 2 * vmy + 1
    nv = nvx * nvy
    m = tour.shape[0]
    km = m + 1
    dl = _deltas(model)
    nd = dl.shape[0]

    exact = 1 if alpha2 == 0 else 0
    empty_path = np.empty((0, 4), np.int64)
    empty_exp = np.empty((0, 5), np.int64)

    scid = (((sx - lox) * H + (sy - loy)) * nv
            + (svx + vmx) * nvy + (svy + vmy))
    ssid = scid * km + sk
    gcid = (((gx - lox) * H + (gy - loy)) * nv + vmx * nvy + vmy)
    gsid = gcid * km + m

    gkeys, gvals = _map_new(1 << 14)  # state -> best g * 2 + settled flag
    gcount = 0
    pkeys, pvals = _map_new(1 << 14)  # state -> parent state
    pcount = 0
    heap = np.empty(1 << 14, np.int64)
    hn = 0

    h0 = _h_state(sx, sy, svx, svy, tour, sk, m, gx, gy, exact)
    i = _map_slot(gkeys, ssid)
    gkeys[i] = ssid
    gvals[i] = 0
    gcount += 1
    i = _map_slot(pkeys, ssid)
    pkeys[i] = ssid
    pvals[i] = -1
    pcount += 1
    hn = _heap_push(heap, hn, (h0 * (_MAXG + 1) + _MAXG) * (1 << 34) + ssid)

    exp_cap = 1 << 12
    expanded = np.empty((exp_cap, 5), np.int64)
    nexp = 0
    reopened = 0
    popped = 0

    while hn > 0:
        key, hn = _heap_pop(heap, hn)
        sid = key & ((1 << 34) - 1)
        rest = key >> 34
        g = _MAXG - (rest & _MAXG)
        f = rest // (_MAXG + 1)
        if fbound >= 0 and f >= fbound:
            return 2, np.int64(-1), empty_path, expanded[:nexp], reopened, popped
        val = _map_get(gkeys, gvals, sid, np.int64(-1))
        if (val & 1) == 1 or (val >> 1) != g:
            continue  # settled already, or superseded by a better g
        i = _map_slot(gkeys, sid)
        gvals[i] = (g << 1) | 1
        popped += 1

        cid = sid // km
        k = sid - cid * km
        vy_ = cid % nvy - vmy
        rem = cid // nvy
        vx_ = rem % nvx - vmx
        rem = rem // nvx
        y_ = rem % H + loy
        x_ = rem // H + lox

        if collect:
            if nexp == exp_cap:
                bigger = np.empty((exp_cap * 2, 5), np.int64)
                bigger[:exp_cap] = expanded
                expanded = bigger
                exp_cap *= 2
            expanded[nexp, 0] = x_
            expanded[nexp, 1] = y_
            expanded[nexp, 2] = vx_
            expanded[nexp, 3] = vy_
            expanded[nexp, 4] = k
            nexp += 1

        if sid == gsid:
            length = g + 1
            path = np.empty((length, 4), np.int64)
            cur = sid
            for row in range(length - 1, -1, -1):
                ccid = cur // km
                cvy = ccid % nvy - vmy
                crem = ccid // nvy
                cvx = crem % nvx - vmx
                crem = crem // nvx
                path[row, 0] = crem // H + lox
                path[row, 1] = crem % H + loy
                path[row, 2] = cvx
                path[row, 3] = cvy
                cur = _map_get(pkeys, pvals, cur, np.int64(-1))
            return 0, g, path, expanded[:nexp], reopened, popped

        ng = g + 1
        if ng >= _MAXG:
            return 1, np.int64(-1), empty_path, expanded[:nexp], reopened, popped
        for di in range(nd):
            nvx_ = vx_ + dl[di, 0]
            nvy_ = vy_ + dl[di, 1]
            if nvx_ < -vmx or nvx_ > vmx or nvy_ < -vmy or nvy_ > vmy:
                continue
            nx = x_ + nvx_
            ny = y_ + nvy_
            if nx < lox or nx > hix or ny < loy or ny > hiy:
                continue
            nk = _advance(x_, y_, nx, ny, nvx_, nvy_, tour, k, m,
                          nu2, alpha2, beta)
            ncid = (((nx - lox) * H + (ny - loy)) * nv
                    + (nvx_ + vmx) * nvy + (nvy_ + vmy))
            nsid = ncid * km + nk
            old = _map_get(gkeys, gvals, nsid, np.int64(-1))
            if old >= 0:
                og = old >> 1
                if ng >= og:
                    continue
                if (old & 1) == 1:
                    reopened += 1
            i = _map_slot(gkeys, nsid)
            if gkeys[i] == -1:
                gkeys[i] = nsid
                gcount += 1
            gvals[i] = ng << 1
            i = _map_slot(pkeys, nsid)
            if pkeys[i] == -1:
                pkeys[i] = nsid
                pcount += 1
            pvals[i] = sid
            nh = _h_state(nx, ny, nvx_, nvy_, tour, nk, m, gx, gy, exact)
            nf = ng + nh
            if nf >= _MAXG:
                continue
            if hn == heap.shape[0]:
                bigger = np.empty(hn * 2, np.int64)
                bigger[:hn] = heap
                heap = bigger
            hn = _heap_push(
                heap, hn,
                (nf * (_MAXG + 1) + (_MAXG - ng)) * (1 << 34) + nsid)
        if 10 * gcount >= 6 * gkeys.shape[0]:
            gkeys, gvals = _map_grow(gkeys, gvals)
        if 10 * pcount >= 6 * pkeys.shape[0]:
            pkeys, pvals = _map_grow(pkeys, pvals)

    return 1, np.int64(-1), empty_path, expanded[:nexp], reopened, popped


# ---------------------------------------------------------------------------
# dense breadth-first searches (unit-cost ground truth)


@njit(cache=True)
def bfs_ordered(lox, loy, hix, hiy, vmx, vmy, model, tour,
                nu2, alpha2, beta, sx, sy, svx, svy, sk, gx, gy):
    """Plain FIFO breadth-first search over (configuration, visited)
    states; the independent oracle the A* answers are checked against.

    Returns (status, cost, path) with status 0 found / 1 exhausted.
    """
    W = hix - lox + 1
    H = hiy - loy + 1
    nvx = 2 * vmx + 1
    nvy = 2 * vmy + 1
    nv = nvx * nvy
    m = tour.shape[0]
    km = m + 1
    nst = W * H * nv * km
    dl = _deltas(model)
    nd = dl.shape[0]

    # parent doubles as the visited marker (-2 untouched, -1 root)
    parent = np.full(nst, -2, np.int32)
    queue = np.empty(nst, np.int32)

    scid = (((sx - lox) * H + (sy - loy)) * nv
            + (svx + vmx) * nvy + (svy + vmy))
    ssid = scid * km + sk
    gcid = (((gx - lox) * H + (gy - loy)) * nv + vmx * nvy + vmy)
    gsid = gcid * km + m

    parent[ssid] = -1
    queue[0] = ssid
    head = 0
    tail = 1
    while head < tail:
        sid = queue[head]
        head += 1
        if sid == gsid:
            break
        cid = sid // km
        k = sid - cid * km
        vy_ = cid % nvy - vmy
        rem = cid // nvy
        vx_ = rem % nvx - vmx
        rem = rem // nvx
        y_ = rem % H + loy
        x_ = rem // H + lox
        for di in range(nd):
            nvx_ = vx_ + dl[di, 0]
            nvy_ = vy_ + dl[di, 1]
            if nvx_ < -vmx or nvx_ > vmx or nvy_ < -vmy or nvy_ > vmy:
                continue
            nx = x_ + nvx_
            ny = y_ + nvy_
            if nx < lox or nx > hix or ny < loy or ny > hiy:
                continue
            nk = _advance(x_, y_, nx, ny, nvx_, nvy_, tour, k, m,
                          nu2, alpha2, beta)
            ncid = (((nx - lox) * H + (ny - loy)) * nv
                    + (nvx_ + vmx) * nvy + (nvy_ + vmy))
            nsid = ncid * km + nk
            if parent[nsid] == -2:
                parent[nsid] = sid
                queue[tail] = nsid
                tail += 1

    if parent[gsid] == -2:
        return 1, np.int64(-1), np.empty((0, 4), np.int64)
    length = np.int64(0)
    cur = np.int64(gsid)
    while cur != -1:
        length += 1
        cur = np.int64(parent[cur])
    path = np.empty((length, 4), np.int64)
    cur = np.int64(gsid)
    for row in range(length - 1, -1, -1):
        ccid = cur // km
        cvy = ccid % nvy - vmy
        crem = ccid // nvy
        cvx = crem % nvx - vmx
        crem = crem // nvx
        path[row, 0] = crem // H + lox
        path[row, 1] = crem % H + loy
        path[row, 2] = cvx
        path[row, 3] = cvy
        cur = np.int64(parent[cur])
    return 0, length - 1, path


@njit(cache=True)
def bfs_ordered_to_goal(lox, loy, hix, hiy, vmx, vmy, model, tour,
                        nu2, alpha2, beta, gx, gy):
    """Distance from every (configuration, visited) state to the goal,
    via breadth-first search over reversed edges (-1 = unreachable)."""
    W = hix - lox + 1
    H = hiy - loy + 1
    nvx = 2 * vmx + 1
    nvy = 2 * vmy + 1
    nv = nvx * nvy
    m = tour.shape[0]
    km = m + 1
    nst = W * H * nv * km
    dl = _deltas(model)
    nd = dl.shape[0]

    dist = np.full(nst, -1, np.int32)
    queue = np.empty(nst, np.int32)
    gcid = (((gx - lox) * H + (gy - loy)) * nv + vmx * nvy + vmy)
    gsid = gcid * km + m
    dist[gsid] = 0
    queue[0] = gsid
    head = 0
    tail = 1
    kp_ok = np.empty(km, np.int64)
    while head < tail:
        sid = queue[head]
        head += 1
        cid = sid // km
        k = sid - cid * km
        vy_ = cid % nvy - vmy
        rem = cid // nvy
        vx_ = rem % nvx - vmx
        rem = rem // nvx
        y_ = rem % H + loy
        x_ = rem // H + lox
        # the incoming vector of this configuration is fixed, so the
        # predecessor position and the feasible prior visited-counts
        # do not depend on the predecessor velocity
        px = x_ - vx_
        py = y_ - vy_
        if px < lox or px > hix or py < loy or py > hiy:
            continue
        nok = 0
        for kp in range(k + 1):
            if _advance(px, py, x_, y_, vx_, vy_, tour, kp, m,
                        nu2, alpha2, beta) == k:
                kp_ok[nok] = kp
                nok += 1
        if nok == 0:
            continue
        nd_ = dist[sid] + 1
        for di in range(nd):
            pvx = vx_ - dl[di, 0]
            pvy = vy_ - dl[di, 1]
            if pvx < -vmx or pvx > vmx or pvy < -vmy or pvy > vmy:
                continue
            pcid = (((px - lox) * H + (py - loy)) * nv
                    + (pvx + vmx) * nvy + (pvy + vmy))
            for kk in range(nok):
                psid = pcid * km + kp_ok[kk]
                if dist[psid] < 0:
                    dist[psid] = nd_
                    queue[tail] = psid
                    tail += 1
    return dist


@njit(cache=True)
def bfs_config(lox, loy, hix, hiy, vmx, vmy, model,
               sx, sy, svx, svy, tx, ty, tvx, tvy, single_target):
    """Breadth-first search in the bare configuration graph.

    With single_target: returns (status, cost, path, dist) stopping at the
    target.  Without: explores everything reachable and returns the full
    distance array (status 0, cost -1, empty path).
    """
    H = hiy - loy + 1
    W = hix - lox + 1
    nvx = 2 * vmx + 1
    nvy = 2 * vmy + 1
    nv = nvx * nvy
    ncfg = W * H * nv
    dl = _deltas(model)
    nd = dl.shape[0]

    dist = np.full(ncfg, -1, np.int32)
    parent = np.full(ncfg, -1, np.int32)
    queue = np.empty(ncfg, np.int32)
    scid = (((sx - lox) * H + (sy - loy)) * nv
            + (svx + vmx) * nvy + (svy + vmy))
    tcid = (((tx - lox) * H + (ty - loy)) * nv
            + (tvx + vmx) * nvy + (tvy + vmy)) if single_target else -1
    dist[scid] = 0
    queue[0] = scid
    head = 0
    tail = 1
    while head < tail:
        cid = queue[head]
        head += 1
        if single_target and cid == tcid:
            break
        vy_ = cid % nvy - vmy
        rem = cid // nvy
        vx_ = rem % nvx - vmx
        rem = rem // nvx
        y_ = rem % H + loy
        x_ = rem // H + lox
        nd_ = dist[cid] + 1
        for di in range(nd):
            nvx_ = vx_ + dl[di, 0]
            nvy_ = vy_ + dl[di, 1]
            if nvx_ < -vmx or nvx_ > vmx or nvy_ < -vmy or nvy_ > vmy:
                continue
            nx = x_ + nvx_
            ny = y_ + nvy_
            if nx < lox or nx > hix or ny < loy or ny > hiy:
                continue
            ncid = (((nx - lox) * H + (ny - loy)) * nv
                    + (nvx_ + vmx) * nvy + (nvy_ + vmy))
            if dist[ncid] < 0:
                dist[ncid] = nd_
                parent[ncid] = cid
                queue[tail] = ncid
                tail += 1

    if not single_target:
        return 0, np.int64(-1), np.empty((0, 4), np.int64), dist
    if dist[tcid] < 0:
        return 1, np.int64(-1), np.empty((0, 4), np.int64), dist
    length = dist[tcid] + 1
    path = np.empty((length, 4), np.int64)
    cur = np.int64(tcid)
    for row in range(length - 1, -1, -1):
        cvy = cur % nvy - vmy
        crem = cur // nvy
        cvx = crem % nvx - vmx
        crem = crem // nvx
        path[row, 0] = crem // H + lox
        path[row, 1] = crem % H + loy
        path[row, 2] = cvx
        path[row, 3] = cvy
        cur = np.int64(parent[cur])
    return 0, np.int64(dist[tcid]), path, dist


@njit(cache=True)
def brute_mask(lox, loy, hix, hiy, vmx, vmy, model, cities,
               nu2, alpha2, beta, sx, sy, smask):
    """Exact unordered search over (configuration, visited-set) states:
    breadth-first layers, goal is all cities visited and parked on the
    start.  Returns (status, cost, path)."""
    W = hix - lox + 1
    H = hiy - loy + 1
    nvx = 2 * vmx + 1
    nvy = 2 * vmy + 1
    nv = nvx * nvy
    n = cities.shape[0]
    nmask = 1 << n
    nst = W * H * nv * nmask
    dl = _deltas(model)
    nd = dl.shape[0]

    parent = np.full(nst, -2, np.int32)
    queue = np.empty(nst, np.int32)

    scid = (((sx - lox) * H + (sy - loy)) * nv + vmx * nvy + vmy)
    ssid = scid * nmask + smask
    gsid = scid * nmask + (nmask - 1)
    parent[ssid] = -1
    queue[0] = ssid
    head = 0
    tail = 1
    while head < tail:
        sid = queue[head]
        head += 1
        if sid == gsid:
            break
        cid = sid // nmask
        mask = sid - cid * nmask
        vy_ = cid % nvy - vmy
        rem = cid // nvy
        vx_ = rem % nvx - vmx
        rem = rem // nvx
        y_ = rem % H + loy
        x_ = rem // H + lox
        for di in range(nd):
            nvx_ = vx_ + dl[di, 0]
            nvy_ = vy_ + dl[di, 1]
            if nvx_ < -vmx or nvx_ > vmx or nvy_ < -vmy or nvy_ > vmy:
                continue
            nx = x_ + nvx_
            ny = y_ + nvy_
            if nx < lox or nx > hix or ny < loy or ny > hiy:
                continue
            nmask_ = _mask_after(x_, y_, nx, ny, nvx_, nvy_, cities, mask,
                                 nu2, alpha2, beta)
            ncid = (((nx - lox) * H + (ny - loy)) * nv
                    + (nvx_ + vmx) * nvy + (nvy_ + vmy))
            nsid = ncid * nmask + nmask_
            if parent[nsid] == -2:
                parent[nsid] = sid
                queue[tail] = nsid
                tail += 1

    if parent[gsid] == -2:
        return 1, np.int64(-1), np.empty((0, 4), np.int64)
    length = np.int64(0)
    cur = np.int64(gsid)
    while cur != -1:
        length += 1
        cur = np.int64(parent[cur])
    path = np.empty((length, 4), np.int64)
    cur = np.int64(gsid)
    for row in range(length - 1, -1, -1):
        ccid = cur // nmask
        cvy = ccid % nvy - vmy
        crem = ccid // nvy
        cvx = crem % nvx - vmx
        crem = crem // nvx
        path[row, 0] = crem // H + lox
        path[row, 1] = crem % H + loy
        path[row, 2] = cvx
        path[row, 3] = cvy
        cur = np.int64(parent[cur])
    return 0, length - 1, path


# ---------------------------------------------------------------------------
# Held-Karp dynamic programs


@njit(cache=True)
def held_karp_float(D):
    """Exact shortest closed tour over a float distance matrix, starting
    and ending at node 0.  Among equal-length optima the lexicographically
    smallest visit order is returned (ties resolved toward lower indices
    during the greedy front reconstruction)."""
    n = D.shape[0]
    order = np.empty(n + 1, np.int64)
    order[0] = 0
    order[n] = 0
    if n == 1:
        return 0.0, order
    r = n - 1
    full = (1 << r) - 1
    g = np.empty((full + 1, r), np.float64)
    for j in range(r):
        g[0, j] = D[j + 1, 0]
    for mask in range(1, full + 1):
        for j in range(r):
            if mask >> j & 1:
                continue
            best = np.inf
            mm = mask
            while mm:
                t = 0
                low = mm & (-mm)
                while (1 << t) != low:
                    t += 1
                mm &= mm - 1
                v = D[j + 1, t + 1] + g[mask ^ (1 << t), t]
                if v < best:
                    best = v
            g[mask, j] = best
    total = 0.0
    mask = full
    cur = -1
    for step in range(r):
        best = np.inf
        bt = -1
        mm = mask
        while mm:
            t = 0
            low = mm & (-mm)
            while (1 << t) != low:
                t += 1
            mm &= mm - 1
            base = D[0, t + 1] if cur < 0 else D[cur + 1, t + 1]
            v = base + g[mask ^ (1 << t), t]
            if v < best:
                best = v
                bt = t
        total += D[0, bt + 1] if cur < 0 else D[cur + 1, bt + 1]
        order[step + 1] = bt + 1
        mask ^= 1 << bt
        cur = bt
    total += D[cur + 1, 0]
    return total, order


@njit(cache=True)
def held_karp_int(D, inf):
    """Exact directed closed-tour cost over an int64 weight matrix where
    ``inf`` marks absent arcs.  Returns -1 when no tour exists."""
    n = D.shape[0]
    if n == 1:
        return np.int64(0)
    r = n - 1
    full = (1 << r) - 1
    g = np.full((full + 1, r), inf, np.int64)
    for j in range(r):
        g[0, j] = D[j + 1, 0]
    for mask in range(1, full + 1):
        for j in range(r):
            if mask >> j & 1:
                continue
            best = inf
            mm = mask
            while mm:
                t = 0
                low = mm & (-mm)
                while (1 << t) != low:
                    t += 1
                mm &= mm - 1
                arc = D[j + 1, t + 1]
                sub = g[mask ^ (1 << t), t]
                if arc < inf and sub < inf:
                    v = arc + sub
                    if v < best:
                        best = v
            g[mask, j] = best
    best = inf
    mm = full
    while mm:
        t = 0
        low = mm & (-mm)
        while (1 << t) != low:
            t += 1
        mm &= mm - 1
        arc = D[0, t + 1]
        sub = g[full ^ (1 << t), t]
        if arc < inf and sub < inf:
            v = arc + sub
            if v < best:
                best = v
    if best >= inf:
        return np.int64(-1)
    return best
