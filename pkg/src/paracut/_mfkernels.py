"""Numba kernels for the static max-flow solvers.

All kernels operate on the flat arc arrays of a network (CSR adjacency,
paired reverse arcs) and on finite capacities; callers replace infinite
capacities with a finite bound that exceeds any possible flow.  Flows are
kept antisymmetric at all times, and an arc counts as residual when its
remaining capacity exceeds EPS.  Scan orders are fixed (ascending arc id,
FIFO queues), so results are deterministic.
"""
import numpy as np
from numba import njit

from .affine import EPS

#: Sentinel for "unreachable" distance labels.
INF_DIST = np.int64(2**60)

FREE, SRC, SNK = np.uint8(0), np.uint8(1), np.uint8(2)


@njit(cache=True)
def reverse_bfs(first_out, head, rev, cap, flow, t):
    """Distances to ``t`` in the residual graph, plus the shortest-path tree.

    Returns ``(dist, parent_arc)``; ``dist`` is INF_DIST for vertices without
    a residual path to ``t``, and ``parent_arc[v]`` is the tree arc leaving
    ``v`` towards ``t`` (lowest arc id among shortest alternatives).
    """
    n = first_out.shape[0] - 1
    dist = np.full(n, INF_DIST, np.int64)
    parent_arc = np.full(n, -1, np.int64)
    queue = np.empty(n, np.int64)
    dist[t] = 0
    queue[0] = t
    qh, qt = 0, 1
    while qh < qt:
        w = queue[qh]
        qh += 1
        for a in range(first_out[w], first_out[w + 1]):
            x = head[a]
            ra = rev[a]  # arc (x, w)
            if dist[x] == INF_DIST and cap[ra] - flow[ra] > EPS:
                dist[x] = dist[w] + 1
                parent_arc[x] = ra
                queue[qt] = x
                qt += 1
    return dist, parent_arc


@njit(cache=True)
def flow_value(first_out, head, rev, flow, t):
    """Net flow into the sink."""
    total = 0.0
    for a in range(first_out[t], first_out[t + 1]):
        total += flow[rev[a]]  # arc (head[a], t)
    return total


@njit(cache=True)
def ek_maxflow(first_out, head, rev, cap, s, t):
    """Shortest-augmenting-path max flow (the cross-validation oracle)."""
    n = first_out.shape[0] - 1
    m = head.shape[0]
    flow = np.zeros(m, np.float64)
    parent = np.empty(n, np.int64)
    queue = np.empty(n, np.int64)
    while True:
        parent[:] = -1
        parent[s] = -2
        queue[0] = s
        qh, qt = 0, 1
        found = False
        while qh < qt and not found:
            u = queue[qh]
            qh += 1
            for a in range(first_out[u], first_out[u + 1]):
                v = head[a]
                if parent[v] == -1 and cap[a] - flow[a] > EPS:
                    parent[v] = a
                    if v == t:
                        found = True
                        break
                    queue[qt] = v
                    qt += 1
        if not found:
            break
        delta = np.inf
        v = t
        while v != s:
            a = parent[v]
            r = cap[a] - flow[a]
            if r < delta:
                delta = r
            v = head[rev[a]]
        v = t
        while v != s:
            a = parent[v]
            flow[a] += delta
            flow[rev[a]] -= delta
            v = head[rev[a]]
    return flow


@njit(cache=True)
def _return_excess(first_out, head, rev, flow, excess, s, t):
    """Cancel vertex excesses back to the source along positive-flow paths.

    Turns a maximum preflow into a maximum flow.  From a vertex with excess,
    arcs carrying inbound flow are walked backwards (arcs ``a`` with
    ``flow[a] < -EPS``) until ``s``; flow decomposition of a preflow
    guarantees such a path exists.
    """
    n = first_out.shape[0] - 1
    mark = np.zeros(n, np.int64)
    epoch = 0
    stack_v = np.empty(n + 1, np.int64)
    stack_a = np.empty(n + 1, np.int64)
    for v0 in range(n):
        if v0 == s or v0 == t:
            continue
        while excess[v0] > EPS:
            epoch += 1
            top = 0
            stack_v[0] = v0
            stack_a[0] = first_out[v0]
            mark[v0] = epoch
            found = False
            while top >= 0:
                v = stack_v[top]
                if v == s:
                    found = True
                    break
                a = stack_a[top]
                if a >= first_out[v + 1]:
                    top -= 1
                    continue
                stack_a[top] = a + 1
                u = head[a]
                if flow[a] < -EPS and mark[u] != epoch:
                    mark[u] = epoch
                    top += 1
                    stack_v[top] = u
                    stack_a[top] = first_out[u]
            if not found:
                break  # corrupt preflow; refuse to loop forever
            # stack_a[i] sits one past the arc taken out of frame i
            delta = excess[v0]
            for i in range(top):
                r = -flow[stack_a[i] - 1]
                if r < delta:
                    delta = r
            for i in range(top):
                a = stack_a[i] - 1
                flow[a] += delta
                flow[rev[a]] -= delta
            excess[v0] -= delta


@njit(cache=True)
def prf_maxflow(first_out, head, rev, cap, s, t):
    """Push-relabel max flow with highest-label selection.

    Runs the gap heuristic and a global relabeling every ``n`` relabel
    operations, then returns leftover excesses to the source so the result
    satisfies flow conservation everywhere.
    """
    n = first_out.shape[0] - 1
    m = head.shape[0]
    flow = np.zeros(m, np.float64)
    excess = np.zeros(n, np.float64)
    d = np.full(n, np.int64(n), np.int64)
    cur = first_out[:n].copy()
    cnt = np.zeros(2 * n + 2, np.int64)

    # Active-vertex buckets by label; entries are validated on pop.
    bhead = np.full(n + 1, -1, np.int64)
    bnext = np.full(n, -1, np.int64)
    queue = np.empty(n, np.int64)

    saturated_source = False
    need_global = True
    relabels = 0
    hb = 0

    while True:
        if need_global:
            # exact residual distances to t; s and unreachable parked at n
            for v in range(n):
                d[v] = n
            d[t] = 0
            queue[0] = t
            qh, qt = 0, 1
            while qh < qt:
                w = queue[qh]
                qh += 1
                for a in range(first_out[w], first_out[w + 1]):
                    x = head[a]
                    ra = rev[a]
                    if x != s and d[x] == n and cap[ra] - flow[ra] > EPS:
                        d[x] = d[w] + 1
                        queue[qt] = x
                        qt += 1
            d[s] = n
            for i in range(2 * n + 2):
                cnt[i] = 0
            for v in range(n):
                cnt[d[v]] += 1
                cur[v] = first_out[v]
            for i in range(n + 1):
                bhead[i] = -1
            hb = 0
            if not saturated_source:
                saturated_source = True
                for a in range(first_out[s], first_out[s + 1]):
                    c = cap[a]
                    if c > EPS:
                        flow[a] = c
                        flow[rev[a]] = -c
                        excess[head[a]] += c
            for v in range(n):
                if v != s and v != t and excess[v] > EPS and d[v] < n:
                    bnext[v] = bhead[d[v]]
                    bhead[d[v]] = v
                    if d[v] > hb:
                        hb = d[v]
            need_global = False

        v = -1
        while hb >= 0:
            u = bhead[hb]
            if u == -1:
                hb -= 1
                continue
            bhead[hb] = bnext[u]
            if d[u] == hb and excess[u] > EPS:
                v = u
                break
        if v == -1:
            break  # no active vertices below level n: preflow is maximum

        while excess[v] > EPS and d[v] < n:
            if cur[v] >= first_out[v + 1]:
                # relabel
                dmin = np.int64(2 * n)
                for a in range(first_out[v], first_out[v + 1]):
                    if cap[a] - flow[a] > EPS and d[head[a]] < dmin:
                        dmin = d[head[a]]
                old = d[v]
                newd = dmin + 1
                if newd > n:
                    newd = np.int64(n)
                cnt[old] -= 1
                d[v] = newd
                cnt[newd] += 1
                cur[v] = first_out[v]
                relabels += 1
                if cnt[old] == 0 and 0 < old < n:
                    # gap heuristic: labels above the hole are disconnected
                    for w in range(n):
                        if w != s and old < d[w] < n:
                            cnt[d[w]] -= 1
                            d[w] = n
                            cnt[n] += 1
                if relabels >= n:
                    relabels = 0
                    need_global = True
                    break
            else:
                a = cur[v]
                w = head[a]
                if cap[a] - flow[a] > EPS and d[v] == d[w] + 1:
                    r = cap[a] - flow[a]
                    delta = excess[v] if excess[v] < r else r
                    flow[a] += delta
                    flow[rev[a]] -= delta
                    excess[v] -= delta
                    was = excess[w]
                    excess[w] += delta
                    if w != s and w != t and was <= EPS and d[w] < n:
                        bnext[w] = bhead[d[w]]
                        bhead[d[w]] = w
                        if d[w] > hb:
                            hb = d[w]
                else:
                    cur[v] += 1
        if excess[v] > EPS and d[v] < n and need_global is False:
            continue_requeue = True
        else:
            continue_requeue = False
        if continue_requeue:
            bnext[v] = bhead[d[v]]
            bhead[d[v]] = v
            if d[v] > hb:
                hb = d[v]

    _return_excess(first_out, head, rev, flow, excess, s, t)
    return flow


@njit(cache=True)
def ibfs_maxflow(first_out, head, rev, cap, s, t):
    """Incremental breadth-first search max flow, basic adoption scheme.

    Grows breadth-first trees from both terminals over residual arcs and
    augments whenever the trees touch.  Saturated tree arcs orphan their
    subtree roots; orphans are re-adopted FIFO, first at the same level via a
    current-edge cursor, otherwise relabelled to the lowest adjacent level,
    and removed from their tree when only deeper levels remain.  Growth uses
    per-tree work queues so vertices whose level changed are rescanned.  A
    residual sweep at the end tops up the flow in the rare case the basic
    scheme left an augmenting path, so the returned flow is always maximum.

    Returns ``(flow, finish_augmentations)``.
    """
    n = first_out.shape[0] - 1
    m = head.shape[0]
    flow = np.zeros(m, np.float64)

    tree = np.zeros(n, np.uint8)
    dist = np.zeros(n, np.int64)
    par = np.full(n, -1, np.int64)  # parent arc: (x,u) in source tree, (u,x) in sink tree
    cur = first_out[:n].copy()
    first_child = np.full(n, -1, np.int64)
    next_sib = np.full(n, -1, np.int64)
    prev_sib = np.full(n, -1, np.int64)

    qcap = n + 1
    cur_q = np.empty((2, qcap), np.int64)  # circular work queue per tree
    qh = np.zeros(2, np.int64)
    qt = np.zeros(2, np.int64)
    nxt_q = np.empty((2, qcap), np.int64)  # next-level buffer per tree
    nxt_len = np.zeros(2, np.int64)
    queued = np.zeros((2, n), np.bool_)

    orph = np.empty((2, qcap), np.int64)  # circular orphan FIFO per tree
    oh = np.zeros(2, np.int64)
    ot = np.zeros(2, np.int64)

    tree[s] = SRC
    tree[t] = SNK
    cur_q[0, 0] = s
    qt[0] = 1
    queued[0, s] = True
    cur_q[1, 0] = t
    qt[1] = 1
    queued[1, t] = True
    depth = np.zeros(2, np.int64)

    grow = 0
    while True:
        side = grow
        grow = 1 - grow
        if qh[side] == qt[side]:
            if nxt_len[side] == 0:
                break  # this tree cannot grow further: flow is maximum
            for i in range(nxt_len[side]):
                cur_q[side, i] = nxt_q[side, i]
            qh[side] = 0
            qt[side] = nxt_len[side]
            nxt_len[side] = 0
            depth[side] += 1

        my_tree = SRC if side == 0 else SNK
        while qh[side] != qt[side]:
            v = cur_q[side, qh[side] % qcap]
            qh[side] = (qh[side] + 1) % qcap
            queued[side, v] = False
            if tree[v] != my_tree:
                continue
            a = first_out[v]
            end = first_out[v + 1]
            while a < end:
                ta = a if side == 0 else rev[a]  # candidate tree arc
                if cap[ta] - flow[ta] > EPS:
                    x = head[a]
                    if tree[x] == FREE:
                        tree[x] = my_tree
                        dist[x] = dist[v] + 1
                        cur[x] = first_out[x]
                        par[x] = ta
                        nx = first_child[v]
                        next_sib[x] = nx
                        prev_sib[x] = -1
                        if nx >= 0:
                            prev_sib[nx] = x
                        first_child[v] = x
                        if not queued[side, x]:
                            queued[side, x] = True
                            if dist[x] <= depth[side]:
                                cur_q[side, qt[side] % qcap] = x
                                qt[side] = (qt[side] + 1) % qcap
                            else:
                                nxt_q[side, nxt_len[side]] = x
                                nxt_len[side] += 1
                    elif tree[x] != my_tree:
                        # bridge between the trees
                        bridge = ta
                        bv = v if side == 0 else x  # source-tree endpoint
                        bw = x if side == 0 else v  # sink-tree endpoint
                        while (tree[bv] == SRC and tree[bw] == SNK
                               and cap[bridge] - flow[bridge] > EPS):
                            # bottleneck along s->bv, bridge, bw->t
                            delta = cap[bridge] - flow[bridge]
                            y = bv
                            while y != s:
                                pa = par[y]
                                r = cap[pa] - flow[pa]
                                if r < delta:
                                    delta = r
                                y = head[rev[pa]]
                            y = bw
                            while y != t:
                                pa = par[y]
                                r = cap[pa] - flow[pa]
                                if r < delta:
                                    delta = r
                                y = head[pa]
                            flow[bridge] += delta
                            flow[rev[bridge]] -= delta
                            y = bv
                            while y != s:
                                pa = par[y]
                                flow[pa] += delta
                                flow[rev[pa]] -= delta
                                y = head[rev[pa]]
                            y = bw
                            while y != t:
                                pa = par[y]
                                flow[pa] += delta
                                flow[rev[pa]] -= delta
                                y = head[pa]
                            # collect orphans whose parent arc saturated
                            y = bv
                            while y != s:
                                pa = par[y]
                                py = head[rev[pa]]
                                if cap[pa] - flow[pa] <= EPS:
                                    # unlink y from py's child list
                                    pv = prev_sib[y]
                                    nx = next_sib[y]
                                    if pv >= 0:
                                        next_sib[pv] = nx
                                    else:
                                        first_child[py] = nx
                                    if nx >= 0:
                                        prev_sib[nx] = pv
                                    next_sib[y] = -1
                                    prev_sib[y] = -1
                                    par[y] = -1
                                    orph[0, ot[0] % qcap] = y
                                    ot[0] = (ot[0] + 1) % qcap
                                y = py
                            y = bw
                            while y != t:
                                pa = par[y]
                                py = head[pa]
                                if cap[pa] - flow[pa] <= EPS:
                                    pv = prev_sib[y]
                                    nx = next_sib[y]
                                    if pv >= 0:
                                        next_sib[pv] = nx
                                    else:
                                        first_child[py] = nx
                                    if nx >= 0:
                                        prev_sib[nx] = pv
                                    next_sib[y] = -1
                                    prev_sib[y] = -1
                                    par[y] = -1
                                    orph[1, ot[1] % qcap] = y
                                    ot[1] = (ot[1] + 1) % qcap
                                y = py
                            # adoption, source tree first
                            for aside in range(2):
                                atree = SRC if aside == 0 else SNK
                                ocap = depth[aside] + 1
                                while oh[aside] != ot[aside]:
                                    u = orph[aside, oh[aside] % qcap]
                                    oh[aside] = (oh[aside] + 1) % qcap
                                    uend = first_out[u + 1]
                                    # pass 1: same level, scanned via cursor
                                    adopted = False
                                    e = cur[u]
                                    while e < uend:
                                        ca = rev[e] if aside == 0 else e
                                        xx = head[e]
                                        if (tree[xx] == atree
                                                and dist[xx] == dist[u] - 1
                                                and cap[ca] - flow[ca] > EPS):
                                            cur[u] = e
                                            par[u] = ca
                                            nx = first_child[xx]
                                            next_sib[u] = nx
                                            prev_sib[u] = -1
                                            if nx >= 0:
                                                prev_sib[nx] = u
                                            first_child[xx] = u
                                            adopted = True
                                            break
                                        e += 1
                                    if adopted:
                                        continue
                                    cur[u] = uend
                                    # children become orphans before relabelling
                                    c = first_child[u]
                                    while c >= 0:
                                        nc = next_sib[c]
                                        par[c] = -1
                                        next_sib[c] = -1
                                        prev_sib[c] = -1
                                        orph[aside, ot[aside] % qcap] = c
                                        ot[aside] = (ot[aside] + 1) % qcap
                                        c = nc
                                    first_child[u] = -1
                                    # pass 2: lowest adjacent level
                                    dmin = INF_DIST
                                    best = np.int64(-1)
                                    for e2 in range(first_out[u], uend):
                                        ca = rev[e2] if aside == 0 else e2
                                        xx = head[e2]
                                        if (tree[xx] == atree
                                                and cap[ca] - flow[ca] > EPS
                                                and dist[xx] < dmin):
                                            dmin = dist[xx]
                                            best = e2
                                    if best < 0 or dmin + 1 > ocap:
                                        tree[u] = FREE
                                        par[u] = -1
                                        continue
                                    dist[u] = dmin + 1
                                    cur[u] = first_out[u]
                                    xx = head[best]
                                    ca = rev[best] if aside == 0 else best
                                    par[u] = ca
                                    nx = first_child[xx]
                                    next_sib[u] = nx
                                    prev_sib[u] = -1
                                    if nx >= 0:
                                        prev_sib[nx] = u
                                    first_child[xx] = u
                                    if not queued[aside, u]:
                                        queued[aside, u] = True
                                        if dist[u] <= depth[aside]:
                                            cur_q[aside, qt[aside] % qcap] = u
                                            qt[aside] = (qt[aside] + 1) % qcap
                                        else:
                                            nxt_q[aside, nxt_len[aside]] = u
                                            nxt_len[aside] += 1
                        if tree[v] != my_tree:
                            break
                        # re-examine the same arc: x may have become free
                        # while (v, x) is still residual
                        continue
                a += 1

    # safety net: absorb any augmenting path the tree phase missed
    finish = 0
    parent = np.empty(n, np.int64)
    bfsq = np.empty(n, np.int64)
    while True:
        parent[:] = -1
        parent[s] = -2
        bfsq[0] = s
        bh, bt = 0, 1
        found = False
        while bh < bt and not found:
            u = bfsq[bh]
            bh += 1
            for a in range(first_out[u], first_out[u + 1]):
                x = head[a]
                if parent[x] == -1 and cap[a] - flow[a] > EPS:
                    parent[x] = a
                    if x == t:
                        found = True
                        break
                    bfsq[bt] = x
                    bt += 1
        if not found:
            break
        finish += 1
        delta = np.inf
        x = t
        while x != s:
            a = parent[x]
            r = cap[a] - flow[a]
            if r < delta:
                delta = r
            x = head[rev[a]]
        x = t
        while x != s:
            a = parent[x]
            flow[a] += delta
            flow[rev[a]] -= delta
            x = head[rev[a]]
    return flow, finish
