"""Exact maximum-weight matching on general graphs (blossom algorithm).

Array-based O(n^3) primal-dual implementation for nonnegative integer
weights, structured so the same code runs under numba's nopython JIT
(fast path) or as plain Python (fallback when numba is unavailable).

State layout follows the classic formulation: vertices are 0..n-1,
blossoms n..2n-1, and each undirected edge k owns two directed endpoint
slots 2k (into u) and 2k+1 (into v). ``mate[v]`` stores the remote
endpoint slot of v's matched edge, or -1.

Every solve is certified: the final dual variables are checked against
complementary slackness, so a silent correctness regression in this
kernel cannot produce an accepted matching.
"""

from __future__ import annotations

import numpy as np

try:
    from numba import njit

    NUMBA_ENABLED = True
except ImportError:  # pragma: no cover - exercised only without numba
    NUMBA_ENABLED = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]

        def wrap(f):
            return f

        return wrap


_UNLABELED = 0
_S = 1
_T = 2


@njit(cache=True, nogil=True)
def _slack(k, dualvar, eu, ev, ew):
    return dualvar[eu[k]] + dualvar[ev[k]] - 2 * ew[k]


@njit(cache=True, nogil=True)
def _blossom_leaves(b, nvertex, childs, childs_len, out, stack):
    """Collect the vertices under blossom ``b`` into ``out``; return count."""
    if b < nvertex:
        out[0] = b
        return 1
    top = 0
    stack[top] = b
    top += 1
    cnt = 0
    while top > 0:
        top -= 1
        x = stack[top]
        if x < nvertex:
            out[cnt] = x
            cnt += 1
        else:
            for i in range(childs_len[x]):
                stack[top] = childs[x, i]
                top += 1
    return cnt


@njit(cache=True, nogil=True)
def _assign_label(
    w, t, p,
    nvertex, endpoint, mate, label, labelend, inblossom, blossombase,
    bestedge, childs, childs_len, queue, qtail, leafbuf, leafstack,
):
    """Label vertex w's blossom with t via endpoint p; return new queue
    tail, or -1 on queue overflow.

    A T label immediately propagates an S label to the mate of the
    blossom base (tail loop instead of recursion).
    """
    while True:
        b = inblossom[w]
        label[w] = t
        label[b] = t
        labelend[w] = p
        labelend[b] = p
        bestedge[w] = -1
        bestedge[b] = -1
        if t == _S:
            cnt = _blossom_leaves(b, nvertex, childs, childs_len, leafbuf, leafstack)
            if qtail + cnt > len(queue):
                return -1
            for i in range(cnt):
                queue[qtail] = leafbuf[i]
                qtail += 1
            return qtail
        base = blossombase[b]
        w = endpoint[mate[base]]
        t = _S
        p = mate[base] ^ 1


@njit(cache=True, nogil=True)
def _scan_blossom(
    v, w,
    endpoint, label, labelend, inblossom, blossombase, path,
):
    """Walk up the alternating trees from v and w; return the common base
    vertex of a new blossom, or -1 if an augmenting path was found."""
    npath = 0
    base = -1
    while v != -1 or w != -1:
        b = inblossom[v]
        if label[b] & 4:
            base = blossombase[b]
            break
        path[npath] = b
        npath += 1
        label[b] = 5
        if labelend[b] == -1:
            v = -1
        else:
            v = endpoint[labelend[b]]
            b = inblossom[v]
            v = endpoint[labelend[b]]
        if w != -1:
            v, w = w, v
    for i in range(npath):
        label[path[i]] = _S
    return base


@njit(cache=True, nogil=True)
def _add_blossom(
    base, k,
    nvertex, eu, ev, ew, endpoint, nb_start, nb_flat,
    mate, label, labelend, inblossom, blossomparent, blossombase,
    childs, childs_len, endps, bestedge, bestedgeto_buf,
    bbe, bbe_len, dualvar, unused, unused_top, queue, qtail,
    leafbuf, leafstack, pathbuf, endpbuf,
):
    """Fold the cycle through edge k and base vertex into a new blossom.

    Returns (unused_top, qtail); qtail is -1 on queue overflow.
    """
    v = eu[k]
    w = ev[k]
    bb = inblossom[base]
    bv = inblossom[v]
    bw = inblossom[w]
    b = unused[unused_top - 1]
    unused_top -= 1
    blossombase[b] = base
    blossomparent[b] = -1
    blossomparent[bb] = b

    # Trace the v-side path (base excluded), then store it reversed so the
    # child ring starts at the base sub-blossom.
    npath = 0
    while bv != bb:
        blossomparent[bv] = b
        pathbuf[npath] = bv
        endpbuf[npath] = labelend[bv]
        npath += 1
        v = endpoint[labelend[bv]]
        bv = inblossom[v]
    nch = 0
    childs[b, nch] = bb
    nch += 1
    for i in range(npath - 1, -1, -1):
        childs[b, nch] = pathbuf[i]
        nch += 1
        endps[b, nch - 2] = endpbuf[i]
    endps[b, nch - 1] = 2 * k
    # Append the w-side path in forward order.
    while bw != bb:
        blossomparent[bw] = b
        childs[b, nch] = bw
        endps[b, nch] = labelend[bw] ^ 1
        nch += 1
        w = endpoint[labelend[bw]]
        bw = inblossom[w]
    childs_len[b] = nch

    label[b] = _S
    labelend[b] = labelend[bb]
    dualvar[b] = 0
    cnt = _blossom_leaves(b, nvertex, childs, childs_len, leafbuf, leafstack)
    for i in range(cnt):
        lv = leafbuf[i]
        if label[inblossom[lv]] == _T:
            if qtail >= len(queue):
                return unused_top, -1
            queue[qtail] = lv
            qtail += 1
        inblossom[lv] = b

    # Merge least-slack edge lists of the sub-blossoms.
    n2 = 2 * nvertex
    for i in range(n2):
        bestedgeto_buf[i] = -1
    for ci in range(nch):
        cbv = childs[b, ci]
        if bbe_len[cbv] < 0:
            # No cached list: scan all edges out of this sub-blossom.
            cnt2 = _blossom_leaves(cbv, nvertex, childs, childs_len, leafbuf, leafstack)
            for li in range(cnt2):
                lv = leafbuf[li]
                for pi in range(nb_start[lv], nb_start[lv + 1]):
                    p = nb_flat[pi]
                    ke = p // 2
                    j = eu[ke] if inblossom[ev[ke]] == b else ev[ke]
                    bj = inblossom[j]
                    if bj != b and label[bj] == _S:
                        if bestedgeto_buf[bj] == -1 or _slack(
                            ke, dualvar, eu, ev, ew
                        ) < _slack(bestedgeto_buf[bj], dualvar, eu, ev, ew):
                            bestedgeto_buf[bj] = ke
        else:
            for li in range(bbe_len[cbv]):
                ke = bbe[cbv, li]
                j = eu[ke] if inblossom[ev[ke]] == b else ev[ke]
                bj = inblossom[j]
                if bj != b and label[bj] == _S:
                    if bestedgeto_buf[bj] == -1 or _slack(
                        ke, dualvar, eu, ev, ew
                    ) < _slack(bestedgeto_buf[bj], dualvar, eu, ev, ew):
                        bestedgeto_buf[bj] = ke
        bbe_len[cbv] = -1
        bestedge[cbv] = -1
    nbe = 0
    for i in range(n2):
        if bestedgeto_buf[i] != -1:
            bbe[b, nbe] = bestedgeto_buf[i]
            nbe += 1
    bbe_len[b] = nbe
    bestedge[b] = -1
    for i in range(nbe):
        ke = bbe[b, i]
        if bestedge[b] == -1 or _slack(ke, dualvar, eu, ev, ew) < _slack(
            bestedge[b], dualvar, eu, ev, ew
        ):
            bestedge[b] = ke
    return unused_top, qtail


@njit(cache=True, nogil=True)
def _augment_blossom(
    b, v,
    nvertex, endpoint, mate, blossomparent, blossombase,
    childs, childs_len, endps, taskb, taskv, rotbuf,
):
    """Rematch the interior of blossom b so vertex v becomes its base.

    Recursion over nested sub-blossoms is replaced by an explicit task
    stack; a sub-blossom's rematch never writes the mate of its own new
    base vertex, so deferred processing is order-independent.
    """
    ntask = 0
    taskb[ntask] = b
    taskv[ntask] = v
    ntask += 1
    while ntask > 0:
        ntask -= 1
        cb = taskb[ntask]
        cv = taskv[ntask]
        # Bubble up from cv to an immediate child of cb.
        t = cv
        while blossomparent[t] != cb:
            t = blossomparent[t]
        if t >= nvertex:
            taskb[ntask] = t
            taskv[ntask] = cv
            ntask += 1
        ln = childs_len[cb]
        i = 0
        for ci in range(ln):
            if childs[cb, ci] == t:
                i = ci
                break
        if i & 1:
            j = i - ln
            jstep = 1
            endptrick = 0
        else:
            j = i
            jstep = -1
            endptrick = 1
        while j != 0:
            j += jstep
            t = childs[cb, j % ln]
            p = endps[cb, (j - endptrick) % ln] ^ endptrick
            if t >= nvertex:
                taskb[ntask] = t
                taskv[ntask] = endpoint[p]
                ntask += 1
            j += jstep
            t = childs[cb, j % ln]
            if t >= nvertex:
                taskb[ntask] = t
                taskv[ntask] = endpoint[p ^ 1]
                ntask += 1
            mate[endpoint[p]] = p ^ 1
            mate[endpoint[p ^ 1]] = p
        # Rotate child/endp rings so position i comes first.
        for ci in range(ln):
            rotbuf[ci] = childs[cb, (i + ci) % ln]
        for ci in range(ln):
            childs[cb, ci] = rotbuf[ci]
        for ci in range(ln):
            rotbuf[ci] = endps[cb, (i + ci) % ln]
        for ci in range(ln):
            endps[cb, ci] = rotbuf[ci]
        blossombase[cb] = cv


@njit(cache=True, nogil=True)
def _augment_matching(
    k,
    nvertex, eu, ev, endpoint, mate, label, labelend, inblossom,
    blossomparent, blossombase, childs, childs_len, endps,
    taskb, taskv, rotbuf,
):
    """Swap matched/unmatched edges along the augmenting path through k."""
    for side in range(2):
        if side == 0:
            s = eu[k]
            p = 2 * k + 1
        else:
            s = ev[k]
            p = 2 * k
        while True:
            bs = inblossom[s]
            if bs >= nvertex:
                _augment_blossom(
                    bs, s, nvertex, endpoint, mate, blossomparent,
                    blossombase, childs, childs_len, endps, taskb, taskv, rotbuf,
                )
            mate[s] = p
            if labelend[bs] == -1:
                break
            t = endpoint[labelend[bs]]
            bt = inblossom[t]
            s = endpoint[labelend[bt]]
            j = endpoint[labelend[bt] ^ 1]
            if bt >= nvertex:
                _augment_blossom(
                    bt, j, nvertex, endpoint, mate, blossomparent,
                    blossombase, childs, childs_len, endps, taskb, taskv, rotbuf,
                )
            mate[j] = labelend[bt]
            p = labelend[bt] ^ 1


@njit(cache=True, nogil=True)
def _expand_blossom(
    b, endstage,
    nvertex, endpoint, mate, label, labelend, inblossom,
    blossomparent, blossombase, childs, childs_len, endps,
    bestedge, bbe_len, dualvar, allowedge, unused, unused_top,
    queue, qtail, leafbuf, leafstack, expstack,
):
    """Dissolve blossom b, relabeling its children when mid-stage.

    Nested zero-dual sub-blossoms are expanded too at stage end, via an
    explicit stack. Returns (unused_top, qtail); qtail -1 on overflow.
    """
    nexp = 0
    expstack[nexp] = b
    nexp += 1
    while nexp > 0:
        nexp -= 1
        cb = expstack[nexp]
        for ci in range(childs_len[cb]):
            s = childs[cb, ci]
            blossomparent[s] = -1
            if s < nvertex:
                inblossom[s] = s
            elif endstage and dualvar[s] == 0:
                expstack[nexp] = s
                nexp += 1
            else:
                cnt = _blossom_leaves(s, nvertex, childs, childs_len, leafbuf, leafstack)
                for li in range(cnt):
                    inblossom[leafbuf[li]] = s
        if (not endstage) and label[cb] == _T:
            # Mid-stage expansion of a T-blossom: walk from the entry
            # child to the base, alternating T labels and allowed edges.
            ln = childs_len[cb]
            entrychild = inblossom[endpoint[labelend[cb] ^ 1]]
            j = 0
            for ci in range(ln):
                if childs[cb, ci] == entrychild:
                    j = ci
                    break
            if j & 1:
                j -= ln
                jstep = 1
                endptrick = 0
            else:
                jstep = -1
                endptrick = 1
            p = labelend[cb]
            while j != 0:
                label[endpoint[p ^ 1]] = _UNLABELED
                label[endpoint[endps[cb, (j - endptrick) % ln] ^ endptrick ^ 1]] = _UNLABELED
                qtail = _assign_label(
                    endpoint[p ^ 1], _T, p,
                    nvertex, endpoint, mate, label, labelend, inblossom,
                    blossombase, bestedge, childs, childs_len,
                    queue, qtail, leafbuf, leafstack,
                )
                if qtail < 0:
                    return unused_top, -1
                allowedge[endps[cb, (j - endptrick) % ln] // 2] = True
                j += jstep
                p = endps[cb, (j - endptrick) % ln] ^ endptrick
                allowedge[p // 2] = True
                j += jstep
            bv = childs[cb, j % ln]
            label[endpoint[p ^ 1]] = _T
            label[bv] = _T
            labelend[endpoint[p ^ 1]] = p
            labelend[bv] = p
            bestedge[bv] = -1
            j += jstep
            while childs[cb, j % ln] != entrychild:
                bv = childs[cb, j % ln]
                if label[bv] == _S:
                    j += jstep
                    continue
                cnt = _blossom_leaves(bv, nvertex, childs, childs_len, leafbuf, leafstack)
                lv = -1
                for li in range(cnt):
                    if label[leafbuf[li]] != _UNLABELED:
                        lv = leafbuf[li]
                        break
                if lv >= 0:
                    label[lv] = _UNLABELED
                    label[endpoint[mate[blossombase[bv]]]] = _UNLABELED
                    qtail = _assign_label(
                        lv, _T, labelend[lv],
                        nvertex, endpoint, mate, label, labelend, inblossom,
                        blossombase, bestedge, childs, childs_len,
                        queue, qtail, leafbuf, leafstack,
                    )
                    if qtail < 0:
                        return unused_top, -1
                j += jstep
        label[cb] = -1
        labelend[cb] = -1
        childs_len[cb] = 0
        blossombase[cb] = -1
        bbe_len[cb] = -1
        bestedge[cb] = -1
        unused[unused_top] = cb
        unused_top += 1
    return unused_top, qtail


@njit(cache=True, nogil=True)
def _verify_optimum(
    nvertex, nedge, eu, ev, ew, endpoint, mate, blossomparent,
    blossombase, childs_len, endps, dualvar,
):
    """Check complementary slackness of the final primal/dual pair."""
    for v in range(nvertex):
        if dualvar[v] < 0:
            return False
        if mate[v] == -1 and dualvar[v] != 0:
            return False
    for b in range(nvertex, 2 * nvertex):
        if blossombase[b] >= 0 and dualvar[b] < 0:
            return False
    chain_i = np.empty(nvertex + 1, dtype=np.int64)
    chain_j = np.empty(nvertex + 1, dtype=np.int64)
    for k in range(nedge):
        i = eu[k]
        j = ev[k]
        s = dualvar[i] + dualvar[j] - 2 * ew[k]
        ni = 0
        b = blossomparent[i]
        while b != -1:
            chain_i[ni] = b
            ni += 1
            b = blossomparent[b]
        nj = 0
        b = blossomparent[j]
        while b != -1:
            chain_j[nj] = b
            nj += 1
            b = blossomparent[b]
        # Shared blossoms form a common suffix of both parent chains.
        ci = ni - 1
        cj = nj - 1
        while ci >= 0 and cj >= 0 and chain_i[ci] == chain_j[cj]:
            s += 2 * dualvar[chain_i[ci]]
            ci -= 1
            cj -= 1
        if s < 0:
            return False
        if mate[i] // 2 == k or mate[j] // 2 == k:
            if not (mate[i] // 2 == k and mate[j] // 2 == k and s == 0):
                return False
    for b in range(nvertex, 2 * nvertex):
        if blossombase[b] >= 0 and dualvar[b] > 0:
            ln = childs_len[b]
            if ln % 2 != 1:
                return False
            for ci in range(1, ln, 2):
                p = endps[b, ci]
                if mate[endpoint[p]] != p ^ 1:
                    return False
                if mate[endpoint[p ^ 1]] != p:
                    return False
    return True


@njit(cache=True, nogil=True)
def _mwm_main(nvertex, eu, ev, ew, nb_start, nb_flat, endpoint, verify):
    """Run the full primal-dual loop; return the mate-vertex array.

    Vertex duals start uniform at the maximum edge weight; the free
    vertices then share one dual trajectory, which the final-stage
    termination rule (stop when the minimum dual binds) relies on.

    On internal failure returns a length-1 array: [-2] for work-queue
    overflow, [-3] for a failed optimality certificate.
    """
    nedge = len(eu)
    n2 = 2 * nvertex
    maxweight = np.int64(0)
    for k in range(nedge):
        if ew[k] > maxweight:
            maxweight = ew[k]

    mate = np.full(nvertex, -1, dtype=np.int64)
    label = np.zeros(n2, dtype=np.int64)
    labelend = np.full(n2, -1, dtype=np.int64)
    inblossom = np.arange(nvertex, dtype=np.int64)
    blossomparent = np.full(n2, -1, dtype=np.int64)
    blossombase = np.full(n2, -1, dtype=np.int64)
    blossombase[:nvertex] = np.arange(nvertex, dtype=np.int64)
    maxring = nvertex + 1
    # Scratch rows are length-guarded, so uninitialized memory is fine.
    childs = np.empty((n2, maxring), dtype=np.int64)
    childs_len = np.zeros(n2, dtype=np.int64)
    endps = np.empty((n2, maxring), dtype=np.int64)
    bestedge = np.full(n2, -1, dtype=np.int64)
    bbe = np.empty((n2, n2), dtype=np.int64)
    bbe_len = np.full(n2, -1, dtype=np.int64)
    bestedgeto_buf = np.empty(n2, dtype=np.int64)
    dualvar = np.zeros(n2, dtype=np.int64)
    dualvar[:nvertex] = maxweight
    allowedge = np.zeros(nedge, dtype=np.bool_)
    qcap = nvertex * nvertex + 64 * nvertex + 64
    queue = np.empty(qcap, dtype=np.int64)
    unused = np.arange(nvertex, n2, dtype=np.int64)
    unused_top = nvertex
    leafbuf = np.empty(nvertex + 1, dtype=np.int64)
    leafstack = np.empty(n2 + 1, dtype=np.int64)
    pathbuf = np.empty(n2, dtype=np.int64)
    endpbuf = np.empty(n2, dtype=np.int64)
    scanpath = np.empty(n2, dtype=np.int64)
    taskb = np.empty(n2 + 1, dtype=np.int64)
    taskv = np.empty(n2 + 1, dtype=np.int64)
    rotbuf = np.empty(maxring, dtype=np.int64)
    expstack = np.empty(n2 + 1, dtype=np.int64)

    for _stage in range(nvertex):
        label[:] = _UNLABELED
        bestedge[:] = -1
        for b in range(nvertex, n2):
            bbe_len[b] = -1
        allowedge[:] = False
        qhead = 0
        qtail = 0
        for v in range(nvertex):
            if mate[v] == -1 and label[inblossom[v]] == _UNLABELED:
                qtail = _assign_label(
                    v, _S, -1,
                    nvertex, endpoint, mate, label, labelend, inblossom,
                    blossombase, bestedge, childs, childs_len,
                    queue, qtail, leafbuf, leafstack,
                )
                if qtail < 0:
                    return np.full(1, -2, dtype=np.int64)
        augmented = False
        while True:
            while qhead < qtail and not augmented:
                v = queue[qhead]
                qhead += 1
                for pi in range(nb_start[v], nb_start[v + 1]):
                    p = nb_flat[pi]
                    k = p // 2
                    w = endpoint[p]
                    if inblossom[v] == inblossom[w]:
                        continue
                    kslack = np.int64(0)
                    if not allowedge[k]:
                        kslack = _slack(k, dualvar, eu, ev, ew)
                        if kslack <= 0:
                            allowedge[k] = True
                    if allowedge[k]:
                        if label[inblossom[w]] == _UNLABELED:
                            qtail = _assign_label(
                                w, _T, p ^ 1,
                                nvertex, endpoint, mate, label, labelend,
                                inblossom, blossombase, bestedge, childs,
                                childs_len, queue, qtail, leafbuf, leafstack,
                            )
                            if qtail < 0:
                                return np.full(1, -2, dtype=np.int64)
                        elif label[inblossom[w]] == _S:
                            base = _scan_blossom(
                                v, w, endpoint, label, labelend, inblossom,
                                blossombase, scanpath,
                            )
                            if base >= 0:
                                unused_top, qtail = _add_blossom(
                                    base, k,
                                    nvertex, eu, ev, ew, endpoint, nb_start,
                                    nb_flat, mate, label, labelend, inblossom,
                                    blossomparent, blossombase, childs,
                                    childs_len, endps, bestedge, bestedgeto_buf,
                                    bbe, bbe_len, dualvar, unused, unused_top,
                                    queue, qtail, leafbuf, leafstack, pathbuf,
                                    endpbuf,
                                )
                                if qtail < 0:
                                    return np.full(1, -2, dtype=np.int64)
                            else:
                                _augment_matching(
                                    k, nvertex, eu, ev, endpoint, mate, label,
                                    labelend, inblossom, blossomparent,
                                    blossombase, childs, childs_len, endps,
                                    taskb, taskv, rotbuf,
                                )
                                augmented = True
                                break
                        elif label[w] == _UNLABELED:
                            label[w] = _T
                            labelend[w] = p ^ 1
                    elif label[inblossom[w]] == _S:
                        b = inblossom[v]
                        if bestedge[b] == -1 or kslack < _slack(
                            bestedge[b], dualvar, eu, ev, ew
                        ):
                            bestedge[b] = k
                    elif label[w] == _UNLABELED:
                        if bestedge[w] == -1 or kslack < _slack(
                            bestedge[w], dualvar, eu, ev, ew
                        ):
                            bestedge[w] = k
            if augmented:
                break

            # Dual update: smallest step that creates new tight structure.
            delta = dualvar[0]
            for v in range(nvertex):
                if dualvar[v] < delta:
                    delta = dualvar[v]
            if delta < 0:
                delta = np.int64(0)
            deltatype = 1
            deltaedge = -1
            deltablossom = -1
            for v in range(nvertex):
                if label[inblossom[v]] == _UNLABELED and bestedge[v] != -1:
                    d = _slack(bestedge[v], dualvar, eu, ev, ew)
                    if d < delta:
                        delta = d
                        deltatype = 2
                        deltaedge = bestedge[v]
            for b in range(n2):
                if blossomparent[b] == -1 and label[b] == _S and bestedge[b] != -1:
                    kslack = _slack(bestedge[b], dualvar, eu, ev, ew)
                    d = kslack // 2
                    if d < delta:
                        delta = d
                        deltatype = 3
                        deltaedge = bestedge[b]
            for b in range(nvertex, n2):
                if (
                    blossombase[b] >= 0
                    and blossomparent[b] == -1
                    and label[b] == _T
                    and dualvar[b] < delta
                ):
                    delta = dualvar[b]
                    deltatype = 4
                    deltablossom = b

            for v in range(nvertex):
                lb = label[inblossom[v]]
                if lb == _S:
                    dualvar[v] -= delta
                elif lb == _T:
                    dualvar[v] += delta
            for b in range(nvertex, n2):
                if blossombase[b] >= 0 and blossomparent[b] == -1:
                    if label[b] == _S:
                        dualvar[b] += delta
                    elif label[b] == _T:
                        dualvar[b] -= delta

            if deltatype == 1:
                break
            elif deltatype == 2:
                allowedge[deltaedge] = True
                i = eu[deltaedge]
                if label[inblossom[i]] == _UNLABELED:
                    i = ev[deltaedge]
                if qtail >= qcap:
                    return np.full(1, -2, dtype=np.int64)
                queue[qtail] = i
                qtail += 1
            elif deltatype == 3:
                allowedge[deltaedge] = True
                if qtail >= qcap:
                    return np.full(1, -2, dtype=np.int64)
                queue[qtail] = eu[deltaedge]
                qtail += 1
            else:
                unused_top, qtail = _expand_blossom(
                    deltablossom, False,
                    nvertex, endpoint, mate, label, labelend, inblossom,
                    blossomparent, blossombase, childs, childs_len, endps,
                    bestedge, bbe_len, dualvar, allowedge, unused, unused_top,
                    queue, qtail, leafbuf, leafstack, expstack,
                )
                if qtail < 0:
                    return np.full(1, -2, dtype=np.int64)

        if not augmented:
            break
        for b in range(nvertex, n2):
            if (
                blossombase[b] >= 0
                and blossomparent[b] == -1
                and label[b] == _S
                and dualvar[b] == 0
            ):
                unused_top, qtail = _expand_blossom(
                    b, True,
                    nvertex, endpoint, mate, label, labelend, inblossom,
                    blossomparent, blossombase, childs, childs_len, endps,
                    bestedge, bbe_len, dualvar, allowedge, unused, unused_top,
                    queue, qtail, leafbuf, leafstack, expstack,
                )
                if qtail < 0:
                    return np.full(1, -2, dtype=np.int64)

    if verify:
        ok = _verify_optimum(
            nvertex, nedge, eu, ev, ew, endpoint, mate, blossomparent,
            blossombase, childs_len, endps, dualvar,
        )
        if not ok:
            return np.full(1, -3, dtype=np.int64)

    out = np.full(nvertex, -1, dtype=np.int64)
    for v in range(nvertex):
        if mate[v] >= 0:
            out[v] = endpoint[mate[v]]
    return out


def solve_max_weight_matching(
    nvertex: int,
    edge_u: np.ndarray,
    edge_v: np.ndarray,
    edge_w: np.ndarray,
    verify: bool = True,
) -> np.ndarray:
    """Maximum-weight matching over a simple graph with integer weights.

    Args:
        nvertex: number of vertices (ids 0..nvertex-1).
        edge_u, edge_v, edge_w: parallel int64 arrays of edge endpoints
            and nonnegative weights; no self-loops or duplicate pairs.
        verify: check the optimality certificate (cheap; keep on).

    Returns:
        int64 array ``mate`` of length nvertex: mate[v] is the matched
        partner of v, or -1 if v is unmatched.
    """
    eu = np.ascontiguousarray(edge_u, dtype=np.int64)
    ev = np.ascontiguousarray(edge_v, dtype=np.int64)
    ew = np.ascontiguousarray(edge_w, dtype=np.int64)
    nedge = len(eu)
    if nedge == 0 or nvertex == 0:
        return np.full(nvertex, -1, dtype=np.int64)
    if (ew < 0).any():
        raise ValueError("edge weights must be nonnegative")

    # endpoint[2k] = u_k, endpoint[2k+1] = v_k.
    endpoint = np.empty(2 * nedge, dtype=np.int64)
    endpoint[0::2] = eu
    endpoint[1::2] = ev
    # CSR over directed endpoint slots: for vertex x, slots p whose
    # endpoint[p] is the far end of an edge incident to x. Slot p lives
    # in the list of endpoint[p ^ 1].
    owner = np.empty(2 * nedge, dtype=np.int64)
    owner[0::2] = ev
    owner[1::2] = eu
    nb_flat = np.argsort(owner, kind="stable")
    nb_start = np.zeros(nvertex + 1, dtype=np.int64)
    np.add.at(nb_start, owner + 1, 1)
    np.cumsum(nb_start, out=nb_start)

    out = _mwm_main(nvertex, eu, ev, ew, nb_start, nb_flat, endpoint, verify)
    if out[0] == -2:
        raise RuntimeError("matching work queue overflow (internal bound too small)")
    if out[0] == -3:
        raise RuntimeError("matching optimality certificate failed (kernel bug)")
    return out
