# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled table kernels; see ``_pykernels`` for the reference versions."""

import numpy as np
cimport numpy as cnp

cnp.import_array()

ctypedef cnp.int32_t idx_t


def prepare(table):
    return np.ascontiguousarray(table, dtype=np.int32)


def prepare_vector(vec):
    return np.ascontiguousarray(vec, dtype=np.int32)


cdef int _closure(const idx_t[:, ::1] t, int identity, const idx_t[::1] gens,
                  signed char[::1] seen, idx_t[::1] out) noexcept nogil:
    cdef Py_ssize_t i = 0, j
    cdef int size = 1, y, ng = gens.shape[0]
    seen[:] = 0
    seen[identity] = 1
    out[0] = identity
    while i < size:
        for j in range(ng):
            y = t[out[i], gens[j]]
            if not seen[y]:
                seen[y] = 1
                out[size] = y
                size += 1
        i += 1
    return size


def closure(table, int identity, gens):
    cdef const idx_t[:, ::1] t = table
    cdef Py_ssize_t n = t.shape[0]
    seen = np.zeros(n, dtype=np.int8)
    out = np.empty(n, dtype=np.int32)
    g = np.ascontiguousarray(np.asarray(list(gens), dtype=np.int32))
    cdef int size = _closure(t, identity, g, seen, out)
    return sorted(int(x) for x in out[:size])


def closure_size(table, int identity, gens):
    cdef const idx_t[:, ::1] t = table
    seen = np.zeros(t.shape[0], dtype=np.int8)
    out = np.empty(t.shape[0], dtype=np.int32)
    g = np.ascontiguousarray(np.asarray(list(gens), dtype=np.int32))
    return _closure(t, identity, g, seen, out)


def element_orders(table, int identity):
    cdef const idx_t[:, ::1] t = table
    cdef Py_ssize_t n = t.shape[0], g
    cdef int k, x
    orders = np.zeros(n, dtype=np.int32)
    cdef idx_t[::1] o = orders
    for g in range(n):
        k = 1
        x = <int>g
        while x != identity:
            x = t[x, g]
            k += 1
        o[g] = k
    return [int(v) for v in orders]


def conjugacy_labels(table, inv, gens):
    cdef const idx_t[:, ::1] t = table
    cdef idx_t[::1] iv = np.ascontiguousarray(inv, dtype=np.int32)
    cdef idx_t[::1] gs = np.ascontiguousarray(np.asarray(list(gens), dtype=np.int32))
    cdef Py_ssize_t n = t.shape[0], start, j
    cdef int top, x, y, g
    label_arr = np.full(n, -1, dtype=np.int32)
    stack_arr = np.empty(n, dtype=np.int32)
    cdef idx_t[::1] label = label_arr
    cdef idx_t[::1] stack = stack_arr
    for start in range(n):
        if label[start] >= 0:
            continue
        label[start] = start
        stack[0] = start
        top = 1
        while top > 0:
            top -= 1
            x = stack[top]
            for j in range(gs.shape[0]):
                g = gs[j]
                y = t[t[g, x], iv[g]]
                if label[y] < 0:
                    label[y] = start
                    stack[top] = y
                    top += 1
    return [int(v) for v in label_arr]


def normalizer_elements(table, inv, member, hgens):
    cdef const idx_t[:, ::1] t = table
    cdef idx_t[::1] iv = np.ascontiguousarray(inv, dtype=np.int32)
    cdef idx_t[::1] mem = np.ascontiguousarray(member, dtype=np.int32)
    cdef idx_t[::1] hs = np.ascontiguousarray(np.asarray(list(hgens), dtype=np.int32))
    cdef Py_ssize_t n = t.shape[0], g, j
    cdef bint ok
    out = []
    for g in range(n):
        ok = True
        for j in range(hs.shape[0]):
            if not mem[t[t[g, hs[j]], iv[g]]]:
                ok = False
                break
        if ok:
            out.append(int(g))
    return out


def centralizer_elements(table, elems):
    cdef const idx_t[:, ::1] t = table
    cdef idx_t[::1] es = np.ascontiguousarray(np.asarray(list(elems), dtype=np.int32))
    cdef Py_ssize_t n = t.shape[0], g, j
    cdef bint ok
    out = []
    for g in range(n):
        ok = True
        for j in range(es.shape[0]):
            if t[g, es[j]] != t[es[j], g]:
                ok = False
                break
        if ok:
            out.append(int(g))
    return out


def is_associative(table):
    cdef const idx_t[:, ::1] t = table
    cdef Py_ssize_t n = t.shape[0], a, b, c
    cdef int ab
    for a in range(n):
        for b in range(n):
            ab = t[a, b]
            for c in range(n):
                if t[ab, c] != t[a, t[b, c]]:
                    return False
    return True


cdef class _Search:
    cdef const idx_t[:, ::1] t
    cdef idx_t[::1] inv
    cdef idx_t[::1] orders
    cdef int identity, n, r, s, limit, shard, nshards
    cdef bint has_cycle, stopped
    cdef idx_t[::1] periods
    cdef idx_t[::1] links
    cdef idx_t[::1] conformal
    cdef idx_t[::1] reflections
    cdef idx_t[::1] images
    cdef signed char[::1] seen
    cdef idx_t[::1] scratch
    cdef list results
    cdef list xcands

    cdef bint surjective(self):
        return _closure(self.t, self.identity, self.images, self.seen,
                        self.scratch) == self.n

    cdef void emit(self):
        self.results.append(tuple([int(v) for v in self.images]))
        if len(self.results) >= self.limit:
            self.stopped = True

    cdef void rec_c(self, int j, int e):
        cdef int pos = self.r + 1 + j
        cdef Py_ssize_t a, start = 0, step = 1
        cdef int c, prev = 0, want = 0, c0
        if j == 0:
            if self.r == 0 and self.nshards > 1:
                start = self.shard
                step = self.nshards
        else:
            prev = self.images[pos - 1]
            want = self.links[j - 1]
        a = start
        while a < self.reflections.shape[0]:
            c = self.reflections[a]
            a += step
            if j > 0 and self.orders[self.t[prev, c]] != want:
                continue
            self.images[pos] = c
            if j == self.s:
                c0 = self.images[self.r + 1]
                if self.t[self.t[self.t[c0, self.inv[e]], c], e] != self.identity:
                    continue
                if self.surjective():
                    self.emit()
                    if self.stopped:
                        return
            else:
                self.rec_c(j + 1, e)
                if self.stopped:
                    return

    cdef void rec_x(self, int i, int prod):
        cdef Py_ssize_t a, start = 0, step = 1
        cdef int e, x
        cdef idx_t[::1] cands
        if i == self.r:
            if self.has_cycle:
                for a in range(self.conformal.shape[0]):
                    e = self.conformal[a]
                    if self.t[prod, e] != self.identity:
                        continue
                    self.images[self.r] = e
                    self.rec_c(0, e)
                    if self.stopped:
                        return
            elif prod == self.identity and self.surjective():
                self.emit()
            return
        cands = self.xcands[i]
        if i == 0 and self.nshards > 1:
            start = self.shard
            step = self.nshards
        a = start
        while a < cands.shape[0]:
            x = cands[a]
            a += step
            self.images[i] = x
            self.rec_x(i + 1, self.t[prod, x])
            if self.stopped:
                return


def search_epis(table, inv, orders, w, int identity, periods, links, bint has_cycle,
                int limit, int shard=0, int nshards=1):
    cdef _Search st = _Search()
    orders_arr = np.ascontiguousarray(orders, dtype=np.int32)
    w_arr = np.asarray(w)
    st.t = table
    st.inv = np.ascontiguousarray(inv, dtype=np.int32)
    st.orders = orders_arr
    st.identity = identity
    st.n = st.t.shape[0]
    st.r = len(periods)
    st.s = len(links)
    st.limit = limit
    st.shard = shard
    st.nshards = nshards
    st.has_cycle = has_cycle
    st.stopped = False
    st.periods = np.ascontiguousarray(list(periods) or [0], dtype=np.int32)
    st.links = np.ascontiguousarray(list(links) or [0], dtype=np.int32)
    conf = np.flatnonzero(w_arr == 1).astype(np.int32)
    refl = np.flatnonzero((w_arr == -1) & (orders_arr == 2)).astype(np.int32)
    st.conformal = np.ascontiguousarray(conf)
    st.reflections = np.ascontiguousarray(refl)
    st.xcands = [np.ascontiguousarray(conf[orders_arr[conf] == m], dtype=np.int32)
                 for m in periods]
    size = st.r + (2 + st.s if has_cycle else 0)
    st.images = np.zeros(max(size, 1), dtype=np.int32)[:size] if size else np.zeros(0, dtype=np.int32)
    st.seen = np.zeros(st.n, dtype=np.int8)
    st.scratch = np.empty(st.n, dtype=np.int32)
    st.results = []
    st.rec_x(0, identity)
    return st.results, not st.stopped
