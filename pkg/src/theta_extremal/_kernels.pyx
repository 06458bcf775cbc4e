# distutils: language = c++
"""Compiled search kernels; see ``_pykernels`` for the reference semantics."""

from libcpp.vector cimport vector

cdef enum:
    FIRST = 0
    COUNT = 1
    ALL = 2
    EXHAUSTED = 0
    STOPPED = 1
    BUDGET = 2


cdef class _ThetaSearch:
    cdef const int[:] indptr
    cdef const int[:] indices
    cdef int n
    cdef int nl
    cdef int mode
    cdef long long budget
    cdef public long long expansions
    cdef public long long count
    cdef public list found
    cdef bint stopped
    cdef bint aborted
    cdef vector[int] lengths
    cdef vector[char] on
    cdef vector[char] used
    cdef vector[int] stamp
    cdef int cur_stamp
    # per distinct half length a: flat halves, grouping by endpoint
    cdef vector[int] a_vals
    cdef vector[int] b_vals
    cdef vector[vector[int]] uh          # flat halves per a slot, stride a+1
    cdef vector[vector[int]] uh_order    # half indices grouped by endpoint
    cdef vector[int] g_start             # slot*n + m -> start in uh_order
    cdef vector[int] g_cnt               # slot*n + m -> group size
    cdef vector[vector[int]] vh          # flat halves per b slot, stride b+1
    cdef vector[int] ks
    cdef vector[vector[int]] by_len      # flat full paths per distinct k, stride k+1
    cdef vector[int] k_slot              # path index i -> slot in ks
    cdef vector[int] chosen_idx
    cdef int cur_u
    cdef int cur_v

    def __init__(self, const int[:] indptr, const int[:] indices, lengths, int mode, long long budget):
        self.indptr = indptr
        self.indices = indices
        self.n = indptr.shape[0] - 1
        self.mode = mode
        self.budget = budget
        self.expansions = 0
        self.count = 0
        self.found = []
        self.stopped = False
        self.aborted = False
        for k in lengths:
            self.lengths.push_back(k)
        self.nl = len(lengths)
        self.on.resize(self.n, 0)
        self.used.resize(self.n, 0)
        self.stamp.resize(self.n, 0)
        self.cur_stamp = 0
        ks = sorted(set(lengths))
        for k in ks:
            self.ks.push_back(k)
        for a in sorted({(k + 1) // 2 for k in ks}):
            self.a_vals.push_back(a)
        for b in sorted({k // 2 for k in ks}):
            self.b_vals.push_back(b)
        self.uh.resize(self.a_vals.size())
        self.uh_order.resize(self.a_vals.size())
        self.g_start.resize(self.a_vals.size() * self.n, 0)
        self.g_cnt.resize(self.a_vals.size() * self.n, 0)
        self.vh.resize(self.b_vals.size())
        self.by_len.resize(self.ks.size())
        for k in lengths:
            self.k_slot.push_back(ks.index(k))
        self.chosen_idx.resize(self.nl, 0)

    cdef inline bint tick(self) nogil:
        self.expansions += 1
        if self.expansions > self.budget:
            self.aborted = True
            return True
        return False

    cdef bint simple_paths(self, int start, int length, vector[int]& out):
        """Append all simple paths of ``length`` edges from start (flat). True on abort."""
        cdef vector[int] path
        cdef vector[int] ptr
        cdef int depth, v, w, t
        out.clear()
        if length == 0:
            out.push_back(start)
            return False
        path.resize(length + 1)
        ptr.resize(length + 1)
        path[0] = start
        self.on[start] = 1
        ptr[0] = self.indptr[start]
        depth = 0
        while depth >= 0:
            v = path[depth]
            if ptr[depth] < self.indptr[v + 1]:
                w = self.indices[ptr[depth]]
                ptr[depth] += 1
                if self.on[w]:
                    continue
                if self.tick():
                    for t in range(depth + 1):
                        self.on[path[t]] = 0
                    return True
                if depth + 1 == length:
                    for t in range(length):
                        out.push_back(path[t])
                    out.push_back(w)
                    continue
                depth += 1
                path[depth] = w
                self.on[w] = 1
                ptr[depth] = self.indptr[w]
            else:
                self.on[v] = 0
                depth -= 1
        return False

    cdef bint build_uhalves(self, int u):
        cdef size_t slot, h, nh
        cdef int a, stride, m, base, pos
        cdef vector[int] touched
        for slot in range(self.a_vals.size()):
            a = self.a_vals[slot]
            stride = a + 1
            if self.simple_paths(u, a, self.uh[slot]):
                return True
            nh = self.uh[slot].size() // stride
            base = slot * self.n
            touched.clear()
            for h in range(nh):
                m = self.uh[slot][h * stride + a]
                if self.g_cnt[base + m] == 0:
                    touched.push_back(m)
                self.g_cnt[base + m] += 1
            pos = 0
            for h in range(touched.size()):
                m = touched[h]
                self.g_start[base + m] = pos
                pos += self.g_cnt[base + m]
                self.g_cnt[base + m] = 0
            self.uh_order[slot].resize(nh)
            for h in range(nh):
                m = self.uh[slot][h * stride + a]
                self.uh_order[slot][self.g_start[base + m] + self.g_cnt[base + m]] = h
                self.g_cnt[base + m] += 1
        return False

    cdef void clear_uhalves(self):
        cdef size_t slot, h, nh
        cdef int a, stride, m
        for slot in range(self.a_vals.size()):
            a = self.a_vals[slot]
            stride = a + 1
            nh = self.uh[slot].size() // stride
            for h in range(nh):
                m = self.uh[slot][h * stride + a]
                self.g_cnt[slot * self.n + m] = 0

    cdef int slot_of(self, vector[int]& vals, int x):
        cdef size_t i
        for i in range(vals.size()):
            if vals[i] == x:
                return i
        return -1

    cdef bint join(self, int ki, bint* empty):
        """Build all u-v paths of length ks[ki]. True on abort."""
        cdef int k = self.ks[ki]
        cdef int a = (k + 1) // 2
        cdef int b = k // 2
        cdef int aslot = self.slot_of(self.a_vals, a)
        cdef int bslot = self.slot_of(self.b_vals, b)
        cdef int bstride = b + 1
        cdef int astride = a + 1
        cdef size_t nvh = self.vh[bslot].size() // bstride
        cdef size_t hv, g, gs, gc, hu
        cdef int m, t, x
        cdef bint ok
        cdef vector[int]* res = &self.by_len[ki]
        res.clear()
        for hv in range(nvh):
            m = self.vh[bslot][hv * bstride + b]
            gc = self.g_cnt[aslot * self.n + m]
            if gc == 0:
                continue
            gs = self.g_start[aslot * self.n + m]
            for g in range(gs, gs + gc):
                hu = self.uh_order[aslot][g]
                if self.tick():
                    return True
                self.cur_stamp += 1
                ok = True
                for t in range(astride):
                    x = self.uh[aslot][hu * astride + t]
                    if self.stamp[x] == self.cur_stamp:
                        ok = False
                        break
                    self.stamp[x] = self.cur_stamp
                if ok:
                    for t in range(b - 1, -1, -1):
                        x = self.vh[bslot][hv * bstride + t]
                        if self.stamp[x] == self.cur_stamp:
                            ok = False
                            break
                        self.stamp[x] = self.cur_stamp
                if ok:
                    for t in range(astride):
                        res.push_back(self.uh[aslot][hu * astride + t])
                    for t in range(b - 1, -1, -1):
                        res.push_back(self.vh[bslot][hv * bstride + t])
        empty[0] = res.size() == 0
        return False

    cdef bint backtrack(self, int i):
        """True when the search must stop (budget or first-found)."""
        cdef int k, slot, stride, start, t, x
        cdef size_t j, ncand
        cdef bint clash
        if i == self.nl:
            self.count += 1
            if self.mode != COUNT:
                self.found.append(self.current_embedding())
            if self.mode == FIRST:
                self.stopped = True
                return True
            return False
        k = self.lengths[i]
        slot = self.k_slot[i]
        stride = k + 1
        ncand = self.by_len[slot].size() // stride
        start = 0
        if i > 0 and self.lengths[i - 1] == k:
            start = self.chosen_idx[i - 1] + 1
        for j in range(start, ncand):
            if self.tick():
                return True
            clash = False
            for t in range(1, k):
                if self.used[self.by_len[slot][j * stride + t]]:
                    clash = True
                    break
            if clash:
                continue
            for t in range(1, k):
                self.used[self.by_len[slot][j * stride + t]] = 1
            self.chosen_idx[i] = j
            if self.backtrack(i + 1):
                for t in range(1, k):
                    self.used[self.by_len[slot][j * stride + t]] = 0
                return True
            for t in range(1, k):
                self.used[self.by_len[slot][j * stride + t]] = 0
        return False

    cdef tuple current_embedding(self):
        cdef int i, k, slot, stride, t
        cdef size_t j
        paths = []
        for i in range(self.nl):
            k = self.lengths[i]
            slot = self.k_slot[i]
            stride = k + 1
            j = self.chosen_idx[i]
            paths.append(tuple([self.by_len[slot][j * stride + t] for t in range(stride)]))
        return (self.cur_u, self.cur_v, tuple(paths))

    def run(self):
        cdef int u, v, t
        cdef size_t e, nends, bs
        cdef int k1 = self.lengths[0]
        cdef vector[int] first
        cdef vector[int] ends
        cdef size_t ki
        cdef bint empty
        for u in range(self.n):
            if self.simple_paths(u, k1, first):
                return BUDGET
            ends.clear()
            nends = first.size() // (k1 + 1)
            self.cur_stamp += 1
            for e in range(nends):
                v = first[e * (k1 + 1) + k1]
                if v > u and self.stamp[v] != self.cur_stamp:
                    self.stamp[v] = self.cur_stamp
                    ends.push_back(v)
            if ends.size() == 0:
                continue
            _sort_ints(ends)
            if self.build_uhalves(u):
                return BUDGET
            self.cur_u = u
            for e in range(ends.size()):
                v = ends[e]
                for bs in range(self.b_vals.size()):
                    if self.simple_paths(v, self.b_vals[bs], self.vh[bs]):
                        return BUDGET
                empty = False
                for ki in range(self.ks.size()):
                    if self.join(ki, &empty):
                        return BUDGET
                    if empty:
                        break
                if empty:
                    continue
                self.cur_v = v
                if self.backtrack(0):
                    return BUDGET if self.aborted else STOPPED
            self.clear_uhalves()
        return EXHAUSTED


cdef void _sort_ints(vector[int]& xs):
    # insertion sort; endpoint lists are short
    cdef size_t i, j
    cdef int x
    for i in range(1, xs.size()):
        x = xs[i]
        j = i
        while j > 0 and xs[j - 1] > x:
            xs[j] = xs[j - 1]
            j -= 1
        xs[j] = x


def theta_search(const int[:] indptr, const int[:] indices, lengths, int mode, long long budget):
    s = _ThetaSearch(indptr, indices, lengths, mode, budget)
    reason = s.run()
    return reason, s.expansions, s.count, s.found


def cycle_search(const int[:] indptr, const int[:] indices, int length):
    cdef int n = indptr.shape[0] - 1
    cdef vector[int] path
    cdef vector[int] ptr
    cdef vector[char] on
    cdef vector[char] adj_s
    cdef int s, depth, v, w, t
    out = []
    path.resize(length)
    ptr.resize(length)
    on.resize(n, 0)
    adj_s.resize(n, 0)
    for s in range(n):
        for t in range(indptr[s], indptr[s + 1]):
            adj_s[indices[t]] = 1
        path[0] = s
        on[s] = 1
        ptr[0] = indptr[s]
        depth = 0
        while depth >= 0:
            v = path[depth]
            if depth == length - 1:
                if adj_s[v] and path[1] < path[depth]:
                    out.append(tuple([path[t] for t in range(length)]))
                on[v] = 0
                depth -= 1
                continue
            if ptr[depth] < indptr[v + 1]:
                w = indices[ptr[depth]]
                ptr[depth] += 1
                if w > s and not on[w]:
                    depth += 1
                    path[depth] = w
                    on[w] = 1
                    ptr[depth] = indptr[w]
            else:
                on[v] = 0
                depth -= 1
        for t in range(indptr[s], indptr[s + 1]):
            adj_s[indices[t]] = 0
    return out

