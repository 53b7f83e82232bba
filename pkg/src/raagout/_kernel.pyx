# cython: boundscheck=False, wraparound=False, language_level=3
"""Compiled word kernel. Mirrors _kernel_py exactly; see that module for the
algorithms. Only usable for graphs with at most 64 vertices (adjacency masks
are packed into one machine word); words.py falls back to the pure kernel
otherwise.
"""

from libc.stdlib cimport free, malloc


cdef inline Py_ssize_t _load_adj(object adj, unsigned long long **am) except -1:
	cdef Py_ssize_t n = len(adj)
	am[0] = <unsigned long long *> malloc(n * sizeof(unsigned long long))
	if am[0] == NULL:
		raise MemoryError()
	cdef Py_ssize_t i
	for i in range(n):
		am[0][i] = adj[i]
	return n


cdef inline Py_ssize_t _push(int *out, Py_ssize_t olen, int lt, unsigned long long *am):
	"""Append lt to the reduced stack, cancelling if possible. Returns new length."""
	cdef int v = lt >> 1
	cdef Py_ssize_t i = olen - 1
	cdef int m, u
	while i >= 0:
		m = out[i]
		u = m >> 1
		if u == v:
			if m == (lt ^ 1):
				while i < olen - 1:
					out[i] = out[i + 1]
					i += 1
				return olen - 1
			break
		if not (am[u] >> v) & 1:
			break
		i -= 1
	out[olen] = lt
	return olen + 1


def reduce_word(letters, adj):
	cdef unsigned long long *am
	_load_adj(adj, &am)
	cdef Py_ssize_t L = len(letters)
	cdef int *out = <int *> malloc((L + 1) * sizeof(int))
	if out == NULL:
		free(am)
		raise MemoryError()
	cdef Py_ssize_t olen = 0
	cdef int lt
	try:
		for lt in letters:
			olen = _push(out, olen, lt, am)
		return tuple([out[i] for i in range(olen)])
	finally:
		free(out)
		free(am)


def apply_map(letters, images, adj):
	cdef unsigned long long *am
	_load_adj(adj, &am)
	cdef Py_ssize_t total = 0
	cdef int lt, m
	for lt in letters:
		total += len(images[lt])
	cdef int *out = <int *> malloc((total + 1) * sizeof(int))
	if out == NULL:
		free(am)
		raise MemoryError()
	cdef Py_ssize_t olen = 0
	try:
		for lt in letters:
			for m in images[lt]:
				olen = _push(out, olen, m, am)
		return tuple([out[i] for i in range(olen)])
	finally:
		free(out)
		free(am)


def canonical_word(letters, adj):
	reduced = reduce_word(letters, adj)
	cdef unsigned long long *am
	_load_adj(adj, &am)
	cdef Py_ssize_t L = len(reduced)
	cdef int *rem = <int *> malloc((L + 1) * sizeof(int))
	if rem == NULL:
		free(am)
		raise MemoryError()
	cdef Py_ssize_t i
	for i in range(L):
		rem[i] = reduced[i]
	out = []
	cdef unsigned long long seen
	cdef int best, lt, v
	cdef Py_ssize_t best_pos, p
	try:
		while L > 0:
			seen = 0
			best = -1
			best_pos = -1
			for p in range(L):
				lt = rem[p]
				v = lt >> 1
				if (seen & ~am[v]) == 0 and (best < 0 or lt < best):
					best = lt
					best_pos = p
				seen |= (<unsigned long long> 1) << v
			out.append(best)
			for p in range(best_pos, L - 1):
				rem[p] = rem[p + 1]
			L -= 1
		return tuple(out)
	finally:
		free(rem)
		free(am)


def cyc_reduce_word(letters, adj):
	core = list(reduce_word(letters, adj))
	conj = []
	cdef unsigned long long *am
	_load_adj(adj, &am)
	cdef Py_ssize_t L, p, q, hit_p, hit_q
	cdef unsigned long long seen
	cdef int lt, v, want, found
	try:
		while True:
			L = len(core)
			front = []
			seen = 0
			for p in range(L):
				lt = core[p]
				v = lt >> 1
				if (seen & ~am[v]) == 0:
					front.append((p, lt))
				seen |= (<unsigned long long> 1) << v
			back = []
			seen = 0
			for q in range(L - 1, -1, -1):
				lt = core[q]
				v = lt >> 1
				if (seen & ~am[v]) == 0:
					back.append((q, lt))
				seen |= (<unsigned long long> 1) << v
			found = 0
			for p, lt in front:
				want = lt ^ 1
				for q, m in back:
					if m == want and q != p:
						hit_p = p
						hit_q = q
						found = 1
						break
				if found:
					break
			if not found:
				return tuple(core), tuple(conj)
			conj.append(core[hit_p])
			core = [core[i] for i in range(L) if i != hit_p and i != hit_q]
			core = list(reduce_word(core, adj))
	finally:
		free(am)


def strip_front(letters, smask, adj):
	cdef unsigned long long *am
	_load_adj(adj, &am)
	cdef unsigned long long sm = smask
	rem = list(letters)
	prefix = []
	cdef unsigned long long seen
	cdef int lt, v, changed
	cdef Py_ssize_t p
	try:
		changed = 1
		while changed:
			changed = 0
			seen = 0
			for p in range(len(rem)):
				lt = rem[p]
				v = lt >> 1
				if (seen & ~am[v]) == 0 and (sm >> v) & 1:
					prefix.append(lt)
					del rem[p]
					changed = 1
					break
				seen |= (<unsigned long long> 1) << v
		return tuple(prefix), tuple(rem)
	finally:
		free(am)
