"""Pure python word kernel.

Letters are encoded as ints: 2*v for the generator of vertex v, 2*v+1 for its
inverse, so xor with 1 inverts a letter and integer order on letter codes is
the (vertex, sign) order used for canonical forms. adj is the defining
graph's tuple of neighbour masks.

A word is reduced when no generator/inverse pair can be brought together by
swapping adjacent commuting letters. The left-greedy stack pass below removes
every such pair in one sweep. Canonical forms are computed greedily: among
the letters that can be commuted to the front, repeatedly extract the one
with the least code. Since the reduced words representing a group element are
exactly the linearizations of a labelled partial order, the greedy choice
yields the lexicographically least reduced word.

The compiled twin in _kernel.pyx must match this module exactly; the test
suite runs both against each other.
"""


def push_letter(out, lt, adj):
	"""Append letter lt to the reduced stack out, cancelling if possible."""
	v = lt >> 1
	i = len(out) - 1
	while i >= 0:
		m = out[i]
		u = m >> 1
		if u == v:
			if m == lt ^ 1:
				del out[i]
				return
			break
		if not adj[u] >> v & 1:
			break
		i -= 1
	out.append(lt)


def reduce_word(letters, adj):
	out = []
	for lt in letters:
		push_letter(out, lt, adj)
	return tuple(out)


def apply_map(letters, images, adj):
	"""Reduced image of a word under a letter substitution.

	images is indexed by letter code and holds words (anything iterable of
	letter codes). The substituted word is reduced on the fly, never
	materialized.
	"""
	out = []
	for lt in letters:
		for m in images[lt]:
			push_letter(out, m, adj)
	return tuple(out)


def canonical_word(letters, adj):
	"""Lexicographically least reduced word equal to the input in the group."""
	rem = list(reduce_word(letters, adj))
	out = []
	while rem:
		seen = 0
		best = -1
		best_pos = -1
		for p, lt in enumerate(rem):
			v = lt >> 1
			if seen & ~adj[v] == 0 and (best < 0 or lt < best):
				best = lt
				best_pos = p
			seen |= 1 << v
		out.append(best)
		del rem[best_pos]
	return tuple(out)


def cyc_reduce_word(letters, adj):
	"""Cyclically reduced core and conjugator.

	Returns (core, conj) with the input word equal to conj * core * conj^-1
	and core of minimal length in the conjugacy class.
	"""
	core = list(reduce_word(letters, adj))
	conj = []
	while True:
		# letters movable to the front, and to the back
		front = []
		seen = 0
		for p, lt in enumerate(core):
			v = lt >> 1
			if seen & ~adj[v] == 0:
				front.append((p, lt))
			seen |= 1 << v
		back = []
		seen = 0
		for q in range(len(core) - 1, -1, -1):
			lt = core[q]
			v = lt >> 1
			if seen & ~adj[v] == 0:
				back.append((q, lt))
			seen |= 1 << v
		hit = None
		for p, lt in front:
			want = lt ^ 1
			for q, m in back:
				if m == want and q != p:
					hit = (p, q, lt)
					break
			if hit:
				break
		if hit is None:
			return tuple(core), tuple(conj)
		p, q, lt = hit
		conj.append(lt)
		core = [core[i] for i in range(len(core)) if i != p and i != q]
		core = list(reduce_word(core, adj))


def strip_front(letters, smask, adj):
	"""Greedily move letters with vertex in smask to the front and split there.

	Returns (prefix, remainder): prefix has support inside smask, the
	original word equals prefix * remainder, and no further smask-letter of
	the remainder can be commuted to its front.
	"""
	rem = list(letters)
	prefix = []
	changed = True
	while changed:
		changed = False
		seen = 0
		for p, lt in enumerate(rem):
			v = lt >> 1
			if seen & ~adj[v] == 0 and smask >> v & 1:
				prefix.append(lt)
				del rem[p]
				changed = True
				break
			seen |= 1 << v
	return tuple(prefix), tuple(rem)
