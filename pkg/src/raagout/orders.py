"""Relative versions of domination, adjacency and connectivity.

Fixing a collection G of special subgroups (given as vertex masks of their
defining subgraphs), the order u <=_G v refines domination by requiring every
member of G through u to contain v. Two vertices are G-adjacent when they are
adjacent or lie in a common member; gluing along co-membership turns ordinary
components into G-components. The G^v variants only glue along members
avoiding v, which is what partial conjugations with acting letter v care
about.

All functions take the member collection as an iterable of masks, so both the
preserved list and its normalized closure can be passed without conversion.
"""

from .graphs import bits


def leq_rel(graph, members, u, v):
	"""u <=_G v: domination plus no member separates u from v."""
	if not graph.dominates(u, v):
		return False
	for m in members:
		if m >> u & 1 and not m >> v & 1:
			return False
	return True


def blocked_masks(graph, members):
	"""blocked[u] = vertices v such that some member contains u but not v.

	With this table, u <=_G v iff u <= v and v is not blocked for u; scans
	over all pairs only touch the member list once.
	"""
	blocked = [0] * graph.n
	for m in members:
		outside = graph.full & ~m
		for u in bits(m):
			blocked[u] |= outside
	return blocked

def g_adjacent(graph, members, u, v):
	if graph.adj[u] >> v & 1:
		return True
	return any(m >> u & 1 and m >> v & 1 for m in members)


def g_components(graph, members, mask):
	"""G-components of the induced subgraph on mask, as masks.

	Co-membership in any member counts as adjacency, so each G-component is a
	union of ordinary components. Ordered by least vertex.
	"""
	glue = [0] * graph.n
	for m in members:
		piece = m & mask
		if piece.bit_count() >= 2:
			for v in bits(piece):
				glue[v] |= piece
	out = []
	rest = mask
	while rest:
		seed = rest & -rest
		comp = 0
		frontier = seed
		while frontier:
			comp |= frontier
			nxt = 0
			for v in bits(frontier):
				nxt |= (graph.adj[v] | glue[v]) & mask & ~comp
			frontier = nxt
		out.append(comp)
		rest &= ~comp
	return out


def gv_components(graph, members, v):
	"""G^v-components of the complement of st(v)."""
	s = graph.full & ~graph.star_masks[v]
	gv = [m for m in members if not m >> v & 1]
	return g_components(graph, gv, s)


def n_g(graph, members, theta):
	"""theta together with every vertex G-adjacent to it."""
	out = theta
	for t in bits(theta):
		out |= graph.adj[t]
	for m in members:
		if m & theta:
			out |= m
	return out
