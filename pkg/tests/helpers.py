"""Shared test helpers: brute-force word oracles and small-graph enumeration.

Everything here is deliberately independent of the package's own algorithms:
closures of rewriting moves and exhaustive searches, usable as ground truth
for the fast implementations.
"""

import itertools
from collections import deque
from functools import lru_cache

from raagout.graphs import DefiningGraph


def word_closure(word, graph, cap=200000):
	"""All words reachable by commuting swaps and free cancellations."""
	start = tuple(word)
	seen = {start}
	dq = deque([start])
	adj = graph.adj
	while dq:
		w = dq.popleft()
		for i in range(len(w) - 1):
			a, b = w[i], w[i + 1]
			va, vb = a >> 1, b >> 1
			cands = []
			if va != vb and adj[va] >> vb & 1:
				cands.append(w[:i] + (b, a) + w[i + 2 :])
			if a == b ^ 1:
				cands.append(w[:i] + w[i + 2 :])
			for nw in cands:
				if nw not in seen:
					if len(seen) >= cap:
						raise RuntimeError("word closure too large")
					seen.add(nw)
					dq.append(nw)
	return seen


def brute_equal(w1, w2, graph):
	return bool(word_closure(w1, graph) & word_closure(w2, graph))


def brute_reduced_set(word, graph):
	cl = word_closure(word, graph)
	m = min(len(w) for w in cl)
	return {w for w in cl if len(w) == m}


def brute_canonical(word, graph):
	"""Lexicographically least reduced representative, by exhaustion."""
	return min(brute_reduced_set(word, graph))


def brute_cyc_core_length(word, graph, conj_letters):
	"""Minimal length among conjugates g w g^-1 with g over short words."""
	best = None
	for k in range(3):
		for g in itertools.product(conj_letters, repeat=k):
			w2 = tuple(g) + tuple(word) + tuple(x ^ 1 for x in reversed(g))
			m = min(len(u) for u in word_closure(w2, graph))
			if best is None or m < best:
				best = m
	return best


def words_over(graph, mask, maxlen):
	"""All words (not only reduced) with letters from the given vertex mask."""
	letters = []
	for v in range(graph.n):
		if mask >> v & 1:
			letters.extend((2 * v, 2 * v + 1))
	out = [()]
	frontier = [()]
	for _ in range(maxlen):
		nxt = []
		for w in frontier:
			for lt in letters:
				nxt.append(w + (lt,))
		out.extend(nxt)
		frontier = nxt
	return out


@lru_cache(maxsize=None)
def connected_graphs_upto_iso(n):
	"""Connected graphs on n labelled vertices, one per isomorphism class.

	Returned as tuples of edge pairs (i, j), i < j.
	"""
	pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
	perms = list(itertools.permutations(range(n)))
	seen = set()
	out = []
	for picks in itertools.product((0, 1), repeat=len(pairs)):
		edges = frozenset(p for p, take in zip(pairs, picks) if take)
		canon = min(
			frozenset((min(pm[i], pm[j]), max(pm[i], pm[j])) for i, j in edges)
			for pm in perms
		)
		if canon in seen:
			continue
		seen.add(canon)
		g = graph_from_edges(n, sorted(edges))
		if g.is_connected():
			out.append(tuple(sorted(edges)))
	return tuple(out)


def graph_from_edges(n, edges):
	names = [chr(ord("a") + i) for i in range(n)]
	return DefiningGraph(names, [[names[i], names[j]] for i, j in edges])


def random_peripheral(graph, rng, max_members=3):
	"""A random (G, H) pair of proper special subgroups, H inside G."""
	full = graph.full
	masks = []
	for _ in range(rng.randrange(max_members + 1)):
		m = rng.randrange(1, full)  # nonempty proper
		masks.append(m)
	g_list = masks
	h_list = [m for m in masks if rng.random() < 0.5]
	return g_list, h_list
