import itertools

from raagout.graphs import DefiningGraph, mask_of
from raagout import orders

from helpers import connected_graphs_upto_iso, graph_from_edges


def path3():
	return DefiningGraph(["a", "b", "c"], [["a", "b"], ["b", "c"]])


def edgeless(names):
	return DefiningGraph(list(names), [])


def test_leq_rel_plain_is_domination():
	for edges in connected_graphs_upto_iso(4):
		g = graph_from_edges(4, edges)
		for u in range(g.n):
			for v in range(g.n):
				assert orders.leq_rel(g, [], u, v) == g.dominates(u, v)


def test_leq_rel_blocking():
	g = path3()
	a, b, c = range(3)
	assert g.dominates(a, c)
	# a member through a that misses c forbids a <= c
	assert not orders.leq_rel(g, [mask_of([a])], a, c)
	assert not orders.leq_rel(g, [mask_of([a, b])], a, c)
	# members through both, or missing a, do not interfere
	assert orders.leq_rel(g, [mask_of([a, c])], a, c)
	assert orders.leq_rel(g, [mask_of([b])], a, c)


def test_blocked_masks_agrees_with_leq_rel():
	g = edgeless("pqr")
	memberings = [
		[],
		[0b011],
		[0b011, 0b101],
		[0b001, 0b010, 0b100],
		[0b111],
	]
	for members in memberings:
		blocked = orders.blocked_masks(g, members)
		for u in range(g.n):
			for v in range(g.n):
				expect = g.dominates(u, v) and not blocked[u] >> v & 1
				assert orders.leq_rel(g, members, u, v) == expect


def test_g_adjacent():
	g = path3()
	a, b, c = range(3)
	assert orders.g_adjacent(g, [], a, b)
	assert not orders.g_adjacent(g, [], a, c)
	assert orders.g_adjacent(g, [mask_of([a, c])], a, c)
	# membership only counts when shared
	assert not orders.g_adjacent(g, [mask_of([a]), mask_of([c])], a, c)


def test_g_components_gluing():
	g = edgeless("abc")
	a, b, c = range(3)
	assert orders.g_components(g, [], g.full) == [1 << a, 1 << b, 1 << c]
	assert orders.g_components(g, [mask_of([a, b])], g.full) == [
		mask_of([a, b]),
		1 << c,
	]
	assert orders.g_components(g, [g.full], g.full) == [g.full]


def test_g_components_restricted_mask():
	g = edgeless("abcd")
	a, b, c, d = range(4)
	# only the part of a member inside the mask glues, and a single
	# surviving vertex glues nothing
	m = mask_of([a, b, c])
	assert orders.g_components(g, [m], mask_of([a, b, d])) == [
		mask_of([a, b]),
		1 << d,
	]
	assert orders.g_components(g, [mask_of([a, b])], mask_of([a, d])) == [
		1 << a,
		1 << d,
	]


def test_g_components_union_of_plain_components():
	# every G-component splits as a union of ordinary ones
	for edges in connected_graphs_upto_iso(4):
		g = graph_from_edges(4, edges)
		masks = [0, g.full, g.adj[0], g.full & ~g.star_masks[0]]
		for members in itertools.combinations([g.adj[v] for v in range(g.n)], 2):
			for mask in masks:
				plain = g.components(mask)
				for comp in orders.g_components(g, members, mask):
					covered = 0
					for p in plain:
						if p & comp:
							assert p & ~comp == 0
							covered |= p
					assert covered == comp


def test_gv_components_drop_members_through_v():
	g = DefiningGraph(
		["c0", "a1", "b1", "c1"],
		[["c0", "a1"], ["c0", "b1"], ["a1", "c1"], ["b1", "c1"]],
	)
	c0 = 0
	c1 = 3
	# st(c1) leaves only c0; a member through c1 must not glue anything
	assert orders.gv_components(g, [g.mask(["c1", "c0"])], c1) == [1 << c0]


def test_gv_components_glue_across_star():
	g = DefiningGraph(
		["a", "b", "c", "d", "e"],
		[["a", "b"], ["b", "c"], ["c", "d"], ["d", "e"]],
	)
	a, b, c, d, e = range(5)
	assert orders.gv_components(g, [], c) == [1 << a, 1 << e]
	assert orders.gv_components(g, [g.mask(["a", "e"])], c) == [mask_of([a, e])]


def test_n_g():
	g = DefiningGraph(["w", "x", "y", "z"], [["w", "x"], ["x", "y"], ["y", "z"]])
	w, x, y, z = range(4)
	assert orders.n_g(g, [], 1 << w) == mask_of([w, x])
	assert orders.n_g(g, [g.mask(["w", "z"])], 1 << w) == mask_of([w, x, z])
	# untouched members contribute nothing
	assert orders.n_g(g, [g.mask(["y", "z"])], 1 << w) == mask_of([w, x])
