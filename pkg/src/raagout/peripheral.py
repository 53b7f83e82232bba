"""Peripheral structures on a defining graph.

A peripheral pair (G, H) fixes two collections of proper special subgroups:
the members of G must be preserved up to conjugacy, the members of H must be
acted on as inner automorphisms of the ambient group. Everything downstream
assumes the pair is normalized, meaning G absorbs H together with enough of
its subsets that the generator membership criteria become the clean order and
component conditions of the orders module. Saturation then enlarges G to
contain every invariant proper special subgroup, which is the hypothesis
under which restriction images are again relative groups; when full
saturation is too expensive, fast_periphery produces the smaller collection
that suffices for a single restriction target.
"""

from .errors import CapabilityError, DomainError
from .graphs import DefiningGraph, bits, compress_mask
from . import orders

SATURATE_CAP = 20


def _member_key(mask):
	return (mask.bit_count(), mask)


class PeripheralPair:
	"""The pair (G, H), members stored as vertex masks.

	normalized is None, "weak" or "full"; operations with a normalization
	precondition call require_normalized rather than silently closing up.
	"""

	__slots__ = ("graph", "g_members", "h_members", "normalized", "saturated")

	def __init__(self, graph, g_members=(), h_members=(), normalized=None, saturated=False):
		self.graph = graph
		self.g_members = self._clean(g_members)
		self.h_members = self._clean(h_members)
		self.normalized = normalized
		self.saturated = saturated

	def _clean(self, members):
		out = set()
		for m in members:
			if m == self.graph.full:
				raise DomainError("peripheral members must be proper subgraphs")
			if m:
				out.add(m)
		return tuple(sorted(out, key=_member_key))

	@classmethod
	def from_json_obj(cls, graph, obj):
		g = [graph.mask(names) for names in obj.get("G", [])]
		h = [graph.mask(names) for names in obj.get("H", [])]
		return cls(graph, g, h)

	@classmethod
	def load(cls, graph, path):
		import json

		with open(path) as fp:
			return cls.from_json_obj(graph, json.load(fp))

	def to_json_obj(self):
		return {
			"G": [self.graph.names(m) for m in self.g_members],
			"H": [self.graph.names(m) for m in self.h_members],
		}

	def normalize(self, mode="weak"):
		"""Fold H into G so the membership criteria apply.

		Weak mode adds each H-member and its one-vertex-deleted subsets;
		full mode adds every nonempty subset of every H-member. Both leave
		the represented group unchanged.
		"""
		if mode not in ("weak", "full"):
			raise DomainError("normalize mode must be weak or full")
		g = set(self.g_members)
		for m in self.h_members:
			g.add(m)
			if mode == "weak":
				for v in bits(m):
					piece = m & ~(1 << v)
					if piece:
						g.add(piece)
			else:
				g.update(_proper_subsets(m))
		return PeripheralPair(self.graph, g, self.h_members, normalized=mode)

	def require_normalized(self):
		if self.normalized is None:
			raise DomainError("peripheral pair must be normalized first")

	def adding_g(self, extra):
		"""Same pair with extra masks joined into G.

		Growing G keeps the normalization invariant (it only constrains
		which subsets of H-members are present), so the flag survives.
		"""
		return PeripheralPair(
			self.graph,
			set(self.g_members) | set(extra),
			self.h_members,
			normalized=self.normalized,
			saturated=self.saturated,
		)

	def __repr__(self):
		fmt = lambda ms: [self.graph.names(m) for m in ms]
		return "PeripheralPair(G=%r, H=%r)" % (fmt(self.g_members), fmt(self.h_members))


def _proper_subsets(mask):
	vs = list(bits(mask))
	for pattern in range(1, 1 << len(vs)):
		yield sum(1 << vs[i] for i in range(len(vs)) if pattern >> i & 1)


def is_invariant(pp, dmask):
	"""Is the special subgroup on dmask preserved by the whole relative group?

	Characterized by two conditions: dmask is upwards closed under the
	relative order, and no outside vertex star-separates it (its intersection
	with the complement of an outside star must meet at most one relative
	component there).
	"""
	pp.require_normalized()
	graph = pp.graph
	members = pp.g_members
	for u in bits(dmask):
		for v in bits(graph.full & ~dmask):
			if orders.leq_rel(graph, members, u, v):
				return False
	for v in bits(graph.full & ~dmask):
		comps = orders.gv_components(graph, members, v)
		if sum(1 for c in comps if c & dmask) > 1:
			return False
	return True


def _invariant_scan(graph, members):
	"""All proper nonempty invariant masks, via tables shared across candidates."""
	domset = [0] * graph.n
	for u in range(graph.n):
		for v in range(graph.n):
			if orders.leq_rel(graph, members, u, v):
				domset[u] |= 1 << v
	comps_by_vertex = [orders.gv_components(graph, members, v) for v in range(graph.n)]
	out = []
	for dmask in range(1, graph.full):
		ok = True
		for u in bits(dmask):
			if domset[u] & ~dmask:
				ok = False
				break
		if not ok:
			continue
		for v in bits(graph.full & ~dmask):
			if sum(1 for c in comps_by_vertex[v] if c & dmask) > 1:
				ok = False
				break
		if ok:
			out.append(dmask)
	return out


def saturate(pp, cap=SATURATE_CAP, paranoid=False):
	"""Enlarge G with every proper invariant subgraph.

	A single scan suffices: the added subgroups were already invariant, so
	the group, and with it the invariant collection, does not change. The
	paranoid flag re-runs the scan against the enlarged pair and checks the
	fixpoint, for use in tests.
	"""
	pp.require_normalized()
	graph = pp.graph
	if graph.n > cap:
		raise CapabilityError(
			"saturation scans all 2^%d subgraphs; above %d vertices use "
			"fast_periphery for the restriction target instead" % (graph.n, cap)
		)
	found = _invariant_scan(graph, pp.g_members)
	out = pp.adding_g(found)
	out.saturated = True
	if paranoid:
		again = _invariant_scan(graph, out.g_members)
		if set(out.g_members) != set(pp.g_members) | set(again):
			raise RuntimeError("saturation is not a fixpoint")
	return out


def induced(pp, dmask):
	"""The peripheral pair induced on the subgraph dmask.

	Members intersect down; intersections that are empty or all of dmask
	are dropped. The result lives on the induced graph, with masks
	compressed accordingly. Weak normalization survives the construction
	(deleted-vertex subsets of intersections are intersections of
	deleted-vertex subsets), saturation does not.
	"""
	sub = pp.graph.induced(dmask)
	cut = lambda ms: [
		compress_mask(m & dmask, dmask) for m in ms if m & dmask and m & dmask != dmask
	]
	return PeripheralPair(sub, cut(pp.g_members), cut(pp.h_members), normalized=pp.normalized)


def fast_periphery(pp, dmask):
	"""The periphery P_Delta making one restriction image exact.

	Two sources: links of outside vertices cut down to dmask, and relative
	neighbourhoods of the maximal relative-connected subgraphs (away from
	each inside vertex's star) that avoid dmask. Empty and full cuts are
	dropped. Requires dmask to be a member of G, since that is what makes
	the restriction map defined in the first place.
	"""
	pp.require_normalized()
	graph = pp.graph
	if dmask not in pp.g_members:
		raise DomainError("fast_periphery target must be a member of G")
	out = set()
	for x in bits(graph.full & ~dmask):
		cut = graph.adj[x] & dmask
		if cut and cut != dmask:
			out.add(cut)
	for x in bits(dmask):
		gx = [m for m in pp.g_members if not m >> x & 1]
		away = graph.full & ~graph.star_masks[x] & ~dmask
		for theta in orders.g_components(graph, gx, away):
			cut = orders.n_g(graph, gx, theta) & dmask
			if cut and cut != dmask:
				out.add(cut)
	return tuple(sorted(out, key=_member_key))


def cone_graph(graph, g_members):
	"""Cone off every member of G, then cone off the whole graph twice.

	Each added vertex is adjacent to exactly its member's vertices, so its
	link in the new graph is that member. Added names are prefixed with
	"@" to stay clear of the original vertex names.
	"""
	for m in g_members:
		if m == graph.full:
			raise DomainError("cone members must be proper subgraphs")
	names = list(graph.vertices)
	edges = [list(e) for e in graph.to_json_obj()["edges"]]
	cones = [("@%d" % i, m) for i, m in enumerate(sorted(set(g_members), key=_member_key))]
	cones.append(("@G", graph.full))
	cones.append(("@*", graph.full))
	for cname, m in cones:
		names.append(cname)
		for v in bits(m):
			edges.append([cname, graph.vertices[v]])
	return DefiningGraph(names, edges)


def untwisted_periphery(graph):
	"""The proper non-adjacent upward cones, one per vertex, deduplicated.

	The cone of v collects v and every strictly dominating vertex not
	adjacent to it; preserving all of these simultaneously characterizes
	the image of the untwisted subgroup.
	"""
	out = set()
	for v in range(graph.n):
		m = 1 << v
		for w in range(graph.n):
			if w != v and graph.dominates(v, w) and not graph.adj[v] >> w & 1:
				m |= 1 << w
		if m != graph.full:
			out.add(m)
	return tuple(sorted(out, key=_member_key))
