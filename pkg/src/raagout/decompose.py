"""Subnormal decomposition of relative outer automorphism groups.

A descriptor ties a defining graph to a peripheral pair and stands for one
relative group. Three moves take it apart: restricting to an invariant
subgraph (the kernel keeps the graph with the target turned into a
trivial-action member, the image moves onto the subgraph), projecting away
a nontrivial center (the kernel is free abelian of a computable rank), and
classifying what remains as a terminal shape. A decomposition tree records
the moves, and a complexity measure drops strictly along every edge, so
the recursion terminates no matter which invariant subgraphs get picked.
"""

from collections import namedtuple

from .errors import DomainError
from .graphs import bits, compress_mask, mask_of
from . import orders
from .words import WordContext, enc, inverse
from .peripheral import PeripheralPair, fast_periphery, induced, is_invariant, saturate
from .autos import (
	Automorphism,
	LaurenceGenerator,
	enumerate_generators,
	gen_in_relative,
	preserves_word,
)


Complexity = namedtuple("Complexity", ["n", "m"])


class GroupDescriptor:
	"""A relative outer automorphism group: a graph plus a peripheral pair."""

	__slots__ = ("graph", "pair", "_ctx", "_gens")

	def __init__(self, graph, pair):
		if pair.graph is not graph and pair.graph.vertices != graph.vertices:
			raise DomainError("pair belongs to a different graph")
		if pair.normalized is None:
			pair = pair.normalize()
		self.graph = graph
		self.pair = pair
		self._ctx = None
		self._gens = None

	@classmethod
	def absolute(cls, graph):
		return cls(graph, PeripheralPair(graph, [], []))

	@property
	def ctx(self):
		if self._ctx is None:
			self._ctx = WordContext(self.graph)
		return self._ctx

	def gens(self):
		if self._gens is None:
			self._gens = enumerate_generators(self.pair)
		return self._gens

	def complexity(self):
		return Complexity(self.graph.n, (1 << self.graph.n) - len(self.pair.h_members))

	def summary(self):
		return "n=%d |G|=%d |H|=%d" % (
			self.graph.n,
			len(self.pair.g_members),
			len(self.pair.h_members),
		)

	def __repr__(self):
		return "<descriptor %s>" % self.summary()


# ---- terminal shapes ----


class FreeAbelian:
	"""Free abelian piece with certified lower and upper rank bounds."""

	__slots__ = ("rank_lower", "rank_upper")

	def __init__(self, rank_lower, rank_upper):
		if rank_lower > rank_upper:
			raise DomainError("rank bounds are out of order")
		self.rank_lower = rank_lower
		self.rank_upper = rank_upper

	def __eq__(self, other):
		return (
			isinstance(other, FreeAbelian)
			and (self.rank_lower, self.rank_upper) == (other.rank_lower, other.rank_upper)
		)

	def __repr__(self):
		if self.rank_lower == self.rank_upper:
			return "FreeAbelian(%d)" % self.rank_upper
		return "FreeAbelian(%d..%d)" % (self.rank_lower, self.rank_upper)

	def to_json_obj(self):
		return {
			"class": "free_abelian",
			"rank_lower": self.rank_lower,
			"rank_upper": self.rank_upper,
		}


class GeneralLinear:
	"""An integer general linear group extended by a free abelian group.

	The block decomposition leaves m unconstrained letters; transvections
	from the constrained block contribute the extension of rank
	m * (n - m) recorded alongside.
	"""

	__slots__ = ("m", "extension_rank")

	def __init__(self, m, extension_rank):
		self.m = m
		self.extension_rank = extension_rank

	def __eq__(self, other):
		return (
			isinstance(other, GeneralLinear)
			and (self.m, self.extension_rank) == (other.m, other.extension_rank)
		)

	def __repr__(self):
		return "GL(%d,Z) ext %d" % (self.m, self.extension_rank)

	def to_json_obj(self):
		return {"class": "general_linear", "m": self.m, "extension_rank": self.extension_rank}


class FouxeRabinovitch:
	"""Outer automorphisms of a free product given by a factor decomposition.

	held marks, per factor, whether a peripheral member equals the factor's
	support; a held factor is only acted on by conjugation, which is what
	the dimension formulas downstream rely on.
	"""

	__slots__ = ("factors", "free_rank", "held")

	def __init__(self, factors, free_rank, held=None):
		self.factors = tuple(factors)
		if held is None:
			held = (False,) * len(self.factors)
		self.held = tuple(bool(x) for x in held)
		if len(self.held) != len(self.factors):
			raise DomainError("held flags must match the factor list")
		self.free_rank = free_rank

	def __eq__(self, other):
		return (
			isinstance(other, FouxeRabinovitch)
			and self.free_rank == other.free_rank
			and self.held == other.held
			and [f.vertices for f in self.factors] == [f.vertices for f in other.factors]
		)

	def __repr__(self):
		parts = [
			"<%s>%s" % (",".join(f.vertices), "!" if h else "")
			for f, h in zip(self.factors, self.held)
		]
		return "FR(factors=[%s], m=%d)" % ("; ".join(parts), self.free_rank)

	def to_json_obj(self):
		return {
			"class": "fouxe_rabinovitch",
			"factors": [list(f.vertices) for f in self.factors],
			"held": list(self.held),
			"free_rank": self.free_rank,
		}


class Trivial:
	__slots__ = ()

	def __eq__(self, other):
		return isinstance(other, Trivial)

	def __repr__(self):
		return "Trivial"

	def to_json_obj(self):
		return {"class": "trivial"}


# ---- tree nodes ----


class RestrictionStep:
	__slots__ = ("dmask", "kernel", "image")

	def __init__(self, dmask, kernel, image):
		self.dmask = dmask
		self.kernel = kernel
		self.image = image


class ProjectionStep:
	__slots__ = ("zmask", "kernel_rank", "image")

	def __init__(self, zmask, kernel_rank, image):
		self.zmask = zmask
		self.kernel_rank = kernel_rank
		self.image = image


class Leaf:
	__slots__ = ("shape",)

	def __init__(self, shape):
		self.shape = shape


class DecompositionNode:
	__slots__ = ("descriptor", "step")

	def __init__(self, descriptor, step):
		self.descriptor = descriptor
		self.step = step

	def leaves(self):
		"""Leaf shapes and projection kernels, left to right."""
		out = []
		if isinstance(self.step, Leaf):
			out.append(self.step.shape)
		elif isinstance(self.step, RestrictionStep):
			out.extend(self.step.kernel.leaves())
			out.extend(self.step.image.leaves())
		else:
			out.append(FreeAbelian(self.step.kernel_rank, self.step.kernel_rank))
			out.extend(self.step.image.leaves())
		return out

	def to_json_obj(self):
		d = self.descriptor
		base = {
			"graph": d.graph.to_json_obj(),
			"pair": d.pair.to_json_obj(),
		}
		if isinstance(self.step, Leaf):
			base["leaf"] = self.step.shape.to_json_obj()
		elif isinstance(self.step, RestrictionStep):
			base["restrict"] = {
				"target": d.graph.names(self.step.dmask),
				"kernel": self.step.kernel.to_json_obj(),
				"image": self.step.image.to_json_obj(),
			}
		else:
			base["project"] = {
				"center": d.graph.names(self.step.zmask),
				"kernel_rank": self.step.kernel_rank,
				"image": self.step.image.to_json_obj(),
			}
		return base


def tree_dot(root):
	"""The tree in DOT form, nodes labeled by descriptor summaries."""
	lines = ["digraph decomposition {", "\tnode [shape=box];"]
	counter = [0]

	def walk(node):
		my = "n%d" % counter[0]
		counter[0] += 1
		step = node.step
		label = node.descriptor.summary()
		if isinstance(step, Leaf):
			label += "\\n%r" % step.shape
			lines.append('\t%s [label="%s"];' % (my, label))
		elif isinstance(step, RestrictionStep):
			label += "\\nrestrict %s" % ",".join(
				node.descriptor.graph.names(step.dmask)
			)
			lines.append('\t%s [label="%s"];' % (my, label))
			lines.append('\t%s -> %s [label="ker"];' % (my, walk(step.kernel)))
			lines.append('\t%s -> %s [label="im"];' % (my, walk(step.image)))
		else:
			label += "\\nproject, ker Z^%d" % step.kernel_rank
			lines.append('\t%s [label="%s"];' % (my, label))
			lines.append('\t%s -> %s [label="im"];' % (my, walk(step.image)))
		return my

	walk(root)
	lines.append("}")
	return "\n".join(lines)


# ---- the three moves ----


def restriction_step(d, dmask, mode="fast"):
	"""Split off the restriction to an invariant subgraph.

	Fast mode keeps the pair as given (weak normalization) and completes
	the image with the computed periphery; saturated mode saturates first,
	which makes the induced members alone already sufficient. Either way
	the kernel keeps the whole graph and gains dmask as a trivial-action
	member, re-normalized so the new member's pieces join the preserved
	side.
	"""
	graph = d.graph
	if not 0 < dmask < graph.full:
		raise DomainError("restriction target must be a proper nonempty subgraph")
	if mode not in ("fast", "saturated"):
		raise DomainError("restriction mode must be fast or saturated")
	pair = d.pair
	if mode == "saturated" and not pair.saturated:
		pair = saturate(pair)
	if dmask not in pair.g_members:
		if not is_invariant(pair, dmask):
			raise DomainError(
				"restriction target %s is not invariant for this pair"
				% "".join(graph.names(dmask))
			)
		pair = pair.adding_g([dmask])
	sub_pair = induced(pair, dmask)
	if mode == "fast":
		per = fast_periphery(pair, dmask)
		sub_pair = sub_pair.adding_g(compress_mask(m, dmask) for m in per)
	image = GroupDescriptor(sub_pair.graph, sub_pair)
	kernel_pair = PeripheralPair(
		graph, pair.g_members, tuple(pair.h_members) + (dmask,)
	).normalize(pair.normalized)
	kernel = GroupDescriptor(graph, kernel_pair)
	return kernel, image


def lift_generator(source, image, dmask, gen):
	"""Pull an image generator back to the source group of a restriction.

	Inversions and transvections lift by vertex name. A partial
	conjugation lifts to the one along the union of the source-side
	relative components meeting its region; restricting that union back
	to the subgraph recovers the region. Symmetries are not enumerated
	and have no canonical lift.
	"""
	if not gen_in_relative(gen, image.pair):
		raise DomainError("generator is not in the image group")
	graph = source.graph
	keep = list(bits(dmask))
	if gen.kind == "inv":
		return LaurenceGenerator.inversion(graph, keep[gen.data[0]])
	if gen.kind == "trv":
		moved, acting = gen.data
		return LaurenceGenerator.transvection(graph, keep[moved], keep[acting])
	if gen.kind == "pc":
		acting, region = gen.data
		x = keep[acting]
		target = mask_of(keep[i] for i in bits(region))
		lifted = 0
		for comp in orders.gv_components(graph, source.pair.g_members, x):
			if comp & target:
				lifted |= comp
		return LaurenceGenerator.partial_conj(graph, x, lifted)
	raise DomainError("symmetries have no canonical lift")


def word_restriction(ctx, sub_ctx, dmask, phi):
	"""phi as an explicit automorphism of the subgroup on dmask.

	Conjugates by a preserving witness first, so the letter images all
	live inside dmask, then recodes them onto the induced graph.
	"""
	ok, g = preserves_word(ctx, phi, dmask)
	if not ok:
		raise DomainError("map does not carry the subgroup to a conjugate")
	pos = {s: i for i, s in enumerate(bits(dmask))}

	def recode(word):
		return tuple(2 * pos[lt >> 1] | lt & 1 for lt in word)

	fwd = []
	bwd = []
	for s in bits(dmask):
		inside = ctx.reduce(inverse(g) + phi.images[2 * s] + g)
		fwd.append(recode(inside))
		back = phi.apply_back(ctx.conjugate(g, (enc(s, 1),)))
		bwd.append(recode(back))
	return Automorphism.from_images(sub_ctx, fwd, bwd)


def projection_step(d):
	"""Quotient by the transvection kernel onto the center's complement.

	Sound whenever the graph is connected, the center is nonempty and
	proper, and the group acts trivially on the center's subgroup; the
	kernel is free abelian, spanned by the transvections from outside
	letters onto central ones that the relative order admits.
	"""
	graph = d.graph
	if not graph.is_connected():
		raise DomainError("projection needs a connected graph")
	z = graph.subgraph_center(graph.full)
	if not z or z == graph.full:
		raise DomainError("projection needs a nonempty proper center")
	for gen in d.gens():
		if not gen.acts_trivially_on(z):
			raise DomainError(
				"restriction to the center is nontrivial; restrict to %s first"
				% "".join(graph.names(z))
			)
	rank = 0
	for vc in bits(z):
		for w in bits(graph.full & ~z):
			if orders.leq_rel(graph, d.pair.g_members, w, vc):
				rank += 1
	image_pair = induced(d.pair, graph.full & ~z)
	return rank, GroupDescriptor(image_pair.graph, image_pair)


def classify_irreducible(d):
	"""Sort a no-more-restrictions descriptor into its terminal shape.

	Requires every member restriction to already be trivial. Complete
	graphs give the integer general linear block; a connected graph with
	trivial center gives a free abelian piece bounded by its generator
	count; a disconnected graph gives either a free product shape or, when
	the members glue it back together, a free abelian group spanned by the
	star-separating conjugations. A connected graph with a proper center
	is not terminal and must go through a projection instead.
	"""
	graph = d.graph
	pair = d.pair
	gens = d.gens()
	for m in pair.g_members:
		for gen in gens:
			if not gen.acts_trivially_on(m):
				raise DomainError(
					"restriction to %s is still nontrivial; restrict first"
					% "".join(graph.names(m))
				)
	if graph.is_clique(graph.full):
		covered = 0
		for m in pair.g_members:
			covered |= m
		free = (graph.full & ~covered).bit_count()
		if free == 0:
			return Trivial()
		return GeneralLinear(free, free * (graph.n - free))
	if graph.is_connected():
		if graph.subgraph_center(graph.full):
			raise DomainError("nontrivial center: use a projection step")
		trv = sum(1 for gen in gens if gen.kind == "trv")
		return FreeAbelian(trv, len(gens))
	comps = orders.g_components(graph, pair.g_members, graph.full)
	if len(comps) >= 2:
		factors = []
		held = []
		free = 0
		for c in comps:
			if c.bit_count() == 1 and not any(m & c for m in pair.g_members):
				free += 1
			else:
				factors.append(graph.induced(c))
				held.append(c in pair.g_members)
		return FouxeRabinovitch(factors, free, held)
	theta = [
		v
		for v in range(graph.n)
		if len(orders.gv_components(graph, pair.g_members, v)) >= 2
	]
	for i, u in enumerate(theta):
		for v in theta[i + 1 :]:
			if not graph.adj[u] >> v & 1:
				raise RuntimeError("separating letters do not span a clique")
	return FreeAbelian(len(theta), len(theta))


# ---- the recursion ----


def restriction_nontrivial(d, dmask):
	"""Whether the restriction map to dmask kills every generator."""
	return any(not gen.acts_trivially_on(dmask) for gen in d.gens())


def _checked_edge(parent, child):
	if not child.complexity() < parent.complexity():
		raise RuntimeError(
			"complexity failed to decrease: %r -> %r"
			% (parent.complexity(), child.complexity())
		)
	return child


def decompose(d, mode="auto", script=None):
	"""Build the full decomposition tree below a descriptor.

	Auto mode saturates, then always restricts to the smallest invariant
	member with a nontrivial restriction, falling back to projection and
	classification when none is left. Script mode follows caller-given
	steps instead (restrict/project/leaf), with each step's preconditions
	validated; a restrict step may carry a nested script for its image
	branch, and an exhausted script continues in auto mode.
	"""
	if mode == "auto":
		return _auto(d)
	if mode == "script":
		return _scripted(d, list(script if script is not None else []))
	raise DomainError("decompose mode must be auto or script")


def _auto(d):
	pair = d.pair if d.pair.saturated else saturate(d.pair)
	d = GroupDescriptor(d.graph, pair)
	pivot = None
	for m in sorted(pair.g_members, key=lambda m: (m.bit_count(), m)):
		if restriction_nontrivial(d, m):
			pivot = m
			break
	if pivot is not None:
		kernel, image = restriction_step(d, pivot, mode="saturated")
		step = RestrictionStep(
			pivot,
			_auto(_checked_edge(d, kernel)),
			_auto(_checked_edge(d, image)),
		)
		return DecompositionNode(d, step)
	graph = d.graph
	if graph.is_connected() and not graph.is_clique(graph.full):
		z = graph.subgraph_center(graph.full)
		if z:
			rank, image = projection_step(d)
			step = ProjectionStep(z, rank, _auto(_checked_edge(d, image)))
			return DecompositionNode(d, step)
	return DecompositionNode(d, Leaf(classify_irreducible(d)))


def _scripted(d, steps):
	if not steps:
		return _auto(d)
	head = steps[0]
	rest = steps[1:]
	op = head.get("op")
	if op == "restrict":
		dmask = d.graph.mask(head["target"])
		kernel, image = restriction_step(d, dmask, mode=head.get("mode", "fast"))
		_checked_edge(d, kernel)
		_checked_edge(d, image)
		if "image" in head:
			inode = _scripted(image, list(head["image"]))
		else:
			inode = _auto(image)
		return DecompositionNode(
			d, RestrictionStep(dmask, _scripted(kernel, rest), inode)
		)
	if op == "project":
		rank, image = projection_step(d)
		_checked_edge(d, image)
		z = d.graph.subgraph_center(d.graph.full)
		return DecompositionNode(d, ProjectionStep(z, rank, _scripted(image, rest)))
	if op == "leaf":
		if rest:
			raise DomainError("leaf must be the last step of its branch")
		return DecompositionNode(d, Leaf(classify_irreducible(d)))
	raise DomainError("unknown script op %r" % op)
