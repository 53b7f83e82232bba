"""Dimension accounting over decomposition trees.

The upper bound folds leaf dimensions, projection kernel ranks, and
extension ranks up a tree. Lower bounds come from explicit generator
lists: a commuting list is certified through its action on homology plus
non-innerness of products of the remaining conjugations, and a nilpotent
list through the dimension of the Lie algebra its unipotent image
generates. A failed certificate raises; it never degrades into a smaller
number silently.
"""

import ast
import operator
from collections import namedtuple
from fractions import Fraction

from .autos import is_inner, realize
from .decompose import (
	FouxeRabinovitch,
	FreeAbelian,
	GeneralLinear,
	Leaf,
	ProjectionStep,
	RestrictionStep,
	Trivial,
	decompose,
)
from .errors import CertificationError, DomainError
from .words import WordContext


VcdBound = namedtuple("VcdBound", ["upper", "lower", "per_leaf"])


def bound_to_json_obj(bound):
	return {
		"upper": bound.upper,
		"lower": bound.lower,
		"per_leaf": [
			{"leaf": leaf, "dim": dim, "why": why}
			for leaf, dim, why in bound.per_leaf
		],
	}


# ---- dimension formulas ----

_BIN_OPS = {
	ast.Add: operator.add,
	ast.Sub: operator.sub,
	ast.Mult: operator.mul,
	ast.FloorDiv: operator.floordiv,
}


def eval_formula(expr, env):
	"""Evaluate an arithmetic formula over named nonnegative integers.

	Sums, differences, products, floor division, unary minus, integer
	literals, and the names bound in env; anything else is rejected. A
	negative result is rejected too, since dimensions are counts.
	"""
	try:
		tree = ast.parse(expr, mode="eval")
	except SyntaxError:
		raise DomainError("cannot parse dimension formula %r" % expr)

	def ev(node):
		if isinstance(node, ast.Expression):
			return ev(node.body)
		if isinstance(node, ast.BinOp) and type(node.op) in _BIN_OPS:
			try:
				return _BIN_OPS[type(node.op)](ev(node.left), ev(node.right))
			except ZeroDivisionError:
				raise DomainError("division by zero in dimension formula %r" % expr)
		if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.UAdd, ast.USub)):
			val = ev(node.operand)
			return -val if isinstance(node.op, ast.USub) else val
		if isinstance(node, ast.Constant) and isinstance(node.value, int):
			return node.value
		if isinstance(node, ast.Name):
			if node.id in env:
				return env[node.id]
			raise DomainError("unknown name %r in dimension formula" % node.id)
		raise DomainError("unsupported syntax in dimension formula %r" % expr)

	value = ev(tree)
	if value < 0:
		raise DomainError("dimension formula %r evaluated to %d" % (expr, value))
	return value


class DimProviderConfig:
	"""Dimension formulas for the leaf shapes a tree can end in.

	fr_free gives the outer automorphism dimension of a free group of
	rank m (applied for m >= 2; smaller ranks contribute 0). fr_zq_fs
	covers one held clique factor of size q with free rank s. overrides
	is a list of patterns tried in order against free products before
	the built-ins; keys "factors" (sorted sizes), "free", and "held"
	narrow the match when present, and "dim" is an integer or a formula
	in k (factor count) and m (free rank).
	"""

	__slots__ = ("fr_free", "fr_zq_fs", "overrides")

	def __init__(self, fr_free="2*m - 3", fr_zq_fs="q*(2*s - 1)", overrides=()):
		self.fr_free = fr_free
		self.fr_zq_fs = fr_zq_fs
		self.overrides = tuple(overrides)

	@classmethod
	def from_json_obj(cls, obj):
		if not isinstance(obj, dict):
			raise DomainError("provider config must be an object")
		known = {"fr_free", "fr_zq_fs", "overrides"}
		for key in obj:
			if key not in known:
				raise DomainError("unknown provider config key %r" % key)
		return cls(
			fr_free=obj.get("fr_free", "2*m - 3"),
			fr_zq_fs=obj.get("fr_zq_fs", "q*(2*s - 1)"),
			overrides=obj.get("overrides", ()),
		)

	def to_json_obj(self):
		return {
			"fr_free": self.fr_free,
			"fr_zq_fs": self.fr_zq_fs,
			"overrides": list(self.overrides),
		}


def _center_size(graph):
	return bin(graph.subgraph_center(graph.full)).count("1")


def _override_matches(override, shape):
	if "factors" in override:
		if sorted(f.n for f in shape.factors) != sorted(override["factors"]):
			return False
	if "free" in override and override["free"] != shape.free_rank:
		return False
	if "held" in override and override["held"] != all(shape.held):
		return False
	return True


def leaf_dimension(shape, cfg=None):
	"""Dimension of one leaf together with a short provenance tag."""
	cfg = cfg or DimProviderConfig()
	if isinstance(shape, Trivial):
		return 0, "trivial"
	if isinstance(shape, FreeAbelian):
		if shape.rank_lower != shape.rank_upper:
			return shape.rank_upper, "free-abelian rank upper (lower %d differs)" % (
				shape.rank_lower
			)
		return shape.rank_upper, "free-abelian rank"
	if isinstance(shape, GeneralLinear):
		dim = shape.extension_rank + shape.m * (shape.m - 1) // 2
		return dim, "unipotent block plus extension"
	if isinstance(shape, FouxeRabinovitch):
		for override in cfg.overrides:
			if _override_matches(override, shape):
				dim = override.get("dim")
				if not isinstance(dim, int):
					env = {"k": len(shape.factors), "m": shape.free_rank}
					dim = eval_formula(dim, env)
				return dim, "override"
		if not shape.factors:
			if shape.free_rank <= 1:
				return 0, "free group outer"
			return eval_formula(cfg.fr_free, {"m": shape.free_rank}), "free group outer"
		if (
			len(shape.factors) == 1
			and shape.held[0]
			and shape.free_rank >= 1
			and shape.factors[0].is_clique(shape.factors[0].full)
		):
			env = {"q": shape.factors[0].n, "s": shape.free_rank}
			return eval_formula(cfg.fr_zq_fs, env), "held clique by free"
		if len(shape.factors) == 2 and shape.free_rank == 0 and all(shape.held):
			dim = sum(f.clique_number() - _center_size(f) for f in shape.factors)
			return dim, "two held factors"
		return "unknown", "free product with no formula"
	raise DomainError("unknown leaf shape %r" % (shape,))


def _add(a, b):
	if a == "unknown" or b == "unknown":
		return "unknown"
	return a + b


def fold(tree, cfg=None):
	"""Upper bound for a tree with a per-leaf ledger.

	Ledger rows are (node id, contribution, tag); the id is the node's
	path from the root with k for kernel branches, i for image branches,
	and a trailing z for a projection kernel.
	"""
	cfg = cfg or DimProviderConfig()
	rows = []

	def walk(node, path):
		label = path or "root"
		step = node.step
		if isinstance(step, Leaf):
			dim, tag = leaf_dimension(step.shape, cfg)
			rows.append((label, dim, tag))
			return dim
		if isinstance(step, ProjectionStep):
			rows.append((label + ".z", step.kernel_rank, "projection kernel"))
			return _add(step.kernel_rank, walk(step.image, label + ".i"))
		if isinstance(step, RestrictionStep):
			ker = walk(step.kernel, label + ".k")
			return _add(ker, walk(step.image, label + ".i"))
		raise DomainError("unknown step %r" % (step,))

	total = walk(tree, "")
	return total, rows


def vcd_upper(tree, cfg=None):
	return fold(tree, cfg)[0]


# ---- exact linear algebra over the rationals ----


class _Echelon:
	"""Row space over the rationals, kept reduced with unit pivots."""

	__slots__ = ("rows",)

	def __init__(self):
		self.rows = []

	def _reduce(self, vec):
		vec = list(vec)
		for pivot, row in self.rows:
			c = vec[pivot]
			if c:
				for j in range(pivot, len(vec)):
					vec[j] -= c * row[j]
		return vec

	def add(self, vec):
		"""Add a vector; whether it enlarged the space."""
		vec = self._reduce(vec)
		for pivot, value in enumerate(vec):
			if value:
				inv = Fraction(1, 1) / value
				self.rows.append((pivot, tuple(x * inv for x in vec)))
				self.rows.sort(key=lambda pr: pr[0])
				return True
		return False

	def contains(self, vec):
		return not any(self._reduce(vec))

	@property
	def dim(self):
		return len(self.rows)


def _rank(vectors):
	ech = _Echelon()
	for vec in vectors:
		ech.add(vec)
	return ech.dim


# ---- homology action ----


def _h1_action(ctx, phi):
	"""Integer matrix of the induced action on the abelianized group."""
	n = ctx.graph.n
	rows = []
	for v in range(n):
		row = [0] * n
		for letter in phi.images[2 * v]:
			row[letter >> 1] += -1 if letter & 1 else 1
		rows.append(tuple(row))
	return tuple(rows)


def _identity_matrix(n):
	return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def _mat_mul(a, b):
	n = len(a)
	return tuple(
		tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n))
		for i in range(n)
	)


def _mat_combine(a, b, ca, cb):
	n = len(a)
	return tuple(
		tuple(ca * a[i][j] + cb * b[i][j] for j in range(n)) for i in range(n)
	)


def _is_zero_matrix(m):
	return not any(any(row) for row in m)


def _log_unipotent(m, what):
	"""Exact logarithm of a unipotent integer matrix.

	Raises when the matrix is not unipotent; finite-order actions are
	exactly the ones a polycyclic certificate must not count.
	"""
	n = len(m)
	nil = _mat_combine(m, _identity_matrix(n), Fraction(1), Fraction(-1))
	total = tuple(tuple(Fraction(0) for _ in range(n)) for _ in range(n))
	power = nil
	k = 1
	while not _is_zero_matrix(power):
		if k > n:
			raise CertificationError(
				"the homology action of %s is not unipotent" % what
			)
		total = _mat_combine(total, power, Fraction(1), Fraction((-1) ** (k + 1), k))
		power = _mat_mul(power, nil)
		k += 1
	return total


def _flatten(m):
	return tuple(x for row in m for x in row)


def _bracket(a, b):
	return _mat_combine(_mat_mul(a, b), _mat_mul(b, a), Fraction(1), Fraction(-1))


def _lie_closure(logs):
	"""Basis of the Lie algebra generated by the given matrices.

	Certifies the algebra is nilpotent by driving its lower central
	series to zero; a list whose homology image generates something
	free-ish fails here rather than producing a bogus dimension.
	"""
	ech = _Echelon()
	basis = []
	for m in logs:
		if ech.add(_flatten(m)):
			basis.append(m)
	grew = True
	while grew:
		grew = False
		for a in list(basis):
			for b in list(basis):
				c = _bracket(a, b)
				if ech.add(_flatten(c)):
					basis.append(c)
					grew = True
	layer = basis
	while layer:
		nxt_ech = _Echelon()
		nxt = []
		for a in layer:
			for b in basis:
				c = _bracket(a, b)
				if nxt_ech.add(_flatten(c)):
					nxt.append(c)
		if len(nxt) >= len(layer):
			raise CertificationError(
				"the homology image does not generate a nilpotent Lie algebra"
			)
		layer = nxt
	return basis


# ---- lower bound certificates ----


def _commutator(a, b):
	return a.compose(b).compose(a.invert()).compose(b.invert())


def _identity_auto(ctx):
	from .autos import Automorphism

	return Automorphism.identity(ctx)


def _power_products(ctx, phis, box):
	"""Yield (exponent vector, product) over the box, reusing prefixes."""
	powers = []
	for phi in phis:
		acc = {0: _identity_auto(ctx)}
		inv = phi.invert()
		for e in range(1, box + 1):
			acc[e] = phi.compose(acc[e - 1])
			acc[-e] = inv.compose(acc[-(e - 1)])
		powers.append(acc)

	def rec(depth, acc):
		if depth == len(phis):
			yield (), acc
			return
		for e in range(-box, box + 1):
			nxt = acc.compose(powers[depth][e]) if e else acc
			for tail, prod in rec(depth + 1, nxt):
				yield (e,) + tail, prod

	return rec(0, _identity_auto(ctx))


def certify_abelian_lower_bound(graph, gens, box=2):
	"""Certified rank of the span of a commuting generator list.

	Every pair must commute in the outer group. Generators acting on
	homology must act unipotently and contribute the rank of their
	logarithms; the rest contribute one each once every nontrivial
	exponent vector in the box is verified non-inner.
	"""
	ctx = WordContext(graph)
	phis = [realize(ctx, gen) for gen in gens]
	for i in range(len(gens)):
		for j in range(i + 1, len(gens)):
			res = is_inner(ctx, _commutator(phis[i], phis[j]))
			if res.status != "yes":
				raise CertificationError(
					"generators %s and %s do not commute in the outer group: %s"
					% (gens[i], gens[j], res.reason or res.status)
				)
	ident = _identity_matrix(graph.n)
	logs = []
	ia = []
	ia_names = []
	for gen, phi in zip(gens, phis):
		mat = _h1_action(ctx, phi)
		if mat == ident:
			ia.append(phi)
			ia_names.append(str(gen))
		else:
			logs.append(_flatten(_log_unipotent(mat, gen)))
	r1 = _rank(logs)
	_certify_box_independent(ctx, ia, box, ia_names)
	return r1 + len(ia)


def _certify_box_independent(ctx, phis, box, names, fixed=None):
	"""Every nonzero exponent vector over phis must give a non-inner product.

	With fixed (a list of automorphisms), every product over the fixed
	box is appended on the right, and only the all-zero combination is
	exempt.
	"""
	if not phis:
		return
	tails = [((), _identity_auto(ctx))]
	if fixed:
		tails = list(_power_products(ctx, fixed, box))
	zero = (0,) * len(phis)
	for vec, prod in _power_products(ctx, phis, box):
		for fvec, tail in tails:
			if vec == zero and not any(fvec):
				continue
			res = is_inner(ctx, prod.compose(tail))
			if res.status == "yes":
				raise CertificationError(
					"exponent vector %s over {%s} gives an inner product"
					% (list(vec + fvec), ", ".join(names))
				)


def certify_nilpotent_lower_bound(graph, gens, box=2):
	"""Certified Hirsch length of the span of a nilpotent generator list.

	The homology part contributes the dimension of the Lie algebra its
	logarithms generate, which must be nilpotent. Every commutator of
	listed generators must be inner or again a listed generator up to
	sign and inner factors; unless the graph is a clique (where the
	homology action is faithful), generators reached as commutators must
	have inner commutators with everything, pinning the class at two.
	Conjugation-type generators contribute one each after box checks.
	"""
	ctx = WordContext(graph)
	phis = [realize(ctx, gen) for gen in gens]
	ident = _identity_matrix(graph.n)
	mats = [_h1_action(ctx, phi) for phi in phis]
	logs = [
		_log_unipotent(mat, gen)
		for gen, mat in zip(gens, mats)
		if mat != ident
	]
	lie_dim = len(_lie_closure(logs)) if logs else 0

	inverses = [phi.invert() for phi in phis]
	inv_mats = [_h1_action(ctx, inv) for inv in inverses]
	derived = set()
	commuting = [[True] * len(gens) for _ in gens]
	for i in range(len(gens)):
		for j in range(i + 1, len(gens)):
			c = _commutator(phis[i], phis[j])
			if is_inner(ctx, c).status == "yes":
				continue
			commuting[i][j] = commuting[j][i] = False
			cmat = _h1_action(ctx, c)
			match = None
			for k in range(len(gens)):
				if cmat == mats[k] and is_inner(ctx, c.compose(inverses[k])).status == "yes":
					match = k
				elif cmat == inv_mats[k] and is_inner(ctx, c.compose(phis[k])).status == "yes":
					match = k
				if match is not None:
					break
			if match is None:
				raise CertificationError(
					"the commutator of %s and %s is neither inner nor listed"
					% (gens[i], gens[j])
				)
			derived.add(match)
	if not graph.is_clique(graph.full):
		for k in sorted(derived):
			for i in range(len(gens)):
				if i != k and not commuting[k][i]:
					raise CertificationError(
						"%s is reached as a commutator but does not commute with %s"
						% (gens[k], gens[i])
					)

	j_all = [i for i in range(len(gens)) if mats[i] == ident]
	j_derived = [i for i in j_all if i in derived]
	j_rest = [i for i in j_all if i not in derived]
	names = [str(gens[i]) for i in j_rest + j_derived]
	if j_rest:
		_certify_box_independent(
			ctx,
			[phis[i] for i in j_rest],
			box,
			names,
			fixed=[phis[i] for i in j_derived] or None,
		)
	elif j_derived:
		_certify_box_independent(ctx, [phis[i] for i in j_derived], box, names)
	return lie_dim + len(j_all)


# ---- report ----


def _triangle_list(descriptor):
	"""Transvections below the diagonal that the peripheral pair allows."""
	from .autos import LaurenceGenerator, gen_in_relative

	graph = descriptor.graph
	out = []
	for j in range(graph.n):
		for i in range(j):
			gen = LaurenceGenerator.transvection(
				graph, graph.vertices[j], graph.vertices[i]
			)
			if gen_in_relative(gen, descriptor.pair):
				out.append(gen)
	return out


def _derive_generators(descriptor):
	"""A certifiable list for the shapes the package knows cold.

	Cliques get their below-diagonal transvections (nilpotent list); an
	absolute diamond chain gets its commuting list. Returns
	(gens, nilpotent) or None.
	"""
	from .families import diamond_generators, diamond_labels
	from .autos import LaurenceGenerator

	graph = descriptor.graph
	if graph.is_clique(graph.full):
		return _triangle_list(descriptor), True
	pair = descriptor.pair
	if pair.g_members or pair.h_members:
		return None
	labels = diamond_labels(graph)
	if labels is None:
		return None
	d = (graph.n - 1) // 3
	if d == 1:
		gens = [
			LaurenceGenerator.transvection(graph, labels["b1"], labels["a1"]),
			LaurenceGenerator.transvection(graph, labels["c0"], labels["c1"]),
		]
	else:
		gens = diamond_generators(graph, d, labels=labels)
	return gens, False


def vcd_report(descriptor, script=None, cfg=None, gens=None, box=2, nilpotent=False):
	"""Decompose, fold the upper bound, and certify a lower bound.

	A supplied generator list must lie in the descriptor's group and
	drives certification directly, through the nilpotent certificate
	when asked. Without one, cliques and absolute diamond chains get a
	list derived automatically; any other graph settles for a certified
	lower bound of zero.
	"""
	from .autos import gen_in_relative

	mode = "script" if script is not None else "auto"
	tree = decompose(descriptor, mode=mode, script=script)
	upper, per_leaf = fold(tree, cfg)
	if gens is None:
		derived = _derive_generators(descriptor)
		if derived is not None:
			gens, nilpotent = derived
	else:
		for gen in gens:
			if not gen_in_relative(gen, descriptor.pair):
				raise DomainError(
					"%s is not in the group being bounded" % (gen,)
				)
	if gens:
		certify = certify_nilpotent_lower_bound if nilpotent else certify_abelian_lower_bound
		lower = certify(descriptor.graph, gens, box=box)
	else:
		lower = 0
	if upper != "unknown" and lower > upper:
		raise RuntimeError(
			"certified lower bound %d exceeds the upper bound %d" % (lower, upper)
		)
	return VcdBound(upper, lower, per_leaf)
