"""Dimension folding and lower-bound certificates."""

from fractions import Fraction

import pytest

from raagout.autos import LaurenceGenerator, is_inner, realize
from raagout.decompose import (
	DecompositionNode,
	FouxeRabinovitch,
	FreeAbelian,
	GeneralLinear,
	GroupDescriptor,
	Leaf,
	RestrictionStep,
	Trivial,
	decompose,
)
from raagout.errors import CertificationError, DomainError
from raagout.families import (
	diamond_chain,
	diamond_generators,
	diamond_script,
	four_path,
	four_path_dimension,
	four_path_generators,
	four_path_script,
)
from raagout.graphs import DefiningGraph
from raagout.vcd import (
	DimProviderConfig,
	VcdBound,
	_lie_closure,
	bound_to_json_obj,
	certify_abelian_lower_bound,
	certify_nilpotent_lower_bound,
	eval_formula,
	fold,
	leaf_dimension,
	vcd_report,
	vcd_upper,
)
from raagout.words import WordContext


def clique(n):
	names = ["v%d" % i for i in range(1, n + 1)]
	return DefiningGraph(names, [[a, b] for a in names for b in names if a < b])


def edgeless(n):
	return DefiningGraph(["x%d" % i for i in range(n)], [])


# ---- formulas and config ----


def test_eval_formula():
	assert eval_formula("2*m - 3", {"m": 5}) == 7
	assert eval_formula("q*(2*s - 1)", {"q": 3, "s": 2}) == 9
	assert eval_formula("m*(m - 1)//2", {"m": 4}) == 6
	assert eval_formula("-(-m)", {"m": 2}) == 2
	with pytest.raises(DomainError):
		eval_formula("m - 10", {"m": 1})
	with pytest.raises(DomainError):
		eval_formula("m**2", {"m": 2})
	with pytest.raises(DomainError):
		eval_formula("q", {"m": 2})
	with pytest.raises(DomainError):
		eval_formula("__import__('os')", {})
	with pytest.raises(DomainError):
		eval_formula("m//0", {"m": 2})
	with pytest.raises(DomainError):
		eval_formula("m +", {"m": 2})


def test_config_json_roundtrip():
	cfg = DimProviderConfig(
		fr_free="3*m", overrides=[{"free": 4, "dim": 9}]
	)
	again = DimProviderConfig.from_json_obj(cfg.to_json_obj())
	assert again.fr_free == "3*m"
	assert again.fr_zq_fs == cfg.fr_zq_fs
	assert again.overrides == cfg.overrides
	with pytest.raises(DomainError):
		DimProviderConfig.from_json_obj({"fr_fre": "m"})
	with pytest.raises(DomainError):
		DimProviderConfig.from_json_obj([])


# ---- leaf dimensions ----


def test_leaf_dimensions_builtin():
	assert leaf_dimension(Trivial()) == (0, "trivial")
	assert leaf_dimension(FreeAbelian(2, 2))[0] == 2
	dim, tag = leaf_dimension(FreeAbelian(0, 1))
	assert dim == 1 and "lower 0" in tag
	assert leaf_dimension(GeneralLinear(3, 2))[0] == 2 + 3
	for m, expect in [(0, 0), (1, 0), (2, 1), (3, 3)]:
		assert leaf_dimension(FouxeRabinovitch((), m))[0] == expect
	shape = FouxeRabinovitch((clique(2),), 2, (True,))
	assert leaf_dimension(shape)[0] == 2 * (2 * 2 - 1)


def test_leaf_dimension_two_held_factors():
	single = DefiningGraph(["u"], [])
	assert leaf_dimension(
		FouxeRabinovitch((single, single), 0, (True, True))
	)[0] == 0
	f2 = edgeless(2)
	assert leaf_dimension(FouxeRabinovitch((f2, single), 0, (True, True)))[0] == 1
	assert leaf_dimension(FouxeRabinovitch((f2, f2), 0, (True, True)))[0] == 2


def test_leaf_dimension_unknown_shapes():
	single = DefiningGraph(["u"], [])
	assert leaf_dimension(
		FouxeRabinovitch((single, single, single), 0, (True,) * 3)
	)[0] == "unknown"
	assert leaf_dimension(
		FouxeRabinovitch((single, single), 0, (True, False))
	)[0] == "unknown"
	assert leaf_dimension(FouxeRabinovitch((edgeless(2),), 1, (True,)))[0] == "unknown"


def test_leaf_dimension_override():
	cfg = DimProviderConfig(
		overrides=[
			{"factors": [1, 1, 1], "free": 0, "dim": "k + m"},
			{"dim": 99},
		]
	)
	single = DefiningGraph(["u"], [])
	shape = FouxeRabinovitch((single, single, single), 0, (True,) * 3)
	assert leaf_dimension(shape, cfg)[0] == 3
	other = FouxeRabinovitch((single, single, single, single), 2, (True,) * 4)
	assert leaf_dimension(other, cfg) == (99, "override")


def test_fold_unknown_propagates():
	desc = GroupDescriptor.absolute(edgeless(3))
	single = DefiningGraph(["u"], [])
	bad = DecompositionNode(
		desc, Leaf(FouxeRabinovitch((single, single, single), 0, (True,) * 3))
	)
	good = DecompositionNode(desc, Leaf(FreeAbelian(2, 2)))
	tree = DecompositionNode(desc, RestrictionStep(1, bad, good))
	assert vcd_upper(tree) == "unknown"
	total, rows = fold(tree)
	assert total == "unknown"
	assert ("root.k", "unknown", "free product with no formula") in rows


# ---- upper bounds on the families ----


def test_vcd_upper_diamond_script():
	tree = decompose(
		GroupDescriptor.absolute(diamond_chain(2)),
		mode="script",
		script=diamond_script(2),
	)
	assert vcd_upper(tree) == 7


def test_vcd_upper_four_path():
	tup = (2, 1, 2, 1)
	tree = decompose(
		GroupDescriptor.absolute(four_path(*tup)),
		mode="script",
		script=four_path_script(*tup),
	)
	assert vcd_upper(tree) == four_path_dimension(*tup) == 12


# ---- abelian certificates ----


def test_abelian_single_transvection():
	g = clique(2)
	gen = LaurenceGenerator.transvection(g, "v2", "v1")
	assert certify_abelian_lower_bound(g, [gen]) == 1


def test_abelian_diamond():
	g = diamond_chain(2)
	assert certify_abelian_lower_bound(g, diamond_generators(g, 2)) == 7


def test_abelian_rejects_noncommuting():
	g = clique(2)
	pair = [
		LaurenceGenerator.transvection(g, "v2", "v1"),
		LaurenceGenerator.transvection(g, "v1", "v2"),
	]
	with pytest.raises(CertificationError, match="do not commute"):
		certify_abelian_lower_bound(g, pair)


def test_abelian_rejects_inversion():
	g = clique(2)
	with pytest.raises(CertificationError, match="not unipotent"):
		certify_abelian_lower_bound(g, [LaurenceGenerator.inversion(g, "v1")])


def test_abelian_rejects_inner_conjugation():
	# pc a1 on the lone component away from st(a1) is conjugation by a1
	g = diamond_chain(1)
	region = g.mask(["b1"])
	gen = LaurenceGenerator.partial_conj(g, "a1", region)
	with pytest.raises(CertificationError, match="inner product"):
		certify_abelian_lower_bound(g, [gen])


def test_abelian_dependent_logs_not_overcounted():
	g = clique(2)
	gen = LaurenceGenerator.transvection(g, "v2", "v1")
	assert certify_abelian_lower_bound(g, [gen, gen]) == 1


# ---- nilpotent certificates ----


def triangle_list(g):
	names = g.vertices
	return [
		LaurenceGenerator.transvection(g, names[j], names[i])
		for j in range(g.n)
		for i in range(j)
	]


def test_nilpotent_cliques():
	for n in (2, 3, 4):
		g = clique(n)
		assert certify_nilpotent_lower_bound(g, triangle_list(g)) == n * (n - 1) // 2


def test_nilpotent_rejects_unlisted_commutator():
	g = clique(3)
	partial = [
		LaurenceGenerator.transvection(g, "v2", "v1"),
		LaurenceGenerator.transvection(g, "v3", "v2"),
	]
	with pytest.raises(CertificationError, match="neither inner nor listed"):
		certify_nilpotent_lower_bound(g, partial)


def test_nilpotent_rejects_free_homology_image():
	g = clique(2)
	pair = [
		LaurenceGenerator.transvection(g, "v2", "v1"),
		LaurenceGenerator.transvection(g, "v1", "v2"),
	]
	with pytest.raises(CertificationError, match="nilpotent Lie algebra"):
		certify_nilpotent_lower_bound(g, pair)


def test_nilpotent_four_path():
	tup = (2, 1, 2, 1)
	g = four_path(*tup)
	gens = four_path_generators(g, *tup)
	assert certify_nilpotent_lower_bound(g, gens) == four_path_dimension(*tup)


def test_nilpotent_rejects_deep_class_off_clique():
	# q = 3 makes the middle clique's triangle class three; off a clique
	# the certificate insists commutator generators are central.
	tup = (1, 3, 2, 2)
	g = four_path(*tup)
	gens = four_path_generators(g, *tup)
	with pytest.raises(CertificationError, match="does not commute"):
		certify_nilpotent_lower_bound(g, gens)


def test_lie_closure_grows_heisenberg():
	e12 = ((0, 1, 0), (0, 0, 0), (0, 0, 0))
	e23 = ((0, 0, 0), (0, 0, 1), (0, 0, 0))
	frac = lambda m: tuple(tuple(Fraction(x) for x in row) for row in m)
	assert len(_lie_closure([frac(e12), frac(e23)])) == 3


# ---- reports ----


def test_report_clique_auto_lower():
	b = vcd_report(GroupDescriptor.absolute(clique(3)))
	assert b.upper == b.lower == 3
	assert any(tag == "unipotent block plus extension" for _, _, tag in b.per_leaf)


def test_report_json():
	b = vcd_report(GroupDescriptor.absolute(clique(2)))
	obj = bound_to_json_obj(b)
	assert obj["upper"] == obj["lower"] == 1
	assert all({"leaf", "dim", "why"} <= set(row) for row in obj["per_leaf"])


def test_report_plain_graph_defaults_to_zero_lower():
	b = vcd_report(GroupDescriptor.absolute(edgeless(2)))
	assert b.lower == 0
	assert b.upper == 1


def test_bound_is_namedtuple():
	b = VcdBound(3, 1, [])
	assert b.upper == 3 and b.lower == 1 and b.per_leaf == []


def test_pc_complement_identity():
	# conjugating the two components away from a star separately composes
	# to the whole conjugation, so the pair is inner
	g = diamond_chain(2)
	ctx = WordContext(g)
	away = g.full & ~g.star_masks[g.index["c1"]]
	comps = g.components(away)
	assert len(comps) == 2
	prod = realize(ctx, LaurenceGenerator.partial_conj(g, "c1", comps[0])).compose(
		realize(ctx, LaurenceGenerator.partial_conj(g, "c1", comps[1]))
	)
	assert is_inner(ctx, prod).status == "yes"
