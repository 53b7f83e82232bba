"""Command line surface.

Each command reads JSON files, writes deterministic text, JSON, or DOT to
stdout, and exits 0 on success, 1 on a domain error, 2 when a hard
capability limit is hit.
"""

import argparse
import json
import sys

from .autos import (
	acts_trivially_word,
	enumerate_generators,
	is_inner,
	parse_generator,
	product_of,
	realize,
)
from .decompose import (
	GroupDescriptor,
	Leaf,
	ProjectionStep,
	RestrictionStep,
	decompose,
	lift_generator,
	restriction_step,
	tree_dot,
	word_restriction,
)
from .errors import CapabilityError, DomainError
from .graphs import DefiningGraph
from .peripheral import (
	SATURATE_CAP,
	PeripheralPair,
	cone_graph,
	fast_periphery,
	is_invariant,
	saturate,
)
from .vcd import DimProviderConfig, bound_to_json_obj, vcd_report
from .words import WordContext


def _load_json(path, what):
	try:
		with open(path) as fp:
			return json.load(fp)
	except OSError as exc:
		raise DomainError("cannot read %s file %s: %s" % (what, path, exc))
	except json.JSONDecodeError as exc:
		raise DomainError("%s file %s is not JSON: %s" % (what, path, exc))


def _graph(args):
	if not args.graph:
		raise DomainError("--graph is required")
	return DefiningGraph.from_json_obj(_load_json(args.graph, "graph"))


def _pair(graph, args):
	if getattr(args, "periph", None):
		pp = PeripheralPair.from_json_obj(graph, _load_json(args.periph, "periphery"))
	else:
		pp = PeripheralPair(graph, [], [])
	return pp.normalize()


def _target_mask(graph, args):
	if not args.target:
		raise DomainError("--target is required")
	return graph.mask([name.strip() for name in args.target.split(",")])


def _member(graph, mask):
	return "<%s>" % ",".join(graph.names(mask))


def _emit_json(obj):
	print(json.dumps(obj, indent=2, sort_keys=True))


def _graph_dot(graph):
	lines = ["graph G {"]
	for name in graph.vertices:
		lines.append('  "%s";' % name)
	for i, name in enumerate(graph.vertices):
		for j in range(i + 1, graph.n):
			if graph.adj[i] >> j & 1:
				lines.append('  "%s" -- "%s";' % (name, graph.vertices[j]))
	lines.append("}")
	return "\n".join(lines)


# ---- commands ----


def cmd_info(args):
	graph = _graph(args)
	pair = _pair(graph, args)
	desc = GroupDescriptor(graph, pair)
	edges = sum(bin(m).count("1") for m in graph.adj) // 2
	if args.format == "json":
		_emit_json(
			{
				"vertices": list(graph.vertices),
				"edges": edges,
				"connected": graph.is_connected(),
				"clique_number": graph.clique_number(),
				"classes": [graph.names(c) for c in graph.vertex_classes()],
				"pair": pair.to_json_obj(),
				"complexity": list(desc.complexity()),
			}
		)
		return 0
	comp = desc.complexity()
	print("%d vertices, %d edges, %s" % (
		graph.n, edges, "connected" if graph.is_connected() else "disconnected"
	))
	print("clique number %d" % graph.clique_number())
	print("classes: %s" % " ".join(
		"[%s]" % ",".join(graph.names(c)) for c in graph.vertex_classes()
	))
	for m in pair.g_members:
		print("G %s" % _member(graph, m))
	for m in pair.h_members:
		print("H %s" % _member(graph, m))
	print("complexity (%d, %d)" % (comp.n, comp.m))
	return 0


def cmd_gens(args):
	graph = _graph(args)
	pair = _pair(graph, args)
	texts = [str(g) for g in enumerate_generators(pair)]
	if args.format == "json":
		_emit_json(texts)
	else:
		for text in texts:
			print(text)
	return 0


def cmd_invariant(args):
	graph = _graph(args)
	pair = _pair(graph, args)
	verdict = is_invariant(pair, _target_mask(graph, args))
	if args.format == "json":
		_emit_json({"invariant": verdict})
	else:
		print("invariant" if verdict else "not invariant")
	return 0


def cmd_saturate(args):
	graph = _graph(args)
	pair = _pair(graph, args)
	full = saturate(pair, cap=args.cap)
	if args.format == "json":
		_emit_json(full.to_json_obj())
		return 0
	for m in full.g_members:
		print("G %s" % _member(graph, m))
	for m in full.h_members:
		print("H %s" % _member(graph, m))
	return 0


def cmd_periphery(args):
	graph = _graph(args)
	pair = _pair(graph, args)
	dmask = _target_mask(graph, args)
	if dmask not in pair.g_members:
		if not is_invariant(pair, dmask):
			raise DomainError("target is not invariant for this pair")
		pair = pair.adding_g([dmask])
	members = fast_periphery(pair, dmask)
	if args.format == "json":
		_emit_json([graph.names(m) for m in members])
	else:
		for m in members:
			print(_member(graph, m))
	return 0


def cmd_restrict(args):
	graph = _graph(args)
	desc = GroupDescriptor(graph, _pair(graph, args))
	dmask = _target_mask(graph, args)
	kernel, image = restriction_step(desc, dmask, mode=args.mode)
	if args.format == "json":
		_emit_json(
			{
				"kernel": {
					"graph": kernel.graph.to_json_obj(),
					"pair": kernel.pair.to_json_obj(),
				},
				"image": {
					"graph": image.graph.to_json_obj(),
					"pair": image.pair.to_json_obj(),
				},
			}
		)
		return 0
	print("kernel: %s" % kernel.summary())
	print("image:  %s" % image.summary())
	return 0


def _render_tree(node, indent, lines):
	pad = "  " * indent
	step = node.step
	if isinstance(step, Leaf):
		lines.append("%sleaf %r  [%s]" % (pad, step.shape, node.descriptor.summary()))
		return
	if isinstance(step, ProjectionStep):
		names = ",".join(node.descriptor.graph.names(step.zmask))
		lines.append(
			"%sproject out <%s>, kernel rank %d  [%s]"
			% (pad, names, step.kernel_rank, node.descriptor.summary())
		)
		_render_tree(step.image, indent + 1, lines)
		return
	names = ",".join(node.descriptor.graph.names(step.dmask))
	lines.append("%srestrict to <%s>  [%s]" % (pad, names, node.descriptor.summary()))
	lines.append("%s kernel:" % pad)
	_render_tree(step.kernel, indent + 1, lines)
	lines.append("%s image:" % pad)
	_render_tree(step.image, indent + 1, lines)


def cmd_decompose(args):
	graph = _graph(args)
	desc = GroupDescriptor(graph, _pair(graph, args))
	script = None
	if args.script:
		script = _load_json(args.script, "script")
	mode = "script" if script is not None else "auto"
	root = decompose(desc, mode=mode, script=script)
	if args.format == "json":
		_emit_json(root.to_json_obj())
	elif args.format == "dot":
		print(tree_dot(root))
	else:
		lines = []
		_render_tree(root, 0, lines)
		print("\n".join(lines))
		print("leaves: %s" % "; ".join(repr(s) for s in root.leaves()))
	return 0


def cmd_vcd(args):
	graph = _graph(args)
	desc = GroupDescriptor(graph, _pair(graph, args))
	script = _load_json(args.script, "script") if args.script else None
	cfg = None
	if args.cfg:
		cfg = DimProviderConfig.from_json_obj(_load_json(args.cfg, "provider config"))
	gens = None
	if args.gens:
		obj = _load_json(args.gens, "generator list")
		if not isinstance(obj, list):
			raise DomainError("generator list file must hold a JSON list")
		gens = [parse_generator(graph, text) for text in obj]
	bound = vcd_report(
		desc, script=script, cfg=cfg, gens=gens, box=args.box, nilpotent=args.nilpotent
	)
	if args.format == "json":
		_emit_json(bound_to_json_obj(bound))
		return 0
	print("upper: %s" % bound.upper)
	print("lower: %s" % bound.lower)
	for leaf, dim, why in bound.per_leaf:
		print("  %-24s %-8s %s" % (leaf, dim, why))
	return 0


def cmd_cone_graph(args):
	graph = _graph(args)
	pair = _pair(graph, args)
	cone = cone_graph(graph, pair.g_members)
	if args.format == "json":
		_emit_json(cone.to_json_obj())
	elif args.format == "dot":
		print(_graph_dot(cone))
	else:
		obj = cone.to_json_obj()
		print("vertices: %s" % " ".join(obj["vertices"]))
		for a, b in obj["edges"]:
			print("%s -- %s" % (a, b))
	return 0


def _signed_gen(graph, text):
	text = text.strip()
	sign = 1
	if text.endswith("^-1"):
		text, sign = text[:-3], -1
	return parse_generator(graph, text), sign


def cmd_apply(args):
	graph = _graph(args)
	ctx = WordContext(graph)
	if not args.gen:
		raise DomainError("--gen is required")
	phi = product_of(ctx, [_signed_gen(graph, text) for text in args.gen])
	word = ctx.parse(args.word or "")
	image = ctx.canonical(phi.apply(word))
	if args.format == "json":
		_emit_json({"word": ctx.format(word), "image": ctx.format(image)})
	else:
		print(ctx.format(image))
	return 0


def cmd_check_exact(args):
	graph = _graph(args)
	desc = GroupDescriptor(graph, _pair(graph, args))
	dmask = _target_mask(graph, args)
	kernel, image = restriction_step(desc, dmask, mode=args.mode)
	ctx = desc.ctx
	sub_ctx = image.ctx
	failures = 0
	checks = 0
	for gen in image.gens():
		if gen.kind == "sym":
			print("skip lift %s (no canonical lift)" % gen)
			continue
		checks += 1
		try:
			lifted = lift_generator(desc, image, dmask, gen)
			back = word_restriction(ctx, sub_ctx, dmask, realize(ctx, lifted))
			disc = back.compose(realize(sub_ctx, gen).invert())
			res = is_inner(sub_ctx, disc)
		except DomainError as exc:
			failures += 1
			print("FAIL lift %s: %s" % (gen, exc))
			continue
		if res.status == "yes":
			print("ok   lift %s" % gen)
		else:
			failures += 1
			print("FAIL lift %s: %s" % (gen, res.reason or res.status))
	for gen in kernel.gens():
		checks += 1
		if acts_trivially_word(ctx, realize(ctx, gen), dmask)[0]:
			print("ok   kernel %s" % gen)
		else:
			failures += 1
			print("FAIL kernel %s does not act trivially" % gen)
	print("%d checks, %d failures" % (checks, failures))
	return 1 if failures else 0


# ---- argument plumbing ----


class _Parser(argparse.ArgumentParser):
	# argparse exits 2 on usage errors; 2 is reserved for capability limits
	def error(self, message):
		self.exit(1, "%s: error: %s\n" % (self.prog, message))


def build_parser():
	parser = _Parser(prog="raagout", description=__doc__.splitlines()[0])
	sub = parser.add_subparsers(dest="command", metavar="command")

	def add(name, func, **kwargs):
		p = sub.add_parser(name, **kwargs)
		p.set_defaults(func=func)
		p.add_argument("--graph", metavar="F", help="graph JSON file")
		p.add_argument("--periph", metavar="F", help="peripheral pair JSON file")
		p.add_argument(
			"--format", choices=("text", "json", "dot"), default="text"
		)
		p.add_argument("--seed", type=int, default=0, help="randomized-command seed")
		return p

	add("info", cmd_info, help="graph and descriptor summary")
	add("gens", cmd_gens, help="generators of the relative outer group")

	p = add("invariant", cmd_invariant, help="test a special subgroup for invariance")
	p.add_argument("--target", metavar="V,V,...", help="vertex names")

	p = add("saturate", cmd_saturate, help="saturate a peripheral pair")
	p.add_argument("--cap", type=int, default=SATURATE_CAP, help="vertex cap")

	p = add("periphery", cmd_periphery, help="induced periphery of a subgroup")
	p.add_argument("--target", metavar="V,V,...")

	p = add("restrict", cmd_restrict, help="one restriction step")
	p.add_argument("--target", metavar="V,V,...")
	p.add_argument("--mode", choices=("fast", "saturated"), default="fast")

	p = add("decompose", cmd_decompose, help="full decomposition tree")
	p.add_argument("--script", metavar="F", help="script JSON file")

	p = add("vcd", cmd_vcd, help="dimension bounds over a decomposition")
	p.add_argument("--script", metavar="F")
	p.add_argument("--cfg", metavar="F", help="dimension provider JSON")
	p.add_argument("--gens", metavar="F", help="lower-bound generator list JSON")
	p.add_argument("--box", type=int, default=2, help="independence box bound")
	p.add_argument("--nilpotent", action="store_true", help="use the nilpotent certificate")

	add("cone-graph", cmd_cone_graph, help="cone off the preserved members")

	p = add("apply", cmd_apply, help="apply generators to a word")
	p.add_argument("--gen", action="append", metavar="TEXT", help="generator, first applied last")
	p.add_argument("--word", metavar="TEXT", default="", help='word like "a b^-1"')

	p = add("check-exact", cmd_check_exact, help="lift and kernel checks for one step")
	p.add_argument("--target", metavar="V,V,...")
	p.add_argument("--mode", choices=("fast", "saturated"), default="saturated")

	return parser


def main(argv=None):
	parser = build_parser()
	args = parser.parse_args(argv)
	if not getattr(args, "func", None):
		parser.print_help()
		return 1
	try:
		return args.func(args)
	except DomainError as exc:
		print("error: %s" % exc, file=sys.stderr)
		return 1
	except CapabilityError as exc:
		print("capability limit: %s" % exc, file=sys.stderr)
		return 2


if __name__ == "__main__":
	sys.exit(main())
