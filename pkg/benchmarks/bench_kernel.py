"""Time the word kernel twice, compiled against pure python.

The kernel is chosen once at import from the RAAGOUT_PURE environment
variable, so the comparison runs each side in its own subprocess and this
script doubles as its own worker (--inner). Workloads cover the four kernel
entry points plus one end-to-end innerness scan that leans on all of them.

Run from the repository root:

    python3 benchmarks/bench_kernel.py
"""

import argparse
import json
import os
import random
import subprocess
import sys
import time


def workloads():
	from raagout.autos import is_inner, realize
	from raagout.families import diamond_chain, diamond_generators
	from raagout.words import KERNEL_KIND, WordContext, inverse

	g = diamond_chain(3)
	ctx = WordContext(g)
	rng = random.Random(7)

	def word(k):
		return tuple(2 * rng.randrange(g.n) + rng.randrange(2) for _ in range(k))

	long_words = [word(400) for _ in range(400)]
	mid_words = [word(120) for _ in range(400)]
	conjugators = [word(40) for _ in range(400)]

	def bench_reduce():
		for w in long_words:
			ctx.reduce(w)

	def bench_canonical():
		for w in mid_words:
			ctx.canonical(w)

	def bench_cyc_reduce():
		for w, c in zip(mid_words, conjugators):
			ctx.cyc_reduce(tuple(c) + w + inverse(c))

	phis = [realize(ctx, x) for x in diamond_generators(g, 3)]

	def bench_apply():
		for w in mid_words:
			for phi in phis[:4]:
				phi.apply(w)

	def bench_inner_scan():
		for a in phis[:6]:
			for b in phis[:6]:
				comm = a.compose(b).compose(a.invert()).compose(b.invert())
				is_inner(ctx, comm)

	return KERNEL_KIND, [
		("reduce", bench_reduce),
		("canonical", bench_canonical),
		("cyc_reduce", bench_cyc_reduce),
		("apply_map", bench_apply),
		("inner_scan", bench_inner_scan),
	]


def run_inner(repeat):
	kind, work = workloads()
	results = {}
	for name, fn in work:
		fn()  # warm caches before timing
		best = None
		for _ in range(repeat):
			t0 = time.perf_counter()
			fn()
			dt = time.perf_counter() - t0
			best = dt if best is None else min(best, dt)
		results[name] = best
	print(json.dumps({"kernel": kind, "results": results}))


def run_outer(repeat):
	here = os.path.dirname(os.path.abspath(__file__))
	src = os.path.join(os.path.dirname(here), "src")
	sides = {}
	for pure in (False, True):
		env = dict(os.environ)
		env["PYTHONPATH"] = src + os.pathsep + env.get("PYTHONPATH", "")
		if pure:
			env["RAAGOUT_PURE"] = "1"
		else:
			env.pop("RAAGOUT_PURE", None)
		out = subprocess.run(
			[sys.executable, __file__, "--inner", "--repeat", str(repeat)],
			env=env, capture_output=True, text=True, check=True,
		)
		data = json.loads(out.stdout)
		sides[data["kernel"]] = data["results"]
	if set(sides) != {"compiled", "pure"}:
		raise SystemExit(
			"expected one compiled and one pure run, got %s; "
			"build the extension first (pip install -e .)" % sorted(sides)
		)
	print("%-12s %10s %10s %8s" % ("workload", "compiled", "pure", "speedup"))
	for name in sides["compiled"]:
		c = sides["compiled"][name]
		p = sides["pure"][name]
		print("%-12s %9.1fms %9.1fms %7.1fx" % (name, 1e3 * c, 1e3 * p, p / c))


def main():
	ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
	ap.add_argument("--inner", action="store_true", help=argparse.SUPPRESS)
	ap.add_argument("--repeat", type=int, default=3, help="timed repetitions, best kept")
	args = ap.parse_args()
	if args.inner:
		run_inner(args.repeat)
	else:
		run_outer(args.repeat)


if __name__ == "__main__":
	main()
