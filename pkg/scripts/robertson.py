"""Cop number, longest induced path and clique substitution of the Robertson graph."""

import time

from copsolve.graph import robertson_graph
from copsolve.solver import capture_time, cop_number
from copsolve.subgraphs import freeness_profile, longest_induced_path
from copsolve.substitution import clique_substitution

g = robertson_graph()
t0 = time.perf_counter()
c = cop_number(g, k_max=5)
print(f"c(G) = {c}  ({time.perf_counter() - t0:.2f}s), capture time with {c} cops = {capture_time(g, c)}")

t0 = time.perf_counter()
path = longest_induced_path(g)
print(f"longest induced path: {len(path)} vertices {path}  ({time.perf_counter() - t0:.2f}s)")
print(freeness_profile(g))

h = clique_substitution(g).h
print(f"substitution: {h.n} vertices, {h.num_edges} edges")
print(freeness_profile(h))
