"""Search small digraphs for the fewest-edge decomposition G = G1 ∪ G2 on which
H¹(G) → H¹(G1) ×_{H¹(G1∩G2)} H¹(G2) is not onto.

Every edge goes to G1, G2 or both; each piece carries exactly the endpoints
of its edges. Digraphs are visited by edge count, so the first hit is minimal.
"""
import argparse
import itertools
import sys

from digraph_brown.brown import MvInstance, check_mv_surjectivity
from digraph_brown.digraph import Digraph


def piece(edges):
    vs = sorted({x for e in edges for x in e})
    return Digraph(tuple(vs), frozenset(edges))


def search(n_vertices: int):
    vs = [chr(ord("a") + i) for i in range(n_vertices)]
    pairs = [(u, v) for u in vs for v in vs if u != v]
    for m in range(1, len(pairs) + 1):
        for edges in itertools.combinations(pairs, m):
            G = piece(edges)
            if len(G.vertices) < n_vertices:
                continue
            for sides in itertools.product((1, 2, 3), repeat=m):
                E1 = [e for e, s in zip(edges, sides) if s & 1]
                E2 = [e for e, s in zip(edges, sides) if s & 2]
                if not E1 or not E2:
                    continue
                inst = MvInstance(G, piece(E1), piece(E2))
                rep = check_mv_surjectivity(inst)
                if not rep.passed:
                    return inst, rep
    return None


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-vertices", type=int, default=3)
    args = ap.parse_args()
    for n in range(2, args.max_vertices + 1):
        hit = search(n)
        if hit is None:
            print(f"{n} vertices: no failure")
            continue
        inst, rep = hit
        print(f"{n} vertices: failure")
        for name, X in (("G", inst.G), ("G1", inst.G1), ("G2", inst.G2), ("G12", inst.G12)):
            print(f"  {name:3s} V={list(X.vertices)} E={X.sorted_edges}")
        print(f"  fiber product {rep.witness['fiber_product']}, H¹(G) {rep.witness['H(G)']}")
        return 0
    return 1


if __name__ == "__main__":
    sys.exit(main())
