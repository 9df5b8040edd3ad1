"""Regenerates corpus.g6 and corpus_expect.tsv with networkx as the oracle.

Columns of the expectation table: graph6, order, size, triangles,
clique number, matching number, perfect (chordal or bipartite or
co-bipartite). Invariant columns are left as -1 above 16 vertices.
"""

import random

import networkx as nx

random.seed(20240611)


def co_bipartite(g):
    return nx.is_bipartite(nx.complement(g))


def named():
    yield "petersen", nx.petersen_graph()
    yield "heawood", nx.heawood_graph()
    yield "cube", nx.hypercube_graph(3)
    yield "dodecahedron", nx.dodecahedral_graph()
    yield "k33", nx.complete_bipartite_graph(3, 3)
    yield "k25", nx.complete_bipartite_graph(2, 5)
    yield "wheel6", nx.wheel_graph(6)
    yield "null", nx.empty_graph(0)
    for n in range(1, 11):
        yield f"k{n}", nx.complete_graph(n)
    for n in (3, 5, 8, 13):
        yield f"c{n}", nx.cycle_graph(n)
    for n in (2, 6, 30, 63, 64):
        yield f"p{n}", nx.path_graph(n)
    yield "empty7", nx.empty_graph(7)
    yield "star9", nx.star_graph(8)
    yield "ladder5", nx.ladder_graph(5)
    yield "grid34", nx.convert_node_labels_to_integers(nx.grid_2d_graph(3, 4))
    yield "tree12", nx.random_labeled_tree(12, seed=7) if hasattr(nx, "random_labeled_tree") else nx.random_tree(12, seed=7)
    yield "chordal_kpath", nx.convert_node_labels_to_integers(nx.complete_multipartite_graph(1, 2, 3))


def randoms():
    for i in range(40):
        n = random.randint(2, 14)
        p = random.choice([0.2, 0.4, 0.6, 0.8])
        yield f"gnp{i}", nx.gnp_random_graph(n, p, seed=1000 + i)
    for n in (20, 33, 47, 64):
        yield f"sparse{n}", nx.gnp_random_graph(n, 0.08, seed=n)


def main():
    lines = ["# graph6 corpus, one graph per line; generated by make_corpus.py"]
    rows = []
    for name, g in list(named()) + list(randoms()):
        g = nx.convert_node_labels_to_integers(g)
        code = nx.to_graph6_bytes(g, header=False).decode().strip()
        lines.append(f"# {name}")
        lines.append(code)
        n, m = g.number_of_nodes(), g.number_of_edges()
        if n <= 16:
            tri = sum(nx.triangles(g).values()) // 3
            omega = max((len(c) for c in nx.find_cliques(g)), default=0)
            nu = len(nx.max_weight_matching(g, maxcardinality=True))
            perfect = int(n > 0 and (nx.is_chordal(g) or nx.is_bipartite(g) or co_bipartite(g)))
        else:
            tri = omega = nu = perfect = -1
        rows.append(f"{code}\t{n}\t{m}\t{tri}\t{omega}\t{nu}\t{perfect}")
    with open("corpus.g6", "w") as f:
        f.write("\n".join(lines) + "\n")
    with open("corpus_expect.tsv", "w") as f:
        f.write("\n".join(rows) + "\n")


if __name__ == "__main__":
    main()
