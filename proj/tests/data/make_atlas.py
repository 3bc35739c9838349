# Regenerates atlas_n6.g6 and atlas_n7.g6 from the networkx graph atlas.
import networkx as nx
from networkx.generators.atlas import graph_atlas_g

for n in (6, 7):
    with open(f"atlas_n{n}.g6", "w") as f:
        for g in graph_atlas_g():
            if g.number_of_nodes() == n and nx.is_connected(g):
                f.write(nx.to_graph6_bytes(g, header=False).decode())
