# Static plots of a presentation's incidence graph and of R̂

import matplotlib
matplotlib.use("Agg")

import matplotlib.pyplot as plt
import networkx as nx
import numpy as np


class PresentationVisualizer:
    def __init__(self, tp):
        self.tp = tp
        self.graph = tp.geometry.graph
        self.positions = {}

    def setup_graph(self):
        """Layout: bipartite points/lines for planes, shells by dimension otherwise"""
        if self.tp.n == 3:
            self.positions = nx.bipartite_layout(self.graph, self.tp.elements_of_dim(1))
        else:
            shells = [self.tp.elements_of_dim(k) for k in range(1, self.tp.n)]
            self.positions = nx.shell_layout(self.graph, nlist=shells)
        return self.positions

    def show_incidence(self, path):
        """Draw the Levi graph, coloured by dimension"""
        self.setup_graph()
        fig, ax = plt.subplots(figsize=(12, 8))
        dims = [self.graph.nodes[u]["dim"] for u in self.graph.nodes]
        nx.draw_networkx_nodes(self.graph, self.positions, node_color=dims,
                               cmap=plt.cm.tab10, node_size=300, ax=ax)
        nx.draw_networkx_labels(self.graph, self.positions,
                                labels={u: self.tp.name(u) for u in self.graph.nodes},
                                font_size=7, ax=ax)
        nx.draw_networkx_edges(self.graph, self.positions, edge_color='gray', width=0.5, ax=ax)
        ax.set_title(f"Incidence graph: n={self.tp.n}, q={self.tp.q}, |T|={len(self.tp)}")
        ax.axis('off')
        fig.savefig(path, dpi=120, bbox_inches='tight')
        plt.close(fig)
        return path

    def show_rhat_sparsity(self, sol, path):
        """Scatter the nonzero pattern of R̂"""
        entries = list(sol.matrix.entries())
        rows = np.array([e[0] for e in entries])
        cols = np.array([e[1] for e in entries])
        fig, ax = plt.subplots(figsize=(8, 8))
        ax.scatter(cols, rows, s=1, marker='s', color='black')
        ax.set_xlim(-0.5, sol.matrix.cols - 0.5)
        ax.set_ylim(sol.matrix.rows - 0.5, -0.5)
        ax.set_title(f"R̂ over {sol.ctx.field}: {sol.matrix.nnz} nonzeros on {sol.matrix.rows}x{sol.matrix.cols}")
        fig.savefig(path, dpi=120, bbox_inches='tight')
        plt.close(fig)
        return path
