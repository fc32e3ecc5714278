from ..harness.graph import verify_graph


def create_graph():
    graph = verify_graph.compile()
    return graph
