from langgraph.graph import START, StateGraph

from ..state.state import VerifyState
from .nodes import plan_batches, run_batch_node, summarize

verify_graph = StateGraph(VerifyState)
verify_graph.add_node(plan_batches)
verify_graph.add_node("run_batch", run_batch_node)
verify_graph.add_node(summarize)
verify_graph.add_edge(START, "plan_batches")
verify_graph.add_edge("run_batch", "summarize")
