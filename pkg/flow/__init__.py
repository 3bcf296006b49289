from flow.concurrent import ConcurrentFlowResult, concurrent_flow_approx, solution_to_json
from flow.exact import ORACLE_MAX_NODES, concurrent_flow_exact, concurrent_flow_feasible
from flow.maxflow import MaxFlowResult, max_flow
from flow.network import CommoditySet, FlowNetwork, FlowSolution
from flow.verify import FEASIBILITY_TOL, verify_solution

__all__ = [
    'CommoditySet', 'ConcurrentFlowResult', 'FEASIBILITY_TOL', 'FlowNetwork', 'FlowSolution',
    'MaxFlowResult', 'ORACLE_MAX_NODES', 'concurrent_flow_approx', 'concurrent_flow_exact',
    'concurrent_flow_feasible', 'max_flow', 'solution_to_json', 'verify_solution',
]
