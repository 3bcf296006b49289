"""Command-line entry point.

Every subcommand that reads a network takes the JSON network file written by
``gen``. Library errors become a one-line message on stderr and exit status 2.
"""
from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from antenna.beams import beam_cut_edges
from antenna.models import DEFAULT_EPS_ANG, AntennaModel, Variant, schedule_to_csv, validate_schedule
from antenna.omni import omni_schedule
from common.errors import CapacityLabError
from common.logger_config import setup_logger
from flow.concurrent import DEFAULT_EPSILON, DEFAULT_MAX_PHASES, concurrent_flow_approx, solution_to_json
from flow.maxflow import max_flow
from flow.network import CommoditySet, FlowNetwork
from geometry.cut import expected_cut_edges
from geometry.graph import build_graph, count_cut_edges
from geometry.network import LNLN, generate_instance
from harness.acceptance import CHECKS, run_acceptance
from harness.config import (
    DEFAULT_WORKERS,
    METRICS,
    RADIUS_CONNECTIVITY,
    RADIUS_GRID,
    RADIUS_MODES,
    ExperimentConfig,
)
from harness.experiment import run_experiment, working_radius
from harness.netfile import load_network, save_network, serialize_network
from harness.sandwich import sandwich_to_csv, sweep_sandwich
from harness.writers import write_json, write_text
from reports.scaling_report import save_sweep
from routing.grid import DEFAULT_C_GRID, build_grid
from routing.router import achievable_throughput, compute_loads, feasible_rate, loads_to_csv

logger = setup_logger(__name__)


def _n_list(text):
    try:
        return tuple(int(v) for v in text.split(',') if v.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _emit(obj):
    print(json.dumps(obj, indent=2))


def _single_cfg(args, n):
    return ExperimentConfig('concurrent-lambda', (n,), epsilon=getattr(args, 'eps', DEFAULT_EPSILON),
                            c_grid=args.c_grid, capacity=args.capacity, radius_mode=args.radius_mode,
                            workers=1)


def cmd_gen(args):
    inst = generate_instance(args.n, args.seed, args.xi_mode)
    if args.out:
        save_network(inst, args.out)
    else:
        sys.stdout.write(serialize_network(inst))


def cmd_cut_count(args):
    inst = load_network(args.network)
    stats = count_cut_edges(build_graph(inst, args.capacity), inst)
    _emit({'straddling_edges': stats.straddling_edges, 'left_strip': stats.left_strip,
           'right_strip': stats.right_strip, 'expected': expected_cut_edges(inst.n, inst.d)})


def cmd_maxflow(args):
    inst = load_network(args.network)
    g = build_graph(inst, args.capacity, working_radius(inst, _single_cfg(args, inst.n)))
    left = inst.xs < 0.5
    result = max_flow(FlowNetwork.from_graph(g), np.flatnonzero(left).tolist(), np.flatnonzero(~left).tolist())
    _emit({'value': result.value, 'cut_capacity': result.cut_capacity, 'cut_edges': len(result.cut_arcs)})


def cmd_mcf(args):
    inst = load_network(args.network)
    g = build_graph(inst, args.capacity, working_radius(inst, _single_cfg(args, inst.n)))
    net = FlowNetwork.from_graph(g)
    comm = CommoditySet.from_instance(inst, left_to_right=not args.all_commodities)
    result = concurrent_flow_approx(net, comm, args.eps, args.max_phases)
    if args.out:
        write_json(args.out, solution_to_json(result, net))
    _emit({'lambda': result.value, 'upper_bound': result.upper_bound, 'converged': result.converged,
           'iterations': result.iterations, 'commodities': len(comm),
           'disconnected': list(result.disconnected)})


def cmd_route(args):
    inst = load_network(args.network)
    grid = build_grid(inst, args.c_grid)
    comm = CommoditySet.from_instance(inst, left_to_right=not args.all_commodities)
    loads = compute_loads(grid, comm)
    gamma = achievable_throughput(loads, args.capacity)
    if args.loads_out:
        write_text(args.loads_out, loads_to_csv(loads))
    _emit({'gamma': gamma, 'feasible_rate': feasible_rate(loads, args.capacity),
           'intra_unit_load': loads.intra_unit_load, 'm': grid.m, 'c_grid': grid.c_grid, 'd_grid': grid.d_grid,
           'min_occupancy': grid.min_occupancy, 'max_occupancy': grid.max_occupancy,
           'max_load': loads.max_load, 'center_cut_load': loads.center_cut_load,
           'max_vertical_load': loads.max_vertical_load, 'center_dominates': loads.center_dominates})


def cmd_antenna(args):
    inst = load_network(args.network)
    model = AntennaModel.parse(args.model, args.eps_ang)
    if model.variant == Variant.OMNI:
        schedule = omni_schedule(inst)
    else:
        schedule = beam_cut_edges(inst, model)
    if args.out:
        write_text(args.out, schedule_to_csv(inst, schedule))
    _emit({'model': model.variant.value, 'edges': len(schedule),
           'certified': validate_schedule(inst, schedule)})


def _sweep_cfg(args, metric):
    return ExperimentConfig(metric=metric, n_list=args.n_list, trials=args.trials, base_seed=args.seed,
                            epsilon=args.eps, c_grid=args.c_grid, xi_mode=args.xi_mode,
                            eps_ang=args.eps_ang, output=args.out, capacity=args.capacity,
                            radius_mode=args.radius_mode, left_to_right=not args.all_commodities,
                            max_phases=args.max_phases, workers=args.workers,
                            deterministic=args.deterministic)


def cmd_scaling(args):
    cfg = _sweep_cfg(args, args.metric)
    result = run_experiment(cfg)
    if not args.out:
        sys.stdout.write(result.to_csv())
    if not args.no_history:
        save_sweep(result)


def cmd_sandwich(args):
    cfg = _sweep_cfg(args, 'concurrent-lambda')
    rows = sweep_sandwich(cfg)
    if not args.out:
        sys.stdout.write(sandwich_to_csv(rows, cfg))
    return 1 if any(row.violated for row in rows) else 0


def cmd_acceptance(args):
    results = run_acceptance(args.only)
    report = [r.to_dict() for r in results]
    if args.out:
        write_json(args.out, report)
    _emit(report)
    return 0 if all(r.passed for r in results) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='capacity-lab',
                                     description='Throughput scaling experiments on random wireless networks')
    sub = parser.add_subparsers(dest='command', required=True)

    def flow_options(p, radius_default=RADIUS_CONNECTIVITY):
        p.add_argument('--capacity', type=float, default=1.0, help='capacity of every link')
        p.add_argument('--c-grid', type=float, default=DEFAULT_C_GRID, help='grid cell area in units of ln(n)/n')
        p.add_argument('--radius-mode', choices=RADIUS_MODES, default=radius_default,
                       help='grid: connect at max(d, d_grid); connectivity: at d')

    p = sub.add_parser('gen', help='generate a random network file')
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--seed', type=int, default=0)
    p.add_argument('--xi-mode', default=LNLN, help="'lnln' or a constant xi >= 0")
    p.add_argument('--out', help='output path (stdout when omitted)')
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser('cut-count', help='edges straddling x = 1/2')
    p.add_argument('network')
    p.add_argument('--capacity', type=float, default=1.0)
    p.set_defaults(func=cmd_cut_count)

    p = sub.add_parser('maxflow', help='left-half to right-half max-flow')
    p.add_argument('network')
    flow_options(p)
    p.set_defaults(func=cmd_maxflow)

    p = sub.add_parser('mcf', help='approximate maximum concurrent flow')
    p.add_argument('network')
    p.add_argument('--eps', type=float, default=DEFAULT_EPSILON)
    p.add_argument('--max-phases', type=int, default=DEFAULT_MAX_PHASES)
    p.add_argument('--all-commodities', action='store_true', help='keep commodities that do not cross left to right')
    p.add_argument('--out', help='write the flow solution as JSON')
    flow_options(p)
    p.set_defaults(func=cmd_mcf)

    p = sub.add_parser('route', help='grid routing lower bound')
    p.add_argument('network')
    p.add_argument('--c-grid', type=float, default=DEFAULT_C_GRID)
    p.add_argument('--capacity', type=float, default=1.0)
    p.add_argument('--all-commodities', action='store_true')
    p.add_argument('--loads-out', help='write the link-load profile as CSV')
    p.set_defaults(func=cmd_route)

    p = sub.add_parser('antenna', help='simultaneous cut edges under an antenna model')
    p.add_argument('network')
    p.add_argument('--model', choices=[v.value for v in Variant], required=True)
    p.add_argument('--eps-ang', type=float, default=DEFAULT_EPS_ANG)
    p.add_argument('--out', help='write the schedule as CSV')
    p.set_defaults(func=cmd_antenna)

    p = sub.add_parser('acceptance', help='full-size correctness and distribution checks')
    p.add_argument('--only', nargs='+', choices=list(CHECKS), help='run just these checks')
    p.add_argument('--out', help='write the results as JSON')
    p.set_defaults(func=cmd_acceptance)

    for name, func in (('scaling', cmd_scaling), ('sandwich', cmd_sandwich)):
        p = sub.add_parser(name, help='metric sweep over n' if name == 'scaling' else 'gamma <= lambda <= nu_bar sweep')
        if name == 'scaling':
            p.add_argument('--metric', choices=METRICS, required=True)
            p.add_argument('--no-history', action='store_true', help='do not append to the sweep history')
        p.add_argument('--n-list', type=_n_list, required=True, help='comma-separated, increasing')
        p.add_argument('--trials', type=int, default=10)
        p.add_argument('--seed', type=int, default=0, help='base seed; trial k uses seed + k')
        p.add_argument('--out', help='CSV path (stdout when omitted)')
        p.add_argument('--eps', type=float, default=DEFAULT_EPSILON)
        p.add_argument('--xi-mode', default=LNLN)
        p.add_argument('--eps-ang', type=float, default=DEFAULT_EPS_ANG)
        p.add_argument('--max-phases', type=int, default=DEFAULT_MAX_PHASES)
        p.add_argument('--all-commodities', action='store_true')
        p.add_argument('--workers', type=int, default=DEFAULT_WORKERS)
        p.add_argument('--deterministic', action='store_true', help='write wall_ms as 0')
        flow_options(p, radius_default=RADIUS_GRID)
        p.set_defaults(func=func)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args) or 0
    except CapacityLabError as e:
        logger.debug(f"[CLI] {args.command} failed", exc_info=True)
        print(f"error: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
